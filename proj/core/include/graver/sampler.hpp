#pragma once

#include "graver/qubo.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace graver {

enum class Backend { exhaustive, simulated_annealing };

Backend parse_backend(const std::string& name);
std::string to_string(Backend b);

struct SamplerConfig {
    Backend backend = Backend::simulated_annealing;
    std::size_t reads = 10000;
    std::size_t sweeps = 100;
    double t_hi = 10.0;
    double t_lo = 0.05;
    std::uint64_t seed = 0;
    /// 0 keeps every unique solution.
    std::size_t max_unique = 0;
    /// Solutions whose residual 1-norm exceeds this are dropped.
    Int max_sum_error = 6;
    std::size_t exhaustive_bit_cap = 24;
    /// Worker threads for independent reads; 0 uses hardware concurrency.
    unsigned threads = 0;
    /// Recorded for report parity with annealer runs; has no effect.
    std::string chainbreak_strategy = "none";

    void validate() const;
};

struct Sample {
    Bits bits;
    Int energy = 0;  // recomputed exactly from the QUBO
    IntVector decoded;
    IntVector residual;  // A·x - b
    Int sum_error = 0;   // ||residual||_1
};

struct SampleBatch {
    std::vector<Sample> samples;
    std::size_t reads = 0;

    std::size_t size() const { return samples.size(); }
    /// Decoded vectors of the samples with zero residual.
    std::vector<IntVector> exact() const;
};

class SamplerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Stand-in for the annealer call: many unique low-energy bitstrings.
/// Output is sorted by (energy, bits) and deterministic for a fixed seed.
SampleBatch sample_qubo(const QuboProblem& q, const SamplerConfig& cfg);

/// Residual 1-norm buckets 0, 1, 2, 3, 4, 5 and >= 6.
struct ErrorHistogram {
    static constexpr std::size_t kBuckets = 7;
    std::array<std::size_t, kBuckets> counts{};
    std::size_t total = 0;

    double percent(std::size_t bucket) const {
        return total == 0 ? 0.0 : 100.0 * static_cast<double>(counts[bucket]) / static_cast<double>(total);
    }
};

ErrorHistogram partition_by_error(const SampleBatch& batch);

}  // namespace graver
