#pragma once

#include "graver/lattice.hpp"
#include "graver/postprocess.hpp"
#include "graver/qubo.hpp"
#include "graver/sampler.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graver {

struct Box {
    IntVector lo;
    IntVector hi;

    bool contains(const IntVector& x) const;
};

/// Symmetric box ±(u - l): every step between two points of [l, u] lies in it.
Box truncated_box(const IntVector& l, const IntVector& u);

struct ExtractionConfig {
    /// Box for returned elements. Empty vectors mean no clipping.
    Box box;
    /// Initial encoding: uniform length k around `center` unless `initial` is set.
    int k = 4;
    Int center = 0;
    std::optional<AdaptiveState> initial;
    EncodingScheme scheme = EncodingScheme::binary;

    std::size_t max_iterations = 10;
    /// Stop after this many consecutive iterations without a new element.
    std::size_t patience = 3;
    bool permute = true;
    bool adaptive = true;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    SamplerConfig sampler;
    RecombineConfig recombine;
    /// Cap on residual-kernel pair work per iteration (0 = unlimited).
    std::uint64_t residual_budget = 50'000'000;
    AdaptConfig adapt;

    void validate(std::size_t n) const;
};

struct IterationStats {
    std::size_t iteration = 0;
    std::uint64_t permutation_seed = 0;
    std::size_t samples = 0;
    std::size_t exact = 0;
    std::size_t recombined = 0;
    bool recombine_truncated = false;
    bool residual_truncated = false;
    /// |K_i|: distinct canonical kernel vectors gathered this iteration.
    std::size_t kernel_new = 0;
    std::size_t graver_size = 0;
    std::size_t new_elements = 0;
    ErrorHistogram errors;
    std::vector<Int> midpoints;
    std::vector<int> lengths;
};

struct ExtractionReport {
    std::vector<IterationStats> iterations;
    /// Raw kernel archive K(A), canonical sign.
    VectorSet kernel;
    std::string stop_reason;
};

struct ExtractionResult {
    /// Canonical representatives inside the box.
    VectorSet graver;
    ExtractionReport report;
};

ExtractionResult extract(const IntMatrix& a, const ExtractionConfig& cfg);

}  // namespace graver
