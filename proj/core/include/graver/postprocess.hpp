#pragma once

#include "graver/lattice.hpp"
#include "graver/qubo.hpp"
#include "graver/sampler.hpp"

#include <cstdint>
#include <vector>

namespace graver {

/// A decoded sample in original coordinates together with its residual A·x - b.
struct Solution {
    IntVector x;
    IntVector residual;
};

std::vector<Solution> solutions_of(const SampleBatch& batch);

struct RecombineConfig {
    /// Largest residual 1-norm that participates (the handled cases are 1, 2 and 3).
    Int max_sum_error = 3;
    /// Cap on pair operations over all categories.
    std::uint64_t pair_budget = 10'000'000;
    /// Feasibility problems only: exact solutions used to shift kernel combinations back onto Ax = b.
    std::size_t max_anchors = 16;
};

struct RecombineResult {
    /// Kernel problems: nonzero kernel vectors in canonical sign. Feasibility problems: feasible points.
    VectorSet vectors;
    std::uint64_t pairs = 0;
    bool truncated = false;
};

/// Cancels residual signatures pairwise. Samples sharing a signature give
/// differences u - v; samples with opposite signatures give sums u + v.
/// For feasibility problems (b != 0) each combination is shifted by an exact
/// anchor z so that it lands back on Ax = b: u - v + z and u + v - z.
RecombineResult recombine(const IntMatrix& a, const IntVector& b, const std::vector<Solution>& sols,
                          const RecombineConfig& cfg = {});

/// Residues of extra kernel vectors against a partial Graver set, then the
/// minimal elements of the union. Returned in canonical sign.
///
/// `pair_budget` (0 = unlimited) caps |K*|·|G| work; the smallest members of
/// K* go first and `truncated` reports whether any were skipped.
VectorSet residual_kernel(const VectorSet& g_partial, const VectorSet& k_star, unsigned threads = 1,
                          std::uint64_t pair_budget = 0, bool* truncated = nullptr);

struct AdaptConfig {
    /// Consecutive identical proposals required before a change is applied.
    int window = 2;
};

/// Border-driven shift of midpoints and interior-driven shrink of lengths.
/// `samples` are decoded under spec_from_adaptive(st).
AdaptiveState adapt(const AdaptiveState& st, const std::vector<IntVector>& samples, const AdaptConfig& cfg = {});

}  // namespace graver
