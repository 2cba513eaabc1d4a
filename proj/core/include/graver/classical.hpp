#pragma once

#include "graver/lattice.hpp"

#include <cstddef>

namespace graver {

/// Reduces `s` by conformal divisors from `g` until none divides the remainder.
/// Divisors are tried in the set's member order; pass `g.symmetric()` to reduce
/// by both signs of every member.
IntVector normal_form(const IntVector& s, const VectorSet& g);

struct CompletionStats {
    std::size_t candidates_processed = 0;
    std::size_t reductions = 0;
    std::size_t added = 0;
    std::size_t skipped_sign_compatible = 0;
};

/// Integer kernel basis via unimodular column elimination, then pairwise
/// size reduction. Empty when the kernel is trivial.
VectorSet lattice_basis(const IntMatrix& a);

/// Completion procedure: starting from a lattice basis `generators` of ker A,
/// returns the Graver basis (one canonical representative per +/- pair, sorted).
VectorSet pottier(const IntMatrix& a, const VectorSet& generators, CompletionStats* stats = nullptr);

/// Convenience overload computing the lattice basis first.
VectorSet pottier(const IntMatrix& a, CompletionStats* stats = nullptr);

}  // namespace graver
