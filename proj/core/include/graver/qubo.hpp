#pragma once

#include "graver/lattice.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace graver {

using Bits = std::vector<std::uint8_t>;

enum class EncodingScheme { binary, unary };

/// Integer-to-binary map x = L + E·X with per-variable bit counts.
///
/// Binary variables use encoder (2^0, ..., 2^{k-1}) and cover [L, L + 2^k - 1];
/// unary variables use k ones and cover [L, L + k].
class EncodingSpec {
public:
    EncodingSpec() = default;
    EncodingSpec(std::vector<int> lengths, std::vector<Int> lower, EncodingScheme scheme = EncodingScheme::binary);

    static EncodingSpec uniform(std::size_t n, int k, Int lower, EncodingScheme scheme = EncodingScheme::binary);

    std::size_t num_vars() const { return lengths_.size(); }
    std::size_t total_bits() const { return total_bits_; }
    EncodingScheme scheme() const { return scheme_; }

    int length(std::size_t i) const { return lengths_[i]; }
    Int lower(std::size_t i) const { return lower_[i]; }
    Int upper(std::size_t i) const { return lower_[i] + span(i); }
    /// Sum of encoder weights of variable i.
    Int span(std::size_t i) const;
    /// Weight of bit b of variable i.
    Int weight([[maybe_unused]] std::size_t i, int b) const { return scheme_ == EncodingScheme::binary ? (Int{1} << b) : 1; }
    /// Index of the first bit of variable i.
    std::size_t bit_offset(std::size_t i) const { return offsets_[i]; }

    const std::vector<int>& lengths() const { return lengths_; }
    const std::vector<Int>& lowers() const { return lower_; }

    bool in_range(const IntVector& x) const;

    /// Reorders variables: new variable j is old variable order[j].
    EncodingSpec permuted(std::span<const std::size_t> order) const;

    friend bool operator==(const EncodingSpec&, const EncodingSpec&) = default;

private:
    std::vector<int> lengths_;
    std::vector<Int> lower_;
    std::vector<std::size_t> offsets_;
    std::size_t total_bits_ = 0;
    EncodingScheme scheme_ = EncodingScheme::binary;
};

/// x = L + E·X.
IntVector decode(std::span<const std::uint8_t> bits, const EncodingSpec& enc);

/// Encoding centers and lengths carried between extraction iterations.
struct AdaptiveState {
    std::vector<Int> midpoints;
    std::vector<int> lengths;
    std::size_t iteration = 0;

    // Moving-average memory: the last proposal per variable and how many
    // consecutive iterations proposed it.
    std::vector<int> shift_proposal;
    std::vector<int> shift_streak;
    std::vector<int> shrink_streak;

    static AdaptiveState uniform(std::size_t n, int k, Int center = 0);
    static AdaptiveState from(std::vector<Int> midpoints, std::vector<int> lengths);
};

/// Window centered on the midpoints: binary covers [M - 2^{k-1}, M + 2^{k-1} - 1].
EncodingSpec spec_from_adaptive(const AdaptiveState& st, EncodingScheme scheme = EncodingScheme::binary);

enum class QuboKind { kernel, feasibility };

/// Upper-triangular integer QUBO: energy(X) = sum_{i<=j} Q_ij X_i X_j + offset.
/// By construction energy(X) equals ||A·decode(X) - b||^2 (b = 0 for kernel).
class QuboProblem {
public:
    QuboProblem(IntMatrix a, IntVector b, EncodingSpec enc, QuboKind kind);

    std::size_t num_bits() const { return n_; }
    Int offset() const { return offset_; }
    QuboKind kind() const { return kind_; }
    const EncodingSpec& encoding() const { return enc_; }
    const IntMatrix& matrix() const { return a_; }
    const IntVector& target() const { return b_; }

    /// Coefficient for i <= j.
    Int coeff(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }
    /// Symmetric view: coefficient of X_i X_j for i != j (stored once), or the diagonal.
    Int pair(std::size_t i, std::size_t j) const { return i <= j ? q_[i * n_ + j] : q_[j * n_ + i]; }

    Int energy(std::span<const std::uint8_t> bits) const;

    /// A·decode(X) - b.
    IntVector residual(std::span<const std::uint8_t> bits) const;

private:
    friend QuboProblem build_feasibility_qubo(const IntMatrix&, const IntVector&, const EncodingSpec&);
    friend QuboProblem build_kernel_qubo(const IntMatrix&, const EncodingSpec&);

    IntMatrix a_;
    IntVector b_;
    EncodingSpec enc_;
    QuboKind kind_;
    std::size_t n_ = 0;
    std::vector<Int> q_;
    Int offset_ = 0;
};

/// Q_I = A^T A.
IntMatrix build_qi(const IntMatrix& a);

QuboProblem build_kernel_qubo(const IntMatrix& a, const EncodingSpec& enc);
QuboProblem build_feasibility_qubo(const IntMatrix& a, const IntVector& b, const EncodingSpec& enc);

/// Sparse text form: "N_bits offset", then one "i j coeff" line per nonzero i <= j.
void write_qubo(std::ostream& out, const QuboProblem& q);

/// Column reshuffle applied before QUBO construction and undone on decoded vectors.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> order);

    static Permutation identity(std::size_t n);
    static Permutation random(std::size_t n, std::uint64_t seed);

    std::size_t size() const { return order_.size(); }
    const std::vector<std::size_t>& order() const { return order_; }

    /// A·P: column j of the result is column order[j] of `a`.
    IntMatrix apply_columns(const IntMatrix& a) const;
    /// Permuted coordinates -> original coordinates.
    IntVector to_original(const IntVector& y) const;
    /// Original coordinates -> permuted coordinates.
    IntVector from_original(const IntVector& x) const;

private:
    std::vector<std::size_t> order_;
};

}  // namespace graver
