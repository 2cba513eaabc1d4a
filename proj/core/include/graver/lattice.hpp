#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace graver {

using Int = std::int64_t;

/// Raised whenever exact 64-bit arithmetic would wrap.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace checked {

inline Int add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

inline Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

}  // namespace checked

/// Dense integer lattice vector with exact (overflow-checked) arithmetic.
class IntVector {
public:
    IntVector() = default;
    explicit IntVector(std::size_t n, Int fill = 0) : v_(n, fill) {}
    IntVector(std::initializer_list<Int> xs) : v_(xs) {}
    explicit IntVector(std::vector<Int> xs) : v_(std::move(xs)) {}

    std::size_t size() const { return v_.size(); }
    Int operator[](std::size_t i) const { return v_[i]; }
    Int& operator[](std::size_t i) { return v_[i]; }

    std::span<const Int> span() const { return v_; }
    std::span<Int> span() { return v_; }
    const std::vector<Int>& data() const { return v_; }

    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    bool is_zero() const;
    Int norm1() const;
    Int norm_inf() const;

    /// Flip sign so the first nonzero entry is positive.
    IntVector canonical() const;
    bool is_canonical() const;

    IntVector operator-() const;
    IntVector& operator+=(const IntVector& o);
    IntVector& operator-=(const IntVector& o);

    friend IntVector operator+(IntVector a, const IntVector& b) { return a += b; }
    friend IntVector operator-(IntVector a, const IntVector& b) { return a -= b; }
    friend IntVector operator*(Int s, const IntVector& a);

    friend bool operator==(const IntVector&, const IntVector&) = default;
    friend auto operator<=>(const IntVector& a, const IntVector& b) { return a.v_ <=> b.v_; }

    std::string to_string() const;

private:
    std::vector<Int> v_;
};

struct IntVectorHash {
    std::size_t operator()(const IntVector& v) const noexcept;
};

/// Row-major dense integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0);
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

    std::span<const Int> row(std::size_t r) const { return {a_.data() + r * cols_, cols_}; }
    IntVector column(std::size_t c) const;

    IntVector multiply(const IntVector& x) const;
    IntMatrix transpose() const;
    IntMatrix select_columns(std::span<const std::size_t> cols) const;
    IntMatrix select_rows(std::span<const std::size_t> rows) const;

    static IntMatrix identity(std::size_t n);

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

/// Duplicate-free ordered collection of same-dimension vectors.
class VectorSet {
public:
    VectorSet() = default;
    explicit VectorSet(std::size_t dim) : dim_(dim) {}
    VectorSet(std::size_t dim, std::initializer_list<IntVector> xs);
    VectorSet(std::size_t dim, const std::vector<IntVector>& xs);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    /// Returns false when `v` was already present.
    bool insert(IntVector v);
    bool contains(const IntVector& v) const { return index_.count(v) != 0; }

    const std::vector<IntVector>& members() const { return members_; }
    const IntVector& operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    void sort();
    VectorSet sorted() const;

    /// One representative per +/- pair (first nonzero entry positive), sorted.
    VectorSet canonical() const;
    /// Both signs of every member, sorted.
    VectorSet symmetric() const;

    bool same_elements(const VectorSet& other) const;

private:
    std::size_t dim_ = 0;
    std::vector<IntVector> members_;
    std::unordered_set<IntVector, IntVectorHash> index_;
};

/// x ⊑ y: same orthant and |x_i| <= |y_i| for every coordinate.
bool conformal(const IntVector& x, const IntVector& y);
bool conformal(std::span<const Int> x, std::span<const Int> y);

/// Same orthant, without the magnitude condition.
bool sign_compatible(std::span<const Int> x, std::span<const Int> y);

/// True iff some member g != v of `set` satisfies g ⊑ v.
/// Support bits of the positive and negative entries, first 64 coordinates only.
struct SignMask {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
};

SignMask sign_mask(std::span<const Int> v);

/// Necessary condition for x ⊑ y, cheap enough to run before the full check.
inline bool may_conform(const SignMask& x, const SignMask& y) {
    return (x.pos & ~y.pos) == 0 && (x.neg & ~y.neg) == 0;
}

/// A fixed list of vectors queried for "some member h != v has h ⊑ v".
class DominanceIndex {
public:
    DominanceIndex() = default;
    explicit DominanceIndex(const VectorSet& set);
    void add(const IntVector& v);
    bool dominates(const IntVector& v) const;
    std::size_t size() const { return vecs_.size(); }

private:
    std::vector<IntVector> vecs_;
    std::vector<SignMask> masks_;
};

bool is_conformal_sum_reducible(const IntVector& v, const VectorSet& set);

/// Members not dominated (⊑) by any other member, in lexicographic order.
VectorSet minimal_filter(const VectorSet& set, unsigned threads = 1);

/// A·x = 0 and x != 0.
bool kernel_member(const IntMatrix& a, const IntVector& x);

struct GraverBounds {
    std::size_t rank = 0;
    Int delta = 0;
    Int inf_bound = 0;
    Int one_bound = 0;
    /// Set when Δ was taken over a maximal independent row subset because the
    /// full submatrix count exceeded the cap. Those rows span the same kernel,
    /// so the bounds remain valid for every Graver element.
    bool over_row_basis = false;
};

class BoundsUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
Int bareiss_determinant(IntMatrix m);

/// Rank over the rationals (fraction-free elimination).
std::size_t rank(const IntMatrix& a);

/// Indices of a maximal linearly independent set of rows, first-come order.
std::vector<std::size_t> independent_rows(const IntMatrix& a);

/// Max |det| over all square submatrices of sizes 1..max_size.
Int max_subdeterminant(const IntMatrix& a, std::size_t max_size);

Int binomial(std::size_t n, std::size_t k);

inline constexpr Int kDefaultSubmatrixCap = 10'000'000;

GraverBounds graver_bounds(const IntMatrix& a, Int submatrix_cap = kDefaultSubmatrixCap);

/// Integer Carathéodory rank bound 2n-2 for Graver decompositions; informational only.
inline constexpr std::size_t integer_caratheodory_bound(std::size_t n) { return n >= 1 ? 2 * n - 2 : 0; }

}  // namespace graver
