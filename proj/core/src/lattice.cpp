#include "graver/lattice.hpp"

#include "graver/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace graver {

// ---------------------------------------------------------------- IntVector

bool IntVector::is_zero() const {
    return std::all_of(v_.begin(), v_.end(), [](Int x) { return x == 0; });
}

Int IntVector::norm1() const {
    Int s = 0;
    for (Int x : v_) s = checked::add(s, checked::abs(x));
    return s;
}

Int IntVector::norm_inf() const {
    Int s = 0;
    for (Int x : v_) s = std::max(s, checked::abs(x));
    return s;
}

bool IntVector::is_canonical() const {
    for (Int x : v_) {
        if (x != 0) return x > 0;
    }
    return true;
}

IntVector IntVector::canonical() const { return is_canonical() ? *this : -*this; }

IntVector IntVector::operator-() const {
    IntVector r(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] = checked::neg(v_[i]);
    return r;
}

IntVector& IntVector::operator+=(const IntVector& o) {
    if (o.size() != size()) throw DimensionError("vector dimension mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = checked::add(v_[i], o.v_[i]);
    return *this;
}

IntVector& IntVector::operator-=(const IntVector& o) {
    if (o.size() != size()) throw DimensionError("vector dimension mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = checked::sub(v_[i], o.v_[i]);
    return *this;
}

IntVector operator*(Int s, const IntVector& a) {
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.v_[i] = checked::mul(s, a.v_[i]);
    return r;
}

std::string IntVector::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v_.size(); ++i) os << (i ? "," : "") << v_[i];
    os << ')';
    return os.str();
}

std::size_t IntVectorHash::operator()(const IntVector& v) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Int x : v) {
        h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, Int fill)
    : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows_ * cols_) throw DimensionError("matrix entry count does not match shape");
}

IntVector IntMatrix::column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

IntVector IntMatrix::multiply(const IntVector& x) const {
    if (x.size() != cols_) throw DimensionError("matrix-vector dimension mismatch");
    IntVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Int s = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (x[c] != 0) s = checked::add(s, checked::mul((*this)(r, c), x[c]));
        }
        out[r] = s;
    }
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::select_columns(std::span<const std::size_t> cols) const {
    IntMatrix s(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) s(r, j) = (*this)(r, cols[j]);
    return s;
}

IntMatrix IntMatrix::select_rows(std::span<const std::size_t> rows) const {
    IntMatrix s(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c) s(i, c) = (*this)(rows[i], c);
    return s;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

// ---------------------------------------------------------------- VectorSet

VectorSet::VectorSet(std::size_t dim, std::initializer_list<IntVector> xs) : dim_(dim) {
    for (const auto& x : xs) insert(x);
}

VectorSet::VectorSet(std::size_t dim, const std::vector<IntVector>& xs) : dim_(dim) {
    for (const auto& x : xs) insert(x);
}

bool VectorSet::insert(IntVector v) {
    if (v.size() != dim_) throw DimensionError("vector dimension does not match set dimension");
    if (!index_.insert(v).second) return false;
    members_.push_back(std::move(v));
    return true;
}

void VectorSet::sort() { std::sort(members_.begin(), members_.end()); }

VectorSet VectorSet::sorted() const {
    VectorSet s = *this;
    s.sort();
    return s;
}

VectorSet VectorSet::canonical() const {
    VectorSet out(dim_);
    for (const auto& v : members_) out.insert(v.canonical());
    out.sort();
    return out;
}

VectorSet VectorSet::symmetric() const {
    VectorSet out(dim_);
    for (const auto& v : members_) {
        out.insert(v);
        out.insert(-v);
    }
    out.sort();
    return out;
}

bool VectorSet::same_elements(const VectorSet& other) const {
    if (dim_ != other.dim_ || size() != other.size()) return false;
    return std::all_of(members_.begin(), members_.end(), [&](const IntVector& v) { return other.contains(v); });
}

// ---------------------------------------------------------------- order

bool conformal(std::span<const Int> x, std::span<const Int> y) {
    if (x.size() != y.size()) throw DimensionError("conformal: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Int a = x[i];
        if (a == 0) continue;
        const Int b = y[i];
        if (a > 0) {
            if (b < a) return false;
        } else {
            if (b > a) return false;
        }
    }
    return true;
}

bool conformal(const IntVector& x, const IntVector& y) { return conformal(x.span(), y.span()); }

bool sign_compatible(std::span<const Int> x, std::span<const Int> y) {
    if (x.size() != y.size()) throw DimensionError("sign_compatible: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if ((x[i] > 0 && y[i] < 0) || (x[i] < 0 && y[i] > 0)) return false;
    }
    return true;
}

bool is_conformal_sum_reducible(const IntVector& v, const VectorSet& set) {
    if (v.size() != set.dim()) throw DimensionError("is_conformal_sum_reducible: dimension mismatch");
    return std::any_of(set.begin(), set.end(), [&](const IntVector& g) { return g != v && conformal(g, v); });
}

SignMask sign_mask(std::span<const Int> v) {
    SignMask m;
    for (std::size_t i = 0; i < v.size() && i < 64; ++i) {
        if (v[i] > 0) m.pos |= (std::uint64_t{1} << i);
        if (v[i] < 0) m.neg |= (std::uint64_t{1} << i);
    }
    return m;
}

DominanceIndex::DominanceIndex(const VectorSet& set) {
    for (const auto& v : set) add(v);
}

void DominanceIndex::add(const IntVector& v) {
    vecs_.push_back(v);
    masks_.push_back(sign_mask(v.span()));
}

bool DominanceIndex::dominates(const IntVector& v) const {
    const SignMask vm = sign_mask(v.span());
    for (std::size_t i = 0; i < vecs_.size(); ++i) {
        if (!may_conform(masks_[i], vm)) continue;
        if (conformal(vecs_[i], v) && vecs_[i] != v) return true;
    }
    return false;
}

VectorSet minimal_filter(const VectorSet& set, unsigned threads) {
    // A strict dominator g ⊑ v, g != v always has a smaller 1-norm, so scanning
    // in norm order only ever needs to look at already-kept vectors. Members of
    // one norm class cannot dominate each other, so the class is checked in parallel.
    std::vector<std::pair<Int, std::size_t>> order;
    order.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (!set[i].is_zero()) order.emplace_back(set[i].norm1(), i);
    }
    std::sort(order.begin(), order.end());

    std::vector<const IntVector*> kept;
    std::vector<SignMask> kept_masks;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && order[j].first == order[i].first) ++j;
        std::vector<char> keep(j - i, 1);
        std::vector<SignMask> masks(j - i);
        const std::size_t known = kept.size();
        parallel_for(j - i, threads, [&](std::size_t t) {
            const IntVector& v = set[order[i + t].second];
            const SignMask vm = sign_mask(v.span());
            masks[t] = vm;
            for (std::size_t q = 0; q < known; ++q) {
                if (may_conform(kept_masks[q], vm) && conformal(*kept[q], v)) {
                    keep[t] = 0;
                    return;
                }
            }
        });
        for (std::size_t t = 0; t < keep.size(); ++t) {
            if (!keep[t]) continue;
            kept.push_back(&set[order[i + t].second]);
            kept_masks.push_back(masks[t]);
        }
        i = j;
    }

    VectorSet out(set.dim());
    for (const auto* v : kept) out.insert(*v);
    out.sort();
    return out;
}

bool kernel_member(const IntMatrix& a, const IntVector& x) {
    if (x.size() != a.cols()) throw DimensionError("kernel_member: dimension mismatch");
    return !x.is_zero() && a.multiply(x).is_zero();
}

// ---------------------------------------------------------------- determinants and rank

Int bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw DimensionError("determinant of non-square matrix");
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                const Int num = checked::sub(checked::mul(m(i, j), m(k, k)), checked::mul(m(i, k), m(k, j)));
                m(i, j) = num / prev;
            }
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

Int gcd_of(std::span<const Int> v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    return g;
}

}  // namespace

std::vector<std::size_t> independent_rows(const IntMatrix& a) {
    struct Pivot {
        std::vector<Int> row;
        std::size_t col;
    };
    std::vector<Pivot> basis;
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::vector<Int> v(a.row(r).begin(), a.row(r).end());
        for (const auto& b : basis) {
            const Int f = v[b.col];
            if (f == 0) continue;
            const Int p = b.row[b.col];
            for (std::size_t c = 0; c < v.size(); ++c)
                v[c] = checked::sub(checked::mul(v[c], p), checked::mul(b.row[c], f));
            if (const Int g = gcd_of(v); g > 1)
                for (Int& x : v) x /= g;
        }
        auto nz = std::find_if(v.begin(), v.end(), [](Int x) { return x != 0; });
        if (nz == v.end()) continue;
        const auto pivot = static_cast<std::size_t>(nz - v.begin());
        basis.push_back({std::move(v), pivot});
        chosen.push_back(r);
    }
    return chosen;
}

std::size_t rank(const IntMatrix& a) { return independent_rows(a).size(); }

Int binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = checked::mul(r, static_cast<Int>(n - k + i)) / static_cast<Int>(i);
    return r;
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Int max_subdeterminant(const IntMatrix& a, std::size_t max_size) {
    Int best = 0;
    const std::size_t top = std::min({max_size, a.rows(), a.cols()});
    for (std::size_t k = 1; k <= top; ++k) {
        std::vector<std::size_t> rows(k);
        std::iota(rows.begin(), rows.end(), 0);
        do {
            const IntMatrix sub_rows = a.select_rows(rows);
            std::vector<std::size_t> cols(k);
            std::iota(cols.begin(), cols.end(), 0);
            do {
                best = std::max(best, checked::abs(bareiss_determinant(sub_rows.select_columns(cols))));
            } while (next_combination(cols, a.cols()));
        } while (next_combination(rows, a.rows()));
    }
    return best;
}

GraverBounds graver_bounds(const IntMatrix& a, Int submatrix_cap) {
    const auto basis = independent_rows(a);
    const std::size_t r = basis.size();
    if (r == 0) throw std::invalid_argument("graver_bounds: matrix is zero");
    const std::size_t n = a.cols();

    auto count_for = [&](std::size_t rows) {
        Int total = 0;
        for (std::size_t k = 1; k <= r; ++k) {
            const Int c = checked::mul(binomial(rows, k), binomial(n, k));
            total = checked::add(total, c);
            if (total > submatrix_cap) return total;
        }
        return total;
    };

    GraverBounds b;
    b.rank = r;
    if (count_for(a.rows()) <= submatrix_cap) {
        b.delta = max_subdeterminant(a, r);
    } else if (count_for(r) <= submatrix_cap) {
        b.delta = max_subdeterminant(a.select_rows(basis), r);
        b.over_row_basis = true;
    } else {
        throw BoundsUnavailable("graver_bounds: submatrix count exceeds cap " + std::to_string(submatrix_cap));
    }
    const Int nr = static_cast<Int>(n - r);
    b.inf_bound = checked::mul(nr, b.delta);
    b.one_bound = checked::mul(checked::mul(nr, static_cast<Int>(r + 1)), b.delta);
    return b;
}

}  // namespace graver
