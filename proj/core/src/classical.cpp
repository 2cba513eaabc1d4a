#include "graver/classical.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <queue>
#include <tuple>
#include <unordered_set>

namespace graver {

namespace {

// Largest λ with λ·h ⊑ r, or 0 when h is not a conformal divisor of r.
Int divisor_multiplicity(std::span<const Int> h, std::span<const Int> r) {
    Int lambda = -1;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Int a = h[i];
        if (a == 0) continue;
        const Int b = r[i];
        if ((a > 0 && b < a) || (a < 0 && b > a)) return 0;
        const Int q = b / a;
        lambda = lambda < 0 ? q : std::min(lambda, q);
    }
    return lambda < 0 ? 0 : lambda;
}

void subtract_multiple(IntVector& r, Int lambda, const IntVector& h, Int sign) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (h[i] != 0) r[i] = checked::sub(r[i], checked::mul(lambda * sign, h[i]));
    }
}

}  // namespace

IntVector normal_form(const IntVector& s, const VectorSet& g) {
    if (s.size() != g.dim()) throw DimensionError("normal_form: dimension mismatch");
    IntVector r = s;
    // Once a member fails to divide r it never divides a later remainder
    // (every remainder is ⊑ the one before), so one ordered pass suffices.
    for (const auto& h : g) {
        if (h.is_zero()) continue;
        if (const Int lambda = divisor_multiplicity(h.span(), r.span()); lambda > 0) {
            subtract_multiple(r, lambda, h, 1);
        }
    }
    return r;
}

// ---------------------------------------------------------------- kernel basis

namespace {

struct Egcd {
    Int g, s, t;
};

Egcd extended_gcd(Int a, Int b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const Int q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, checked::sub(old_r, checked::mul(q, r)));
        std::tie(old_s, s) = std::make_tuple(s, checked::sub(old_s, checked::mul(q, s)));
        std::tie(old_t, t) = std::make_tuple(t, checked::sub(old_t, checked::mul(q, t)));
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

void size_reduce(std::vector<IntVector>& basis) {
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (i == j) continue;
                const Int cur = basis[i].norm1();
                IntVector plus = basis[i] + basis[j];
                IntVector minus = basis[i] - basis[j];
                if (plus.norm1() < cur && plus.norm1() <= minus.norm1()) {
                    basis[i] = std::move(plus);
                    improved = true;
                } else if (minus.norm1() < cur) {
                    basis[i] = std::move(minus);
                    improved = true;
                }
            }
        }
    }
}

}  // namespace

VectorSet lattice_basis(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(n);

    auto combine = [&](IntMatrix& mat, std::size_t rows, std::size_t p, std::size_t j, Int s, Int t, Int x, Int y) {
        // col_p <- s*col_p + t*col_j ; col_j <- x*col_p + y*col_j  (unimodular)
        for (std::size_t i = 0; i < rows; ++i) {
            const Int cp = mat(i, p);
            const Int cj = mat(i, j);
            mat(i, p) = checked::add(checked::mul(s, cp), checked::mul(t, cj));
            mat(i, j) = checked::add(checked::mul(x, cp), checked::mul(y, cj));
        }
    };

    std::size_t pivot = 0;
    for (std::size_t row = 0; row < m && pivot < n; ++row) {
        for (std::size_t j = pivot + 1; j < n; ++j) {
            const Int b = h(row, j);
            if (b == 0) continue;
            const Int av = h(row, pivot);
            const auto [g, s, t] = extended_gcd(av, b);
            const Int x = -(b / g);
            const Int y = av / g;
            combine(h, m, pivot, j, s, t, x, y);
            combine(u, n, pivot, j, s, t, x, y);
        }
        if (h(row, pivot) != 0) ++pivot;
    }

    std::vector<IntVector> basis;
    for (std::size_t j = pivot; j < n; ++j) basis.push_back(u.column(j));
    size_reduce(basis);

    VectorSet out(n);
    for (auto& v : basis) {
        assert(a.multiply(v).is_zero());
        out.insert(v.canonical());
    }
    return out;
}

// ---------------------------------------------------------------- completion

namespace {

// Generating set kept as canonical representatives; each stands for ±h.
class Completion {
public:
    Completion(const IntMatrix& a, CompletionStats& stats)
        : a_(a), n_(a.cols()), stats_(stats) {}

    void seed(const VectorSet& generators) {
        for (const auto& f : generators) {
            const IntVector c = f.canonical();
            if (c.is_zero() || seen_.count(c)) continue;
            seen_.insert(c);
            add(c);
        }
    }

    void run() {
        while (!queue_.empty()) {
            Item item = queue_.top();
            queue_.pop();
            ++stats_.candidates_processed;
            IntVector r = reduce(candidates_[item.slot]);
            candidates_[item.slot] = IntVector();
            if (r.is_zero()) continue;
            r = r.canonical();
            if (!members_.insert(r).second) continue;
            add(r);
        }
    }

    VectorSet result() const {
        VectorSet all(n_);
        for (const auto& h : reps_) {
            all.insert(h);
            all.insert(-h);
        }
        return minimal_filter(all).canonical();
    }

private:
    struct Item {
        Int norm;
        std::size_t seq;
        std::size_t slot;
        bool operator>(const Item& o) const { return std::tie(norm, seq) > std::tie(o.norm, o.seq); }
    };

    IntVector reduce(IntVector r) {
        // reps_ is scanned in canonical (lexicographic) order via order_.
        SignMask rm = sign_mask(r.span());
        for (std::size_t idx : order_) {
            const IntVector& h = reps_[idx];
            const SignMask& hm = masks_[idx];
            if (!may_conform(hm, rm) && !may_conform({hm.neg, hm.pos}, rm)) continue;
            Int lambda = divisor_multiplicity(h.span(), r.span());
            Int sign = 1;
            if (lambda == 0) {
                lambda = divisor_multiplicity((-h).span(), r.span());
                sign = -1;
            }
            if (lambda == 0) continue;
            subtract_multiple(r, lambda, h, sign);
            stats_.reductions += static_cast<std::size_t>(lambda);
            if (r.is_zero()) break;
            rm = sign_mask(r.span());
        }
        return r;
    }

    void push(IntVector c) {
        c = c.canonical();
        if (c.is_zero() || !seen_.insert(c).second) return;
        const Int norm = c.norm1();
        candidates_.push_back(std::move(c));
        queue_.push({norm, seq_++, candidates_.size() - 1});
    }

    void add(const IntVector& r) {
        assert(a_.multiply(r).is_zero());
        ++stats_.added;
        members_.insert(r);
        for (const auto& h : reps_) {
            if (sign_compatible(r.span(), h.span())) {
                ++stats_.skipped_sign_compatible;
            } else {
                push(r + h);
            }
            const IntVector neg = -h;
            if (sign_compatible(r.span(), neg.span())) {
                ++stats_.skipped_sign_compatible;
            } else {
                push(r - h);
            }
        }
        reps_.push_back(r);
        masks_.push_back(sign_mask(r.span()));
        const auto pos = std::lower_bound(order_.begin(), order_.end(), r,
                                          [&](std::size_t i, const IntVector& v) { return reps_[i] < v; });
        order_.insert(pos, reps_.size() - 1);
    }

    const IntMatrix& a_;
    std::size_t n_;
    CompletionStats& stats_;
    std::vector<IntVector> reps_;
    std::vector<SignMask> masks_;
    std::vector<std::size_t> order_;
    std::unordered_set<IntVector, IntVectorHash> members_;
    std::unordered_set<IntVector, IntVectorHash> seen_;
    std::vector<IntVector> candidates_;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue_;
    std::size_t seq_ = 0;
};

}  // namespace

VectorSet pottier(const IntMatrix& a, const VectorSet& generators, CompletionStats* stats) {
    if (generators.dim() != a.cols()) throw DimensionError("pottier: generator dimension mismatch");
    CompletionStats local;
    Completion c(a, stats ? *stats : local);
    c.seed(generators);
    c.run();
    return c.result();
}

VectorSet pottier(const IntMatrix& a, CompletionStats* stats) { return pottier(a, lattice_basis(a), stats); }

}  // namespace graver
