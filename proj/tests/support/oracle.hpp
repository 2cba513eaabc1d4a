#pragma once

// Brute-force reference computations for the tests. Nothing here calls into the
// library code being checked; vectors are plain std::vector<long long>.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#ifndef GRAVER_FIXTURE_DIR
#error "GRAVER_FIXTURE_DIR must be defined"
#endif

namespace oracle {

using Vec = std::vector<long long>;
using Mat = std::vector<Vec>;

inline std::string fixture(const std::string& name) { return std::string(GRAVER_FIXTURE_DIR) + "/" + name; }

inline Vec mul(const Mat& a, const Vec& x) {
    Vec r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
    return r;
}

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

inline bool below(const Vec& x, const Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] * y[i] < 0) return false;
        if ((x[i] < 0 ? -x[i] : x[i]) > (y[i] < 0 ? -y[i] : y[i])) return false;
    }
    return true;
}

inline Vec canonical(Vec v) {
    for (long long x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

// Calls visit(x) for every integer point of the box [lo, hi] (odometer order).
inline void for_box(const Vec& lo, const Vec& hi, const std::function<void(const Vec&)>& visit) {
    Vec x = lo;
    const std::size_t n = lo.size();
    for (std::size_t i = 0; i < n; ++i)
        if (lo[i] > hi[i]) return;
    while (true) {
        visit(x);
        std::size_t i = 0;
        while (i < n && x[i] == hi[i]) x[i] = lo[i], ++i;
        if (i == n) return;
        ++x[i];
    }
}

// All conformally minimal nonzero kernel vectors with |x_i| <= w, canonical
// sign. Exact Graver basis whenever w is at least the largest entry of any
// element.
inline std::set<Vec> graver_in_box(const Mat& a, long long w) {
    const std::size_t n = a.empty() ? 0 : a[0].size();
    std::vector<Vec> kernel;
    for_box(Vec(n, -w), Vec(n, w), [&](const Vec& x) {
        if (!is_zero(x) && is_zero(mul(a, x))) kernel.push_back(x);
    });
    std::sort(kernel.begin(), kernel.end(), [](const Vec& p, const Vec& q) {
        auto n1 = [](const Vec& v) {
            long long s = 0;
            for (long long x : v) s += x < 0 ? -x : x;
            return s;
        };
        return n1(p) < n1(q);
    });
    std::vector<Vec> minimal;
    for (const auto& v : kernel) {
        bool dominated = false;
        for (const auto& m : minimal)
            if (below(m, v)) {
                dominated = true;
                break;
            }
        if (!dominated) minimal.push_back(v);
    }
    std::set<Vec> out;
    for (auto& v : minimal) out.insert(canonical(v));
    return out;
}

// Laplace expansion; small matrices only.
inline long long det(const Mat& m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long d = 0;
    for (std::size_t c = 0; c < n; ++c) {
        Mat minor;
        for (std::size_t r = 1; r < n; ++r) {
            Vec row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        d += ((c % 2) ? -1 : 1) * m[0][c] * det(minor);
    }
    return d;
}

// Every k-subset of {0..n-1}, lexicographic.
inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> s(k);
    std::iota(s.begin(), s.end(), 0);
    if (k > n) return;
    while (true) {
        visit(s);
        std::size_t i = k;
        while (i > 0 && s[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++s[i - 1];
        for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

struct MinorScan {
    std::size_t rank = 0;
    long long max_abs = 0;
};

// Rank as the size of the largest nonzero minor and the largest |minor| of any size.
inline MinorScan scan_minors(const Mat& a) {
    MinorScan out;
    const std::size_t m = a.size(), n = a.empty() ? 0 : a[0].size();
    for (std::size_t k = 1; k <= std::min(m, n); ++k) {
        subsets(m, k, [&](const std::vector<std::size_t>& rows) {
            subsets(n, k, [&](const std::vector<std::size_t>& cols) {
                Mat sub;
                for (auto r : rows) {
                    Vec row;
                    for (auto c : cols) row.push_back(a[r][c]);
                    sub.push_back(row);
                }
                const long long d = det(sub);
                if (d != 0) out.rank = std::max(out.rank, k);
                out.max_abs = std::max(out.max_abs, d < 0 ? -d : d);
            });
        });
    }
    return out;
}

struct Optimum {
    std::optional<Vec> x;
    double value = std::numeric_limits<double>::infinity();
    std::size_t feasible = 0;
};

inline Optimum brute_minimum(const Mat& a, const Vec& b, const Vec& lo, const Vec& hi,
                             const std::function<double(const Vec&)>& f) {
    Optimum best;
    for_box(lo, hi, [&](const Vec& x) {
        if (mul(a, x) != b) return;
        ++best.feasible;
        const double v = f(x);
        if (v < best.value) best.value = v, best.x = x;
    });
    return best;
}

inline Mat random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, long long lo, long long hi) {
    std::uniform_int_distribution<long long> d(lo, hi);
    Mat a(m, Vec(n));
    for (auto& row : a)
        for (auto& x : row) x = d(rng);
    return a;
}

}  // namespace oracle
