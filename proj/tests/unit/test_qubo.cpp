#include <doctest.h>

#include "../support/bridge.hpp"

#include "graver/qubo.hpp"

#include <random>
#include <sstream>

using namespace graver;

namespace {

// Decoding written out from the encoding definition: x_i = L_i + sum_b w_b X_(i,b),
// w_b = 2^b (binary) or 1 (unary), variables laid out back to back.
oracle::Vec decode_by_hand(const Bits& bits, const std::vector<int>& k, const oracle::Vec& lower, bool unary) {
    oracle::Vec x(k.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        x[i] = lower[i];
        for (int b = 0; b < k[i]; ++b) x[i] += bits[pos++] * (unary ? 1LL : (1LL << b));
    }
    return x;
}

long long squared_residual(const oracle::Mat& a, const oracle::Vec& x, const oracle::Vec& b) {
    const auto ax = oracle::mul(a, x);
    long long s = 0;
    for (std::size_t i = 0; i < ax.size(); ++i) s += (ax[i] - b[i]) * (ax[i] - b[i]);
    return s;
}

}  // namespace

TEST_CASE("energy equals the squared residual of the decoded point") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int t = 0; t < 400; ++t) {
        const std::size_t m = 1 + t % 3, n = 2 + t % 5;
        const auto a = oracle::random_matrix(rng, m, n, -6, 6);
        const bool unary = t % 4 == 3;
        std::vector<int> k(n);
        oracle::Vec lower(n), b(m);
        for (std::size_t i = 0; i < n; ++i) {
            k[i] = 1 + static_cast<int>(rng() % 4);
            lower[i] = static_cast<long long>(rng() % 9) - 4;
        }
        const bool feasibility = t % 2 == 1;
        if (feasibility)
            for (auto& v : b) v = static_cast<long long>(rng() % 21) - 10;
        const EncodingSpec enc(k, std::vector<Int>(lower.begin(), lower.end()),
                               unary ? EncodingScheme::unary : EncodingScheme::binary);
        const IntMatrix am = bridge::to_matrix(a);
        const QuboProblem q = feasibility ? build_feasibility_qubo(am, bridge::to_vector(b), enc) : build_kernel_qubo(am, enc);
        CHECK(q.kind() == (feasibility ? QuboKind::feasibility : QuboKind::kernel));
        REQUIRE(q.num_bits() == enc.total_bits());
        for (int s = 0; s < 10; ++s) {
            Bits x(q.num_bits());
            for (auto& bit : x) bit = static_cast<std::uint8_t>(coin(rng));
            const auto xd = decode_by_hand(x, k, lower, unary);
            CHECK(bridge::from_vector(decode(x, enc)) == xd);
            CHECK(q.energy(x) == squared_residual(a, xd, b));
            const auto r = oracle::mul(a, xd);
            oracle::Vec expect(m);
            for (std::size_t i = 0; i < m; ++i) expect[i] = r[i] - b[i];
            CHECK(bridge::from_vector(q.residual(x)) == expect);
        }
    }
}

TEST_CASE("QUBO storage is upper triangular") {
    const IntMatrix a{{1, 2}, {3, -1}};
    const QuboProblem q = build_kernel_qubo(a, EncodingSpec::uniform(2, 2, -2));
    for (std::size_t i = 0; i < q.num_bits(); ++i)
        for (std::size_t j = i + 1; j < q.num_bits(); ++j) CHECK(q.pair(j, i) == q.coeff(i, j));
}

TEST_CASE("Qi is A transposed A") {
    const IntMatrix a{{1, 2, 0}, {0, -1, 3}};
    const IntMatrix qi = build_qi(a);
    CHECK(qi == IntMatrix{{1, 2, 0}, {2, 5, -3}, {0, -3, 9}});
}

TEST_CASE("encoding ranges") {
    const EncodingSpec bin = EncodingSpec::uniform(2, 4, -8);
    CHECK(bin.upper(0) == 7);
    CHECK(bin.span(1) == 15);
    CHECK(bin.in_range({-8, 7}));
    CHECK_FALSE(bin.in_range({-9, 0}));
    const EncodingSpec un = EncodingSpec::uniform(1, 3, -1, EncodingScheme::unary);
    CHECK(un.upper(0) == 2);
    CHECK(un.total_bits() == 3);

    const auto st = AdaptiveState::uniform(3, 3, 1);
    const EncodingSpec e = spec_from_adaptive(st);
    CHECK(e.lower(0) == 1 - 4);
    CHECK(e.upper(0) == 1 + 3);
    CHECK(spec_from_adaptive(st, EncodingScheme::unary).lower(2) == 0);
    CHECK_THROWS(AdaptiveState::from({0}, {0}));
}

TEST_CASE("permutation round trip") {
    const Permutation p = Permutation::random(6, 99);
    const IntMatrix a = bridge::fixture_matrix("variation.mat");
    const IntMatrix ap = p.apply_columns(a);
    const IntVector x{1, -2, 0, 0, 2, -1};
    CHECK(p.to_original(p.from_original(x)) == x);
    // A x = (A P) (P^-1 x)
    CHECK(ap.multiply(p.from_original(x)) == a.multiply(x));
    CHECK(Permutation::random(6, 99).order() == p.order());
    CHECK_THROWS(Permutation({0, 0, 1}));

    const EncodingSpec enc({1, 2, 3}, {0, -1, -2});
    const EncodingSpec ep = enc.permuted(std::vector<std::size_t>{2, 0, 1});
    CHECK(ep.length(0) == 3);
    CHECK(ep.lower(2) == -1);
}

TEST_CASE("sparse QUBO text form") {
    const QuboProblem q = build_kernel_qubo(IntMatrix{{1, 1}}, EncodingSpec::uniform(2, 1, 0));
    std::ostringstream os;
    write_qubo(os, q);
    // X1^2 + X2^2 + 2 X1 X2 with zero offset.
    CHECK(os.str() == "2 0\n0 0 1\n0 1 2\n1 1 1\n");
}
