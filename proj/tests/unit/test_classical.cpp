#include <doctest.h>

#include "../support/bridge.hpp"

#include "graver/classical.hpp"

#include <random>

using namespace graver;

TEST_CASE("pottier reproduces the printed bases") {
    for (const char* name : {"fourcoin", "variation", "snakewise"}) {
        CAPTURE(name);
        const IntMatrix a = bridge::fixture_matrix(std::string(name) + ".mat");
        const VectorSet g = pottier(a);
        const VectorSet ref = bridge::golden(std::string(name) + ".graver").canonical();
        CHECK(g.same_elements(ref));
        for (const auto& v : g) CHECK(v.is_canonical());
    }
}

TEST_CASE("pottier agrees with box enumeration on small matrices") {
    // The variation basis fits in |x_i| <= 2, the four-coin basis in |x_i| <= 9.
    const IntMatrix var = bridge::fixture_matrix("variation.mat");
    CHECK(bridge::as_set(pottier(var)) == oracle::graver_in_box(bridge::from_matrix(var), 3));
    const IntMatrix coin = bridge::fixture_matrix("fourcoin.mat");
    CHECK(bridge::as_set(pottier(coin)) == oracle::graver_in_box(bridge::from_matrix(coin), 10));
}

TEST_CASE("pottier on random small matrices") {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 3 + t % 2;
        const auto a = oracle::random_matrix(rng, 1, n, -3, 3);
        const IntMatrix am = bridge::to_matrix(a);
        if (rank(am) == 0) continue;
        const VectorSet g = pottier(am);
        // Entries of one-row Graver elements are bounded by the largest |a_ij| times (n - 1).
        Int w = 0;
        for (auto x : a[0]) w = std::max<Int>(w, x < 0 ? -x : x);
        CAPTURE(am(0, 0));
        CHECK(bridge::as_set(g) == oracle::graver_in_box(a, w * static_cast<Int>(n - 1)));
    }
}

TEST_CASE("lattice basis spans the kernel") {
    const IntMatrix a = bridge::fixture_matrix("variation.mat");
    const VectorSet basis = lattice_basis(a);
    CHECK(basis.size() == 3);
    for (const auto& v : basis) CHECK(kernel_member(a, v));
    CHECK(lattice_basis(IntMatrix{{1, 0}, {0, 1}}).empty());
}

TEST_CASE("normal form reduces by conformal divisors") {
    const VectorSet g(2, {{1, -1}, {1, 1}});
    CHECK(normal_form({3, -1}, g.symmetric()).norm1() < IntVector{3, -1}.norm1());
    CHECK(normal_form({2, 0}, g.symmetric()) == IntVector{2, 0});
    CHECK(normal_form({2, -2}, g.symmetric()).is_zero());
}

TEST_CASE("pottier of a full-rank matrix is empty") {
    CHECK(pottier(IntMatrix{{1, 2}, {3, 4}}).empty());
}

TEST_CASE("completion counts its work") {
    CompletionStats st;
    const VectorSet g = pottier(bridge::fixture_matrix("fourcoin.mat"), &st);
    CHECK(g.size() == 5);
    CHECK(st.candidates_processed > 0);
    CHECK(st.added >= 5);
}
