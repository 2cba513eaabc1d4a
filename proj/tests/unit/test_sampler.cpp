#include <doctest.h>

#include "../support/bridge.hpp"

#include "graver/sampler.hpp"

#include <map>
#include <random>

using namespace graver;

namespace {

// Every bitstring of an n-bit QUBO whose decoded point has residual 1-norm <= e,
// found by plain enumeration over the integer window.
std::set<oracle::Vec> window_points(const oracle::Mat& a, const oracle::Vec& b, const EncodingSpec& enc, long long e) {
    const std::size_t n = enc.num_vars();
    oracle::Vec lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) lo[i] = enc.lower(i), hi[i] = enc.upper(i);
    std::set<oracle::Vec> out;
    oracle::for_box(lo, hi, [&](const oracle::Vec& x) {
        const auto r = oracle::mul(a, x);
        long long s = 0;
        for (std::size_t i = 0; i < r.size(); ++i) s += std::llabs(r[i] - b[i]);
        if (s <= e) out.insert(x);
    });
    return out;
}

}  // namespace

TEST_CASE("exhaustive backend returns every low-residual point of the window") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = 1 + t % 2, n = 3 + t % 3;
        const auto a = oracle::random_matrix(rng, m, n, -4, 4);
        oracle::Vec b(m, 0);
        if (t % 2) b[0] = static_cast<long long>(rng() % 7) - 3;
        const EncodingSpec enc = EncodingSpec::uniform(n, 3, -4);
        const IntMatrix am = bridge::to_matrix(a);
        const QuboProblem q = b == oracle::Vec(m, 0) ? build_kernel_qubo(am, enc)
                                                     : build_feasibility_qubo(am, bridge::to_vector(b), enc);
        SamplerConfig cfg;
        cfg.backend = Backend::exhaustive;
        cfg.max_sum_error = 2;
        const SampleBatch batch = sample_qubo(q, cfg);

        std::set<oracle::Vec> got;
        for (const auto& s : batch.samples) {
            CHECK(s.energy == q.energy(s.bits));
            CHECK(s.decoded == decode(s.bits, enc));
            CHECK(s.sum_error == s.residual.norm1());
            got.insert(bridge::from_vector(s.decoded));
        }
        CHECK(got.size() == batch.size());
        CHECK(got == window_points(a, b, enc, 2));
    }
}

TEST_CASE("samples are sorted by energy then bits") {
    const QuboProblem q = build_kernel_qubo(bridge::fixture_matrix("fourcoin.mat"), EncodingSpec::uniform(4, 3, -4));
    for (Backend be : {Backend::exhaustive, Backend::simulated_annealing}) {
        SamplerConfig cfg;
        cfg.backend = be;
        cfg.reads = 300;
        cfg.seed = 9;
        const SampleBatch batch = sample_qubo(q, cfg);
        REQUIRE(batch.size() > 1);
        for (std::size_t i = 1; i < batch.size(); ++i) {
            const auto& p = batch.samples[i - 1];
            const auto& c = batch.samples[i];
            CHECK((p.energy < c.energy || (p.energy == c.energy && p.bits < c.bits)));
        }
    }
}

TEST_CASE("annealing is reproducible and seed dependent") {
    const QuboProblem q = build_kernel_qubo(bridge::fixture_matrix("variation.mat"), EncodingSpec::uniform(6, 3, -4));
    SamplerConfig cfg;
    cfg.reads = 200;
    cfg.seed = 1234;
    const auto run = [&](unsigned threads, std::uint64_t seed) {
        SamplerConfig c = cfg;
        c.threads = threads;
        c.seed = seed;
        std::vector<Bits> out;
        for (const auto& s : sample_qubo(q, c).samples) out.push_back(s.bits);
        return out;
    };
    const auto a = run(1, 1234);
    CHECK(a == run(1, 1234));
    CHECK(a == run(4, 1234));
    CHECK(a != run(1, 1235));
}

TEST_CASE("annealing reaches the ground states of a small kernel QUBO") {
    // The zero vector sits inside the window, so the minimum energy is 0.
    const QuboProblem q = build_kernel_qubo(bridge::fixture_matrix("fourcoin.mat"), EncodingSpec::uniform(4, 4, -8));
    SamplerConfig cfg;
    cfg.reads = 2000;
    cfg.seed = 3;
    const SampleBatch batch = sample_qubo(q, cfg);
    REQUIRE_FALSE(batch.samples.empty());
    CHECK(batch.samples.front().energy == 0);
    std::size_t exact = 0;
    for (const auto& x : batch.exact()) {
        CHECK(kernel_member(q.matrix(), x) == !x.is_zero());
        ++exact;
    }
    CHECK(exact >= 4);
}

TEST_CASE("max_unique truncates after sorting") {
    const QuboProblem q = build_kernel_qubo(bridge::fixture_matrix("fourcoin.mat"), EncodingSpec::uniform(4, 3, -4));
    SamplerConfig cfg;
    cfg.backend = Backend::exhaustive;
    const SampleBatch all = sample_qubo(q, cfg);
    cfg.max_unique = 5;
    const SampleBatch top = sample_qubo(q, cfg);
    REQUIRE(top.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(top.samples[i].bits == all.samples[i].bits);
}

TEST_CASE("error histogram") {
    const QuboProblem q = build_kernel_qubo(IntMatrix{{1, 2, 3}}, EncodingSpec::uniform(3, 2, -2));
    SamplerConfig cfg;
    cfg.backend = Backend::exhaustive;
    cfg.max_sum_error = 100;
    const SampleBatch batch = sample_qubo(q, cfg);
    CHECK(batch.size() == 64);
    std::map<Int, std::size_t> by_error;
    for (const auto& s : batch.samples) ++by_error[std::min<Int>(s.sum_error, 6)];
    const ErrorHistogram h = partition_by_error(batch);
    CHECK(h.total == 64);
    for (std::size_t k = 0; k < ErrorHistogram::kBuckets; ++k) CHECK(h.counts[k] == by_error[static_cast<Int>(k)]);
    CHECK(h.percent(0) == doctest::Approx(100.0 * static_cast<double>(by_error[0]) / 64.0));
}

TEST_CASE("configuration checks") {
    CHECK(parse_backend("sa") == Backend::simulated_annealing);
    CHECK(parse_backend("exhaustive") == Backend::exhaustive);
    CHECK_THROWS_AS(parse_backend("qpu"), std::invalid_argument);
    CHECK(to_string(Backend::exhaustive) == "exhaustive");

    SamplerConfig c;
    c.t_lo = 20;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.reads = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    const QuboProblem big = build_kernel_qubo(IntMatrix{{1, 1, 1, 1}}, EncodingSpec::uniform(4, 8, 0));
    SamplerConfig ex;
    ex.backend = Backend::exhaustive;
    CHECK_THROWS_AS(sample_qubo(big, ex), SamplerError);
}
