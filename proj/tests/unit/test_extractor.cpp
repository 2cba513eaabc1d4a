#include <doctest.h>

#include "../support/bridge.hpp"

#include "graver/extractor.hpp"

using namespace graver;

namespace {

ExtractionConfig exhaustive(std::size_t n, int k, Int box) {
    ExtractionConfig cfg;
    cfg.k = k;
    cfg.seed = 7;
    cfg.sampler.backend = Backend::exhaustive;
    cfg.box = {IntVector(n, -box), IntVector(n, box)};
    return cfg;
}

std::vector<std::size_t> new_counts(const ExtractionResult& r) {
    std::vector<std::size_t> out;
    for (const auto& it : r.report.iterations) out.push_back(it.new_elements);
    return out;
}

}  // namespace

TEST_CASE("exhaustive extraction recovers the four-coin basis") {
    const IntMatrix a = bridge::fixture_matrix("fourcoin.mat");
    const ExtractionResult r = extract(a, exhaustive(4, 4, 9));
    CHECK(bridge::as_set(r.graver) == oracle::graver_in_box(bridge::from_matrix(a), 10));
    CHECK(r.report.stop_reason == "stalled");
    for (const auto& v : r.report.kernel) CHECK(kernel_member(a, v));
}

TEST_CASE("exhaustive extraction recovers the variation basis") {
    const IntMatrix a = bridge::fixture_matrix("variation.mat");
    const ExtractionResult r = extract(a, exhaustive(6, 3, 6));
    CHECK(bridge::as_set(r.graver) == oracle::graver_in_box(bridge::from_matrix(a), 3));
}

TEST_CASE("iteration bookkeeping") {
    const IntMatrix a = bridge::fixture_matrix("fourcoin.mat");
    ExtractionConfig cfg = exhaustive(4, 4, 9);
    cfg.patience = 2;
    const ExtractionResult r = extract(a, cfg);
    const auto counts = new_counts(r);
    REQUIRE(counts.size() >= 3);
    // Ends on exactly `patience` idle iterations.
    CHECK(counts[counts.size() - 1] == 0);
    CHECK(counts[counts.size() - 2] == 0);
    std::size_t total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        total += counts[i];
        CHECK(r.report.iterations[i].graver_size == total);
        CHECK(r.report.iterations[i].iteration == i);
        CHECK(r.report.iterations[i].errors.total == r.report.iterations[i].samples);
    }
    CHECK(total == r.graver.size());
}

TEST_CASE("box clipping and unclipped runs") {
    const IntMatrix a = bridge::fixture_matrix("fourcoin.mat");
    const ExtractionResult clipped = extract(a, exhaustive(4, 4, 5));
    for (const auto& v : clipped.graver) {
        CHECK(v.norm_inf() <= 5);
        CHECK(v.is_canonical());
    }
    CHECK(clipped.graver.size() < 5);
    ExtractionConfig open = exhaustive(4, 4, 0);
    open.box = {};
    CHECK(extract(a, open).graver.size() == 5);
}

TEST_CASE("trivial kernel") {
    const ExtractionResult r = extract(IntMatrix{{1, 0}, {0, 1}}, ExtractionConfig{});
    CHECK(r.graver.empty());
    CHECK(r.report.iterations.size() == 1);
    CHECK(r.report.stop_reason == "trivial kernel");
}

TEST_CASE("annealing extraction is reproducible across thread counts") {
    const IntMatrix a = bridge::fixture_matrix("variation.mat");
    ExtractionConfig cfg;
    cfg.k = 3;
    cfg.seed = 21;
    cfg.max_iterations = 3;
    cfg.sampler.reads = 400;
    cfg.threads = 1;
    cfg.sampler.threads = 1;
    const ExtractionResult one = extract(a, cfg);
    cfg.threads = 4;
    cfg.sampler.threads = 4;
    const ExtractionResult four = extract(a, cfg);
    CHECK(one.graver.members() == four.graver.members());
    CHECK(new_counts(one) == new_counts(four));
    for (std::size_t i = 0; i < one.report.iterations.size(); ++i)
        CHECK(one.report.iterations[i].midpoints == four.report.iterations[i].midpoints);
    for (const auto& v : one.graver) CHECK(kernel_member(a, v));
}

TEST_CASE("fixed window without permutation") {
    const IntMatrix a = bridge::fixture_matrix("variation.mat");
    ExtractionConfig cfg = exhaustive(6, 3, 6);
    cfg.adaptive = false;
    cfg.permute = false;
    const ExtractionResult r = extract(a, cfg);
    for (const auto& it : r.report.iterations) {
        CHECK(it.midpoints == std::vector<Int>(6, 0));
        CHECK(it.lengths == std::vector<int>(6, 3));
    }
    CHECK(r.graver.size() == 10);
}

TEST_CASE("initial state and unary encoding") {
    const IntMatrix a = bridge::fixture_matrix("fourcoin.mat");
    ExtractionConfig cfg = exhaustive(4, 1, 9);
    cfg.initial = AdaptiveState::from({3, 0, -4, 1}, {4, 4, 4, 4});
    cfg.adaptive = false;
    cfg.max_iterations = 1;
    const ExtractionResult r = extract(a, cfg);
    CHECK(r.graver.contains(IntVector{0, 3, -4, 1}));

    ExtractionConfig un = exhaustive(4, 6, 9);
    un.scheme = EncodingScheme::unary;
    un.adaptive = false;
    un.max_iterations = 2;
    for (const auto& v : extract(a, un).graver) CHECK(kernel_member(a, v));
}

TEST_CASE("configuration checks") {
    const IntMatrix a = bridge::fixture_matrix("fourcoin.mat");
    ExtractionConfig cfg;
    cfg.k = 0;
    CHECK_THROWS_AS(extract(a, cfg), std::invalid_argument);
    cfg = {};
    cfg.box = {IntVector{-1, -1}, IntVector{1, 1}};
    CHECK_THROWS(extract(a, cfg));
    cfg = {};
    cfg.initial = AdaptiveState::uniform(3, 2);
    CHECK_THROWS(extract(a, cfg));
    const Box b = truncated_box(IntVector{0, -2}, IntVector{3, 1});
    CHECK(b.lo == IntVector{-3, -3});
    CHECK(b.hi == IntVector{3, 3});
    CHECK(b.contains(IntVector{3, -3}));
    CHECK_FALSE(b.contains(IntVector{4, 0}));
}
