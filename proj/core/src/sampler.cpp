#include "graver/sampler.hpp"

#include "graver/parallel.hpp"
#include "graver/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

namespace graver {

Backend parse_backend(const std::string& name) {
    if (name == "exhaustive") return Backend::exhaustive;
    if (name == "sa" || name == "simulated_annealing" || name == "anneal") return Backend::simulated_annealing;
    throw std::invalid_argument("unknown sampler backend '" + name + "' (expected exhaustive or sa)");
}

std::string to_string(Backend b) { return b == Backend::exhaustive ? "exhaustive" : "sa"; }

void SamplerConfig::validate() const {
    if (reads < 1) throw std::invalid_argument("sampler: reads must be >= 1");
    if (sweeps < 1) throw std::invalid_argument("sampler: sweeps must be >= 1");
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw std::invalid_argument("sampler: temperatures need t_hi > t_lo > 0");
    if (max_sum_error < 0) throw std::invalid_argument("sampler: max_sum_error must be >= 0");
}

std::vector<IntVector> SampleBatch::exact() const {
    std::vector<IntVector> out;
    for (const auto& s : samples)
        if (s.sum_error == 0) out.push_back(s.decoded);
    return out;
}

namespace {

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto v : b) h = (h ^ v) * 0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};

Sample make_sample(const QuboProblem& q, Bits bits) {
    Sample s;
    s.decoded = decode(bits, q.encoding());
    s.residual = q.matrix().multiply(s.decoded) - q.target();
    s.sum_error = s.residual.norm1();
    s.energy = q.energy(bits);
    s.bits = std::move(bits);
    return s;
}

void finish(SampleBatch& batch, const SamplerConfig& cfg) {
    std::sort(batch.samples.begin(), batch.samples.end(), [](const Sample& a, const Sample& b) {
        return std::tie(a.energy, a.bits) < std::tie(b.energy, b.bits);
    });
    if (cfg.max_unique > 0 && batch.samples.size() > cfg.max_unique) batch.samples.resize(cfg.max_unique);
}

SampleBatch exhaustive(const QuboProblem& q, const SamplerConfig& cfg) {
    const std::size_t nb = q.num_bits();
    if (nb > cfg.exhaustive_bit_cap || nb >= 63)
        throw SamplerError("exhaustive sampler: " + std::to_string(nb) + " bits exceeds the cap of " +
                           std::to_string(cfg.exhaustive_bit_cap));
    const EncodingSpec& enc = q.encoding();
    const IntMatrix& a = q.matrix();
    const std::size_t m = a.rows();

    // Bit p -> (variable, weight).
    std::vector<std::size_t> var(nb);
    std::vector<Int> w(nb);
    for (std::size_t i = 0; i < enc.num_vars(); ++i)
        for (int b = 0; b < enc.length(i); ++b) {
            var[enc.bit_offset(i) + static_cast<std::size_t>(b)] = i;
            w[enc.bit_offset(i) + static_cast<std::size_t>(b)] = enc.weight(i, b);
        }

    // Gray-code walk with an incrementally maintained residual.
    IntVector x(enc.lowers());
    IntVector r = a.multiply(x) - q.target();
    std::vector<std::uint64_t> hits;
    const std::uint64_t total = std::uint64_t{1} << nb;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 0;; ++step) {
        if (r.norm1() <= cfg.max_sum_error) hits.push_back(gray);
        if (step + 1 == total) break;
        const auto p = static_cast<std::size_t>(std::countr_zero(step + 1));
        const std::uint64_t bit = std::uint64_t{1} << p;
        const Int sign = (gray & bit) ? -1 : 1;
        gray ^= bit;
        const Int delta = sign * w[p];
        x[var[p]] += delta;
        for (std::size_t row = 0; row < m; ++row) r[row] = checked::add(r[row], checked::mul(delta, a(row, var[p])));
    }

    SampleBatch batch;
    batch.reads = 1;
    batch.samples.resize(hits.size());
    parallel_for(hits.size(), cfg.threads, [&](std::size_t h) {
        Bits bits(nb);
        for (std::size_t p = 0; p < nb; ++p) bits[p] = static_cast<std::uint8_t>((hits[h] >> p) & 1U);
        batch.samples[h] = make_sample(q, std::move(bits));
    });
    finish(batch, cfg);
    return batch;
}

// One read: uniform random start, geometric cooling, single-bit Metropolis.
Bits anneal_once(const std::vector<Int>& sym, std::size_t nb, const SamplerConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    Bits x(nb);
    for (auto& v : x) v = static_cast<std::uint8_t>(rng.next() >> 63);

    // field[p] = Q_pp + sum_{q != p} Q_pq x_q ; flipping p changes energy by (1 - 2 x_p) field[p].
    std::vector<Int> field(nb);
    for (std::size_t p = 0; p < nb; ++p) {
        const Int* row = sym.data() + p * nb;
        Int f = row[p];
        for (std::size_t k = 0; k < nb; ++k)
            if (k != p && x[k]) f += row[k];
        field[p] = f;
    }

    const double ratio = cfg.sweeps > 1 ? std::pow(cfg.t_lo / cfg.t_hi, 1.0 / static_cast<double>(cfg.sweeps - 1)) : 1.0;
    double t = cfg.sweeps > 1 ? cfg.t_hi : cfg.t_lo;
    for (std::size_t s = 0; s < cfg.sweeps; ++s, t *= ratio) {
        const double beta = 1.0 / t;
        for (std::size_t p = 0; p < nb; ++p) {
            const Int de = x[p] ? -field[p] : field[p];
            if (de > 0 && rng.uniform() >= std::exp(-beta * static_cast<double>(de))) continue;
            const Int dir = x[p] ? -1 : 1;
            x[p] ^= 1U;
            const Int* row = sym.data() + p * nb;
            for (std::size_t k = 0; k < nb; ++k)
                if (k != p) field[k] += dir * row[k];
        }
    }
    return x;
}

SampleBatch simulated_annealing(const QuboProblem& q, const SamplerConfig& cfg) {
    const std::size_t nb = q.num_bits();
    std::vector<Int> sym(nb * nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) sym[i * nb + j] = q.pair(i, j);

    std::vector<Bits> finals(cfg.reads);
    parallel_for(cfg.reads, cfg.threads,
                 [&](std::size_t r) { finals[r] = anneal_once(sym, nb, cfg, mix_seed(cfg.seed, r)); });

    // Dedup in read order, independent of scheduling.
    std::unordered_set<Bits, BitsHash> seen;
    std::vector<Bits> unique;
    for (auto& b : finals)
        if (seen.insert(b).second) unique.push_back(std::move(b));

    std::vector<Sample> all(unique.size());
    parallel_for(unique.size(), cfg.threads, [&](std::size_t i) { all[i] = make_sample(q, std::move(unique[i])); });

    SampleBatch batch;
    batch.reads = cfg.reads;
    for (auto& s : all)
        if (s.sum_error <= cfg.max_sum_error) batch.samples.push_back(std::move(s));
    finish(batch, cfg);
    return batch;
}

}  // namespace

SampleBatch sample_qubo(const QuboProblem& q, const SamplerConfig& cfg) {
    cfg.validate();
    if (q.num_bits() == 0) throw SamplerError("sampler: QUBO has no bits");
    return cfg.backend == Backend::exhaustive ? exhaustive(q, cfg) : simulated_annealing(q, cfg);
}

ErrorHistogram partition_by_error(const SampleBatch& batch) {
    ErrorHistogram h;
    for (const auto& s : batch.samples) {
        const auto b = static_cast<std::size_t>(std::min<Int>(s.sum_error, ErrorHistogram::kBuckets - 1));
        ++h.counts[b];
        ++h.total;
    }
    return h;
}

}  // namespace graver
