#include "graver/extractor.hpp"

#include "graver/random.hpp"

#include <stdexcept>

namespace graver {

bool Box::contains(const IntVector& x) const {
    if (lo.size() == 0) return true;
    if (x.size() != lo.size()) throw DimensionError("box: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

Box truncated_box(const IntVector& l, const IntVector& u) {
    if (l.size() != u.size()) throw DimensionError("truncated_box: bound dimensions differ");
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l[i] > u[i]) throw std::invalid_argument("truncated_box: lower bound exceeds upper bound");
    const IntVector w = u - l;
    return {-w, w};
}

void ExtractionConfig::validate(std::size_t n) const {
    if (box.lo.size() != box.hi.size()) throw std::invalid_argument("extract: box bounds differ in size");
    if (box.lo.size() != 0) {
        if (box.lo.size() != n) throw DimensionError("extract: box dimension does not match matrix columns");
        for (std::size_t i = 0; i < n; ++i)
            if (box.lo[i] > box.hi[i]) throw std::invalid_argument("extract: empty box");
    }
    if (patience < 1) throw std::invalid_argument("extract: patience must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("extract: max_iterations must be >= 1");
    if (!initial && k < 1) throw std::invalid_argument("extract: k must be >= 1");
    if (initial && initial->midpoints.size() != n) throw DimensionError("extract: initial state size mismatch");
    sampler.validate();
}

namespace {

VectorSet clip(const VectorSet& g, const Box& box) {
    VectorSet out(g.dim());
    for (const auto& v : g.symmetric())
        if (box.contains(v)) out.insert(v.canonical());
    return out.sorted();
}

}  // namespace

ExtractionResult extract(const IntMatrix& a, const ExtractionConfig& cfg) {
    const std::size_t n = a.cols();
    cfg.validate(n);

    ExtractionResult res;
    res.graver = VectorSet(n);
    res.report.kernel = VectorSet(n);

    if (rank(a) == n) {
        IterationStats st;
        res.report.iterations.push_back(st);
        res.report.stop_reason = "trivial kernel";
        return res;
    }

    AdaptiveState state = cfg.initial ? *cfg.initial : AdaptiveState::uniform(n, cfg.k, cfg.center);
    const IntVector zero(a.rows());
    VectorSet g(n);  // canonical
    std::size_t stall = 0;
    res.report.stop_reason = "max iterations";

    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        IterationStats st;
        st.iteration = it;
        st.permutation_seed = mix_seed(cfg.seed, it);

        const Permutation perm = cfg.permute ? Permutation::random(n, st.permutation_seed) : Permutation::identity(n);
        const EncodingSpec enc = spec_from_adaptive(state, cfg.scheme);
        const QuboProblem q = build_kernel_qubo(perm.apply_columns(a), enc.permuted(perm.order()));

        SamplerConfig scfg = cfg.sampler;
        scfg.seed = mix_seed(cfg.sampler.seed, it);
        if (scfg.threads == 0) scfg.threads = cfg.threads;
        const SampleBatch batch = sample_qubo(q, scfg);
        st.samples = batch.size();
        st.errors = partition_by_error(batch);

        std::vector<Solution> sols;
        std::vector<IntVector> decoded;
        sols.reserve(batch.size());
        for (const auto& s : batch.samples) {
            IntVector x = perm.to_original(s.decoded);
            decoded.push_back(x);
            sols.push_back({std::move(x), s.residual});
        }

        VectorSet ki(n);
        for (const auto& s : sols) {
            if (s.residual.is_zero() && !s.x.is_zero()) {
                ki.insert(s.x.canonical());
                ++st.exact;
            }
        }
        const RecombineResult rec = recombine(a, zero, sols, cfg.recombine);
        st.recombined = rec.vectors.size();
        st.recombine_truncated = rec.truncated;
        for (const auto& v : rec.vectors) ki.insert(v);
        ki.sort();
        st.kernel_new = ki.size();
        for (const auto& v : ki) res.report.kernel.insert(v);

        const VectorSet before = g;
        VectorSet pool = g.symmetric();
        for (const auto& v : ki.symmetric()) pool.insert(v);
        g = minimal_filter(pool, cfg.threads).canonical();

        VectorSet k_star(n);
        for (const auto& v : ki)
            if (!g.contains(v)) k_star.insert(v);
        if (!k_star.empty()) g = residual_kernel(g, k_star, cfg.threads, cfg.residual_budget, &st.residual_truncated);

        for (const auto& v : g)
            if (!before.contains(v)) ++st.new_elements;
        st.graver_size = g.size();

        if (cfg.adaptive) state = adapt(state, decoded, cfg.adapt);
        st.midpoints = state.midpoints;
        st.lengths = state.lengths;
        res.report.iterations.push_back(std::move(st));

        stall = res.report.iterations.back().new_elements == 0 ? stall + 1 : 0;
        if (stall >= cfg.patience) {
            res.report.stop_reason = "stalled";
            break;
        }
    }
    res.report.kernel.sort();
    res.graver = clip(g, cfg.box);
    return res;
}

}  // namespace graver
