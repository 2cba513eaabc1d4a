#include "graver/postprocess.hpp"

#include "graver/parallel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace graver {

std::vector<Solution> solutions_of(const SampleBatch& batch) {
    std::vector<Solution> out;
    out.reserve(batch.size());
    for (const auto& s : batch.samples) out.push_back({s.decoded, s.residual});
    return out;
}

// ---------------------------------------------------------------- recombine

namespace {

class Emitter {
public:
    Emitter(const IntMatrix& a, const IntVector& b, std::vector<IntVector> anchors, const RecombineConfig& cfg,
            RecombineResult& out)
        : a_(a), b_(b), kernel_(b.is_zero()), anchors_(std::move(anchors)), cfg_(cfg), out_(out) {}

    bool exhausted() const { return out_.truncated; }

    // `shift` is +1 for a difference (anchor added) and -1 for a sum (anchor subtracted).
    void emit(const IntVector& v, Int shift) {
        if (out_.truncated) return;
        if (kernel_) {
            if (!charge(1)) return;
            if (v.is_zero()) return;
            check(v, IntVector(a_.rows()));
            keep(v.canonical());
            return;
        }
        if (!charge(anchors_.size())) return;
        for (const auto& z : anchors_) {
            IntVector p = shift > 0 ? v + z : v - z;
            check(p, b_);
            keep(std::move(p));
        }
    }

private:
    bool charge(std::size_t ops) {
        if (out_.pairs + ops > cfg_.pair_budget) {
            out_.truncated = true;
            return false;
        }
        out_.pairs += ops;
        return true;
    }

    void check(const IntVector& v, const IntVector& target) const {
        if (a_.multiply(v) != target) throw std::logic_error("recombine: combination does not cancel the residual");
    }

    void keep(IntVector v) { out_.vectors.insert(std::move(v)); }

    const IntMatrix& a_;
    const IntVector& b_;
    bool kernel_;
    std::vector<IntVector> anchors_;
    const RecombineConfig& cfg_;
    RecombineResult& out_;
};

}  // namespace

RecombineResult recombine(const IntMatrix& a, const IntVector& b, const std::vector<Solution>& sols,
                          const RecombineConfig& cfg) {
    if (b.size() != a.rows()) throw DimensionError("recombine: right-hand side size mismatch");
    RecombineResult out;
    out.vectors = VectorSet(a.cols());

    // Signatures in lexicographic order; members in input order.
    std::map<IntVector, std::vector<std::size_t>> groups;
    std::vector<IntVector> anchors;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const auto& s = sols[i];
        if (s.x.size() != a.cols() || s.residual.size() != a.rows()) throw DimensionError("recombine: dimension mismatch");
        const Int e = s.residual.norm1();
        if (e == 0) {
            anchors.push_back(s.x);
        } else if (e <= cfg.max_sum_error) {
            groups[s.residual].push_back(i);
        }
    }
    if (!b.is_zero()) {
        std::sort(anchors.begin(), anchors.end());
        anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
        if (anchors.size() > cfg.max_anchors) anchors.resize(cfg.max_anchors);
        if (anchors.empty()) return out;
    }

    Emitter em(a, b, std::move(anchors), cfg, out);
    for (const auto& [sig, members] : groups) {
        for (std::size_t i = 0; i < members.size() && !em.exhausted(); ++i)
            for (std::size_t j = i + 1; j < members.size() && !em.exhausted(); ++j)
                em.emit(sols[members[i]].x - sols[members[j]].x, +1);

        // Each opposite pair once: from the lexicographically smaller signature.
        const IntVector opp = -sig;
        if (!(sig < opp)) continue;
        const auto it = groups.find(opp);
        if (it == groups.end()) continue;
        for (std::size_t i : members)
            for (std::size_t j : it->second) {
                if (em.exhausted()) break;
                em.emit(sols[i].x + sols[j].x, -1);
            }
    }
    out.vectors = out.vectors.sorted();
    return out;
}

// ---------------------------------------------------------------- residual kernel

VectorSet residual_kernel(const VectorSet& g_partial, const VectorSet& k_star, unsigned threads,
                          std::uint64_t pair_budget, bool* truncated) {
    if (g_partial.dim() != k_star.dim() && !k_star.empty() && !g_partial.empty())
        throw DimensionError("residual_kernel: dimension mismatch");
    const std::size_t n = g_partial.empty() ? k_star.dim() : g_partial.dim();
    const VectorSet gs = g_partial.symmetric();
    std::vector<IntVector> neg;
    std::vector<SignMask> neg_masks;
    for (const auto& g : gs) {
        neg.push_back(-g);
        neg_masks.push_back(sign_mask(neg.back().span()));
    }
    // A residue majorized by a member of the partial set can never be minimal.
    const DominanceIndex known(gs);

    std::vector<std::pair<Int, const IntVector*>> by_norm;
    for (const auto& f : k_star)
        if (!f.is_zero()) by_norm.emplace_back(f.norm1(), &f);
    std::sort(by_norm.begin(), by_norm.end(),
              [](const auto& x, const auto& y) { return x.first != y.first ? x.first < y.first : *x.second < *y.second; });
    std::size_t take = by_norm.size();
    if (pair_budget > 0 && !gs.empty()) take = std::min<std::uint64_t>(take, pair_budget / (2 * gs.size()));
    if (truncated) *truncated = take < by_norm.size();

    std::vector<IntVector> ks;
    for (std::size_t i = 0; i < take; ++i) {
        ks.push_back(*by_norm[i].second);
        ks.push_back(-*by_norm[i].second);
    }
    std::vector<std::vector<IntVector>> found(ks.size());
    parallel_for(ks.size(), threads, [&](std::size_t i) {
        const IntVector& f = ks[i];
        const SignMask fm = sign_mask(f.span());
        // f + g stays in f's orthant and shrinks exactly when -g ⊑ f.
        for (std::size_t j = 0; j < gs.size(); ++j) {
            if (!may_conform(neg_masks[j], fm) || neg[j] == f || !conformal(neg[j], f)) continue;
            IntVector c = f + gs[j];
            if (!known.dominates(c)) found[i].push_back(std::move(c));
        }
    });

    VectorSet pool(n);
    for (const auto& g : gs) pool.insert(g);
    for (auto& list : found)
        for (auto& c : list) pool.insert(std::move(c));
    return minimal_filter(pool, threads).canonical();
}

// ---------------------------------------------------------------- adapt

AdaptiveState adapt(const AdaptiveState& st, const std::vector<IntVector>& samples, const AdaptConfig& cfg) {
    if (cfg.window < 1) throw std::invalid_argument("adapt: window must be >= 1");
    if (samples.empty()) return st;
    const std::size_t n = st.midpoints.size();
    for (const auto& x : samples)
        if (x.size() != n) throw DimensionError("adapt: sample dimension mismatch");

    AdaptiveState next = st;
    ++next.iteration;
    for (std::size_t i = 0; i < n; ++i) {
        const int k = st.lengths[i];
        const Int m = st.midpoints[i];
        const Int half = Int{1} << (k - 1);
        const Int lo = m - half;
        const Int hi = m + half - 1;

        bool at_hi = false, at_lo = false, fits_smaller = k > 1;
        const Int quarter = k > 1 ? Int{1} << (k - 2) : 0;
        for (const auto& x : samples) {
            const Int v = x[i];
            at_hi = at_hi || v >= hi;
            at_lo = at_lo || v <= lo;
            if (fits_smaller && (v - m < -quarter || v - m > quarter - 1)) fits_smaller = false;
        }

        const int shift = at_hi ? 1 : (at_lo ? -1 : 0);
        if (shift != 0 && shift == st.shift_proposal[i]) {
            next.shift_streak[i] = st.shift_streak[i] + 1;
        } else {
            next.shift_streak[i] = shift != 0 ? 1 : 0;
        }
        next.shift_proposal[i] = shift;
        if (shift != 0 && next.shift_streak[i] >= cfg.window) {
            next.midpoints[i] = m + shift;
            next.shift_streak[i] = 0;
            next.shift_proposal[i] = 0;
        }

        next.shrink_streak[i] = fits_smaller ? st.shrink_streak[i] + 1 : 0;
        if (fits_smaller && next.shrink_streak[i] >= cfg.window) {
            next.lengths[i] = std::max(1, k - 1);
            next.shrink_streak[i] = 0;
        }
    }
    return next;
}

}  // namespace graver
