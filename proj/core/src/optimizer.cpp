#include "graver/optimizer.hpp"

#include "graver/classical.hpp"
#include "graver/parallel.hpp"
#include "graver/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace graver {

// ---------------------------------------------------------------- objectives

double SeparableAbs::operator()(const IntVector& x) const {
    if (x.size() != c_.size()) throw DimensionError("objective: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = checked::add(s, checked::abs(checked::sub(x[i], c_[i])));
    return static_cast<double>(s);
}

std::string SeparableAbs::describe() const { return "abs c=" + c_.to_string(); }

SeparableQuadratic::SeparableQuadratic(IntVector c, IntVector w) : c_(std::move(c)), w_(std::move(w)) {
    if (c_.size() != w_.size()) throw DimensionError("quadratic objective: c and w differ in size");
    for (Int v : w_)
        if (v < 0) throw std::invalid_argument("quadratic objective: weights must be >= 0");
}

double SeparableQuadratic::operator()(const IntVector& x) const {
    if (x.size() != c_.size()) throw DimensionError("objective: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const Int d = checked::sub(x[i], c_[i]);
        s = checked::add(s, checked::mul(w_[i], checked::mul(d, d)));
    }
    return static_cast<double>(s);
}

std::string SeparableQuadratic::describe() const { return "quadratic c=" + c_.to_string() + " w=" + w_.to_string(); }

CapitalBudget::CapitalBudget(std::vector<double> mu, std::vector<double> sigma, double eps)
    : mu_(std::move(mu)), sigma_(std::move(sigma)), eps_(eps) {
    if (mu_.size() != sigma_.size()) throw DimensionError("capital budget: mu and sigma differ in size");
    if (!(eps_ > 0.0) || !(eps_ < 1.0)) throw std::invalid_argument("capital budget: eps must lie in (0, 1)");
}

double CapitalBudget::operator()(const IntVector& x) const {
    if (x.size() != mu_.size()) throw DimensionError("objective: dimension mismatch");
    double lin = 0, quad = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = static_cast<double>(x[i]);
        lin += mu_[i] * xi;
        quad += sigma_[i] * sigma_[i] * xi * xi;
    }
    return -lin + std::sqrt((1.0 - eps_) / eps_ * quad);
}

std::string CapitalBudget::describe() const {
    std::ostringstream os;
    os << "capital-budget eps=" << eps_;
    return os.str();
}

FunctionObjective::FunctionObjective(std::function<double(const IntVector&)> f, bool integer_valued, bool thread_safe,
                                     std::string name)
    : f_(std::move(f)), integer_(integer_valued), safe_(thread_safe), name_(std::move(name)) {}

// ---------------------------------------------------------------- problem

void Problem::validate() const {
    const std::size_t n = a.cols();
    if (b.size() != a.rows()) throw DimensionError("problem: b has " + std::to_string(b.size()) + " entries, A has " +
                                                   std::to_string(a.rows()) + " rows");
    if (l.size() != n || u.size() != n) throw DimensionError("problem: bounds must have one entry per column of A");
    for (std::size_t i = 0; i < n; ++i)
        if (l[i] > u[i]) throw std::invalid_argument("problem: l exceeds u at index " + std::to_string(i));
    if (!f) throw std::invalid_argument("problem: no objective");
}

bool Problem::in_box(const IntVector& x) const {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < l[i] || x[i] > u[i]) return false;
    return true;
}

bool Problem::feasible(const IntVector& x) const {
    return x.size() == a.cols() && in_box(x) && a.multiply(x) == b;
}

EncodingSpec box_encoding(const IntVector& l, const IntVector& u) {
    if (l.size() != u.size()) throw DimensionError("box_encoding: bound dimensions differ");
    std::vector<int> k(l.size());
    std::vector<Int> lower(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        const Int w = checked::sub(u[i], l[i]);
        if (w < 0) throw std::invalid_argument("box_encoding: l exceeds u");
        int bits = 1;
        while (bits < 62 && (Int{1} << bits) - 1 < w) ++bits;
        k[i] = bits;
        lower[i] = l[i];
    }
    return EncodingSpec(std::move(k), std::move(lower), EncodingScheme::binary);
}

VectorSet find_feasible(const Problem& p, const EncodingSpec& enc, const FeasibleConfig& cfg) {
    p.validate();
    const QuboProblem q = build_feasibility_qubo(p.a, p.b, enc);
    const SampleBatch batch = sample_qubo(q, cfg.sampler);
    const std::vector<Solution> sols = solutions_of(batch);

    VectorSet out(p.a.cols());
    for (const auto& s : sols)
        if (s.residual.is_zero() && p.in_box(s.x)) out.insert(s.x);
    for (const auto& x : recombine(p.a, p.b, sols, cfg.recombine).vectors)
        if (p.in_box(x)) out.insert(x);
    return out.sorted();
}

// ---------------------------------------------------------------- augmentation

AugmentPolicy parse_policy(const std::string& name) {
    if (name == "first") return AugmentPolicy::first_improvement;
    if (name == "best") return AugmentPolicy::best_improvement;
    throw std::invalid_argument("unknown augmentation policy '" + name + "' (expected first or best)");
}

std::string to_string(AugmentPolicy p) { return p == AugmentPolicy::first_improvement ? "first" : "best"; }

bool improves(double candidate, double current, const Objective& f, double rel_eps) {
    if (f.integer_valued()) return candidate < current;
    return candidate < current - rel_eps * std::max(1.0, std::abs(current));
}

namespace {

// g1, -g1, g2, -g2, ... over canonical representatives in sorted order.
std::vector<IntVector> directions(const Problem& p, const VectorSet& g) {
    std::vector<IntVector> out;
    for (const auto& v : g.canonical()) {
        if (v.size() != p.a.cols()) throw DimensionError("augment: Graver element dimension mismatch");
        if (!p.a.multiply(v).is_zero()) throw std::invalid_argument("augment: " + v.to_string() + " is not in the kernel");
        out.push_back(v);
        out.push_back(-v);
    }
    return out;
}

}  // namespace

AugmentationTrace augment(const Problem& p, const VectorSet& g, const IntVector& x0, const AugmentConfig& cfg) {
    p.validate();
    if (!p.feasible(x0)) throw InfeasibleError("augment: start " + x0.to_string() + " is not feasible");
    const std::vector<IntVector> dirs = directions(p, g);
    const Objective& f = *p.f;

    AugmentationTrace tr;
    tr.start = x0;
    tr.start_cost = f(x0);
    tr.evaluations = 1;
    IntVector x = x0;
    double fx = tr.start_cost;

    if (!dirs.empty() && cfg.policy == AugmentPolicy::first_improvement) {
        // Cyclic scan resuming after the last accepted direction; stops after a full fruitless cycle.
        std::size_t idx = 0, idle = 0;
        while (idle < dirs.size()) {
            const IntVector y = x + dirs[idx];
            bool moved = false;
            if (p.in_box(y)) {
                const double fy = f(y);
                ++tr.evaluations;
                if (improves(fy, fx, f, cfg.rel_eps)) {
                    x = y;
                    fx = fy;
                    tr.steps.push_back({dirs[idx], fy});
                    moved = true;
                }
            }
            idle = moved ? 0 : idle + 1;
            idx = (idx + 1) % dirs.size();
        }
    } else if (!dirs.empty()) {
        for (;;) {
            std::size_t best = dirs.size();
            double best_cost = fx;
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                const IntVector y = x + dirs[i];
                if (!p.in_box(y)) continue;
                const double fy = f(y);
                ++tr.evaluations;
                if (!improves(fy, fx, f, cfg.rel_eps)) continue;
                if (best == dirs.size() || fy < best_cost || (fy == best_cost && dirs[i] < dirs[best])) {
                    best = i;
                    best_cost = fy;
                }
            }
            if (best == dirs.size()) break;
            x = x + dirs[best];
            fx = best_cost;
            tr.steps.push_back({dirs[best], fx});
        }
    }
    tr.terminal = x;
    tr.terminal_cost = fx;
    return tr;
}

MultiAugmentResult multi_augment(const Problem& p, const VectorSet& g, const std::vector<IntVector>& starts,
                                 const AugmentConfig& cfg, unsigned threads) {
    if (starts.empty()) throw std::invalid_argument("multi_augment: no starts");
    MultiAugmentResult res;
    res.traces.resize(starts.size());
    const unsigned workers = p.f && p.f->thread_safe() ? threads : 1;
    parallel_for(starts.size(), workers, [&](std::size_t i) { res.traces[i] = augment(p, g, starts[i], cfg); });
    for (std::size_t i = 1; i < res.traces.size(); ++i) {
        const auto& c = res.traces[i];
        const auto& b = res.traces[res.best];
        if (c.terminal_cost < b.terminal_cost || (c.terminal_cost == b.terminal_cost && c.terminal < b.terminal))
            res.best = i;
    }
    return res;
}

bool certify(const Problem& p, const VectorSet& g, const IntVector& x, double rel_eps) {
    const double fx = (*p.f)(x);
    for (const auto& v : g.symmetric()) {
        const IntVector y = x + v;
        if (p.in_box(y) && improves((*p.f)(y), fx, *p.f, rel_eps)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- solve

namespace {

void pick_backend(SamplerConfig& s, std::size_t bits) {
    s.backend = bits <= s.exhaustive_bit_cap ? Backend::exhaustive : Backend::simulated_annealing;
}

}  // namespace

SolveResult solve(const Problem& p, const SolveConfig& cfg) {
    p.validate();
    const std::size_t n = p.a.cols();
    SolveResult res;

    const Box box = truncated_box(p.l, p.u);
    if (cfg.graver) {
        res.report.graver = cfg.graver->canonical();
    } else if (cfg.classical) {
        VectorSet g(n);
        for (const auto& v : pottier(p.a).symmetric())
            if (box.contains(v)) g.insert(v.canonical());
        res.report.graver = g.sorted();
    } else {
        ExtractionConfig ec = cfg.extraction;
        if (ec.box.lo.size() == 0) ec.box = box;
        if (ec.threads == 0) ec.threads = cfg.threads;
        if (cfg.auto_backend) {
            const std::size_t bits = ec.initial ? std::accumulate(ec.initial->lengths.begin(), ec.initial->lengths.end(),
                                                                  std::size_t{0})
                                                : n * static_cast<std::size_t>(ec.k);
            pick_backend(ec.sampler, bits);
        }
        ExtractionResult er = extract(p.a, ec);
        res.report.graver = std::move(er.graver);
        res.report.extraction = std::move(er.report);
    }

    const EncodingSpec enc = cfg.encoding ? *cfg.encoding : box_encoding(p.l, p.u);
    FeasibleConfig fc = cfg.feasible;
    if (fc.sampler.threads == 0) fc.sampler.threads = cfg.threads;
    if (cfg.auto_backend) pick_backend(fc.sampler, enc.total_bits());
    const VectorSet feasible = find_feasible(p, enc, fc);
    if (feasible.empty())
        throw InfeasibleError("solve: no feasible point found; widen the encoding or raise the read count");

    std::vector<std::pair<double, IntVector>> ranked;
    for (const auto& x : feasible) ranked.emplace_back((*p.f)(x), x);
    std::sort(ranked.begin(), ranked.end());
    if (cfg.max_starts > 0 && ranked.size() > cfg.max_starts) ranked.resize(cfg.max_starts);
    for (auto& [c, x] : ranked) {
        res.report.start_costs.push_back(c);
        res.report.starts.push_back(std::move(x));
    }

    res.report.runs = multi_augment(p, res.report.graver, res.report.starts, cfg.augment, cfg.threads);
    res.x = res.report.runs.best_trace().terminal;
    res.cost = res.report.runs.best_trace().terminal_cost;
    return res;
}

// ---------------------------------------------------------------- instance generation

CapitalBudgetInstance generate_capital_budget(std::size_t m, std::size_t n, Int t, std::uint64_t seed, Int lo, Int hi,
                                              double eps) {
    if (m < 1 || n < 1) throw std::invalid_argument("capital budget: m and n must be >= 1");
    if (t < 1) throw std::invalid_argument("capital budget: span t must be >= 1");
    if (lo > hi) throw std::invalid_argument("capital budget: lo exceeds hi");
    Rng rng(seed);
    CapitalBudgetInstance inst;
    IntMatrix a(m, n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = rng.between(0, t);
    inst.mu.resize(n);
    inst.sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) inst.mu[i] = rng.uniform();
    for (std::size_t i = 0; i < n; ++i) inst.sigma[i] = rng.uniform() * inst.mu[i];
    IntVector b(m);
    for (std::size_t r = 0; r < m; ++r) {
        Int s = 0;
        for (std::size_t c = 0; c < n; ++c) s += a(r, c);
        b[r] = (s + 1) / 2;  // round half up; s >= 0
    }
    inst.eps = eps;
    inst.problem = Problem{std::move(a), std::move(b), IntVector(n, lo), IntVector(n, hi),
                           std::make_shared<CapitalBudget>(inst.mu, inst.sigma, eps)};
    return inst;
}

}  // namespace graver
