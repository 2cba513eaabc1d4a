#pragma once

#include "graver/extractor.hpp"
#include "graver/lattice.hpp"
#include "graver/postprocess.hpp"
#include "graver/qubo.hpp"
#include "graver/sampler.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace graver {

class Objective {
public:
    virtual ~Objective() = default;
    virtual double operator()(const IntVector& x) const = 0;
    /// Integer-valued objectives are compared without tolerance.
    virtual bool integer_valued() const { return false; }
    /// False means calls must be serialized.
    virtual bool thread_safe() const { return true; }
    virtual std::string describe() const = 0;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

/// sum |x_i - c_i|
class SeparableAbs : public Objective {
public:
    explicit SeparableAbs(IntVector c) : c_(std::move(c)) {}
    double operator()(const IntVector& x) const override;
    bool integer_valued() const override { return true; }
    std::string describe() const override;

private:
    IntVector c_;
};

/// sum w_i (x_i - c_i)^2 with integer weights w_i >= 0.
class SeparableQuadratic : public Objective {
public:
    SeparableQuadratic(IntVector c, IntVector w);
    double operator()(const IntVector& x) const override;
    bool integer_valued() const override { return true; }
    std::string describe() const override;

private:
    IntVector c_, w_;
};

/// Risk-averse capital budgeting: -mu·x + sqrt((1 - eps)/eps · sum sigma_i^2 x_i^2).
class CapitalBudget : public Objective {
public:
    CapitalBudget(std::vector<double> mu, std::vector<double> sigma, double eps);
    double operator()(const IntVector& x) const override;
    std::string describe() const override;

    const std::vector<double>& mu() const { return mu_; }
    const std::vector<double>& sigma() const { return sigma_; }
    double eps() const { return eps_; }

private:
    std::vector<double> mu_, sigma_;
    double eps_;
};

/// Wraps a callable.
class FunctionObjective : public Objective {
public:
    FunctionObjective(std::function<double(const IntVector&)> f, bool integer_valued, bool thread_safe,
                      std::string name = "function");
    double operator()(const IntVector& x) const override { return f_(x); }
    bool integer_valued() const override { return integer_; }
    bool thread_safe() const override { return safe_; }
    std::string describe() const override { return name_; }

private:
    std::function<double(const IntVector&)> f_;
    bool integer_, safe_;
    std::string name_;
};

struct Problem {
    IntMatrix a;
    IntVector b;
    IntVector l;
    IntVector u;
    ObjectivePtr f;

    void validate() const;
    bool in_box(const IntVector& x) const;
    bool feasible(const IntVector& x) const;
};

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bit lengths and lower bounds that cover [l, u] with a binary encoding anchored at l.
EncodingSpec box_encoding(const IntVector& l, const IntVector& u);

struct FeasibleConfig {
    SamplerConfig sampler;
    RecombineConfig recombine;
};

/// Exact feasible points from the feasibility QUBO plus recombined near-feasible
/// ones, clipped to [l, u]. Empty means none were found at this encoding.
VectorSet find_feasible(const Problem& p, const EncodingSpec& enc, const FeasibleConfig& cfg);

enum class AugmentPolicy { first_improvement, best_improvement };

AugmentPolicy parse_policy(const std::string& name);
std::string to_string(AugmentPolicy p);

struct AugmentConfig {
    AugmentPolicy policy = AugmentPolicy::first_improvement;
    /// Relative improvement threshold for real-valued objectives.
    double rel_eps = 1e-12;
};

struct AugmentStep {
    IntVector g;
    double cost = 0;
};

struct AugmentationTrace {
    IntVector start;
    double start_cost = 0;
    std::vector<AugmentStep> steps;
    IntVector terminal;
    double terminal_cost = 0;
    std::uint64_t evaluations = 0;
};

/// True when `candidate` is a strict improvement over `current`.
bool improves(double candidate, double current, const Objective& f, double rel_eps);

/// Walks from x0 along unit steps over G ∪ -G until no step improves.
AugmentationTrace augment(const Problem& p, const VectorSet& g, const IntVector& x0, const AugmentConfig& cfg = {});

struct MultiAugmentResult {
    std::size_t best = 0;
    std::vector<AugmentationTrace> traces;

    const AugmentationTrace& best_trace() const { return traces.at(best); }
};

MultiAugmentResult multi_augment(const Problem& p, const VectorSet& g, const std::vector<IntVector>& starts,
                                 const AugmentConfig& cfg = {}, unsigned threads = 0);

/// No element of `g` (either sign) gives an in-box improvement at x.
bool certify(const Problem& p, const VectorSet& g, const IntVector& x, double rel_eps = 1e-12);

struct SolveConfig {
    ExtractionConfig extraction;
    /// Skip extraction and augment with this set.
    std::optional<VectorSet> graver;
    /// Use the classical completion instead of extraction.
    bool classical = false;
    /// Feasibility encoding; defaults to box_encoding(l, u).
    std::optional<EncodingSpec> encoding;
    FeasibleConfig feasible;
    /// Pick the exhaustive sampler whenever the QUBO fits under its bit cap.
    bool auto_backend = true;
    AugmentConfig augment;
    /// 0 keeps every start.
    std::size_t max_starts = 0;
    unsigned threads = 0;
};

struct SolveReport {
    VectorSet graver;
    std::optional<ExtractionReport> extraction;
    /// Starts in ascending cost order.
    std::vector<IntVector> starts;
    std::vector<double> start_costs;
    MultiAugmentResult runs;
};

struct SolveResult {
    IntVector x;
    double cost = 0;
    SolveReport report;
};

SolveResult solve(const Problem& p, const SolveConfig& cfg);

/// Seeded risk-averse capital budgeting instance: a_ij uniform in {0..t},
/// mu_i ~ U[0,1], sigma_i ~ U[0, mu_i], b = round(row sums / 2), x in [lo, hi]^n.
struct CapitalBudgetInstance {
    Problem problem;
    std::vector<double> mu, sigma;
    double eps = 0.01;
};

CapitalBudgetInstance generate_capital_budget(std::size_t m, std::size_t n, Int t, std::uint64_t seed, Int lo = 0,
                                              Int hi = 1, double eps = 0.01);

}  // namespace graver
