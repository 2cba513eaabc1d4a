#include "graver_cli/cli.hpp"

#include "graver_cli/problem_file.hpp"
#include "graver/classical.hpp"
#include "graver/extractor.hpp"
#include "graver/io.hpp"
#include "graver/optimizer.hpp"
#include "graver/random.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace graver::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(const std::vector<Int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

// Writes to `path` when given, otherwise to the fallback stream.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot write " + path);
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

struct SamplerFlags {
    std::string backend = "sa";
    std::size_t reads = 10000;
    std::size_t sweeps = 100;
    double t_hi = 10.0;
    double t_lo = 0.05;
    Int max_error = 6;
    std::size_t bit_cap = 24;

    void add(CLI::App* app, const std::string& prefix = "") {
        app->add_option("--" + prefix + "backend", backend, "Sampler backend: exhaustive or sa")
            ->check(CLI::IsMember({"exhaustive", "sa"}))
            ->capture_default_str();
        app->add_option("--" + prefix + "reads", reads, "Independent annealing restarts")->capture_default_str();
        app->add_option("--" + prefix + "sweeps", sweeps, "Sweeps per read")->capture_default_str();
        app->add_option("--" + prefix + "t-hi", t_hi, "Initial temperature")->capture_default_str();
        app->add_option("--" + prefix + "t-lo", t_lo, "Final temperature")->capture_default_str();
        app->add_option("--" + prefix + "max-error", max_error, "Largest residual 1-norm kept")->capture_default_str();
        app->add_option("--" + prefix + "bit-cap", bit_cap, "Bit limit of the exhaustive backend")->capture_default_str();
    }

    SamplerConfig config(std::uint64_t seed, unsigned threads) const {
        SamplerConfig s;
        s.backend = parse_backend(backend);
        s.reads = reads;
        s.sweeps = sweeps;
        s.t_hi = t_hi;
        s.t_lo = t_lo;
        s.max_sum_error = max_error;
        s.exhaustive_bit_cap = bit_cap;
        s.seed = seed;
        s.threads = threads;
        return s;
    }

    void echo(std::ostream& os, const std::string& label) const {
        os << "# " << label << "backend=" << backend << " reads=" << reads << " sweeps=" << sweeps
           << " t_hi=" << real(t_hi) << " t_lo=" << real(t_lo) << " max_error=" << max_error << '\n';
    }
};

struct ExtractFlags {
    int k = 4;
    Int center = 0;
    std::string scheme = "binary";
    std::size_t max_iter = 10;
    std::size_t patience = 3;
    bool no_adapt = false;
    bool no_permute = false;
    SamplerFlags sampler;

    void add(CLI::App* app) {
        app->add_option("--k", k, "Initial bits per variable")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--center", center, "Initial encoding center")->capture_default_str();
        app->add_option("--scheme", scheme, "Encoding: binary or unary")
            ->check(CLI::IsMember({"binary", "unary"}))
            ->capture_default_str();
        app->add_option("--max-iter", max_iter, "Extraction iterations")->check(CLI::PositiveNumber)->capture_default_str();
        app->add_option("--patience", patience, "Stop after this many iterations without a new element")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_flag("--no-adapt", no_adapt, "Keep the encoding window fixed");
        app->add_flag("--no-permute", no_permute, "Skip the per-iteration column reshuffle");
        sampler.add(app);
    }

    ExtractionConfig config(std::uint64_t seed, unsigned threads) const {
        ExtractionConfig c;
        c.k = k;
        c.center = center;
        c.scheme = scheme == "unary" ? EncodingScheme::unary : EncodingScheme::binary;
        c.max_iterations = max_iter;
        c.patience = patience;
        c.adaptive = !no_adapt;
        c.permute = !no_permute;
        c.seed = seed;
        c.threads = threads;
        c.sampler = sampler.config(seed, threads);
        return c;
    }

    void echo(std::ostream& os) const {
        os << "# extraction: k=" << k << " center=" << center << " scheme=" << scheme << " max_iter=" << max_iter
           << " patience=" << patience << " adapt=" << (no_adapt ? "off" : "on")
           << " permute=" << (no_permute ? "off" : "on") << '\n';
        sampler.echo(os, "sampler: ");
    }
};

void write_report(std::ostream& os, const ExtractionReport& rep) {
    for (const auto& it : rep.iterations) {
        os << "# iteration " << it.iteration << ": samples=" << it.samples << " exact=" << it.exact
           << " recombined=" << it.recombined << (it.recombine_truncated ? " (truncated)" : "")
           << " kernel=" << it.kernel_new << " graver=" << it.graver_size << " new=" << it.new_elements
           << (it.residual_truncated ? " residual=truncated" : "") << " errors=";
        for (std::size_t b = 0; b < ErrorHistogram::kBuckets; ++b) os << (b ? "," : "") << it.errors.counts[b];
        os << " midpoints=[" << join(it.midpoints) << "] lengths=[" << join(it.lengths) << "]\n";
    }
    os << "# kernel archive: " << rep.kernel.size() << '\n';
    os << "# stop: " << rep.stop_reason << '\n';
}

void write_counts(std::ostream& os, const VectorSet& g) {
    os << "# elements: " << g.size() << " canonical, " << g.symmetric().size() << " with signs\n";
}

// Sorted high to low, "index,cost".
void write_cost_csv(const std::filesystem::path& path, std::vector<double> costs) {
    std::sort(costs.begin(), costs.end(), std::greater<>());
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "index,cost\n";
    for (std::size_t i = 0; i < costs.size(); ++i) os << i << ',' << real(costs[i]) << '\n';
}

Box default_box(const IntMatrix& a, std::ostream& header) {
    try {
        const GraverBounds gb = graver_bounds(a);
        header << "# box: +/-" << gb.inf_bound << " (norm bound, rank " << gb.rank << ", delta " << gb.delta
               << (gb.over_row_basis ? ", row basis" : "") << ")\n";
        const IntVector w(a.cols(), gb.inf_bound);
        return {-w, w};
    } catch (const std::exception&) {
        header << "# box: none (norm bound unavailable)\n";
        return {};
    }
}

// ---------------------------------------------------------------- subcommands

int cmd_pottier(const std::string& matrix, const std::string& output, bool symmetric, unsigned threads,
                std::ostream& out) {
    (void)threads;
    const IntMatrix a = io::read_matrix_file(matrix);
    CompletionStats stats;
    const VectorSet g = pottier(a, &stats);
    Output o(output, out);
    *o << "# graver pottier " << std::filesystem::path(matrix).filename().string() << '\n';
    write_counts(*o, g);
    *o << "# completion: candidates=" << stats.candidates_processed << " added=" << stats.added
       << " skipped_sign_compatible=" << stats.skipped_sign_compatible << '\n';
    io::write_vector_set(*o, symmetric ? g.symmetric() : g);
    return 0;
}

int cmd_extract(const std::string& matrix, const ExtractFlags& flags, std::uint64_t seed, Int box_w, bool no_box,
                const std::string& output, bool symmetric, unsigned threads, std::ostream& out) {
    const IntMatrix a = io::read_matrix_file(matrix);
    std::ostringstream header;
    header << "# graver extract " << std::filesystem::path(matrix).filename().string() << '\n';
    header << "# seed: " << seed << '\n';
    flags.echo(header);

    ExtractionConfig cfg = flags.config(seed, threads);
    if (no_box) {
        header << "# box: none\n";
    } else if (box_w >= 0) {
        const IntVector w(a.cols(), box_w);
        cfg.box = {-w, w};
        header << "# box: +/-" << box_w << '\n';
    } else {
        cfg.box = default_box(a, header);
    }
    const ExtractionResult r = extract(a, cfg);

    Output o(output, out);
    *o << header.str();
    write_report(*o, r.report);
    write_counts(*o, r.graver);
    io::write_vector_set(*o, symmetric ? r.graver.symmetric() : r.graver);
    return 0;
}

int cmd_qubo_emit(const std::string& matrix, int k, Int center, std::vector<Int> lower, std::vector<Int> rhs,
                  const std::string& scheme, const std::string& output, std::ostream& out) {
    const IntMatrix a = io::read_matrix_file(matrix);
    const std::size_t n = a.cols();
    const EncodingScheme sch = scheme == "unary" ? EncodingScheme::unary : EncodingScheme::binary;
    EncodingSpec enc;
    if (!lower.empty()) {
        if (lower.size() != n) throw UsageError("--lower needs " + std::to_string(n) + " values");
        enc = EncodingSpec(std::vector<int>(n, k), lower, sch);
    } else {
        enc = spec_from_adaptive(AdaptiveState::uniform(n, k, center), sch);
    }
    const QuboProblem q = rhs.empty() ? build_kernel_qubo(a, enc) : build_feasibility_qubo(a, IntVector(rhs), enc);
    Output o(output, out);
    write_qubo(*o, q);
    return 0;
}

struct OptimizeFlags {
    std::string graver_file;
    bool classical = false;
    double partial = 1.0;
    std::uint64_t partial_seed = 0;
    std::string policy = "first";
    std::size_t max_starts = 0;
    std::string out_dir;
    ExtractFlags extract;
    SamplerFlags feasible;
};

int cmd_optimize(const std::string& path, const OptimizeFlags& f, std::uint64_t seed, unsigned threads,
                 std::ostream& out) {
    const ProblemFile pf = read_problem_file(path);
    const Problem& p = pf.problem;
    std::ostream& os = out;
    os << "# graver optimize " << std::filesystem::path(path).filename().string() << '\n';
    os << "# seed: " << seed << '\n';
    os << "# objective: " << p.f->describe().substr(0, 80) << '\n';

    SolveConfig cfg;
    cfg.threads = threads;
    cfg.augment.policy = parse_policy(f.policy);
    cfg.max_starts = f.max_starts;
    cfg.feasible.sampler = f.feasible.config(mix_seed(seed, 0xfea5), threads);
    cfg.auto_backend = true;

    VectorSet g(p.a.cols());
    if (!f.graver_file.empty()) {
        g = io::read_vector_set_file(f.graver_file).canonical();
        os << "# graver source: " << std::filesystem::path(f.graver_file).filename().string() << '\n';
    } else if (f.classical) {
        const Box box = truncated_box(p.l, p.u);
        for (const auto& v : pottier(p.a).symmetric())
            if (box.contains(v)) g.insert(v.canonical());
        g = g.sorted();
        os << "# graver source: classical completion, clipped to +/-(u-l)\n";
    } else {
        f.extract.echo(os);
        ExtractionConfig ec = f.extract.config(seed, threads);
        ec.box = truncated_box(p.l, p.u);
        const ExtractionResult r = extract(p.a, ec);
        write_report(os, r.report);
        g = r.graver;
        os << "# graver source: extraction, clipped to +/-(u-l)\n";
    }
    write_counts(os, g);

    if (f.partial < 1.0) {
        std::vector<IntVector> members(g.begin(), g.end());
        Rng rng(mix_seed(f.partial_seed, 0x9a27));
        rng.shuffle(members);
        members.resize(static_cast<std::size_t>(std::llround(f.partial * static_cast<double>(members.size()))));
        g = VectorSet(p.a.cols(), members).sorted();
        os << "# partial: " << g.size() << " elements kept (fraction " << real(f.partial) << ", seed "
           << f.partial_seed << ")\n";
    }
    cfg.graver = g;
    f.feasible.echo(os, "feasibility sampler: ");

    const SolveResult r = solve(p, cfg);
    const auto& runs = r.report.runs;
    std::size_t reached = 0;
    std::vector<double> terminal;
    for (const auto& t : runs.traces) {
        terminal.push_back(t.terminal_cost);
        if (!improves(r.cost, t.terminal_cost, *p.f, cfg.augment.rel_eps)) ++reached;
    }
    os << "starts: " << r.report.starts.size() << '\n';
    os << "best_start_cost: " << real(r.report.start_costs.front()) << '\n';
    os << "reached_best: " << reached << '\n';
    os << "steps_from_best_start: " << runs.best_trace().steps.size() << '\n';
    os << "certified: " << (certify(p, g, r.x, cfg.augment.rel_eps) ? "yes" : "no") << '\n';
    os << "cost: " << real(r.cost) << '\n';
    os << "x: " << join(std::vector<Int>(r.x.begin(), r.x.end())) << '\n';

    if (!f.out_dir.empty()) {
        std::filesystem::create_directories(f.out_dir);
        write_cost_csv(std::filesystem::path(f.out_dir) / "start_costs.csv", r.report.start_costs);
        write_cost_csv(std::filesystem::path(f.out_dir) / "terminal_costs.csv", terminal);
    }
    return 0;
}

int cmd_gen_capital(std::size_t m, std::size_t n, Int t, Int lo, Int hi, double eps, std::uint64_t seed,
                    const std::string& output, std::ostream& out) {
    const CapitalBudgetInstance inst = generate_capital_budget(m, n, t, seed, lo, hi, eps);
    ObjectiveSpec spec;
    spec.kind = ObjectiveSpec::Kind::capital_budget;
    spec.mu = inst.mu;
    spec.sigma = inst.sigma;
    spec.eps = inst.eps;
    Output o(output, out);
    *o << "# graver gen capital-budget m=" << m << " n=" << n << " t=" << t << " lo=" << lo << " hi=" << hi
       << " eps=" << real(eps) << " seed=" << seed << '\n';
    write_problem(*o, inst.problem, spec);
    return 0;
}

int cmd_verify(const std::string& matrix, const std::string& set_path, bool complete, unsigned threads,
               std::ostream& out) {
    const IntMatrix a = io::read_matrix_file(matrix);
    const VectorSet raw = io::read_vector_set_file(set_path);
    if (raw.dim() != a.cols())
        throw std::runtime_error(set_path + ": vectors have " + std::to_string(raw.dim()) + " entries but " + matrix +
                                 " has " + std::to_string(a.cols()) + " columns");
    const VectorSet g = raw.canonical();
    bool ok = true;

    std::size_t bad_kernel = 0;
    for (const auto& v : g) {
        if (!kernel_member(a, v)) {
            if (bad_kernel++ < 5) out << "FAIL kernel: " << v.to_string() << '\n';
            ok = false;
        }
    }
    out << "kernel: " << (bad_kernel ? "FAIL (" + std::to_string(bad_kernel) + ")" : "ok") << '\n';

    const VectorSet sym = g.symmetric();
    const VectorSet minimal = minimal_filter(sym, threads);
    const std::size_t dominated = sym.size() - minimal.size();
    out << "minimal: " << (dominated ? "FAIL (" + std::to_string(dominated) + " dominated)" : "ok") << '\n';
    ok = ok && dominated == 0;

    try {
        const GraverBounds gb = graver_bounds(a);
        std::size_t over = 0;
        for (const auto& v : g)
            if (v.norm_inf() > gb.inf_bound || v.norm1() > gb.one_bound) ++over;
        out << "bounds: " << (over ? "FAIL (" + std::to_string(over) + ")" : "ok") << " inf<=" << gb.inf_bound
            << " one<=" << gb.one_bound << " rank=" << gb.rank << " delta=" << gb.delta << '\n';
        ok = ok && over == 0;
    } catch (const std::exception& e) {
        out << "bounds: skipped (" << e.what() << ")\n";
    }

    if (complete) {
        const VectorSet ref = pottier(a);
        const bool same = ref.same_elements(g);
        out << "complete: " << (same ? "ok" : "FAIL (reference has " + std::to_string(ref.size()) + ")") << '\n';
        ok = ok && same;
    }
    out << "elements: " << g.size() << " canonical, " << sym.size() << " with signs\n";
    out << (ok ? "OK" : "FAILED") << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Graver basis computation and augmentation-based integer optimization", "graver"};
    app.require_subcommand(1);
    unsigned threads = 0;
    std::uint64_t seed = 0;
    app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

    std::string output;
    bool symmetric = false;

    // pottier
    auto* pot = app.add_subcommand("pottier", "Graver basis by completion");
    std::string pot_matrix;
    pot->add_option("matrix", pot_matrix, "Matrix file")->required()->check(CLI::ExistingFile);
    pot->add_option("-o,--output", output, "Vector-set output file (default stdout)");
    pot->add_flag("--symmetric", symmetric, "Emit both signs of every element");

    // extract
    auto* ext = app.add_subcommand("extract", "Graver basis by sampling, recombination and filtering");
    std::string ext_matrix;
    ExtractFlags ext_flags;
    Int box_w = -1;
    bool no_box = false;
    ext->add_option("matrix", ext_matrix, "Matrix file")->required()->check(CLI::ExistingFile);
    ext_flags.add(ext);
    ext->add_option("--seed", seed, "Random seed")->capture_default_str();
    ext->add_option("--box", box_w, "Keep elements with |g_i| <= W (default: norm bound when available)");
    ext->add_flag("--no-box", no_box, "Return every element found");
    ext->add_option("-o,--output", output, "Vector-set output file (default stdout)");
    ext->add_flag("--symmetric", symmetric, "Emit both signs of every element");

    // qubo emit
    auto* qubo = app.add_subcommand("qubo", "QUBO construction");
    qubo->require_subcommand(1);
    auto* emit = qubo->add_subcommand("emit", "Write the kernel (or feasibility) QUBO in sparse text form");
    std::string q_matrix, q_scheme = "binary";
    int q_k = 4;
    Int q_center = 0;
    std::vector<Int> q_lower, q_rhs;
    emit->add_option("matrix", q_matrix, "Matrix file")->required()->check(CLI::ExistingFile);
    emit->add_option("--k", q_k, "Bits per variable")->check(CLI::PositiveNumber)->capture_default_str();
    emit->add_option("--center", q_center, "Window center")->capture_default_str();
    emit->add_option("--lower", q_lower, "Explicit lower bounds, one per column");
    emit->add_option("--rhs", q_rhs, "Right-hand side b for the feasibility form");
    emit->add_option("--scheme", q_scheme, "Encoding: binary or unary")->check(CLI::IsMember({"binary", "unary"}));
    emit->add_option("-o,--output", output, "Output file (default stdout)");

    // optimize
    auto* opt = app.add_subcommand("optimize", "Minimize over {Ax = b, l <= x <= u} by Graver augmentation");
    std::string opt_problem;
    OptimizeFlags opt_flags;
    opt->add_option("problem", opt_problem, "Problem file")->required()->check(CLI::ExistingFile);
    opt->add_option("--seed", seed, "Random seed")->capture_default_str();
    opt->add_option("--graver", opt_flags.graver_file, "Use this vector-set file as the test set")
        ->check(CLI::ExistingFile);
    opt->add_flag("--classical", opt_flags.classical, "Compute the test set by completion");
    opt->add_option("--partial", opt_flags.partial, "Keep a random fraction of the test set")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    opt->add_option("--partial-seed", opt_flags.partial_seed, "Seed of the partial subset")->capture_default_str();
    opt->add_option("--policy", opt_flags.policy, "Augmentation scan: first or best")
        ->check(CLI::IsMember({"first", "best"}))
        ->capture_default_str();
    opt->add_option("--max-starts", opt_flags.max_starts, "Augment from at most this many starts (0 = all)")
        ->capture_default_str();
    opt->add_option("--out-dir", opt_flags.out_dir, "Directory for start_costs.csv and terminal_costs.csv");
    opt_flags.extract.add(opt);
    opt_flags.feasible.add(opt, "feas-");

    // gen capital-budget
    auto* gen = app.add_subcommand("gen", "Instance generators");
    gen->require_subcommand(1);
    auto* cap = gen->add_subcommand("capital-budget", "Seeded risk-averse capital budgeting instance");
    std::size_t g_m = 5, g_n = 50;
    Int g_t = 1, g_lo = 0, g_hi = 1;
    double g_eps = 0.01;
    cap->add_option("--m", g_m, "Constraint rows")->check(CLI::PositiveNumber)->capture_default_str();
    cap->add_option("--n", g_n, "Variables")->check(CLI::PositiveNumber)->capture_default_str();
    cap->add_option("--t", g_t, "Matrix entries drawn from {0..t}")->check(CLI::PositiveNumber)->capture_default_str();
    cap->add_option("--lo", g_lo, "Variable lower bound")->capture_default_str();
    cap->add_option("--hi", g_hi, "Variable upper bound")->capture_default_str();
    cap->add_option("--eps", g_eps, "Risk level")->capture_default_str();
    cap->add_option("--seed", seed, "Random seed")->capture_default_str();
    cap->add_option("-o,--output", output, "Problem output file (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "Check a vector set against a matrix");
    std::string v_matrix, v_set;
    bool v_complete = false;
    ver->add_option("matrix", v_matrix, "Matrix file")->required()->check(CLI::ExistingFile);
    ver->add_option("vectorset", v_set, "Vector-set file")->required()->check(CLI::ExistingFile);
    ver->add_flag("--complete", v_complete, "Also compare against the completion result");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "graver: " << e.what() << '\n';
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "run 'graver " << (sub == &app ? "" : sub->get_name() + " ") << "--help' for usage\n";
        return 2;
    }

    try {
        if (*pot) return cmd_pottier(pot_matrix, output, symmetric, threads, out);
        if (*ext) return cmd_extract(ext_matrix, ext_flags, seed, box_w, no_box, output, symmetric, threads, out);
        if (*emit) return cmd_qubo_emit(q_matrix, q_k, q_center, q_lower, q_rhs, q_scheme, output, out);
        if (*opt) {
            if (!opt_flags.graver_file.empty() && opt_flags.classical)
                throw UsageError("--graver and --classical are mutually exclusive");
            return cmd_optimize(opt_problem, opt_flags, seed, threads, out);
        }
        if (*cap) {
            if (g_lo > g_hi) throw UsageError("--lo must not exceed --hi");
            return cmd_gen_capital(g_m, g_n, g_t, g_lo, g_hi, g_eps, seed, output, out);
        }
        if (*ver) return cmd_verify(v_matrix, v_set, v_complete, threads, out);
    } catch (const UsageError& e) {
        err << "graver: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "graver: error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace graver::cli
