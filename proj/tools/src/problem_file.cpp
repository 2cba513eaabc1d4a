#include "graver_cli/problem_file.hpp"

#include "graver_cli/extern_objective.hpp"
#include "graver/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace graver::cli {

namespace {

class Parser {
public:
    Parser(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    // Next non-blank, non-comment line split into keyword and remainder.
    bool next(std::string& key, std::string& rest) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto end = line.find_first_of(" \t", first);
            key = line.substr(first, end == std::string::npos ? std::string::npos : end - first);
            rest = end == std::string::npos ? "" : line.substr(end);
            return true;
        }
        return false;
    }

    std::vector<Int> ints(const std::string& text, std::size_t expected, const std::string& what) const {
        std::vector<Int> out;
        std::istringstream ss(text);
        std::string tok;
        while (ss >> tok) {
            Int v = 0;
            const char* b = tok.data() + (tok[0] == '+' ? 1 : 0);
            auto [p, ec] = std::from_chars(b, tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size()) fail(what + ": not an integer: '" + tok + "'");
            out.push_back(v);
        }
        if (expected != 0 && out.size() != expected)
            fail(what + ": expected " + std::to_string(expected) + " values, found " + std::to_string(out.size()));
        return out;
    }

    std::vector<double> reals(const std::string& text, std::size_t expected, const std::string& what) const {
        std::vector<double> out;
        std::istringstream ss(text);
        std::string tok;
        while (ss >> tok) {
            double v = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size()) fail(what + ": not a number: '" + tok + "'");
            out.push_back(v);
        }
        if (expected != 0 && out.size() != expected)
            fail(what + ": expected " + std::to_string(expected) + " values, found " + std::to_string(out.size()));
        return out;
    }

    std::string rows_block(std::size_t rows) {
        std::string block;
        std::string key, rest;
        for (std::size_t r = 0; r < rows; ++r) {
            if (!next(key, rest)) fail("matrix: expected " + std::to_string(rows) + " rows");
            block += key + rest + "\n";
        }
        return block;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw io::ParseError(source_ + ":" + std::to_string(lineno_) + ": " + msg);
    }

    const std::string& source() const { return source_; }

private:
    std::istream& in_;
    std::string source_;
    std::size_t lineno_ = 0;
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

ProblemFile read_problem(std::istream& in, const std::string& source) {
    Parser ps(in, source);
    std::optional<IntMatrix> a;
    std::optional<IntVector> b, l, u;
    std::optional<std::string> objective_kind;
    std::string objective_args;
    std::optional<std::vector<double>> mu, sigma;
    std::optional<IntVector> center, weight;

    std::string key, rest;
    while (ps.next(key, rest)) {
        if (key == "matrix") {
            if (a) ps.fail("duplicate matrix block");
            const auto dims = ps.ints(rest, 2, "matrix header");
            if (dims[0] < 1 || dims[1] < 1) ps.fail("matrix dimensions must be >= 1");
            std::istringstream block(std::to_string(dims[0]) + " " + std::to_string(dims[1]) + "\n" +
                                     ps.rows_block(static_cast<std::size_t>(dims[0])));
            a = io::read_matrix(block, source + " (matrix block)");
        } else if (key == "b") {
            b = IntVector(ps.ints(rest, 0, "b"));
        } else if (key == "l") {
            l = IntVector(ps.ints(rest, 0, "l"));
        } else if (key == "u") {
            u = IntVector(ps.ints(rest, 0, "u"));
        } else if (key == "objective") {
            const std::string r = trim(rest);
            const auto sp = r.find_first_of(" \t");
            objective_kind = r.substr(0, sp);
            objective_args = sp == std::string::npos ? "" : trim(r.substr(sp));
        } else if (key == "mu") {
            mu = ps.reals(rest, 0, "mu");
        } else if (key == "sigma") {
            sigma = ps.reals(rest, 0, "sigma");
        } else if (key == "center") {
            center = IntVector(ps.ints(rest, 0, "center"));
        } else if (key == "weight") {
            weight = IntVector(ps.ints(rest, 0, "weight"));
        } else {
            ps.fail("unknown keyword '" + key + "'");
        }
    }
    if (!a) ps.fail("missing 'matrix' block");
    if (!b) ps.fail("missing 'b' line");
    if (!l) ps.fail("missing 'l' line");
    if (!u) ps.fail("missing 'u' line");
    if (!objective_kind) ps.fail("missing 'objective' line");
    const std::size_t n = a->cols();

    ProblemFile pf;
    ObjectiveSpec& obj = pf.objective;
    const auto need_n = [&](std::size_t got, const std::string& what) {
        if (got != n) ps.fail(what + ": expected " + std::to_string(n) + " values, found " + std::to_string(got));
    };
    if (*objective_kind == "abs") {
        obj.kind = ObjectiveSpec::Kind::abs;
        obj.center = IntVector(ps.ints(objective_args, n, "objective abs"));
    } else if (*objective_kind == "quadratic") {
        obj.kind = ObjectiveSpec::Kind::quadratic;
        if (!center) ps.fail("objective quadratic: missing 'center' line");
        need_n(center->size(), "center");
        obj.center = *center;
        obj.weight = weight ? *weight : IntVector(n, 1);
        need_n(obj.weight.size(), "weight");
    } else if (*objective_kind == "capital-budget") {
        obj.kind = ObjectiveSpec::Kind::capital_budget;
        obj.eps = ps.reals(objective_args, 1, "objective capital-budget eps")[0];
        if (!mu || !sigma) ps.fail("objective capital-budget: needs 'mu' and 'sigma' lines");
        need_n(mu->size(), "mu");
        need_n(sigma->size(), "sigma");
        obj.mu = *mu;
        obj.sigma = *sigma;
    } else if (*objective_kind == "extern") {
        obj.kind = ObjectiveSpec::Kind::external;
        if (objective_args.empty()) ps.fail("objective extern: missing command");
        obj.command = objective_args;
    } else {
        ps.fail("unknown objective '" + *objective_kind + "' (expected abs, quadratic, capital-budget or extern)");
    }

    pf.problem = Problem{std::move(*a), std::move(*b), std::move(*l), std::move(*u), nullptr};
    pf.problem.f = make_objective(obj, n);
    try {
        pf.problem.validate();
    } catch (const std::exception& e) {
        throw io::ParseError(source + ": " + e.what());
    }
    return pf;
}

ProblemFile read_problem_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError(path.string() + ": cannot open file");
    return read_problem(in, path.string());
}

namespace {

void put_ints(std::ostream& out, const char* key, const IntVector& v) {
    out << key;
    for (Int x : v) out << ' ' << x;
    out << '\n';
}

void put_reals(std::ostream& out, const char* key, const std::vector<double>& v) {
    out << key;
    char buf[32];
    for (double x : v) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        out << ' ' << buf;
    }
    out << '\n';
}

}  // namespace

void write_problem(std::ostream& out, const Problem& p, const ObjectiveSpec& obj) {
    out << "matrix " << p.a.rows() << ' ' << p.a.cols() << '\n';
    for (std::size_t r = 0; r < p.a.rows(); ++r) {
        for (std::size_t c = 0; c < p.a.cols(); ++c) out << (c ? " " : "") << p.a(r, c);
        out << '\n';
    }
    put_ints(out, "b", p.b);
    put_ints(out, "l", p.l);
    put_ints(out, "u", p.u);
    switch (obj.kind) {
        case ObjectiveSpec::Kind::abs:
            put_ints(out, "objective abs", obj.center);
            break;
        case ObjectiveSpec::Kind::quadratic:
            out << "objective quadratic\n";
            put_ints(out, "center", obj.center);
            put_ints(out, "weight", obj.weight);
            break;
        case ObjectiveSpec::Kind::capital_budget: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", obj.eps);
            out << "objective capital-budget " << buf << '\n';
            put_reals(out, "mu", obj.mu);
            put_reals(out, "sigma", obj.sigma);
            break;
        }
        case ObjectiveSpec::Kind::external:
            out << "objective extern " << obj.command << '\n';
            break;
    }
}

ObjectivePtr make_objective(const ObjectiveSpec& spec, std::size_t n) {
    switch (spec.kind) {
        case ObjectiveSpec::Kind::abs:
            return std::make_shared<SeparableAbs>(spec.center);
        case ObjectiveSpec::Kind::quadratic:
            return std::make_shared<SeparableQuadratic>(spec.center, spec.weight);
        case ObjectiveSpec::Kind::capital_budget:
            return std::make_shared<CapitalBudget>(spec.mu, spec.sigma, spec.eps);
        case ObjectiveSpec::Kind::external:
            return std::make_shared<ExternObjective>(spec.command, n);
    }
    throw std::logic_error("unhandled objective kind");
}

}  // namespace graver::cli
