#pragma once

#include "graver/optimizer.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace graver::cli {

/// Serializable description of an objective.
struct ObjectiveSpec {
    enum class Kind { abs, quadratic, capital_budget, external };
    Kind kind = Kind::abs;
    IntVector center;          // abs, quadratic
    IntVector weight;          // quadratic
    std::vector<double> mu;    // capital_budget
    std::vector<double> sigma; // capital_budget
    double eps = 0.01;         // capital_budget
    std::string command;       // external
};

struct ProblemFile {
    Problem problem;
    ObjectiveSpec objective;
};

// Problem file, one keyword per line ('#' comments and blank lines ignored):
//
//   matrix m n            followed by m rows of n integers
//   b v1 .. vm
//   l v1 .. vn
//   u v1 .. vn
//   objective abs c1 .. cn
//   objective quadratic   with "center c1 .. cn" and "weight w1 .. wn" lines
//   objective capital-budget eps   with "mu .." and "sigma .." lines
//   objective extern <shell command>
ProblemFile read_problem(std::istream& in, const std::string& source = "<stream>");
ProblemFile read_problem_file(const std::filesystem::path& path);
void write_problem(std::ostream& out, const Problem& p, const ObjectiveSpec& obj);

ObjectivePtr make_objective(const ObjectiveSpec& spec, std::size_t n);

}  // namespace graver::cli
