#pragma once

#include "graver/lattice.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace graver::io {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Matrix text format: "m n" header, then m rows of n integers.
// Vector-set format: "count n" header, then count rows of n integers.
// Lines starting with '#' and blank lines are ignored on input.

IntMatrix read_matrix(std::istream& in, const std::string& source = "<stream>");
IntMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const IntMatrix& a);

VectorSet read_vector_set(std::istream& in, const std::string& source = "<stream>");
VectorSet read_vector_set_file(const std::filesystem::path& path);
void write_vector_set(std::ostream& out, const VectorSet& set);
void write_vector_set_file(const std::filesystem::path& path, const VectorSet& set);

}  // namespace graver::io
