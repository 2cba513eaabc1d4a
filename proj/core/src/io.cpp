#include "graver/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace graver::io {

namespace {

// Reads whitespace-separated integers, skipping blank and '#' lines.
class IntReader {
public:
    IntReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    std::vector<Int> line_of(std::size_t expected, const char* what) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            std::vector<Int> values = parse(line);
            if (values.size() != expected) {
                fail(std::string(what) + ": expected " + std::to_string(expected) + " integers, found " +
                     std::to_string(values.size()));
            }
            return values;
        }
        fail(std::string("unexpected end of input while reading ") + what);
    }

    void expect_end() {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            fail("trailing content after last row");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(source_ + ":" + std::to_string(lineno_) + ": " + msg);
    }

private:
    std::vector<Int> parse(const std::string& line) const {
        std::vector<Int> out;
        const char* p = line.data();
        const char* end = p + line.size();
        while (p < end) {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
            if (p == end) break;
            const char* tok = p;
            if (*p == '+') ++p;
            Int v = 0;
            auto [ptr, ec] = std::from_chars(p, end, v);
            if (ec == std::errc::result_out_of_range) fail("integer out of 64-bit range");
            if (ec != std::errc() || (ptr < end && *ptr != ' ' && *ptr != '\t' && *ptr != '\r')) {
                const char* stop = tok;
                while (stop < end && *stop != ' ' && *stop != '\t') ++stop;
                fail("not an integer: '" + std::string(tok, stop) + "'");
            }
            out.push_back(v);
            p = ptr;
        }
        return out;
    }

    std::istream& in_;
    std::string source_;
    std::size_t lineno_ = 0;
};

std::size_t positive_dim(Int v, const IntReader& r, const char* what) {
    if (v < 1) r.fail(std::string(what) + " must be >= 1");
    return static_cast<std::size_t>(v);
}

}  // namespace

IntMatrix read_matrix(std::istream& in, const std::string& source) {
    IntReader r(in, source);
    const auto header = r.line_of(2, "matrix header 'm n'");
    const std::size_t m = positive_dim(header[0], r, "row count m");
    const std::size_t n = positive_dim(header[1], r, "column count n");
    std::vector<Int> entries;
    entries.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = r.line_of(n, "matrix row");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    r.expect_end();
    return IntMatrix(m, n, std::move(entries));
}

IntMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file '" + path.string() + "'");
    return read_matrix(in, path.string());
}

void write_matrix(std::ostream& out, const IntMatrix& a) {
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out << (j ? " " : "") << a(i, j);
        out << '\n';
    }
}

VectorSet read_vector_set(std::istream& in, const std::string& source) {
    IntReader r(in, source);
    const auto header = r.line_of(2, "vector-set header 'count n'");
    if (header[0] < 0) r.fail("vector count must be >= 0");
    const auto count = static_cast<std::size_t>(header[0]);
    const std::size_t n = positive_dim(header[1], r, "dimension n");
    VectorSet set(n);
    for (std::size_t i = 0; i < count; ++i) {
        if (!set.insert(IntVector(r.line_of(n, "vector row")))) r.fail("duplicate vector");
    }
    r.expect_end();
    return set;
}

VectorSet read_vector_set_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open vector-set file '" + path.string() + "'");
    return read_vector_set(in, path.string());
}

void write_vector_set(std::ostream& out, const VectorSet& set) {
    out << set.size() << ' ' << set.dim() << '\n';
    for (const auto& v : set) {
        for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << v[j];
        out << '\n';
    }
}

void write_vector_set_file(const std::filesystem::path& path, const VectorSet& set) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_vector_set(out, set);
}

}  // namespace graver::io
