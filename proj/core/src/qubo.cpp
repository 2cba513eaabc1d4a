#include "graver/qubo.hpp"

#include "graver/random.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace graver {

// ---------------------------------------------------------------- EncodingSpec

EncodingSpec::EncodingSpec(std::vector<int> lengths, std::vector<Int> lower, EncodingScheme scheme)
    : lengths_(std::move(lengths)), lower_(std::move(lower)), scheme_(scheme) {
    if (lengths_.size() != lower_.size()) throw DimensionError("encoding: lengths and lower bounds differ in size");
    if (lengths_.empty()) throw std::invalid_argument("encoding: no variables");
    offsets_.resize(lengths_.size());
    for (std::size_t i = 0; i < lengths_.size(); ++i) {
        if (lengths_[i] < 1) throw std::invalid_argument("encoding: bit length must be >= 1");
        if (scheme_ == EncodingScheme::binary && lengths_[i] > 40)
            throw std::invalid_argument("encoding: binary bit length above 40 is not supported");
        offsets_[i] = total_bits_;
        total_bits_ += static_cast<std::size_t>(lengths_[i]);
    }
}

EncodingSpec EncodingSpec::uniform(std::size_t n, int k, Int lower, EncodingScheme scheme) {
    return EncodingSpec(std::vector<int>(n, k), std::vector<Int>(n, lower), scheme);
}

Int EncodingSpec::span(std::size_t i) const {
    return scheme_ == EncodingScheme::binary ? (Int{1} << lengths_[i]) - 1 : Int{lengths_[i]};
}

bool EncodingSpec::in_range(const IntVector& x) const {
    if (x.size() != num_vars()) throw DimensionError("encoding: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lower(i) || x[i] > upper(i)) return false;
    return true;
}

EncodingSpec EncodingSpec::permuted(std::span<const std::size_t> order) const {
    std::vector<int> k(order.size());
    std::vector<Int> l(order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        k[j] = lengths_.at(order[j]);
        l[j] = lower_.at(order[j]);
    }
    return EncodingSpec(std::move(k), std::move(l), scheme_);
}

IntVector decode(std::span<const std::uint8_t> bits, const EncodingSpec& enc) {
    if (bits.size() != enc.total_bits()) throw DimensionError("decode: bitstring length does not match encoding");
    IntVector x(enc.num_vars());
    for (std::size_t i = 0; i < enc.num_vars(); ++i) {
        Int v = enc.lower(i);
        const std::size_t off = enc.bit_offset(i);
        for (int b = 0; b < enc.length(i); ++b)
            if (bits[off + static_cast<std::size_t>(b)]) v += enc.weight(i, b);
        x[i] = v;
    }
    return x;
}

// ---------------------------------------------------------------- adaptive window

AdaptiveState AdaptiveState::uniform(std::size_t n, int k, Int center) {
    return from(std::vector<Int>(n, center), std::vector<int>(n, k));
}

AdaptiveState AdaptiveState::from(std::vector<Int> midpoints, std::vector<int> lengths) {
    if (midpoints.size() != lengths.size()) throw DimensionError("adaptive state: size mismatch");
    AdaptiveState st;
    const std::size_t n = midpoints.size();
    st.midpoints = std::move(midpoints);
    st.lengths = std::move(lengths);
    for (int k : st.lengths)
        if (k < 1) throw std::invalid_argument("adaptive state: lengths must be >= 1");
    st.shift_proposal.assign(n, 0);
    st.shift_streak.assign(n, 0);
    st.shrink_streak.assign(n, 0);
    return st;
}

EncodingSpec spec_from_adaptive(const AdaptiveState& st, EncodingScheme scheme) {
    std::vector<Int> lower(st.midpoints.size());
    for (std::size_t i = 0; i < lower.size(); ++i) {
        const int k = st.lengths[i];
        if (k < 1) throw std::invalid_argument("adaptive state: lengths must be >= 1");
        lower[i] = scheme == EncodingScheme::binary ? st.midpoints[i] - (Int{1} << (k - 1)) : st.midpoints[i] - k / 2;
    }
    return EncodingSpec(st.lengths, std::move(lower), scheme);
}

// ---------------------------------------------------------------- QUBO

IntMatrix build_qi(const IntMatrix& a) {
    const std::size_t n = a.cols();
    IntMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Int s = 0;
            for (std::size_t r = 0; r < a.rows(); ++r) s = checked::add(s, checked::mul(a(r, i), a(r, j)));
            q(i, j) = s;
            q(j, i) = s;
        }
    }
    return q;
}

QuboProblem::QuboProblem(IntMatrix a, IntVector b, EncodingSpec enc, QuboKind kind)
    : a_(std::move(a)), b_(std::move(b)), enc_(std::move(enc)), kind_(kind), n_(enc_.total_bits()), q_(n_ * n_, 0) {}

Int QuboProblem::energy(std::span<const std::uint8_t> bits) const {
    if (bits.size() != n_) throw DimensionError("energy: bitstring length mismatch");
    Int e = offset_;
    for (std::size_t i = 0; i < n_; ++i) {
        if (!bits[i]) continue;
        const Int* row = q_.data() + i * n_;
        for (std::size_t j = i; j < n_; ++j)
            if (bits[j]) e = checked::add(e, row[j]);
    }
    return e;
}

IntVector QuboProblem::residual(std::span<const std::uint8_t> bits) const {
    return a_.multiply(decode(bits, enc_)) - b_;
}

QuboProblem build_feasibility_qubo(const IntMatrix& a, const IntVector& b, const EncodingSpec& enc) {
    if (enc.num_vars() != a.cols()) throw DimensionError("qubo: encoding size does not match matrix columns");
    if (b.size() != a.rows()) throw DimensionError("qubo: right-hand side size does not match matrix rows");
    QuboProblem q(a, b, enc, QuboKind::feasibility);

    const std::size_t n = a.cols();
    const IntMatrix qi = build_qi(a);
    const IntVector lower(enc.lowers());

    // linear_i = (L^T Q_I - b^T A)_i
    std::vector<Int> linear(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Int s = 0;
        for (std::size_t j = 0; j < n; ++j) s = checked::add(s, checked::mul(lower[j], qi(j, i)));
        for (std::size_t r = 0; r < a.rows(); ++r) s = checked::sub(s, checked::mul(b[r], a(r, i)));
        linear[i] = s;
    }

    const std::size_t nb = q.n_;
    for (std::size_t i = 0; i < n; ++i) {
        for (int bi = 0; bi < enc.length(i); ++bi) {
            const std::size_t p = enc.bit_offset(i) + static_cast<std::size_t>(bi);
            const Int wp = enc.weight(i, bi);
            Int diag = checked::mul(checked::mul(wp, wp), qi(i, i));
            diag = checked::add(diag, checked::mul(2, checked::mul(wp, linear[i])));
            q.q_[p * nb + p] = diag;
            for (std::size_t j = i; j < n; ++j) {
                for (int bj = 0; bj < enc.length(j); ++bj) {
                    const std::size_t p2 = enc.bit_offset(j) + static_cast<std::size_t>(bj);
                    if (p2 <= p) continue;
                    const Int wq = enc.weight(j, bj);
                    q.q_[p * nb + p2] = checked::mul(2, checked::mul(checked::mul(wp, wq), qi(i, j)));
                }
            }
        }
    }

    // L^T Q_I L - 2 b^T A L + b^T b = ||A L - b||^2
    const IntVector r0 = a.multiply(lower) - b;
    Int off = 0;
    for (Int v : r0) off = checked::add(off, checked::mul(v, v));
    q.offset_ = off;
    return q;
}

QuboProblem build_kernel_qubo(const IntMatrix& a, const EncodingSpec& enc) {
    QuboProblem q = build_feasibility_qubo(a, IntVector(a.rows()), enc);
    q.kind_ = QuboKind::kernel;
    return q;
}

void write_qubo(std::ostream& out, const QuboProblem& q) {
    out << q.num_bits() << ' ' << q.offset() << '\n';
    for (std::size_t i = 0; i < q.num_bits(); ++i)
        for (std::size_t j = i; j < q.num_bits(); ++j)
            if (const Int c = q.coeff(i, j); c != 0) out << i << ' ' << j << ' ' << c << '\n';
}

// ---------------------------------------------------------------- permutation

Permutation::Permutation(std::vector<std::size_t> order) : order_(std::move(order)) {
    std::vector<char> seen(order_.size(), 0);
    for (std::size_t v : order_) {
        if (v >= order_.size() || seen[v]) throw std::invalid_argument("permutation: not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> o(n);
    std::iota(o.begin(), o.end(), 0);
    return Permutation(std::move(o));
}

Permutation Permutation::random(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> o(n);
    std::iota(o.begin(), o.end(), 0);
    Rng rng(seed);
    rng.shuffle(o);
    return Permutation(std::move(o));
}

IntMatrix Permutation::apply_columns(const IntMatrix& a) const {
    if (a.cols() != order_.size()) throw DimensionError("permutation: size mismatch");
    return a.select_columns(order_);
}

IntVector Permutation::to_original(const IntVector& y) const {
    if (y.size() != order_.size()) throw DimensionError("permutation: size mismatch");
    IntVector x(y.size());
    for (std::size_t j = 0; j < order_.size(); ++j) x[order_[j]] = y[j];
    return x;
}

IntVector Permutation::from_original(const IntVector& x) const {
    if (x.size() != order_.size()) throw DimensionError("permutation: size mismatch");
    IntVector y(x.size());
    for (std::size_t j = 0; j < order_.size(); ++j) y[j] = x[order_[j]];
    return y;
}

}  // namespace graver
