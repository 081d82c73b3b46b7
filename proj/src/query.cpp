#include "fconv/query.hpp"

#include <stdexcept>

namespace fconv {

namespace {

void check_instance(const FunctionTable& f, const TensorFunction& g, const TensorFunction& h,
                    std::span<const int> v) {
    if (!(g.domain == f.dom_l)) throw std::invalid_argument("g is not over L^n");
    if (!(h.domain == f.dom_r)) throw std::invalid_argument("h is not over R^n");
    if (g.arity != h.arity) throw std::invalid_argument("arity mismatch between g and h");
    if (static_cast<int>(v.size()) != g.arity)
        throw std::invalid_argument("query vector arity mismatch");
    for (int c : v)
        if (c < 0 || c >= f.dom_t.size())
            throw std::invalid_argument("query vector entry outside T");
}

std::size_t half_size(int domain, int half) {
    auto p = checked_pow(domain, half);
    if (!p || *p > 100'000)
        throw std::invalid_argument("instance too large for the query matrices");
    return static_cast<std::size_t>(*p);
}

}  // namespace

PaddedInstance pad_to_even(const FunctionTable& f, const TensorFunction& g,
                           const TensorFunction& h, std::span<const int> v, int d_l, int d_r) {
    check_instance(f, g, h, v);
    if (g.arity % 2 == 0) throw std::invalid_argument("arity is already even");
    if (d_l < 0 || d_l >= f.dom_l.size()) throw std::invalid_argument("padding element outside L");
    if (d_r < 0 || d_r >= f.dom_r.size()) throw std::invalid_argument("padding element outside R");

    auto extend = [](const TensorFunction& t, int d) {
        std::size_t s = static_cast<std::size_t>(t.domain.size());
        std::vector<Int> values(t.values.size() * s, 0);
        for (std::size_t i = 0; i < t.values.size(); ++i)
            values[i * s + static_cast<std::size_t>(d)] = t.values[i];
        return TensorFunction::make(t.domain, t.arity + 1, std::move(values));
    };

    PaddedInstance out{extend(g, d_l), extend(h, d_r), {v.begin(), v.end()}};
    out.v.push_back(f(d_l, d_r));
    return out;
}

TransitionMatrices build_transition_matrices(const FunctionTable& f, const TensorFunction& g,
                                             const TensorFunction& h, std::span<const int> v) {
    check_instance(f, g, h, v);
    int n = g.arity;
    if (n % 2 != 0) throw std::invalid_argument("transition matrices need even arity");
    int half = n / 2;

    std::size_t nl = half_size(f.dom_l.size(), half);
    std::size_t nr = half_size(f.dom_r.size(), half);

    auto v_high = v.subspan(0, static_cast<std::size_t>(half));
    auto v_low = v.subspan(static_cast<std::size_t>(half));

    TransitionMatrices m;
    m.w.resize(static_cast<Eigen::Index>(nl), static_cast<Eigen::Index>(nl));
    for (std::size_t wi = 0; wi < nl; ++wi)
        for (std::size_t xi = 0; xi < nl; ++xi)
            m.w(static_cast<Eigen::Index>(wi), static_cast<Eigen::Index>(xi)) =
                g.values[wi * nl + xi];

    m.y.resize(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nr));
    for (std::size_t yi = 0; yi < nr; ++yi)
        for (std::size_t zi = 0; zi < nr; ++zi)
            m.y(static_cast<Eigen::Index>(yi), static_cast<Eigen::Index>(zi)) =
                h.values[zi * nr + yi];

    auto l_half = uniform_radices(f.dom_l.size(), half);
    auto r_half = uniform_radices(f.dom_r.size(), half);
    std::vector<std::vector<int>> l_digits(nl), r_digits(nr);
    for (std::size_t i = 0; i < nl; ++i) l_digits[i] = unflatten(i, l_half);
    for (std::size_t i = 0; i < nr; ++i) r_digits[i] = unflatten(i, r_half);

    m.x.resize(static_cast<Eigen::Index>(nl), static_cast<Eigen::Index>(nr));
    for (std::size_t xi = 0; xi < nl; ++xi) {
        for (std::size_t yi = 0; yi < nr; ++yi) {
            bool eq = true;
            for (int c = 0; c < half && eq; ++c)
                eq = f(l_digits[xi][static_cast<std::size_t>(c)],
                       r_digits[yi][static_cast<std::size_t>(c)]) == v_low[static_cast<std::size_t>(c)];
            m.x(static_cast<Eigen::Index>(xi), static_cast<Eigen::Index>(yi)) = eq ? 1 : 0;
        }
    }

    m.z.resize(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(nl));
    for (std::size_t zi = 0; zi < nr; ++zi) {
        for (std::size_t wi = 0; wi < nl; ++wi) {
            bool eq = true;
            for (int c = 0; c < half && eq; ++c)
                eq = f(l_digits[wi][static_cast<std::size_t>(c)],
                       r_digits[zi][static_cast<std::size_t>(c)]) == v_high[static_cast<std::size_t>(c)];
            m.z(static_cast<Eigen::Index>(zi), static_cast<Eigen::Index>(wi)) = eq ? 1 : 0;
        }
    }
    return m;
}

Int query(const FunctionTable& f, const TensorFunction& g, const TensorFunction& h,
          std::span<const int> v, const QueryOptions& opts) {
    check_instance(f, g, h, v);
    if (g.arity % 2 == 1) {
        PaddedInstance padded = pad_to_even(f, g, h, v, opts.pad_l, opts.pad_r);
        return query(f, padded.g, padded.h, padded.v, opts);
    }

    int half = g.arity / 2;
    std::size_t nl = half_size(f.dom_l.size(), half);
    std::size_t nr = half_size(f.dom_r.size(), half);

    // Entries of (W*X)*(Y*Z) stay below NR * (NL*Mg) * (NR*Mh); the trace adds
    // one more factor NL. Reject before any product can wrap.
    i128 entry = i128(nr) * (i128(nl) * std::max<Int>(g.max_abs, 1)) *
                 (i128(nr) * std::max<Int>(h.max_abs, 1));
    if (i128(nl) * entry > i128(std::numeric_limits<Int>::max()))
        throw std::overflow_error("query result bound exceeds 64-bit integer capacity");

    TransitionMatrices m = build_transition_matrices(f, g, h, v);
    IntMatrix wx = m.w * m.x;
    IntMatrix yz = m.y * m.z;
    IntMatrix prod = wx * yz;
    return prod.trace();
}

}  // namespace fconv
