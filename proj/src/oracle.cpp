#include "fconv/oracle.hpp"

#include <stdexcept>

namespace fconv {

namespace {

constexpr Int kMaxPairs = 100'000'000;

void check_instance(const FunctionTable& f, const TensorFunction& g, const TensorFunction& h) {
    if (!(g.domain == f.dom_l)) throw std::invalid_argument("g is not over L^n");
    if (!(h.domain == f.dom_r)) throw std::invalid_argument("h is not over R^n");
    if (g.arity != h.arity) throw std::invalid_argument("arity mismatch between g and h");
    auto ln = checked_pow(f.dom_l.size(), g.arity);
    auto rn = checked_pow(f.dom_r.size(), h.arity);
    auto pairs = ln && rn ? checked_mul(*ln, *rn) : std::nullopt;
    if (!pairs || *pairs > kMaxPairs)
        throw std::invalid_argument("oracle refuses instances above 10^8 vector pairs");
    convolution_output_bound(f, g, h);
}

}  // namespace

TensorFunction naive_convolve(const FunctionTable& f, const TensorFunction& g,
                              const TensorFunction& h) {
    check_instance(f, g, h);
    int n = g.arity;
    int t_size = f.dom_t.size();

    TensorFunction out = TensorFunction::zeros(f.dom_t, n);
    auto l_radices = g.radices();
    auto r_radices = h.radices();

    std::vector<int> u(static_cast<std::size_t>(n), 0);
    std::size_t u_flat = 0;
    do {
        // Row of f fixed by each u coordinate.
        std::vector<const int*> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            rows[static_cast<std::size_t>(i)] =
                f.table.data() + static_cast<std::size_t>(u[static_cast<std::size_t>(i)]) * f.dom_r.size();
        Int gv = g.values[u_flat];
        if (gv != 0) {
            std::vector<int> w(static_cast<std::size_t>(n), 0);
            std::size_t w_flat = 0;
            do {
                std::size_t v_flat = 0;
                for (int i = 0; i < n; ++i)
                    v_flat = v_flat * static_cast<std::size_t>(t_size) +
                             static_cast<std::size_t>(
                                 rows[static_cast<std::size_t>(i)][w[static_cast<std::size_t>(i)]]);
                out.values[v_flat] += gv * h.values[w_flat];
                ++w_flat;
            } while (next_index(w, r_radices));
        }
        ++u_flat;
    } while (next_index(u, l_radices));

    Int m = 0;
    for (Int v : out.values) m = std::max(m, std::abs(v));
    out.max_abs = m;
    return out;
}

Int naive_query(const FunctionTable& f, const TensorFunction& g, const TensorFunction& h,
                std::span<const int> v) {
    check_instance(f, g, h);
    int n = g.arity;
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("query vector arity mismatch");
    for (int c : v)
        if (c < 0 || c >= f.dom_t.size()) throw std::invalid_argument("query vector entry outside T");

    auto l_radices = g.radices();
    auto r_radices = h.radices();

    Int acc = 0;
    std::vector<int> u(static_cast<std::size_t>(n), 0);
    std::size_t u_flat = 0;
    do {
        Int gv = g.values[u_flat];
        if (gv != 0) {
            std::vector<int> w(static_cast<std::size_t>(n), 0);
            std::size_t w_flat = 0;
            do {
                bool match = true;
                for (int i = 0; i < n && match; ++i)
                    match = f(u[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(i)]) ==
                            v[static_cast<std::size_t>(i)];
                if (match) acc += gv * h.values[w_flat];
                ++w_flat;
            } while (next_index(w, r_radices));
        }
        ++u_flat;
    } while (next_index(u, l_radices));
    return acc;
}

}  // namespace fconv
