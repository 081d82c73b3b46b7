#include "fconv/prng.hpp"

#include <stdexcept>

namespace fconv {

Int Rng::int_in(Int lo, Int hi) {
    if (lo > hi) throw std::invalid_argument("empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<Int>(next());  // full 64-bit range
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do {
        draw = next();
    } while (draw >= limit);
    return lo + static_cast<Int>(draw % span);
}

FiniteDomain numbered_domain(int size) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) labels.push_back(std::to_string(i));
    return FiniteDomain(std::move(labels));
}

FunctionTable random_table(Rng& rng, int l, int r, int t) {
    std::vector<int> table(static_cast<std::size_t>(l) * static_cast<std::size_t>(r));
    for (auto& e : table) e = static_cast<int>(rng.int_in(0, t - 1));
    return FunctionTable::make(numbered_domain(l), numbered_domain(r), numbered_domain(t),
                               std::move(table));
}

FunctionTable random_square_table(Rng& rng, int d) {
    return random_table(rng, d, d, d);
}

TensorFunction random_tensor(Rng& rng, const FiniteDomain& domain, int arity, Int m) {
    auto radices = uniform_radices(domain.size(), arity);
    std::vector<Int> values(radix_product(radices));
    for (auto& v : values) v = rng.int_in(-m, m);
    return TensorFunction::make(domain, arity, std::move(values));
}

std::vector<int> random_vector(Rng& rng, int domain_size, int arity) {
    std::vector<int> v(static_cast<std::size_t>(arity));
    for (auto& c : v) c = static_cast<int>(rng.int_in(0, domain_size - 1));
    return v;
}

FunctionTable square_table_from_code(int d, std::uint64_t code) {
    std::vector<int> table(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (auto& e : table) {
        e = static_cast<int>(code % static_cast<std::uint64_t>(d));
        code /= static_cast<std::uint64_t>(d);
    }
    if (code != 0) throw std::invalid_argument("function code out of range");
    return FunctionTable::make(numbered_domain(d), numbered_domain(d), numbered_domain(d),
                               std::move(table));
}

}  // namespace fconv
