#include "fconv/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fconv {

FiniteDomain::FiniteDomain(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw std::invalid_argument("domain must have at least one element");
    index_.reserve(labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw std::invalid_argument("domain labels must be non-empty");
        auto [_, inserted] = index_.emplace(labels_[i], static_cast<int>(i));
        if (!inserted) throw std::invalid_argument("duplicate domain label: " + labels_[i]);
    }
}

int FiniteDomain::find(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
}

int FiniteDomain::index_of(const std::string& label) const {
    int i = find(label);
    if (i < 0) throw std::invalid_argument("label not in domain: " + label);
    return i;
}

FunctionTable FunctionTable::make(FiniteDomain l, FiniteDomain r, FiniteDomain t,
                                  std::vector<int> table) {
    std::size_t expect = static_cast<std::size_t>(l.size()) * static_cast<std::size_t>(r.size());
    if (table.size() != expect)
        throw std::invalid_argument("function table must have exactly |L|*|R| entries");
    for (int e : table) {
        if (e < 0 || e >= t.size())
            throw std::invalid_argument("function table entry outside T");
    }
    return FunctionTable{std::move(l), std::move(r), std::move(t), std::move(table)};
}

FunctionTable FunctionTable::transposed() const {
    std::vector<int> t(table.size());
    int l = dom_l.size();
    int r = dom_r.size();
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < r; ++b)
            t[static_cast<std::size_t>(b) * l + a] = (*this)(a, b);
    return FunctionTable{dom_r, dom_l, dom_t, std::move(t)};
}

namespace {
// Tensors are in-memory dense arrays; anything past this is not a desk-scale
// instance and would only die in the allocator with a worse message.
constexpr std::size_t kMaxDenseCells = std::size_t(1) << 31;
}  // namespace

std::size_t radix_product(std::span<const int> radices) {
    std::size_t n = 1;
    for (int r : radices) {
        if (r < 1) throw std::invalid_argument("radices must be positive");
        if (n > kMaxDenseCells / static_cast<std::size_t>(r))
            throw std::invalid_argument("index space too large");
        n *= static_cast<std::size_t>(r);
    }
    return n;
}

std::size_t flatten(std::span<const int> digits, std::span<const int> radices) {
    if (digits.size() != radices.size())
        throw std::invalid_argument("digit/radix count mismatch");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] < 0 || digits[i] >= radices[i])
            throw std::out_of_range("digit out of range for its radix");
        flat = flat * static_cast<std::size_t>(radices[i]) + static_cast<std::size_t>(digits[i]);
    }
    return flat;
}

void unflatten_into(std::size_t flat, std::span<const int> radices, std::span<int> out) {
    for (std::size_t i = radices.size(); i-- > 0;) {
        out[i] = static_cast<int>(flat % static_cast<std::size_t>(radices[i]));
        flat /= static_cast<std::size_t>(radices[i]);
    }
    if (flat != 0) throw std::out_of_range("flat index out of range");
}

std::vector<int> unflatten(std::size_t flat, std::span<const int> radices) {
    std::vector<int> digits(radices.size());
    unflatten_into(flat, radices, digits);
    return digits;
}

bool next_index(std::span<int> digits, std::span<const int> radices) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < radices[i]) return true;
        digits[i] = 0;
    }
    return false;
}

std::vector<int> uniform_radices(int radix, int arity) {
    return std::vector<int>(static_cast<std::size_t>(arity), radix);
}

TensorFunction TensorFunction::make(FiniteDomain domain, int arity, std::vector<Int> values) {
    if (arity < 0) throw std::invalid_argument("arity must be non-negative");
    auto radices = uniform_radices(domain.size(), arity);
    std::size_t expect = radix_product(radices);
    if (values.size() != expect)
        throw std::invalid_argument("tensor must have exactly |D|^n values");
    Int m = 0;
    for (Int v : values) m = std::max(m, std::abs(v));
    return TensorFunction{std::move(domain), arity, std::move(values), m};
}

TensorFunction TensorFunction::zeros(FiniteDomain domain, int arity) {
    auto radices = uniform_radices(domain.size(), arity);
    std::vector<Int> values(radix_product(radices), 0);
    return TensorFunction{std::move(domain), arity, std::move(values), 0};
}

Int TensorFunction::at(std::span<const int> coords) const {
    auto r = radices();
    return values[flatten(coords, r)];
}

std::vector<int> apply_f_coordinatewise(const FunctionTable& f, std::span<const int> u,
                                        std::span<const int> w) {
    if (u.size() != w.size()) throw std::invalid_argument("vector length mismatch");
    std::vector<int> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0 || u[i] >= f.dom_l.size()) throw std::out_of_range("u entry outside L");
        if (w[i] < 0 || w[i] >= f.dom_r.size()) throw std::out_of_range("w entry outside R");
        out[i] = f(u[i], w[i]);
    }
    return out;
}

Int convolution_output_bound(const FunctionTable& f, const TensorFunction& g,
                             const TensorFunction& h) {
    if (g.arity != h.arity) throw std::invalid_argument("arity mismatch between g and h");
    const char* msg =
        "guaranteed output bound |L|^n*|R|^n*Mg*Mh exceeds 64-bit integer capacity";
    auto ln = checked_pow(f.dom_l.size(), g.arity);
    auto rn = checked_pow(f.dom_r.size(), h.arity);
    if (!ln || !rn) throw std::overflow_error(msg);
    auto acc = checked_mul(*ln, *rn);
    if (acc) acc = checked_mul(*acc, std::max<Int>(g.max_abs, 1));
    if (acc) acc = checked_mul(*acc, std::max<Int>(h.max_abs, 1));
    if (!acc) throw std::overflow_error(msg);
    return *acc;
}

}  // namespace fconv
