#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fconv/intmath.hpp"

namespace fconv {

// Ordered set of distinct non-empty labels; element i is label(i).
class FiniteDomain {
public:
    explicit FiniteDomain(std::vector<std::string> labels);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& labels() const { return labels_; }

    // -1 when the label is unknown.
    int find(const std::string& label) const;
    // Throws std::invalid_argument when the label is unknown.
    int index_of(const std::string& label) const;

    bool operator==(const FiniteDomain& other) const { return labels_ == other.labels_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

// f : L x R -> T as an explicit |L| x |R| grid of T-indices, rows over L.
struct FunctionTable {
    FiniteDomain dom_l;
    FiniteDomain dom_r;
    FiniteDomain dom_t;
    std::vector<int> table;  // row-major, table[a*|R|+b] in [0,|T|)

    int operator()(int a, int b) const {
        return table[static_cast<std::size_t>(a) * dom_r.size() + static_cast<std::size_t>(b)];
    }

    static FunctionTable make(FiniteDomain l, FiniteDomain r, FiniteDomain t,
                              std::vector<int> table);

    // f'(r, l) = f(l, r); rows and columns swap.
    FunctionTable transposed() const;
};

// Mixed-radix indexing, coordinate 1 most significant. This is the one layout
// convention used everywhere: tensors, projections, matrices, files.
std::size_t radix_product(std::span<const int> radices);
std::size_t flatten(std::span<const int> digits, std::span<const int> radices);
std::vector<int> unflatten(std::size_t flat, std::span<const int> radices);
void unflatten_into(std::size_t flat, std::span<const int> radices, std::span<int> out);

// Odometer step in row-major order; returns false after the last index wraps
// back to all zeros.
bool next_index(std::span<int> digits, std::span<const int> radices);

std::vector<int> uniform_radices(int radix, int arity);

// Dense g : D^n -> Z with cached max |value|.
struct TensorFunction {
    FiniteDomain domain;
    int arity = 0;
    std::vector<Int> values;  // |domain|^arity entries, row-major
    Int max_abs = 0;

    static TensorFunction make(FiniteDomain domain, int arity, std::vector<Int> values);
    static TensorFunction zeros(FiniteDomain domain, int arity);

    std::vector<int> radices() const { return uniform_radices(domain.size(), arity); }
    Int at(std::span<const int> coords) const;
};

// (u_1..u_n, w_1..w_n) -> (f(u_1,w_1), ..., f(u_n,w_n)).
std::vector<int> apply_f_coordinatewise(const FunctionTable& f, std::span<const int> u,
                                        std::span<const int> w);

// Guaranteed worst-case magnitude of any f-convolution output cell:
// |L|^n * |R|^n * Mg * Mh. Throws std::overflow_error when it does not fit
// the Int capacity.
Int convolution_output_bound(const FunctionTable& f, const TensorFunction& g,
                             const TensorFunction& h);

}  // namespace fconv
