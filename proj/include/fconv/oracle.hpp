#pragma once

#include <span>

#include "fconv/domain.hpp"

namespace fconv {

// Brute-force references; ground truth for every other path in the project.
// Both refuse instances with more than 10^8 (u, w) pairs.

TensorFunction naive_convolve(const FunctionTable& f, const TensorFunction& g,
                              const TensorFunction& h);

Int naive_query(const FunctionTable& f, const TensorFunction& g, const TensorFunction& h,
                std::span<const int> v);

}  // namespace fconv
