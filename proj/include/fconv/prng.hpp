#pragma once

#include <cstdint>
#include <random>

#include "fconv/domain.hpp"

namespace fconv {

// Seeded generator with implementation-independent bounded draws, so the same
// seed produces byte-identical instances (and reports) everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [lo, hi] via rejection; does not use std distributions.
    Int int_in(Int lo, Int hi);

private:
    std::mt19937_64 eng_;
};

FiniteDomain numbered_domain(int size);

// Uniform f : D x D -> D over numbered labels "0".."d-1".
FunctionTable random_square_table(Rng& rng, int d);
FunctionTable random_table(Rng& rng, int l, int r, int t);

// Dense tensor with values uniform in [-m, m].
TensorFunction random_tensor(Rng& rng, const FiniteDomain& domain, int arity, Int m);

std::vector<int> random_vector(Rng& rng, int domain_size, int arity);

// Square table over |D|=d decoded from an enumeration index in
// [0, d^(d*d)); used for exhaustive sweeps.
FunctionTable square_table_from_code(int d, std::uint64_t code);

}  // namespace fconv
