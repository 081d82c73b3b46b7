#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fconv/intmath.hpp"

namespace fconv {

// Shape of a cyclic-convolution instance: Z_{r1} x ... x Z_{rn}.
struct Radices {
    std::vector<int> r;

    std::size_t product() const;

    // Every prime in a plan must be == 1 mod this. lcm(r_i) makes an order-r_i
    // root exist for each axis; axes above the direct-DFT cutoff additionally
    // need the power-of-two transform length used by Bluestein's reduction.
    std::uint64_t root_modulus() const;
};

// Axis lengths up to this use the quadratic DFT; longer axes go through
// Bluestein's reduction to a power-of-two NTT.
inline constexpr int kDirectDftMax = 64;

// Ascending primes == 1 (mod root_modulus) whose product exceeds 2*bound, so
// centered CRT recovers signed values uniquely.
std::vector<std::uint64_t> find_primes(std::uint64_t root_modulus, Int bound);

// Element of exact multiplicative order `order` in F_p; requires order | p-1.
std::uint64_t find_root(std::uint64_t p, std::uint64_t order);

struct PrimePlan {
    Radices radices;
    Int bound = 0;
    std::vector<std::uint64_t> primes;
    // roots[j][i]: order-r_i element in F_{p_j}.
    std::vector<std::vector<std::uint64_t>> roots;
};

PrimePlan make_prime_plan(const Radices& radices, Int bound);

// Dense tensor over Z_r with entries reduced modulo one prime.
struct ModularTensor {
    std::vector<int> radices;
    std::vector<std::uint64_t> values;
};

// Per-axis NTT, pointwise product, inverse, scale by (prod r)^-1 mod p.
ModularTensor cyclic_convolve_mod_p(const ModularTensor& g, const ModularTensor& h,
                                    std::uint64_t p, std::span<const std::uint64_t> roots);

// Signed reconstruction: unique s in [0, prod p), centered to
// (-prod p / 2, prod p / 2].
std::vector<Int> crt_combine(const std::vector<std::vector<std::uint64_t>>& residues,
                             std::span<const std::uint64_t> primes);

// Exact integer cyclic convolution over Z_r. bound = 0 derives the safe
// default (prod r) * Mg * Mh; callers with a tighter guarantee may pass it.
std::vector<Int> cyclic_convolve(std::span<const Int> g, std::span<const Int> h,
                                 std::span<const int> radices, Int bound = 0);

}  // namespace fconv
