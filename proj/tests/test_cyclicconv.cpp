#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "fconv/cyclicconv.hpp"
#include "fconv/domain.hpp"
#include "fconv/prng.hpp"
#include "helpers.hpp"

using namespace fconv;
using namespace fconv::testing;

TEST_CASE("prime search walks the arithmetic progression from below") {
    auto p6 = find_primes(6, 1'000'000);
    REQUIRE(p6.size() >= 3);
    CHECK(p6[0] == 7);
    CHECK(p6[1] == 13);
    CHECK(p6[2] == 19);

    auto p1 = find_primes(1, 100);
    REQUIRE(p1.size() >= 3);
    CHECK(p1[0] == 2);
    CHECK(p1[1] == 3);
    CHECK(p1[2] == 5);

    // 5*13 = 65 <= 200 < 5*13*17
    auto p4 = find_primes(4, 100);
    CHECK(p4 == std::vector<std::uint64_t>{5, 13, 17});
}

TEST_CASE("prime search product clears twice the bound") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::uint64_t mod = static_cast<std::uint64_t>(rng.int_in(1, 30));
        Int bound = rng.int_in(0, 1'000'000'000);
        auto primes = find_primes(mod, bound);
        u128 prod = 1;
        for (auto p : primes) {
            CHECK(p % mod == 1 % mod);
            CHECK(is_prime_u64(p));
            prod *= p;
        }
        CHECK(prod > u128(2) * u128(bound));
    }
}

TEST_CASE("find_root returns an element of exact order") {
    CHECK(find_root(7, 6) == 3);
    CHECK(find_root(7, 1) == 1);

    std::uint64_t w = find_root(13, 4);
    CHECK(pow_mod(w, 4, 13) == 1);
    CHECK(pow_mod(w, 2, 13) != 1);

    CHECK_THROWS_AS(find_root(7, 4), std::invalid_argument);

    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        std::uint64_t r = static_cast<std::uint64_t>(rng.int_in(1, 24));
        std::uint64_t p = find_primes(r, 10)[0];
        std::uint64_t root = find_root(p, r);
        CHECK(pow_mod(root, r, p) == 1);
        for (std::uint64_t q = 2; q <= r; ++q)
            if (r % q == 0) CHECK(pow_mod(root, r / q, p) != 1);
    }
}

TEST_CASE("modular cyclic convolution matches the hand example") {
    // out = (11, 10) over the integers, reduced mod 7.
    ModularTensor g{{2}, {1, 2}};
    ModularTensor h{{2}, {3, 4}};
    std::uint64_t p = 7;
    std::vector<std::uint64_t> roots = {find_root(p, 2)};
    auto out = cyclic_convolve_mod_p(g, h, p, roots);
    CHECK(out.values == std::vector<std::uint64_t>{4, 3});
}

TEST_CASE("transform round trip: convolving with delta returns g mod p") {
    // Forward transform, all-ones spectrum of the delta, inverse transform:
    // the identity on g, for every axis shape and across several primes.
    Rng rng(9);
    std::vector<std::vector<int>> shapes = {{3, 4, 2}, {8, 8, 8},    {512},  {1, 5, 1, 7},
                                            {6, 6, 6}, {2, 2, 2, 2}, {67, 7}, {128, 3}};
    for (const auto& radices : shapes) {
        std::size_t total = radix_product(radices);
        REQUIRE(total <= 512);
        Radices shape{radices};
        auto primes = find_primes(shape.root_modulus(), 500'000'000'000'000'000);
        REQUIRE(primes.size() >= 3);
        for (std::size_t pi = 0; pi < 3; ++pi) {
            std::uint64_t p = primes[pi];
            std::vector<std::uint64_t> roots;
            for (int r : radices) roots.push_back(find_root(p, static_cast<std::uint64_t>(r)));

            ModularTensor g{radices, std::vector<std::uint64_t>(total)};
            for (auto& v : g.values)
                v = static_cast<std::uint64_t>(rng.int_in(0, static_cast<Int>(p) - 1));
            ModularTensor delta{radices, std::vector<std::uint64_t>(total, 0)};
            delta.values[0] = 1;

            auto out = cyclic_convolve_mod_p(g, delta, p, roots);
            CHECK(out.values == g.values);
        }
    }
}

TEST_CASE("modular convolution equals the naive triple sum mod p") {
    Rng rng(123);
    std::vector<int> radices = {2, 3};
    std::uint64_t p = 13;
    std::vector<std::uint64_t> roots;
    for (int r : radices) roots.push_back(find_root(p, static_cast<std::uint64_t>(r)));
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> g(6), h(6);
        for (auto& v : g) v = rng.int_in(0, 12);
        for (auto& v : h) v = rng.int_in(0, 12);
        auto want = naive_cyclic(g, h, radices);
        ModularTensor gm{radices, {g.begin(), g.end()}};
        ModularTensor hm{radices, {h.begin(), h.end()}};
        auto got = cyclic_convolve_mod_p(gm, hm, p, roots);
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(got.values[i] == static_cast<std::uint64_t>(want[i] % 13));
    }
}

TEST_CASE("crt combine solves the worked congruences") {
    std::vector<std::uint64_t> primes = {7, 13};
    CHECK(crt_combine({{4}, {11}}, primes) == std::vector<Int>{11});
    CHECK(crt_combine({{0}, {0}}, primes) == std::vector<Int>{0});
    // 90 = -1 mod 91, above the centered midpoint.
    CHECK(crt_combine({{6}, {12}}, primes) == std::vector<Int>{-1});

    std::vector<std::uint64_t> not_coprime = {6, 9};
    CHECK_THROWS_AS(crt_combine({{1}, {1}}, not_coprime), std::invalid_argument);
}

TEST_CASE("crt round-trips signed values in the centered range") {
    std::vector<std::uint64_t> primes = {7, 13, 19, 29};
    Int prod = 7 * 13 * 19 * 29;
    Rng rng(555);
    for (int trial = 0; trial < 2000; ++trial) {
        Int x = rng.int_in(-(prod / 2 - 1), prod / 2 - 1);
        std::vector<std::vector<std::uint64_t>> residues;
        for (auto p : primes) {
            Int r = x % static_cast<Int>(p);
            if (r < 0) r += static_cast<Int>(p);
            residues.push_back({static_cast<std::uint64_t>(r)});
        }
        CHECK(crt_combine(residues, primes) == std::vector<Int>{x});
    }
}

TEST_CASE("exact cyclic convolution matches the definition") {
    std::vector<Int> g = {1, 2}, h = {3, 4};
    std::vector<int> radices = {2};
    CHECK(cyclic_convolve(g, h, radices) == std::vector<Int>{11, 10});

    std::vector<Int> a = {5}, b = {-7};
    std::vector<int> ones = {1, 1, 1};
    CHECK(cyclic_convolve(a, b, ones) == std::vector<Int>{-35});
}

TEST_CASE("exact cyclic convolution on random signed inputs") {
    Rng rng(4242);
    std::vector<std::vector<int>> shapes = {{2, 3}, {4}, {2, 2, 2}, {5, 3}, {1, 6}, {7}};
    for (const auto& radices : shapes) {
        std::size_t total = radix_product(radices);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Int> g(total), h(total);
            for (auto& v : g) v = rng.int_in(-1000, 1000);
            for (auto& v : h) v = rng.int_in(-1000, 1000);
            CHECK(cyclic_convolve(g, h, radices) == naive_cyclic(g, h, radices));
        }
    }
}

TEST_CASE("bluestein path handles axes beyond the direct cutoff") {
    Rng rng(77);
    for (int r : {67, 100}) {
        REQUIRE(r > kDirectDftMax);
        std::vector<int> radices = {r};
        std::vector<Int> g(static_cast<std::size_t>(r)), h(static_cast<std::size_t>(r));
        for (auto& v : g) v = rng.int_in(-50, 50);
        for (auto& v : h) v = rng.int_in(-50, 50);
        CHECK(cyclic_convolve(g, h, radices) == naive_cyclic(g, h, radices));
    }
    // Mixed direct/bluestein axes.
    std::vector<int> radices = {2, 67};
    std::vector<Int> g(134), h(134);
    for (auto& v : g) v = rng.int_in(-10, 10);
    for (auto& v : h) v = rng.int_in(-10, 10);
    CHECK(cyclic_convolve(g, h, radices) == naive_cyclic(g, h, radices));
}

TEST_CASE("cyclic convolution is commutative and bilinear") {
    Rng rng(31337);
    std::vector<int> radices = {3, 4};
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Int> g(12), h(12);
        for (auto& v : g) v = rng.int_in(-20, 20);
        for (auto& v : h) v = rng.int_in(-20, 20);
        CHECK(cyclic_convolve(g, h, radices) == cyclic_convolve(h, g, radices));

        Int alpha = rng.int_in(-5, 5);
        std::vector<Int> scaled = g;
        for (auto& v : scaled) v *= alpha;
        auto lhs = cyclic_convolve(scaled, h, radices);
        auto rhs = cyclic_convolve(g, h, radices);
        for (auto& v : rhs) v *= alpha;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("root modulus covers every axis order") {
    Radices shape{{2, 3, 4}};
    CHECK(shape.root_modulus() == 12);
    CHECK(shape.product() == 24);
    Radices empty{{}};
    CHECK(empty.root_modulus() == 1);
    CHECK(empty.product() == 1);

    auto plan = make_prime_plan(shape, 1000);
    for (std::size_t j = 0; j < plan.primes.size(); ++j) {
        for (std::size_t i = 0; i < shape.r.size(); ++i) {
            auto r = static_cast<std::uint64_t>(shape.r[i]);
            CHECK(pow_mod(plan.roots[j][i], r, plan.primes[j]) == 1);
        }
    }
}
