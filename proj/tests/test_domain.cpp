#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fconv/domain.hpp"
#include "fconv/prng.hpp"
#include "helpers.hpp"

using namespace fconv;
using namespace fconv::testing;

TEST_CASE("finite domain rejects bad label sets") {
    CHECK_THROWS_AS(FiniteDomain({}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteDomain({"a", "a"}), std::invalid_argument);
    CHECK_THROWS_AS(FiniteDomain({"a", ""}), std::invalid_argument);
    FiniteDomain d({"x", "y"});
    CHECK(d.size() == 2);
    CHECK(d.index_of("y") == 1);
    CHECK(d.find("z") == -1);
    CHECK_THROWS_AS(d.index_of("z"), std::invalid_argument);
}

TEST_CASE("flatten matches hand-computed values") {
    std::vector<int> r1 = {4, 4, 4};
    std::vector<int> d1 = {0, 0, 0};
    CHECK(flatten(d1, r1) == 0);

    std::vector<int> r2 = {3, 4};
    std::vector<int> d2 = {1, 2};
    CHECK(flatten(d2, r2) == 6);

    // 2*(2*4) + 1*4 + 3
    std::vector<int> r3 = {3, 2, 4};
    std::vector<int> d3 = {2, 1, 3};
    CHECK(flatten(d3, r3) == 23);
}

TEST_CASE("flatten rejects out-of-range digits and length mismatch") {
    std::vector<int> r = {3, 2};
    std::vector<int> bad = {0, 2};
    CHECK_THROWS_AS(flatten(bad, r), std::out_of_range);
    std::vector<int> shorter = {0};
    CHECK_THROWS_AS(flatten(shorter, r), std::invalid_argument);
}

TEST_CASE("flatten and unflatten are mutually inverse") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        int n = static_cast<int>(rng.int_in(1, 5));
        std::vector<int> radices(static_cast<std::size_t>(n));
        std::size_t total = 1;
        for (auto& r : radices) {
            r = static_cast<int>(rng.int_in(1, 14));
            total *= static_cast<std::size_t>(r);
        }
        if (total > 1'000'000) continue;
        for (int probe = 0; probe < 20; ++probe) {
            std::size_t flat =
                static_cast<std::size_t>(rng.int_in(0, static_cast<Int>(total) - 1));
            CHECK(flatten(unflatten(flat, radices), radices) == flat);
        }
    }
}

TEST_CASE("odometer enumerates the whole index space in flat order") {
    std::vector<int> radices = {2, 3, 2};
    std::vector<int> digits(3, 0);
    std::size_t flat = 0;
    do {
        CHECK(flatten(digits, radices) == flat);
        ++flat;
    } while (next_index(digits, radices));
    CHECK(flat == 12);
}

TEST_CASE("tensor function validates size and caches the max") {
    FiniteDomain d = numbered_domain(3);
    CHECK_THROWS_AS(TensorFunction::make(d, 2, {1, 2, 3}), std::invalid_argument);
    auto t = TensorFunction::make(d, 2, {0, -7, 3, 1, 0, 0, 2, -1, 5});
    CHECK(t.values.size() == 9);
    CHECK(t.max_abs == 7);

    Rng rng(5);
    for (int n = 0; n <= 4; ++n) {
        auto r = random_tensor(rng, d, n, 3);
        std::size_t expect = 1;
        for (int i = 0; i < n; ++i) expect *= 3;
        CHECK(r.values.size() == expect);
    }
}

TEST_CASE("apply_f_coordinatewise on the XOR table") {
    auto f = xor_table();
    std::vector<int> u = {0, 1}, w = {1, 1};
    CHECK(apply_f_coordinatewise(f, u, w) == std::vector<int>{1, 0});

    std::vector<int> empty;
    CHECK(apply_f_coordinatewise(f, empty, empty).empty());

    std::vector<int> mismatch = {0};
    CHECK_THROWS_AS(apply_f_coordinatewise(f, u, mismatch), std::invalid_argument);
}

TEST_CASE("apply_f_coordinatewise agrees with table lookup on a random 3x3 table") {
    Rng rng(77);
    auto f = random_square_table(rng, 3);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            std::vector<int> u = {a}, w = {b};
            CHECK(apply_f_coordinatewise(f, u, w) == std::vector<int>{f(a, b)});
        }
    }
}

TEST_CASE("function table rejects malformed grids and transposes correctly") {
    FiniteDomain two = numbered_domain(2);
    CHECK_THROWS_AS(FunctionTable::make(two, two, two, {0, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionTable::make(two, two, two, {0, 1, 0, 2}), std::invalid_argument);

    Rng rng(8);
    auto f = random_table(rng, 3, 4, 5);
    auto ft = f.transposed();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 4; ++b) CHECK(ft(b, a) == f(a, b));
}

TEST_CASE("output bound rejects instances beyond 64-bit capacity") {
    FiniteDomain two = numbered_domain(2);
    auto f = xor_table();
    auto g = TensorFunction::make(two, 1, {1'000'000'000'000'000'000, 0});
    auto h = TensorFunction::make(two, 1, {1'000'000'000'000'000'000, 0});
    CHECK_THROWS_AS(convolution_output_bound(f, g, h), std::overflow_error);

    auto small_g = TensorFunction::make(two, 1, {3, -2});
    auto small_h = TensorFunction::make(two, 1, {1, 4});
    CHECK(convolution_output_bound(f, small_g, small_h) == 2 * 2 * 3 * 4);
}
