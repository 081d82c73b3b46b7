#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>

#include "fconv/engine.hpp"
#include "fconv/oracle.hpp"
#include "fconv/prng.hpp"
#include "helpers.hpp"

using namespace fconv;
using namespace fconv::testing;

namespace {

// Definition-level projection: g_p(q) = sum over u in L_p with sigma(u)=q.
std::map<std::vector<int>, std::vector<Int>> projections_by_definition(
    const TensorFunction& g, const CyclicPartition& p, Side side) {
    int n = g.arity;
    int m = static_cast<int>(p.minors.size());
    std::map<std::vector<int>, std::vector<Int>> out;

    std::vector<int> type(static_cast<std::size_t>(n), 0);
    std::vector<int> type_radices(static_cast<std::size_t>(n), m);
    do {
        std::vector<int> radices(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) radices[static_cast<std::size_t>(i)] = p.minors[type[i]].k;
        std::vector<Int> tensor(radix_product(radices), 0);

        std::vector<int> u(static_cast<std::size_t>(n), 0);
        auto dom_radices = g.radices();
        std::size_t uf = 0;
        do {
            bool in_type = true;
            std::vector<int> q(static_cast<std::size_t>(n));
            for (int i = 0; i < n && in_type; ++i) {
                const auto& minor = p.minors[type[i]];
                const auto& elems = side == Side::L ? minor.rows_a : minor.cols_b;
                const auto& sigma = side == Side::L ? minor.sigma_a : minor.sigma_b;
                auto it = std::find(elems.begin(), elems.end(), u[i]);
                if (it == elems.end()) {
                    in_type = false;
                } else {
                    q[static_cast<std::size_t>(i)] = sigma[it - elems.begin()];
                }
            }
            if (in_type) tensor[flatten(q, radices)] += g.values[uf];
            ++uf;
        } while (next_index(u, dom_radices));
        out[type] = std::move(tensor);
    } while (next_index(type, type_radices));
    return out;
}

}  // namespace

TEST_CASE("projection of the single-minor XOR partition is the identity") {
    auto f = xor_table();
    auto p = build_partition(f);
    REQUIRE(p.minors.size() == 1);
    auto g = TensorFunction::make(f.dom_l, 1, {5, 7});
    auto table = project_all(g, p, Side::L);
    REQUIRE(table.data.size() == 2);
    // sigma_A is the identity on {0,1}.
    CHECK(table.data[0] == 5);
    CHECK(table.data[1] == 7);
    CHECK(table.layer_states[0] == 2);
    CHECK(table.layer_states[1] == 2);
}

TEST_CASE("projections of the zero tensor vanish") {
    Rng rng(10);
    auto f = random_square_table(rng, 3);
    auto p = build_partition(f);
    auto g = TensorFunction::zeros(f.dom_l, 2);
    auto table = project_all(g, p, Side::L);
    for (Int v : table.data) CHECK(v == 0);
}

TEST_CASE("projections match the defining sum and conserve mass") {
    Rng rng(321);
    for (int trial = 0; trial < 25; ++trial) {
        int d = static_cast<int>(rng.int_in(2, 3));
        int n = static_cast<int>(rng.int_in(1, 3));
        auto f = random_square_table(rng, d);
        auto p = build_partition(f);
        for (Side side : {Side::L, Side::R}) {
            const FiniteDomain& dom = side == Side::L ? f.dom_l : f.dom_r;
            auto g = random_tensor(rng, dom, n, 9);
            auto table = project_all(g, p, side);
            auto want = projections_by_definition(g, p, side);

            table.for_each_type([&](std::span<const int> type, std::span<const int>,
                                    std::span<const Int> tensor) {
                std::vector<int> key(type.begin(), type.end());
                REQUIRE(want.count(key) == 1);
                const auto& expect = want[key];
                REQUIRE(expect.size() == tensor.size());
                Int mass = 0;
                for (std::size_t i = 0; i < tensor.size(); ++i) {
                    CHECK(tensor[i] == expect[i]);
                    mass += tensor[i];
                }
                // Mass equals the sum of g over L_p.
                Int direct = 0;
                for (Int v : expect) direct += v;
                CHECK(mass == direct);
            });
        }
    }
}

TEST_CASE("DP layer state counts follow cost^l * S^(n-l)") {
    Rng rng(42);
    auto f = random_square_table(rng, 3);
    auto p = build_partition(f);
    long long cost = partition_cost(p);
    int n = 3;
    auto g = random_tensor(rng, f.dom_l, n, 5);
    auto table = project_all(g, p, Side::L);
    REQUIRE(table.layer_states.size() == static_cast<std::size_t>(n) + 1);
    long long s_pow = 27;  // 3^3
    long long c_pow = 1;
    for (int layer = 0; layer <= n; ++layer) {
        CHECK(table.layer_states[static_cast<std::size_t>(layer)] ==
              static_cast<std::size_t>(c_pow * s_pow));
        s_pow /= 3;
        c_pow *= cost;
    }
}

TEST_CASE("convolve reproduces the tiny worked examples") {
    auto f = xor_table();
    auto g = TensorFunction::make(f.dom_l, 1, {1, 1});
    auto h = TensorFunction::make(f.dom_r, 1, {1, 1});
    auto out = convolve(f, g, h);
    CHECK(out.values == std::vector<Int>{2, 2});
}

TEST_CASE("one-hot right factor scatters g through f(., w0)") {
    Rng rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        int d = static_cast<int>(rng.int_in(2, 4));
        int n = static_cast<int>(rng.int_in(1, 3));
        auto f = random_square_table(rng, d);
        auto g = random_tensor(rng, f.dom_l, n, 8);
        auto w0 = random_vector(rng, d, n);
        auto h = TensorFunction::zeros(f.dom_r, n);
        h.values[flatten(w0, h.radices())] = 1;
        h.max_abs = 1;

        auto out = convolve(f, g, h);
        auto expect = TensorFunction::zeros(f.dom_t, n);
        std::vector<int> u(static_cast<std::size_t>(n), 0);
        auto radices = g.radices();
        std::size_t uf = 0;
        do {
            auto v = apply_f_coordinatewise(f, u, w0);
            expect.values[flatten(v, radices)] += g.values[uf];
            ++uf;
        } while (next_index(u, radices));
        CHECK(out.values == expect.values);
    }
}

TEST_CASE("engine equals the oracle on random signed instances") {
    Rng rng(20240101);
    for (int trial = 0; trial < 40; ++trial) {
        int d = static_cast<int>(rng.int_in(2, 4));
        int n = static_cast<int>(rng.int_in(1, 4));
        auto f = random_square_table(rng, d);
        auto g = random_tensor(rng, f.dom_l, n, 10);
        auto h = random_tensor(rng, f.dom_r, n, 10);
        auto fast = convolve(f, g, h);
        auto slow = naive_convolve(f, g, h);
        CHECK(fast.values == slow.values);
    }
}

TEST_CASE("engine handles rectangular domains and arity zero") {
    Rng rng(88);
    auto f = random_table(rng, 3, 2, 4);
    auto g = random_tensor(rng, f.dom_l, 2, 6);
    auto h = random_tensor(rng, f.dom_r, 2, 6);
    CHECK(convolve(f, g, h).values == naive_convolve(f, g, h).values);

    auto g0 = TensorFunction::make(f.dom_l, 0, {21});
    auto h0 = TensorFunction::make(f.dom_r, 0, {-2});
    auto out0 = convolve(f, g0, h0);
    CHECK(out0.values == std::vector<Int>{-42});
}

TEST_CASE("zero-type skipping never changes the output") {
    Rng rng(606);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_square_table(rng, 3);
        auto g = random_tensor(rng, f.dom_l, 3, 4);
        auto h = random_tensor(rng, f.dom_r, 3, 4);
        // Sparsify so some types actually vanish.
        for (std::size_t i = 0; i < g.values.size(); ++i)
            if (i % 3 != 0) g.values[i] = 0;

        ConvolveOptions skip_on;
        skip_on.skip_zero_types = true;
        ConvolveOptions skip_off;
        skip_off.skip_zero_types = false;
        WorkStats s1, s2;
        auto p = build_partition(f);
        auto a = convolve(f, p, g, h, skip_on, &s1);
        auto b = convolve(f, p, g, h, skip_off, &s2);
        CHECK(a.values == b.values);
        CHECK(s2.types_skipped == 0);
        CHECK(s1.types_total == s2.types_total);
    }
}

TEST_CASE("summing scattered per-type contributions reproduces the oracle") {
    Rng rng(5150);
    auto f = random_square_table(rng, 3);
    auto p = build_partition(f);
    auto g = random_tensor(rng, f.dom_l, 2, 6);
    auto h = random_tensor(rng, f.dom_r, 2, 6);

    auto rebuilt = TensorFunction::zeros(f.dom_t, 2);
    ConvolveOptions opts;
    opts.type_sink = [&](std::span<const int> type, std::span<const int> radices,
                         std::span<const Int> values) {
        std::vector<int> q(radices.size(), 0);
        std::size_t cell = 0;
        do {
            std::size_t flat = 0;
            for (std::size_t i = 0; i < radices.size(); ++i) {
                const auto& minor = p.minors[static_cast<std::size_t>(type[i])];
                flat = flat * static_cast<std::size_t>(f.dom_t.size()) +
                       static_cast<std::size_t>(minor.sigma_c[static_cast<std::size_t>(q[i])]);
            }
            rebuilt.values[flat] += values[cell++];
        } while (next_index(q, radices));
    };
    auto direct = convolve(f, p, g, h, opts);
    CHECK(rebuilt.values == naive_convolve(f, g, h).values);
    CHECK(direct.values == rebuilt.values);
}

TEST_CASE("work_count equals the literal type enumeration and cost^n") {
    Rng rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
        int m = static_cast<int>(rng.int_in(1, 5));
        int n = static_cast<int>(rng.int_in(0, 4));
        CyclicPartition p;
        for (int i = 0; i < m; ++i) {
            CyclicMinor minor;
            minor.k = static_cast<int>(rng.int_in(1, 6));
            p.minors.push_back(minor);
        }
        Int literal = 0;
        std::vector<int> type(static_cast<std::size_t>(n), 0);
        std::vector<int> radices(static_cast<std::size_t>(n), m);
        do {
            Int prod = 1;
            for (int i = 0; i < n; ++i) prod *= p.minors[static_cast<std::size_t>(type[i])].k;
            literal += prod;
        } while (next_index(type, radices));

        Int cost_pow = 1;
        for (int i = 0; i < n; ++i) cost_pow *= partition_cost(p);
        CHECK(work_count(p, n) == literal);
        CHECK(work_count(p, n) == cost_pow);
    }

    CyclicPartition two_one;
    for (int k : {2, 1}) {
        CyclicMinor m;
        m.k = k;
        two_one.minors.push_back(m);
    }
    CHECK(work_count(two_one, 2) == 9);

    CyclicPartition fig;
    for (int k : {3, 7, 4}) {
        CyclicMinor m;
        m.k = k;
        fig.minors.push_back(m);
    }
    CHECK(work_count(fig, 3) == 14 * 14 * 14);
}

TEST_CASE("oracle is symmetric under transposing f and swapping g,h") {
    Rng rng(4321);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_table(rng, 3, 2, 3);
        int n = static_cast<int>(rng.int_in(1, 3));
        auto g = random_tensor(rng, f.dom_l, n, 6);
        auto h = random_tensor(rng, f.dom_r, n, 6);
        CHECK(naive_convolve(f, g, h).values == naive_convolve(f.transposed(), h, g).values);
    }
}

TEST_CASE("parallel execution is deterministic") {
    Rng rng(1999);
    auto f = random_square_table(rng, 3);
    auto g = random_tensor(rng, f.dom_l, 4, 7);
    auto h = random_tensor(rng, f.dom_r, 4, 7);
    auto p = build_partition(f);
    ConvolveOptions serial;
    serial.jobs = 1;
    ConvolveOptions wide;
    wide.jobs = 8;
    CHECK(convolve(f, p, g, h, serial).values == convolve(f, p, g, h, wide).values);
}

TEST_CASE("convolve rejects bad inputs") {
    Rng rng(3);
    auto f = random_table(rng, 2, 3, 2);
    auto g = random_tensor(rng, f.dom_l, 2, 5);
    auto h = random_tensor(rng, f.dom_r, 2, 5);
    auto h_bad_domain = random_tensor(rng, f.dom_l, 2, 5);
    CHECK_THROWS_AS(convolve(f, g, h_bad_domain), std::invalid_argument);
    auto h_bad_arity = random_tensor(rng, f.dom_r, 3, 5);
    CHECK_THROWS_AS(convolve(f, g, h_bad_arity), std::invalid_argument);

    CyclicPartition broken = build_partition(f);
    broken.minors.pop_back();
    CHECK_THROWS_AS(convolve(f, broken, g, h), std::invalid_argument);

    auto big_g = TensorFunction::make(f.dom_l, 1, {1, 1'000'000'000'000'000'000});
    auto big_h = TensorFunction::make(f.dom_r, 1, {1'000'000'000'000'000'000, 0, 0});
    CHECK_THROWS_AS(convolve(f, big_g, big_h), std::overflow_error);
}
