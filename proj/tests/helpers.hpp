#pragma once

#include <string>
#include <vector>

#include "fconv/domain.hpp"
#include "fconv/partition.hpp"
#include "fconv/prng.hpp"

namespace fconv::testing {

inline FunctionTable square_table(int d, std::vector<int> entries) {
    FiniteDomain dom = numbered_domain(d);
    return FunctionTable::make(dom, dom, dom, std::move(entries));
}

inline FunctionTable xor_table() {
    return square_table(2, {0, 1, 1, 0});
}

inline FunctionTable and_table() {
    return square_table(2, {0, 0, 0, 1});
}

inline FunctionTable addmod_table(int d) {
    std::vector<int> t(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) t[static_cast<std::size_t>(a) * d + b] = (a + b) % d;
    return square_table(d, std::move(t));
}

// The worked two-row example: 12 columns, 13 values a..m. The graph is a
// 3-cycle on {a,b,c}, an in-star of 6 edges at d, and the path j->k->l->m.
inline FunctionTable fig2_table() {
    std::vector<std::string> l = {"l0", "l1"};
    std::vector<std::string> r;
    for (int i = 1; i <= 12; ++i) r.push_back("r" + std::to_string(i));
    std::vector<std::string> t = {"a", "b", "c", "d", "e", "f", "g",
                                  "h", "i", "j", "k", "l", "m"};
    FiniteDomain dom_t{t};
    auto row = [&](std::initializer_list<const char*> labels) {
        std::vector<int> out;
        for (const char* s : labels) out.push_back(dom_t.index_of(s));
        return out;
    };
    std::vector<int> top = row({"a", "b", "c", "a", "e", "f", "g", "h", "i", "j", "k", "l"});
    std::vector<int> bottom = row({"b", "c", "a", "d", "d", "d", "d", "d", "d", "k", "l", "m"});
    std::vector<int> table = top;
    table.insert(table.end(), bottom.begin(), bottom.end());
    return FunctionTable::make(FiniteDomain{l}, FiniteDomain{r}, dom_t, std::move(table));
}

// The figure's own decomposition: cycle (3) + in-star (7) + path (4) = 14.
inline CyclicPartition fig2_fixture_partition(const FunctionTable& f) {
    auto t = [&](const char* s) { return f.dom_t.index_of(s); };
    CyclicPartition p;

    CyclicMinor cycle;
    cycle.rows_a = {0, 1};
    cycle.sigma_a = {0, 1};
    cycle.cols_b = {0, 1, 2};  // r1, r2, r3
    cycle.sigma_b = {0, 1, 2};
    cycle.k = 3;
    cycle.sigma_c = {t("a"), t("b"), t("c")};
    p.minors.push_back(cycle);

    CyclicMinor star_center;  // in-star at d: row l1 is constant d on r4..r9
    star_center.rows_a = {1};
    star_center.sigma_a = {0};
    star_center.cols_b = {3, 4, 5, 6, 7, 8};
    star_center.sigma_b = {0, 0, 0, 0, 0, 0};
    star_center.k = 1;
    star_center.sigma_c = {t("d")};
    p.minors.push_back(star_center);
    const char* tails[] = {"a", "e", "f", "g", "h", "i"};
    for (int i = 0; i < 6; ++i) {
        CyclicMinor m;
        m.rows_a = {0};
        m.sigma_a = {0};
        m.cols_b = {3 + i};
        m.sigma_b = {0};
        m.k = 1;
        m.sigma_c = {t(tails[i])};
        p.minors.push_back(m);
    }

    CyclicMinor path;  // j -> k -> l -> m on r10..r12
    path.rows_a = {0, 1};
    path.sigma_a = {0, 1};
    path.cols_b = {9, 10, 11};
    path.sigma_b = {0, 1, 2};
    path.k = 4;
    path.sigma_c = {t("j"), t("k"), t("l"), t("m")};
    p.minors.push_back(path);
    return p;
}

// Definitional cyclic convolution, the oracle for the NTT+CRT path.
inline std::vector<Int> naive_cyclic(std::span<const Int> g, std::span<const Int> h,
                                     std::span<const int> radices) {
    std::size_t total = radix_product(radices);
    std::vector<Int> out(total, 0);
    std::vector<int> u(radices.size(), 0);
    std::size_t uf = 0;
    do {
        std::vector<int> w(radices.size(), 0);
        std::size_t wf = 0;
        do {
            std::vector<int> v(radices.size());
            for (std::size_t i = 0; i < radices.size(); ++i)
                v[i] = (u[i] + w[i]) % radices[i];
            out[flatten(v, radices)] += g[uf] * h[wf];
            ++wf;
        } while (next_index(w, radices));
        ++uf;
    } while (next_index(u, radices));
    return out;
}

}  // namespace fconv::testing
