#include "fconv/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "fconv/cyclicconv.hpp"

namespace fconv {

namespace {

// Desk-scale ceiling on DP buffers and per-type output cells.
constexpr std::size_t kMaxEngineCells = 100'000'000;

std::size_t checked_cells(std::size_t a, std::size_t b) {
    if (b != 0 && a > kMaxEngineCells / b)
        throw std::invalid_argument("instance too large for the in-memory engine");
    return a * b;
}

struct MinorSide {
    int k = 1;
    std::vector<std::pair<int, int>> elems;  // (domain element, sigma value)
};

std::vector<MinorSide> side_maps(const CyclicPartition& p, Side side, int domain_size) {
    std::vector<MinorSide> out;
    out.reserve(p.minors.size());
    for (const auto& m : p.minors) {
        MinorSide s;
        s.k = m.k;
        const auto& elems = side == Side::L ? m.rows_a : m.cols_b;
        const auto& sigma = side == Side::L ? m.sigma_a : m.sigma_b;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (elems[i] < 0 || elems[i] >= domain_size)
                throw std::invalid_argument("partition minor references element outside domain");
            s.elems.push_back({elems[i], sigma[i]});
        }
        out.push_back(std::move(s));
    }
    return out;
}

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FCONV_JOBS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void ProjectionTable::for_each_type(
    const std::function<void(std::span<const int>, std::span<const int>, std::span<const Int>)>&
        fn) const {
    std::vector<int> digits(static_cast<std::size_t>(arity), 0);
    std::vector<int> radices(static_cast<std::size_t>(arity), 0);
    std::vector<int> type_radices(static_cast<std::size_t>(arity), minor_count);
    std::size_t offset = 0;
    do {
        std::size_t size = 1;
        for (int i = 0; i < arity; ++i) {
            radices[static_cast<std::size_t>(i)] = minor_k[static_cast<std::size_t>(digits[i])];
            size *= static_cast<std::size_t>(radices[static_cast<std::size_t>(i)]);
        }
        fn(digits, radices, std::span<const Int>(data.data() + offset, size));
        offset += size;
    } while (next_index(digits, type_radices));
}

ProjectionTable project_all(const TensorFunction& g, const CyclicPartition& p, Side side) {
    int n = g.arity;
    int m = static_cast<int>(p.minors.size());
    if (m == 0 && n > 0) throw std::invalid_argument("partition has no minors");
    std::size_t s = static_cast<std::size_t>(g.domain.size());

    auto sides = side_maps(p, side, g.domain.size());

    ProjectionTable table;
    table.minor_count = m;
    table.arity = n;
    for (const auto& ms : sides) table.minor_k.push_back(ms.k);
    table.layer_states.assign(static_cast<std::size_t>(n) + 1, 0);
    table.layer_states[0] = g.values.size();

    // DP over layers: at layer l the buffer holds, for every type prefix in
    // lexicographic order, a dense tensor over Z-prefix x S^(n-l). Only two
    // layers are alive at a time; each new state costs O(max |A_i|) adds.
    std::vector<Int> cur = g.values;
    std::size_t suffix = g.values.size();  // s^(n-l+1) entering layer l

    std::vector<int> prefix(static_cast<std::size_t>(n), 0);
    std::vector<int> prefix_radices(static_cast<std::size_t>(n), std::max(m, 1));

    for (int layer = 1; layer <= n; ++layer) {
        suffix /= s;  // s^(n-layer)
        std::size_t z_total = 0;
        {
            // New buffer size = sum over prefixes of Kpre * k_i * suffix.
            std::size_t kpre_sum = cur.size() / (s * suffix);  // = cost^(layer-1)
            std::size_t ksum = 0;
            for (const auto& ms : sides) ksum += static_cast<std::size_t>(ms.k);
            z_total = checked_cells(checked_cells(kpre_sum, ksum), suffix);
        }
        std::vector<Int> next(z_total, 0);

        std::span<int> pfx(prefix.data(), static_cast<std::size_t>(layer - 1));
        std::span<const int> pfx_rad(prefix_radices.data(), static_cast<std::size_t>(layer - 1));
        std::fill(pfx.begin(), pfx.end(), 0);

        std::size_t old_off = 0, new_off = 0;
        do {
            std::size_t kpre = 1;
            for (int d : pfx) kpre *= static_cast<std::size_t>(sides[static_cast<std::size_t>(d)].k);
            const Int* src = cur.data() + old_off;
            for (const auto& ms : sides) {
                std::size_t k = static_cast<std::size_t>(ms.k);
                Int* dst = next.data() + new_off;
                for (std::size_t zp = 0; zp < kpre; ++zp) {
                    for (auto [t, q] : ms.elems) {
                        const Int* from = src + (zp * s + static_cast<std::size_t>(t)) * suffix;
                        Int* to = dst + (zp * k + static_cast<std::size_t>(q)) * suffix;
                        for (std::size_t i = 0; i < suffix; ++i) to[i] += from[i];
                    }
                }
                new_off += kpre * k * suffix;
            }
            old_off += kpre * s * suffix;
        } while (next_index(pfx, pfx_rad));

        cur = std::move(next);
        table.layer_states[static_cast<std::size_t>(layer)] = cur.size();
    }

    table.data = std::move(cur);
    return table;
}

Int work_count(const CyclicPartition& p, int arity) {
    if (arity < 0) throw std::invalid_argument("arity must be non-negative");
    // Layered form of sum over [m]^n of prod k: S_l = sum_i k_i * S_(l-1).
    i128 cur = 1;
    for (int layer = 0; layer < arity; ++layer) {
        i128 next = 0;
        for (const auto& m : p.minors) next += i128(m.k) * cur;
        if (next > i128(std::numeric_limits<Int>::max()))
            throw std::overflow_error("work count exceeds 64-bit integer capacity");
        cur = next;
    }
    return static_cast<Int>(cur);
}

namespace {

struct TypeTask {
    std::vector<int> digits;
    std::vector<int> radices;
    std::size_t offset = 0;
    std::size_t size = 0;
    Int bound = 0;
    bool skipped = false;
    std::vector<Int> result;
};

}  // namespace

TensorFunction convolve(const FunctionTable& f, const CyclicPartition& p,
                        const TensorFunction& g, const TensorFunction& h,
                        const ConvolveOptions& opts, WorkStats* stats) {
    auto violations = validate_partition(f, p);
    if (!violations.empty())
        throw std::invalid_argument("invalid cyclic partition: " + violations.front());
    if (!(g.domain == f.dom_l)) throw std::invalid_argument("g is not over L^n");
    if (!(h.domain == f.dom_r)) throw std::invalid_argument("h is not over R^n");
    if (g.arity != h.arity) throw std::invalid_argument("arity mismatch between g and h");
    convolution_output_bound(f, g, h);

    int n = g.arity;
    int m = static_cast<int>(p.minors.size());
    Int total_work = work_count(p, n);
    if (static_cast<std::size_t>(total_work) > kMaxEngineCells)
        throw std::invalid_argument("instance too large for the in-memory engine");

    ProjectionTable proj_l = project_all(g, p, Side::L);
    ProjectionTable proj_r = project_all(h, p, Side::R);

    TensorFunction out = TensorFunction::zeros(f.dom_t, n);

    if (stats) {
        *stats = WorkStats{};
        stats->per_type_work = total_work;
        stats->layer_states_l = proj_l.layer_states;
        stats->layer_states_r = proj_r.layer_states;
    }

    // Enumerate types lazily in lex order; convolve chunks in parallel and
    // scatter serially in the same order, so results are schedule-independent.
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    std::vector<int> type_radices(static_cast<std::size_t>(n), std::max(m, 1));
    std::size_t offset = 0;
    bool more = true;
    int jobs = resolve_jobs(opts.jobs);
    constexpr std::size_t kChunk = 256;

    std::vector<int> sigma_digits(static_cast<std::size_t>(n), 0);

    while (more) {
        std::vector<TypeTask> chunk;
        while (more && chunk.size() < kChunk) {
            TypeTask task;
            task.digits = digits;
            task.radices.resize(static_cast<std::size_t>(n));
            std::size_t size = 1;
            Int la = 1, rb = 1;
            for (int i = 0; i < n; ++i) {
                const auto& minor = p.minors[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)])];
                task.radices[static_cast<std::size_t>(i)] = minor.k;
                size *= static_cast<std::size_t>(minor.k);
                la *= static_cast<Int>(minor.rows_a.size());
                rb *= static_cast<Int>(minor.cols_b.size());
            }
            task.offset = offset;
            task.size = size;
            // Per-type output magnitude: |L_p| * |R_p| * Mg * Mh.
            task.bound = la * rb * std::max<Int>(g.max_abs, 1) * std::max<Int>(h.max_abs, 1);
            offset += size;
            chunk.push_back(std::move(task));
            if (stats) ++stats->types_total;
            more = next_index(digits, type_radices);
        }

        auto run = [&](TypeTask& task) {
            std::span<const Int> gp(proj_l.data.data() + task.offset, task.size);
            std::span<const Int> hp(proj_r.data.data() + task.offset, task.size);
            if (opts.skip_zero_types) {
                auto zero = [](std::span<const Int> v) {
                    return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
                };
                if (zero(gp) || zero(hp)) {
                    task.skipped = true;
                    return;
                }
            }
            task.result = cyclic_convolve(gp, hp, task.radices, task.bound);
        };

        if (jobs <= 1 || chunk.size() <= 1) {
            for (auto& task : chunk) run(task);
        } else {
            std::atomic<std::size_t> cursor{0};
            auto worker = [&]() {
                for (;;) {
                    std::size_t i = cursor.fetch_add(1);
                    if (i >= chunk.size()) return;
                    run(chunk[i]);
                }
            };
            std::vector<std::thread> pool;
            int nthreads = std::min<int>(jobs, static_cast<int>(chunk.size()));
            pool.reserve(static_cast<std::size_t>(nthreads));
            for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }

        for (auto& task : chunk) {
            if (task.skipped) {
                if (stats) ++stats->types_skipped;
                continue;
            }
            if (opts.type_sink) opts.type_sink(task.digits, task.radices, task.result);
            // Scatter-add through sigma_T.
            std::fill(sigma_digits.begin(), sigma_digits.end(), 0);
            std::size_t cell = 0;
            do {
                std::size_t out_flat = 0;
                for (int i = 0; i < n; ++i) {
                    const auto& minor = p.minors[static_cast<std::size_t>(task.digits[static_cast<std::size_t>(i)])];
                    int tv = minor.sigma_c[static_cast<std::size_t>(sigma_digits[static_cast<std::size_t>(i)])];
                    out_flat = out_flat * static_cast<std::size_t>(f.dom_t.size()) +
                               static_cast<std::size_t>(tv);
                }
                out.values[out_flat] += task.result[cell];
                ++cell;
            } while (next_index(sigma_digits, task.radices));
        }
    }

    Int max_abs = 0;
    for (Int v : out.values) max_abs = std::max(max_abs, std::abs(v));
    out.max_abs = max_abs;
    return out;
}

TensorFunction convolve(const FunctionTable& f, const TensorFunction& g, const TensorFunction& h,
                        const ConvolveOptions& opts, WorkStats* stats) {
    return convolve(f, build_partition(f), g, h, opts, stats);
}

}  // namespace fconv
