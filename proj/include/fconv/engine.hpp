#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fconv/domain.hpp"
#include "fconv/partition.hpp"

namespace fconv {

enum class Side { L, R };

// All projections g_p for p in [m]^n, laid out as one flat buffer of tensors
// in lexicographic type order (coordinate 1 most significant, base m). The
// tensor for type p has size prod_i k_{p_i}; offsets are implicit, so reads
// go through for_each_type.
struct ProjectionTable {
    int minor_count = 0;
    int arity = 0;
    std::vector<int> minor_k;           // k_i per minor
    std::vector<Int> data;              // concatenated tensors, lex type order
    std::vector<std::size_t> layer_states;  // DP states per layer 0..n

    // fn(type digits, tensor radices, tensor values)
    void for_each_type(
        const std::function<void(std::span<const int>, std::span<const int>,
                                 std::span<const Int>)>& fn) const;
};

ProjectionTable project_all(const TensorFunction& g, const CyclicPartition& p, Side side);

struct ConvolveOptions {
    int jobs = 0;                // 0: FCONV_JOBS or hardware concurrency
    bool skip_zero_types = true;
    // Optional per-type contribution tap, called in lex type order with
    // (type digits, radices, cyclic-convolution values) for every
    // non-skipped type.
    std::function<void(std::span<const int>, std::span<const int>, std::span<const Int>)>
        type_sink;
};

struct WorkStats {
    std::size_t types_total = 0;
    std::size_t types_skipped = 0;
    Int per_type_work = 0;  // sum over all types of prod k = cost(P)^n
    std::vector<std::size_t> layer_states_l;
    std::vector<std::size_t> layer_states_r;
};

// Full f-convolution through the cyclic partition: project both sides, run
// one exact cyclic convolution per type, scatter-add through sigma_T.
TensorFunction convolve(const FunctionTable& f, const CyclicPartition& p,
                        const TensorFunction& g, const TensorFunction& h,
                        const ConvolveOptions& opts = {}, WorkStats* stats = nullptr);

// Convenience: build the partition, then convolve.
TensorFunction convolve(const FunctionTable& f, const TensorFunction& g,
                        const TensorFunction& h, const ConvolveOptions& opts = {},
                        WorkStats* stats = nullptr);

// Sum over types in [m]^n of prod_i k_{p_i}; equals cost(P)^n.
Int work_count(const CyclicPartition& p, int arity);

}  // namespace fconv
