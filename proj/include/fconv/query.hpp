#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "fconv/domain.hpp"

namespace fconv {

using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;

// The four matrices whose product's trace is (g (*)_f h)(v), n even.
// W[w][x] = g(w||x), Y[y][z] = h(z||y); X, Z are the 0/1 constraint matrices
// X[x][y] = [x (+)_f y = v_low], Z[z][w] = [w (+)_f z = v_high].
struct TransitionMatrices {
    IntMatrix w;  // |L|^(n/2) x |L|^(n/2)
    IntMatrix x;  // |L|^(n/2) x |R|^(n/2)
    IntMatrix y;  // |R|^(n/2) x |R|^(n/2)
    IntMatrix z;  // |R|^(n/2) x |L|^(n/2)
};

struct PaddedInstance {
    TensorFunction g;
    TensorFunction h;
    std::vector<int> v;
};

// Odd-n reduction: append one coordinate pinned to (d_l, d_r); the query
// value at v || f(d_l, d_r) is unchanged.
PaddedInstance pad_to_even(const FunctionTable& f, const TensorFunction& g,
                           const TensorFunction& h, std::span<const int> v, int d_l = 0,
                           int d_r = 0);

TransitionMatrices build_transition_matrices(const FunctionTable& f, const TensorFunction& g,
                                             const TensorFunction& h, std::span<const int> v);

struct QueryOptions {
    int pad_l = 0;  // padding element indices used when n is odd
    int pad_r = 0;
};

// (g (*)_f h)(v) = tr(W * X * Y * Z); odd n is padded internally.
Int query(const FunctionTable& f, const TensorFunction& g, const TensorFunction& h,
          std::span<const int> v, const QueryOptions& opts = {});

}  // namespace fconv
