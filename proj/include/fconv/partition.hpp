#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fconv/domain.hpp"

namespace fconv {

// Rectangle A x B on which f is addition modulo k after relabeling:
// f(a,b) = sigma_c[(sigma_a(a) + sigma_b(b)) mod k].
struct CyclicMinor {
    std::vector<int> rows_a;  // L-indices, ascending
    std::vector<int> cols_b;  // R-indices, ascending
    int k = 1;
    std::vector<int> sigma_a;  // parallel to rows_a, values in [0,k)
    std::vector<int> sigma_b;  // parallel to cols_b
    std::vector<int> sigma_c;  // size k, T-indices
};

struct CyclicPartition {
    std::vector<CyclicMinor> minors;
};

long long partition_cost(const CyclicPartition& p);

// Exact cover of L x R plus the k-cyclic identity on every minor.
// Violations are data, not errors; empty result means valid.
std::vector<std::string> validate_minor(const FunctionTable& f, const CyclicMinor& m,
                                        int minor_index = -1);
std::vector<std::string> validate_partition(const FunctionTable& f, const CyclicPartition& p);

// Directed graph on the T-values of a two-row restriction of f.
// One edge per distinct column image (f(l0,r), f(l1,r)); preimages holds the
// R-indices mapping to that edge.
struct RepresentationGraph {
    int ell0 = 0;
    int ell1 = 1;
    std::vector<int> vertices;  // T-indices present, ascending

    struct Edge {
        int tail = 0;
        int head = 0;
        std::vector<int> preimages;  // ascending R-indices
    };
    std::vector<Edge> edges;  // ascending by (tail, head)
};

RepresentationGraph build_representation_graph(const FunctionTable& f, int ell0, int ell1,
                                               std::span<const int> r_sub);

enum class PieceKind { Cycle, Path, InStar, OutStar, SingleEdge };

// Edge-disjoint fragment of a representation graph; edges keep their
// preimages so minors can be built from the piece alone.
struct GraphPiece {
    PieceKind kind = PieceKind::SingleEdge;
    std::vector<RepresentationGraph::Edge> edges;  // walk order for Cycle/Path

    std::size_t preimage_count() const;
    long long minor_cost() const;  // |V| for cycles/paths, |R'|+1 for stars
};

struct CycleDecomposition {
    std::vector<GraphPiece> cycles;  // loops first, then DFS-found cycles
    RepresentationGraph residual;    // acyclic remainder
};

CycleDecomposition decompose_cycles(const RepresentationGraph& g);

struct PairDecomposition {
    std::vector<GraphPiece> pairs;        // exactly floor(|E|/2) two-edge pieces
    std::optional<GraphPiece> extra;      // present iff |E| odd
};

// Requires a weakly connected acyclic subgraph (edge list). The extra edge,
// when present, is removed first and chosen so the remainder stays weakly
// connected except for possibly one isolated vertex.
PairDecomposition decompose_pairs(std::span<const RepresentationGraph::Edge> edges);

// One OutStar per vertex with out-degree >= 1; at most |V|-1 pieces on a DAG.
std::vector<GraphPiece> decompose_outstars(std::span<const RepresentationGraph::Edge> edges);
// Symmetric grouping by head vertex.
std::vector<GraphPiece> decompose_instars(std::span<const RepresentationGraph::Edge> edges);

// Minors covering {ell0, ell1} x preimages(piece edges). Cost |V| for
// cycles/paths (one k-cyclic minor), |R'|+1 for stars (trivial minors).
std::vector<CyclicMinor> piece_to_minors(const GraphPiece& piece, int ell0, int ell1);

struct TwoRowDecomposition {
    RepresentationGraph graph;
    std::vector<GraphPiece> pieces;
    std::vector<CyclicMinor> minors;
    long long cost = 0;
};

// Cost <= floor((4|R| + |T|)/3).
TwoRowDecomposition two_row_decompose(const FunctionTable& f, int ell0, int ell1);
CyclicPartition two_row_partition(const FunctionTable& f, int ell0, int ell1);

enum class SwapPolicy { Auto, On, Off };
enum class RowPairing { Sequential, Greedy };

struct BuildOptions {
    SwapPolicy swap = SwapPolicy::Auto;
    RowPairing pairing = RowPairing::Sequential;
};

// Whole-table partition from consecutive (or greedily chosen) row pairs;
// odd |L| leaves one singleton row of trivial minors.
CyclicPartition build_partition(const FunctionTable& f, const BuildOptions& opts = {});

// floor of the Lemma bound: |L|/2 * (4|R|+|T|)/3 for even |L|,
// |R| + (|L|-1)/2 * (4|R|+|T|)/3 for odd |L|.
long long partition_cost_bound(int l, int r, int t);
long long partition_cost_bound(const FunctionTable& f, SwapPolicy swap);

}  // namespace fconv
