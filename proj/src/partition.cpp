#include "fconv/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace fconv {

long long partition_cost(const CyclicPartition& p) {
    long long c = 0;
    for (const auto& m : p.minors) c += m.k;
    return c;
}

namespace {

std::string cell_name(const FunctionTable& f, int a, int b) {
    return "(" + f.dom_l.label(a) + "," + f.dom_r.label(b) + ")";
}

}  // namespace

std::vector<std::string> validate_minor(const FunctionTable& f, const CyclicMinor& m,
                                        int minor_index) {
    std::vector<std::string> out;
    std::string tag = minor_index >= 0 ? "minor " + std::to_string(minor_index) + ": " : "";
    auto bad = [&](const std::string& msg) { out.push_back(tag + msg); };

    if (m.rows_a.empty()) bad("A is empty");
    if (m.cols_b.empty()) bad("B is empty");
    if (m.k < 1) bad("k must be >= 1");
    if (m.sigma_a.size() != m.rows_a.size()) bad("sigmaA size differs from |A|");
    if (m.sigma_b.size() != m.cols_b.size()) bad("sigmaB size differs from |B|");
    if (static_cast<int>(m.sigma_c.size()) != m.k) bad("sigmaC size differs from k");
    if (!out.empty()) return out;

    for (std::size_t i = 0; i < m.rows_a.size(); ++i) {
        if (m.rows_a[i] < 0 || m.rows_a[i] >= f.dom_l.size()) bad("A element outside L");
        if (i > 0 && m.rows_a[i] <= m.rows_a[i - 1]) bad("A must be ascending and distinct");
        if (m.sigma_a[i] < 0 || m.sigma_a[i] >= m.k) bad("sigmaA value outside Z_k");
    }
    for (std::size_t i = 0; i < m.cols_b.size(); ++i) {
        if (m.cols_b[i] < 0 || m.cols_b[i] >= f.dom_r.size()) bad("B element outside R");
        if (i > 0 && m.cols_b[i] <= m.cols_b[i - 1]) bad("B must be ascending and distinct");
        if (m.sigma_b[i] < 0 || m.sigma_b[i] >= m.k) bad("sigmaB value outside Z_k");
    }
    for (int c : m.sigma_c)
        if (c < 0 || c >= f.dom_t.size()) bad("sigmaC value outside T");
    if (!out.empty()) return out;

    for (std::size_t i = 0; i < m.rows_a.size(); ++i) {
        for (std::size_t j = 0; j < m.cols_b.size(); ++j) {
            int a = m.rows_a[i], b = m.cols_b[j];
            int expect = m.sigma_c[(m.sigma_a[i] + m.sigma_b[j]) % m.k];
            if (f(a, b) != expect) {
                bad("k-cyclic identity fails at " + cell_name(f, a, b) + ": f=" +
                    f.dom_t.label(f(a, b)) + " relabeling gives " + f.dom_t.label(expect));
            }
        }
    }
    return out;
}

std::vector<std::string> validate_partition(const FunctionTable& f, const CyclicPartition& p) {
    std::vector<std::string> out;
    std::vector<int> cover(f.table.size(), 0);
    for (std::size_t i = 0; i < p.minors.size(); ++i) {
        auto mv = validate_minor(f, p.minors[i], static_cast<int>(i));
        out.insert(out.end(), mv.begin(), mv.end());
        for (int a : p.minors[i].rows_a)
            for (int b : p.minors[i].cols_b)
                if (a >= 0 && a < f.dom_l.size() && b >= 0 && b < f.dom_r.size())
                    ++cover[static_cast<std::size_t>(a) * f.dom_r.size() + b];
    }
    for (int a = 0; a < f.dom_l.size(); ++a) {
        for (int b = 0; b < f.dom_r.size(); ++b) {
            int c = cover[static_cast<std::size_t>(a) * f.dom_r.size() + b];
            if (c == 0) out.push_back("uncovered cell " + cell_name(f, a, b));
            if (c > 1)
                out.push_back("duplicate cover at " + cell_name(f, a, b) + " (" +
                              std::to_string(c) + " minors)");
        }
    }
    return out;
}

RepresentationGraph build_representation_graph(const FunctionTable& f, int ell0, int ell1,
                                               std::span<const int> r_sub) {
    if (ell0 == ell1) throw std::invalid_argument("row pair must be distinct");
    if (ell0 < 0 || ell0 >= f.dom_l.size() || ell1 < 0 || ell1 >= f.dom_l.size())
        throw std::invalid_argument("row index outside L");
    if (r_sub.empty()) throw std::invalid_argument("R subset must be non-empty");

    RepresentationGraph g;
    g.ell0 = ell0;
    g.ell1 = ell1;
    std::map<std::pair<int, int>, std::vector<int>> edges;
    std::set<int> verts;
    for (int r : r_sub) {
        if (r < 0 || r >= f.dom_r.size()) throw std::invalid_argument("column index outside R");
        int t0 = f(ell0, r);
        int t1 = f(ell1, r);
        edges[{t0, t1}].push_back(r);
        verts.insert(t0);
        verts.insert(t1);
    }
    g.vertices.assign(verts.begin(), verts.end());
    for (auto& [key, pre] : edges) {
        std::sort(pre.begin(), pre.end());
        g.edges.push_back({key.first, key.second, std::move(pre)});
    }
    return g;
}

std::size_t GraphPiece::preimage_count() const {
    std::size_t n = 0;
    for (const auto& e : edges) n += e.preimages.size();
    return n;
}

long long GraphPiece::minor_cost() const {
    switch (kind) {
        case PieceKind::Cycle:
            return static_cast<long long>(edges.size());
        case PieceKind::Path:
            return static_cast<long long>(edges.size()) + 1;
        case PieceKind::SingleEdge:
            return 2;
        case PieceKind::InStar:
        case PieceKind::OutStar:
            return static_cast<long long>(preimage_count()) + 1;
    }
    return 0;
}

namespace {

using Edge = RepresentationGraph::Edge;

// One directed cycle (walk-ordered edge indices), or empty when acyclic.
// Starts DFS from the lowest vertex, neighbors in edge-sort order.
std::vector<std::size_t> find_cycle(const std::vector<Edge>& edges,
                                    const std::vector<bool>& alive) {
    std::map<int, std::vector<std::size_t>> adj;
    std::set<int> verts;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!alive[i]) continue;
        adj[edges[i].tail].push_back(i);
        verts.insert(edges[i].tail);
        verts.insert(edges[i].head);
    }
    std::map<int, int> color;  // 0 white, 1 gray, 2 black
    for (int start : verts) {
        if (color[start] != 0) continue;
        struct Frame {
            int v;
            std::size_t next = 0;
        };
        std::vector<Frame> frames{{start}};
        std::vector<int> vstack{start};
        std::vector<std::size_t> estack;
        color[start] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            const auto& out = adj[f.v];
            if (f.next < out.size()) {
                std::size_t eid = out[f.next++];
                int head = edges[eid].head;
                if (color[head] == 1) {
                    auto it = std::find(vstack.begin(), vstack.end(), head);
                    std::vector<std::size_t> cycle(estack.begin() + (it - vstack.begin()),
                                                   estack.end());
                    cycle.push_back(eid);
                    return cycle;
                }
                if (color[head] == 0) {
                    color[head] = 1;
                    vstack.push_back(head);
                    estack.push_back(eid);
                    frames.push_back({head});
                }
            } else {
                color[f.v] = 2;
                frames.pop_back();
                vstack.pop_back();
                if (!estack.empty()) estack.pop_back();
            }
        }
    }
    return {};
}

std::vector<std::vector<Edge>> weak_components(const std::vector<Edge>& edges) {
    std::map<int, int> rep;
    std::function<int(int)> find = [&](int v) {
        return rep[v] == v ? v : rep[v] = find(rep[v]);
    };
    for (const auto& e : edges) {
        rep.try_emplace(e.tail, e.tail);
        rep.try_emplace(e.head, e.head);
    }
    for (const auto& e : edges) rep[find(e.tail)] = find(e.head);
    std::map<int, std::vector<Edge>> groups;  // keyed by component representative
    for (const auto& e : edges) groups[find(e.tail)].push_back(e);
    std::vector<std::vector<Edge>> out;
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    return out;
}

std::vector<int> edge_vertices(std::span<const Edge> edges) {
    std::set<int> v;
    for (const auto& e : edges) {
        v.insert(e.tail);
        v.insert(e.head);
    }
    return {v.begin(), v.end()};
}

GraphPiece classify_pair(const Edge& e1, const Edge& e2) {
    if (e1.head == e2.tail && e2.head == e1.tail)
        throw std::logic_error("two-cycle in acyclic residual");
    if (e1.head == e2.tail) return {PieceKind::Path, {e1, e2}};
    if (e2.head == e1.tail) return {PieceKind::Path, {e2, e1}};
    if (e1.tail == e2.tail) return {PieceKind::OutStar, {e1, e2}};
    if (e1.head == e2.head) return {PieceKind::InStar, {e1, e2}};
    throw std::logic_error("paired edges share no endpoint");
}

struct BfsTree {
    std::vector<int> order;                  // visit order, order[0] is the root
    std::map<int, int> pos;                  // vertex -> position in order
    std::map<int, int> parent;               // vertex -> parent vertex
    std::map<int, std::size_t> parent_edge;  // vertex -> tree edge id
};

BfsTree bfs_tree(std::span<const Edge> edges, const std::vector<int>& verts) {
    std::map<int, std::vector<std::pair<int, std::size_t>>> adj;  // v -> (other, eid)
    for (std::size_t i = 0; i < edges.size(); ++i) {
        adj[edges[i].tail].push_back({edges[i].head, i});
        adj[edges[i].head].push_back({edges[i].tail, i});
    }
    for (auto& [_, lst] : adj) std::sort(lst.begin(), lst.end());

    BfsTree t;
    std::queue<int> q;
    q.push(verts.front());
    t.pos[verts.front()] = 0;
    t.order.push_back(verts.front());
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (auto [other, eid] : adj[v]) {
            if (t.pos.count(other)) continue;
            t.pos[other] = static_cast<int>(t.order.size());
            t.order.push_back(other);
            t.parent[other] = v;
            t.parent_edge[other] = eid;
            q.push(other);
        }
    }
    if (t.order.size() != verts.size())
        throw std::invalid_argument("edge set is not weakly connected");
    return t;
}

// Pairs an even-sized connected edge set so every pair shares an endpoint:
// bottom-up over the BFS tree, passing at most one unpaired edge rootward.
std::vector<std::pair<std::size_t, std::size_t>> pair_edges_even(std::span<const Edge> edges) {
    auto verts = edge_vertices(edges);
    BfsTree t = bfs_tree(edges, verts);

    std::map<int, std::vector<std::size_t>> pending;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        bool is_tree = false;
        for (int v : {edges[i].tail, edges[i].head}) {
            auto it = t.parent_edge.find(v);
            if (it != t.parent_edge.end() && it->second == i) is_tree = true;
        }
        if (is_tree) continue;  // tree edges are injected when their child is processed
        int later = t.pos[edges[i].tail] > t.pos[edges[i].head] ? edges[i].tail : edges[i].head;
        pending[later].push_back(i);
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t oi = t.order.size(); oi-- > 0;) {
        int v = t.order[oi];
        auto& lst = pending[v];
        std::sort(lst.begin(), lst.end());
        for (std::size_t i = 0; i + 1 < lst.size(); i += 2)
            pairs.push_back({lst[i], lst[i + 1]});
        bool leftover = lst.size() % 2 == 1;
        if (oi == 0) {
            if (leftover) throw std::logic_error("odd edge count reached the root");
            continue;
        }
        std::size_t up = t.parent_edge[v];
        if (leftover) {
            pairs.push_back({lst.back(), up});
        } else {
            pending[t.parent[v]].push_back(up);
        }
    }
    return pairs;
}

}  // namespace

CycleDecomposition decompose_cycles(const RepresentationGraph& g) {
    std::vector<bool> alive(g.edges.size(), true);
    CycleDecomposition out;

    // Loops are constant rectangles; take them first as 1-cycles.
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        if (g.edges[i].tail == g.edges[i].head) {
            out.cycles.push_back({PieceKind::Cycle, {g.edges[i]}});
            alive[i] = false;
        }
    }
    for (;;) {
        auto cyc = find_cycle(g.edges, alive);
        if (cyc.empty()) break;
        GraphPiece piece{PieceKind::Cycle, {}};
        for (std::size_t eid : cyc) {
            piece.edges.push_back(g.edges[eid]);
            alive[eid] = false;
        }
        out.cycles.push_back(std::move(piece));
    }

    out.residual.ell0 = g.ell0;
    out.residual.ell1 = g.ell1;
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (alive[i]) out.residual.edges.push_back(g.edges[i]);
    out.residual.vertices = edge_vertices(out.residual.edges);
    return out;
}

PairDecomposition decompose_pairs(std::span<const Edge> edges) {
    PairDecomposition out;
    if (edges.empty()) return out;

    std::vector<Edge> work(edges.begin(), edges.end());
    auto verts = edge_vertices(work);
    BfsTree t = bfs_tree(work, verts);  // also rejects disconnected input

    if (work.size() % 2 == 1) {
        // Remove one edge at a BFS-tree leaf; this cannot disconnect the rest
        // beyond possibly isolating that leaf.
        int leaf = t.order.back();
        std::size_t remove = t.parent_edge[leaf];
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (i == remove) continue;
            if (work[i].tail == leaf || work[i].head == leaf) {
                remove = i;  // non-tree edge incident to the leaf
                break;
            }
        }
        out.extra = GraphPiece{PieceKind::SingleEdge, {work[remove]}};
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(remove));
    }
    if (work.empty()) return out;

    for (auto [i, j] : pair_edges_even(work)) out.pairs.push_back(classify_pair(work[i], work[j]));
    return out;
}

std::vector<GraphPiece> decompose_outstars(std::span<const Edge> edges) {
    std::map<int, std::vector<Edge>> by_tail;
    for (const auto& e : edges) by_tail[e.tail].push_back(e);
    std::vector<GraphPiece> out;
    for (auto& [_, group] : by_tail) out.push_back({PieceKind::OutStar, std::move(group)});
    return out;
}

std::vector<GraphPiece> decompose_instars(std::span<const Edge> edges) {
    std::map<int, std::vector<Edge>> by_head;
    for (const auto& e : edges) by_head[e.head].push_back(e);
    std::vector<GraphPiece> out;
    for (auto& [_, group] : by_head) out.push_back({PieceKind::InStar, std::move(group)});
    return out;
}

namespace {

CyclicMinor two_row_minor(int ell0, int ell1, int k, std::vector<std::pair<int, int>> cols,
                          std::vector<int> sigma_c) {
    CyclicMinor m;
    // For a loop (k = 1) both rows relabel to 0.
    if (ell0 < ell1) {
        m.rows_a = {ell0, ell1};
        m.sigma_a = {0, 1 % k};
    } else {
        m.rows_a = {ell1, ell0};
        m.sigma_a = {1 % k, 0};
    }
    std::sort(cols.begin(), cols.end());
    for (auto [b, s] : cols) {
        m.cols_b.push_back(b);
        m.sigma_b.push_back(s);
    }
    m.k = k;
    m.sigma_c = std::move(sigma_c);
    return m;
}

CyclicMinor constant_minor(std::vector<int> rows, std::vector<int> cols, int t_value) {
    CyclicMinor m;
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    m.rows_a = std::move(rows);
    m.cols_b = std::move(cols);
    m.sigma_a.assign(m.rows_a.size(), 0);
    m.sigma_b.assign(m.cols_b.size(), 0);
    m.k = 1;
    m.sigma_c = {t_value};
    return m;
}

// Walk vertices t_0..t_q of an edge chain; checks shape.
std::vector<int> walk_vertices(const GraphPiece& piece, bool closed) {
    std::vector<int> t;
    for (std::size_t i = 0; i < piece.edges.size(); ++i) {
        if (i > 0 && piece.edges[i].tail != piece.edges[i - 1].head)
            throw std::logic_error("piece edges do not chain");
        t.push_back(piece.edges[i].tail);
    }
    int last = piece.edges.back().head;
    if (closed) {
        if (last != t.front()) throw std::logic_error("cycle does not close");
    } else {
        t.push_back(last);
    }
    std::set<int> uniq(t.begin(), t.end());
    if (uniq.size() != t.size()) throw std::logic_error("walk revisits a vertex");
    return t;
}

}  // namespace

std::vector<CyclicMinor> piece_to_minors(const GraphPiece& piece, int ell0, int ell1) {
    if (piece.edges.empty()) throw std::logic_error("empty graph piece");
    std::vector<CyclicMinor> out;

    switch (piece.kind) {
        case PieceKind::Cycle: {
            auto t = walk_vertices(piece, /*closed=*/true);
            int k = static_cast<int>(t.size());
            std::vector<std::pair<int, int>> cols;
            for (std::size_t i = 0; i < piece.edges.size(); ++i)
                for (int r : piece.edges[i].preimages) cols.push_back({r, static_cast<int>(i)});
            out.push_back(two_row_minor(ell0, ell1, k, std::move(cols), t));
            break;
        }
        case PieceKind::Path:
        case PieceKind::SingleEdge: {
            auto t = walk_vertices(piece, /*closed=*/false);
            int k = static_cast<int>(t.size());
            std::vector<std::pair<int, int>> cols;
            for (std::size_t i = 0; i < piece.edges.size(); ++i)
                for (int r : piece.edges[i].preimages) cols.push_back({r, static_cast<int>(i)});
            out.push_back(two_row_minor(ell0, ell1, k, std::move(cols), t));
            break;
        }
        case PieceKind::OutStar: {
            int center = piece.edges.front().tail;
            std::vector<int> all;
            for (const auto& e : piece.edges) {
                if (e.tail != center) throw std::logic_error("out-star edges leave two centers");
                all.insert(all.end(), e.preimages.begin(), e.preimages.end());
            }
            out.push_back(constant_minor({ell0}, std::move(all), center));
            for (const auto& e : piece.edges)
                for (int r : e.preimages) out.push_back(constant_minor({ell1}, {r}, e.head));
            break;
        }
        case PieceKind::InStar: {
            int center = piece.edges.front().head;
            std::vector<int> all;
            for (const auto& e : piece.edges) {
                if (e.head != center) throw std::logic_error("in-star edges enter two centers");
                all.insert(all.end(), e.preimages.begin(), e.preimages.end());
            }
            out.push_back(constant_minor({ell1}, std::move(all), center));
            for (const auto& e : piece.edges)
                for (int r : e.preimages) out.push_back(constant_minor({ell0}, {r}, e.tail));
            break;
        }
    }
    return out;
}

namespace {

// When the component is itself a directed path, one Path piece beats any
// pairing (cost |V| versus ~3|E|/2).
std::optional<GraphPiece> as_directed_path(std::span<const Edge> edges) {
    std::map<int, int> indeg, outdeg;
    std::map<int, const Edge*> out_edge;
    for (const auto& e : edges) {
        if (++outdeg[e.tail] > 1 || ++indeg[e.head] > 1) return std::nullopt;
        out_edge[e.tail] = &e;
    }
    auto verts = edge_vertices(edges);
    if (verts.size() != edges.size() + 1) return std::nullopt;
    int source = -1;
    for (int v : verts) {
        if (outdeg[v] == 1 && indeg[v] == 0) {
            if (source >= 0) return std::nullopt;
            source = v;
        }
    }
    if (source < 0) return std::nullopt;
    GraphPiece piece{edges.size() == 1 ? PieceKind::SingleEdge : PieceKind::Path, {}};
    int v = source;
    while (out_edge.count(v)) {
        piece.edges.push_back(*out_edge[v]);
        v = out_edge[v]->head;
    }
    if (piece.edges.size() != edges.size()) return std::nullopt;
    return piece;
}

long long pieces_cost(const std::vector<GraphPiece>& pieces) {
    long long c = 0;
    for (const auto& p : pieces) c += p.minor_cost();
    return c;
}

// Candidate decompositions of one weakly connected acyclic component; the
// cheapest wins. Edge pairs and out-stars carry the Lemma's (4|E|+|V|)/3
// guarantee between them; the in-star and whole-path candidates only ever
// lower the cost.
std::vector<GraphPiece> decompose_acyclic_component(std::span<const Edge> edges) {
    std::vector<std::vector<GraphPiece>> candidates;
    if (auto path = as_directed_path(edges)) candidates.push_back({*path});

    auto paired = decompose_pairs(edges);
    std::vector<GraphPiece> pair_pieces = std::move(paired.pairs);
    if (paired.extra) pair_pieces.push_back(*paired.extra);
    candidates.push_back(std::move(pair_pieces));
    candidates.push_back(decompose_outstars(edges));
    candidates.push_back(decompose_instars(edges));

    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (pieces_cost(candidates[i]) < pieces_cost(candidates[best])) best = i;
    return candidates[best];
}

}  // namespace

TwoRowDecomposition two_row_decompose(const FunctionTable& f, int ell0, int ell1) {
    std::vector<int> all_r(static_cast<std::size_t>(f.dom_r.size()));
    std::iota(all_r.begin(), all_r.end(), 0);

    TwoRowDecomposition d;
    d.graph = build_representation_graph(f, ell0, ell1, all_r);
    auto cyc = decompose_cycles(d.graph);
    d.pieces = std::move(cyc.cycles);
    for (auto& comp : weak_components(cyc.residual.edges)) {
        auto pieces = decompose_acyclic_component(comp);
        d.pieces.insert(d.pieces.end(), pieces.begin(), pieces.end());
    }
    for (const auto& piece : d.pieces) {
        auto minors = piece_to_minors(piece, ell0, ell1);
        d.minors.insert(d.minors.end(), minors.begin(), minors.end());
    }
    for (const auto& m : d.minors) d.cost += m.k;
    return d;
}

CyclicPartition two_row_partition(const FunctionTable& f, int ell0, int ell1) {
    return CyclicPartition{two_row_decompose(f, ell0, ell1).minors};
}

namespace {

CyclicPartition build_direct(const FunctionTable& f, RowPairing pairing) {
    int l = f.dom_l.size();
    CyclicPartition p;

    std::vector<std::pair<int, int>> row_pairs;
    int leftover = -1;
    if (pairing == RowPairing::Sequential || l <= 3) {
        for (int a = 0; a + 1 < l; a += 2) row_pairs.push_back({a, a + 1});
        if (l % 2 == 1) leftover = l - 1;
    } else {
        // Greedy: repeatedly take the cheapest remaining two-row pair.
        std::vector<std::vector<long long>> cost(l, std::vector<long long>(l, 0));
        for (int a = 0; a < l; ++a)
            for (int b = a + 1; b < l; ++b) cost[a][b] = two_row_decompose(f, a, b).cost;
        std::vector<bool> used(l, false);
        for (int round = 0; round < l / 2; ++round) {
            int ba = -1, bb = -1;
            for (int a = 0; a < l; ++a) {
                if (used[a]) continue;
                for (int b = a + 1; b < l; ++b) {
                    if (used[b]) continue;
                    if (ba < 0 || cost[a][b] < cost[ba][bb]) {
                        ba = a;
                        bb = b;
                    }
                }
            }
            used[ba] = used[bb] = true;
            row_pairs.push_back({ba, bb});
        }
        for (int a = 0; a < l; ++a)
            if (!used[a]) leftover = a;
    }

    for (auto [a, b] : row_pairs) {
        auto d = two_row_decompose(f, a, b);
        p.minors.insert(p.minors.end(), d.minors.begin(), d.minors.end());
    }
    if (leftover >= 0) {
        // Singleton row: |R| trivial minors.
        for (int r = 0; r < f.dom_r.size(); ++r) {
            CyclicMinor m;
            m.rows_a = {leftover};
            m.cols_b = {r};
            m.sigma_a = {0};
            m.sigma_b = {0};
            m.k = 1;
            m.sigma_c = {f(leftover, r)};
            p.minors.push_back(m);
        }
    }
    return p;
}

CyclicPartition transpose_partition(const CyclicPartition& p) {
    CyclicPartition out;
    out.minors.reserve(p.minors.size());
    for (const auto& m : p.minors) {
        CyclicMinor t;
        t.rows_a = m.cols_b;
        t.cols_b = m.rows_a;
        t.sigma_a = m.sigma_b;
        t.sigma_b = m.sigma_a;
        t.k = m.k;
        t.sigma_c = m.sigma_c;
        out.minors.push_back(std::move(t));
    }
    return out;
}

}  // namespace

CyclicPartition build_partition(const FunctionTable& f, const BuildOptions& opts) {
    CyclicPartition p;
    switch (opts.swap) {
        case SwapPolicy::Off:
            p = build_direct(f, opts.pairing);
            break;
        case SwapPolicy::On:
            p = transpose_partition(build_direct(f.transposed(), opts.pairing));
            break;
        case SwapPolicy::Auto: {
            CyclicPartition direct = build_direct(f, opts.pairing);
            CyclicPartition swapped = transpose_partition(build_direct(f.transposed(), opts.pairing));
            p = partition_cost(swapped) < partition_cost(direct) ? std::move(swapped)
                                                                 : std::move(direct);
            break;
        }
    }
    auto violations = validate_partition(f, p);
    if (!violations.empty())
        throw std::logic_error("builder produced an invalid partition: " + violations.front());
    return p;
}

long long partition_cost_bound(int l, int r, int t) {
    long long lr = 4ll * r + t;
    if (l % 2 == 0) return l * lr / 6;
    return r + (l - 1) * lr / 6;
}

long long partition_cost_bound(const FunctionTable& f, SwapPolicy swap) {
    long long direct = partition_cost_bound(f.dom_l.size(), f.dom_r.size(), f.dom_t.size());
    long long swapped = partition_cost_bound(f.dom_r.size(), f.dom_l.size(), f.dom_t.size());
    switch (swap) {
        case SwapPolicy::Off:
            return direct;
        case SwapPolicy::On:
            return swapped;
        case SwapPolicy::Auto:
            return std::min(direct, swapped);
    }
    throw std::logic_error("unknown swap policy");
}

}  // namespace fconv
