#pragma once

// Cycle spaces of components over GF(2) and the monodromy of the covering.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dsg/graph.hpp"
#include "dsg/notation.hpp"
#include "dsg/parallel.hpp"

namespace dsg {

/// A row vector over GF(2).
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : words_((bits + 63) / 64, 0), bits_(bits) {}

  std::size_t size() const { return bits_; }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  BitRow& operator^=(const BitRow& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  bool operator==(const BitRow&) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t bits_ = 0;
};

/// Reduces rows to row canonical form in place (pivots ascending, each pivot
/// column cleared in every other row) and drops zero rows. Returns the rank.
inline std::size_t row_canonical_form(std::vector<BitRow>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].test(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].test(col)) rows[r] ^= rows[rank];
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

/// A closed walk anchored at `base`.
struct Walk {
  int base = 0;
  std::vector<DirectedEdge> edges;

  std::vector<int> vertices() const {
    std::vector<int> out{base};
    for (const auto& e : edges) out.push_back(e.dst);
    return out;
  }
};

/// Breadth-first spanning tree of a component. Neighbours are visited in
/// ascending (vertex, relation) order.
class SpanningTree {
 public:
  SpanningTree(const QuotientGraph& g, const Component& c, int root) : root_(root) {
    if (!c.contains(root)) throw std::invalid_argument("root is not a vertex of the component");
    std::deque<int> queue{root};
    parent_edge_.emplace(root, DirectedEdge{});
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const auto& e : g.out_edges(v)) {
        if (parent_edge_.count(e.dst)) continue;
        parent_edge_.emplace(e.dst, e);
        tree_relations_.insert(e.relation);
        queue.push_back(e.dst);
      }
    }
    if (parent_edge_.size() != c.vertices.size()) throw std::logic_error("component is not connected");
  }

  int root() const { return root_; }
  bool is_tree_relation(int relation) const { return tree_relations_.count(relation) > 0; }

  /// Tree path from the root to v.
  std::vector<DirectedEdge> path_from_root(int v) const {
    std::vector<DirectedEdge> out;
    while (v != root_) {
      const auto& e = parent_edge_.at(v);
      out.push_back(e);
      v = e.src;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// Tree path from v back to the root.
  std::vector<DirectedEdge> path_to_root(int v) const {
    auto out = path_from_root(v);
    std::reverse(out.begin(), out.end());
    for (auto& e : out) e = QuotientGraph::reversed(e);
    return out;
  }

 private:
  int root_;
  std::unordered_map<int, DirectedEdge> parent_edge_;
  std::unordered_set<int> tree_relations_;
};

struct CycleBasis {
  int component = 0;
  int root = 0;
  std::vector<int> edge_order;  // relation ids, ascending
  std::vector<BitRow> rows;
  std::vector<Walk> walks;

  std::size_t rank() const { return rows.size(); }
};

namespace detail {

inline std::size_t edge_column(const std::vector<int>& edge_order, int relation) {
  auto it = std::lower_bound(edge_order.begin(), edge_order.end(), relation);
  if (it == edge_order.end() || *it != relation) throw std::invalid_argument("edge is not in the component");
  return static_cast<std::size_t>(it - edge_order.begin());
}

inline BitRow walk_bits(const std::vector<int>& edge_order, const Walk& w) {
  BitRow row(edge_order.size());
  for (const auto& e : w.edges) row.flip(edge_column(edge_order, e.relation));
  return row;
}

}  // namespace detail

/// Fundamental cycles of the BFS spanning tree rooted at `root` (the minimal
/// vertex by default): one per non-tree edge pair, anchored at the root.
inline CycleBasis fundamental_cycle_basis(const QuotientGraph& g, const Component& c, std::optional<int> root = {}) {
  const SpanningTree tree(g, c, root.value_or(c.min_vertex()));
  CycleBasis b;
  b.component = c.id;
  b.root = tree.root();
  b.edge_order = c.relations;
  for (int k : c.relations) {
    if (tree.is_tree_relation(k)) continue;
    const DirectedEdge e = g.edge(k, true);
    Walk w{tree.root(), tree.path_from_root(e.src)};
    w.edges.push_back(e);
    for (const auto& back : tree.path_to_root(e.dst)) w.edges.push_back(back);
    b.rows.push_back(detail::walk_bits(b.edge_order, w));
    b.walks.push_back(std::move(w));
  }
  return b;
}

/// Turns an edge set in which every vertex has even degree into one closed
/// walk at the tree root: each connected piece is traversed as an Euler
/// circuit from its smallest vertex, reached and left along tree paths.
inline Walk closed_walk_from_edges(const QuotientGraph& g, const SpanningTree& tree, const std::vector<int>& relations) {
  std::unordered_map<int, std::vector<DirectedEdge>> adj;
  for (int k : relations) {
    const auto f = g.edge(k, true);
    adj[f.src].push_back(f);
    adj[f.dst].push_back(QuotientGraph::reversed(f));
  }
  std::vector<int> order;
  for (auto& [v, list] : adj) {
    if (list.size() % 2 != 0) throw std::invalid_argument("edge set is not a cycle");
    std::sort(list.begin(), list.end());
    order.push_back(v);
  }
  std::sort(order.begin(), order.end());
  std::unordered_set<int> used;
  std::unordered_map<int, std::size_t> next;
  Walk walk{tree.root(), {}};
  for (int start : order) {
    const auto& list = adj[start];
    if (std::all_of(list.begin(), list.end(), [&](const DirectedEdge& e) { return used.count(e.relation) > 0; })) continue;
    std::vector<DirectedEdge> circuit;
    std::vector<std::pair<int, std::optional<DirectedEdge>>> stack{{start, std::nullopt}};
    while (!stack.empty()) {
      const int v = stack.back().first;
      auto& i = next[v];
      const auto& out = adj[v];
      while (i < out.size() && used.count(out[i].relation)) ++i;
      if (i < out.size()) {
        const DirectedEdge e = out[i];
        used.insert(e.relation);
        stack.emplace_back(e.dst, e);
      } else {
        if (stack.back().second) circuit.push_back(*stack.back().second);
        stack.pop_back();
      }
    }
    std::reverse(circuit.begin(), circuit.end());
    for (const auto& e : tree.path_from_root(start)) walk.edges.push_back(e);
    for (const auto& e : circuit) walk.edges.push_back(e);
    for (const auto& e : tree.path_to_root(start)) walk.edges.push_back(e);
  }
  return walk;
}

/// Row canonical form of the cycle-edge incidence matrix under the
/// component's edge order, each row re-anchored as a closed walk at the root.
inline CycleBasis canonical_cycle_basis(const QuotientGraph& g, const Component& c, const CycleBasis& b) {
  CycleBasis out;
  out.component = b.component;
  out.root = b.root;
  out.edge_order = b.edge_order;
  out.rows = b.rows;
  row_canonical_form(out.rows);
  const SpanningTree tree(g, c, b.root);
  for (const auto& row : out.rows) {
    std::vector<int> relations;
    for (auto col : row.ones()) relations.push_back(out.edge_order[col]);
    out.walks.push_back(closed_walk_from_edges(g, tree, relations));
  }
  return out;
}

/// Product of the edge labels around a closed walk.
inline Permutation cycle_permutation(const QuotientGraph& g, const Walk& w) {
  if (!w.edges.empty() && (w.edges.front().src != w.base || w.edges.back().dst != w.base))
    throw std::invalid_argument("walk is not closed at its base");
  return lift_path(g, w.edges, identity_monomial(g.shape(w.base))).total;
}

/// Order of the group generated by the permutations, by closure. Throws
/// once more than `cap` elements have been found.
inline std::size_t group_order(const std::vector<Permutation>& generators, std::size_t degree, std::size_t cap = 1'000'000) {
  std::unordered_set<Permutation, PermutationHash> seen{Permutation(degree)};
  std::deque<Permutation> frontier{Permutation(degree)};
  while (!frontier.empty()) {
    const Permutation x = frontier.front();
    frontier.pop_front();
    for (const auto& gen : generators) {
      Permutation y = compose(x, gen);
      if (seen.insert(y).second) {
        if (seen.size() > cap) throw std::runtime_error("group order exceeds cap");
        frontier.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

struct MonodromyReport {
  int component = 0;
  int base = 0;
  std::vector<Permutation> generators;
  std::size_t order = 1;
  bool nontrivial = false;
  std::optional<Permutation> sample;
};

/// Monodromy group at `base` (minimal vertex by default), generated by the
/// fundamental cycles of the spanning tree rooted there.
inline MonodromyReport monodromy_group(const QuotientGraph& g, const Component& c, std::optional<int> base = {}) {
  const CycleBasis b = fundamental_cycle_basis(g, c, base);
  MonodromyReport r;
  r.component = c.id;
  r.base = b.root;
  for (const auto& w : b.walks) r.generators.push_back(cycle_permutation(g, w));
  r.order = group_order(r.generators, static_cast<std::size_t>(g.degree()));
  for (const auto& p : r.generators) {
    if (!p.is_identity()) {
      r.nontrivial = true;
      r.sample = p;
      break;
    }
  }
  return r;
}

/// Monodromy reports for all components, in component order.
inline std::vector<MonodromyReport> analyze_components(const QuotientGraph& g, const std::vector<Component>& components,
                                                       unsigned workers = 1) {
  return parallel_map<MonodromyReport>(components.size(), workers,
                                       [&](std::size_t i) { return monodromy_group(g, components[i]); });
}

struct NontrivialComponent {
  int id = 0;
  int vertices = 0;
  int edges = 0;
  int rank = 0;
  int min_vertex = 0;
  std::string min_type;
  std::size_t group_order = 1;
};

inline std::vector<NontrivialComponent> find_nontrivial_components(const QuotientGraph& g,
                                                                   const std::vector<Component>& components,
                                                                   const std::vector<MonodromyReport>& reports) {
  std::vector<NontrivialComponent> out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!reports.at(i).nontrivial) continue;
    const auto& c = components[i];
    out.push_back({c.id, c.vertex_count(), c.edge_count(), c.circuit_rank(), c.min_vertex(),
                   to_string(g.shape(c.min_vertex())), reports[i].order});
  }
  return out;
}

inline std::vector<NontrivialComponent> find_nontrivial_components(const QuotientGraph& g, unsigned workers = 1) {
  const auto components = connected_components(g);
  return find_nontrivial_components(g, components, analyze_components(g, components, workers));
}

}  // namespace dsg
