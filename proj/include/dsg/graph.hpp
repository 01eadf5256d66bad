#pragma once

// The quotient graph G(n): association types joined by single applications
// of the interchange relation, each edge labelled by a position permutation.
// Monomials over a type form the fibre of the covering F(n) -> G(n); paths
// lift uniquely by composing labels, so F(n) itself is never built.

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsg/rewrite.hpp"
#include "dsg/shape_table.hpp"

namespace dsg {

/// One direction of an edge pair. `relation` is the 0-based position in the
/// sorted relation list; `forward` means from the relation's left type to its right.
struct DirectedEdge {
  int src = 0;
  int dst = 0;
  int relation = 0;
  bool forward = true;

  auto operator<=>(const DirectedEdge&) const = default;
  bool operator==(const DirectedEdge&) const = default;
};

class QuotientGraph {
 public:
  QuotientGraph() = default;

  QuotientGraph(ShapeTable table, std::vector<RelationRecord> relations)
      : table_(std::move(table)), relations_(std::move(relations)) {
    adjacency_.resize(table_.size() + 1);
    inverses_.reserve(relations_.size());
    for (std::size_t k = 0; k < relations_.size(); ++k) {
      const auto& rel = relations_[k].relation;
      if (rel.left < 1 || rel.right < 1 || static_cast<std::size_t>(rel.right) > table_.size() || rel.left > rel.right)
        throw std::invalid_argument("relation endpoints out of range");
      const int id = static_cast<int>(k);
      adjacency_[static_cast<std::size_t>(rel.left)].push_back({rel.left, rel.right, id, true});
      adjacency_[static_cast<std::size_t>(rel.right)].push_back({rel.right, rel.left, id, false});
      inverses_.push_back(rel.sigma.inverse());
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  }

  int degree() const { return table_.degree(); }
  const ShapeTable& shapes() const { return table_; }
  const Shape& shape(int vertex) const { return table_.at(vertex); }
  int vertex_count() const { return static_cast<int>(table_.size()); }
  int edge_pair_count() const { return static_cast<int>(relations_.size()); }
  const std::vector<RelationRecord>& relations() const { return relations_; }

  /// Outgoing edges sorted by (target, relation, direction).
  std::span<const DirectedEdge> out_edges(int vertex) const { return adjacency_.at(static_cast<std::size_t>(vertex)); }

  const Permutation& label(const DirectedEdge& e) const {
    const auto k = static_cast<std::size_t>(e.relation);
    return e.forward ? relations_.at(k).relation.sigma : inverses_.at(k);
  }

  /// Redex on the source type that realizes the edge.
  const Redex& redex(const DirectedEdge& e) const {
    const auto& rec = relations_.at(static_cast<std::size_t>(e.relation));
    return e.forward ? rec.left_redex : rec.right_redex;
  }

  static DirectedEdge reversed(const DirectedEdge& e) { return {e.dst, e.src, e.relation, !e.forward}; }

  DirectedEdge edge(int relation, bool forward) const {
    const auto& rel = relations_.at(static_cast<std::size_t>(relation)).relation;
    return forward ? DirectedEdge{rel.left, rel.right, relation, true} : DirectedEdge{rel.right, rel.left, relation, false};
  }

  bool operator==(const QuotientGraph& o) const {
    if (degree() != o.degree() || relations_.size() != o.relations_.size()) return false;
    for (std::size_t k = 0; k < relations_.size(); ++k) {
      const auto& a = relations_[k];
      const auto& b = o.relations_[k];
      if (a.relation != b.relation || a.left_redex != b.left_redex || a.right_redex != b.right_redex) return false;
    }
    return true;
  }

 private:
  ShapeTable table_;
  std::vector<RelationRecord> relations_;
  std::vector<Permutation> inverses_;
  std::vector<std::vector<DirectedEdge>> adjacency_;
};

inline QuotientGraph build_quotient_graph(int degree, unsigned workers = 1) {
  if (degree < 1) throw std::invalid_argument("degree must be at least 1");
  ShapeTable table(degree);
  auto records = degree >= 2 ? generate_relation_records(table, workers) : std::vector<RelationRecord>{};
  return QuotientGraph(std::move(table), std::move(records));
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// A connected piece of G(n) with at least one edge.
struct Component {
  int id = 0;
  std::vector<int> vertices;   // ascending
  std::vector<int> relations;  // ascending (min endpoint, max endpoint, relation id)

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(relations.size()); }
  int circuit_rank() const { return edge_count() - vertex_count() + 1; }
  int min_vertex() const { return vertices.front(); }
  bool contains(int v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
};

/// Components sorted by vertex count, then by minimal vertex; ids from 1.
inline std::vector<Component> connected_components(const QuotientGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  DisjointSets sets(n + 1);
  for (const auto& rec : g.relations())
    sets.unite(static_cast<std::size_t>(rec.relation.left), static_cast<std::size_t>(rec.relation.right));
  std::map<std::size_t, Component> by_root;
  for (std::size_t v = 1; v <= n; ++v)
    if (!g.out_edges(static_cast<int>(v)).empty()) by_root[sets.find(v)].vertices.push_back(static_cast<int>(v));
  for (std::size_t k = 0; k < g.relations().size(); ++k)
    by_root[sets.find(static_cast<std::size_t>(g.relations()[k].relation.left))].relations.push_back(static_cast<int>(k));
  std::vector<Component> out;
  out.reserve(by_root.size());
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Component& a, const Component& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices.front() < b.vertices.front();
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i) + 1;
  return out;
}

inline int isolated_vertex_count(const QuotientGraph& g) {
  int count = 0;
  for (int v = 1; v <= g.vertex_count(); ++v)
    if (g.out_edges(v).empty()) ++count;
  return count;
}

/// Distinct monomials in the free double semigroup on one generator:
/// isolated types plus components.
inline int count_free_monomials(const QuotientGraph& g) {
  return isolated_vertex_count(g) + static_cast<int>(connected_components(g).size());
}

struct ComponentSummary {
  int isolated = 0;
  std::map<int, int> by_size;  // vertex count -> components
  std::map<int, int> by_rank;  // circuit rank -> components
};

inline ComponentSummary component_summary(const QuotientGraph& g, const std::vector<Component>& components) {
  ComponentSummary s;
  s.isolated = isolated_vertex_count(g);
  for (const auto& c : components) {
    ++s.by_size[c.vertex_count()];
    ++s.by_rank[c.circuit_rank()];
  }
  return s;
}

inline ComponentSummary component_summary(const QuotientGraph& g) { return component_summary(g, connected_components(g)); }

struct Lift {
  Monomial end;
  Permutation total;
};

/// Lifts a directed walk to the covering: the labels are composed in walk
/// order and the end monomial is the final type decorated by start∘total.
inline Lift lift_path(const QuotientGraph& g, std::span<const DirectedEdge> path, const Monomial& start) {
  const int n = g.degree();
  if (start.degree() != n) throw std::invalid_argument("start monomial has the wrong degree");
  Permutation total(static_cast<std::size_t>(n));
  if (path.empty()) return {start, total};
  if (!(g.shape(path.front().src) == start.shape)) throw std::invalid_argument("walk does not start at the monomial's type");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0 && path[i].src != path[i - 1].dst) throw std::invalid_argument("consecutive edges are not incident");
    total = compose(total, g.label(path[i]));
  }
  return {Monomial{g.shape(path.back().dst), compose(start.decoration, total)}, total};
}

/// The unique directed edges joining consecutive vertices. Throws when a
/// step has no edge or more than one.
inline std::vector<DirectedEdge> walk_from_vertices(const QuotientGraph& g, std::span<const int> vertices) {
  std::vector<DirectedEdge> out;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const DirectedEdge* found = nullptr;
    for (const auto& e : g.out_edges(vertices[i])) {
      if (e.dst != vertices[i + 1]) continue;
      if (found) throw std::invalid_argument("several edges join " + std::to_string(vertices[i]) + " and " + std::to_string(vertices[i + 1]));
      found = &e;
    }
    if (!found) throw std::invalid_argument("no edge joins " + std::to_string(vertices[i]) + " and " + std::to_string(vertices[i + 1]));
    out.push_back(*found);
  }
  return out;
}

}  // namespace dsg
