#pragma once

// Single applications of the interchange relation
//
//   (w•x)∘(y•z)  ≡  (w∘y)•(x∘z)
//
// and the normalized relations they induce between association types.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsg/parallel.hpp"
#include "dsg/shape_table.hpp"
#include "dsg/term.hpp"

namespace dsg {

/// A place where the interchange relation applies. The node P reached by
/// `path` has operation X; its children `pair` and `pair + 1` have the other
/// operation Y. The first is split after `left_split` of its children into
/// blocks B1, B2, the second after `right_split` into B3, B4, and the pair is
/// replaced by (B1 X B3) Y (B2 X B4). With X = ∘ this is the forward
/// direction of the relation, with X = • the backward one. Indices are 0-based.
struct Redex {
  std::vector<int> path;
  int pair = 0;
  int left_split = 1;
  int right_split = 1;
  Op node_op = Op::H;

  bool forward() const { return node_op == Op::H; }

  auto operator<=>(const Redex&) const = default;
  bool operator==(const Redex&) const = default;
};

namespace detail {

inline void find_redexes_at(const Term& t, std::vector<int>& path, std::vector<Redex>& out) {
  if (t.is_leaf()) return;
  for (std::size_t i = 0; i + 1 < t.kids.size(); ++i) {
    const Term& a = t.kids[i];
    const Term& b = t.kids[i + 1];
    if (a.is_leaf() || b.is_leaf()) continue;
    for (std::size_t p = 1; p < a.kids.size(); ++p)
      for (std::size_t q = 1; q < b.kids.size(); ++q)
        out.push_back(Redex{path, static_cast<int>(i), static_cast<int>(p), static_cast<int>(q), t.op});
  }
  for (std::size_t i = 0; i < t.kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    find_redexes_at(t.kids[i], path, out);
    path.pop_back();
  }
}

inline Term block(const Term& node, std::size_t begin, std::size_t end) {
  if (end - begin == 1) return node.kids[begin];
  return Term{node.op, 0, std::vector<Term>(node.kids.begin() + static_cast<std::ptrdiff_t>(begin),
                                            node.kids.begin() + static_cast<std::ptrdiff_t>(end))};
}

inline const Term& redex_node(const Term& t, const Redex& r) {
  const Term* node = &t;
  for (int step : r.path) {
    if (step < 0 || static_cast<std::size_t>(step) >= node->kids.size()) throw std::invalid_argument("redex path leaves the tree");
    node = &node->kids[static_cast<std::size_t>(step)];
  }
  return *node;
}

inline void check_redex(const Term& node, const Redex& r) {
  if (node.is_leaf()) throw std::invalid_argument("redex points at a leaf");
  if (node.op != r.node_op) throw std::invalid_argument("redex direction does not match the node operation");
  if (r.pair < 0 || static_cast<std::size_t>(r.pair) + 1 >= node.kids.size()) throw std::invalid_argument("redex pair out of range");
  const Term& a = node.kids[static_cast<std::size_t>(r.pair)];
  const Term& b = node.kids[static_cast<std::size_t>(r.pair) + 1];
  if (a.is_leaf() || b.is_leaf()) throw std::invalid_argument("redex pair must be two internal nodes");
  if (r.left_split < 1 || static_cast<std::size_t>(r.left_split) >= a.kids.size() || r.right_split < 1 ||
      static_cast<std::size_t>(r.right_split) >= b.kids.size())
    throw std::invalid_argument("redex split is not proper");
}

inline Term rewrite_at(const Term& t, const Redex& r, std::size_t depth) {
  if (depth < r.path.size()) {
    std::vector<Term> kids = t.kids;
    const auto step = static_cast<std::size_t>(r.path[depth]);
    kids[step] = rewrite_at(t.kids[step], r, depth + 1);
    return make_node(t.op, std::move(kids));
  }
  const auto i = static_cast<std::size_t>(r.pair);
  const Term& a = t.kids[i];
  const Term& b = t.kids[i + 1];
  const auto p = static_cast<std::size_t>(r.left_split);
  const auto q = static_cast<std::size_t>(r.right_split);
  Term first = make_node(t.op, {block(a, 0, p), block(b, 0, q)});
  Term second = make_node(t.op, {block(a, p, a.kids.size()), block(b, q, b.kids.size())});
  Term joined = make_node(other(t.op), {std::move(first), std::move(second)});
  std::vector<Term> kids;
  kids.reserve(t.kids.size() - 1);
  for (std::size_t k = 0; k < i; ++k) kids.push_back(t.kids[k]);
  kids.push_back(std::move(joined));
  for (std::size_t k = i + 2; k < t.kids.size(); ++k) kids.push_back(t.kids[k]);
  return make_node(t.op, std::move(kids));
}

}  // namespace detail

/// Every redex of a term, ordered by node path (preorder), then pair, then splits.
inline std::vector<Redex> find_redexes(const Term& t) {
  std::vector<Redex> out;
  std::vector<int> path;
  detail::find_redexes_at(t, path, out);
  return out;
}

inline std::vector<Redex> find_redexes(const Shape& s) { return find_redexes(s.tree()); }

/// Checks that the redex addresses a valid position of the term.
inline bool redex_applies(const Term& t, const Redex& r) {
  try {
    detail::check_redex(detail::redex_node(t, r), r);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

/// Rewrites a canonical term at the redex; leaf labels travel with their
/// leaves. Throws std::invalid_argument if the redex does not apply.
inline Term rewrite(const Term& t, const Redex& r) {
  detail::check_redex(detail::redex_node(t, r), r);
  return detail::rewrite_at(t, r, 0);
}

inline Monomial apply_redex(const Monomial& m, const Redex& r) { return to_monomial(rewrite(to_term(m), r)); }

/// The four blocks B1..B4 of a redex in left-to-right order.
inline std::array<Term, 4> redex_blocks(const Term& t, const Redex& r) {
  const Term& node = detail::redex_node(t, r);
  detail::check_redex(node, r);
  const Term& a = node.kids[static_cast<std::size_t>(r.pair)];
  const Term& b = node.kids[static_cast<std::size_t>(r.pair) + 1];
  const auto p = static_cast<std::size_t>(r.left_split);
  const auto q = static_cast<std::size_t>(r.right_split);
  return {detail::block(a, 0, p), detail::block(a, p, a.kids.size()), detail::block(b, 0, q),
          detail::block(b, q, b.kids.size())};
}

/// One edge pair of the quotient graph: type `left` with the identity
/// decoration is related to type `right` decorated by `sigma`.
struct NormalizedRelation {
  int left = 0;
  int right = 0;
  Permutation sigma;

  auto operator<=>(const NormalizedRelation&) const = default;
  bool operator==(const NormalizedRelation&) const = default;
};

/// Normal form of (type i, decoration alpha) ≡ (type j, decoration beta):
/// variables are renamed so that the smaller type goes left and carries the
/// identity. When both types agree, the smaller of sigma and its inverse is
/// kept.
inline NormalizedRelation normalize_relation(int i, const Permutation& alpha, int j, const Permutation& beta) {
  if (i < j) return {i, j, compose(alpha.inverse(), beta)};
  if (i > j) return {j, i, compose(beta.inverse(), alpha)};
  Permutation s = compose(alpha.inverse(), beta);
  Permutation inv = s.inverse();
  return {i, i, std::min(s, inv)};
}

inline NormalizedRelation normalize_relation(const NormalizedRelation& r) {
  return normalize_relation(r.left, Permutation(r.sigma.degree()), r.right, r.sigma);
}

/// A relation together with one redex on each side that realizes it:
/// `left_redex` turns left(id) into right(sigma), `right_redex` turns
/// right(id) into left(sigma^-1).
struct RelationRecord {
  NormalizedRelation relation;
  Redex left_redex;
  Redex right_redex;
};

/// All relations produced by single redex applications in one degree,
/// sorted by (left, right, sigma images). Parallel over shapes; the result
/// does not depend on `workers`.
inline std::vector<RelationRecord> generate_relation_records(const ShapeTable& table, unsigned workers = 1) {
  struct Hit {
    NormalizedRelation relation;
    Redex redex;
    bool left_side;
    bool right_side;
  };
  const auto per_shape = parallel_map<std::vector<Hit>>(table.size(), workers, [&](std::size_t k) {
    const int i = static_cast<int>(k) + 1;
    const Monomial source = identity_monomial(table.at(i));
    std::vector<Hit> hits;
    for (const auto& r : find_redexes(source.shape)) {
      const Monomial target = apply_redex(source, r);
      const int j = table.index_of(target.shape);
      const auto rel = normalize_relation(i, source.decoration, j, target.decoration);
      const bool left_side = i < j || (i == j && rel.sigma == target.decoration);
      const bool right_side = i > j || (i == j && rel.sigma == target.decoration.inverse());
      hits.push_back({rel, r, left_side, right_side});
    }
    return hits;
  });

  std::map<NormalizedRelation, std::pair<std::optional<Redex>, std::optional<Redex>>> merged;
  for (const auto& hits : per_shape) {
    for (const auto& h : hits) {
      auto& slot = merged[h.relation];
      if (h.left_side && !slot.first) slot.first = h.redex;
      if (h.right_side && !slot.second) slot.second = h.redex;
    }
  }
  std::vector<RelationRecord> out;
  out.reserve(merged.size());
  for (auto& [rel, redexes] : merged) {
    if (!redexes.first || !redexes.second) throw std::logic_error("relation is missing its inverse redex");
    out.push_back({rel, *redexes.first, *redexes.second});
  }
  return out;
}

/// The set NC(n) of normalized consequences, computed from redexes.
inline std::vector<NormalizedRelation> generate_relations(const ShapeTable& table, unsigned workers = 1) {
  std::vector<NormalizedRelation> out;
  for (auto& rec : generate_relation_records(table, workers)) out.push_back(std::move(rec.relation));
  return out;
}

inline std::vector<NormalizedRelation> generate_relations(int degree, unsigned workers = 1) {
  if (degree < 2) throw std::invalid_argument("relations need degree >= 2");
  return generate_relations(ShapeTable(degree), workers);
}

/// Replaces every leaf labelled `var` by `replacement`, keeping the result canonical.
inline Term substitute_leaf(const Term& t, int var, const Term& replacement) {
  if (t.is_leaf()) return t.var == var ? replacement : t;
  std::vector<Term> kids;
  kids.reserve(t.kids.size());
  for (const auto& k : t.kids) kids.push_back(substitute_leaf(k, var, replacement));
  return make_node(t.op, std::move(kids));
}

struct InductiveConsequences {
  std::uint64_t count = 0;
  std::vector<NormalizedRelation> normalized;
};

/// The inductive definition of the consequences C(n): start from the
/// interchange relation in degree 4; each step to degree k+1 substitutes
/// a_i ← a_i ∗ a_{k+1} for every i and both operations, and multiplies both
/// sides by a_{k+1} on either side with either operation. Returns |C(n)|
/// (with repetitions) and the sorted set of normal forms.
inline InductiveConsequences generate_consequences_inductive(const ShapeTable& table) {
  const int n = table.degree();
  if (n < 4) throw std::invalid_argument("consequences start in degree 4");
  InductiveConsequences result;
  std::set<NormalizedRelation> seen;

  auto normalize_pair = [&](const Term& lhs, const Term& rhs) {
    const Monomial a = to_monomial(lhs);
    const Monomial b = to_monomial(rhs);
    return normalize_relation(table.index_of(a.shape), a.decoration, table.index_of(b.shape), b.decoration);
  };

  auto expand = [&](auto&& self, const Term& lhs, const Term& rhs, int k) -> void {
    if (k == n) {
      ++result.count;
      seen.insert(normalize_pair(lhs, rhs));
      return;
    }
    const Term fresh = leaf(k + 1);
    for (int i = 1; i <= k; ++i) {
      for (Op op : {Op::H, Op::V}) {
        const Term repl = make_node(op, {leaf(i), fresh});
        self(self, substitute_leaf(lhs, i, repl), substitute_leaf(rhs, i, repl), k + 1);
      }
    }
    for (Op op : {Op::H, Op::V}) {
      self(self, make_node(op, {lhs, fresh}), make_node(op, {rhs, fresh}), k + 1);
      self(self, make_node(op, {fresh, lhs}), make_node(op, {fresh, rhs}), k + 1);
    }
  };

  const Term lhs = make_node(Op::H, {make_node(Op::V, {leaf(1), leaf(2)}), make_node(Op::V, {leaf(3), leaf(4)})});
  const Term rhs = make_node(Op::V, {make_node(Op::H, {leaf(1), leaf(3)}), make_node(Op::H, {leaf(2), leaf(4)})});
  expand(expand, lhs, rhs, 4);
  result.normalized.assign(seen.begin(), seen.end());
  return result;
}

inline InductiveConsequences generate_consequences_inductive(int degree) {
  return generate_consequences_inductive(ShapeTable(degree));
}

/// |C(n)| = 2^(n+1) (n+1)! / (2^5 5!) for n >= 4.
inline std::uint64_t consequence_count_closed_form(int n) {
  if (n < 4) throw std::invalid_argument("closed form holds for n >= 4");
  std::uint64_t v = 1;
  for (int k = 5; k <= n; ++k) v *= 2 * static_cast<std::uint64_t>(k + 1);
  return v;
}

}  // namespace dsg
