#pragma once

// Terms of the free algebra with two associative operations.
//
// A term is a planar rooted tree. Internal nodes carry the horizontal (∘) or
// vertical (•) operation and have at least two children; no child repeats
// its parent's operation, so chains of one operation are stored flat. Leaves
// carry a 1-based variable number, or 0 when the tree only records a shape.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dsg/permutation.hpp"

namespace dsg {

/// H is horizontal composition ∘, V is vertical composition •.
enum class Op : std::uint8_t { H, V };

constexpr Op other(Op op) { return op == Op::H ? Op::V : Op::H; }

struct Term {
  Op op = Op::H;
  int var = 0;
  std::vector<Term> kids;

  bool is_leaf() const { return kids.empty(); }

  int degree() const {
    if (kids.empty()) return 1;
    int n = 0;
    for (const auto& k : kids) n += k.degree();
    return n;
  }

  bool operator==(const Term&) const = default;
};

inline Term leaf(int var = 0) { return Term{Op::H, var, {}}; }

/// Builds an internal node in canonical form: children with the same
/// operation are spliced in, and a node left with one child is replaced by it.
inline Term make_node(Op op, std::vector<Term> kids) {
  if (kids.empty()) throw std::invalid_argument("internal node needs children");
  std::vector<Term> flat;
  flat.reserve(kids.size());
  for (auto& k : kids) {
    if (!k.is_leaf() && k.op == op) {
      for (auto& g : k.kids) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (flat.size() == 1) return std::move(flat.front());
  return Term{op, 0, std::move(flat)};
}

/// True when every internal node has two or more children and operations
/// alternate along every root-to-leaf path.
inline bool is_canonical(const Term& t) {
  if (t.is_leaf()) return true;
  if (t.kids.size() < 2) return false;
  for (const auto& k : t.kids) {
    if (!k.is_leaf() && k.op == t.op) return false;
    if (!is_canonical(k)) return false;
  }
  return true;
}

/// Rebuilds a possibly non-canonical tree bottom-up through make_node.
inline Term canonicalize(const Term& t) {
  if (t.is_leaf()) return t;
  std::vector<Term> kids;
  kids.reserve(t.kids.size());
  for (const auto& k : t.kids) kids.push_back(canonicalize(k));
  return make_node(t.op, std::move(kids));
}

namespace detail {
inline void collect_labels(const Term& t, std::vector<int>& out) {
  if (t.is_leaf()) {
    out.push_back(t.var);
    return;
  }
  for (const auto& k : t.kids) collect_labels(k, out);
}

inline void assign_labels(Term& t, const std::vector<int>& labels, std::size_t& next) {
  if (t.is_leaf()) {
    t.var = labels[next++];
    return;
  }
  for (auto& k : t.kids) assign_labels(k, labels, next);
}

inline void encode_into(const Term& t, std::string& out) {
  if (t.is_leaf()) {
    out += 'x';
    return;
  }
  out += t.op == Op::H ? 'H' : 'V';
  out += static_cast<char>(t.kids.size());
  for (const auto& k : t.kids) encode_into(k, out);
}
}  // namespace detail

/// Leaf labels from left to right.
inline std::vector<int> leaf_labels(const Term& t) {
  std::vector<int> out;
  detail::collect_labels(t, out);
  return out;
}

inline Term with_labels(Term t, const std::vector<int>& labels) {
  std::size_t next = 0;
  detail::assign_labels(t, labels, next);
  if (next != labels.size()) throw std::invalid_argument("label count does not match leaf count");
  return t;
}

/// Swaps ∘ and • at every internal node.
inline Term transpose(Term t) {
  if (t.is_leaf()) return t;
  t.op = other(t.op);
  for (auto& k : t.kids) k = transpose(std::move(k));
  return t;
}

/// Prefix code of the shape: (op, arity) per internal node, 'x' per leaf.
/// Labels are ignored. Unambiguous for canonical trees.
inline std::string encode(const Term& t) {
  std::string out;
  detail::encode_into(t, out);
  return out;
}

/// An association type: a canonical term with unlabelled leaves.
class Shape {
 public:
  Shape() : root_(leaf()) {}

  explicit Shape(Term t) : root_(std::move(t)) {
    if (!is_canonical(root_)) throw std::invalid_argument("shape is not in canonical alternating form");
    strip(root_);
    degree_ = root_.degree();
  }

  const Term& tree() const { return root_; }
  int degree() const { return degree_; }
  bool is_leaf() const { return root_.is_leaf(); }
  std::string key() const { return encode(root_); }

  bool operator==(const Shape& o) const { return degree_ == o.degree_ && root_ == o.root_; }

 private:
  static void strip(Term& t) {
    t.var = 0;
    for (auto& k : t.kids) strip(k);
  }

  Term root_;
  int degree_ = 1;
};

/// A multilinear monomial: the variable at leaf position i is decoration(i).
struct Monomial {
  Shape shape;
  Permutation decoration;

  int degree() const { return shape.degree(); }
  bool operator==(const Monomial&) const = default;
};

inline Monomial identity_monomial(const Shape& s) {
  return Monomial{s, Permutation(static_cast<std::size_t>(s.degree()))};
}

inline Term to_term(const Monomial& m) { return with_labels(m.shape.tree(), m.decoration.images()); }

/// Splits a labelled canonical term into shape and decoration. The labels
/// must be a permutation of 1..n.
inline Monomial to_monomial(const Term& t) {
  const auto labels = leaf_labels(t);
  return Monomial{Shape(t), Permutation::from_images(labels)};
}

/// The variable at position i of the result is the variable at position
/// sigma(i) of m.
inline Monomial apply_permutation(const Permutation& sigma, const Monomial& m) {
  if (sigma.degree() != static_cast<std::size_t>(m.degree()))
    throw std::invalid_argument("permutation degree does not match monomial");
  return Monomial{m.shape, compose(m.decoration, sigma)};
}

inline Monomial transpose(const Monomial& m) { return Monomial{Shape(transpose(m.shape.tree())), m.decoration}; }

}  // namespace dsg
