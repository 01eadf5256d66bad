#pragma once

// Association types of a fixed degree, their total order and counts.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dsg/term.hpp"

namespace dsg {

/// Large Schröder numbers T(1)..T(n_max), where T(n) counts the types of
/// degree n. With m = n - 1 and n > 1,
///   T(n) = (1/m) * sum_{i=1..m} 2^i C(m,i) C(m,i-1).
/// Throws std::overflow_error instead of wrapping.
inline std::vector<std::uint64_t> schroeder_large(int n_max) {
  if (n_max < 1) throw std::invalid_argument("schroeder_large needs n_max >= 1");
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Schröder number exceeds 64 bits");
    return r;
  };
  auto add = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Schröder number exceeds 64 bits");
    return r;
  };
  auto binomial = [&](std::uint64_t n, std::uint64_t k) {
    std::uint64_t c = 1;
    for (std::uint64_t j = 0; j < k; ++j) c = mul(c, n - j) / (j + 1);
    return c;
  };
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(n_max));
  out.push_back(1);
  for (std::uint64_t m = 1; m < static_cast<std::uint64_t>(n_max); ++m) {
    std::uint64_t sum = 0;
    for (std::uint64_t i = 1; i <= m; ++i) {
      if (i >= 64) throw std::overflow_error("Schröder number exceeds 64 bits");
      sum = add(sum, mul(mul(std::uint64_t{1} << i, binomial(m, i)), binomial(m, i - 1)));
    }
    out.push_back(sum / m);
  }
  return out;
}

namespace detail {

// A right factor in the right-justified binary form: the children of `node`
// from `offset` on, combined with node's operation.
struct ShapeView {
  const Term* node;
  std::size_t offset;
};

inline ShapeView normalize_view(ShapeView v) {
  if (v.offset > 0 && v.offset + 1 == v.node->kids.size()) return {&v.node->kids.back(), 0};
  return v;
}

inline int view_degree(ShapeView v) {
  if (v.node->is_leaf()) return 1;
  int d = 0;
  for (std::size_t i = v.offset; i < v.node->kids.size(); ++i) d += v.node->kids[i].degree();
  return d;
}

inline std::strong_ordering compare_views(ShapeView a, ShapeView b) {
  a = normalize_view(a);
  b = normalize_view(b);
  if (auto c = view_degree(a) <=> view_degree(b); c != 0) return c;
  if (a.node->is_leaf()) return std::strong_ordering::equal;
  if (a.node->op != b.node->op) return a.node->op == Op::H ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = compare_views({&a.node->kids[a.offset], 0}, {&b.node->kids[b.offset], 0}); c != 0) return c;
  return compare_views({a.node, a.offset + 1}, {b.node, b.offset + 1});
}

}  // namespace detail

/// Total order on association types: fewer leaves first; then ∘ before • at
/// the root; then the left and right factors of the right-justified binary
/// form, recursively.
inline std::strong_ordering compare_shapes(const Shape& a, const Shape& b) {
  return detail::compare_views({&a.tree(), 0}, {&b.tree(), 0});
}

/// All association types of one degree in ascending total order, indexed from 1.
class ShapeTable {
 public:
  ShapeTable() = default;

  explicit ShapeTable(int degree) : degree_(degree) {
    if (degree < 1) throw std::invalid_argument("degree must be at least 1");
    // Shapes of each degree are generated directly in ascending order: the
    // order is lexicographic in (root op, left factor, right factor) and the
    // left factor ranges over shapes whose root differs from the new root.
    std::vector<std::vector<Term>> by_degree(static_cast<std::size_t>(degree) + 1);
    by_degree[1].push_back(leaf());
    for (int d = 2; d <= degree; ++d) {
      auto& cur = by_degree[static_cast<std::size_t>(d)];
      for (Op op : {Op::H, Op::V}) {
        for (int d1 = 1; d1 < d; ++d1) {
          for (const auto& left : by_degree[static_cast<std::size_t>(d1)]) {
            if (!left.is_leaf() && left.op == op) continue;
            for (const auto& right : by_degree[static_cast<std::size_t>(d - d1)]) cur.push_back(make_node(op, {left, right}));
          }
        }
      }
    }
    auto& top = by_degree[static_cast<std::size_t>(degree)];
    shapes_.reserve(top.size());
    index_.reserve(top.size() * 2);
    for (auto& t : top) {
      shapes_.emplace_back(std::move(t));
      index_.emplace(shapes_.back().key(), static_cast<int>(shapes_.size()));
    }
  }

  int degree() const { return degree_; }
  std::size_t size() const { return shapes_.size(); }

  /// 1-based.
  const Shape& at(int index) const {
    if (index < 1 || static_cast<std::size_t>(index) > shapes_.size()) throw std::out_of_range("shape index out of range");
    return shapes_[static_cast<std::size_t>(index - 1)];
  }

  /// 1-based index of a shape of this degree; throws if absent.
  int index_of(const Shape& s) const { return index_of_key(s.key()); }

  int index_of_key(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw std::out_of_range("shape not in table");
    return it->second;
  }

  const std::vector<Shape>& shapes() const { return shapes_; }

 private:
  int degree_ = 0;
  std::vector<Shape> shapes_;
  std::unordered_map<std::string, int> index_;
};

inline ShapeTable enumerate_shapes(int degree) { return ShapeTable(degree); }

}  // namespace dsg
