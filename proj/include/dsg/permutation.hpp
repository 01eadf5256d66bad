#pragma once

// Permutations of leaf positions 1..n.
//
// A permutation labels an edge of the quotient graph and decorates an
// association type to form a multilinear monomial. Images are 1-based in the
// public interface and stored 0-based.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dsg {

class Permutation {
 public:
  static constexpr std::size_t max_degree = 255;

  Permutation() = default;

  /// Identity of the given degree.
  explicit Permutation(std::size_t degree) : images_(degree) {
    if (degree > max_degree) throw std::invalid_argument("permutation degree too large");
    std::iota(images_.begin(), images_.end(), std::uint8_t{0});
  }

  /// Builds from 1-based images; throws unless they form a bijection of 1..n.
  static Permutation from_images(std::span<const int> images) {
    if (images.size() > max_degree) throw std::invalid_argument("permutation degree too large");
    Permutation p;
    p.images_.resize(images.size());
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const int v = images[i];
      if (v < 1 || static_cast<std::size_t>(v) > images.size() || seen[v - 1])
        throw std::invalid_argument("images do not form a permutation");
      seen[v - 1] = true;
      p.images_[i] = static_cast<std::uint8_t>(v - 1);
    }
    return p;
  }

  static Permutation from_images(std::initializer_list<int> images) {
    return from_images(std::span<const int>(images.begin(), images.size()));
  }

  /// Parses disjoint-cycle notation such as "(23)(354)" or "(2 3 10)".
  /// Cycles written without separators use one digit per point.
  static Permutation from_cycles(std::string_view text, std::size_t degree) {
    Permutation p(degree);
    std::vector<bool> moved(degree, false);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
      if (text[pos] != '(') throw std::invalid_argument("expected '(' in cycle notation");
      const auto close = text.find(')', pos);
      if (close == std::string_view::npos) throw std::invalid_argument("unbalanced cycle notation");
      const auto body = text.substr(pos + 1, close - pos - 1);
      std::vector<int> cycle;
      const bool separated = body.find_first_of(" ,") != std::string_view::npos;
      if (separated) {
        std::size_t i = 0;
        while (i < body.size()) {
          while (i < body.size() && (body[i] == ' ' || body[i] == ',')) ++i;
          if (i == body.size()) break;
          int value = 0;
          std::size_t start = i;
          while (i < body.size() && body[i] >= '0' && body[i] <= '9') value = value * 10 + (body[i++] - '0');
          if (i == start) throw std::invalid_argument("bad character in cycle notation");
          cycle.push_back(value);
        }
      } else {
        for (char c : body) {
          if (c < '0' || c > '9') throw std::invalid_argument("bad character in cycle notation");
          cycle.push_back(c - '0');
        }
      }
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        const int from = cycle[k];
        const int to = cycle[(k + 1) % cycle.size()];
        if (from < 1 || static_cast<std::size_t>(from) > degree || moved[from - 1])
          throw std::invalid_argument("invalid point in cycle notation");
        moved[from - 1] = true;
        p.images_[from - 1] = static_cast<std::uint8_t>(to - 1);
      }
      pos = close + 1;
      skip_ws();
    }
    return p;
  }

  std::size_t degree() const { return images_.size(); }

  /// Image of the 1-based point i.
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i - 1)) + 1; }

  std::vector<int> images() const {
    std::vector<int> out(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
    return out;
  }

  std::span<const std::uint8_t> raw() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation p;
    p.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<std::uint8_t>(i);
    return p;
  }

  /// Disjoint cycles in ascending order of their smallest point, "()" for the
  /// identity. Points are written without separators below degree 10.
  std::string cycles() const {
    std::string out;
    std::vector<bool> done(images_.size(), false);
    const bool wide = images_.size() >= 10;
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (done[start] || images_[start] == start) continue;
      out += '(';
      bool first = true;
      for (std::size_t i = start; !done[i]; i = images_[i]) {
        done[i] = true;
        if (wide && !first) out += ' ';
        out += std::to_string(i + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  std::size_t order() const {
    std::size_t result = 1;
    std::vector<bool> done(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (done[start]) continue;
      std::size_t len = 0;
      for (std::size_t i = start; !done[i]; i = images_[i]) {
        done[i] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

  friend Permutation compose(const Permutation& first, const Permutation& second);

 private:
  std::vector<std::uint8_t> images_;
};

/// Product along a path: `first` is traversed before `second`.
/// The result maps i to first(second(i)), so applying it to a monomial equals
/// applying `first` and then `second` (see apply_permutation).
inline Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.degree() != second.degree()) throw std::invalid_argument("permutation degree mismatch");
  Permutation out;
  out.images_.resize(first.degree());
  for (std::size_t i = 0; i < first.degree(); ++i) out.images_[i] = first.images_[second.images_[i]];
  return out;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    const auto bytes = p.raw();
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  }
};

}  // namespace dsg
