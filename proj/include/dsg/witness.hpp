#pragma once

// Commutativity identities read off nontrivial cycles, replayable proofs
// made of single interchange steps, and the substitution calculus used to
// derive Kock's degree-16 identity from a degree-9 one.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsg/cycles.hpp"
#include "dsg/notation.hpp"
#include "dsg/rewrite.hpp"

namespace dsg {

/// left ≡ right where both monomials have the same degree. Identities read
/// off the graph have equal shapes, the identity decoration on the left,
/// and `type` set to the shape index; derived identities leave `type` at 0.
struct CommutativityIdentity {
  int degree = 0;
  int type = 0;
  Monomial left;
  Monomial right;

  /// Position permutation with right = apply_permutation(pi, left).
  Permutation pi() const { return compose(left.decoration.inverse(), right.decoration); }

  bool operator==(const CommutativityIdentity&) const = default;
};

struct ProofStep {
  Redex redex;
  Monomial result;

  bool operator==(const ProofStep&) const = default;
};

struct Proof {
  Monomial start;
  std::vector<ProofStep> steps;
  Monomial end;

  int degree() const { return start.degree(); }
  bool operator==(const Proof&) const = default;
};

struct ProofCheck {
  bool valid = true;
  std::size_t failing_step = 0;  // 0-based; steps.size() means the end monomial
  std::string reason;
};

/// Replays every step. Fails at the first step whose redex does not apply
/// or whose stated result differs from the rewrite, or at the end.
inline ProofCheck verify_proof(const Proof& p) {
  Monomial cur = p.start;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& step = p.steps[i];
    const Term t = to_term(cur);
    if (!redex_applies(t, step.redex)) return {false, i, "interchange does not apply at the given position"};
    Monomial next = to_monomial(rewrite(t, step.redex));
    if (!(next == step.result))
      return {false, i, "result is " + to_string(next) + " but the step states " + to_string(step.result)};
    cur = std::move(next);
  }
  if (!(cur == p.end))
    return {false, p.steps.size(), "proof ends at " + to_string(cur) + " instead of " + to_string(p.end)};
  return {};
}

/// Applies the redexes in order from `start`, recording each result.
inline Proof replay(const Monomial& start, const std::vector<Redex>& redexes) {
  Proof p{start, {}, start};
  for (const auto& r : redexes) {
    p.end = apply_redex(p.end, r);
    p.steps.push_back({r, p.end});
  }
  return p;
}

/// Closed walk at `at` with nontrivial product: a nontrivial cycle of the
/// row-reduced basis, entered and left along tree paths from the root.
inline Walk nontrivial_walk(const QuotientGraph& g, const Component& c, int at) {
  if (!c.contains(at)) throw std::invalid_argument("vertex " + std::to_string(at) + " is not in component " + std::to_string(c.id));
  const CycleBasis basis = canonical_cycle_basis(g, c, fundamental_cycle_basis(g, c));
  const SpanningTree tree(g, c, basis.root);
  for (const auto& w : basis.walks) {
    if (cycle_permutation(g, w).is_identity()) continue;
    Walk out{at, tree.path_to_root(at)};
    out.edges.insert(out.edges.end(), w.edges.begin(), w.edges.end());
    const auto back = tree.path_from_root(at);
    out.edges.insert(out.edges.end(), back.begin(), back.end());
    return out;
  }
  throw std::invalid_argument("component " + std::to_string(c.id) + " has trivial monodromy");
}

struct ExtractedIdentity {
  CommutativityIdentity identity;
  Proof proof;
};

/// The commutativity identity at type `at` of a nontrivial component, with
/// a proof obtained by rewriting along a nontrivial closed walk.
inline ExtractedIdentity extract_identity(const QuotientGraph& g, const Component& c, int at) {
  const Walk w = nontrivial_walk(g, c, at);
  std::vector<Redex> redexes;
  redexes.reserve(w.edges.size());
  for (const auto& e : w.edges) redexes.push_back(g.redex(e));
  Proof proof = replay(identity_monomial(g.shape(at)), redexes);
  const Permutation pi = cycle_permutation(g, w);
  if (!(proof.end == Monomial{g.shape(at), pi})) throw std::logic_error("rewriting disagrees with the edge labels");
  CommutativityIdentity id{g.degree(), at, proof.start, proof.end};
  return {std::move(id), std::move(proof)};
}

// Prose form: the four blocks w, x, y, z of each step in left-to-right
// order, followed by the result of the interchange.

inline std::string render_factors(const Monomial& before, const Redex& r, Notation style = Notation::unicode) {
  const auto blocks = redex_blocks(to_term(before), r);
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += ", ";
    out += to_string(blocks[i], style);
  }
  return out;
}

inline std::string render_prose(const Proof& p, Notation style = Notation::unicode) {
  std::string out = to_string(p.start, style) + "\n";
  Monomial cur = p.start;
  for (const auto& step : p.steps) {
    out += render_factors(cur, step.redex, style) + "  =>  " + to_string(step.result, style) + "\n";
    cur = step.result;
  }
  return out;
}

/// The first redex of `before` whose blocks are the given factors and whose
/// rewrite is `result`. Factors and result compare after flattening.
inline Redex match_factors(const Monomial& before, const std::vector<Term>& factors, const Term& result) {
  if (factors.size() != 4) throw std::invalid_argument("a step needs four factors");
  const Term t = to_term(before);
  bool blocks_matched = false;
  for (const auto& r : find_redexes(t)) {
    const auto blocks = redex_blocks(t, r);
    if (!std::equal(blocks.begin(), blocks.end(), factors.begin())) continue;
    blocks_matched = true;
    if (rewrite(t, r) == result) return r;
  }
  throw std::invalid_argument(blocks_matched ? "factors match but the result differs"
                                             : "no interchange in " + to_string(before) + " has these factors");
}

/// Reads a proof in prose form: the start monomial on the first line, then
/// one step per line as "w, x, y, z  =>  result". Blank lines and lines
/// starting with '#' are skipped. The end is the last result.
inline Proof transcribe_prose(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Proof> proof;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      if (!proof) {
        const Monomial start = parse_monomial(line);
        proof = Proof{start, {}, start};
        continue;
      }
      const auto arrow = line.find("=>");
      if (arrow == std::string::npos) throw ParseError("missing '=>'");
      std::vector<Term> factors;
      std::string factor_text = line.substr(0, arrow);
      std::size_t pos = 0;
      while (pos <= factor_text.size()) {
        const auto comma = factor_text.find(',', pos);
        const auto end = comma == std::string::npos ? factor_text.size() : comma;
        factors.push_back(parse_term(std::string_view(factor_text).substr(pos, end - pos)));
        pos = end + 1;
      }
      const Term result = parse_term(std::string_view(line).substr(arrow + 2));
      const Redex r = match_factors(proof->end, factors, result);
      proof->end = apply_redex(proof->end, r);
      proof->steps.push_back({r, proof->end});
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!proof) throw ParseError("no start monomial");
  return *proof;
}

inline CommutativityIdentity transpose_operations(const CommutativityIdentity& id) {
  return {id.degree, 0, transpose(id.left), transpose(id.right)};
}

enum class Side { left, right };

/// Multiplies a side of the identity by a factor: factor ∗ m or m ∗ factor.
struct OuterFactor {
  Op op = Op::H;
  Side side = Side::right;
  Term factor;
};

/// Substitutes terms for variables on both sides, then multiplies both
/// sides by the outer factors in order. The variables of the result must be
/// exactly 1..N, each once; anything else is a collision.
inline CommutativityIdentity substitute_and_multiply(const CommutativityIdentity& id, const std::map<int, Term>& subs,
                                                     const std::vector<OuterFactor>& outer) {
  auto build = [&](const Monomial& m) {
    Term t = to_term(m);
    for (const auto& [var, repl] : subs) {
      if (var < 1 || var > id.degree) throw std::invalid_argument("substitution for unknown variable " + variable_name(var));
      t = substitute_leaf(t, var, repl);
    }
    for (const auto& f : outer)
      t = f.side == Side::left ? make_node(f.op, {f.factor, t}) : make_node(f.op, {t, f.factor});
    return t;
  };
  const Term lhs = build(id.left);
  const Term rhs = build(id.right);
  auto check = [](const Term& t) {
    const auto labels = leaf_labels(t);
    std::vector<bool> seen(labels.size(), false);
    for (int v : labels) {
      if (v < 1 || static_cast<std::size_t>(v) > labels.size() || seen[static_cast<std::size_t>(v - 1)])
        throw std::invalid_argument("variable collision: the result is not multilinear in the first " +
                                    std::to_string(labels.size()) + " variables");
      seen[static_cast<std::size_t>(v - 1)] = true;
    }
  };
  check(lhs);
  check(rhs);
  Monomial l = to_monomial(lhs);
  Monomial r = to_monomial(rhs);
  return {l.degree(), 0, std::move(l), std::move(r)};
}

/// A variable renaming rho with rho(a) = b, possibly after exchanging the
/// sides of b. rho(v) is the new name of variable v.
struct Renaming {
  Permutation rho;
  bool swapped = false;
};

inline std::optional<Renaming> find_renaming(const CommutativityIdentity& a, const CommutativityIdentity& b) {
  if (a.degree != b.degree) return std::nullopt;
  auto attempt = [&](const Monomial& bl, const Monomial& br) -> std::optional<Permutation> {
    if (!(a.left.shape == bl.shape) || !(a.right.shape == br.shape)) return std::nullopt;
    // rho(a.left.dec(i)) = bl.dec(i), so rho = bl.dec ∘ a.left.dec⁻¹ as a map.
    const Permutation rho = compose(bl.decoration, a.left.decoration.inverse());
    if (!(compose(rho, a.right.decoration) == br.decoration)) return std::nullopt;
    return rho;
  };
  if (auto rho = attempt(b.left, b.right)) return Renaming{*rho, false};
  if (auto rho = attempt(b.right, b.left)) return Renaming{*rho, true};
  return std::nullopt;
}

/// The identity (K): four ∘-chains of four stacked with •, f and g exchanged.
inline CommutativityIdentity kock_identity(bool exchange_f_g = true) {
  const Monomial l = parse_monomial("(a∘b∘c∘d)•(e∘f∘g∘h)•(i∘j∘k∘l)•(m∘n∘p∘q)");
  const Monomial r = parse_monomial(exchange_f_g ? "(a∘b∘c∘d)•(e∘g∘f∘h)•(i∘j∘k∘l)•(m∘n∘p∘q)"
                                                 : "(a∘b∘c∘d)•(e∘f∘g∘h)•(i∘j∘k∘l)•(m∘n∘p∘q)");
  return {16, 0, l, r};
}

/// The degree-9 identity exchanging d and e used to derive (K).
inline CommutativityIdentity stacked_columns_identity() {
  const Monomial l = parse_monomial("(a•b)∘(c•d•e•f)∘(g•h•i)");
  const Monomial r = parse_monomial("(a•b)∘(c•e•d•f)∘(g•h•i)");
  return {9, 0, l, r};
}

struct KockReport {
  bool success = false;
  CommutativityIdentity derived;
  std::optional<Renaming> renaming;
  std::string message;
};

/// Substitutes b ← b•j•k and i ← i•l, right-multiplies with ∘ by m•n•p•q,
/// transposes the operations and looks for a renaming onto `target`.
/// `with_outer` = false drops the outer factor.
inline KockReport kock_derivation_check(const CommutativityIdentity& source, const CommutativityIdentity& target,
                                        bool with_outer = true) {
  KockReport report;
  if (source.degree != 9) {
    report.message = "source identity must have degree 9";
    return report;
  }
  const std::map<int, Term> subs{{variable_index('b'), parse_term("b•j•k")}, {variable_index('i'), parse_term("i•l")}};
  std::vector<OuterFactor> outer;
  if (with_outer) outer.push_back({Op::H, Side::right, parse_term("m•n•p•q")});
  try {
    report.derived = substitute_and_multiply(source, subs, outer);
  } catch (const std::invalid_argument& e) {
    report.message = e.what();
    return report;
  }
  report.renaming = find_renaming(transpose_operations(report.derived), target);
  report.success = report.renaming.has_value();
  report.message = report.success ? "derived identity matches the target after renaming"
                                  : "no variable renaming carries the derived identity to the target";
  return report;
}

inline KockReport kock_derivation_check() { return kock_derivation_check(stacked_columns_identity(), kock_identity()); }

}  // namespace dsg
