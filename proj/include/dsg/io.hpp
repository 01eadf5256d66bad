#pragma once

// Serialization: JSON for shapes, relations, graphs, reports, proofs and
// identities; DOT for components; a versioned text cache for G(n).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsg/cycles.hpp"
#include "dsg/graph.hpp"
#include "dsg/notation.hpp"
#include "dsg/witness.hpp"

namespace dsg {

using json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- shapes and permutations ------------------------------------------------

inline json shape_to_json(const Term& t) {
  if (t.is_leaf()) return "x";
  json out = json::array({t.op == Op::H ? "H" : "V"});
  for (const auto& k : t.kids) out.push_back(shape_to_json(k));
  return out;
}

inline json shape_to_json(const Shape& s) { return shape_to_json(s.tree()); }

inline Term term_from_shape_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "x") throw FormatError("leaf must be \"x\"");
    return leaf();
  }
  if (!j.is_array() || j.size() < 3 || !j[0].is_string()) throw FormatError("node must be [op, child, child, ...]");
  const auto op = j[0].get<std::string>();
  if (op != "H" && op != "V") throw FormatError("operation must be \"H\" or \"V\"");
  Term t{op == "H" ? Op::H : Op::V, 0, {}};
  for (std::size_t i = 1; i < j.size(); ++i) t.kids.push_back(term_from_shape_json(j[i]));
  return t;
}

inline Shape shape_from_json(const json& j) {
  Term t = term_from_shape_json(j);
  if (!is_canonical(t)) throw FormatError("shape is not in alternating form");
  return Shape(std::move(t));
}

inline json permutation_to_json(const Permutation& p) { return p.images(); }

inline Permutation permutation_from_json(const json& j) {
  try {
    return Permutation::from_images(j.get<std::vector<int>>());
  } catch (const std::exception& e) {
    throw FormatError(std::string("bad permutation: ") + e.what());
  }
}

// ---- relations --------------------------------------------------------------

/// One JSON object per line: {"left", "right", "perm"}.
inline void write_relations_jsonl(std::ostream& out, const std::vector<NormalizedRelation>& relations) {
  for (const auto& r : relations)
    out << json{{"left", r.left}, {"right", r.right}, {"perm", permutation_to_json(r.sigma)}}.dump() << '\n';
}

/// Sidecar listing: "index<TAB>type" per line.
inline void write_shape_listing(std::ostream& out, const ShapeTable& table, Notation style = Notation::unicode) {
  for (std::size_t i = 1; i <= table.size(); ++i) out << i << '\t' << to_string(table.at(static_cast<int>(i)), style) << '\n';
}

// ---- graph ------------------------------------------------------------------

/// {degree, vertices: [{index, type}], edges: [{src, dst, perm, relation_id}]}
/// with both directions of every edge pair, sorted by source.
inline void write_graph_json(std::ostream& out, const QuotientGraph& g) {
  out << "{\"degree\":" << g.degree() << ",\"vertices\":[";
  for (int v = 1; v <= g.vertex_count(); ++v) {
    if (v > 1) out << ',';
    out << json{{"index", v}, {"type", to_string(g.shape(v))}}.dump();
  }
  out << "],\"edges\":[";
  bool first = true;
  for (int v = 1; v <= g.vertex_count(); ++v) {
    for (const auto& e : g.out_edges(v)) {
      if (!first) out << ',';
      first = false;
      out << json{{"src", e.src}, {"dst", e.dst}, {"perm", permutation_to_json(g.label(e))}, {"relation_id", e.relation + 1}}
                 .dump();
    }
  }
  out << "]}\n";
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

/// One digraph per component. Each edge pair is drawn once, from the
/// smaller type to the larger, labelled by its permutation in cycle form.
inline void write_component_dot(std::ostream& out, const QuotientGraph& g, const Component& c) {
  out << "digraph component_" << c.id << " {\n";
  for (int v : c.vertices) out << "  " << v << " [label=\"" << v << "\\n" << dot_escape(to_string(g.shape(v))) << "\"];\n";
  for (int k : c.relations) {
    const auto e = g.edge(k, true);
    out << "  " << e.src << " -> " << e.dst << " [label=\"" << g.label(e).cycles() << "\"];\n";
  }
  out << "}\n";
}

inline void write_graph_dot(std::ostream& out, const QuotientGraph& g, const std::vector<Component>& components) {
  for (const auto& c : components) write_component_dot(out, g, c);
}

// ---- monodromy reports ------------------------------------------------------

inline json report_to_json(const Component& c, const MonodromyReport& r) {
  return {{"id", c.id},
          {"v", c.vertex_count()},
          {"e", c.edge_count()},
          {"r", c.circuit_rank()},
          {"base", r.base},
          {"group_order", r.order},
          {"nontrivial", r.nontrivial},
          {"sample_perm", r.sample ? permutation_to_json(*r.sample) : json(nullptr)}};
}

inline void write_analysis_json(std::ostream& out, int degree, const std::vector<Component>& components,
                                const std::vector<MonodromyReport>& reports) {
  out << "{\"degree\":" << degree << ",\"components\":[";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) out << ',';
    out << report_to_json(components[i], reports[i]).dump();
  }
  out << "]}\n";
}

/// Same columns as the JSON report; sample_perm in cycle notation.
inline void write_analysis_csv(std::ostream& out, const std::vector<Component>& components,
                               const std::vector<MonodromyReport>& reports) {
  out << "id,v,e,r,base,group_order,nontrivial,sample_perm\n";
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    const auto& r = reports[i];
    out << c.id << ',' << c.vertex_count() << ',' << c.edge_count() << ',' << c.circuit_rank() << ',' << r.base << ','
        << r.order << ',' << (r.nontrivial ? "true" : "false") << ',' << (r.sample ? r.sample->cycles() : "") << '\n';
  }
}

// ---- proofs and identities --------------------------------------------------

inline json redex_to_json(const Redex& r) {
  std::vector<int> path;
  for (int s : r.path) path.push_back(s + 1);
  return {{"path", path},
          {"pair", r.pair + 1},
          {"p", r.left_split},
          {"q", r.right_split},
          {"dir", r.forward() ? "fwd" : "bwd"}};
}

inline Redex redex_from_json(const json& j) {
  try {
    Redex r;
    for (int s : j.at("path").get<std::vector<int>>()) {
      if (s < 1) throw FormatError("path entries are 1-based");
      r.path.push_back(s - 1);
    }
    r.pair = j.at("pair").get<int>() - 1;
    r.left_split = j.at("p").get<int>();
    r.right_split = j.at("q").get<int>();
    if (r.pair < 0 || r.left_split < 1 || r.right_split < 1) throw FormatError("pair, p and q are positive");
    const auto dir = j.at("dir").get<std::string>();
    if (dir != "fwd" && dir != "bwd") throw FormatError("dir must be \"fwd\" or \"bwd\"");
    r.node_op = dir == "fwd" ? Op::H : Op::V;
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad step: ") + e.what());
  }
}

inline json proof_to_json(const Proof& p) {
  json steps = json::array();
  for (const auto& s : p.steps) {
    json step = redex_to_json(s.redex);
    step["result"] = to_string(s.result);
    steps.push_back(std::move(step));
  }
  return {{"degree", p.degree()}, {"start", to_string(p.start)}, {"steps", steps}, {"end", to_string(p.end)}};
}

inline Proof proof_from_json(const json& j) {
  try {
    const int degree = j.at("degree").get<int>();
    Proof p;
    p.start = parse_monomial(j.at("start").get<std::string>(), degree);
    for (const auto& s : j.at("steps")) p.steps.push_back({redex_from_json(s), parse_monomial(s.at("result").get<std::string>(), degree)});
    p.end = parse_monomial(j.at("end").get<std::string>(), degree);
    return p;
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad proof file: ") + e.what());
  } catch (const ParseError& e) {
    throw FormatError(std::string("bad monomial in proof file: ") + e.what());
  }
}

inline json identity_to_json(const CommutativityIdentity& id) {
  return {{"degree", id.degree}, {"type", to_string(id.left.shape)}, {"pi", permutation_to_json(id.pi())}};
}

inline CommutativityIdentity identity_from_json(const json& j) {
  try {
    const int degree = j.at("degree").get<int>();
    const Shape s = parse_shape(j.at("type").get<std::string>());
    if (s.degree() != degree) throw FormatError("type has the wrong degree");
    const Permutation pi = permutation_from_json(j.at("pi"));
    const Monomial left = identity_monomial(s);
    return {degree, 0, left, apply_permutation(pi, left)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad identity file: ") + e.what());
  }
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

// ---- graph cache ------------------------------------------------------------
//
// Text file, one per degree:
//   dsg-graph-cache <version> <degree> <vertices> <edge pairs> <checksum>
// then one line per relation:
//   left right images... | path... ; pair p q op | path... ; pair p q op
// The checksum is FNV-1a over the body bytes.

inline constexpr int cache_format_version = 1;

inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, int degree) {
  return dir / ("graph-" + std::to_string(degree) + ".cache");
}

namespace detail {

inline void write_redex(std::ostream& out, const Redex& r) {
  for (int s : r.path) out << s << ' ';
  out << "; " << r.pair << ' ' << r.left_split << ' ' << r.right_split << ' ' << (r.forward() ? 'H' : 'V');
}

inline Redex read_redex(std::istream& in) {
  Redex r;
  std::string tok;
  while (in >> tok && tok != ";") r.path.push_back(std::stoi(tok));
  char op = 0;
  if (!(in >> r.pair >> r.left_split >> r.right_split >> op) || (op != 'H' && op != 'V')) throw FormatError("bad redex");
  r.node_op = op == 'H' ? Op::H : Op::V;
  return r;
}

}  // namespace detail

inline std::string serialize_graph_body(const QuotientGraph& g) {
  std::ostringstream body;
  for (const auto& rec : g.relations()) {
    body << rec.relation.left << ' ' << rec.relation.right;
    for (int x : rec.relation.sigma.images()) body << ' ' << x;
    body << " | ";
    detail::write_redex(body, rec.left_redex);
    body << " | ";
    detail::write_redex(body, rec.right_redex);
    body << '\n';
  }
  return body.str();
}

inline void save_graph_cache(const std::filesystem::path& file, const QuotientGraph& g) {
  const std::string body = serialize_graph_body(g);
  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + tmp);
    out << "dsg-graph-cache " << cache_format_version << ' ' << g.degree() << ' ' << g.vertex_count() << ' '
        << g.edge_pair_count() << ' ' << fnv1a(body) << '\n'
        << body;
    if (!out) throw FormatError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

/// Loads a cached graph; throws FormatError on any mismatch or corruption.
inline QuotientGraph load_graph_cache(const std::filesystem::path& file, int degree) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw FormatError("no cache file");
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  int version = 0, deg = 0;
  std::size_t vertices = 0, pairs = 0;
  std::uint64_t checksum = 0;
  if (!(hs >> magic >> version >> deg >> vertices >> pairs >> checksum) || magic != "dsg-graph-cache")
    throw FormatError("bad cache header");
  if (version != cache_format_version) throw FormatError("cache format version mismatch");
  if (deg != degree) throw FormatError("cache degree mismatch");
  const std::string body{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (fnv1a(body) != checksum) throw FormatError("cache checksum mismatch");
  ShapeTable table(degree);
  if (table.size() != vertices) throw FormatError("cache vertex count mismatch");
  std::vector<RelationRecord> records;
  records.reserve(pairs);
  std::istringstream bs(body);
  std::string line;
  try {
    while (std::getline(bs, line)) {
      std::istringstream ls(line);
      RelationRecord rec;
      ls >> rec.relation.left >> rec.relation.right;
      std::vector<int> images(static_cast<std::size_t>(degree));
      for (auto& x : images) ls >> x;
      std::string bar;
      if (!(ls >> bar) || bar != "|") throw FormatError("bad relation line");
      rec.relation.sigma = Permutation::from_images(images);
      rec.left_redex = detail::read_redex(ls);
      if (!(ls >> bar) || bar != "|") throw FormatError("bad relation line");
      rec.right_redex = detail::read_redex(ls);
      records.push_back(std::move(rec));
    }
  } catch (const std::logic_error& e) {
    throw FormatError(std::string("bad cache body: ") + e.what());
  }
  if (records.size() != pairs) throw FormatError("cache edge count mismatch");
  try {
    return QuotientGraph(std::move(table), std::move(records));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad cache body: ") + e.what());
  }
}

/// Loads G(degree) from the cache directory, or builds and stores it. A
/// stale or corrupt cache is reported on `warn` and rebuilt.
inline QuotientGraph load_or_build_graph(int degree, const std::filesystem::path& cache_dir, unsigned workers,
                                         std::ostream* warn = nullptr) {
  const auto file = cache_file(cache_dir, degree);
  if (std::filesystem::exists(file)) {
    try {
      return load_graph_cache(file, degree);
    } catch (const FormatError& e) {
      if (warn) *warn << "warning: ignoring cache " << file.string() << " (" << e.what() << "), rebuilding\n";
    }
  }
  QuotientGraph g = build_quotient_graph(degree, workers);
  try {
    save_graph_cache(file, g);
  } catch (const std::exception& e) {
    if (warn) *warn << "warning: could not write cache " << file.string() << " (" << e.what() << ")\n";
  }
  return g;
}

}  // namespace dsg
