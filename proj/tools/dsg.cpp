// Command-line front end for the double-semigroup library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dsg/dsg.hpp"

namespace fs = std::filesystem;
using namespace dsg;

namespace {

enum class Format { text, json, csv, dot };

struct RunConfig {
  std::string command;
  int degree = 0;
  Format format = Format::text;
  std::string out;
  std::string cache_dir;
  bool no_cache = false;
  unsigned workers = 1;
  int component = 0;
  int vertex = 0;
  std::string input;
  std::string source = "graph";
  std::string control;
  bool ascii = false;
};

// Bad input discovered after parsing; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

fs::path default_cache_dir() {
  if (const char* env = std::getenv("DSG_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "dsg";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "dsg";
  return fs::temp_directory_path() / "dsg-cache";
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw UsageError("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void require_degree(const RunConfig& cfg, int lo, int hi) {
  if (cfg.degree < lo || cfg.degree > hi)
    throw UsageError("--degree must be between " + std::to_string(lo) + " and " + std::to_string(hi) + " for " + cfg.command);
}

void require_format(const RunConfig& cfg, std::initializer_list<Format> allowed) {
  for (Format f : allowed)
    if (f == cfg.format) return;
  throw UsageError("unsupported --format for " + cfg.command);
}

Notation notation(const RunConfig& cfg) { return cfg.ascii ? Notation::ascii : Notation::unicode; }

QuotientGraph graph_for(const RunConfig& cfg) {
  if (cfg.no_cache) return build_quotient_graph(cfg.degree, cfg.workers);
  const fs::path dir = cfg.cache_dir.empty() ? default_cache_dir() : fs::path(cfg.cache_dir);
  return load_or_build_graph(cfg.degree, dir, cfg.workers, &std::cerr);
}

std::string histogram_json(const std::map<int, int>& h) {
  json j = json::object();
  for (auto [k, v] : h) j[std::to_string(k)] = v;
  return j.dump();
}

int run_schroeder(const RunConfig& cfg) {
  require_degree(cfg, 1, 64);
  require_format(cfg, {Format::text, Format::json});
  const auto counts = schroeder_large(cfg.degree);
  Output out(cfg.out);
  if (cfg.format == Format::json) {
    out.stream() << json{{"counts", counts}}.dump() << '\n';
  } else {
    for (std::size_t i = 0; i < counts.size(); ++i) out.stream() << i + 1 << '\t' << counts[i] << '\n';
  }
  return exit_ok;
}

int run_types(const RunConfig& cfg) {
  require_degree(cfg, 1, 10);
  require_format(cfg, {Format::text, Format::json});
  const ShapeTable table(cfg.degree);
  Output out(cfg.out);
  if (cfg.format == Format::json) {
    auto& os = out.stream();
    os << "{\"degree\":" << cfg.degree << ",\"types\":[";
    for (std::size_t i = 1; i <= table.size(); ++i) {
      const Shape& s = table.at(static_cast<int>(i));
      if (i > 1) os << ',';
      os << json{{"index", i}, {"type", to_string(s, notation(cfg))}, {"shape", shape_to_json(s)}}.dump();
    }
    os << "]}\n";
  } else {
    write_shape_listing(out.stream(), table, notation(cfg));
  }
  return exit_ok;
}

int run_relations(const RunConfig& cfg) {
  require_degree(cfg, 2, 10);
  require_format(cfg, {Format::text, Format::json});
  const ShapeTable table(cfg.degree);
  const auto relations = generate_relations(table, cfg.workers);
  Output out(cfg.out);
  if (cfg.format == Format::json) {
    write_relations_jsonl(out.stream(), relations);
    if (!cfg.out.empty() && cfg.out != "-") {
      std::ofstream sidecar(cfg.out + ".shapes.txt", std::ios::binary | std::ios::trunc);
      write_shape_listing(sidecar, table, notation(cfg));
    }
  } else {
    out.stream() << "degree " << cfg.degree << ": |NC(n)| = " << relations.size();
    if (cfg.degree >= 4) out.stream() << ", |C(n)| = " << consequence_count_closed_form(cfg.degree);
    out.stream() << '\n';
  }
  return exit_ok;
}

const Component& select_component(const std::vector<Component>& components, int id) {
  if (id < 1 || static_cast<std::size_t>(id) > components.size())
    throw UsageError("--component must be between 1 and " + std::to_string(components.size()));
  return components[static_cast<std::size_t>(id - 1)];
}

int run_graph(const RunConfig& cfg) {
  require_degree(cfg, 2, 10);
  require_format(cfg, {Format::text, Format::json, Format::dot});
  const QuotientGraph g = graph_for(cfg);
  Output out(cfg.out);
  if (cfg.format == Format::json) {
    write_graph_json(out.stream(), g);
  } else if (cfg.format == Format::dot) {
    const auto components = connected_components(g);
    if (cfg.component)
      write_component_dot(out.stream(), g, select_component(components, cfg.component));
    else
      write_graph_dot(out.stream(), g, components);
  } else {
    out.stream() << "degree " << g.degree() << ": " << g.vertex_count() << " vertices, " << g.edge_pair_count()
                 << " edge pairs, " << isolated_vertex_count(g) << " isolated\n";
  }
  return exit_ok;
}

int run_components(const RunConfig& cfg) {
  require_degree(cfg, 2, 10);
  require_format(cfg, {Format::text, Format::json});
  const QuotientGraph g = graph_for(cfg);
  const auto components = connected_components(g);
  const auto s = component_summary(g, components);
  Output out(cfg.out);
  auto& os = out.stream();
  if (cfg.format == Format::json) {
    os << "{\"degree\":" << g.degree() << ",\"vertices\":" << g.vertex_count() << ",\"edge_pairs\":" << g.edge_pair_count()
       << ",\"isolated\":" << s.isolated << ",\"components\":" << components.size()
       << ",\"by_size\":" << histogram_json(s.by_size) << ",\"by_rank\":" << histogram_json(s.by_rank) << "}\n";
    return exit_ok;
  }
  os << "degree " << g.degree() << ": " << g.vertex_count() << " vertices, " << g.edge_pair_count() << " edge pairs, "
     << s.isolated << " isolated, " << components.size() << " components\n";
  os << "size\tcomponents\n";
  for (auto [k, v] : s.by_size) os << k << '\t' << v << '\n';
  os << "rank\tcomponents\n";
  for (auto [k, v] : s.by_rank) os << k << '\t' << v << '\n';
  return exit_ok;
}

int run_analyze(const RunConfig& cfg) {
  require_degree(cfg, 2, 10);
  require_format(cfg, {Format::text, Format::json, Format::csv});
  const QuotientGraph g = graph_for(cfg);
  const auto components = connected_components(g);
  const auto reports = analyze_components(g, components, cfg.workers);
  Output out(cfg.out);
  auto& os = out.stream();
  if (cfg.format == Format::json) {
    write_analysis_json(os, g.degree(), components, reports);
  } else if (cfg.format == Format::csv) {
    write_analysis_csv(os, components, reports);
  } else {
    const auto rows = find_nontrivial_components(g, components, reports);
    os << "degree " << g.degree() << ": " << components.size() << " components, " << rows.size()
       << " nontrivial components\n";
    if (!rows.empty()) os << "index\tv\te\tr\torder\tv_min\tt_min\n";
    for (const auto& r : rows)
      os << r.id << '\t' << r.vertices << '\t' << r.edges << '\t' << r.rank << '\t' << r.group_order << '\t' << r.min_vertex
         << '\t' << to_string(g.shape(r.min_vertex), notation(cfg)) << '\n';
  }
  return exit_ok;
}

int run_identity(const RunConfig& cfg) {
  require_degree(cfg, 2, 10);
  require_format(cfg, {Format::text, Format::json});
  const QuotientGraph g = graph_for(cfg);
  const auto components = connected_components(g);
  const Component* c = nullptr;
  if (cfg.component) {
    c = &select_component(components, cfg.component);
  } else if (cfg.vertex) {
    for (const auto& candidate : components)
      if (candidate.contains(cfg.vertex)) c = &candidate;
    if (!c) throw UsageError("type " + std::to_string(cfg.vertex) + " is isolated or out of range");
  } else {
    throw UsageError("identity needs --component or --vertex");
  }
  const int at = cfg.vertex ? cfg.vertex : c->min_vertex();
  if (!c->contains(at)) throw UsageError("type " + std::to_string(at) + " is not in component " + std::to_string(c->id));
  if (!monodromy_group(g, *c).nontrivial) throw UsageError("component " + std::to_string(c->id) + " has trivial monodromy");
  const auto x = extract_identity(g, *c, at);
  Output out(cfg.out);
  if (cfg.format == Format::json) {
    out.stream() << json{{"identity", identity_to_json(x.identity)}, {"proof", proof_to_json(x.proof)}}.dump(2) << '\n';
  } else {
    out.stream() << "component " << c->id << ", type " << at << ": " << to_string(x.identity.left, notation(cfg))
                 << " ≡ " << to_string(x.identity.right, notation(cfg)) << "  pi = " << x.identity.pi().cycles() << '\n'
                 << render_prose(x.proof, notation(cfg));
  }
  return exit_ok;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A proof file, an {identity, proof} object, or a prose transcription.
Proof load_proof(const std::string& path) {
  const std::string text = read_text(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '{') {
      const json j = json::parse(text);
      return proof_from_json(j.contains("proof") ? j.at("proof") : j);
    }
    return transcribe_prose(text);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const FormatError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int run_verify(const RunConfig& cfg) {
  require_format(cfg, {Format::text, Format::json});
  const Proof p = load_proof(cfg.input);
  const ProofCheck check = verify_proof(p);
  Output out(cfg.out);
  if (cfg.format == Format::json) {
    json j{{"valid", check.valid}, {"steps", p.steps.size()}, {"pi", permutation_to_json(compose(p.start.decoration.inverse(), p.end.decoration))}};
    if (!check.valid) {
      j["failing_step"] = check.failing_step + 1;
      j["reason"] = check.reason;
    }
    out.stream() << j.dump() << '\n';
  } else if (check.valid) {
    out.stream() << "valid: " << p.steps.size() << " steps from " << to_string(p.start, notation(cfg)) << " to "
                 << to_string(p.end, notation(cfg)) << '\n';
  } else {
    out.stream() << "invalid at step " << check.failing_step + 1 << ": " << check.reason << '\n';
  }
  return check.valid ? exit_ok : exit_failed;
}

int run_transcribe(const RunConfig& cfg) {
  const std::string text = read_text(cfg.input);
  Proof p;
  try {
    p = transcribe_prose(text);
  } catch (const ParseError& e) {
    throw UsageError(cfg.input + ": " + e.what());
  }
  Output out(cfg.out);
  out.stream() << proof_to_json(p).dump(2) << '\n';
  return exit_ok;
}

int run_kock(const RunConfig& cfg) {
  require_format(cfg, {Format::text, Format::json});
  CommutativityIdentity source;
  if (cfg.source == "printed") {
    source = stacked_columns_identity();
  } else {
    // The stacked-columns type and the component that contains it.
    RunConfig graph_cfg = cfg;
    graph_cfg.degree = 9;
    const QuotientGraph g = graph_for(graph_cfg);
    const int at = g.shapes().index_of(stacked_columns_identity().left.shape);
    const auto components = connected_components(g);
    const Component* c = nullptr;
    for (const auto& candidate : components)
      if (candidate.contains(at)) c = &candidate;
    if (!c) throw std::logic_error("stacked-columns type is isolated");
    source = extract_identity(g, *c, at).identity;
  }
  const bool exchange = cfg.control != "untransposed";
  const bool with_outer = cfg.control != "no-outer";
  const KockReport r = kock_derivation_check(source, kock_identity(exchange), with_outer);
  Output out(cfg.out);
  auto& os = out.stream();
  const Notation style = notation(cfg);
  if (cfg.format == Format::json) {
    json j{{"success", r.success}, {"message", r.message}};
    if (r.derived.degree) {
      j["derived_left"] = to_string(r.derived.left, style);
      j["derived_right"] = to_string(r.derived.right, style);
    }
    if (r.renaming) {
      json map = json::object();
      for (int v = 1; v <= 16; ++v) map[variable_name(v)] = variable_name(r.renaming->rho(v));
      j["renaming"] = map;
      j["sides_swapped"] = r.renaming->swapped;
    }
    os << j.dump() << '\n';
  } else {
    os << "source:  " << to_string(source.left, style) << " ≡ " << to_string(source.right, style) << '\n';
    if (r.derived.degree)
      os << "derived: " << to_string(r.derived.left, style) << " ≡ " << to_string(r.derived.right, style) << '\n';
    os << (r.success ? "success: " : "failure: ") << r.message << '\n';
    if (r.renaming) {
      os << "renaming:";
      for (int v = 1; v <= 16; ++v) os << ' ' << variable_name(v) << "->" << variable_name(r.renaming->rho(v));
      os << (r.renaming->swapped ? " (sides exchanged)" : "") << '\n';
    }
  }
  return r.success ? exit_ok : exit_failed;
}

int run_count_monomials(const RunConfig& cfg) {
  require_degree(cfg, 2, 10);
  require_format(cfg, {Format::text, Format::json});
  const QuotientGraph g = graph_for(cfg);
  const int isolated = isolated_vertex_count(g);
  const int components = static_cast<int>(connected_components(g).size());
  Output out(cfg.out);
  if (cfg.format == Format::json)
    out.stream() << json{{"degree", g.degree()}, {"isolated", isolated}, {"components", components}, {"monomials", isolated + components}}.dump() << '\n';
  else
    out.stream() << "degree " << g.degree() << ": " << isolated + components << " monomials (" << isolated << " isolated + "
                 << components << " components)\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Association types, interchange graphs and commutativity identities for double semigroups"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "text";

  app.add_option("--degree,-n", cfg.degree, "Degree n");
  app.add_option("--format,-f", format, "Output format")->check(CLI::IsMember({"text", "json", "csv", "dot"}));
  app.add_option("--out,-o", cfg.out, "Output file (default stdout)");
  app.add_option("--cache-dir", cfg.cache_dir, "Graph cache directory (default $DSG_CACHE_DIR or the user cache)");
  app.add_flag("--no-cache", cfg.no_cache, "Always rebuild the graph");
  app.add_option("--workers,-j", cfg.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  app.add_option("--component,-c", cfg.component, "Component id (1-based)");
  app.add_option("--vertex,-v", cfg.vertex, "Type index (1-based)");
  app.add_flag("--ascii", cfg.ascii, "Print o and * instead of ∘ and •");

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"schroeder", "Large Schröder numbers T(1..n)"},
      {"types", "List the association types of degree n in order"},
      {"relations", "Normalized interchange relations NC(n)"},
      {"graph", "Dump the quotient graph G(n)"},
      {"components", "Component census and histograms"},
      {"analyze", "Monodromy of every component"},
      {"identity", "Commutativity identity and proof for a component"},
      {"verify", "Replay a proof file"},
      {"transcribe", "Convert a prose proof into a proof file"},
      {"kock", "Derive Kock's degree-16 identity"},
      {"count-monomials", "Distinct monomials in the free double semigroup"},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help)->fallthrough();
    sub->callback([&cfg, name = std::string(s.name)] { cfg.command = name; });
    if ((std::string(s.name) == "verify" || std::string(s.name) == "transcribe"))
      sub->add_option("file", cfg.input, "Proof file")->required();
    if (std::string(s.name) == "kock") {
      sub->add_option("--source", cfg.source, "Degree-9 identity: extracted from the graph or the printed one")
          ->check(CLI::IsMember({"graph", "printed"}));
      sub->add_option("--control", cfg.control, "Negative control")->check(CLI::IsMember({"untransposed", "no-outer"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }
  cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : format == "dot" ? Format::dot : Format::text;

  try {
    const std::string& c = cfg.command;
    if (c == "schroeder") return run_schroeder(cfg);
    if (c == "types") return run_types(cfg);
    if (c == "relations") return run_relations(cfg);
    if (c == "graph") return run_graph(cfg);
    if (c == "components") return run_components(cfg);
    if (c == "analyze") return run_analyze(cfg);
    if (c == "identity") return run_identity(cfg);
    if (c == "verify") return run_verify(cfg);
    if (c == "transcribe") return run_transcribe(cfg);
    if (c == "kock") return run_kock(cfg);
    if (c == "count-monomials") return run_count_monomials(cfg);
    std::cerr << "error: unknown command\n";
    return exit_usage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failed;
  }
}
