#include "sgk/json_io.hpp"

#include <sstream>

namespace sgk::json {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error("InvalidJson", msg); }

const json& req(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + " must be a string");
  return j.get<std::string>();
}

// Runs a parser, turning library type errors into InvalidJson.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

json atom_json(const Graph& g, const Atom& atom) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LeftRegularAtom>) {
          return {{"type", "left_regular"}, {"vertex", g.vertex_id(x.vertex)}};
        } else if constexpr (std::is_same_v<T, CycleAtom>) {
          return {{"type", "cycle"}, {"cycle", to_json(g, x.cycle)}, {"phase", to_json(x.phase)}};
        } else {
          return {{"type", "tail"}, {"cycle", to_json(g, x.cycle)}};
        }
      },
      atom);
}

Multiplicity multiplicity_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "omega") return Multiplicity::omega();
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    bad("multiplicity must be a positive integer or \"omega\"");
  }
  return {j.get<std::uint64_t>(), false};
}

CanonicalAtomic canonical_atomic_from_json(const Graph& g, const json& j) {
  const std::string type = str(req(j, "type"), "type");
  if (type == "left_regular") {
    return {LeftRegular{g.vertex(str(req(j, "vertex"), "vertex"))}};
  }
  if (type == "cycle" || type == "tail") {
    Path w = path_from_json(g, req(j, "cycle"));
    if (!w.is_cycle()) throw Error("NotACycle", type + " family needs a cycle");
    if (type == "tail") return {Tail{w}};
    Phase lambda = j.contains("phase") ? phase_from_json(j.at("phase")) : Phase{};
    return {CycleType{w, lambda}};
  }
  if (type == "direct_sum") {
    DirectSum sum;
    for (const json& s : req(j, "summands")) {
      Multiplicity m =
          s.contains("multiplicity") ? multiplicity_from_json(s.at("multiplicity")) : Multiplicity{1};
      sum.summands.push_back({m, canonical_atomic_from_json(g, req(s, "family"))});
    }
    return {sum};
  }
  bad("unknown canonical family type \"" + type + "\"");
}

}  // namespace

GraphData graph_data_from_json(const json& j) {
  return guarded([&] {
    GraphData g;
    for (const json& v : req(j, "vertices")) g.vertices.push_back(str(v, "vertex id"));
    for (const json& e : req(j, "edges")) {
      g.edges.push_back({str(req(e, "id"), "edge id"), str(req(e, "src"), "src"),
                         str(req(e, "dst"), "dst")});
    }
    return g;
  });
}

json to_json(const GraphData& g) {
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({{"id", e.id}, {"src", e.src}, {"dst", e.dst}});
  return {{"vertices", g.vertices}, {"edges", edges}};
}

Graph graph_from_json(const json& j) { return Graph::from_data(graph_data_from_json(j)); }

json to_json(const Graph& g) { return to_json(g.to_data()); }

ColorWord word_from_json(const json& j) { return parse_word(str(j, "word")); }

Path path_from_json(const Graph& g, const json& j) {
  return guarded([&] {
    std::vector<EdgeIndex> edges;
    if (j.contains("edges")) {
      for (const json& e : j.at("edges")) edges.push_back(g.edge_index(str(e, "edge id")));
    }
    if (edges.empty()) return Path(g.vertex(str(req(j, "base"), "base")));
    Path p = Path::from_edges(g, std::move(edges));
    if (j.contains("base") && g.vertex(str(j.at("base"), "base")) != p.source()) {
      throw Error("NotComposable", "base vertex is not the source of the path");
    }
    return p;
  });
}

json to_json(const Graph& g, const Path& mu) {
  json edges = json::array();
  for (EdgeIndex e : mu.edges()) edges.push_back(g.edge(e).id);
  return {{"base", g.vertex_id(mu.source())}, {"edges", edges}};
}

Path path_from_string(const Graph& g, const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.empty()) throw Error("InvalidArgument", "empty path");
  if (tokens.size() == 1 && g.find_vertex(tokens[0])) return Path(g.vertex(tokens[0]));
  std::vector<EdgeIndex> edges;
  for (const auto& t : tokens) edges.push_back(g.edge_index(t));
  return Path::from_edges(g, std::move(edges));
}

Phase phase_from_json(const json& j) {
  return guarded([&] {
    if (j.contains("num")) {
      return Phase::turn(req(j, "num").get<std::int64_t>(), req(j, "den").get<std::int64_t>());
    }
    return Phase::approx({req(j, "re").get<double>(), req(j, "im").get<double>()});
  });
}

json to_json(const Phase& p) {
  if (p.is_exact()) return {{"num", p.num()}, {"den", p.den()}};
  return {{"re", p.value().real()}, {"im", p.value().imag()}};
}

FormalElement formal_from_json(const Graph& g, const json& j) {
  return guarded([&] {
    FormalElement a;
    for (const json& t : req(j, "terms")) {
      double re = t.contains("re") ? t.at("re").get<double>() : 0.0;
      double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
      a.add(path_from_json(g, req(t, "path")), {re, im});
    }
    return a;
  });
}

json to_json(const Graph& g, const FormalElement& a) {
  json terms = json::array();
  for (const auto& [mu, c] : a.terms()) {
    terms.push_back({{"path", to_json(g, mu)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"terms", terms}};
}

AtomicData atomic_data_from_json(const json& j) {
  return guarded([&] {
    AtomicData a;
    a.graph = graph_data_from_json(req(j, "graph"));
    const json& lambda = req(j, "lambda");
    if (!lambda.is_object()) bad("lambda must map vertex ids to index lists");
    for (const auto& [v, list] : lambda.items()) {
      auto& slot = a.lambda[v];
      for (const json& i : list) slot.push_back(str(i, "index label"));
    }
    if (j.contains("pi")) {
      for (const json& p : j.at("pi")) {
        a.pi.push_back({str(req(p, "edge"), "edge"), str(req(p, "from"), "from"),
                        str(req(p, "to"), "to")});
      }
    }
    if (j.contains("phase")) {
      for (const json& p : j.at("phase")) {
        Phase z = p.contains("angle")   ? phase_from_json(p.at("angle"))
                  : p.contains("value") ? phase_from_json(p.at("value"))
                                        : (bad("phase entry needs \"angle\" or \"value\""), Phase{});
        a.phase.push_back({str(req(p, "edge"), "edge"), str(req(p, "from"), "from"), z});
      }
    }
    return a;
  });
}

json to_json(const AtomicData& a) {
  json lambda = json::object();
  for (const auto& [v, list] : a.lambda) lambda[v] = list;
  json pi = json::array();
  for (const auto& p : a.pi) pi.push_back({{"edge", p.edge}, {"from", p.from}, {"to", p.to}});
  json phase = json::array();
  for (const auto& p : a.phase) {
    json e = {{"edge", p.edge}, {"from", p.from}};
    e[p.phase.is_exact() ? "angle" : "value"] = to_json(p.phase);
    phase.push_back(e);
  }
  return {{"graph", to_json(a.graph)}, {"lambda", lambda}, {"pi", pi}, {"phase", phase}};
}

CanonicalFamily canonical_from_json(const json& j) {
  return guarded([&] {
    Graph g = graph_from_json(req(j, "graph"));
    CanonicalAtomic f = canonical_atomic_from_json(g, req(j, "canonical"));
    return CanonicalFamily{std::move(g), std::move(f)};
  });
}

json to_json(const Graph& g, const CanonicalAtomic& f) {
  return std::visit(
      [&](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LeftRegular>) {
          return {{"type", "left_regular"}, {"vertex", g.vertex_id(x.vertex)}};
        } else if constexpr (std::is_same_v<T, CycleType>) {
          return {{"type", "cycle"}, {"cycle", to_json(g, x.cycle)}, {"phase", to_json(x.phase)}};
        } else if constexpr (std::is_same_v<T, Tail>) {
          return {{"type", "tail"}, {"cycle", to_json(g, x.cycle)}};
        } else {
          json summands = json::array();
          for (const auto& s : x.summands) {
            summands.push_back(
                {{"multiplicity", to_json(s.multiplicity)}, {"family", to_json(g, s.family)}});
          }
          return {{"type", "direct_sum"}, {"summands", summands}};
        }
      },
      f.kind);
}

json to_json(const CanonicalFamily& f) {
  return {{"graph", to_json(f.graph)}, {"canonical", to_json(f.graph, f.family)}};
}

AtomicInput atomic_input_from_json(const json& j) {
  if (j.is_object() && j.contains("canonical")) return canonical_from_json(j);
  return ExplicitAtomic::from_data(atomic_data_from_json(j), true);
}

Coloring coloring_from_json(const Graph& g, const json& j) {
  return guarded([&] {
    Coloring c;
    const json& d = req(j, "d");
    if (!d.is_number_unsigned() || d.get<unsigned>() == 0) bad("d must be a positive integer");
    c.d = d.get<unsigned>();
    c.color.assign(g.edge_count(), 0);
    const json& colors = req(j, "color");
    if (!colors.is_object()) bad("color must map edge ids to colours");
    for (const auto& [e, k] : colors.items()) {
      if (!k.is_number_unsigned()) bad("colour of " + e + " must be a positive integer");
      c.color[g.edge_index(e)] = k.get<unsigned>();
    }
    return c;
  });
}

json to_json(const Graph& g, const Coloring& c) {
  json colors = json::object();
  for (EdgeIndex e = 0; e < g.edge_count() && e < c.color.size(); ++e) {
    colors[g.edge(e).id] = c.color[e];
  }
  return {{"d", c.d}, {"color", colors}};
}

json to_json(const ValidationReport& r) {
  json findings = json::array();
  for (const auto& f : r.findings) findings.push_back({{"clause", f.clause}, {"message", f.message}});
  return {{"valid", r.valid()}, {"findings", findings}};
}

json to_json(const Error& e) {
  json findings = json::array();
  for (const auto& f : e.findings()) findings.push_back({{"clause", f.clause}, {"message", f.message}});
  std::string msg = e.what();
  const std::string prefix = e.kind() + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  json out = {{"error", e.kind()}, {"message", msg}};
  if (!findings.empty()) out["findings"] = findings;
  return out;
}

json to_json(const Graph& g, const AtomDecomposition& d) {
  json atoms = json::array();
  for (const auto& entry : d.atoms) {
    json a = atom_json(g, entry.atom);
    a["multiplicity"] = to_json(entry.multiplicity);
    atoms.push_back(a);
  }
  return {{"atoms", atoms}, {"notes", d.notes}};
}

json to_json(const Graph& g, const WoldReport& w, const ExplicitAtomic* a) {
  json alpha = json::object();
  json attached = json::object();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    alpha[g.vertex_id(v)] = to_json(w.alpha[v]);
    attached[g.vertex_id(v)] = to_json(w.attached[v]);
  }
  json remainder = json::array();
  if (a) {
    for (NodeIndex n : w.remainder) {
      remainder.push_back(g.vertex_id(a->node_vertex(n)) + ":" + a->node_label(n));
    }
  }
  return {{"alpha", alpha},
          {"attached", attached},
          {"remainder", remainder},
          {"supported_on_g0", w.supported_on_g0}};
}

json to_json(const ConditionMReport& r) {
  return {{"verdict", to_string(r.verdict)}, {"orbit_sizes", r.orbit_sizes}, {"detail", r.detail}};
}

json to_json(const RelationReport& r) {
  json out = {{"id", r.id},
              {"depth", r.depth},
              {"residual", r.residual},
              {"exact_zero", r.exact_zero},
              {"axiom", r.axiom}};
  if (r.worst_column) out["worst_column"] = *r.worst_column;
  return out;
}

json to_json(const Multiplicity& m) {
  if (m.infinite) return "omega";
  return m.count;
}

}  // namespace sgk::json
