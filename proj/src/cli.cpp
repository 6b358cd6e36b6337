#include "sgk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sgk/atomic.hpp"
#include "sgk/coloring.hpp"
#include "sgk/graph.hpp"
#include "sgk/json_io.hpp"
#include "sgk/path.hpp"
#include "sgk/series.hpp"
#include "sgk/trunc.hpp"

namespace sgk::cli {

namespace {

namespace sj = sgk::json;
using Json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t max_len = 6;
  std::size_t depth = 4;
  double tol = 0.0;
  std::string format = "json";
  unsigned jobs = 1;
};

// Positional and per-command values; only one leaf runs per invocation.
struct Args {
  std::string file;
  std::string file2;
  std::string vertex;
  std::string vertices;
  std::string sources;
  std::string path;
  std::string word;
  std::string prime;
  std::string loop;
  long long grade = 0;
  std::size_t k = 1;
  std::size_t n = 1;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("InvalidJson", path + ": " + e.what());
  }
}

const Json& graph_part(const Json& j) {
  if (j.is_object() && j.contains("vertices")) return j;
  if (j.is_object() && j.contains("graph")) return j.at("graph");
  throw Error("InvalidJson", "document holds no graph");
}

Graph graph_of(const Json& j) { return sj::graph_from_json(graph_part(j)); }

Coloring coloring_of(const Graph& g, const Json& j, const std::string& extra) {
  if (!extra.empty()) return coloring_of(g, read_json(extra), "");
  if (j.is_object() && j.contains("coloring")) return sj::coloring_from_json(g, j.at("coloring"));
  return sj::coloring_from_json(g, j);
}

std::vector<std::string> split_list(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string x; in >> x;) out.push_back(x);
  return out;
}

VertexSet vertex_list(const Graph& g, const std::string& s, bool all_if_empty) {
  VertexSet out;
  for (const auto& id : split_list(s)) out.insert(g.vertex(id));
  if (out.empty() && all_if_empty) {
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) out.insert(v);
  }
  return out;
}

VertexIndex require_vertex(const Graph& g, const std::string& id) {
  if (id.empty()) throw UsageError("--vertex is required");
  return g.vertex(id);
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void generic_table(std::ostream& out, const Json& j) {
  if (!j.is_object()) {
    out << cell(j) << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) out << k << '\t' << cell(v) << '\n';
}

class Runner {
 public:
  Runner(const Options& opt, const Args& args, std::ostream& out)
      : opt_(opt), a_(args), out_(out) {}

  using Table = std::function<void(std::ostream&)>;

  void emit(const Json& j, const Table& table = {}) const {
    if (opt_.format == "json") {
      out_ << j.dump() << '\n';
    } else if (opt_.format == "table") {
      if (table) {
        table(out_);
      } else {
        generic_table(out_, j);
      }
    } else {
      throw UsageError("--format " + opt_.format + " is not supported by this command");
    }
  }

  // graph ------------------------------------------------------------------

  void graph_check() const {
    Json j = read_json(a_.file);
    GraphData d = sj::graph_data_from_json(graph_part(j));
    ValidationReport r = validate_graph(d);
    Json o = sj::to_json(r);
    if (r.valid()) {
      Graph g = Graph::from_data(d);
      if (opt_.format == "dot") {
        out_ << to_dot(g);
        return;
      }
      auto deg = in_degree_regular(g);
      o["vertices"] = g.vertex_count();
      o["edges"] = g.edge_count();
      o["transitive"] = is_transitive(g);
      o["aperiodic"] = is_aperiodic(g);
      o["acyclic"] = is_acyclic(g);
      o["in_degree"] = deg ? Json(*deg) : Json(nullptr);
    } else if (opt_.format == "dot") {
      throw Error("InvalidGraph", "graph failed validation", r.findings);
    }
    emit(o);
  }

  void graph_period() const {
    Graph g = graph_of(read_json(a_.file));
    Json periods = Json::object();
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      if (!a_.vertex.empty() && g.vertex_id(v) != a_.vertex) continue;
      auto p = period(g, v);
      periods[g.vertex_id(v)] = p ? Json(*p) : Json(nullptr);
    }
    if (!a_.vertex.empty()) g.vertex(a_.vertex);
    emit({{"periods", periods}, {"transitive", is_transitive(g)}, {"aperiodic", is_aperiodic(g)}});
  }

  void graph_closure() const {
    Graph g = graph_of(read_json(a_.file));
    VertexSet f = vertex_list(g, a_.vertices, false);
    VertexSet c = directed_closure(g, f);
    Json ids = Json::array();
    for (VertexIndex v : c) ids.push_back(g.vertex_id(v));
    Graph sub = induced_subgraph(g, f);
    if (opt_.format == "dot") {
      out_ << to_dot(sub);
      return;
    }
    emit({{"closure", ids}, {"graph", sj::to_json(sub)}});
  }

  void graph_ses() const {
    Graph g = graph_of(read_json(a_.file));
    SourceElimination s = source_elimination(g);
    if (opt_.format == "dot") {
      out_ << to_dot(s.g0);
      return;
    }
    Json layers = Json::array();
    for (const auto& layer : s.layers) {
      Json ids = Json::array();
      for (VertexIndex v : layer) ids.push_back(g.vertex_id(v));
      layers.push_back(ids);
    }
    Json o = {{"has_ses", s.has_ses}, {"layers", layers}};
    if (!s.has_ses) o["g0"] = sj::to_json(s.g0);
    emit(o);
  }

  // paths ------------------------------------------------------------------

  void path_list(const Graph& g, const std::vector<Path>& paths, Json o) const {
    Json list = Json::array();
    for (const auto& p : paths) list.push_back(sj::to_json(g, p));
    o["count"] = paths.size();
    o["paths"] = list;
    emit(o, [&](std::ostream& out) {
      for (const auto& p : paths) out << p.to_string(g) << '\n';
    });
  }

  void paths_enum() const {
    Graph g = graph_of(read_json(a_.file));
    VertexSet src = vertex_list(g, a_.sources, true);
    path_list(g, enumerate_paths(g, src, opt_.max_len), Json::object());
  }

  void paths_cycles() const {
    Graph g = graph_of(read_json(a_.file));
    VertexIndex v = require_vertex(g, a_.vertex);
    path_list(g, irreducible_cycles_at(g, v, opt_.max_len), {{"vertex", g.vertex_id(v)}});
  }

  void paths_class() const {
    Graph g = graph_of(read_json(a_.file));
    if (!a_.path.empty()) {
      Path w = sj::path_from_string(g, a_.path);
      PrimitiveRoot r = primitive_root(g, w);
      emit({{"path", sj::to_json(g, w)},
            {"root", sj::to_json(g, r.root)},
            {"exponent", r.exponent},
            {"primitive", r.exponent == 1},
            {"canonical", sj::to_json(g, cyclic_canonical_form(g, w))}});
      return;
    }
    VertexIndex v = require_vertex(g, a_.vertex);
    emit({{"vertex", g.vertex_id(v)}, {"class", to_string(vertex_cycle_class(g, v))}});
  }

  // series -----------------------------------------------------------------

  static std::pair<Graph, FormalElement> load_series(const std::string& file) {
    Json j = read_json(file);
    Graph g = sj::graph_from_json(graph_part(j));
    FormalElement a = sj::formal_from_json(g, j);
    return {std::move(g), std::move(a)};
  }

  void series_out(const Graph& g, const FormalElement& a) const {
    Json o = sj::to_json(g, a);
    o["graph"] = sj::to_json(g);
    emit(o, [&](std::ostream& out) {
      for (const auto& [mu, c] : a.terms()) {
        out << mu.to_string(g) << '\t' << c.real() << '\t' << c.imag() << '\n';
      }
    });
  }

  void series_mul() const {
    auto [g, x] = load_series(a_.file);
    auto [h, y] = load_series(a_.file2);
    if (!(g == h)) throw Error("GraphMismatch", "series live on different graphs");
    series_out(g, formal_mul(x, y));
  }

  void series_fourier() const {
    auto [g, x] = load_series(a_.file);
    series_out(g, fourier_coeff(x, a_.grade));
  }

  void series_cesaro() const {
    auto [g, x] = load_series(a_.file);
    if (a_.k == 0) throw Error("InvalidArgument", "--k must be positive");
    series_out(g, cesaro(x, a_.k));
  }

  void series_ideal_degree() const {
    auto [g, x] = load_series(a_.file);
    auto d = graded_ideal_degree(x);
    emit({{"degree", d ? Json(*d) : Json(nullptr)}});
  }

  void series_rownorm() const {
    auto [g, x] = load_series(a_.file);
    VertexIndex v = require_vertex(g, a_.vertex);
    emit({{"grade", a_.grade}, {"vertex", g.vertex_id(v)}, {"norm", l2_row_norm(x, a_.grade, v)}});
  }

  // atomic -----------------------------------------------------------------

  static const Graph& input_graph(const AtomicInput& in) {
    if (const auto* e = std::get_if<ExplicitAtomic>(&in)) return e->graph();
    return std::get<CanonicalFamily>(in).graph;
  }

  static std::string atom_text(const Graph& g, const Atom& atom) {
    return std::visit(
        [&](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, LeftRegularAtom>) {
            return "left_regular " + g.vertex_id(x.vertex);
          } else if constexpr (std::is_same_v<T, CycleAtom>) {
            return "cycle " + x.cycle.to_string(g) + " phase " + x.phase.to_string();
          } else {
            return "tail " + x.cycle.to_string(g);
          }
        },
        atom);
  }

  void atomic_validate() const {
    Json j = read_json(a_.file);
    if (j.is_object() && j.contains("canonical")) {
      CanonicalFamily f = sj::canonical_from_json(j);
      emit({{"valid", true},
            {"canonical", true},
            {"findings", Json::array()},
            {"presentation", sj::to_json(f)}});
      return;
    }
    AtomicData d = sj::atomic_data_from_json(j);
    AtomicValidation v = validate_atomic(d);
    if (opt_.format == "dot") {
      if (!v.structural) throw Error("InvalidAtomic", "presentation failed validation", v.report.findings);
      ExplicitAtomic a = ExplicitAtomic::from_data(d, true);
      out_ << to_dot(build_H(a), a);
      return;
    }
    Json o = sj::to_json(v.report);
    o["structural"] = v.structural;
    o["total"] = v.total;
    o["cuntz_krieger"] = v.cuntz_krieger;
    o["fully_coisometric"] = v.fully_coisometric;
    if (v.structural) o["presentation"] = sj::to_json(ExplicitAtomic::from_data(d, true).to_data());
    emit(o);
  }

  void atomic_classify() const {
    AtomicInput in = sj::atomic_input_from_json(read_json(a_.file));
    const Graph& g = input_graph(in);
    AtomDecomposition d = classify(in);
    emit(sj::to_json(g, d), [&](std::ostream& out) {
      for (const auto& e : d.atoms) {
        out << e.multiplicity.to_string() << '\t' << atom_text(g, e.atom) << '\n';
      }
      for (const auto& n : d.notes) out << "note\t" << n << '\n';
    });
  }

  void atomic_equiv() const {
    AtomicInput x = sj::atomic_input_from_json(read_json(a_.file));
    AtomicInput y = sj::atomic_input_from_json(read_json(a_.file2));
    EquivalenceResult r = are_unitarily_equivalent(x, y);
    emit({{"equivalent", r.equivalent}, {"witness", r.witness}});
  }

  void atomic_wold() const {
    AtomicInput in = sj::atomic_input_from_json(read_json(a_.file));
    const Graph& g = input_graph(in);
    if (const auto* e = std::get_if<ExplicitAtomic>(&in)) {
      emit(sj::to_json(g, wold_atomic(*e), e));
    } else {
      emit(sj::to_json(g, wold_atomic(std::get<CanonicalFamily>(in)), nullptr));
    }
  }

  void atomic_condM() const {
    AtomicInput in = sj::atomic_input_from_json(read_json(a_.file));
    const Graph& g = input_graph(in);
    if (a_.path.empty()) throw UsageError("--path is required");
    Path mu = sj::path_from_string(g, a_.path);
    ConditionMReport r = std::visit([&](const auto& x) { return orbit_condition_M(x, mu); }, in);
    Json o = sj::to_json(r);
    o["path"] = sj::to_json(g, mu);
    emit(o);
  }

  // color ------------------------------------------------------------------

  Json trace_json(const Graph& g, const BackwardAutomaton& a, const ColorWord& w,
                  std::vector<std::string>* rows) const {
    Json trace = Json::object();
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      BackwardTrace t = follow_backward(g, a, v, w);
      trace[g.vertex_id(v)] = {{"source", g.vertex_id(t.source)}, {"path", sj::to_json(g, t.path)}};
      if (rows) {
        rows->push_back(g.vertex_id(v) + '\t' + g.vertex_id(t.source) + '\t' + t.path.to_string(g));
      }
    }
    return trace;
  }

  void color_validate() const {
    Json j = read_json(a_.file);
    Graph g = graph_of(j);
    ColoringValidation v = validate_strong(g, coloring_of(g, j, a_.file2));
    Json o = sj::to_json(v.report);
    o["in_degree_regular"] = v.in_degree_regular;
    emit(o);
  }

  void color_sync_verify() const {
    Json j = read_json(a_.file);
    Graph g = graph_of(j);
    BackwardAutomaton a(g, coloring_of(g, j, a_.file2));
    ColorWord w = parse_word(a_.word);
    auto v = is_synchronizing_word(a, w);
    std::vector<std::string> rows;
    Json trace = trace_json(g, a, w, &rows);
    Json o = {{"word", to_string(w)},
              {"synchronizing", v.has_value()},
              {"vertex", v ? Json(g.vertex_id(*v)) : Json(nullptr)},
              {"trace", trace}};
    emit(o, [&](std::ostream& out) {
      out << "word\t" << to_string(w) << '\n';
      out << "vertex\t" << (v ? g.vertex_id(*v) : "-") << '\n';
      out << "range\tsource\tpath\n";
      for (const auto& r : rows) out << r << '\n';
    });
  }

  void color_sync_find() const {
    Json j = read_json(a_.file);
    Graph g = graph_of(j);
    BackwardAutomaton a(g, coloring_of(g, j, a_.file2));
    auto s = find_synchronizing_word(a);
    if (!s) {
      emit({{"word", nullptr}, {"vertex", nullptr}});
      return;
    }
    Json o = {{"word", to_string(s->word)}, {"vertex", g.vertex_id(s->vertex)}};
    if (!s->shortest) o["shortest"] = false;
    emit(o, [&](std::ostream& out) {
      std::vector<std::string> rows;
      trace_json(g, a, s->word, &rows);
      out << "word\t" << to_string(s->word) << '\n';
      out << "vertex\t" << g.vertex_id(s->vertex) << '\n';
      out << "range\tsource\tpath\n";
      for (const auto& r : rows) out << r << '\n';
    });
  }

  void color_search() const {
    Graph g = graph_of(read_json(a_.file));
    ColoringSearchOptions o;
    o.jobs = std::max(1u, opt_.jobs);
    auto c = search_synchronizing_coloring(g, o);
    if (!c) {
      emit({{"found", false}});
      return;
    }
    auto s = find_synchronizing_word(BackwardAutomaton(g, *c));
    emit({{"found", true},
          {"graph", sj::to_json(g)},
          {"coloring", sj::to_json(g, *c)},
          {"word", to_string(s->word)},
          {"vertex", g.vertex_id(s->vertex)}});
  }

  void color_obrien() const {
    Graph g = graph_of(read_json(a_.file));
    if (a_.loop.empty()) throw UsageError("--loop is required");
    OBrienResult r = obrien_coloring(g, g.edge_index(a_.loop));
    emit({{"graph", sj::to_json(g)},
          {"coloring", sj::to_json(g, r.coloring)},
          {"word", to_string(r.word)},
          {"vertex", g.vertex_id(r.vertex)},
          {"depth", r.depth}});
  }

  void color_syncdiag() const {
    Json j = read_json(a_.file);
    Graph g = graph_of(j);
    Coloring c = coloring_of(g, j, a_.file2);
    VertexIndex v = require_vertex(g, a_.vertex);
    Path lambda = syncdiag_paths(g, c, parse_word(a_.word), v, parse_word(a_.prime));
    emit({{"lambda", sj::to_json(g, lambda)}, {"color_word", to_string(color_word(c, lambda))}});
  }

  // trunc ------------------------------------------------------------------

  TruncatedRep load_rep() const {
    Json j = read_json(a_.file);
    if (j.is_object() && j.contains("lambda")) {
      return build_atomic_rep(ExplicitAtomic::from_data(sj::atomic_data_from_json(j)));
    }
    if (j.is_object() && j.contains("canonical")) {
      return build_atomic_rep(materialize(sj::canonical_from_json(j), opt_.depth));
    }
    Graph g = graph_of(j);
    if (j.is_object() && (j.contains("coloring") || j.contains("color") || !a_.file2.empty())) {
      return build_colored_trunc(g, coloring_of(g, j, a_.file2), opt_.depth);
    }
    return build_left_regular_trunc(g, vertex_list(g, a_.sources, true), opt_.depth);
  }

  void coo_dump(const TruncatedRep& rep) const {
    const Graph& g = rep.graph;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
      out_ << "# S_" << g.vertex_id(v) << '\n' << rep.vertex_ops[v].to_coo();
    }
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      out_ << "# S_" << g.edge(e).id << '\n' << rep.edge_ops[e].to_coo();
    }
  }

  void trunc_build() const {
    TruncatedRep rep = load_rep();
    if (opt_.format == "coo") {
      coo_dump(rep);
      return;
    }
    Json nnz = Json::object();
    for (VertexIndex v = 0; v < rep.graph.vertex_count(); ++v) {
      nnz[rep.graph.vertex_id(v)] = rep.vertex_ops[v].nonzeros();
    }
    for (EdgeIndex e = 0; e < rep.graph.edge_count(); ++e) {
      nnz[rep.graph.edge(e).id] = rep.edge_ops[e].nonzeros();
    }
    emit({{"kind", to_string(rep.kind)},
          {"depth", rep.depth},
          {"exact", rep.exact},
          {"dim", rep.dim()},
          {"labels", rep.labels},
          {"nonzeros", nnz}});
  }

  void trunc_verify() const {
    TruncatedRep rep = load_rep();
    std::vector<RelationReport> reports = verify_tck(rep);
    Json rel = Json::array();
    for (const auto& r : reports) {
      Json x = sj::to_json(r);
      x["holds"] = r.holds(opt_.tol);
      rel.push_back(x);
    }
    emit({{"kind", to_string(rep.kind)}, {"depth", rep.depth}, {"dim", rep.dim()}, {"relations", rel}},
         [&](std::ostream& out) {
           out << "id\tdepth\tresidual\tholds\taxiom\n";
           for (const auto& r : reports) {
             out << r.id << '\t' << r.depth << '\t' << r.residual << '\t'
                 << (r.holds(opt_.tol) ? "yes" : "no") << '\t' << (r.axiom ? "yes" : "no") << '\n';
           }
         });
  }

  void trunc_cycle_lemma() const {
    CycleLemmaReport r = cycle_lemma_check(a_.n, opt_.depth);
    emit({{"n", a_.n},
          {"depth", opt_.depth},
          {"ok", r.ok},
          {"residual", r.residual},
          {"block_sizes", r.block_sizes},
          {"detail", r.detail}});
  }

  void trunc_apply() const {
    auto [g, x] = load_series(a_.file);
    TruncatedRep rep = build_left_regular_trunc(g, vertex_list(g, a_.sources, true), opt_.depth);
    SparseMatrix m = apply_formal(rep, x);
    if (opt_.format == "coo") {
      out_ << m.to_coo();
      return;
    }
    Json entries = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (const auto& [r, v] : m.column(c)) entries.push_back({r, c, v.real(), v.imag()});
    }
    emit({{"dim", rep.dim()}, {"labels", rep.labels}, {"entries", entries}});
  }

 private:
  const Options& opt_;
  const Args& a_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path spaces, atomic TCK families, road colourings and truncations", "sgk"};
  app.require_subcommand(1);
  Options opt;
  Args a;
  app.add_option("--max-len", opt.max_len, "Longest path length for enumerations")
      ->capture_default_str();
  app.add_option("--depth", opt.depth, "Truncation depth N")->capture_default_str();
  app.add_option("--tol", opt.tol, "Residual tolerance for relation checks")->capture_default_str();
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "table", "dot", "coo"}))
      ->capture_default_str();
  app.add_option("--jobs", opt.jobs, "Worker threads for searches")->capture_default_str();

  Runner runner(opt, a, out);
  std::function<void()> action;

  auto group = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->require_subcommand(1);
    s->fallthrough();
    return s;
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* desc,
                  void (Runner::*fn)() const) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    s->callback([&action, &runner, fn] { action = [&runner, fn] { (runner.*fn)(); }; });
    return s;
  };
  auto file = [&](CLI::App* s) { s->add_option("file", a.file, "Input JSON")->required(); };
  auto file_and_coloring = [&](CLI::App* s) {
    file(s);
    s->add_option("coloring", a.file2, "Coloring JSON (when not embedded)");
  };

  CLI::App* graph = group("graph", "Graph checks and procedures");
  file(leaf(graph, "check", "Validate a graph", &Runner::graph_check));
  {
    CLI::App* s = leaf(graph, "period", "Period of each vertex", &Runner::graph_period);
    file(s);
    s->add_option("--vertex", a.vertex, "Only this vertex");
  }
  {
    CLI::App* s = leaf(graph, "closure", "Directed closure of a vertex set", &Runner::graph_closure);
    file(s);
    s->add_option("--vertices", a.vertices, "Comma-separated vertex ids")->required();
  }
  file(leaf(graph, "ses", "Source elimination", &Runner::graph_ses));

  CLI::App* paths = group("paths", "Path enumeration and cycles");
  {
    CLI::App* s = leaf(paths, "enum", "Enumerate paths", &Runner::paths_enum);
    file(s);
    s->add_option("--sources", a.sources, "Comma-separated source vertices (default all)");
  }
  {
    CLI::App* s = leaf(paths, "cycles", "Irreducible cycles at a vertex", &Runner::paths_cycles);
    file(s);
    s->add_option("--vertex", a.vertex, "Vertex")->required();
  }
  {
    CLI::App* s = leaf(paths, "class", "Cycle class of a vertex, or primitive root of a cycle",
                       &Runner::paths_class);
    file(s);
    s->add_option("--vertex", a.vertex, "Vertex");
    s->add_option("--path", a.path, "Cycle as edge ids in written order");
  }

  CLI::App* series = group("series", "Formal series calculus");
  {
    CLI::App* s = leaf(series, "mul", "Product of two series", &Runner::series_mul);
    file(s);
    s->add_option("other", a.file2, "Second series")->required();
  }
  {
    CLI::App* s = leaf(series, "fourier", "Grade-m part", &Runner::series_fourier);
    file(s);
    s->add_option("--grade", a.grade, "Grade m")->required();
  }
  {
    CLI::App* s = leaf(series, "cesaro", "Cesaro mean", &Runner::series_cesaro);
    file(s);
    s->add_option("--k", a.k, "Order k")->required();
  }
  file(leaf(series, "ideal-degree", "Graded ideal degree", &Runner::series_ideal_degree));
  {
    CLI::App* s = leaf(series, "rownorm", "Row norm of a grade at a vertex", &Runner::series_rownorm);
    file(s);
    s->add_option("--grade", a.grade, "Grade m")->required();
    s->add_option("--vertex", a.vertex, "Vertex")->required();
  }

  CLI::App* atomic = group("atomic", "Atomic families");
  file(leaf(atomic, "validate", "Validate a presentation", &Runner::atomic_validate));
  file(leaf(atomic, "classify", "Decompose into irreducible atoms", &Runner::atomic_classify));
  {
    CLI::App* s = leaf(atomic, "equiv", "Unitary equivalence", &Runner::atomic_equiv);
    file(s);
    s->add_option("other", a.file2, "Second family")->required();
  }
  file(leaf(atomic, "wold", "Wold multiplicities", &Runner::atomic_wold));
  {
    CLI::App* s = leaf(atomic, "condM", "Orbit analysis of a cycle", &Runner::atomic_condM);
    file(s);
    s->add_option("--path", a.path, "Cycle as edge ids in written order")->required();
  }

  CLI::App* color = group("color", "Strong colourings and synchronizing words");
  file_and_coloring(leaf(color, "validate", "Validate a colouring", &Runner::color_validate));
  {
    CLI::App* s = leaf(color, "sync-verify", "Check a word", &Runner::color_sync_verify);
    file_and_coloring(s);
    s->add_option("--word", a.word, "Colour word")->required();
  }
  file_and_coloring(leaf(color, "sync-find", "Shortest synchronizing word", &Runner::color_sync_find));
  file(leaf(color, "search", "Search for a synchronizing colouring", &Runner::color_search));
  {
    CLI::App* s = leaf(color, "obrien", "Colouring from a loop", &Runner::color_obrien);
    file(s);
    s->add_option("--loop", a.loop, "Loop edge id")->required();
  }
  {
    CLI::App* s = leaf(color, "syncdiag", "Cycle lambda = mu' mu", &Runner::color_syncdiag);
    file_and_coloring(s);
    s->add_option("--word", a.word, "Synchronizing word gamma")->required();
    s->add_option("--vertex", a.vertex, "Synchronizing vertex")->required();
    s->add_option("--prime", a.prime, "Prefix word gamma'")->required();
  }

  CLI::App* trunc = group("trunc", "Matrix truncations");
  {
    CLI::App* s = leaf(trunc, "build", "Build a truncation", &Runner::trunc_build);
    file_and_coloring(s);
    s->add_option("--sources", a.sources, "Source vertices for left-regular truncations");
  }
  {
    CLI::App* s = leaf(trunc, "verify", "Check the relations", &Runner::trunc_verify);
    file_and_coloring(s);
    s->add_option("--sources", a.sources, "Source vertices for left-regular truncations");
  }
  {
    CLI::App* s = leaf(trunc, "cycle-lemma", "Block identification on C_n", &Runner::trunc_cycle_lemma);
    s->add_option("--n", a.n, "Cycle length")->required();
  }
  {
    CLI::App* s = leaf(trunc, "apply", "Matrix of a series", &Runner::trunc_apply);
    file(s);
    s->add_option("--sources", a.sources, "Source vertices (default all)");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!action) {
    err << "no command selected\n";
    return 2;
  }
  try {
    action();
    return 0;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << sj::to_json(e).dump() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << Json{{"error", "InvalidJson"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}

}  // namespace sgk::cli
