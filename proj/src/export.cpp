#include "gvm/export.hpp"

#include <set>
#include <sstream>

namespace gvm {

Json to_json(const Interval& i) { return Json::array({to_string(i.lo()), to_string(i.hi())}); }

Json to_json(const Box& b) {
  Json coords = Json::object();
  for (const auto& [j, itv] : b.coords()) coords[std::to_string(j)] = to_json(itv);
  return Json{{"cell", b.cell()}, {"coords", coords}};
}

Json to_json(const MeasurableSet& s) {
  Json out = Json::array();
  for (const auto& b : s.boxes()) out.push_back(to_json(b));
  return out;
}

Json to_json(const Realizer& r) {
  Json perm = Json::array();
  for (const auto& [i, j] : r.perm()) perm.push_back(Json::array({i, j}));
  Json offsets = Json::object();
  for (const auto& [j, c] : r.offsets()) offsets[std::to_string(j)] = to_string(c);
  return Json{{"text", to_string(r)}, {"shift", r.shift()}, {"perm", perm}, {"offsets", offsets}};
}

Json to_json(const Weight& w) {
  if (w.is_rational()) return to_string(w.rational());
  return Json{{"element", w.index()}};
}

Json to_json(const Masses& m) {
  return Json{{"accept", to_string(m.accept)},
              {"reject", to_string(m.reject)},
              {"looping", to_string(m.looping)},
              {"partial", to_string(m.partial)}};
}

std::vector<Json> graphing_records(const Graphing& g, const std::string& label) {
  std::vector<Json> out;
  out.push_back(Json{{"type", "graphing"},
                     {"label", label},
                     {"weights", to_string(g.weights)},
                     {"microcosm", to_string(g.microcosm)},
                     {"class", to_string(classify(g))},
                     {"cost", to_string(cost(g))},
                     {"edges", g.edges.size()},
                     {"carrier", to_json(g.carrier)}});
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    Json rec{{"type", "edge"}, {"graphing", label}, {"index", k}, {"weight", to_json(e.weight)},
             {"source", to_json(e.source)}, {"realizer", to_json(e.realizer)}};
    if (domain_of(e.realizer, e.source) == e.source) rec["target"] = to_json(e.target());
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

Json to_json(const StepSequence& steps) {
  Json out = Json::array();
  for (const auto& s : steps) out.push_back(Json{{"side", s.side == Side::F ? "F" : "G"}, {"edge", s.edge}});
  return out;
}

}  // namespace

std::vector<Json> trace_records(const Graphing& f, const Graphing& g, const PlugResult& result) {
  std::vector<Json> out;
  for (std::size_t k = 0; k < result.graphing.edges.size(); ++k) {
    const Edge& e = result.graphing.edges[k];
    const StepSequence& steps = result.paths[k];
    auto regions = replay(f, g, steps, e.source);
    Json visited = Json::array();
    for (std::size_t s = 0; s < steps.size(); ++s)
      visited.push_back(Json{{"side", steps[s].side == Side::F ? "F" : "G"},
                             {"edge", steps[s].edge},
                             {"domain", to_json(regions[s])}});
    out.push_back(Json{{"type", "path"},
                       {"index", k},
                       {"length", steps.size()},
                       {"weight", to_json(e.weight)},
                       {"source", to_json(e.source)},
                       {"target", to_json(e.target())},
                       {"realizer", to_json(e.realizer)},
                       {"steps", visited}});
  }
  for (const auto& u : result.unresolved)
    out.push_back(Json{{"type", "unresolved"},
                       {"kind", u.kind == UnresolvedKind::Looping ? "looping" : "partial"},
                       {"weight", to_json(u.weight)},
                       {"origin", to_json(u.origin)},
                       {"steps", to_json(u.steps)}});
  return out;
}

Json to_json(const TreeingCost& c) {
  Json partials = Json::array();
  Json masses = Json::array();
  Json closed = Json::array();
  for (std::size_t d = 0; d < c.partials.size(); ++d) {
    partials.push_back(to_string(c.partials[d]));
    masses.push_back(to_string(c.level_mass[d]));
    closed.push_back(to_string(treeing_closed_form(c.i, d)));
  }
  return Json{{"type", "treeing_cost"},
              {"i", c.i},
              {"depth", c.depth},
              {"partial", to_string(c.partial)},
              {"total", to_string(c.exact_total)},
              {"partials", partials},
              {"closed_form", closed},
              {"level_mass", masses}};
}

Json to_json(const CompileSearch& s) {
  Json out{{"compilable", s.witness.has_value()}, {"words_exhausted", s.words_exhausted}};
  if (s.witness) {
    Json parts = Json::array();
    for (std::size_t p = 0; p < s.witness->partition.size(); ++p)
      parts.push_back(Json{{"part", to_json(s.witness->partition[p])}, {"word", to_string(s.witness->words[p])}});
    out["witness"] = parts;
  } else {
    out["result"] = "no witness within bounds";
  }
  return out;
}

Json to_json(const SeparationReport& r) {
  return Json{{"type", "separation"},
              {"i", r.i},
              {"j", r.j},
              {"label", r.label},
              {"max_word_len", r.bounds.max_word_len},
              {"max_parts", r.bounds.max_parts},
              {"s_j_in_m_i", to_json(r.forward)},
              {"s_i_in_m_j", to_json(r.backward)},
              {"total_i", to_string(r.total_i)},
              {"total_j", to_string(r.total_j)},
              {"costs_differ", r.costs_differ}};
}

Json to_json(const ClosureReport& r) {
  return Json{{"type", "closure"},
              {"class", to_string(r.cls)},
              {"seed", r.seed},
              {"wanted", r.wanted},
              {"attempts", r.attempts},
              {"clean", r.clean},
              {"preserved", r.preserved},
              {"failures", r.failures},
              {"passed", r.passed()}};
}

Json to_json(const AssociativityReport& r) {
  return Json{{"type", "associativity"},
              {"seed", r.seed},
              {"wanted", r.wanted},
              {"attempts", r.attempts},
              {"clean", r.clean},
              {"equal", r.equal},
              {"failures", r.failures},
              {"passed", r.passed()}};
}

void write_lines(std::ostream& os, const std::vector<Json>& records) {
  for (const auto& r : records) os << r.dump() << "\n";
}

std::set<Step> accepting_steps(const PlugResult& result, const TestRegions& regions) {
  std::set<Step> out;
  for (std::size_t k = 0; k < result.graphing.edges.size(); ++k) {
    const Edge& e = result.graphing.edges[k];
    MeasurableSet start = intersect(e.source, regions.initial);
    if (start.empty()) continue;
    if (!intersects(apply(e.realizer, start), regions.accept)) continue;
    out.insert(result.paths[k].begin(), result.paths[k].end());
  }
  return out;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string run_dot(const MachineSpec& spec, const Graphing& machine, const Run& run) {
  TapeLayout layout = TapeLayout::for_machine(spec);
  auto bold = accepting_steps(run.result, run.word.regions);
  auto name = [&](Cell c) { return layout.region_name(c, spec.states); };

  std::set<Cell> cells;
  struct Line {
    Cell from, to;
    std::string attrs;
  };
  std::vector<Line> lines;
  auto add = [&](const Graphing& g, Side side) {
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
      const Edge& e = g.edges[k];
      std::set<std::pair<Cell, Cell>> pairs;
      for (const auto& b : e.source.boxes()) pairs.emplace(b.cell(), b.cell() + e.realizer.shift());
      for (const auto& [from, to] : pairs) {
        cells.insert(from);
        cells.insert(to);
        std::vector<std::string> style;
        if (!e.realizer.perm().empty()) style.push_back("dashed");
        if (bold.count(Step{side, k})) style.push_back("bold");
        std::string attrs = side == Side::F ? "color=black" : "color=gray50";
        if (side == Side::G && !e.source.boxes().empty()) {
          Interval slice = e.source.boxes().front().interval(1);
          attrs += ", label=" + quote("[" + to_string(slice.lo()) + "," + to_string(slice.hi()) + ")");
        }
        if (!style.empty()) {
          std::string joined;
          for (const auto& s : style) joined += (joined.empty() ? "" : ",") + s;
          attrs += ", style=" + quote(joined);
        }
        lines.push_back({from, to, attrs});
      }
    }
  };
  add(machine, Side::F);
  add(run.word.graphing, Side::G);

  std::ostringstream os;
  os << "digraph " << quote(spec.name.empty() ? "run" : spec.name) << " {\n";
  os << "  label=" << quote("input *" + run.word.word) << ";\n";
  os << "  node [shape=box];\n";
  for (Cell c : cells) os << "  " << quote(name(c)) << ";\n";
  for (const auto& l : lines) os << "  " << quote(name(l.from)) << " -> " << quote(name(l.to)) << " [" << l.attrs << "];\n";
  os << "}\n";
  return os.str();
}

bool dot_has_bold(const std::string& dot) { return dot.find("bold") != std::string::npos; }

}  // namespace gvm
