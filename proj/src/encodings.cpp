#include "gvm/encodings.hpp"

#include <algorithm>
#include <stdexcept>

namespace gvm {

TapeLayout::TapeLayout(std::string alphabet, std::size_t rows, CoordIndex heads)
    : alphabet_(std::move(alphabet)), rows_(rows), heads_(heads) {
  if (rows_ < 1) throw std::invalid_argument("layout needs at least one row");
  if (heads_ < 1) throw std::invalid_argument("layout needs at least one head");
  if (alphabet_.find(kEndMarker) != std::string::npos)
    throw std::invalid_argument("the end marker is not an input symbol");
}

TapeLayout TapeLayout::for_machine(const MachineSpec& spec) {
  return TapeLayout(spec.alphabet, spec.states.size(), spec.heads);
}

std::size_t TapeLayout::symbol_index(char symbol) const {
  if (symbol == kEndMarker) return 0;
  auto pos = alphabet_.find(symbol);
  if (pos == std::string::npos) throw std::invalid_argument(std::string("symbol '") + symbol + "' not in alphabet");
  return pos + 1;
}

char TapeLayout::symbol_at(std::size_t index) const { return index == 0 ? kEndMarker : alphabet_.at(index - 1); }

Cell TapeLayout::cell(char symbol, Port port, std::size_t row) const {
  return static_cast<Cell>(row) * row_stride() + static_cast<Cell>(2 * symbol_index(symbol)) +
         (port == Port::Out ? 1 : 0);
}

Cell TapeLayout::accept_cell(std::size_t row) const {
  return static_cast<Cell>(row) * row_stride() + static_cast<Cell>(2 * symbol_count());
}

Cell TapeLayout::reject_cell(std::size_t row) const { return accept_cell(row) + 1; }

std::optional<TapeLayout::Region> TapeLayout::region_of(Cell c) const {
  if (c < 0 || c >= static_cast<Cell>(rows_) * row_stride()) return std::nullopt;
  Region r{};
  r.row = static_cast<std::size_t>(c / row_stride());
  Cell offset = c % row_stride();
  auto k = static_cast<std::size_t>(offset / 2);
  if (k < symbol_count()) {
    r.kind = Region::Kind::Symbol;
    r.symbol = symbol_at(k);
    r.port = offset % 2 ? Port::Out : Port::In;
  } else {
    r.kind = offset % 2 ? Region::Kind::Reject : Region::Kind::Accept;
  }
  return r;
}

std::string TapeLayout::region_name(Cell c, const std::vector<std::string>& row_names) const {
  auto r = region_of(c);
  if (!r) return "cell" + std::to_string(c);
  std::string name;
  switch (r->kind) {
    case Region::Kind::Symbol: name = std::string(1, r->symbol) + (r->port == Port::In ? "i" : "o"); break;
    case Region::Kind::Accept: name = "accept"; break;
    case Region::Kind::Reject: name = "reject"; break;
  }
  if (r->row < row_names.size()) return name + "@" + row_names[r->row];
  if (rows_ > 1) return name + "@" + std::to_string(r->row);
  return name;
}

MeasurableSet TapeLayout::symbol_cells() const {
  std::vector<Box> boxes;
  for (std::size_t row = 0; row < rows_; ++row)
    for (std::size_t k = 0; k < symbol_count(); ++k)
      for (Port p : {Port::In, Port::Out}) boxes.emplace_back(cell(symbol_at(k), p, row));
  return MeasurableSet(std::move(boxes));
}

MeasurableSet TapeLayout::all_cells() const {
  std::vector<Box> boxes = symbol_cells().boxes();
  for (std::size_t row = 0; row < rows_; ++row) {
    boxes.emplace_back(accept_cell(row));
    boxes.emplace_back(reject_cell(row));
  }
  return MeasurableSet(std::move(boxes));
}

WordEncoding encode_word(const std::string& word, const TapeLayout& layout, bool one_way) {
  for (char c : word) layout.symbol_index(c);
  const auto n = static_cast<std::int64_t>(word.size());
  const Rational width = rat(1, n + 1);
  auto symbol = [&](std::int64_t p) { return p == 0 ? kEndMarker : word[static_cast<std::size_t>(p - 1)]; };
  auto slice = [&](std::int64_t p) {
    Rational lo = width * p;
    Rational hi = width * (p + 1);
    return Interval(lo, hi);
  };

  WordEncoding enc;
  enc.word = word;
  enc.one_way = one_way;
  Graphing& g = enc.graphing;
  g.weights = WeightMonoid::trivial();
  g.microcosm = Microcosm::macrocosm();
  g.carrier = layout.symbol_cells();

  std::vector<Edge> backward;
  for (std::size_t row = 0; row < layout.rows(); ++row) {
    for (std::int64_t p = 0; p <= n; ++p) {
      std::int64_t q = (p + 1) % (n + 1);
      Cell from = layout.cell(symbol(p), Port::Out, row);
      Cell to = layout.cell(symbol(q), Port::In, row);
      Realizer r(to - from, {}, {{1, width * (q - p)}});
      MeasurableSet source{Box(from, {{1, slice(p)}})};
      Edge forward{Weight(), source, r};
      if (!one_way) backward.push_back(Edge{Weight(), forward.target(), invert(r)});
      g.edges.push_back(std::move(forward));
    }
  }
  g.edges.insert(g.edges.end(), backward.begin(), backward.end());

  Box::Coords start;
  if (n > 0)
    for (CoordIndex j = 1; j <= layout.heads(); ++j) start.emplace(j, slice(0));
  enc.regions.initial = MeasurableSet{Box(layout.accept_cell(0), start)};
  enc.regions.accept = MeasurableSet::unit_cell(layout.accept_cell(0));
  enc.regions.reject = MeasurableSet::unit_cell(layout.reject_cell(0));
  return enc;
}

Graphing encode_machine(const MachineSpec& spec) {
  if (auto problems = check(spec); !problems.empty())
    throw std::invalid_argument("invalid machine: " + problems.front());
  TapeLayout layout = TapeLayout::for_machine(spec);
  Graphing g;
  g.weights = spec.mode == Mode::Prob ? WeightMonoid::probabilities() : WeightMonoid::trivial();
  g.microcosm = Microcosm::m(spec.heads);
  g.carrier = layout.all_cells();

  const Cell start = layout.accept_cell(0);
  g.edges.push_back(Edge{Weight(), MeasurableSet::unit_cell(start),
                         Realizer::translation(layout.cell(kEndMarker, Port::Out, 0) - start)});

  for (std::size_t row = 0; row < spec.states.size(); ++row) {
    const std::string& state = spec.states[row];
    for (std::size_t k = 0; k < layout.symbol_count(); ++k) {
      char s = layout.symbol_at(k);
      const auto* actions = spec.actions(state, s);
      if (!actions) continue;
      std::vector<Cell> sources{layout.cell(s, Port::In, row)};
      if (spec.two_way) sources.push_back(layout.cell(s, Port::Out, row));
      for (Cell from : sources) {
        for (const auto& a : *actions) {
          char seen = a.swap ? a.swap_symbol : s;
          Cell to = 0;
          switch (a.move) {
            case Move::Advance: to = layout.cell(seen, Port::Out, spec.state_index(a.next)); break;
            case Move::Retreat: to = layout.cell(seen, Port::In, spec.state_index(a.next)); break;
            case Move::Accept: to = layout.accept_cell(0); break;
            case Move::Reject: to = layout.reject_cell(0); break;
          }
          Realizer::Permutation perm;
          if (a.swap) perm = {{1, *a.swap}, {*a.swap, 1}};
          g.edges.push_back(Edge{Weight(a.weight), MeasurableSet::unit_cell(from), Realizer(to - from, perm, {})});
        }
      }
    }
  }
  return g;
}

std::vector<std::string> words_up_to(const std::string& alphabet, std::size_t max_len) {
  std::string symbols = alphabet;
  std::sort(symbols.begin(), symbols.end());
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer)
      for (char c : symbols) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

LanguageResult language(const Graphing& program, const Test& test, const TapeLayout& layout, std::size_t max_len,
                        bool one_way, const PlugOptions& options) {
  LanguageResult out;
  for (const auto& w : words_up_to(layout.alphabet(), max_len)) {
    WordEncoding enc = encode_word(w, layout, one_way);
    PlugResult result = plug(program, enc.graphing, options);
    Verdict v = evaluate_test(result, test, enc.regions);
    if (v == Verdict::Accept) out.accepted.push_back(w);
    if (v == Verdict::Undetermined) out.undetermined.push_back(w);
    out.verdicts.push_back(WordVerdict{w, v, masses(result, enc.regions)});
  }
  return out;
}

Run run_machine(const MachineSpec& spec, const Graphing& machine, const std::string& word,
                const PlugOptions& options) {
  Run run{encode_word(word, TapeLayout::for_machine(spec), !spec.two_way), {}};
  run.result = plug(machine, run.word.graphing, options);
  return run;
}

}  // namespace gvm
