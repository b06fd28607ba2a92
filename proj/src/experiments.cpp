#include "gvm/experiments.hpp"

#include <stdexcept>

namespace gvm {

namespace {

Interval grid_interval(Rng& rng, std::int64_t grid) {
  auto a = rng.range(0, grid - 1);
  auto b = rng.range(a + 1, grid);
  return Interval(rat(a, grid), rat(b, grid));
}

Edge random_edge(Rng& rng, const std::vector<Cell>& cells, const SampleShape& shape) {
  Cell from = cells[rng.below(cells.size())];
  Cell to = cells[rng.below(cells.size())];
  Box::Coords coords;
  for (CoordIndex j = 1; j <= shape.dims; ++j)
    if (!rng.chance(1, 4)) coords.emplace(j, grid_interval(rng, shape.grid));
  Box source(from, coords);

  Realizer::Permutation perm;
  if (shape.dims >= 2 && rng.chance(1, 3)) perm = {{1, 2}, {2, 1}};
  Realizer::Offsets offsets;
  CoordIndex input = perm.empty() ? 1 : 2;  // the input coordinate landing on 1
  Interval itv = source.interval(input);
  if (!itv.is_unit() && rng.chance(1, 2)) {
    // Offsets k/grid keeping the interval inside [0,1).
    Rational lo = itv.lo() * shape.grid;
    Rational hi = itv.hi() * shape.grid;
    std::int64_t kmin = -static_cast<std::int64_t>(lo.get_num().get_si() / lo.get_den().get_si());
    std::int64_t kmax = shape.grid - static_cast<std::int64_t>(hi.get_num().get_si() / hi.get_den().get_si());
    if (kmax > kmin) {
      auto k = rng.range(kmin, kmax);
      if (k != 0) offsets[1] = rat(k, shape.grid);
    }
  }
  return Edge{Weight(), MeasurableSet{source}, Realizer(to - from, perm, offsets)};
}

const Rational& pick_probability(Rng& rng) {
  static const std::vector<Rational> choices{rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3), rat(3, 4), rat(1)};
  return choices[rng.below(choices.size())];
}

bool keeps_class(GraphingClass wanted, const Graphing& g) {
  switch (wanted) {
    case GraphingClass::Deterministic: return classify(g) == GraphingClass::Deterministic;
    case GraphingClass::NonDeterministic: {
      auto c = classify(g);
      return c == GraphingClass::Deterministic || c == GraphingClass::NonDeterministic;
    }
    case GraphingClass::Probabilistic: return is_probabilistic(g);
    case GraphingClass::General: return true;
  }
  return false;
}

}  // namespace

Graphing random_graphing(Rng& rng, GraphingClass cls, const std::vector<Cell>& cells, const SampleShape& shape) {
  if (cells.empty()) throw std::invalid_argument("random_graphing needs cells");
  Graphing g;
  g.weights = cls == GraphingClass::Probabilistic ? WeightMonoid::probabilities() : WeightMonoid::trivial();
  g.microcosm = Microcosm::macrocosm();
  std::vector<Box> carrier;
  for (Cell c : cells) carrier.emplace_back(c);
  g.carrier = MeasurableSet(std::move(carrier));

  const auto count = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(shape.max_edges)));
  MeasurableSet used;
  for (std::size_t k = 0; k < count; ++k) {
    Edge e = random_edge(rng, cells, shape);
    if (cls == GraphingClass::Deterministic) {
      e.source = subtract(e.source, used);
      if (e.source.empty()) continue;
      used = unite(used, e.source);
    }
    if (cls == GraphingClass::Probabilistic) e.weight = Weight(pick_probability(rng));
    g.edges.push_back(std::move(e));
  }
  if (cls == GraphingClass::Probabilistic)
    while (!is_probabilistic(g))
      for (auto& e : g.edges) e.weight = Weight(Rational(e.weight.rational() / 2));
  return g;
}

ClosureReport closure_experiment(GraphingClass cls, std::size_t n, std::uint64_t seed, std::size_t max_steps) {
  ClosureReport report;
  report.cls = cls;
  report.seed = seed;
  report.wanted = n;
  Rng rng(seed);
  PlugOptions options;
  options.max_steps = max_steps;
  while (report.clean < n && report.attempts < 50 * n) {
    ++report.attempts;
    Graphing f = random_graphing(rng, cls, {0, 1});
    Graphing g = random_graphing(rng, cls, {1, 2});
    PlugResult r = plug(f, g, options);
    if (!r.clean()) continue;
    if (keeps_class(cls, r.graphing))
      ++report.preserved;
    else
      report.failures.push_back(report.clean);
    ++report.clean;
  }
  return report;
}

AssociativityReport associativity_experiment(std::size_t n, std::uint64_t seed, std::size_t max_steps) {
  AssociativityReport report;
  report.seed = seed;
  report.wanted = n;
  Rng rng(seed);
  PlugOptions options;
  options.max_steps = max_steps;
  const GraphingClass classes[] = {GraphingClass::Deterministic, GraphingClass::NonDeterministic,
                                   GraphingClass::Probabilistic};
  while (report.clean < n && report.attempts < 50 * n) {
    GraphingClass cls = classes[report.attempts % 3];
    ++report.attempts;
    Graphing f = random_graphing(rng, cls, {0, 1});
    Graphing g = random_graphing(rng, cls, {1, 2});
    Graphing h = random_graphing(rng, cls, {2, 3});
    PlugResult fg = plug(f, g, options);
    if (!fg.clean()) continue;
    PlugResult left = plug(fg.graphing, h, options);
    if (!left.clean()) continue;
    PlugResult gh = plug(g, h, options);
    if (!gh.clean()) continue;
    PlugResult right = plug(f, gh.graphing, options);
    if (!right.clean()) continue;
    if (same_graphing(left.graphing, right.graphing))
      ++report.equal;
    else
      report.failures.push_back(report.clean);
    ++report.clean;
  }
  return report;
}

Test default_test(const MachineSpec& spec) {
  switch (spec.mode) {
    case Mode::Det: return Test::det();
    case Mode::Nondet: return Test::nl();
    case Mode::Prob: return Test::prob();
  }
  return Test::det();
}

MachineCompileReport compile_machine_experiment(const MachineSpec& spec, std::size_t max_len,
                                                SeparationBounds bounds) {
  MachineCompileReport report;
  report.max_len = max_len;
  Graphing machine = encode_machine(spec);
  auto gens = m_generators(spec.heads);
  std::vector<CompilationWitness> witnesses;
  report.compiled = true;
  for (const auto& e : machine.edges) {
    report.searches.push_back(is_compilable(e.realizer, gens, bounds.max_word_len, bounds.max_parts, e.source));
    if (report.searches.back().witness)
      witnesses.push_back(*report.searches.back().witness);
    else
      report.compiled = false;
  }
  report.cost_before = cost(machine);
  if (!report.compiled) return report;
  report.graphing = compile_graphing(machine, witnesses, gens);
  report.cost_after = cost(report.graphing);

  TapeLayout layout = TapeLayout::for_machine(spec);
  Test test = default_test(spec);
  report.language_before = language(machine, test, layout, max_len, !spec.two_way).accepted;
  report.language_after = language(report.graphing, test, layout, max_len, !spec.two_way).accepted;
  return report;
}

}  // namespace gvm
