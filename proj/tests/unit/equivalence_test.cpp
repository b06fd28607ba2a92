#include "gvm/encodings.hpp"
#include "gvm/equivalence.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <deque>

using namespace gvm;
using gvm::test::Rng;

namespace {

Realizer shift_coord(Rational c) { return Realizer(0, {}, {{1, std::move(c)}}); }

Point point(Cell c, std::vector<Rational> xs) {
  Point p;
  p.cell = c;
  for (std::size_t j = 0; j < xs.size(); ++j)
    if (xs[j] != 0) p.coords[static_cast<CoordIndex>(j + 1)] = xs[j];
  return p;
}

bool contains(const MeasurableSet& s, const Point& p) {
  std::vector<Rational> xs;
  CoordIndex top = p.coords.empty() ? 0 : p.coords.rbegin()->first;
  for (CoordIndex j = 1; j <= top; ++j) {
    auto it = p.coords.find(j);
    xs.push_back(it == p.coords.end() ? Rational(0) : it->second);
  }
  return gvm::test::contains_point(s, p.cell, xs);
}

// Orbit of p in the graph of g's edges, counting the edges used.
std::pair<std::size_t, std::size_t> edge_orbit(const Graphing& g, const Point& p) {
  std::set<Point> seen{p};
  std::set<std::pair<Point, Point>> used;
  std::deque<Point> todo{p};
  while (!todo.empty()) {
    Point x = todo.front();
    todo.pop_front();
    for (const auto& e : g.edges) {
      std::optional<Point> y;
      if (contains(e.source, x)) y = apply(e.realizer, x);
      if (y) used.insert(std::minmax(x, *y));
      if (y && seen.insert(*y).second) todo.push_back(*y);
      std::optional<Point> z;
      if (contains(e.target(), x)) z = apply(invert(e.realizer), x);
      if (z) used.insert(std::minmax(x, *z));
      if (z && seen.insert(*z).second) todo.push_back(*z);
    }
  }
  return {seen.size(), used.size()};
}

}  // namespace

TEST(Words, PrintingAndComposition) {
  EXPECT_EQ(to_string(Word{}), "e");
  EXPECT_EQ(to_string(Word{{0, 1}, {1, -1}}), "g0 g1^-1");
  std::vector<Realizer> gens{Realizer::translation(1), Realizer::head_swap(2)};
  Realizer r = word_map(gens, {{0, 1}, {1, 1}, {0, -1}});
  EXPECT_EQ(r, Realizer::head_swap(2));
}

TEST(Words, PhiWordsRespectDomains) {
  std::vector<Realizer> shift{Realizer::translation(1)};
  EXPECT_EQ(phi_words(shift, 3, true).size(), 4u);
  EXPECT_EQ(phi_words(shift, 3, false).size(), 7u);

  // Moving coordinate 1 by 1/2 twice leaves the unit interval.
  std::vector<Realizer> half{shift_coord(rat(1, 2))};
  auto words = phi_words(half, 4, true);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[1].domain, MeasurableSet{Box(0, {{1, Interval(rat(0), rat(1, 2))}})});
  EXPECT_EQ(word_domain(half, {{0, 1}, {0, 1}}, MeasurableSet::unit_cell(0)), MeasurableSet{});
}

TEST(Orbits, SmallOrbit) {
  auto gens = m_generators(2);
  ASSERT_EQ(gens.size(), 3u);
  auto o = orbit(point(0, {rat(1, 4)}), gens, 1, false);
  EXPECT_EQ(o.size(), 4u);
  EXPECT_TRUE(o.count(point(0, {rat(0), rat(1, 4)})));
  EXPECT_TRUE(o.count(point(-1, {rat(1, 4)})));
  EXPECT_EQ(orbit(point(0, {rat(1, 4)}), {Realizer::translation(1)}, 3, true).size(), 4u);
  EXPECT_EQ(orbit(point(0, {rat(1, 4)}), {Realizer::translation(1)}, 3, false).size(), 7u);
}

TEST(Orbits, SymmetricUnderInverses) {
  Rng rng(31);
  std::vector<Realizer> gens = m_generators(3);
  gens.push_back(shift_coord(rat(1, 4)));
  for (int trial = 0; trial < 25; ++trial) {
    Point p = point(rng.range(-1, 1), {rat(rng.range(0, 7), 8), rat(rng.range(0, 7), 8), rat(rng.range(0, 7), 8)});
    for (const Point& q : orbit(p, gens, 2, false)) EXPECT_TRUE(orbit(q, gens, 3, false).count(p));
  }
}

TEST(Compile, FindsPositiveWords) {
  std::vector<Realizer> shift{Realizer::translation(1)};
  auto unit = MeasurableSet::unit_cell(0);
  auto hit = is_compilable(Realizer::translation(3), shift, 4, 2, unit);
  ASSERT_TRUE(hit.witness.has_value());
  EXPECT_EQ(to_string(hit.witness->words[0]), "g0 g0 g0");
  EXPECT_FALSE(check_witness(Realizer::translation(3), unit, *hit.witness, shift).has_value());

  EXPECT_FALSE(is_compilable(Realizer::translation(3), shift, 2, 2, unit).witness.has_value());
  // Negative shifts are not positive words in a single forward shift.
  auto miss = is_compilable(Realizer::translation(-1), shift, 6, 2, unit);
  EXPECT_FALSE(miss.witness.has_value());
  EXPECT_FALSE(miss.words_exhausted);

  // A finite generating set closes up: the answer no longer depends on the bound.
  auto closed = is_compilable(Realizer::head_swap(3), {Realizer::head_swap(2)}, 6, 2, unit);
  EXPECT_FALSE(closed.witness.has_value());
  EXPECT_TRUE(closed.words_exhausted);
}

TEST(Compile, UpToTheta) {
  std::vector<Realizer> shift{Realizer::translation(1)};
  Realizer target = compose(Realizer::translation(2), Realizer::head_swap(2));
  auto unit = MeasurableSet::unit_cell(0);
  EXPECT_FALSE(is_compilable(target, shift, 4, 2, unit).witness.has_value());
  auto hit = is_compilable(target, shift, 4, 2, unit, {Realizer::head_swap(2)});
  ASSERT_TRUE(hit.witness.has_value());
  EXPECT_EQ(hit.witness->words[0].back().generator, shift.size());
}

TEST(Compile, SplittingSourcesKeepsMapsAndCost) {
  Graphing g;
  g.carrier = unite(MeasurableSet::unit_cell(0), MeasurableSet::unit_cell(2));
  g.edges.push_back({Weight(), MeasurableSet::unit_cell(0), Realizer::translation(2)});
  std::vector<Realizer> shift{Realizer::translation(1)};
  CompilationWitness split;
  split.partition = {MeasurableSet{Box(0, {{1, Interval(rat(0), rat(1, 3))}})},
                     MeasurableSet{Box(0, {{1, Interval(rat(1, 3), rat(1))}})}};
  split.words = {{{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}};
  EXPECT_FALSE(check_witness(g.edges[0].realizer, g.edges[0].source, split, shift).has_value());
  Graphing c = compile_graphing(g, {split}, shift);
  ASSERT_EQ(c.edges.size(), 2u);
  EXPECT_EQ(cost(c), cost(g));
  for (const auto& e : c.edges) EXPECT_EQ(e.realizer, g.edges[0].realizer);
  EXPECT_TRUE(validate(c).empty());

  CompilationWitness wrong = split;
  wrong.words[1] = {{0, 1}};
  EXPECT_TRUE(check_witness(g.edges[0].realizer, g.edges[0].source, wrong, shift).has_value());
  EXPECT_THROW(compile_graphing(g, {wrong}, shift), std::invalid_argument);

  CompilationWitness gap = split;
  gap.partition.pop_back();
  gap.words.pop_back();
  EXPECT_TRUE(check_witness(g.edges[0].realizer, g.edges[0].source, gap, shift).has_value());
}

TEST(Compile, MachineEdgesKeepTheirMaps) {
  MachineSpec ten = load_machine(std::string(GVM_MACHINES) + "/ten.gm");
  Graphing g = encode_machine(ten);
  auto gens = m_generators(2);
  std::vector<CompilationWitness> witnesses;
  for (const auto& e : g.edges) {
    auto s = is_compilable(e.realizer, gens, 10, 4, e.source);
    ASSERT_TRUE(s.witness.has_value());
    witnesses.push_back(*s.witness);
  }
  Graphing c = compile_graphing(g, witnesses, gens);
  EXPECT_TRUE(same_graphing(c, g));
  EXPECT_TRUE(validate(c).empty());
}

TEST(Treeing, Totals) {
  TreeingCost two = treeing_cost(2, 4);
  EXPECT_EQ(two.partial, rat(15, 32));
  EXPECT_EQ(two.exact_total, rat(1, 2));
  EXPECT_EQ(treeing_cost(3, 3).exact_total, rat(5, 6));
  EXPECT_EQ(treeing_cost(4, 3).exact_total, rat(23, 24));
  EXPECT_EQ(factorial(5), rat(120));
}

TEST(Treeing, PartialSumsMatchTheClosedForm) {
  for (CoordIndex i = 2; i <= 4; ++i) {
    TreeingCost c = treeing_cost(i, i == 2 ? 20 : 12);
    ASSERT_EQ(c.partials.size(), c.depth + 1);
    for (std::size_t d = 0; d <= c.depth; ++d) {
      EXPECT_EQ(c.partials[d], treeing_closed_form(i, d)) << i << " " << d;
      EXPECT_LT(c.partials[d], c.exact_total);
      if (d > 0) EXPECT_GE(c.partials[d], c.partials[d - 1]);
    }
  }
}

TEST(Treeing, ExplicitConstructionMatchesTheCount) {
  for (CoordIndex i = 2; i <= 3; ++i) {
    for (std::size_t depth = 0; depth <= (i == 2 ? 5u : 3u); ++depth) {
      Graphing t = build_treeing(i, depth);
      EXPECT_EQ(cost(t), treeing_cost(i, depth).partial) << i << " " << depth;
      EXPECT_TRUE(validate(t).empty());
    }
  }
}

TEST(Treeing, EachResolvedOrbitIsATree) {
  Rng rng(32);
  const CoordIndex i = 3;
  const std::size_t depth = 3;
  Graphing t = build_treeing(i, depth);
  const long den = 1L << depth;
  int checked = 0;
  while (checked < 20) {
    std::vector<Rational> xs;
    std::set<long> cells;
    for (CoordIndex j = 0; j < i; ++j) {
      long k = static_cast<long>(rng.below(static_cast<std::uint64_t>(den)));
      cells.insert(k);
      xs.push_back(rat(k, den) + rat(1, 4 * den));
    }
    if (cells.size() < i) continue;  // unresolved at this depth
    ++checked;
    auto [points, edges] = edge_orbit(t, point(0, xs));
    EXPECT_EQ(points, 6u);
    EXPECT_EQ(edges, 5u);
  }
}

TEST(Separation, BoundedConsistencyCheck) {
  SeparationReport r = separation_experiment(2, 3);
  EXPECT_FALSE(r.forward.witness.has_value());
  EXPECT_TRUE(r.backward.witness.has_value());
  EXPECT_TRUE(r.costs_differ);
  EXPECT_EQ(r.total_i, rat(1, 2));
  EXPECT_EQ(r.total_j, rat(5, 6));
  EXPECT_EQ(r.label, "bounded consistency check");
  EXPECT_EQ(r.bounds.max_word_len, 6u);
  EXPECT_EQ(r.bounds.max_parts, 8u);
  EXPECT_THROW(separation_experiment(3, 2), std::invalid_argument);
  EXPECT_THROW(separation_experiment(1, 2), std::invalid_argument);
}
