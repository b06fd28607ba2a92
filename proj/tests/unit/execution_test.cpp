#include "gvm/execution.hpp"
#include "gvm/experiments.hpp"

#include <gtest/gtest.h>

using namespace gvm;

namespace {

Box slab(Cell c, Rational lo, Rational hi) { return Box(c, {{1, Interval(lo, hi)}}); }

Graphing on_cells(std::vector<Cell> cells, WeightMonoid w = WeightMonoid::trivial()) {
  Graphing g;
  g.weights = std::move(w);
  std::vector<Box> boxes;
  for (Cell c : cells) boxes.emplace_back(c);
  g.carrier = MeasurableSet(std::move(boxes));
  return g;
}

const Edge& edge_of(const Graphing& f, const Graphing& g, const Step& s) {
  return (s.side == Side::F ? f : g).edges[s.edge];
}

}  // namespace

TEST(Plug, PassesThroughTheCut) {
  Graphing f = on_cells({0, 1});
  f.edges.push_back({Weight(), MeasurableSet::unit_cell(0), Realizer::translation(1)});
  Graphing g = on_cells({1, 2});
  g.edges.push_back({Weight(), MeasurableSet::unit_cell(1), Realizer::translation(1)});
  PlugResult r = plug(f, g);
  ASSERT_TRUE(r.clean());
  ASSERT_EQ(r.graphing.edges.size(), 1u);
  EXPECT_EQ(r.graphing.edges[0].realizer, Realizer::translation(2));
  EXPECT_EQ(to_string(r.paths[0]), "F0 G0");
  // The cut is no longer part of the carrier.
  EXPECT_EQ(measure(r.graphing.carrier), rat(2));
}

TEST(Plug, SplitsSourcesWhereTheOtherSideBranches) {
  Graphing f = on_cells({0, 1});
  f.edges.push_back({Weight(), MeasurableSet::unit_cell(0), Realizer::translation(1)});
  Graphing g = on_cells({1, 2, 3});
  g.edges.push_back({Weight(), MeasurableSet{slab(1, rat(0), rat(1, 3))}, Realizer::translation(1)});
  g.edges.push_back({Weight(), MeasurableSet{slab(1, rat(1, 3), rat(1))}, Realizer::translation(2)});
  PlugResult r = plug(f, g);
  ASSERT_EQ(r.graphing.edges.size(), 2u);
  EXPECT_EQ(r.graphing.edges[0].source, MeasurableSet{slab(0, rat(0), rat(1, 3))});
  EXPECT_EQ(r.graphing.edges[1].target(), MeasurableSet{slab(3, rat(1, 3), rat(1))});
  // Mass entering the cut with nowhere to go is dropped.
  g.edges.pop_back();
  EXPECT_EQ(plug(f, g).graphing.edges.size(), 1u);
}

TEST(Plug, RevisitedStateIsLooping) {
  Graphing f = on_cells({0, 1});
  f.edges.push_back({Weight(), MeasurableSet::unit_cell(0), Realizer::translation(1)});
  f.edges.push_back({Weight(), MeasurableSet::unit_cell(1), Realizer::identity()});
  Graphing g = on_cells({1});
  g.edges.push_back({Weight(), MeasurableSet::unit_cell(1), Realizer::identity()});
  PlugResult r = plug(f, g);
  EXPECT_TRUE(r.graphing.edges.empty());
  ASSERT_EQ(r.unresolved.size(), 1u);
  EXPECT_EQ(r.unresolved[0].kind, UnresolvedKind::Looping);
  EXPECT_EQ(r.unresolved[0].origin, MeasurableSet::unit_cell(0));
  EXPECT_FALSE(r.has_partial());
}

TEST(Plug, StepBudgetLeavesPartialMass) {
  // A path that shifts along coordinate 1 never repeats itself.
  Graphing f = on_cells({0, 1});
  f.edges.push_back({Weight(), MeasurableSet::unit_cell(0), Realizer::translation(1)});
  f.edges.push_back({Weight(), MeasurableSet{slab(1, rat(0), rat(1, 2))}, Realizer(0, {}, {{1, rat(1, 64)}})});
  Graphing g = on_cells({1});
  g.edges.push_back({Weight(), MeasurableSet::unit_cell(1), Realizer::identity()});
  PlugOptions o;
  o.max_steps = 10;
  PlugResult r = plug(f, g, o);
  EXPECT_TRUE(r.has_partial());
}

TEST(Plug, EmptyCutIsDisjointUnion) {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto cls = static_cast<GraphingClass>(trial % 3);
    Graphing f = random_graphing(rng, cls, {0, 1});
    Graphing g = random_graphing(rng, cls, {2, 3});
    PlugResult r = plug(f, g);
    ASSERT_TRUE(r.clean());
    EXPECT_TRUE(same_graphing(r.graphing, disjoint_union(f, g))) << "trial " << trial;
  }
}

TEST(Plug, SymmetricInItsArguments) {
  Rng rng(12);
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto cls = static_cast<GraphingClass>(trial % 3);
    Graphing f = random_graphing(rng, cls, {0, 1});
    Graphing g = random_graphing(rng, cls, {1, 2});
    PlugOptions o;
    o.max_steps = 200;
    PlugResult fg = plug(f, g, o);
    PlugResult gf = plug(g, f, o);
    if (!fg.clean() || !gf.clean()) continue;
    ++compared;
    EXPECT_TRUE(same_graphing(fg.graphing, gf.graphing)) << "trial " << trial;
  }
  EXPECT_GT(compared, 30);
}

TEST(Plug, PathsReplayToTheirEdges) {
  Rng rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    auto cls = static_cast<GraphingClass>(trial % 3);
    Graphing f = random_graphing(rng, cls, {0, 1});
    Graphing g = random_graphing(rng, cls, {1, 2});
    PlugOptions o;
    o.max_steps = 200;
    PlugResult r = plug(f, g, o);
    WeightMonoid w = common_monoid(f.weights, g.weights);
    for (std::size_t k = 0; k < r.graphing.edges.size(); ++k) {
      const Edge& e = r.graphing.edges[k];
      const StepSequence& steps = r.paths[k];
      ASSERT_FALSE(steps.empty());
      auto regions = replay(f, g, steps, e.source);
      ASSERT_EQ(regions.size(), steps.size());
      EXPECT_EQ(regions[0], e.source);
      Weight weight = unit_of(w);
      Realizer composite = Realizer::identity();
      for (std::size_t s = 0; s < steps.size(); ++s) {
        const Edge& step = edge_of(f, g, steps[s]);
        EXPECT_TRUE(is_subset(regions[s], step.source));
        if (s > 0) EXPECT_NE(steps[s].side, steps[s - 1].side);
        weight = multiply(w, weight, step.weight);
        composite = compose(composite, step.realizer);
      }
      EXPECT_EQ(weight, e.weight);
      EXPECT_EQ(composite, e.realizer);
    }
  }
}

TEST(Cycles, ForcedTwoCycle) {
  Graphing f = on_cells({1});
  f.edges.push_back({Weight(), MeasurableSet::unit_cell(1), Realizer::identity()});
  Graphing g = on_cells({1});
  g.edges.push_back({Weight(), MeasurableSet{slab(1, rat(0), rat(1, 4))}, Realizer::identity()});
  CycleResult c = cycles(f, g, std::nullopt, 6);
  ASSERT_EQ(c.cycles.size(), 1u);
  EXPECT_EQ(to_string(c.cycles[0].steps), "F0 G0");
  EXPECT_EQ(measure(c.cycles[0].support), rat(1, 4));

  EXPECT_TRUE(measurement(f, g, constant_measurement(ExtRational::infinity()), 6).value.is_infinite());
  EXPECT_EQ(measurement(f, g, identity_measurement(), 6).value, ExtRational(rat(1, 4)));
  // The plug itself sees no entry into the loop.
  EXPECT_TRUE(plug(f, g).graphing.edges.empty());
}

TEST(Cycles, OnlyPrimitiveCanonicalCycles) {
  // Swapping two halves: the cycle closes after four steps, not two.
  Graphing f = on_cells({1});
  f.edges.push_back({Weight(), MeasurableSet{slab(1, rat(0), rat(1, 2))}, Realizer(0, {}, {{1, rat(1, 2)}})});
  f.edges.push_back({Weight(), MeasurableSet{slab(1, rat(1, 2), rat(1))}, Realizer(0, {}, {{1, rat(-1, 2)}})});
  Graphing g = on_cells({1});
  g.edges.push_back({Weight(), MeasurableSet::unit_cell(1), Realizer::identity()});
  CycleResult c = cycles(f, g, std::nullopt, 8);
  ASSERT_EQ(c.cycles.size(), 1u);
  EXPECT_EQ(c.cycles[0].steps.size(), 4u);
  EXPECT_EQ(c.cycles[0].steps.front().side, Side::F);
  EXPECT_EQ(measure(c.cycles[0].support), rat(1, 2));
}

TEST(Cycles, WeightsMeasured) {
  Graphing f = on_cells({1}, WeightMonoid::probabilities());
  f.edges.push_back({Weight(rat(1, 3)), MeasurableSet::unit_cell(1), Realizer::identity()});
  Graphing g = on_cells({1}, WeightMonoid::probabilities());
  g.edges.push_back({Weight(rat(1, 2)), MeasurableSet::unit_cell(1), Realizer::identity()});
  EXPECT_EQ(measurement(f, g, identity_measurement(), 4).value, ExtRational(rat(1, 6)));
  EXPECT_EQ(measurement(f, g, constant_measurement(ExtRational(rat(0))), 4).value, ExtRational(rat(0)));
}

namespace {

// Result with hand-picked paths from cell 0 into accept (5) and reject (6).
struct Fixture {
  TestRegions regions{MeasurableSet::unit_cell(0), MeasurableSet::unit_cell(5), MeasurableSet::unit_cell(6)};
  PlugResult result;

  void path(Rational lo, Rational hi, Cell to, Rational weight = Rational(1)) {
    result.graphing.edges.push_back({Weight(weight), MeasurableSet{slab(0, lo, hi)}, Realizer::translation(to)});
    result.paths.push_back({Step{Side::F, 0}});
  }
  void unresolved(UnresolvedKind kind, Rational lo, Rational hi, Rational weight = Rational(1)) {
    result.unresolved.push_back({kind, MeasurableSet{slab(0, lo, hi)}, Weight(weight), {}});
  }
  Verdict verdict(const gvm::Test& t) const { return evaluate_test(result, t, regions); }
};

}  // namespace

TEST(Tests, Deterministic) {
  Fixture all;
  all.path(rat(0), rat(1), 5);
  EXPECT_EQ(all.verdict(gvm::Test::det()), Verdict::Accept);
  EXPECT_EQ(classify_result(all.result, all.regions), BoolResult::True);

  Fixture half;
  half.path(rat(0), rat(1, 2), 5);
  half.path(rat(1, 2), rat(1), 6);
  EXPECT_EQ(half.verdict(gvm::Test::det()), Verdict::Reject);
  EXPECT_EQ(classify_result(half.result, half.regions), BoolResult::Other);

  Fixture loops;
  loops.unresolved(UnresolvedKind::Looping, rat(0), rat(1));
  EXPECT_EQ(loops.verdict(gvm::Test::det()), Verdict::Reject);

  Fixture cut_short;
  cut_short.unresolved(UnresolvedKind::Partial, rat(0), rat(1));
  EXPECT_EQ(cut_short.verdict(gvm::Test::det()), Verdict::Undetermined);
}

TEST(Tests, NonDeterministicPair) {
  // Some branch accepts and some rejects: nl accepts, conl rejects.
  Fixture mixed;
  mixed.path(rat(0), rat(1), 5);
  mixed.path(rat(0), rat(1), 6);
  EXPECT_EQ(mixed.verdict(gvm::Test::nl()), Verdict::Accept);
  EXPECT_EQ(mixed.verdict(gvm::Test::conl()), Verdict::Reject);

  Fixture none;
  EXPECT_EQ(none.verdict(gvm::Test::nl()), Verdict::Reject);
  EXPECT_EQ(none.verdict(gvm::Test::conl()), Verdict::Accept);

  Fixture partial;
  partial.unresolved(UnresolvedKind::Partial, rat(0), rat(1, 8));
  EXPECT_EQ(partial.verdict(gvm::Test::nl()), Verdict::Undetermined);
  EXPECT_EQ(partial.verdict(gvm::Test::conl()), Verdict::Undetermined);
}

TEST(Tests, ProbabilisticCutpoint) {
  Fixture f;
  f.path(rat(0), rat(1), 5, rat(1, 2));
  f.path(rat(0), rat(1), 6, rat(1, 2));
  EXPECT_EQ(masses(f.result, f.regions).accept, rat(1, 2));
  EXPECT_EQ(f.verdict(gvm::Test::prob(rat(1, 2))), Verdict::Reject);
  EXPECT_EQ(f.verdict(gvm::Test::prob(rat(1, 3))), Verdict::Accept);
  EXPECT_THROW(gvm::Test::prob(rat(1)), std::invalid_argument);

  Fixture loops;
  loops.path(rat(0), rat(1), 5, rat(1, 4));
  loops.unresolved(UnresolvedKind::Looping, rat(0), rat(1), rat(3, 4));
  EXPECT_EQ(masses(loops.result, loops.regions).looping, rat(3, 4));
  EXPECT_EQ(loops.verdict(gvm::Test::prob()), Verdict::Undetermined);
}
