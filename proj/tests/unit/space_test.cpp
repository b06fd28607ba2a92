#include "gvm/space.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace gvm;
using gvm::test::Rng;

namespace {

constexpr int kCells = 2;
constexpr CoordIndex kDims = 2;
constexpr int kDen = 4;

// Grid-point oracle: endpoints lie on multiples of 1/kDen, so membership of
// the centers of the 1/kDen grid decides every set exactly.
template <typename F>
void for_grid(F&& f) {
  for (Cell c = 0; c < kCells; ++c)
    for (int a = 0; a < kDen; ++a)
      for (int b = 0; b < kDen; ++b) f(c, std::vector<Rational>{rat(2 * a + 1, 2 * kDen), rat(2 * b + 1, 2 * kDen)});
}

Rational grid_measure(const std::function<bool(Cell, const std::vector<Rational>&)>& in) {
  Rational total(0);
  for_grid([&](Cell c, const std::vector<Rational>& x) {
    if (in(c, x)) total += rat(1, kDen * kDen);
  });
  return total;
}

}  // namespace

TEST(Interval, RejectsEmptyAndOutOfRange) {
  EXPECT_THROW(Interval(rat(1, 2), rat(1, 2)), std::invalid_argument);
  EXPECT_THROW(Interval(rat(-1, 2), rat(1, 2)), std::invalid_argument);
  EXPECT_THROW(Interval(rat(0), rat(3, 2)), std::invalid_argument);
}

TEST(Interval, TranslationLeavingUnitIsRejected) {
  Interval i(rat(1, 4), rat(1, 2));
  EXPECT_EQ(*i.translated(rat(1, 2)), Interval(rat(3, 4), rat(1)));
  EXPECT_FALSE(i.translated(rat(3, 4)).has_value());
  EXPECT_FALSE(i.translated(rat(-1, 2)).has_value());
}

TEST(Box, UnitIntervalsAreDropped) {
  Box b(3, {{1, Interval::unit()}, {2, Interval(rat(0), rat(1, 2))}});
  EXPECT_EQ(b.coords().size(), 1u);
  EXPECT_EQ(b.measure(), rat(1, 2));
  EXPECT_THROW(Box(0, {{0, Interval(rat(0), rat(1, 2))}}), std::invalid_argument);
}

TEST(MeasurableSet, CanonicalFormIgnoresDecomposition) {
  MeasurableSet halves{Box(0, {{1, Interval(rat(0), rat(1, 2))}}), Box(0, {{1, Interval(rat(1, 2), rat(1))}})};
  EXPECT_EQ(halves, MeasurableSet::unit_cell(0));
  MeasurableSet quarters{Box(0, {{2, Interval(rat(0), rat(1, 2))}}),
                         Box(0, {{1, Interval(rat(0), rat(1, 2))}, {2, Interval(rat(1, 2), rat(1))}}),
                         Box(0, {{1, Interval(rat(1, 2), rat(1))}, {2, Interval(rat(1, 2), rat(1))}})};
  EXPECT_EQ(quarters, MeasurableSet::unit_cell(0));
  EXPECT_EQ(measure(quarters), rat(1));
}

TEST(MeasurableSet, OverlapsAreMerged) {
  MeasurableSet s{Box(1, {{1, Interval(rat(0), rat(3, 4))}}), Box(1, {{1, Interval(rat(1, 4), rat(1))}})};
  EXPECT_EQ(s, MeasurableSet::unit_cell(1));
}

TEST(MeasurableSet, SetAlgebraMatchesGridOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = test::grid_set(rng, kCells, kDims, kDen, 4);
    auto b = test::grid_set(rng, kCells, kDims, kDen, 4);
    auto in_a = [&](Cell c, const std::vector<Rational>& x) { return test::contains_point(a, c, x); };
    auto in_b = [&](Cell c, const std::vector<Rational>& x) { return test::contains_point(b, c, x); };

    auto i = intersect(a, b);
    auto d = subtract(a, b);
    auto u = unite(a, b);
    for_grid([&](Cell c, const std::vector<Rational>& x) {
      ASSERT_EQ(test::contains_point(i, c, x), in_a(c, x) && in_b(c, x));
      ASSERT_EQ(test::contains_point(d, c, x), in_a(c, x) && !in_b(c, x));
      ASSERT_EQ(test::contains_point(u, c, x), in_a(c, x) || in_b(c, x));
    });
    ASSERT_EQ(measure(a), grid_measure(in_a));
    ASSERT_EQ(measure(u), measure(a) + measure(b) - measure(i));
    ASSERT_EQ(is_subset(i, a), true);
    ASSERT_EQ(intersects(a, b), !i.empty());
    ASSERT_EQ(unite(d, i), a);

    // Canonical form is a function of the point set.
    std::vector<Box> rebuilt = d.boxes();
    rebuilt.insert(rebuilt.end(), i.boxes().begin(), i.boxes().end());
    ASSERT_EQ(MeasurableSet(rebuilt), a);
  }
}

TEST(MeasurableSet, CanonicalBoxesAreDisjoint) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = test::grid_set(rng, kCells, kDims, kDen, 5);
    const auto& boxes = s.boxes();
    Rational sum(0);
    for (std::size_t p = 0; p < boxes.size(); ++p) {
      sum += boxes[p].measure();
      for (std::size_t q = p + 1; q < boxes.size(); ++q) ASSERT_FALSE(boxes[p].intersect(boxes[q]).has_value());
    }
    ASSERT_EQ(sum, measure(s));
  }
}

TEST(Refinement, AtomsPartitionTheUnionBySignature) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MeasurableSet> sets;
    for (int k = 0; k < 3; ++k) sets.push_back(test::grid_set(rng, kCells, kDims, kDen, 3));
    auto atoms = refine_with_membership(sets);
    for_grid([&](Cell c, const std::vector<Rational>& x) {
      std::vector<std::size_t> sig;
      for (std::size_t k = 0; k < sets.size(); ++k)
        if (test::contains_point(sets[k], c, x)) sig.push_back(k);
      int hits = 0;
      for (const auto& atom : atoms) {
        if (test::contains_point(atom.set, c, x)) {
          ++hits;
          ASSERT_EQ(atom.members, sig);
        }
      }
      ASSERT_EQ(hits, sig.empty() ? 0 : 1);
    });
    auto boxes = common_refinement(sets);
    for (const auto& s : sets)
      for (const auto& b : boxes) {
        MeasurableSet single{b};
        ASSERT_TRUE(is_subset(single, s) || !intersects(single, s));
      }
  }
}

TEST(MeasurableSet, TextForm) {
  MeasurableSet s{Box(2, {{1, Interval(rat(0), rat(1, 2))}})};
  EXPECT_EQ(to_string(s), "{cell 2: 1=[0/1,1/2)}");
  EXPECT_EQ(to_string(MeasurableSet{}), "{}");
}
