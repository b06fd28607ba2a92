#ifndef GVM_SPACE_HPP
#define GVM_SPACE_HPP

// The space Z x [0,1)^N: one integer cell per box, finitely many constrained
// coordinates, half-open rational intervals. All sets are kept in a unique
// canonical form so that equality of point sets is equality of values.

#include "gvm/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gvm {

using Cell = std::int64_t;
/// Index into the Hilbert cube, starting at 1.
using CoordIndex = std::uint32_t;

/// Half-open [lo, hi) with 0 <= lo < hi <= 1.
class Interval {
 public:
  Interval(Rational lo, Rational hi);
  static Interval unit() { return Interval(Rational(0), Rational(1)); }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }
  bool is_unit() const { return lo_ == 0 && hi_ == 1; }

  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
  std::optional<Interval> intersect(const Interval& other) const;
  /// Shifted copy; nullopt when the result leaves [0,1).
  std::optional<Interval> translated(const Rational& offset) const;

  bool operator==(const Interval& other) const { return lo_ == other.lo_ && hi_ == other.hi_; }
  std::strong_ordering operator<=>(const Interval& other) const;

 private:
  Rational lo_;
  Rational hi_;
};

/// One cell times a product of intervals; unmentioned coordinates are [0,1).
class Box {
 public:
  using Coords = std::map<CoordIndex, Interval>;

  explicit Box(Cell cell, Coords coords = {});

  Cell cell() const { return cell_; }
  const Coords& coords() const { return coords_; }
  Interval interval(CoordIndex j) const;

  Rational measure() const;
  bool contains(const Box& other) const;
  std::optional<Box> intersect(const Box& other) const;
  /// Disjoint pieces of this \ other.
  std::vector<Box> subtract(const Box& other) const;

  /// Same box with coordinate j replaced (unit intervals are dropped).
  Box with(CoordIndex j, const Interval& itv) const;

  bool operator==(const Box& other) const { return cell_ == other.cell_ && coords_ == other.coords_; }
  std::strong_ordering operator<=>(const Box& other) const;

 private:
  Cell cell_;
  Coords coords_;
};

std::string to_string(const Box& box);

/// Finite union of boxes, stored as pairwise-disjoint boxes in canonical order.
class MeasurableSet {
 public:
  MeasurableSet() = default;
  /// Boxes may overlap; the result is canonicalized.
  explicit MeasurableSet(std::vector<Box> boxes);
  MeasurableSet(std::initializer_list<Box> boxes) : MeasurableSet(std::vector<Box>(boxes)) {}

  static MeasurableSet unit_cell(Cell cell) { return MeasurableSet({Box(cell)}); }

  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  std::vector<Cell> cells() const;

  bool operator==(const MeasurableSet& other) const { return boxes_ == other.boxes_; }
  std::strong_ordering operator<=>(const MeasurableSet& other) const;

 private:
  std::vector<Box> boxes_;
};

/// Canonicalizes an arbitrary box list (overlaps allowed).
std::vector<Box> canonicalize(std::vector<Box> boxes);

Rational measure(const MeasurableSet& s);
MeasurableSet intersect(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet intersect(const MeasurableSet& a, const Box& b);
MeasurableSet subtract(const MeasurableSet& a, const MeasurableSet& b);
MeasurableSet unite(const MeasurableSet& a, const MeasurableSet& b);
bool is_subset(const MeasurableSet& a, const MeasurableSet& b);
bool intersects(const MeasurableSet& a, const MeasurableSet& b);

/// Pieces of `box` outside `s`, as disjoint boxes (not canonicalized).
std::vector<Box> box_minus(const Box& box, const MeasurableSet& s);
/// Pieces of `box` inside `s`, as disjoint boxes (not canonicalized).
std::vector<Box> box_meet(const Box& box, const MeasurableSet& s);

/// A cell of a refinement, with the indices of the input sets containing it.
struct RefinementAtom {
  MeasurableSet set;
  std::vector<std::size_t> members;
};

/// Partition of the union by membership signature.
std::vector<RefinementAtom> refine_with_membership(std::span<const MeasurableSet> sets);

/// Boxes partitioning the union such that each input is a union of some of them.
std::vector<Box> common_refinement(std::span<const MeasurableSet> sets);

/// Deterministic text form: "{cell 0: 1=[0/1,1/2) 2=[1/4,3/4)} | ...".
std::string to_string(const MeasurableSet& s);

}  // namespace gvm

#endif  // GVM_SPACE_HPP
