#include "gvm/space.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gvm {

// ---------------------------------------------------------------- Interval

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(0 <= lo_ && lo_ < hi_ && hi_ <= 1))
    throw std::invalid_argument("interval [" + to_string(lo_) + ", " + to_string(hi_) +
                                ") is not a nonempty subinterval of [0,1)");
}

std::optional<Interval> Interval::intersect(const Interval& other) const {
  const Rational& lo = lo_ < other.lo_ ? other.lo_ : lo_;
  const Rational& hi = hi_ < other.hi_ ? hi_ : other.hi_;
  if (!(lo < hi)) return std::nullopt;
  return Interval(lo, hi);
}

std::optional<Interval> Interval::translated(const Rational& offset) const {
  Rational lo = lo_ + offset;
  Rational hi = hi_ + offset;
  if (lo < 0 || hi > 1) return std::nullopt;
  return Interval(std::move(lo), std::move(hi));
}

std::strong_ordering Interval::operator<=>(const Interval& other) const {
  if (auto c = compare(lo_, other.lo_); c != 0) return c;
  return compare(hi_, other.hi_);
}

// ---------------------------------------------------------------- Box

Box::Box(Cell cell, Coords coords) : cell_(cell), coords_(std::move(coords)) {
  for (auto it = coords_.begin(); it != coords_.end();) {
    if (it->first == 0) throw std::invalid_argument("coordinate indices start at 1");
    if (it->second.is_unit())
      it = coords_.erase(it);
    else
      ++it;
  }
}

Interval Box::interval(CoordIndex j) const {
  auto it = coords_.find(j);
  return it == coords_.end() ? Interval::unit() : it->second;
}

Rational Box::measure() const {
  Rational m(1);
  for (const auto& [j, itv] : coords_) m *= itv.length();
  return m;
}

bool Box::contains(const Box& other) const {
  if (cell_ != other.cell_) return false;
  for (const auto& [j, itv] : coords_)
    if (!itv.contains(other.interval(j))) return false;
  return true;
}

std::optional<Box> Box::intersect(const Box& other) const {
  if (cell_ != other.cell_) return std::nullopt;
  Coords out = coords_;
  for (const auto& [j, itv] : other.coords_) {
    auto it = out.find(j);
    if (it == out.end()) {
      out.emplace(j, itv);
    } else {
      auto meet = it->second.intersect(itv);
      if (!meet) return std::nullopt;
      it->second = *meet;
    }
  }
  return Box(cell_, std::move(out));
}

std::vector<Box> Box::subtract(const Box& other) const {
  auto meet = intersect(other);
  if (!meet) return {*this};
  std::vector<Box> pieces;
  // Peel off slabs one constrained coordinate of `other` at a time.
  Box rest = *this;
  for (const auto& [j, cut] : other.coords()) {
    Interval mine = rest.interval(j);
    if (mine.lo() < cut.lo()) pieces.push_back(rest.with(j, Interval(mine.lo(), cut.lo())));
    if (cut.hi() < mine.hi()) pieces.push_back(rest.with(j, Interval(cut.hi(), mine.hi())));
    auto inner = mine.intersect(cut);
    rest = rest.with(j, *inner);
  }
  return pieces;
}

Box Box::with(CoordIndex j, const Interval& itv) const {
  Coords c = coords_;
  if (itv.is_unit())
    c.erase(j);
  else
    c.insert_or_assign(j, itv);
  return Box(cell_, std::move(c));
}

std::strong_ordering Box::operator<=>(const Box& other) const {
  if (auto c = cell_ <=> other.cell_; c != 0) return c;
  auto a = coords_.begin();
  auto b = other.coords_.begin();
  for (; a != coords_.end() && b != other.coords_.end(); ++a, ++b) {
    if (auto c = a->first <=> b->first; c != 0) return c;
    if (auto c = a->second <=> b->second; c != 0) return c;
  }
  if (a == coords_.end() && b == other.coords_.end()) return std::strong_ordering::equal;
  return a == coords_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const Box& box) {
  std::ostringstream os;
  os << "{cell " << box.cell() << ":";
  for (const auto& [j, itv] : box.coords())
    os << " " << j << "=[" << to_string(itv.lo()) << "," << to_string(itv.hi()) << ")";
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------- canonical form

namespace {

// Boxes of one cell, densified over a fixed coordinate list.
using Row = std::vector<std::optional<Interval>>;
using Rows = std::vector<Row>;

// The set as a function of the coordinate at `depth`: equal adjacent slices
// are merged, so the result depends only on the point set.
Rows canonical_rows(const std::vector<const std::vector<Interval>*>& boxes, std::size_t depth,
                    std::size_t dims) {
  if (boxes.empty()) return {};
  if (depth == dims) return Rows{Row{}};

  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (const auto* b : boxes) {
    cuts.push_back((*b)[depth].lo());
    cuts.push_back((*b)[depth].hi());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  struct Run {
    Rational lo, hi;
    Rows slice;
  };
  std::vector<Run> runs;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational& lo = cuts[k];
    const Rational& hi = cuts[k + 1];
    std::vector<const std::vector<Interval>*> cover;
    for (const auto* b : boxes)
      if ((*b)[depth].lo() <= lo && hi <= (*b)[depth].hi()) cover.push_back(b);
    Rows slice = canonical_rows(cover, depth + 1, dims);
    if (!runs.empty() && runs.back().slice == slice)
      runs.back().hi = hi;
    else
      runs.push_back(Run{lo, hi, std::move(slice)});
  }

  Rows out;
  for (auto& run : runs) {
    if (run.slice.empty()) continue;
    std::optional<Interval> itv;
    if (!(run.lo == 0 && run.hi == 1)) itv = Interval(run.lo, run.hi);
    for (auto& row : run.slice) {
      Row r;
      r.reserve(row.size() + 1);
      r.push_back(itv);
      r.insert(r.end(), row.begin(), row.end());
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

std::vector<Box> canonicalize(std::vector<Box> boxes) {
  std::sort(boxes.begin(), boxes.end(),
            [](const Box& a, const Box& b) { return a.cell() < b.cell(); });
  std::vector<Box> out;
  for (std::size_t start = 0; start < boxes.size();) {
    std::size_t end = start;
    while (end < boxes.size() && boxes[end].cell() == boxes[start].cell()) ++end;
    Cell cell = boxes[start].cell();

    std::vector<CoordIndex> dims;
    for (std::size_t k = start; k < end; ++k)
      for (const auto& [j, itv] : boxes[k].coords()) dims.push_back(j);
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

    std::vector<std::vector<Interval>> dense;
    dense.reserve(end - start);
    for (std::size_t k = start; k < end; ++k) {
      std::vector<Interval> row;
      row.reserve(dims.size());
      for (CoordIndex j : dims) row.push_back(boxes[k].interval(j));
      dense.push_back(std::move(row));
    }
    std::vector<const std::vector<Interval>*> ptrs;
    for (const auto& d : dense) ptrs.push_back(&d);

    for (auto& row : canonical_rows(ptrs, 0, dims.size())) {
      Box::Coords coords;
      for (std::size_t d = 0; d < dims.size(); ++d)
        if (row[d]) coords.emplace(dims[d], *row[d]);
      out.emplace_back(cell, std::move(coords));
    }
    start = end;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- MeasurableSet

MeasurableSet::MeasurableSet(std::vector<Box> boxes) : boxes_(canonicalize(std::move(boxes))) {}

std::vector<Cell> MeasurableSet::cells() const {
  std::vector<Cell> cells;
  for (const auto& b : boxes_)
    if (cells.empty() || cells.back() != b.cell()) cells.push_back(b.cell());
  return cells;
}

std::strong_ordering MeasurableSet::operator<=>(const MeasurableSet& other) const {
  return std::lexicographical_compare_three_way(boxes_.begin(), boxes_.end(), other.boxes_.begin(),
                                                other.boxes_.end());
}

Rational measure(const MeasurableSet& s) {
  Rational total(0);
  for (const auto& b : s.boxes()) total += b.measure();
  return total;
}

std::vector<Box> box_meet(const Box& box, const MeasurableSet& s) {
  std::vector<Box> out;
  for (const auto& b : s.boxes()) {
    if (b.cell() < box.cell()) continue;
    if (b.cell() > box.cell()) break;
    if (auto m = box.intersect(b)) out.push_back(std::move(*m));
  }
  return out;
}

std::vector<Box> box_minus(const Box& box, const MeasurableSet& s) {
  std::vector<Box> pieces{box};
  for (const auto& b : s.boxes()) {
    if (b.cell() < box.cell()) continue;
    if (b.cell() > box.cell()) break;
    std::vector<Box> next;
    for (const auto& p : pieces) {
      auto rest = p.subtract(b);
      next.insert(next.end(), rest.begin(), rest.end());
    }
    pieces = std::move(next);
    if (pieces.empty()) break;
  }
  return pieces;
}

MeasurableSet intersect(const MeasurableSet& a, const MeasurableSet& b) {
  std::vector<Box> out;
  for (const auto& x : a.boxes()) {
    auto m = box_meet(x, b);
    out.insert(out.end(), m.begin(), m.end());
  }
  return MeasurableSet(std::move(out));
}

MeasurableSet intersect(const MeasurableSet& a, const Box& b) {
  return MeasurableSet(box_meet(b, a));
}

MeasurableSet subtract(const MeasurableSet& a, const MeasurableSet& b) {
  std::vector<Box> out;
  for (const auto& x : a.boxes()) {
    auto m = box_minus(x, b);
    out.insert(out.end(), m.begin(), m.end());
  }
  return MeasurableSet(std::move(out));
}

MeasurableSet unite(const MeasurableSet& a, const MeasurableSet& b) {
  std::vector<Box> all = a.boxes();
  all.insert(all.end(), b.boxes().begin(), b.boxes().end());
  return MeasurableSet(std::move(all));
}

bool is_subset(const MeasurableSet& a, const MeasurableSet& b) {
  for (const auto& x : a.boxes())
    if (!box_minus(x, b).empty()) return false;
  return true;
}

bool intersects(const MeasurableSet& a, const MeasurableSet& b) {
  for (const auto& x : a.boxes())
    if (!box_meet(x, b).empty()) return true;
  return false;
}

std::vector<RefinementAtom> refine_with_membership(std::span<const MeasurableSet> sets) {
  std::vector<RefinementAtom> atoms;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const MeasurableSet& s = sets[k];
    std::vector<RefinementAtom> next;
    MeasurableSet fresh = s;
    for (auto& atom : atoms) {
      MeasurableSet inside = intersect(atom.set, s);
      if (inside.empty()) {
        next.push_back(std::move(atom));
        continue;
      }
      MeasurableSet outside = subtract(atom.set, s);
      fresh = subtract(fresh, inside);
      auto members = atom.members;
      if (!outside.empty()) next.push_back(RefinementAtom{std::move(outside), atom.members});
      members.push_back(k);
      next.push_back(RefinementAtom{std::move(inside), std::move(members)});
    }
    if (!fresh.empty()) next.push_back(RefinementAtom{std::move(fresh), {k}});
    atoms = std::move(next);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const RefinementAtom& a, const RefinementAtom& b) { return a.set < b.set; });
  return atoms;
}

std::vector<Box> common_refinement(std::span<const MeasurableSet> sets) {
  std::vector<Box> out;
  for (const auto& atom : refine_with_membership(sets))
    out.insert(out.end(), atom.set.boxes().begin(), atom.set.boxes().end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const MeasurableSet& s) {
  if (s.empty()) return "{}";
  std::string out;
  for (const auto& b : s.boxes()) {
    if (!out.empty()) out += " | ";
    out += to_string(b);
  }
  return out;
}

}  // namespace gvm
