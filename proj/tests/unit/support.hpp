#ifndef GVM_TEST_SUPPORT_HPP
#define GVM_TEST_SUPPORT_HPP

#include "gvm/space.hpp"

#include <cstdint>
#include <random>

namespace gvm::test {

// Small seeded generator; draws are reduced with % so sequences do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

// Box on cells [0, cells) with coordinates 1..dims on the grid of step 1/den.
inline Box grid_box(Rng& rng, int cells, CoordIndex dims, int den) {
  Box::Coords coords;
  for (CoordIndex j = 1; j <= dims; ++j) {
    if (rng.below(3) == 0) continue;
    auto a = rng.range(0, den - 1);
    auto b = rng.range(a + 1, den);
    coords.emplace(j, Interval(rat(a, den), rat(b, den)));
  }
  return Box(rng.range(0, cells - 1), std::move(coords));
}

inline MeasurableSet grid_set(Rng& rng, int cells, CoordIndex dims, int den, int max_boxes) {
  std::vector<Box> boxes;
  auto n = rng.range(0, max_boxes);
  for (int k = 0; k < n; ++k) boxes.push_back(grid_box(rng, cells, dims, den));
  return MeasurableSet(std::move(boxes));
}

// Point membership: coordinates beyond the list are 0.
inline bool contains_point(const MeasurableSet& s, Cell cell, const std::vector<Rational>& x) {
  for (const auto& b : s.boxes()) {
    if (b.cell() != cell) continue;
    bool in = true;
    for (const auto& [j, itv] : b.coords()) {
      Rational v = j <= x.size() ? x[j - 1] : Rational(0);
      if (!(itv.lo() <= v && v < itv.hi())) in = false;
    }
    if (in) return true;
  }
  return false;
}

}  // namespace gvm::test

#endif
