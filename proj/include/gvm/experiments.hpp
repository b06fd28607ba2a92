#ifndef GVM_EXPERIMENTS_HPP
#define GVM_EXPERIMENTS_HPP

// Seeded random graphings and the closure / associativity property runs.

#include "gvm/encodings.hpp"
#include "gvm/equivalence.hpp"
#include "gvm/execution.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gvm {

/// Draws are reduced with %, so sequences depend only on the engine and seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

struct SampleShape {
  std::size_t max_edges = 4;
  /// Endpoints of source intervals are multiples of 1/grid.
  std::int64_t grid = 4;
  /// Sources constrain coordinates 1..dims.
  CoordIndex dims = 2;
};

/// A random valid graphing on the unit cells of `cells` whose class is at
/// least `cls` (Deterministic, NonDeterministic or Probabilistic).
Graphing random_graphing(Rng& rng, GraphingClass cls, const std::vector<Cell>& cells, const SampleShape& shape = {});

struct ClosureReport {
  GraphingClass cls;
  std::uint64_t seed = 0;
  std::size_t wanted = 0;
  std::size_t attempts = 0;
  std::size_t clean = 0;
  std::size_t preserved = 0;
  /// Indices (among clean pairs) where the class was lost.
  std::vector<std::size_t> failures;
  bool passed() const { return clean == wanted && preserved == clean; }
};

/// Plugs `n` clean random pairs (f on cells {0,1}, g on {1,2}) of class `cls`
/// and checks the result keeps the class.
ClosureReport closure_experiment(GraphingClass cls, std::size_t n, std::uint64_t seed,
                                 std::size_t max_steps = 200);

struct AssociativityReport {
  std::uint64_t seed = 0;
  std::size_t wanted = 0;
  std::size_t attempts = 0;
  std::size_t clean = 0;
  std::size_t equal = 0;
  std::vector<std::size_t> failures;
  bool passed() const { return clean == wanted && equal == clean; }
};

/// Triples f on {0,1}, g on {1,2}, h on {2,3}; compares both bracketings.
AssociativityReport associativity_experiment(std::size_t n, std::uint64_t seed, std::size_t max_steps = 200);

/// The test a machine's mode calls for: det, nl or prob at 1/2.
Test default_test(const MachineSpec& spec);

struct MachineCompileReport {
  /// One search per machine edge, against m_generators(heads).
  std::vector<CompileSearch> searches;
  bool compiled = false;
  /// Meaningful when compiled.
  Graphing graphing;
  Rational cost_before{0};
  Rational cost_after{0};
  std::size_t max_len = 0;
  std::vector<std::string> language_before;
  std::vector<std::string> language_after;
  bool language_equal() const { return compiled && language_before == language_after; }
};

/// Rewrites every edge of the machine into positive words over the unit
/// shifts and head swaps, then compares languages up to max_len.
MachineCompileReport compile_machine_experiment(const MachineSpec& spec, std::size_t max_len,
                                                SeparationBounds bounds = {8, 8});

}  // namespace gvm

#endif  // GVM_EXPERIMENTS_HPP
