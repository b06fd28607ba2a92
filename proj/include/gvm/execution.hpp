#ifndef GVM_EXECUTION_HPP
#define GVM_EXECUTION_HPP

#include "gvm/graphing.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace gvm {

enum class Side : std::uint8_t { F = 0, G = 1 };

struct Step {
  Side side;
  std::size_t edge;
  auto operator<=>(const Step&) const = default;
};

using StepSequence = std::vector<Step>;
std::string to_string(const StepSequence& steps);

struct PlugOptions {
  /// Defaults to the intersection of the two carriers.
  std::optional<MeasurableSet> cut;
  /// Longest path explored, in edges.
  std::size_t max_steps = 10000;
  /// Budget on the total number of edge applications; exceeding it marks
  /// the remaining mass partial.
  std::size_t max_work = 5'000'000;
};

enum class UnresolvedKind { Looping, Partial };

/// Mass whose path neither exits nor dies: it revisits an earlier state of
/// its own path (looping) or runs out of budget (partial).
struct Unresolved {
  UnresolvedKind kind;
  /// Starting points carrying the mass.
  MeasurableSet origin;
  Weight weight;
  StepSequence steps;
};

struct PlugResult {
  Graphing graphing;
  /// Step sequence of each result edge, parallel to graphing.edges.
  std::vector<StepSequence> paths;
  std::vector<Unresolved> unresolved;
  /// Edge applications performed.
  std::size_t work = 0;

  bool clean() const { return unresolved.empty(); }
  bool has_partial() const;
};

/// Execution of f against g: maximal alternating paths entering and leaving
/// the cut. Result edges are ordered by step sequence.
PlugResult plug(const Graphing& f, const Graphing& g, const PlugOptions& options = {});

/// Regions visited by a path started on `origin`: entry k is the set on
/// which step k is applied.
std::vector<MeasurableSet> replay(const Graphing& f, const Graphing& g, const StepSequence& steps,
                                  const MeasurableSet& origin);

struct AlternatingCycle {
  /// Canonical rotation, starting with an F step.
  StepSequence steps;
  MeasurableSet support;
  Weight weight;
};

struct CycleResult {
  std::vector<AlternatingCycle> cycles;
  /// Some path was still alive at the length bound.
  bool truncated = false;
};

/// Primitive alternating cycles of length <= max_len with nonempty support.
CycleResult cycles(const Graphing& f, const Graphing& g, std::optional<MeasurableSet> cut, std::size_t max_len);

using MeasurementMap = std::function<ExtRational(const Weight&)>;

MeasurementMap constant_measurement(ExtRational value);
/// m(w) = w for rational weights.
MeasurementMap identity_measurement();
/// Generic monoid elements by index.
MeasurementMap table_measurement(std::vector<ExtRational> values);

struct Measurement {
  ExtRational value;
  bool truncated = false;
};

/// Sum over canonical cycles of measure(support) * m(weight).
Measurement measurement(const Graphing& f, const Graphing& g, const MeasurementMap& m, std::size_t max_len);

// ---------------------------------------------------------------- tests

/// Named regions of a word encoding used to read off a verdict.
struct TestRegions {
  /// Starting configurations counted by the test.
  MeasurableSet initial;
  MeasurableSet accept;
  MeasurableSet reject;
};

struct Test {
  enum class Kind { Det, Nl, CoNl, Prob };
  Kind kind = Kind::Det;
  Rational cutpoint{1, 2};

  static Test det() { return {Kind::Det, Rational(1, 2)}; }
  static Test nl() { return {Kind::Nl, Rational(1, 2)}; }
  static Test conl() { return {Kind::CoNl, Rational(1, 2)}; }
  /// Throws std::invalid_argument unless 0 <= cutpoint < 1.
  static Test prob(Rational cutpoint = Rational(1, 2));
};

std::string to_string(const Test& t);

enum class Verdict { Accept, Reject, Undetermined };
std::string to_string(Verdict v);

/// Weighted masses leaving the initial region, normalized by its measure.
struct Masses {
  Rational accept{0};
  Rational reject{0};
  Rational looping{0};
  Rational partial{0};
};

Masses masses(const PlugResult& result, const TestRegions& regions);
Verdict evaluate_test(const PlugResult& result, const Test& t, const TestRegions& regions);

enum class BoolResult { True, False, Other };
std::string to_string(BoolResult b);
/// True: all of the initial mass reaches accept and none reaches reject;
/// False: the reverse; Other otherwise.
BoolResult classify_result(const PlugResult& result, const TestRegions& regions);

}  // namespace gvm

#endif  // GVM_EXECUTION_HPP
