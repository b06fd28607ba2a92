#ifndef GVM_EQUIVALENCE_HPP
#define GVM_EQUIVALENCE_HPP

// Words over realizers, orbits, compilation of maps into a generating set,
// and cost of treeings for coordinate permutation actions.

#include "gvm/graphing.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gvm {

struct Letter {
  std::size_t generator;
  int exponent = 1;  // +1 or -1
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;
std::string to_string(const Word& w);

struct PhiWord {
  Word letters;
  Realizer composite;
  /// Starting points (within the search region) on which every prefix is defined.
  MeasurableSet domain;
};

/// Composite of a word; letters act left to right.
Realizer word_map(const std::vector<Realizer>& generators, const Word& word);
/// Points of `within` on which the whole word is defined.
MeasurableSet word_domain(const std::vector<Realizer>& generators, const Word& word, const MeasurableSet& within);

/// Words of length <= k with nonempty domain inside `within`, one per
/// distinct (composite, domain), in breadth-first order.
std::vector<PhiWord> phi_words(const std::vector<Realizer>& generators, std::size_t k, bool positive_only,
                               const MeasurableSet& within = MeasurableSet::unit_cell(0));

/// A point of the space; unlisted coordinates are 0.
struct Point {
  Cell cell = 0;
  std::map<CoordIndex, Rational> coords;
  bool operator==(const Point& other) const;
  bool operator<(const Point& other) const;
};

std::string to_string(const Point& p);
/// nullopt outside the domain.
std::optional<Point> apply(const Realizer& r, const Point& p);

/// Images of p under the words of length <= k.
std::set<Point> orbit(const Point& p, const std::vector<Realizer>& generators, std::size_t k, bool positive_only);

struct CompilationWitness {
  std::vector<MeasurableSet> partition;
  /// Positive words; generator indices past the generator list refer to theta.
  std::vector<Word> words;
};

struct CompileSearch {
  std::optional<CompilationWitness> witness;
  /// The word enumeration closed up before the length bound, so a negative
  /// answer does not depend on max_word_len.
  bool words_exhausted = false;
};

/// Searches for a partition of `domain` on whose parts `target` equals a
/// positive word in the generators, optionally followed by one element of theta.
CompileSearch is_compilable(const Realizer& target, const std::vector<Realizer>& generators,
                            std::size_t max_word_len, std::size_t max_parts, const MeasurableSet& domain,
                            const std::vector<Realizer>& theta = {});

/// Checks a witness for one map on one domain; returns the first problem.
std::optional<std::string> check_witness(const Realizer& target, const MeasurableSet& domain,
                                         const CompilationWitness& witness, const std::vector<Realizer>& generators);

/// Replaces every edge by one edge per part of its witness, realized by the
/// part's word. The result is declared in the microcosm generated by
/// `generators`. Throws std::invalid_argument naming the edge and part of
/// the first invalid witness.
Graphing compile_graphing(const Graphing& g, const std::vector<CompilationWitness>& witnesses,
                          const std::vector<Realizer>& generators);

/// Generators of m_i: shifts by +1 and -1 and the head swaps s_2..s_i.
std::vector<Realizer> m_generators(CoordIndex i);

/// Explicit treeing of the S_i action permuting coordinates 1..i on the unit
/// box of cell 0, restricted to points resolved at dyadic depth <= depth.
Graphing build_treeing(CoordIndex i, std::size_t depth);

struct TreeingCost {
  CoordIndex i = 0;
  std::size_t depth = 0;
  /// Cost of the depth-truncated treeing.
  Rational partial;
  /// Limit of the partial sums.
  Rational exact_total;
  /// partial sums for depth 0..depth.
  std::vector<Rational> partials;
  /// Measure of the points resolved at depth d, for d = 0..depth.
  std::vector<Rational> level_mass;
};

/// Counts resolved dyadic boxes by tie pattern; no boxes are materialized.
TreeingCost treeing_cost(CoordIndex i, std::size_t depth);
/// (1 - 1/i!) * prod_{k<i} (1 - k / 2^depth).
Rational treeing_closed_form(CoordIndex i, std::size_t depth);
Rational factorial(CoordIndex i);

struct SeparationBounds {
  std::size_t max_word_len = 6;
  std::size_t max_parts = 8;
};

struct SeparationReport {
  CoordIndex i = 0, j = 0;
  SeparationBounds bounds;
  /// s_j against the generators of m_i (expected: no witness).
  CompileSearch forward;
  /// s_i against the generators of m_j (expected: a witness).
  CompileSearch backward;
  Rational total_i, total_j;
  bool costs_differ = false;
  /// Always "bounded consistency check".
  std::string label;
};

/// Requires 2 <= i < j.
SeparationReport separation_experiment(CoordIndex i, CoordIndex j, SeparationBounds bounds = {});

}  // namespace gvm

#endif  // GVM_EQUIVALENCE_HPP
