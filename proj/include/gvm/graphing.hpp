#ifndef GVM_GRAPHING_HPP
#define GVM_GRAPHING_HPP

#include "gvm/realizer.hpp"

#include <string>
#include <variant>
#include <vector>

namespace gvm {

/// A finite monoid given by its multiplication table.
struct GenericTable {
  std::vector<std::string> names;
  /// table[a][b] = a * b
  std::vector<std::vector<std::size_t>> table;
  std::size_t unit = 0;

  bool operator==(const GenericTable&) const = default;
};

class WeightMonoid {
 public:
  enum class Kind { Trivial, Probabilities, Generic };

  static WeightMonoid trivial() { return WeightMonoid(Kind::Trivial); }
  static WeightMonoid probabilities() { return WeightMonoid(Kind::Probabilities); }
  /// Checks that the table is associative with the given unit.
  static WeightMonoid generic(GenericTable table);

  Kind kind() const { return kind_; }
  const GenericTable& table() const { return table_; }

  bool operator==(const WeightMonoid& other) const = default;

 private:
  explicit WeightMonoid(Kind k) : kind_(k) {}
  Kind kind_;
  GenericTable table_;
};

std::string to_string(const WeightMonoid& m);

/// Monoid element: a rational for the trivial and probability monoids,
/// an element index for a generic monoid.
class Weight {
 public:
  Weight() : value_(Rational(1)) {}
  Weight(Rational r) : value_(std::move(r)) {}  // NOLINT(implicit)
  static Weight element(std::size_t index) {
    Weight w;
    w.value_ = index;
    return w;
  }

  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  std::size_t index() const { return std::get<std::size_t>(value_); }

  bool operator==(const Weight& other) const;
  std::strong_ordering operator<=>(const Weight& other) const;

 private:
  std::variant<Rational, std::size_t> value_;
};

std::string to_string(const Weight& w);

Weight unit_of(const WeightMonoid& m);
bool belongs(const Weight& w, const WeightMonoid& m);
/// Ordered product a * b.
Weight multiply(const WeightMonoid& m, const Weight& a, const Weight& b);
/// Monoid both arguments embed into; throws std::invalid_argument if none.
WeightMonoid common_monoid(const WeightMonoid& a, const WeightMonoid& b);

struct Edge {
  Weight weight;
  MeasurableSet source;
  Realizer realizer;

  /// Image of the source; requires the source to lie in the domain.
  MeasurableSet target() const { return apply(realizer, source); }
};

struct Graphing {
  WeightMonoid weights = WeightMonoid::trivial();
  Microcosm microcosm = Microcosm::macrocosm();
  MeasurableSet carrier;
  std::vector<Edge> edges;
};

struct Violation {
  std::size_t edge;
  std::string message;
};

/// Empty result means the graphing is valid.
std::vector<Violation> validate(const Graphing& g);

enum class GraphingClass { Deterministic, NonDeterministic, Probabilistic, General };
std::string to_string(GraphingClass c);

/// The strongest label that applies.
GraphingClass classify(const Graphing& g);
/// Whether g satisfies the probabilistic condition (true for deterministic ones).
bool is_probabilistic(const Graphing& g);

/// Sum of source measures.
Rational cost(const Graphing& g);

/// Throws std::invalid_argument when the carriers overlap or the weight
/// monoids have no common extension.
Graphing disjoint_union(const Graphing& f, const Graphing& g);

/// Edges sorted by (source, realizer, weight), empty edges removed.
Graphing canonical(const Graphing& g);
/// Equality of canonical forms.
bool same_graphing(const Graphing& a, const Graphing& b);

}  // namespace gvm

#endif  // GVM_GRAPHING_HPP
