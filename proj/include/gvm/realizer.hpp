#ifndef GVM_REALIZER_HPP
#define GVM_REALIZER_HPP

#include "gvm/space.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gvm {

/// Raised by apply() when a box leaves the domain of a realizer.
class DomainError : public std::runtime_error {
 public:
  DomainError(const Box& box, CoordIndex coord);
  const Box& box() const { return box_; }
  CoordIndex coord() const { return coord_; }

 private:
  Box box_;
  CoordIndex coord_;
};

/// Invertible measure-preserving partial map of Z x [0,1)^N:
///   (n, x) |-> (n + shift, y)  with  y_{perm(i)} = x_i + offset_{perm(i)}.
/// Coordinates are permuted first, then offsets are added, then the cell is
/// shifted. The map is defined where every offset coordinate stays in [0,1).
class Realizer {
 public:
  /// Finite-support permutation, stored as input coordinate -> output coordinate.
  using Permutation = std::map<CoordIndex, CoordIndex>;
  using Offsets = std::map<CoordIndex, Rational>;

  Realizer() = default;
  Realizer(Cell shift, Permutation perm, Offsets offsets);

  static Realizer identity() { return {}; }
  static Realizer translation(Cell k) { return Realizer(k, {}, {}); }
  /// The transposition of coordinates a and b.
  static Realizer swap(CoordIndex a, CoordIndex b);
  /// Transposition (1 j): the head-swap map s_j.
  static Realizer head_swap(CoordIndex j) { return swap(1, j); }

  Cell shift() const { return shift_; }
  const Permutation& perm() const { return perm_; }
  const Offsets& offsets() const { return offsets_; }

  CoordIndex image_of(CoordIndex i) const;
  CoordIndex preimage_of(CoordIndex j) const;
  Rational offset(CoordIndex j) const;

  bool is_identity() const { return shift_ == 0 && perm_.empty() && offsets_.empty(); }
  /// Largest coordinate moved by the permutation (0 when none).
  CoordIndex max_moved() const;

  bool operator==(const Realizer& other) const = default;
  std::strong_ordering operator<=>(const Realizer& other) const;

 private:
  Cell shift_ = 0;
  Permutation perm_;
  Offsets offsets_;
};

/// "shift=k; perm=(a b)(c d); offsets=j:p/q,..."
std::string to_string(const Realizer& r);
Realizer parse_realizer(std::string_view text);

/// Acts as `second` after `first`.
Realizer compose(const Realizer& first, const Realizer& second);
Realizer invert(const Realizer& r);

/// Image of a box contained in the domain; throws DomainError otherwise.
Box apply(const Realizer& r, const Box& box);
MeasurableSet apply(const Realizer& r, const MeasurableSet& s);
/// Largest sub-box on which r is defined.
std::optional<Box> domain_of(const Realizer& r, const Box& within);
MeasurableSet domain_of(const Realizer& r, const MeasurableSet& within);

/// Identifies a microcosm: a composition-closed set of realizers.
struct Microcosm {
  struct Translations {};                 // m_1
  struct Heads { CoordIndex heads; };     // m_i, i >= 2
  struct AllHeads {};                     // m_infinity
  struct Macrocosm {};                    // every realizer
  struct FinitelyGenerated {
    std::vector<Realizer> generators;
    std::size_t search_bound = 8;
  };
  using Kind = std::variant<Translations, Heads, AllHeads, Macrocosm, FinitelyGenerated>;

  Kind kind = Macrocosm{};

  /// m_i; m(1) is the translation monoid.
  static Microcosm m(CoordIndex i);
  static Microcosm m_infinity() { return {AllHeads{}}; }
  static Microcosm macrocosm() { return {Macrocosm{}}; }
  static Microcosm generated(std::vector<Realizer> gens, std::size_t bound = 8) {
    return {FinitelyGenerated{std::move(gens), bound}};
  }

  bool operator==(const Microcosm& other) const;
};

std::string to_string(const Microcosm& m);

/// Smallest of the supported microcosms containing both (the sum m + n).
Microcosm join(const Microcosm& a, const Microcosm& b);

struct MembershipResult {
  bool member = false;
  /// For finitely generated microcosms: a word of generator indices.
  std::optional<std::vector<std::size_t>> word;
  /// True when `member` is false only because the word search hit its bound.
  bool bounded = false;
};

MembershipResult in_microcosm(const Realizer& r, const Microcosm& m);

}  // namespace gvm

#endif  // GVM_REALIZER_HPP
