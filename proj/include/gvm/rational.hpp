#ifndef GVM_RATIONAL_HPP
#define GVM_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace gvm {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Canonical rational p/q.
Rational rat(std::int64_t p, std::int64_t q = 1);

/// Always "p/q", with q >= 1 (so 1 prints as "1/1").
std::string to_string(const Rational& r);

/// Accepts "p/q" or "p". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::strong_ordering compare(const Rational& a, const Rational& b);

/// A nonnegative rational extended with +infinity.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)

  static ExtRational infinity() {
    ExtRational r;
    r.infinite_ = true;
    return r;
  }

  bool is_infinite() const { return infinite_; }
  /// Undefined when infinite.
  const Rational& value() const { return value_; }

  ExtRational operator+(const ExtRational& other) const;
  ExtRational operator*(const Rational& scale) const;
  bool operator==(const ExtRational& other) const;
  std::strong_ordering operator<=>(const ExtRational& other) const;

 private:
  Rational value_{0};
  bool infinite_ = false;
};

std::string to_string(const ExtRational& r);
std::ostream& operator<<(std::ostream& os, const ExtRational& r);

}  // namespace gvm

#endif  // GVM_RATIONAL_HPP
