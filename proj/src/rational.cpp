#include "gvm/rational.hpp"

#include <stdexcept>

namespace gvm {

Rational rat(std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r{BigInt(static_cast<long>(p)), BigInt(static_cast<long>(q))};
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    return Rational(BigInt(strip_plus(text)));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-')
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  BigInt d(strip_plus(den));
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rational r{BigInt(strip_plus(num)), d};
  r.canonicalize();
  return r;
}

std::strong_ordering compare(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRational ExtRational::operator+(const ExtRational& other) const {
  if (infinite_ || other.infinite_) return infinity();
  return ExtRational(Rational(value_ + other.value_));
}

ExtRational ExtRational::operator*(const Rational& scale) const {
  if (infinite_) return scale == 0 ? ExtRational() : infinity();
  return ExtRational(Rational(value_ * scale));
}

bool ExtRational::operator==(const ExtRational& other) const {
  if (infinite_ || other.infinite_) return infinite_ == other.infinite_;
  return value_ == other.value_;
}

std::strong_ordering ExtRational::operator<=>(const ExtRational& other) const {
  if (infinite_ && other.infinite_) return std::strong_ordering::equal;
  if (infinite_) return std::strong_ordering::greater;
  if (other.infinite_) return std::strong_ordering::less;
  return compare(value_, other.value_);
}

std::string to_string(const ExtRational& r) {
  return r.is_infinite() ? std::string("inf") : to_string(r.value());
}

std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << to_string(r); }

}  // namespace gvm
