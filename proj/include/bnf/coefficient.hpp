#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <string>
#include <string_view>

#include "bnf/errors.hpp"

namespace bnf {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Formats a rational as "p/q" with q >= 1, always including the denominator.
inline std::string to_string(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

/// Parses "p/q" or "p" (optional leading sign on p).
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) throw ConfigError("malformed rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < part.size(); ++j) {
      if (part[j] < '0' || part[j] > '9') {
        throw ConfigError("malformed rational '" + std::string(text) + "'");
      }
    }
    if (part.front() == '+') part.remove_prefix(1);
    return Integer(std::string(part));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  const Integer num = parse_int(text.substr(0, slash), true);
  const Integer den = parse_int(text.substr(slash + 1), false);
  if (den == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

/// Exact Gaussian rational re + i*im.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(Rational re) : re_(std::move(re)) {}  // NOLINT: implicit by design of the algebra
  Coefficient(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Coefficient imaginary_unit() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  Coefficient& operator+=(const Coefficient& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Coefficient& operator-=(const Coefficient& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Coefficient& operator*=(const Coefficient& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  Coefficient& operator*=(const Rational& s) {
    re_ *= s;
    im_ *= s;
    return *this;
  }
  Coefficient& operator/=(const Rational& s) {
    re_ /= s;
    im_ /= s;
    return *this;
  }

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator*(Coefficient a, const Rational& s) { return a *= s; }
  friend Coefficient operator/(Coefficient a, const Rational& s) { return a /= s; }
  friend Coefficient operator-(const Coefficient& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Coefficient& c) {
    return os << "(" << to_string(c.re_) << ") + i(" << to_string(c.im_) << ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

}  // namespace bnf
