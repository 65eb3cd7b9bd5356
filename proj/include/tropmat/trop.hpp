#pragma once

// Exact scalars of the tropical semifield (Q ∪ {inf}, min, +).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tropmat/errors.hpp"

namespace tropmat {

using Rational = mpq_class;

/// An element of Q ∪ {inf}. Finite values are kept canonical (lowest terms,
/// positive denominator); inf is the largest element.
class Trop {
 public:
  Trop() = default;  // inf
  Trop(long v) : finite_(true), value_(v) {}  // NOLINT(implicit)
  Trop(const Rational& v) : finite_(true), value_(v) {  // NOLINT(implicit)
    value_.canonicalize();
  }
  Trop(long num, long den) : finite_(true), value_(num, den) {
    if (den == 0) throw InputError("zero denominator");
    value_.canonicalize();
  }

  static Trop inf() { return Trop(); }

  bool is_inf() const { return !finite_; }
  bool is_finite() const { return finite_; }

  /// Precondition: finite.
  const Rational& value() const {
    if (!finite_) throw std::logic_error("value() of inf");
    return value_;
  }

  friend bool operator==(const Trop& a, const Trop& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
  }

  friend std::strong_ordering operator<=>(const Trop& a, const Trop& b) {
    if (!a.finite_ || !b.finite_) {
      return static_cast<int>(!a.finite_) <=> static_cast<int>(!b.finite_);
    }
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Classical sum, i.e. the tropical product. inf is absorbing.
  friend Trop operator+(const Trop& a, const Trop& b) {
    if (!a.finite_ || !b.finite_) return Trop();
    return Trop(Rational(a.value_ + b.value_));
  }

  Trop& operator+=(const Trop& b) { return *this = *this + b; }

  /// Classical difference. inf - finite = inf; subtracting inf is undefined.
  friend Trop operator-(const Trop& a, const Trop& b) {
    if (!b.finite_) throw std::domain_error("subtracting inf");
    if (!a.finite_) return Trop();
    return Trop(Rational(a.value_ - b.value_));
  }

  Trop operator-() const {
    if (!finite_) throw std::domain_error("negating inf");
    return Trop(Rational(-value_));
  }

 private:
  bool finite_ = false;
  Rational value_;
};

/// Tropical sum: min.
inline Trop trop_add(const Trop& a, const Trop& b) { return b < a ? b : a; }

/// Tropical product: classical +.
inline Trop trop_mul(const Trop& a, const Trop& b) { return a + b; }

inline Trop trop_max(const Trop& a, const Trop& b) { return a < b ? b : a; }

/// "inf", "p/q", integers and finite decimals such as "-3.25".
inline Trop parse_trop(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Trop {
    throw InputError("malformed tropical scalar \"" + s + "\"");
  };
  if (s == "inf" || s == "INF" || s == "Inf" || s == "∞") return Trop::inf();
  if (s.empty()) return fail();
  auto digits_only = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') return false;
    }
    return true;
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_only(num, true) || !digits_only(den, false)) return fail();
    mpz_class n(strip_plus(num)), d(den);
    if (d == 0) throw InputError("zero denominator in \"" + s + "\"");
    Rational q(n, d);
    q.canonicalize();
    return Trop(q);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool negative = !ip.empty() && ip[0] == '-';
    std::string ip_digits = (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ? ip.substr(1) : ip;
    if (ip_digits.empty()) ip_digits = "0";
    if (!digits_only(ip_digits, false) || !digits_only(fp, false)) return fail();
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpz_class num = mpz_class(ip_digits) * scale + mpz_class(fp);
    if (negative) num = -num;
    Rational q(num, scale);
    q.canonicalize();
    return Trop(q);
  }
  if (!digits_only(s, true)) return fail();
  return Trop(Rational(mpz_class(strip_plus(s))));
}

/// Inverse of parse_trop: "inf", "p/q" or an integer.
inline std::string to_string(const Trop& t) {
  if (t.is_inf()) return "inf";
  return t.value().get_str();
}

inline std::ostream& operator<<(std::ostream& os, const Trop& t) { return os << to_string(t); }

}  // namespace tropmat
