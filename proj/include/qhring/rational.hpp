#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qh {

// Exact rational arithmetic on 64-bit words. Values are kept reduced with a
// positive denominator; intermediates go through 128-bit to detect overflow
// of the stored representation.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) { set(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool isZero() const { return num_ == 0; }
  bool isInteger() const { return den_ == 1; }
  bool isNonNegative() const { return num_ >= 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ + i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return fromI128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = i128(a.num_) * b.den_ - i128(b.num_) * a.den_;
    __int128 d = i128(a.den_) * b.den_;
    return fromI128(n, d);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return fromI128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return fromI128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // Renders "p" when the denominator is 1, "p/q" otherwise.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  // Parses "p" or "p/q" with optional leading minus.
  static Rational parse(const std::string& text) {
    auto bad = [&] { throw std::invalid_argument("Rational: cannot parse '" + text + "'"); };
    auto parseInt = [&](const std::string& s) -> long long {
      size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i == s.size() || s.empty()) bad();
      for (size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') bad();
      try {
        return std::stoll(s);
      } catch (const std::out_of_range&) {
        bad();
      }
      return 0;  // unreachable
    };
    size_t slash = text.find('/');
    if (slash == std::string::npos) return Rational(parseInt(text));
    long long num = parseInt(text.substr(0, slash));
    long long den = parseInt(text.substr(slash + 1));
    if (den == 0) bad();
    return Rational(num, den);
  }

private:
  using i128 = __int128;

  void set(long long n, long long d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  static Rational fromI128(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 an = n < 0 ? -n : n;
    i128 g = gcd128(an, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rational: 64-bit overflow");
    Rational r;
    r.num_ = (long long)n;
    r.den_ = (long long)d;
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  long long num_;
  long long den_;
};

// A rational extended by +infinity; used for energy cutoffs and valuations.
class ExtRat {
public:
  ExtRat() : inf_(true) {}
  ExtRat(const Rational& v) : inf_(false), v_(v) {}
  ExtRat(long long v) : inf_(false), v_(v) {}

  static ExtRat infinity() { return ExtRat(); }

  bool isInf() const { return inf_; }
  const Rational& finite() const {
    if (inf_) throw std::domain_error("ExtRat: value is infinite");
    return v_;
  }

  friend ExtRat operator+(const ExtRat& a, const Rational& b) {
    return a.inf_ ? ExtRat() : ExtRat(a.v_ + b);
  }
  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    return (a.inf_ || b.inf_) ? ExtRat() : ExtRat(a.v_ + b.v_);
  }
  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }

  static ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }

  std::string str() const { return inf_ ? "inf" : v_.str(); }

private:
  bool inf_;
  Rational v_;
};

}  // namespace qh
