#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace simplex_operad {

enum class Mode { exact, floating };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

/// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, end);
}

/// A probability-sized number: either an arbitrary-precision rational kept in
/// lowest terms, or an IEEE binary64 double.
///
/// Arithmetic between two exact scalars stays exact. Anything that touches a
/// double (including any transcendental function, which callers apply to
/// `to_double()`) is floating.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den) : value_(make_rational(mpq_class(num, den))) {}
  explicit Scalar(mpq_class q) : value_(make_rational(std::move(q))) {}
  explicit Scalar(double v) : value_(v) {
    if (!std::isfinite(v)) throw std::invalid_argument("Scalar: non-finite value");
  }

  /// Parses "a/b" or "a" as exact, anything with a decimal point or exponent
  /// as floating.
  static Scalar parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("Scalar: empty number");
    bool integral = true;
    std::size_t slashes = 0;
    for (std::size_t k = 0; k < text.size(); ++k) {
      char c = text[k];
      if (c == '/') {
        ++slashes;
      } else if (c == '-' || c == '+') {
        if (k != 0 && text[k - 1] != '/') integral = false;
      } else if (c < '0' || c > '9') {
        integral = false;
      }
    }
    if (integral && slashes <= 1) {
      std::string s(text);
      if (s.front() == '+') s.erase(0, 1);
      auto slash = s.find('/');
      if (slash == 0 || slash + 1 == s.size())
        throw std::invalid_argument("Scalar: malformed fraction '" + s + "'");
      mpq_class q;
      if (q.set_str(s, 10) != 0) throw std::invalid_argument("Scalar: malformed fraction '" + s + "'");
      if (slash != std::string::npos && mpz_class(q.get_den()) == 0)
        throw std::invalid_argument("Scalar: zero denominator in '" + s + "'");
      return Scalar(std::move(q));
    }
    if (slashes != 0) throw std::invalid_argument("Scalar: malformed number '" + std::string(text) + "'");
    double v = 0.0;
    const char* first = text.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw std::invalid_argument("Scalar: malformed number '" + std::string(text) + "'");
    return Scalar(v);
  }

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  Mode mode() const { return is_exact() ? Mode::exact : Mode::floating; }

  const mpq_class& rational() const {
    if (!is_exact()) throw std::logic_error("Scalar: rational() on a floating value");
    return std::get<mpq_class>(value_);
  }

  double to_double() const {
    if (is_exact()) return std::get<mpq_class>(value_).get_d();
    return std::get<double>(value_);
  }

  /// Exact value as a rational. Doubles convert without rounding.
  mpq_class to_rational() const {
    if (is_exact()) return std::get<mpq_class>(value_);
    return mpq_class(std::get<double>(value_));
  }

  Scalar to_floating() const { return Scalar(to_double()); }

  std::string str() const {
    if (is_exact()) return std::get<mpq_class>(value_).get_str();
    return format_double(std::get<double>(value_));
  }

  int sign() const {
    if (is_exact()) return sgn(std::get<mpq_class>(value_));
    double v = std::get<double>(value_);
    return (v > 0) - (v < 0);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() + b.rational()));
    return Scalar(a.to_double() + b.to_double());
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() - b.rational()));
    return Scalar(a.to_double() - b.to_double());
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() * b.rational()));
    return Scalar(a.to_double() * b.to_double());
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.sign() == 0) throw std::domain_error("Scalar: division by zero");
    if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() / b.rational()));
    return Scalar(a.to_double() / b.to_double());
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Value equality; a double compares equal to a rational only when it
  /// represents exactly the same number.
  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (a.is_exact() && b.is_exact()) return a.rational() == b.rational();
    if (!a.is_exact() && !b.is_exact()) return a.to_double() == b.to_double();
    return a.to_rational() == b.to_rational();
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.to_rational(), b.to_rational());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  static mpq_class make_rational(mpq_class q) {
    if (mpz_class(q.get_den()) == 0) throw std::invalid_argument("Scalar: zero denominator");
    q.canonicalize();
    return q;
  }

  std::variant<mpq_class, double> value_;
};

/// |a - b| as a double; never rounds a nonzero exact difference down to 0.
inline double abs_difference(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    mpq_class d = abs(a.rational() - b.rational());
    if (d == 0) return 0.0;
    double v = d.get_d();
    return v > 0.0 ? v : 5e-324;
  }
  return std::fabs(a.to_double() - b.to_double());
}

}  // namespace simplex_operad
