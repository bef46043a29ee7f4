#pragma once

#include <string>

#include <gmpxx.h>

namespace zeck {

// a + b*phi with rational a, b, where phi^2 = phi + 1. Arithmetic and
// comparisons are exact; to_double() is only for display.
class GoldenNumber {
 public:
  GoldenNumber() = default;
  GoldenNumber(long a) : a_(a) {}  // NOLINT: integers embed naturally
  GoldenNumber(mpq_class a, mpq_class b);

  static GoldenNumber phi() { return GoldenNumber(0, 1); }

  const mpq_class& a() const noexcept { return a_; }
  const mpq_class& b() const noexcept { return b_; }

  // Image under phi -> 1 - phi.
  GoldenNumber conjugate() const;

  // Field norm a^2 + ab - b^2 (product with the conjugate).
  mpq_class norm() const;

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  // -1, 0 or 1, decided without floating point.
  int sign() const;

  // Throws std::domain_error on zero.
  GoldenNumber inverse() const;

  // Nearest double, computed so that small values with large coefficients do
  // not lose their digits to cancellation.
  double to_double() const;

  GoldenNumber& operator+=(const GoldenNumber& o);
  GoldenNumber& operator-=(const GoldenNumber& o);
  GoldenNumber& operator*=(const GoldenNumber& o);
  GoldenNumber& operator/=(const GoldenNumber& o);

  friend GoldenNumber operator+(GoldenNumber x, const GoldenNumber& y) { return x += y; }
  friend GoldenNumber operator-(GoldenNumber x, const GoldenNumber& y) { return x -= y; }
  friend GoldenNumber operator*(GoldenNumber x, const GoldenNumber& y) { return x *= y; }
  friend GoldenNumber operator/(GoldenNumber x, const GoldenNumber& y) { return x /= y; }
  GoldenNumber operator-() const { return GoldenNumber(-a_, -b_); }

  friend bool operator==(const GoldenNumber& x, const GoldenNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const GoldenNumber& x, const GoldenNumber& y) { return (x - y).sign() < 0; }
  friend bool operator>(const GoldenNumber& x, const GoldenNumber& y) { return y < x; }
  friend bool operator<=(const GoldenNumber& x, const GoldenNumber& y) { return !(y < x); }
  friend bool operator>=(const GoldenNumber& x, const GoldenNumber& y) { return !(x < y); }

 private:
  mpq_class a_{0};
  mpq_class b_{0};
};

// phi^k for any integer k, via phi^k = F_k phi + F_{k-1} (k >= 1) and
// phi^-k = (-1)^k (F_{k+1} - F_k phi).
GoldenNumber phi_pow(int k);

// Plain rendering: "0", "2", "-1+phi", "2-phi", "1/2*phi", ...
std::string to_string(const GoldenNumber& g);

// Parses the plain rendering back ("a", "b*phi", "a+b*phi", "a-phi", ...).
GoldenNumber parse_golden(const std::string& text);

}  // namespace zeck
