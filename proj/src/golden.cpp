#include "zecklab/golden.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zecklab/fibzeck.hpp"

namespace zeck {

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
const double kPsi = (1.0 - std::sqrt(5.0)) / 2.0;

std::string rational_str(const mpq_class& q) { return q.get_str(10); }

}  // namespace

GoldenNumber::GoldenNumber(mpq_class a, mpq_class b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

GoldenNumber GoldenNumber::conjugate() const { return GoldenNumber(a_ + b_, -b_); }

mpq_class GoldenNumber::norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }

int GoldenNumber::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: psi < 0 makes both terms of a + b psi carry the sign of
  // a, and N = x * conj(x).
  const int sn = sgn(norm());
  return sn * sa;
}

GoldenNumber GoldenNumber::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in Q(phi)");
  const mpq_class n = norm();
  return GoldenNumber((a_ + b_) / n, -b_ / n);
}

double GoldenNumber::to_double() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sa == 0 || sb == 0 || sa == sb) return a_.get_d() + b_.get_d() * kPhi;
  // x = N / conj(x), and conj(x) = a + b psi adds two terms of one sign.
  const double conj = a_.get_d() + b_.get_d() * kPsi;
  return norm().get_d() / conj;
}

GoldenNumber& GoldenNumber::operator+=(const GoldenNumber& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

GoldenNumber& GoldenNumber::operator-=(const GoldenNumber& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

GoldenNumber& GoldenNumber::operator*=(const GoldenNumber& o) {
  const mpq_class bd = b_ * o.b_;
  const mpq_class a = a_ * o.a_ + bd;
  const mpq_class b = a_ * o.b_ + b_ * o.a_ + bd;
  a_ = a;
  b_ = b;
  return *this;
}

GoldenNumber& GoldenNumber::operator/=(const GoldenNumber& o) { return *this *= o.inverse(); }

GoldenNumber phi_pow(int k) {
  if (k == 0) return GoldenNumber(1);
  if (k > 0) return GoldenNumber(mpq_class(fib0(k - 1)), mpq_class(fib(k)));
  const int m = -k;
  mpq_class a(fib(m + 1));
  mpq_class b(-fib(m));
  if (m % 2 == 1) {
    a = -a;
    b = -b;
  }
  return GoldenNumber(a, b);
}

std::string to_string(const GoldenNumber& g) {
  const mpq_class& a = g.a();
  const mpq_class& b = g.b();
  if (sgn(b) == 0) return rational_str(a);
  std::string out;
  if (sgn(a) != 0) out = rational_str(a);
  const mpq_class mag = abs(b);
  std::string term = mag == 1 ? "phi" : rational_str(mag) + "*phi";
  if (sgn(b) < 0) {
    out += "-" + term;
  } else {
    out += (out.empty() ? "" : "+") + term;
  }
  return out;
}

GoldenNumber parse_golden(const std::string& text) {
  auto bad = [&]() { return std::invalid_argument("not an element of Q(phi): '" + text + "'"); };
  auto parse_q = [&](const std::string& s) {
    if (s.empty()) throw bad();
    for (char c : s) {
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-')) throw bad();
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw bad();
    q.canonicalize();
    return q;
  };
  const auto phi_at = text.find("phi");
  if (phi_at == std::string::npos) return GoldenNumber(parse_q(text), 0);
  if (phi_at + 3 != text.size()) throw bad();
  // Split at the sign that starts the phi term (not a leading sign).
  std::size_t split = std::string::npos;
  for (std::size_t i = phi_at; i-- > 1;) {
    if (text[i] == '+' || text[i] == '-') {
      split = i;
      break;
    }
  }
  std::string a_part = split == std::string::npos ? "" : text.substr(0, split);
  std::string b_part = split == std::string::npos ? text.substr(0, phi_at) : text.substr(split, phi_at - split);
  if (!b_part.empty() && b_part[0] == '+') b_part.erase(0, 1);
  if (!b_part.empty() && b_part.back() == '*') b_part.pop_back();
  mpq_class b;
  if (b_part.empty()) {
    b = 1;
  } else if (b_part == "-") {
    b = -1;
  } else {
    b = parse_q(b_part);
  }
  const mpq_class a = a_part.empty() ? mpq_class(0) : parse_q(a_part);
  return GoldenNumber(a, b);
}

}  // namespace zeck
