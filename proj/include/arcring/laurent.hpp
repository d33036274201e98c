#pragma once

// Exact arithmetic in Z[q, q^-1]: the coefficient ring of every graded
// dimension and Grothendieck-group computation in this library.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <sstream>
#include <string>

#include "arcring/common.hpp"

namespace arcring {

using BigInt = boost::multiprecision::cpp_int;

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long long c) {
    if (c != 0) coeffs_[0] = c;
  }
  LaurentPoly(const BigInt& c) {
    if (c != 0) coeffs_[0] = c;
  }

  /// c * q^e
  static LaurentPoly q_power(int e, BigInt c = 1) {
    LaurentPoly p;
    if (c != 0) p.coeffs_[e] = std::move(c);
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  // Stored coefficients are never zero.
  const std::map<int, BigInt>& terms() const { return coeffs_; }

  BigInt coeff(int e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  int min_exp() const {
    if (is_zero()) throw Error("min_exp of zero polynomial");
    return coeffs_.begin()->first;
  }
  int max_exp() const {
    if (is_zero()) throw Error("max_exp of zero polynomial");
    return coeffs_.rbegin()->first;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = -c;
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs_ < b.coeffs_;
  }

  /// The bar involution q -> q^-1.
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[-e] = c;
    return r;
  }

  /// Ring homomorphism to Z given by q = 1.
  BigInt eval_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
  }

  /// Exact quotient; throws if the divisor does not divide exactly.
  LaurentPoly divide_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw Error("division by zero polynomial");
    if (is_zero()) return LaurentPoly();
    // Normalize both to ordinary polynomials and long-divide from the top.
    int sa = min_exp(), sd = d.min_exp();
    std::map<int, BigInt> rem = coeffs_;
    LaurentPoly quot;
    const int dd = d.max_exp() - sd;
    const BigInt& dlead = d.coeffs_.rbegin()->second;
    while (!rem.empty()) {
      int top = rem.rbegin()->first;
      int qe = top - (d.max_exp());
      if (top - sa < dd) throw Error("inexact polynomial division");
      const BigInt& rlead = rem.rbegin()->second;
      if (rlead % dlead != 0) throw Error("inexact polynomial division");
      BigInt qc = rlead / dlead;
      quot.add_term(qe, qc);
      for (const auto& [e, c] : d.coeffs_) {
        int re = e + qe;
        auto it = rem.find(re);
        BigInt nc = (it == rem.end() ? BigInt(0) : it->second) - qc * c;
        if (nc == 0) {
          if (it != rem.end()) rem.erase(it);
        } else {
          rem[re] = std::move(nc);
        }
      }
    }
    return quot;
  }

  /// Canonical textual form, terms in decreasing exponent: `3*q^2 + 1 - q^-1`.
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      const int e = it->first;
      BigInt c = it->second;
      if (first) {
        if (c < 0) {
          out << "-";
          c = -c;
        }
      } else {
        out << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      if (e == 0) {
        out << c.str();
      } else {
        if (c != 1) out << c.str() << "*";
        out << "q";
        if (e != 1) out << "^" << e;
      }
      first = false;
    }
    return out.str();
  }

 private:
  void add_term(int e, const BigInt& c) {
    if (c == 0) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
      coeffs_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  std::map<int, BigInt> coeffs_;
};

/// [j] = q^(j-1) + q^(j-3) + ... + q^(1-j); extended to [−j] = −[j].
inline LaurentPoly quantum_integer(int j) {
  if (j < 0) return -quantum_integer(-j);
  LaurentPoly p;
  for (int e = j - 1; e >= 1 - j; e -= 2) p += LaurentPoly::q_power(e);
  return p;
}

/// [j]! = [1][2]...[j], with [0]! = 1.
inline LaurentPoly quantum_factorial(int j) {
  if (j < 0) throw SizeError("quantum_factorial of negative argument");
  LaurentPoly p(1);
  for (int i = 1; i <= j; ++i) p *= quantum_integer(i);
  return p;
}

/// (q + q^-1)^r, the graded dimension of r labeled circles.
inline LaurentPoly circle_power(int r) {
  LaurentPoly qq = quantum_integer(2);
  LaurentPoly p(1);
  for (int i = 0; i < r; ++i) p *= qq;
  return p;
}

/// Catalan number binom(2m, m) / (m + 1), exact.
inline BigInt catalan_number(int m) {
  if (m < 0) throw SizeError("catalan_number of negative argument");
  BigInt num = 1, den = 1;
  for (int i = 0; i < m; ++i) {
    num *= 2 * m - i;
    den *= i + 1;
  }
  return num / den / (m + 1);
}

}  // namespace arcring
