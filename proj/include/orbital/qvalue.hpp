#pragma once

#include <string>
#include <vector>

#include "orbital/scalar.hpp"

namespace orbital {

/// Dense integer-coefficient polynomial in the indeterminate q.
class QPoly {
public:
  QPoly() = default;
  QPoly(long long v) { if (v) c_.push_back(v); }
  explicit QPoly(const BigInt& v) { if (v != 0) c_.push_back(v); }
  explicit QPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static QPoly q_pow(long long e);
  /// 1 + q + ... + q^{e-1}; e must be >= 0 (0 gives the zero polynomial).
  static QPoly geometric(long long e);
  static QPoly linear(const BigInt& a, const BigInt& b);  // a*q + b

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& leading() const;
  BigInt content() const;  // nonnegative gcd of coefficients

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator-() const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  /// Polynomial division; returns true and sets q when the division is exact.
  bool try_divide(const QPoly& den, QPoly& q) const;
  static QPoly gcd(const QPoly& a, const QPoly& b);  // primitive, positive leading

  BigInt eval(const BigInt& q) const;
  std::string str() const;  // expanded form, e.g. "2*q^3-q+1"

private:
  std::vector<BigInt> c_;  // c_[i] = coefficient of q^i
  void trim() { while (!c_.empty() && c_.back() == 0) c_.pop_back(); }
};

/// Exact rational number, canonical (den > 0, gcd 1).
struct Rational {
  BigInt num{0}, den{1};
  Rational() = default;
  Rational(BigInt n, BigInt d);
  Rational operator+(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const = default;
  bool is_integer() const { return den == 1; }
  std::string str() const;
  static Rational parse(const std::string& s);
};

/// A value of the theory: a rational function in q in canonical form.  The
/// denominator always reduces to a product q^a (q-1)^b (q+1)^c; anything else
/// signals a defect upstream and is rejected at construction.
class QValue {
public:
  QValue() = default;  // zero
  QValue(long long v) : num_(v) {}
  explicit QValue(QPoly p) : num_(std::move(p)) {}
  static QValue ratio(QPoly num, QPoly den);
  static QValue q_pow(long long e);

  bool is_zero() const { return num_.is_zero(); }
  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }

  QValue operator+(const QValue& o) const;
  QValue operator-(const QValue& o) const;
  QValue operator*(const QValue& o) const;
  QValue operator/(const QValue& o) const;
  bool operator==(const QValue& o) const { return num_ == o.num_ && den_ == o.den_; }

  Rational eval_at(const BigInt& q) const;
  /// Canonical factored rendering, e.g. "(q^3-1)*(q^2-1)/q^5".
  std::string str() const;

private:
  QPoly num_{};        // zero
  QPoly den_{1};
  void canonicalize();
};

}  // namespace orbital
