#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbital/errors.hpp"

namespace orbital {

using BigInt = boost::multiprecision::cpp_int;

enum class FieldKind { padic, laurent };

bool is_prime(unsigned long long m);

/// Which local field model: Q_p-style (integers, pi = p) or F_p((t))-style
/// (polynomials over F_p, pi = t).  q = p in both arithmetic backends.
struct FieldSpec {
  FieldKind kind;
  unsigned p;
  unsigned default_precision;

  FieldSpec(FieldKind k, unsigned prime, unsigned prec = 8);
  bool operator==(const FieldSpec&) const = default;
  /// char(F) > 0 exactly for the Laurent model.
  bool positive_characteristic() const { return kind == FieldKind::laurent; }
  std::string kind_name() const { return kind == FieldKind::padic ? "p-adic" : "laurent"; }
};

/// Exact element of the ring of integers o, held as a global representative:
/// an arbitrary-precision integer (p-adic) or a polynomial in t over F_p
/// (Laurent).  All valuations computed from these are exact; there is no
/// working precision on this path.
class Scalar {
public:
  Scalar() = default;

  static Scalar from_integer(const FieldSpec& fs, const BigInt& v);
  static Scalar from_residues(const FieldSpec& fs, std::vector<uint32_t> digits);
  static Scalar zero(const FieldSpec& fs) { return from_integer(fs, 0); }
  static Scalar one(const FieldSpec& fs) { return from_integer(fs, 1); }
  static Scalar uniformizer(const FieldSpec& fs);
  /// Parses the textual form: decimal integer (p-adic); for the Laurent kind a
  /// comma-separated residue list "c0,c1,..." (coefficient of t^i at slot i).
  static Scalar parse(const FieldSpec& fs, const std::string& text);

  FieldKind kind() const { return kind_; }
  unsigned p() const { return p_; }

  bool is_zero() const;
  /// pi-adic valuation; nullopt encodes +infinity (x == 0).
  std::optional<long long> ord() const;
  /// x mod pi, as a residue in [0, p).
  uint32_t residue() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;

  Scalar times_pi_pow(long long k) const;  // x * pi^k, k >= 0
  /// x / pi^k when pi^k | x; nullopt otherwise.
  std::optional<Scalar> div_pi_pow(long long k) const;
  /// Exact division in the coefficient domain (Z or F_p[t]); throws errc::internal
  /// if the division is not exact.  Used by fraction-free elimination.
  Scalar divexact(const Scalar& d) const;

  const BigInt& integer_value() const;
  const std::vector<uint32_t>& residue_coeffs() const;

  /// Image in o/pi^N packed as a machine word: the integer value mod p^N, or
  /// the base-p packing of the first N t-digits.  Requires p^N < 2^63.
  uint64_t truncate(unsigned N) const;

  std::string str() const;

private:
  FieldKind kind_ = FieldKind::padic;
  unsigned p_ = 2;
  BigInt z_;                     // p-adic payload
  std::vector<uint32_t> tpoly_;  // Laurent payload, coefficient of t^i at index i

  void trim();
  void check_same(const Scalar& o) const;
};

}  // namespace orbital
