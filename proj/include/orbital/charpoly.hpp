#pragma once

#include <vector>

#include "orbital/scalar.hpp"

namespace orbital {

/// Monic integral polynomial x^n + c_1 x^{n-1} + ... + c_n of degree n in
/// {2,3}, the characteristic polynomial of the element under study.  Regular
/// semisimplicity (nonzero discriminant) is checked at construction.
class CharPoly {
public:
  CharPoly(const FieldSpec& fs, std::vector<Scalar> coeffs);

  int n() const { return static_cast<int>(c_.size()); }
  const FieldSpec& field() const { return fs_; }
  /// c(i) is the coefficient of x^{n-i}, 1-based.
  const Scalar& c(int i) const { return c_.at(static_cast<size_t>(i - 1)); }

  Scalar eval(const Scalar& a) const;
  /// chi(x+a), the characteristic polynomial of gamma - a*I.
  CharPoly translate(const Scalar& a) const;
  /// chi(pi^k x)/pi^{nk}.  Throws errc::not_integral if a coefficient c_i/pi^{ik}
  /// leaves o.
  CharPoly rescale(long long k) const;
  /// Coefficient-wise reduction mod pi; index i holds the coefficient of x^i.
  std::vector<uint32_t> reduce_mod() const;

  /// ord of the discriminant, from the Sylvester resultant of (chi, chi') by
  /// fraction-free elimination over the global representatives.
  long long disc_valuation() const { return disc_ord_; }
  /// ord(c_n) = ord(det gamma); nullopt if c_n = 0.
  std::optional<long long> det_ord() const { return c_.back().ord(); }

  bool operator==(const CharPoly& o) const;
  std::string str() const;
  /// Stable serialization used as a memoization key.
  std::string key() const;

private:
  FieldSpec fs_;
  std::vector<Scalar> c_;
  long long disc_ord_ = 0;
};

/// True iff f (low-to-high coefficients over F_p) has no root in F_p; for
/// degrees 2 and 3 this is exactly irreducibility.
bool residue_irreducible(const std::vector<uint32_t>& f, unsigned p);

}  // namespace orbital
