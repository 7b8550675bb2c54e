#pragma once

#include <array>

#include "orbital/profile.hpp"
#include "orbital/qvalue.hpp"

namespace orbital {

/// Nondecreasing integer tuple (k_1,...,k_n) indexing the Hecke basis element
/// supported on the Cartan cell of elementary-divisor type k.
struct LatticeType {
  int n = 2;
  std::array<long long, 3> k{0, 0, 0};

  LatticeType() = default;
  LatticeType(int n_, std::array<long long, 3> k_);
  static LatticeType of(long long k1, long long k2);
  static LatticeType of(long long k1, long long k2, long long k3);

  long long sum() const;
  LatticeType shifted(long long by) const;  // k_i + by
  bool operator==(const LatticeType& o) const;
  bool operator<(const LatticeType& o) const;
  std::string str() const;
};

/// All types with k_1 >= k1_min and sum = d.
std::vector<LatticeType> admissible_types(int n, long long d, long long k1_min = 0);

/// Orbital integral of the M_n(o)-indicator, geometric measure.
QValue so_mn(const GammaProfile& p);

/// Orbital integral of the Hecke basis element 1_{D_k}, geometric measure.
QValue so_hecke_geometric(const GammaProfile& p, const LatticeType& k);

/// Same element, quotient measure dg/dt.  Requires char(F) = 0 or char(F) > n.
QValue so_hecke_quotient(const GammaProfile& p, const LatticeType& k);

/// Factor phi with geometric = phi * quotient, identically in q:
/// phi = q^{-S} (#GL_n(kappa) q^{-n^2}) / (#T_gamma(kappa) q^{-n}).
QValue conversion_factor(const GammaProfile& p);

struct ReducedType {
  GammaProfile profile;  // invariants of gamma^{(k1)}
  LatticeType k;         // shifted so k_1 = 0
  QValue scale;          // q^{-k1 n(n-1)/2}
};

/// Reduction to first slot zero: SO_{gamma,(k)} = scale * SO_{gamma^{(k1)},(k-k1)}.
ReducedType reduce_type(const GammaProfile& p, const LatticeType& k);

/// c_{(k)} = #{M : type(M) = k} as an integer polynomial in q, by shift
/// normalization plus exact interpolation of the Hermite-form enumeration.
QPoly count_lattices_of_type(const LatticeType& k);

/// Exhaustive Hermite-form count at a concrete prime q (the enumeration oracle
/// behind the symbolic interpolation; exposed for tests).
BigInt count_lattices_enumerated(const LatticeType& k, unsigned q);

/// Volume of a single stratum: so_hecke_geometric / c_{(k)}.
QValue so_per_lattice(const GammaProfile& p, const LatticeType& k);

/// Corner type (0,...,0,k_n) with k_n = ord(c_n) > 0: #GL_n(kappa)/((q-1) q^{n^2-1}).
QValue corner_formula(const GammaProfile& p, long long k_n);

/// The four-case display for SO of type (0,k2,k3), k2+k3 = d, n = 3.  The
/// fourth case (k2,k3) = (d/3,2d/3) is only valid under the irreducible-
/// reduction proviso, which the caller must assert.
QValue partial_type_formula(const GammaProfile& p, long long k2, long long k3, bool proviso_asserted);

/// Re-derives the middle type (k1, d/3, 2d/3 - k1 shifted) through the
/// translation pipeline: reduce to k1 = 0, evaluate the translated sum at d_a
/// with the fourth case enabled, subtract the directly-computable terms.
/// Must agree with so_hecke_geometric's closed form.
QValue derive_case3(const GammaProfile& p, long long k1);

/// Sum of so_hecke_geometric over all types with k1 >= 0, sum = d; equals so_mn.
QValue stratification_sum(const GammaProfile& p);

}  // namespace orbital
