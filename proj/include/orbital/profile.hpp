#pragma once

#include <optional>

#include "orbital/charpoly.hpp"

namespace orbital {

enum class Ramification { unramified, ramified };

inline const char* ram_name(Ramification r) {
  return r == Ramification::unramified ? "unramified" : "ramified";
}

/// The complete invariant package of an elliptic gamma: everything the closed
/// formulas consume.  Instances come from build_profile (arithmetic route) or
/// from GammaProfile::abstract (grid route, q possibly symbolic).
struct GammaProfile {
  int n = 2;
  unsigned q = 0;  // residue field size; 0 means symbolic
  long long d = 0;
  long long delta_ord = -1;  // ord of the discriminant, -1 when unknown
  Ramification ram = Ramification::unramified;
  long long S = 0;
  long long d_prime = 0;  // floor(S/3), n = 3 only
  int epsilon = 0;        // n = 3 only
  std::optional<Scalar> witness_a;
  long long witness_da = 0;
  bool positive_characteristic = false;
  unsigned residue_char = 0;  // = p for arithmetic profiles, 0 for abstract ones

  /// Consistency-checked synthetic profile (no underlying polynomial); used by
  /// grid sweeps and the table command.  Throws errc::bad_input when the
  /// combination (n, d, ram, S) is not realizable.
  static GammaProfile abstract(int n, long long d, Ramification ram, long long S, unsigned q = 0);

  /// Same profile with ord(det) replaced; serves the translated element
  /// gamma - a*I, whose remaining invariants are unchanged.
  GammaProfile with_d(long long new_d) const;

  /// Quotient-measure formulas carry the hypothesis char(F) = 0 or char(F) > n.
  bool quotient_supported() const { return !positive_characteristic || residue_char > static_cast<unsigned>(n); }
};

struct WitnessReport {
  long long depth = 0;
  std::vector<size_t> frontier_sizes;
  long long d_a = 0;
  std::vector<uint32_t> residual;  // reduction of the rescaled translate, low-to-high
};

struct WitnessResult {
  Scalar a;
  long long d_a = 0;
  Ramification ram = Ramification::unramified;
  WitnessReport report;
};

/// True iff chi has no root in o (for degrees 2 and 3: irreducible over F).
/// Digit-by-digit root search to depth 2*ord(disc)+1; a root is only accepted
/// with a Hensel certificate, and a candidate surviving to the cap without one
/// is an error, never a guess.
bool assert_elliptic(const CharPoly& chi);

/// Breadth-first digit search for the translation witness a: the returned a
/// has n | d_a with irreducible rescaled reduction (unramified case) or the
/// maximal d_a with n not dividing d_a (ramified case).  Ties break toward the
/// lexicographically smallest digit string.
WitnessResult find_witness(const CharPoly& chi);

long long serre_invariant(long long witness_da, Ramification ram, int n);

/// Tame cross-check S = (ord(disc) - (e-1))/2; nullopt when p <= n.
std::optional<long long> serre_crosscheck(const CharPoly& chi, Ramification ram);

GammaProfile build_profile(const CharPoly& chi);

}  // namespace orbital
