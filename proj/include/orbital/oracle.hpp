#pragma once

#include <map>
#include <optional>

#include "orbital/closed_form.hpp"

namespace orbital {

/// n x n residues mod pi^N, each entry packed as a machine word (integer mod
/// p^N, or base-p digit packing of F_p[t]/t^N).  Row-major.
struct TruncatedMatrix {
  int n = 2;
  unsigned N = 1;
  FieldKind kind = FieldKind::padic;
  unsigned p = 2;
  std::array<uint64_t, 9> a{};
};

/// Elementary-divisor exponents of X over o/pi^N; well defined when
/// ord(det X) = d < N.  Throws errc::precision_too_low if det vanishes mod pi^N.
LatticeType smith_type(const TruncatedMatrix& X, long long d);

struct OracleReport {
  unsigned N = 0;
  BigInt count;
  Rational volume;
  std::optional<bool> stabilized;
  double millis = 0;
};

struct FiberSweep {
  unsigned N = 0;
  bool typed = false;  // per-type buckets valid (requires N > d)
  std::map<LatticeType, BigInt> by_type;
  BigInt total = 0;
  BigInt rank1 = 0;  // solutions whose reduction mod pi has rank exactly 1 (n = 3)
  double millis = 0;
};

/// Brute-force fiber counting over M_n(o/pi^N): all X with char poly congruent
/// to chi mod pi^N, bucketed by Smith type.  Enumeration is column-ordered and
/// embarrassingly parallel; counts are bit-identical for any worker count.
class OracleEngine {
public:
  explicit OracleEngine(int jobs = 1) : jobs_(jobs < 1 ? 1 : jobs) {}

  static long long work_estimate(int n, unsigned p, unsigned N);
  static bool affordable(int n, unsigned p, unsigned N);
  /// max(d+1, ord(disc)+1) capped at the largest affordable N; throws
  /// errc::budget_exceeded when even N = d+1 is out of reach.
  static unsigned auto_precision(const CharPoly& chi);

  const FiberSweep& sweep(const CharPoly& chi, unsigned N);
  OracleReport fiber_volume(const CharPoly& chi, const LatticeType& k, unsigned N);
  /// Volume of the whole fiber, no type restriction.
  Rational total_volume(const CharPoly& chi, unsigned N);
  /// Count of fiber points whose reduction mod pi has rank 1 (n = 3 only);
  /// meaningful at any N >= 1.
  BigInt rank1_count(const CharPoly& chi, unsigned N);

  int jobs() const { return jobs_; }

private:
  int jobs_;
  std::map<std::string, FiberSweep> cache_;
};

/// Quotient-measure oracle for n = 2: the number of gamma-position-k lattices
/// in E = F[x]/(chi), normalized to minimal ord 0; this realizes the E^x-orbit
/// count weighted by unit-orbit size, which is the quotient-measure orbital
/// integral.  Windowed to pi^m R <= Lambda <= pi^{-m} R; the count must agree
/// between windows m-1 and m or errc::window_unstable is thrown.
long long lattice_orbit_count(const CharPoly& chi, const LatticeType& k, int window_m);

}  // namespace orbital
