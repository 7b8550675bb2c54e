#include "orbital/profile.hpp"

#include <algorithm>

namespace orbital {

GammaProfile GammaProfile::abstract(int n, long long d, Ramification ram, long long S, unsigned q) {
  if (n != 2 && n != 3) raise(errc::bad_input, "n must be 2 or 3");
  if (d < 0 || S < 0) raise(errc::bad_input, "d and S must be nonnegative");
  if (q != 0 && q < 2) raise(errc::bad_input, "q must be a prime power >= 2");
  GammaProfile p;
  p.n = n;
  p.q = q;
  p.d = d;
  p.ram = ram;
  p.S = S;
  // Realizability: d_a >= d with the witness congruence, and S determines d_a.
  if (ram == Ramification::unramified) {
    if (d % n != 0) raise(errc::bad_input, "unramified requires n | d");
    long long da = 2 * S / (n - 1);
    if (2 * S % (n - 1) != 0 || da % n != 0) raise(errc::bad_input, "S not of unramified shape");
    if (da < d) raise(errc::bad_input, "S too small: needs d_a >= d");
    p.witness_da = da;
  } else {
    long long da = 2 * S / (n - 1) + 1;
    if (2 * S % (n - 1) != 0 || da % n == 0) raise(errc::bad_input, "S not of ramified shape");
    if (da < d) raise(errc::bad_input, "S too small: needs d_a >= d");
    if (d % n != 0 && da != d)
      raise(errc::bad_input, "ramified with n∤d forces d_a = d, i.e. S = (d-1)(n-1)/2");
    p.witness_da = da;
  }
  if (n == 3) {
    p.d_prime = S / 3;
    if (ram == Ramification::unramified) {
      p.epsilon = 0;
    } else {
      if (S % 3 == 2) raise(errc::bad_input, "ramified n=3 requires S mod 3 in {0,1}");
      p.epsilon = S % 3 == 0 ? 1 : 2;
    }
  }
  return p;
}

GammaProfile GammaProfile::with_d(long long new_d) const {
  GammaProfile p = *this;
  p.d = new_d;
  p.delta_ord = -1;
  return p;
}

namespace {

// chi'(r), hardcoded for n in {2,3}.
Scalar derivative_at(const CharPoly& chi, const Scalar& r) {
  const FieldSpec& fs = chi.field();
  auto k = [&](long long v) { return Scalar::from_integer(fs, v); };
  if (chi.n() == 2) return k(2) * r + chi.c(1);
  return k(3) * r * r + k(2) * chi.c(1) * r + chi.c(2);
}

long long ord_or_huge(const Scalar& x) {
  auto o = x.ord();
  return o ? *o : (1LL << 40);
}

}  // namespace

bool assert_elliptic(const CharPoly& chi) {
  const FieldSpec& fs = chi.field();
  const unsigned p = fs.p;
  const long long cap = 2 * chi.disc_valuation() + 1;
  Scalar pi = Scalar::uniformizer(fs);

  std::vector<Scalar> cand;
  for (unsigned r = 0; r < p; ++r) {
    Scalar a = Scalar::from_integer(fs, r);
    if (chi.eval(a).residue() == 0) cand.push_back(a);
  }
  Scalar pim = pi;  // pi^m
  for (long long m = 1; !cand.empty(); ++m) {
    for (const auto& r : cand) {
      Scalar fr = chi.eval(r);
      if (fr.is_zero()) return false;  // exact root
      long long vf = ord_or_huge(fr);
      long long vd = ord_or_huge(derivative_at(chi, r));
      if (vf > 2 * vd) return false;  // Hensel certificate: a root exists near r
    }
    if (m >= cap)
      raise(errc::internal, "ellipticity undecided at depth " + std::to_string(cap) + " for " + chi.str());
    std::vector<Scalar> next;
    for (const auto& r : cand)
      for (unsigned c = 0; c < p; ++c) {
        Scalar r2 = r + Scalar::from_integer(fs, c) * pim;
        if (ord_or_huge(chi.eval(r2)) >= m + 1) next.push_back(r2);
      }
    if (next.size() > 4096) raise(errc::internal, "root-candidate frontier blow-up");
    cand = std::move(next);
    pim = pim * pi;
  }
  return true;
}

WitnessResult find_witness(const CharPoly& chi) {
  const FieldSpec& fs = chi.field();
  const unsigned p = fs.p;
  const int n = chi.n();
  auto dopt = chi.det_ord();
  if (!dopt) raise(errc::not_elliptic, "det = 0: 0 is an eigenvalue");
  const long long d = *dopt;
  const long long cap = chi.disc_valuation() + 2;
  Scalar pi = Scalar::uniformizer(fs);

  WitnessResult res;
  res.report.d_a = -1;

  // depth-1 candidates: residues mod pi.  When d > 0 the reduction of chi is
  // x^n, which pins a to (pi).
  std::vector<Scalar> cand;
  if (d > 0) {
    cand.push_back(Scalar::zero(fs));
  } else {
    for (unsigned c = 0; c < p; ++c) cand.push_back(Scalar::from_integer(fs, c));
  }

  Scalar pim = pi;  // pi^m at depth m
  for (long long m = 1;; ++m) {
    long long maxd = -1;
    for (const auto& a : cand) {
      Scalar v = chi.eval(a);
      if (v.is_zero()) raise(errc::not_elliptic, "chi has the root " + a.str());
      maxd = std::max(maxd, *v.ord());
    }
    std::vector<Scalar> frontier;
    for (const auto& a : cand)
      if (*chi.eval(a).ord() == maxd) frontier.push_back(a);
    res.report.frontier_sizes.push_back(frontier.size());
    res.report.depth = m;

    if (maxd % n != 0) {
      res.a = frontier.front();
      res.d_a = maxd;
      res.ram = Ramification::ramified;
      res.report.d_a = maxd;
      CharPoly shifted = chi.translate(res.a);
      res.report.residual = shifted.reduce_mod();
      return res;
    }
    for (const auto& a : frontier) {
      CharPoly resc = chi.translate(a).rescale(maxd / n);
      auto red = resc.reduce_mod();
      if (residue_irreducible(red, p)) {
        res.a = a;
        res.d_a = maxd;
        res.ram = Ramification::unramified;
        res.report.d_a = maxd;
        res.report.residual = red;
        return res;
      }
    }
    if (m > cap)
      raise(errc::witness_not_found,
            "witness search exhausted depth " + std::to_string(cap) + " for " + chi.str());
    std::vector<Scalar> next;
    for (const auto& a : frontier)
      for (unsigned c = 0; c < p; ++c) next.push_back(a + Scalar::from_integer(fs, c) * pim);
    cand = std::move(next);
    pim = pim * pi;
  }
}

long long serre_invariant(long long witness_da, Ramification ram, int n) {
  long long num = ram == Ramification::unramified ? witness_da * (n - 1) : (witness_da - 1) * (n - 1);
  if (num < 0 || num % 2 != 0)
    raise(errc::parity_violation, "Serre invariant formula yields a non-integer for d_a=" + std::to_string(witness_da));
  return num / 2;
}

std::optional<long long> serre_crosscheck(const CharPoly& chi, Ramification ram) {
  if (chi.field().p <= static_cast<unsigned>(chi.n())) return std::nullopt;  // wild case
  long long e = ram == Ramification::ramified ? chi.n() : 1;
  long long num = chi.disc_valuation() - (e - 1);
  if (num < 0 || num % 2 != 0)
    raise(errc::parity_violation, "tame discriminant parity check failed for " + chi.str());
  return num / 2;
}

GammaProfile build_profile(const CharPoly& chi) {
  if (!assert_elliptic(chi))
    raise(errc::not_elliptic, chi.str() + " is reducible over F");
  GammaProfile p;
  p.n = chi.n();
  p.q = chi.field().p;
  p.residue_char = chi.field().p;
  p.positive_characteristic = chi.field().positive_characteristic();
  p.d = *chi.det_ord();
  p.delta_ord = chi.disc_valuation();

  WitnessResult w = find_witness(chi);
  p.ram = w.ram;
  p.witness_a = w.a;
  p.witness_da = w.d_a;
  p.S = serre_invariant(w.d_a, w.ram, p.n);
  if (w.d_a < p.d) raise(errc::internal, "witness gives d_a < d, contradicting d_a >= ord(det)");
  if (p.n == 3) {
    p.d_prime = p.S / 3;
    if (p.ram == Ramification::unramified) {
      if (p.S % 3 != 0) raise(errc::internal, "unramified n=3 must have 3 | S");
      p.epsilon = 0;
    } else {
      if (p.S % 3 == 2) raise(errc::internal, "ramified n=3 produced S = 2 mod 3");
      p.epsilon = p.S % 3 == 0 ? 1 : 2;
    }
  }
  if (auto s2 = serre_crosscheck(chi, p.ram); s2 && *s2 != p.S)
    raise(errc::internal, "Serre invariant mismatch: witness route " + std::to_string(p.S) +
                              " vs discriminant route " + std::to_string(*s2));
  return p;
}

}  // namespace orbital
