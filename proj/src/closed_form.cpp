#include "orbital/closed_form.hpp"

namespace orbital {

LatticeType::LatticeType(int n_, std::array<long long, 3> k_) : n(n_), k(k_) {
  if (n != 2 && n != 3) raise(errc::bad_input, "lattice type needs n in {2,3}");
  for (int i = 0; i + 1 < n; ++i)
    if (k[static_cast<size_t>(i)] > k[static_cast<size_t>(i + 1)])
      raise(errc::bad_input, "lattice type must be nondecreasing");
  if (n == 2) k[2] = 0;
}

LatticeType LatticeType::of(long long k1, long long k2) { return {2, {k1, k2, 0}}; }
LatticeType LatticeType::of(long long k1, long long k2, long long k3) { return {3, {k1, k2, k3}}; }

long long LatticeType::sum() const {
  long long s = 0;
  for (int i = 0; i < n; ++i) s += k[static_cast<size_t>(i)];
  return s;
}

LatticeType LatticeType::shifted(long long by) const {
  LatticeType t = *this;
  for (int i = 0; i < n; ++i) t.k[static_cast<size_t>(i)] += by;
  return t;
}

bool LatticeType::operator==(const LatticeType& o) const { return n == o.n && k == o.k; }
bool LatticeType::operator<(const LatticeType& o) const { return std::tie(n, k) < std::tie(o.n, o.k); }

std::string LatticeType::str() const {
  std::string s = "(";
  for (int i = 0; i < n; ++i) {
    if (i) s += ",";
    s += std::to_string(k[static_cast<size_t>(i)]);
  }
  return s + ")";
}

std::vector<LatticeType> admissible_types(int n, long long d, long long k1_min) {
  std::vector<LatticeType> out;
  if (n == 2) {
    for (long long k1 = k1_min; 2 * k1 <= d; ++k1) out.push_back(LatticeType::of(k1, d - k1));
    return out;
  }
  for (long long k1 = k1_min; 3 * k1 <= d; ++k1)
    for (long long k2 = k1; 2 * k2 <= d - k1; ++k2) out.push_back(LatticeType::of(k1, k2, d - k1 - k2));
  return out;
}

namespace {

QValue qp(long long e) { return QValue::q_pow(e); }
QValue poly(QPoly p) { return QValue(std::move(p)); }
QPoly Q() { return QPoly::q_pow(1); }
QPoly one() { return QPoly(1); }
// (m+1)q - (m-1)
QPoly bracket(long long m) { return QPoly::linear(m + 1, -(m - 1)); }

QPoly gl_count(int n) {
  // #GL_n(kappa) = prod (q^n - q^i)
  QPoly r = one();
  for (int i = 0; i < n; ++i) r = r * (QPoly::q_pow(n) - QPoly::q_pow(i));
  return r;
}

QPoly torus_count(const GammaProfile& p) {
  if (p.ram == Ramification::unramified) return QPoly::q_pow(p.n) - one();
  return QPoly::q_pow(p.n) - QPoly::q_pow(p.n - 1);
}

void check_profile(const GammaProfile& p) {
  if (p.n != 2 && p.n != 3) raise(errc::bad_input, "profile needs n in {2,3}");
  if (p.S < 0 || p.d < 0) raise(errc::internal, "negative invariants in profile");
}

long long middle_exponent(const GammaProfile& p, long long k1) {
  // d' >= d/3 whenever 3 | d, a consequence of d_a >= d; a violation means the
  // profile itself is broken.
  long long e = p.d_prime - p.d / 3;
  if (e < 0) raise(errc::internal, "profile has d' < d/3");
  (void)k1;
  return e;
}

// The GL3 middle case (k1 < k2 = d/3 < k3), shared between both measures as
// the bracketed factor F(d,d',k1) + epsilon.
QPoly middle_factor(const GammaProfile& p, long long k1) {
  long long e = middle_exponent(p, k1);
  long long m = p.d / 3 - k1;
  QPoly f = QPoly(m + 1) * QPoly::q_pow(e + 1) - QPoly(m - 1) * QPoly::q_pow(e) +
            QPoly(3) * Q() * QPoly::geometric(e);
  return f + QPoly(p.epsilon);
}

}  // namespace

QValue so_mn(const GammaProfile& p) {
  check_profile(p);
  if (p.n == 2) {
    QValue head = poly(Q() + one()) * qp(-1);
    if (p.ram == Ramification::unramified) return head - QValue(2) * qp(-(p.S + 1));
    return head - poly(Q() + one()) * qp(-(p.S + 2));
  }
  QValue head = poly((Q() + one()) * QPoly::geometric(3)) * qp(-3);
  QValue c3 = poly(QPoly::geometric(3));
  switch (p.epsilon) {
    case 0:
      return head - QValue(3) * c3 * qp(-(p.d_prime + 3)) + QValue(3) * qp(-(3 * p.d_prime + 3));
    case 1:
      return head - poly(QPoly::linear(2, 1)) * c3 * qp(-(p.d_prime + 4)) + c3 * qp(-(3 * p.d_prime + 5));
    case 2:
      return head - poly(QPoly::linear(1, 2)) * c3 * qp(-(p.d_prime + 4)) + c3 * qp(-(3 * p.d_prime + 6));
    default:
      raise(errc::internal, "epsilon out of range");
  }
}

QValue so_hecke_geometric(const GammaProfile& p, const LatticeType& t) {
  check_profile(p);
  if (t.n != p.n) raise(errc::bad_input, "type rank does not match profile");
  if (t.sum() != p.d) return QValue();
  const long long k1 = t.k[0], k2 = t.k[1], k3 = t.k[2];
  if (p.n == 2) {
    if (2 * k1 < p.d) return qp(-k1) * poly(QPoly::q_pow(2) - one()) * qp(-2);
    // k1 = k2 = d/2
    QValue head = poly(Q() + one()) * qp(-(p.d / 2 + 1));
    if (p.ram == Ramification::unramified) return head - QValue(2) * qp(-(p.S + 1));
    return head - poly(Q() + one()) * qp(-(p.S + 2));
  }
  QValue gl32 = poly((QPoly::q_pow(3) - one()) * (QPoly::q_pow(2) - one()));
  const long long d = p.d;
  if (k1 < k2 && k2 < k3 && 3 * k2 != d) {
    long long m = 3 * k2 < d ? k2 - k1 : k3 - k2;
    return qp(k3 - k1 - d - 6) * gl32 * poly(bracket(m));
  }
  if (k1 < k2 && 3 * k2 == d && k2 < k3)
    return gl32 * qp(-(2 * k1 + p.d_prime + 6)) * poly(middle_factor(p, k1));
  if (k1 < k2 && k2 == k3) return qp(k2 - k1 - d - 5) * gl32;
  if (k1 == k2 && k2 < k3) return qp(-3 * k1 - 5) * gl32;
  if (k1 == k2 && k2 == k3) {
    // k_i = d/3; the M_3 formula shifted by the reduction
    QValue head = poly((Q() + one()) * QPoly::geometric(3)) * qp(-(3 + d));
    QValue c3 = poly(QPoly::geometric(3));
    switch (p.epsilon) {
      case 0:
        return head - QValue(3) * c3 * qp(-(p.d_prime + 2 * d / 3 + 3)) + QValue(3) * qp(-(3 * p.d_prime + 3));
      case 1:
        return head - poly(QPoly::linear(2, 1)) * c3 * qp(-(p.d_prime + 2 * d / 3 + 4)) +
               c3 * qp(-(3 * p.d_prime + 5));
      case 2:
        return head - poly(QPoly::linear(1, 2)) * c3 * qp(-(p.d_prime + 2 * d / 3 + 4)) +
               c3 * qp(-(3 * p.d_prime + 6));
      default:
        raise(errc::internal, "epsilon out of range");
    }
  }
  raise(errc::internal_case_gap, "no case matched type " + t.str() + " with d = " + std::to_string(d));
}

QValue so_hecke_quotient(const GammaProfile& p, const LatticeType& t) {
  check_profile(p);
  if (!p.quotient_supported())
    raise(errc::characteristic_unsupported,
          "quotient-measure formulas require char(F) = 0 or char(F) > n");
  if (t.n != p.n) raise(errc::bad_input, "type rank does not match profile");
  if (t.sum() != p.d) return QValue();
  const long long k1 = t.k[0], k2 = t.k[1], k3 = t.k[2];
  const bool unram = p.ram == Ramification::unramified;
  if (p.n == 2) {
    if (2 * k1 < p.d) {
      if (unram) return poly(Q() + one()) * qp(p.S - k1 - 1);
      return qp(p.S - k1);
    }
    long long e = p.S - p.d / 2;
    if (e < 0) raise(errc::internal, "profile has S < d/2");
    if (unram) return poly((Q() + one()) * QPoly::geometric(e)) + QValue(1);
    return poly(QPoly::geometric(e + 1));
  }
  const long long d = p.d;
  QValue c3 = poly(QPoly::geometric(3));
  if (k1 < k2 && k2 < k3 && 3 * k2 != d) {
    long long m = 3 * k2 < d ? k2 - k1 : k3 - k2;
    if (unram) return qp(p.S + k3 - k1 - d - 3) * c3 * poly(bracket(m));
    return qp(p.S + k3 - k1 - d - 1) * poly(bracket(m));
  }
  if (k1 < k2 && 3 * k2 == d && k2 < k3) {
    QValue f = poly(middle_factor(p, k1));
    if (unram) return qp(2 * p.d_prime - 2 * k1 - 3) * c3 * f;
    return qp(p.S - 2 * k1 - p.d_prime - 1) * f;
  }
  if (k1 < k2 && k2 == k3) {
    if (unram) return qp(p.S + k2 - k1 - d - 2) * c3;
    return qp(p.S + k2 - k1 - d);
  }
  if (k1 == k2 && k2 < k3) {
    if (unram) return qp(p.S - 3 * k1 - 2) * c3;
    return qp(p.S - 3 * k1);
  }
  if (k1 == k2 && k2 == k3) {
    QPoly qm1 = QPoly::linear(1, -1), qp1 = QPoly::linear(1, 1);
    QPoly den2 = qm1 * qm1;
    QPoly den3 = qp1 * qm1 * qm1;
    switch (p.epsilon) {
      case 0:
        return QValue::ratio(QPoly::q_pow(3 * p.d_prime - d) * QPoly::geometric(3), den2) -
               QValue::ratio(QPoly(3) * QPoly::q_pow(2 * p.d_prime - 2 * d / 3) * QPoly::geometric(3), den3) +
               QValue::ratio(QPoly(3), den3);
      case 1:
        return QValue::ratio(QPoly::q_pow(3 * p.d_prime - d + 2), den2) -
               QValue::ratio(QPoly::q_pow(2 * p.d_prime - 2 * d / 3 + 1) * QPoly::linear(2, 1), den3) +
               QValue::ratio(one(), den3);
      case 2:
        return QValue::ratio(QPoly::q_pow(3 * p.d_prime - d + 3), den2) -
               QValue::ratio(QPoly::q_pow(2 * p.d_prime - 2 * d / 3 + 2) * QPoly::linear(1, 2), den3) +
               QValue::ratio(one(), den3);
      default:
        raise(errc::internal, "epsilon out of range");
    }
  }
  raise(errc::internal_case_gap, "no case matched type " + t.str() + " with d = " + std::to_string(d));
}

QValue conversion_factor(const GammaProfile& p) {
  check_profile(p);
  if (!p.quotient_supported())
    raise(errc::characteristic_unsupported,
          "measure comparison requires char(F) = 0 or char(F) > n");
  long long n = p.n;
  // q^{-S} (#GL_n q^{-n^2}) / (#T q^{-n}), assembled as one ratio so the
  // canonicalizer sees the full cancellation.
  QPoly num = gl_count(p.n) * QPoly::q_pow(n);
  QPoly den = torus_count(p) * QPoly::q_pow(n * n + p.S);
  return QValue::ratio(std::move(num), std::move(den));
}

ReducedType reduce_type(const GammaProfile& p, const LatticeType& t) {
  check_profile(p);
  if (t.n != p.n) raise(errc::bad_input, "type rank does not match profile");
  const long long k1 = t.k[0];
  const long long shift = k1 * p.n * (p.n - 1) / 2;
  if (k1 > 0 && p.n * k1 > p.d)
    raise(errc::not_integral, "rescale by " + std::to_string(k1) + " leaves o (n k1 > d)");
  ReducedType r{p, t.shifted(-k1), QValue::q_pow(-shift)};
  r.profile.d = p.d - p.n * k1;
  r.profile.S = p.S - shift;
  if (r.profile.S < 0) raise(errc::internal, "reduced profile has negative Serre invariant");
  if (p.delta_ord >= 0) r.profile.delta_ord = p.delta_ord - p.n * (p.n - 1) * k1;
  if (p.n == 3) r.profile.d_prime = p.d_prime - k1;
  r.profile.witness_da = p.witness_da - p.n * k1;
  r.profile.witness_a.reset();
  return r;
}

QValue so_per_lattice(const GammaProfile& p, const LatticeType& t) {
  QValue v = so_hecke_geometric(p, t);
  if (v.is_zero()) return v;
  return v / QValue(count_lattices_of_type(t));
}

QValue corner_formula(const GammaProfile& p, long long k_n) {
  check_profile(p);
  if (k_n != p.d || k_n <= 0) raise(errc::bad_input, "corner formula needs k_n = ord(c_n) > 0");
  return QValue::ratio(gl_count(p.n), QPoly::linear(1, -1) * QPoly::q_pow(p.n * p.n - 1));
}

QValue partial_type_formula(const GammaProfile& p, long long k2, long long k3, bool proviso_asserted) {
  check_profile(p);
  if (p.n != 3) raise(errc::bad_input, "partial type formula is the n = 3 display");
  const long long d = p.d;
  if (d <= 0 || k2 + k3 != d || k2 < 1 || k2 > k3)
    raise(errc::bad_input, "partial type formula needs d > 0, 1 <= k2 <= k3, k2 + k3 = d");
  QValue gl32 = poly((QPoly::q_pow(3) - QPoly(1)) * (QPoly::q_pow(2) - QPoly(1)));
  if (k2 == k3) return gl32 * qp(k2 - 5 - d);
  if (3 * k2 == d) {
    if (!proviso_asserted)
      raise(errc::proviso_unverified,
            "the (d/3, 2d/3) case needs the irreducible-reduction proviso asserted");
    return gl32 * qp(2 * d / 3 - 6 - d) * poly(bracket(d / 3));
  }
  if (3 * k2 < d) return gl32 * qp(k3 - 6 - d) * poly(bracket(k2));
  return gl32 * qp(k3 - 6 - d) * poly(bracket(k3 - k2));
}

QValue derive_case3(const GammaProfile& p, long long k1) {
  check_profile(p);
  if (p.n != 3) raise(errc::bad_input, "derive_case3 is an n = 3 pipeline");
  const long long ddag = p.d - 3 * k1;
  if (ddag <= 0 || ddag % 3 != 0)
    raise(errc::bad_input, "derive_case3 needs 3 | (d - 3 k1) > 0");
  LatticeType mid = LatticeType::of(k1, p.d / 3, p.d - k1 - p.d / 3);
  ReducedType rt = reduce_type(p, mid);
  const GammaProfile& pr = rt.profile;
  const long long da = 3 * pr.d_prime + pr.epsilon;  // d^dag_a of the reduced element
  if (da < ddag) raise(errc::internal, "translated order d_a below d");

  GammaProfile translated = pr.with_d(da);
  QValue rhs;
  for (long long i = 1; 2 * i <= da; ++i)
    rhs = rhs + partial_type_formula(translated, i, da - i, /*proviso_asserted=*/true);
  QValue lhs_rest;
  for (long long j = 1; 2 * j <= ddag; ++j) {
    if (3 * j == ddag) continue;
    lhs_rest = lhs_rest + partial_type_formula(pr, j, ddag - j, /*proviso_asserted=*/false);
  }
  return rt.scale * (rhs - lhs_rest);
}

QValue stratification_sum(const GammaProfile& p) {
  check_profile(p);
  QValue acc;
  for (const auto& t : admissible_types(p.n, p.d, 0)) acc = acc + so_hecke_geometric(p, t);
  return acc;
}

}  // namespace orbital
