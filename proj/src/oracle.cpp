#include "orbital/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <thread>

namespace orbital {

namespace {

constexpr long long kBudget2 = 1LL << 29;
constexpr long long kBudget3 = 1LL << 25;
constexpr unsigned kMaxN = 12;

// o/p^N as integers mod p^N.
struct RingZ {
  uint32_t p;
  uint32_t N;
  uint64_t pN;
  uint64_t size() const { return pN; }
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= pN ? s - pN : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + (pN - b); }
  uint64_t mul(uint64_t a, uint64_t b) const { return a * b % pN; }
  uint64_t neg(uint64_t a) const { return a ? pN - a : 0; }
  unsigned ord(uint64_t a) const {
    if (!a) return N;
    unsigned e = 0;
    while (a % p == 0) {
      a /= p;
      ++e;
    }
    return e;
  }
  uint64_t div_pi(uint64_t a, unsigned k) const {
    for (unsigned i = 0; i < k; ++i) a /= p;
    return a;
  }
  uint64_t pi_pow(unsigned k) const {
    uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) r *= p;
    return r;
  }
  uint64_t unit_inv(uint64_t a) const {
    // a is a unit mod p^N; lift the inverse mod p by Newton doubling.
    uint64_t x = 1;
    {  // inverse mod p by Fermat
      uint64_t b = a % p, e = p - 2, r = 1;
      while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
      }
      x = r;
    }
    for (unsigned i = 1; i < N; i *= 2) x = mul(x, sub(2 % pN, mul(a, x)));
    return x;
  }
};

// F_p[t]/t^N with digits packed base p.
struct RingT {
  uint32_t p;
  uint32_t N;
  uint64_t pw[13];
  RingT(uint32_t p_, uint32_t N_) : p(p_), N(N_) {
    pw[0] = 1;
    for (uint32_t i = 1; i <= N; ++i) pw[i] = pw[i - 1] * p;
  }
  uint64_t size() const { return pw[N]; }
  uint32_t digit(uint64_t a, unsigned i) const { return static_cast<uint32_t>(a / pw[i] % p); }
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t r = 0;
    for (unsigned i = 0; i < N; ++i) r += pw[i] * ((digit(a, i) + digit(b, i)) % p);
    return r;
  }
  uint64_t sub(uint64_t a, uint64_t b) const {
    uint64_t r = 0;
    for (unsigned i = 0; i < N; ++i) r += pw[i] * ((digit(a, i) + p - digit(b, i)) % p);
    return r;
  }
  uint64_t neg(uint64_t a) const { return sub(0, a); }
  uint64_t mul(uint64_t a, uint64_t b) const {
    uint32_t out[13] = {0};
    for (unsigned i = 0; i < N; ++i) {
      uint32_t ai = digit(a, i);
      if (!ai) continue;
      for (unsigned j = 0; i + j < N; ++j) out[i + j] = (out[i + j] + ai * digit(b, j)) % p;
    }
    uint64_t r = 0;
    for (unsigned i = 0; i < N; ++i) r += pw[i] * out[i];
    return r;
  }
  unsigned ord(uint64_t a) const {
    if (!a) return N;
    unsigned e = 0;
    while (digit(a, e) == 0) ++e;
    return e;
  }
  uint64_t div_pi(uint64_t a, unsigned k) const { return a / pw[k]; }
  uint64_t pi_pow(unsigned k) const { return k >= N ? 0 : pw[k]; }
  uint64_t unit_inv(uint64_t a) const {
    // power-series inversion digit by digit
    uint32_t a0 = digit(a, 0);
    uint32_t inv0 = 1;
    {
      uint32_t b = a0, e = p - 2, r = 1;
      while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
      }
      inv0 = r;
    }
    uint32_t out[13] = {0};
    out[0] = inv0;
    for (unsigned k = 1; k < N; ++k) {
      uint32_t acc = 0;
      for (unsigned i = 1; i <= k; ++i) acc = (acc + digit(a, i) * out[k - i]) % p;
      out[k] = acc == 0 ? 0 : (p - acc) * inv0 % p;
    }
    uint64_t r = 0;
    for (unsigned i = 0; i < N; ++i) r += pw[i] * out[i];
    return r;
  }
};

// Enumerates all solutions (x, y) of a11 x + a12 y = b1, a21 x + a22 y = b2
// in the ring, via valuation-pivoted elimination.
template <class R, class F>
void solve2(const R& ring, uint64_t a11, uint64_t a12, uint64_t a21, uint64_t a22, uint64_t b1,
            uint64_t b2, F&& out) {
  const unsigned N = ring.N;
  unsigned o11 = ring.ord(a11), o12 = ring.ord(a12), o21 = ring.ord(a21), o22 = ring.ord(a22);
  unsigned omin = std::min(std::min(o11, o12), std::min(o21, o22));
  if (omin >= N) {
    if (b1 || b2) return;
    const uint64_t sz = ring.size();
    for (uint64_t x = 0; x < sz; ++x)
      for (uint64_t y = 0; y < sz; ++y) out(x, y);
    return;
  }
  bool row_swap = (o21 == omin || o22 == omin) && !(o11 == omin || o12 == omin);
  if (row_swap) {
    std::swap(a11, a21);
    std::swap(a12, a22);
    std::swap(b1, b2);
    std::swap(o11, o21);
    std::swap(o12, o22);
  }
  bool col_swap = o12 < o11;
  if (col_swap) {
    std::swap(a11, a12);
    std::swap(a21, a22);
  }
  const unsigned s1 = ring.ord(a11);
  // scale row 1 by the inverse of the unit part of the pivot
  uint64_t w = ring.unit_inv(ring.div_pi(a11, s1));
  a12 = ring.mul(w, a12);
  b1 = ring.mul(w, b1);
  // eliminate below (a21 has ord >= s1 by pivot minimality)
  uint64_t f = ring.div_pi(a21, s1);
  a22 = ring.sub(a22, ring.mul(f, a12));
  b2 = ring.sub(b2, ring.mul(f, b1));

  const unsigned s2 = std::min(ring.ord(a22), N);
  uint64_t y0 = 0;
  uint64_t y_count, y_step = ring.pi_pow(N - s2);
  if (s2 >= N) {
    if (b2 != 0) return;
    y_count = ring.size();
    y_step = 1;
  } else {
    if (ring.ord(b2) < s2) return;
    y0 = ring.mul(ring.div_pi(b2, s2), ring.unit_inv(ring.div_pi(a22, s2)));
    y_count = ring.pi_pow(s2);
  }
  const uint64_t x_step = ring.pi_pow(N - s1);
  for (uint64_t yi = 0; yi < y_count; ++yi) {
    uint64_t y = ring.add(y0, ring.mul(yi, y_step));
    uint64_t v = ring.sub(b1, ring.mul(a12, y));
    if (ring.ord(v) < s1) continue;
    uint64_t x0 = ring.div_pi(v, s1);  // pivot unit part already normalized
    for (uint64_t xi = 0, xc = ring.pi_pow(s1); xi < xc; ++xi) {
      uint64_t x = ring.add(x0, ring.mul(xi, x_step));
      if (col_swap)
        out(y, x);
      else
        out(x, y);
    }
  }
}

struct SweepAcc {
  std::map<LatticeType, long long> by_type;
  long long total = 0;
  long long rank1 = 0;
};

template <class R>
void classify2(const R& ring, uint64_t a, uint64_t b, uint64_t c, uint64_t e, long long d,
               bool typed, SweepAcc& acc) {
  ++acc.total;
  if (!typed) return;
  unsigned k1 = std::min(std::min(ring.ord(a), ring.ord(b)), std::min(ring.ord(c), ring.ord(e)));
  acc.by_type[LatticeType::of(k1, d - k1)] += 1;
}

template <class R>
void classify3(const R& ring, const uint64_t x[9], long long d, bool typed, SweepAcc& acc) {
  ++acc.total;
  unsigned k1 = ring.N;
  for (int i = 0; i < 9; ++i) k1 = std::min(k1, ring.ord(x[i]));
  unsigned m = ring.N;
  static const int rows[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& r : rows)
    for (const auto& c : rows) {
      uint64_t det = ring.sub(ring.mul(x[3 * r[0] + c[0]], x[3 * r[1] + c[1]]),
                              ring.mul(x[3 * r[0] + c[1]], x[3 * r[1] + c[0]]));
      m = std::min(m, ring.ord(det));
    }
  if (k1 == 0 && m >= 1) ++acc.rank1;
  if (!typed) return;
  acc.by_type[LatticeType::of(k1, m - k1, d - m)] += 1;
}

template <class R>
void sweep2_chunk(const R& ring, uint64_t c1, uint64_t c2, long long d, bool typed, uint64_t a_lo,
                  uint64_t a_hi, SweepAcc& acc) {
  const uint64_t sz = ring.size();
  for (uint64_t a = a_lo; a < a_hi; ++a) {
    uint64_t e = ring.sub(ring.neg(c1), a);
    uint64_t ae = ring.mul(a, e);
    for (uint64_t b = 0; b < sz; ++b)
      for (uint64_t c = 0; c < sz; ++c)
        if (ring.sub(ae, ring.mul(b, c)) == c2) classify2(ring, a, b, c, e, d, typed, acc);
  }
}

template <class R>
void sweep3_chunk(const R& ring, uint64_t c1, uint64_t c2, uint64_t c3, long long d, bool typed,
                  uint64_t col1_lo, uint64_t col1_hi, SweepAcc& acc) {
  const uint64_t sz = ring.size();
  const uint64_t sz2 = sz * sz;
  for (uint64_t i1 = col1_lo; i1 < col1_hi; ++i1) {
    const uint64_t x11 = i1 % sz, x21 = i1 / sz % sz, x31 = i1 / sz2;
    for (uint64_t i2 = 0; i2 < sz2 * sz; ++i2) {
      const uint64_t x12 = i2 % sz, x22 = i2 / sz % sz, x32 = i2 / sz2;
      const uint64_t x33 = ring.sub(ring.neg(c1), ring.add(x11, x22));
      const uint64_t m12 = ring.sub(ring.mul(x11, x22), ring.mul(x12, x21));
      // trace fixed; remaining conditions are linear in (x13, x23)
      const uint64_t lhsA = ring.add(m12, ring.mul(ring.add(x11, x22), x33));
      const uint64_t A = ring.sub(lhsA, c2);
      const uint64_t M13 = ring.sub(ring.mul(x21, x32), ring.mul(x22, x31));
      const uint64_t M23 = ring.sub(ring.mul(x11, x32), ring.mul(x12, x31));
      const uint64_t B = ring.sub(ring.neg(c3), ring.mul(x33, m12));
      solve2(ring, x31, x32, M13, ring.neg(M23), A, B, [&](uint64_t u, uint64_t v) {
        const uint64_t x[9] = {x11, x12, u, x21, x22, v, x31, x32, x33};
        classify3(ring, x, d, typed, acc);
      });
    }
  }
}

template <class R>
FiberSweep run_sweep(const R& ring, const CharPoly& chi, unsigned N, int jobs) {
  auto start = std::chrono::steady_clock::now();
  FiberSweep out;
  out.N = N;
  auto dord = chi.det_ord();
  const long long d = dord ? *dord : -1;
  out.typed = dord.has_value() && N >= static_cast<unsigned>(d) + 1;

  const uint64_t outer = chi.n() == 2 ? ring.size() : ring.size() * ring.size() * ring.size();
  const int workers = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(jobs), outer));
  std::vector<SweepAcc> accs(static_cast<size_t>(workers));
  std::vector<std::thread> threads;
  const uint64_t c1 = chi.c(1).truncate(N);
  const uint64_t c2 = chi.c(2).truncate(N);
  const uint64_t c3 = chi.n() == 3 ? chi.c(3).truncate(N) : 0;
  for (int w = 0; w < workers; ++w) {
    uint64_t lo = outer * static_cast<uint64_t>(w) / static_cast<uint64_t>(workers);
    uint64_t hi = outer * (static_cast<uint64_t>(w) + 1) / static_cast<uint64_t>(workers);
    threads.emplace_back([&, w, lo, hi]() {
      if (chi.n() == 2)
        sweep2_chunk(ring, c1, c2, d, out.typed, lo, hi, accs[static_cast<size_t>(w)]);
      else
        sweep3_chunk(ring, c1, c2, c3, d, out.typed, lo, hi, accs[static_cast<size_t>(w)]);
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& acc : accs) {
    out.total += acc.total;
    out.rank1 += acc.rank1;
    for (const auto& [k, v] : acc.by_type) out.by_type[k] += v;
  }
  out.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

uint64_t upow(unsigned p, unsigned e) {
  uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace

LatticeType smith_type(const TruncatedMatrix& X, long long d) {
  if (X.n != 2 && X.n != 3) raise(errc::bad_input, "smith_type needs n in {2,3}");
  if (X.N == 0 || X.N > kMaxN || powl(X.p, X.N) > powl(2.0L, 31))
    raise(errc::bad_input, "p^N out of the machine-word range");
  auto run = [&](const auto& ring) -> LatticeType {
    // determinant in the ring
    uint64_t det;
    if (X.n == 2) {
      det = ring.sub(ring.mul(X.a[0], X.a[3]), ring.mul(X.a[1], X.a[2]));
    } else {
      uint64_t t1 = ring.mul(X.a[0], ring.sub(ring.mul(X.a[4], X.a[8]), ring.mul(X.a[5], X.a[7])));
      uint64_t t2 = ring.mul(X.a[1], ring.sub(ring.mul(X.a[3], X.a[8]), ring.mul(X.a[5], X.a[6])));
      uint64_t t3 = ring.mul(X.a[2], ring.sub(ring.mul(X.a[3], X.a[7]), ring.mul(X.a[4], X.a[6])));
      det = ring.add(ring.sub(t1, t2), t3);
    }
    if (det == 0) raise(errc::precision_too_low, "det vanishes mod pi^N");
    if (ring.ord(det) != d) raise(errc::bad_input, "ord(det) != d");
    SweepAcc acc;
    if (X.n == 2)
      classify2(ring, X.a[0], X.a[1], X.a[2], X.a[3], d, true, acc);
    else
      classify3(ring, X.a.data(), d, true, acc);
    return acc.by_type.begin()->first;
  };
  if (X.kind == FieldKind::padic) {
    RingZ ring{X.p, X.N, upow(X.p, X.N)};
    return run(ring);
  }
  RingT ring(X.p, X.N);
  return run(ring);
}

long long OracleEngine::work_estimate(int n, unsigned p, unsigned N) {
  long double w = 1;
  for (unsigned i = 0; i < (n == 2 ? 3 * N : 6 * N); ++i) w *= p;
  return w > 1e18 ? (1LL << 62) : static_cast<long long>(w);
}

bool OracleEngine::affordable(int n, unsigned p, unsigned N) {
  if (N > kMaxN) return false;
  return work_estimate(n, p, N) <= (n == 2 ? kBudget2 : kBudget3);
}

unsigned OracleEngine::auto_precision(const CharPoly& chi) {
  auto dord = chi.det_ord();
  if (!dord) raise(errc::not_elliptic, "det = 0");
  const unsigned floor_n =
      static_cast<unsigned>(std::max(*dord + 1, chi.disc_valuation() + 1));
  unsigned best = 0;
  for (unsigned N = 1; N <= floor_n; ++N)
    if (affordable(chi.n(), chi.field().p, N)) best = N;
  if (best < static_cast<unsigned>(*dord) + 1)
    raise(errc::budget_exceeded, "no affordable precision reaches N = d+1 for " + chi.str());
  return best;
}

const FiberSweep& OracleEngine::sweep(const CharPoly& chi, unsigned N) {
  if (N < 1) raise(errc::bad_input, "N must be >= 1");
  if (!affordable(chi.n(), chi.field().p, N))
    raise(errc::budget_exceeded, "fiber enumeration at N = " + std::to_string(N) +
                                     " exceeds the desk-scale budget");
  std::string key = chi.key() + "@" + std::to_string(N);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  FiberSweep s;
  if (chi.field().kind == FieldKind::padic) {
    RingZ ring{chi.field().p, N, upow(chi.field().p, N)};
    s = run_sweep(ring, chi, N, jobs_);
  } else {
    RingT ring(chi.field().p, N);
    s = run_sweep(ring, chi, N, jobs_);
  }
  return cache_.emplace(std::move(key), std::move(s)).first->second;
}

static Rational volume_of(const BigInt& count, unsigned p, int n, unsigned N) {
  BigInt den = 1;
  for (unsigned i = 0; i < N * static_cast<unsigned>(n * n - n); ++i) den *= p;
  return {count, den};
}

OracleReport OracleEngine::fiber_volume(const CharPoly& chi, const LatticeType& k, unsigned N) {
  if (k.n != chi.n()) raise(errc::bad_input, "type rank mismatch");
  if (k.k[0] < 0) raise(errc::bad_input, "fiber oracle needs k1 >= 0");
  auto dord = chi.det_ord();
  if (!dord) raise(errc::not_elliptic, "det = 0");
  if (N < static_cast<unsigned>(*dord) + 1)
    raise(errc::precision_too_low, "need N > d to read Smith types");
  const FiberSweep& s = sweep(chi, N);
  OracleReport rep;
  rep.N = N;
  auto it = s.by_type.find(k);
  rep.count = it == s.by_type.end() ? BigInt(0) : it->second;
  rep.volume = volume_of(rep.count, chi.field().p, chi.n(), N);
  rep.millis = s.millis;
  if (N - 1 >= static_cast<unsigned>(*dord) + 1 && affordable(chi.n(), chi.field().p, N - 1)) {
    const FiberSweep& prev = sweep(chi, N - 1);
    auto pit = prev.by_type.find(k);
    BigInt pc = pit == prev.by_type.end() ? BigInt(0) : pit->second;
    rep.stabilized = volume_of(pc, chi.field().p, chi.n(), N - 1) == rep.volume;
  }
  return rep;
}

Rational OracleEngine::total_volume(const CharPoly& chi, unsigned N) {
  const FiberSweep& s = sweep(chi, N);
  return volume_of(s.total, chi.field().p, chi.n(), N);
}

BigInt OracleEngine::rank1_count(const CharPoly& chi, unsigned N) {
  if (chi.n() != 3) raise(errc::bad_input, "rank-1 slice is the n = 3 stratification");
  return sweep(chi, N).rank1;
}

namespace {

// 2x2 matrices of exact scalars, for the quotient oracle's position computation.
struct Mat2 {
  Scalar a, b, c, d;
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

long long ord_exact(const Scalar& s) {
  auto o = s.ord();
  return o ? *o : (1LL << 40);
}

// ord_E of s + t*gamma via the norm form s^2 - c1 s t + c2 t^2.
long long ord_ext(const CharPoly& chi, const Scalar& s, const Scalar& t, int e) {
  Scalar norm = s * s - chi.c(1) * s * t + chi.c(2) * t * t;
  auto o = norm.ord();
  if (!o) return 1LL << 40;
  long long v = *o * e;
  if (v % 2 != 0) raise(errc::internal, "norm valuation parity violated");
  return v / 2;
}

long long orbit_count_at(const CharPoly& chi, int e, const LatticeType& k, int m) {
  const FieldSpec& fs = chi.field();
  const unsigned p = fs.p;
  const long long W2 = 2LL * m;
  const Scalar pi = Scalar::uniformizer(fs);
  auto pi_pow = [&](long long j) { return Scalar::one(fs).times_pi_pow(j); };
  const Mat2 G{Scalar::zero(fs), -chi.c(2), Scalar::one(fs), -chi.c(1)};
  long long count = 0;
  for (long long a = 0; a <= W2; ++a) {
    for (long long b = 0; b <= W2; ++b) {
      const long long cmin = std::max<long long>(0, a + b - W2);
      uint64_t climit = 1;
      for (long long i = 0; i < a; ++i) climit *= p;
      for (uint64_t cv = 0; cv < climit; ++cv) {
        // unpack cv into a canonical representative mod pi^a
        Scalar c = Scalar::zero(fs);
        {
          uint64_t v = cv;
          for (long long i = 0; i < a && v; ++i, v /= p)
            c = c + Scalar::from_integer(fs, static_cast<long long>(v % p)).times_pi_pow(i);
        }
        if (ord_exact(c) < cmin) continue;
        // normalize: the lattice must contain a unit of o_E
        long long nu = std::min(e * a, ord_ext(chi, c, pi_pow(b), e)) - e * m;
        if (nu != 0) continue;
        Mat2 A{pi_pow(a), c, Scalar::zero(fs), pi_pow(b)};
        Mat2 adjA{pi_pow(b), -c, Scalar::zero(fs), pi_pow(a)};
        Mat2 B = adjA * G * A;
        long long k1B = std::min(std::min(ord_exact(B.a), ord_exact(B.b)),
                                 std::min(ord_exact(B.c), ord_exact(B.d)));
        Scalar detB = B.a * B.d - B.b * B.c;
        long long k2B = ord_exact(detB) - k1B;
        LatticeType pos = LatticeType::of(k1B - (a + b), k2B - (a + b));
        if (pos == k) ++count;
      }
    }
  }
  return count;
}

}  // namespace

long long lattice_orbit_count(const CharPoly& chi, const LatticeType& k, int window_m) {
  if (chi.n() != 2) raise(errc::bad_input, "lattice orbit oracle covers n = 2 only");
  if (k.n != 2) raise(errc::bad_input, "type rank mismatch");
  if (window_m < 1 || window_m > 4) raise(errc::bad_input, "window m must lie in 1..4");
  const long double cells =
      powl(chi.field().p, 2.0L * window_m) * (2 * window_m + 1) * (2 * window_m + 1);
  if (cells > 3e7L) raise(errc::budget_exceeded, "orbit window enumeration too large");
  WitnessResult w = find_witness(chi);
  const int e = w.ram == Ramification::ramified ? 2 : 1;
  long long cur = orbit_count_at(chi, e, k, window_m);
  long long prev = orbit_count_at(chi, e, k, window_m - 1);
  if (cur != prev)
    raise(errc::window_unstable, "orbit count still changing between windows " +
                                     std::to_string(window_m - 1) + " and " +
                                     std::to_string(window_m));
  return cur;
}

}  // namespace orbital
