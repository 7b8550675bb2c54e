#include <map>
#include <mutex>

#include "orbital/closed_form.hpp"

namespace orbital {

namespace {

constexpr long long kOrdInf = 1LL << 40;
constexpr long long kCellBudget = 200'000'000;

long long ord_i(long long x, unsigned q) {
  if (x == 0) return kOrdInf;
  long long e = 0;
  while (x % q == 0) {
    x /= q;
    ++e;
  }
  return e;
}

long long ipow(unsigned q, long long e) {
  long long r = 1;
  for (long long i = 0; i < e; ++i) r *= q;
  return r;
}

BigInt enumerate2(long long D, long long t1, unsigned q) {
  BigInt total = 0;
  for (long long e1 = 0; e1 <= D; ++e1) {
    long long e2 = D - e1;
    // ord classes of the off-diagonal entry c mod q^{e1}
    for (long long j = 0; j <= e1; ++j) {
      BigInt cls;
      if (j == e1)
        cls = 1;  // c = 0
      else
        cls = BigInt(q - 1) * ipow(q, e1 - 1 - j);
      long long k1 = std::min({e1, e2, j == e1 ? kOrdInf : j});
      if (k1 == t1) total += cls;
    }
  }
  return total;
}

BigInt enumerate3(long long D, long long t1, long long t2, unsigned q) {
  long double cost = 0;
  for (long long e1 = 0; e1 <= D; ++e1)
    for (long long e2 = 0; e2 + e1 <= D; ++e2) cost += powl(q, static_cast<long double>(2 * e1 + e2));
  if (cost > static_cast<long double>(kCellBudget))
    raise(errc::budget_exceeded, "lattice enumeration too large at q = " + std::to_string(q));
  BigInt total = 0;
  for (long long e1 = 0; e1 <= D; ++e1) {
    for (long long e2 = 0; e1 + e2 <= D; ++e2) {
      const long long e3 = D - e1 - e2;
      const long long m1 = ipow(q, e1), m2 = ipow(q, e2);
      const long long pe2 = ipow(q, e2);
      for (long long b12 = 0; b12 < m1; ++b12) {
        const long long o12 = ord_i(b12, q);
        for (long long b23 = 0; b23 < m2; ++b23) {
          const long long o23 = ord_i(b23, q);
          const long long prod = b12 * b23;
          for (long long b13 = 0; b13 < m1; ++b13) {
            long long k1 = std::min({e1, e2, e3, o12, o23, ord_i(b13, q)});
            if (k1 != t1) continue;
            long long m = std::min({e1 + e2, e1 + e3, e2 + e3, e1 + o23, e3 + o12,
                                    ord_i(prod - pe2 * b13, q)});
            if (m - k1 == t2) total += 1;
          }
        }
      }
    }
  }
  return total;
}

const unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73};

}  // namespace

BigInt count_lattices_enumerated(const LatticeType& k, unsigned q) {
  if (!is_prime(q)) raise(errc::bad_input, "enumeration oracle needs a prime q");
  LatticeType t = k.shifted(-k.k[0]);
  long long D = t.sum();
  if (t.n == 2) return enumerate2(D, t.k[0], q);
  return enumerate3(D, t.k[0], t.k[1], q);
}

QPoly count_lattices_of_type(const LatticeType& k) {
  using boost::multiprecision::cpp_rational;
  LatticeType t = k.shifted(-k.k[0]);
  static std::map<LatticeType, QPoly> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> g(mu);
    if (auto it = memo.find(t); it != memo.end()) return it->second;
  }
  const long long deg_bound = (t.n - 1) * t.sum();
  const size_t points = static_cast<size_t>(deg_bound) + 1;
  if (points > std::size(kPrimes)) raise(errc::budget_exceeded, "type too large for interpolation");

  std::vector<cpp_rational> xs(points), ys(points);
  for (size_t i = 0; i < points; ++i) {
    xs[i] = kPrimes[i];
    ys[i] = cpp_rational(count_lattices_enumerated(t, kPrimes[i]));
  }
  // Lagrange interpolation with exact rationals
  std::vector<cpp_rational> acc(points, 0);
  for (size_t i = 0; i < points; ++i) {
    std::vector<cpp_rational> basis{1};
    cpp_rational scale = ys[i];
    for (size_t j = 0; j < points; ++j) {
      if (j == i) continue;
      scale /= xs[i] - xs[j];
      std::vector<cpp_rational> nb(basis.size() + 1, 0);
      for (size_t b = 0; b < basis.size(); ++b) {
        nb[b + 1] += basis[b];
        nb[b] -= basis[b] * xs[j];
      }
      basis = std::move(nb);
    }
    for (size_t b = 0; b < basis.size(); ++b) acc[b] += scale * basis[b];
  }
  std::vector<BigInt> coeffs;
  for (const auto& c : acc) {
    if (denominator(c) != 1)
      raise(errc::internal, "lattice-count interpolation produced a non-integer coefficient");
    coeffs.push_back(numerator(c));
  }
  QPoly result{std::move(coeffs)};
  {
    std::lock_guard<std::mutex> g(mu);
    memo.emplace(t, result);
  }
  return result;
}

}  // namespace orbital
