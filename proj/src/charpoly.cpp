#include "orbital/charpoly.hpp"

#include <sstream>

namespace orbital {

namespace {

// Determinant by Bareiss (fraction-free) elimination; exact divisions stay in
// the coefficient domain.  Row swaps only affect the sign, which the callers
// do not use (they take valuations).
Scalar bareiss_det(std::vector<std::vector<Scalar>> m, const FieldSpec& fs) {
  const size_t sz = m.size();
  Scalar prev = Scalar::one(fs);
  for (size_t k = 0; k + 1 < sz; ++k) {
    if (m[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < sz && m[r][k].is_zero()) ++r;
      if (r == sz) return Scalar::zero(fs);
      std::swap(m[k], m[r]);
    }
    for (size_t i = k + 1; i < sz; ++i)
      for (size_t j = k + 1; j < sz; ++j)
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).divexact(prev);
    prev = m[k][k];
  }
  return m[sz - 1][sz - 1];
}

// Resultant of chi (degree n, monic) and chi' (formal degree n-1); the formal
// degree convention is harmless for monic chi even when char(F) kills the
// leading coefficient of chi'.
Scalar resultant_chi_chiprime(const FieldSpec& fs, const std::vector<Scalar>& c) {
  const int n = static_cast<int>(c.size());
  // f coefficients high-to-low: 1, c1, ..., cn
  std::vector<Scalar> f;
  f.push_back(Scalar::one(fs));
  for (const auto& ci : c) f.push_back(ci);
  // f' formal coefficients high-to-low: n, (n-1)c1, ..., 1*c_{n-1}
  std::vector<Scalar> g;
  for (int i = 0; i <= n - 1; ++i)
    g.push_back(Scalar::from_integer(fs, n - i) * (i == 0 ? Scalar::one(fs) : c[static_cast<size_t>(i - 1)]));
  const int m = n - 1;
  const size_t sz = static_cast<size_t>(n + m);
  std::vector<std::vector<Scalar>> mat(sz, std::vector<Scalar>(sz, Scalar::zero(fs)));
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) mat[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = f[static_cast<size_t>(j)];
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j)
      mat[static_cast<size_t>(m + r)][static_cast<size_t>(r + j)] = g[static_cast<size_t>(j)];
  return bareiss_det(std::move(mat), fs);
}

}  // namespace

CharPoly::CharPoly(const FieldSpec& fs, std::vector<Scalar> coeffs) : fs_(fs), c_(std::move(coeffs)) {
  if (c_.size() != 2 && c_.size() != 3) raise(errc::bad_input, "degree must be 2 or 3");
  for (const auto& ci : c_)
    if (ci.kind() != fs.kind || ci.p() != fs.p) raise(errc::bad_input, "coefficient backend mismatch");
  Scalar res = resultant_chi_chiprime(fs_, c_);
  auto o = res.ord();
  if (!o) raise(errc::degenerate_input, "discriminant vanishes: input is not regular semisimple");
  disc_ord_ = *o;
}

Scalar CharPoly::eval(const Scalar& a) const {
  Scalar acc = Scalar::one(fs_);
  for (const auto& ci : c_) acc = acc * a + ci;
  return acc;
}

CharPoly CharPoly::translate(const Scalar& a) const {
  auto k = [&](long long v) { return Scalar::from_integer(fs_, v); };
  std::vector<Scalar> nc;
  if (n() == 2) {
    nc = {c_[0] + k(2) * a, a * a + c_[0] * a + c_[1]};
  } else {
    Scalar a2 = a * a;
    nc = {c_[0] + k(3) * a, c_[1] + k(2) * c_[0] * a + k(3) * a2,
          c_[2] + c_[1] * a + c_[0] * a2 + a2 * a};
  }
  return CharPoly(fs_, std::move(nc));
}

CharPoly CharPoly::rescale(long long k) const {
  std::vector<Scalar> nc;
  for (int i = 1; i <= n(); ++i) {
    auto div = c(i).div_pi_pow(static_cast<long long>(i) * k);
    if (!div) raise(errc::not_integral, "rescale by " + std::to_string(k) + " leaves o at coefficient " + std::to_string(i));
    nc.push_back(*div);
  }
  return CharPoly(fs_, std::move(nc));
}

std::vector<uint32_t> CharPoly::reduce_mod() const {
  std::vector<uint32_t> f(static_cast<size_t>(n()) + 1, 0);
  f[static_cast<size_t>(n())] = 1;
  for (int i = 1; i <= n(); ++i) f[static_cast<size_t>(n() - i)] = c(i).residue();
  return f;
}

bool CharPoly::operator==(const CharPoly& o) const { return fs_ == o.fs_ && c_ == o.c_; }

std::string CharPoly::str() const {
  std::ostringstream os;
  os << "x^" << n();
  for (int i = 1; i <= n(); ++i) {
    const auto& ci = c(i);
    if (ci.is_zero()) continue;
    os << " + (" << ci.str() << ")";
    if (i < n()) {
      os << "*x";
      if (n() - i > 1) os << "^" << (n() - i);
    }
  }
  return os.str();
}

std::string CharPoly::key() const {
  std::ostringstream os;
  os << fs_.kind_name() << ":" << fs_.p << ":n" << n();
  for (const auto& ci : c_) os << ":" << ci.str();
  return os.str();
}

bool residue_irreducible(const std::vector<uint32_t>& f, unsigned p) {
  const size_t deg = f.size() - 1;
  if (deg != 2 && deg != 3) raise(errc::bad_input, "residue_irreducible expects degree 2 or 3");
  for (uint32_t r = 0; r < p; ++r) {
    uint64_t acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = (acc * r + f[i]) % p;
    if (acc == 0) return false;
  }
  return true;
}

}  // namespace orbital
