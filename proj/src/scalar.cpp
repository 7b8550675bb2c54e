#include "orbital/scalar.hpp"

#include <cmath>
#include <sstream>

namespace orbital {

bool is_prime(unsigned long long m) {
  if (m < 2) return false;
  for (unsigned long long d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(FieldKind k, unsigned prime, unsigned prec)
    : kind(k), p(prime), default_precision(prec) {
  if (!is_prime(p)) raise(errc::bad_input, "residue characteristic must be prime, got " + std::to_string(p));
  if (default_precision < 1) raise(errc::bad_input, "default_precision must be >= 1");
}

void Scalar::trim() {
  while (!tpoly_.empty() && tpoly_.back() == 0) tpoly_.pop_back();
}

void Scalar::check_same(const Scalar& o) const {
  if (kind_ != o.kind_ || p_ != o.p_) raise(errc::internal, "scalar backend mismatch");
}

Scalar Scalar::from_integer(const FieldSpec& fs, const BigInt& v) {
  Scalar s;
  s.kind_ = fs.kind;
  s.p_ = fs.p;
  if (fs.kind == FieldKind::padic) {
    s.z_ = v;
  } else {
    BigInt r = v % fs.p;
    if (r < 0) r += fs.p;
    if (r != 0) s.tpoly_.push_back(static_cast<uint32_t>(r));
  }
  return s;
}

Scalar Scalar::from_residues(const FieldSpec& fs, std::vector<uint32_t> digits) {
  if (fs.kind != FieldKind::laurent) raise(errc::bad_input, "residue lists only make sense for the laurent kind");
  for (uint32_t d : digits)
    if (d >= fs.p) raise(errc::bad_input, "laurent coefficient out of range [0,p)");
  Scalar s;
  s.kind_ = fs.kind;
  s.p_ = fs.p;
  s.tpoly_ = std::move(digits);
  s.trim();
  return s;
}

Scalar Scalar::uniformizer(const FieldSpec& fs) {
  if (fs.kind == FieldKind::padic) return from_integer(fs, fs.p);
  return from_residues(fs, {0, 1});
}

Scalar Scalar::parse(const FieldSpec& fs, const std::string& text) {
  if (fs.kind == FieldKind::padic) {
    if (text.empty()) raise(errc::bad_input, "empty coefficient");
    for (size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (i == 0 && (c == '-' || c == '+')) continue;
      if (!isdigit(static_cast<unsigned char>(c))) raise(errc::bad_input, "bad integer literal: " + text);
    }
    return from_integer(fs, BigInt(text));
  }
  std::vector<uint32_t> digits;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      raise(errc::bad_input, "bad residue list: " + text);
    digits.push_back(static_cast<uint32_t>(std::stoul(item)));
  }
  return from_residues(fs, std::move(digits));
}

bool Scalar::is_zero() const {
  return kind_ == FieldKind::padic ? z_ == 0 : tpoly_.empty();
}

std::optional<long long> Scalar::ord() const {
  if (is_zero()) return std::nullopt;
  if (kind_ == FieldKind::padic) {
    BigInt v = z_;
    long long e = 0;
    while (v % p_ == 0) {
      v /= p_;
      ++e;
    }
    return e;
  }
  for (size_t i = 0; i < tpoly_.size(); ++i)
    if (tpoly_[i] != 0) return static_cast<long long>(i);
  return std::nullopt;  // unreachable, tpoly_ trimmed
}

uint32_t Scalar::residue() const {
  if (kind_ == FieldKind::padic) {
    BigInt r = z_ % p_;
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }
  return tpoly_.empty() ? 0u : tpoly_[0];
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (kind_ == FieldKind::padic) {
    s.z_ += o.z_;
    return s;
  }
  if (s.tpoly_.size() < o.tpoly_.size()) s.tpoly_.resize(o.tpoly_.size(), 0);
  for (size_t i = 0; i < o.tpoly_.size(); ++i) s.tpoly_[i] = (s.tpoly_[i] + o.tpoly_[i]) % p_;
  s.trim();
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (kind_ == FieldKind::padic) {
    s.z_ = -s.z_;
    return s;
  }
  for (auto& d : s.tpoly_) d = d == 0 ? 0 : p_ - d;
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.kind_ = kind_;
  s.p_ = p_;
  if (kind_ == FieldKind::padic) {
    s.z_ = z_ * o.z_;
    return s;
  }
  if (tpoly_.empty() || o.tpoly_.empty()) return s;
  s.tpoly_.assign(tpoly_.size() + o.tpoly_.size() - 1, 0);
  for (size_t i = 0; i < tpoly_.size(); ++i)
    for (size_t j = 0; j < o.tpoly_.size(); ++j)
      s.tpoly_[i + j] = (s.tpoly_[i + j] + tpoly_[i] * o.tpoly_[j]) % p_;
  s.trim();
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (kind_ != o.kind_ || p_ != o.p_) return false;
  return kind_ == FieldKind::padic ? z_ == o.z_ : tpoly_ == o.tpoly_;
}

Scalar Scalar::times_pi_pow(long long k) const {
  if (k < 0) raise(errc::internal, "times_pi_pow with negative exponent");
  Scalar s = *this;
  if (kind_ == FieldKind::padic) {
    for (long long i = 0; i < k; ++i) s.z_ *= p_;
    return s;
  }
  if (!s.tpoly_.empty()) s.tpoly_.insert(s.tpoly_.begin(), static_cast<size_t>(k), 0);
  return s;
}

std::optional<Scalar> Scalar::div_pi_pow(long long k) const {
  if (k <= 0) return times_pi_pow(-k);
  if (is_zero()) return *this;
  auto o = ord();
  if (!o || *o < k) return std::nullopt;
  Scalar s = *this;
  if (kind_ == FieldKind::padic) {
    BigInt q = 1;
    for (long long i = 0; i < k; ++i) q *= p_;
    s.z_ /= q;
    return s;
  }
  s.tpoly_.erase(s.tpoly_.begin(), s.tpoly_.begin() + static_cast<size_t>(k));
  return s;
}

static uint32_t inv_mod_p(uint32_t a, uint32_t p) {
  // p prime, a != 0
  uint32_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = static_cast<uint64_t>(r) * b % p;
    b = static_cast<uint64_t>(b) * b % p;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::divexact(const Scalar& d) const {
  check_same(d);
  if (d.is_zero()) raise(errc::internal, "divexact by zero");
  Scalar s;
  s.kind_ = kind_;
  s.p_ = p_;
  if (kind_ == FieldKind::padic) {
    BigInt q, r;
    boost::multiprecision::divide_qr(z_, d.z_, q, r);
    if (r != 0) raise(errc::internal, "divexact: not divisible");
    s.z_ = q;
    return s;
  }
  // polynomial long division over F_p, remainder must vanish
  std::vector<uint32_t> rem = tpoly_;
  const auto& den = d.tpoly_;
  uint32_t lead_inv = inv_mod_p(den.back(), p_);
  if (rem.size() + 1 > den.size()) s.tpoly_.assign(rem.size() - den.size() + 1, 0);
  while (rem.size() >= den.size() && !rem.empty()) {
    size_t shift = rem.size() - den.size();
    uint32_t c = static_cast<uint64_t>(rem.back()) * lead_inv % p_;
    if (c != 0) {
      s.tpoly_[shift] = c;
      for (size_t i = 0; i < den.size(); ++i) {
        uint32_t sub = static_cast<uint64_t>(c) * den[i] % p_;
        rem[shift + i] = (rem[shift + i] + p_ - sub) % p_;
      }
    }
    rem.pop_back();
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.size() < den.size()) break;
  }
  if (!rem.empty()) raise(errc::internal, "divexact: not divisible");
  s.trim();
  return s;
}

const BigInt& Scalar::integer_value() const {
  if (kind_ != FieldKind::padic) raise(errc::internal, "integer_value on laurent scalar");
  return z_;
}

const std::vector<uint32_t>& Scalar::residue_coeffs() const {
  if (kind_ != FieldKind::laurent) raise(errc::internal, "residue_coeffs on p-adic scalar");
  return tpoly_;
}

uint64_t Scalar::truncate(unsigned N) const {
  if (powl(p_, N) > powl(2.0L, 62)) raise(errc::bad_input, "p^N exceeds the word size");
  uint64_t pN = 1;
  for (unsigned i = 0; i < N; ++i) pN *= p_;
  if (kind_ == FieldKind::padic) {
    BigInt r = z_ % pN;
    if (r < 0) r += pN;
    return static_cast<uint64_t>(r);
  }
  uint64_t acc = 0, w = 1;
  for (unsigned i = 0; i < N && i < tpoly_.size(); ++i) {
    acc += tpoly_[i] * w;
    w *= p_;
  }
  return acc;
}

std::string Scalar::str() const {
  if (kind_ == FieldKind::padic) return z_.str();
  if (tpoly_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < tpoly_.size(); ++i) {
    if (tpoly_[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(tpoly_[i]);
    } else {
      if (tpoly_[i] != 1) out += std::to_string(tpoly_[i]) + "*";
      out += i == 1 ? "t" : "t^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace orbital
