#include "orbital/qvalue.hpp"

#include <map>
#include <sstream>

namespace orbital {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

QPoly QPoly::q_pow(long long e) {
  if (e < 0) raise(errc::internal, "QPoly::q_pow negative exponent");
  std::vector<BigInt> c(static_cast<size_t>(e) + 1, 0);
  c.back() = 1;
  return QPoly(std::move(c));
}

QPoly QPoly::geometric(long long e) {
  if (e < 0) raise(errc::internal, "geometric series with negative length");
  return QPoly(std::vector<BigInt>(static_cast<size_t>(e), 1));
}

QPoly QPoly::linear(const BigInt& a, const BigInt& b) { return QPoly(std::vector<BigInt>{b, a}); }

const BigInt& QPoly::leading() const {
  if (c_.empty()) raise(errc::internal, "leading() of zero polynomial");
  return c_.back();
}

BigInt QPoly::content() const {
  BigInt g = 0;
  for (const auto& x : c_) g = boost::multiprecision::gcd(g, x);
  return abs(g);
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<BigInt> c(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return QPoly(std::move(c));
}

QPoly QPoly::operator-() const {
  std::vector<BigInt> c = c_;
  for (auto& x : c) x = -x;
  return QPoly(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<BigInt> c(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return QPoly(std::move(c));
}

bool QPoly::try_divide(const QPoly& den, QPoly& q) const {
  if (den.is_zero()) raise(errc::internal, "division by zero polynomial");
  if (is_zero()) {
    q = QPoly();
    return true;
  }
  if (degree() < den.degree()) return false;
  std::vector<BigInt> rem = c_;
  std::vector<BigInt> quot(c_.size() - den.c_.size() + 1, 0);
  for (size_t k = quot.size(); k-- > 0;) {
    BigInt top = rem[k + den.c_.size() - 1];
    if (top == 0) continue;
    BigInt qq, rr;
    boost::multiprecision::divide_qr(top, den.leading(), qq, rr);
    if (rr != 0) return false;
    quot[k] = qq;
    for (size_t i = 0; i < den.c_.size(); ++i) rem[k + i] -= qq * den.c_[i];
  }
  for (const auto& x : rem)
    if (x != 0) return false;
  q = QPoly(std::move(quot));
  return true;
}

static QPoly primitive_part(const QPoly& a) {
  if (a.is_zero()) return a;
  BigInt c = a.content();
  if (a.leading() < 0) c = -c;
  std::vector<BigInt> v = a.coeffs();
  for (auto& x : v) x /= c;
  return QPoly(std::move(v));
}

// pseudo-remainder of a by b (deg a >= deg b)
static QPoly prem(const QPoly& a, const QPoly& b) {
  QPoly r = a;
  const BigInt lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    long long shift = r.degree() - b.degree();
    QPoly t = QPoly(r.leading()) * QPoly::q_pow(shift) * b;
    r = QPoly(lb) * r - t;
  }
  return r;
}

QPoly QPoly::gcd(const QPoly& a, const QPoly& b) {
  QPoly g = primitive_part(a), h = primitive_part(b);
  if (g.is_zero()) return h;
  if (h.is_zero()) return g;
  if (g.degree() < h.degree()) std::swap(g, h);
  while (!h.is_zero()) {
    QPoly r = primitive_part(prem(g, h));
    g = h;
    h = r;
  }
  return primitive_part(g);
}

BigInt QPoly::eval(const BigInt& q) const {
  BigInt acc = 0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * q + c_[i];
  return acc;
}

std::string QPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    const BigInt& a = c_[i];
    if (a == 0) continue;
    BigInt mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? "-" : "+");
    }
    if (i == 0) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str() << "*";
      os << "q";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Rational::Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) raise(errc::internal, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  BigInt g = gcd(abs(num), den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
Rational Rational::operator*(const Rational& o) const { return {num * o.num, den * o.den}; }

std::string Rational::str() const {
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return {BigInt(s), 1};
  return {BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1))};
}

QValue QValue::ratio(QPoly num, QPoly den) {
  QValue v;
  v.num_ = std::move(num);
  v.den_ = std::move(den);
  v.canonicalize();
  return v;
}

QValue QValue::q_pow(long long e) {
  QValue v(1);
  if (e >= 0)
    v.num_ = QPoly::q_pow(e);
  else
    v.den_ = QPoly::q_pow(-e);
  return v;
}

void QValue::canonicalize() {
  if (den_.is_zero()) raise(errc::internal, "QValue with zero denominator");
  if (num_.is_zero()) {
    den_ = QPoly(1);
    return;
  }
  QPoly g = QPoly::gcd(num_, den_);
  if (g.degree() > 0) {
    QPoly qn, qd;
    if (!num_.try_divide(g, qn) || !den_.try_divide(g, qd)) raise(errc::internal, "gcd division failed");
    num_ = std::move(qn);
    den_ = std::move(qd);
  }
  BigInt cn = num_.content(), cd = den_.content();
  BigInt c = gcd(cn, cd);
  if (den_.leading() < 0) c = -c;
  if (c != 1) {
    std::vector<BigInt> vn = num_.coeffs(), vd = den_.coeffs();
    for (auto& x : vn) x /= c;
    for (auto& x : vd) x /= c;
    num_ = QPoly(std::move(vn));
    den_ = QPoly(std::move(vd));
  }
  // the invariant: den = q^a (q-1)^b (q+1)^c exactly
  QPoly rest = den_;
  const QPoly fam[3] = {QPoly::q_pow(1), QPoly::linear(1, -1), QPoly::linear(1, 1)};
  for (const auto& f : fam) {
    QPoly q;
    while (rest.try_divide(f, q)) rest = q;
  }
  if (rest.degree() != 0 || rest.leading() != 1)
    raise(errc::internal, "denominator escapes the q^a(q-1)^b(q+1)^c family: " + den_.str());
}

QValue QValue::operator+(const QValue& o) const { return ratio(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
QValue QValue::operator-(const QValue& o) const { return ratio(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
QValue QValue::operator*(const QValue& o) const { return ratio(num_ * o.num_, den_ * o.den_); }
QValue QValue::operator/(const QValue& o) const {
  if (o.is_zero()) raise(errc::internal, "QValue division by zero");
  return ratio(num_ * o.den_, den_ * o.num_);
}

Rational QValue::eval_at(const BigInt& q) const { return {num_.eval(q), den_.eval(q)}; }

namespace {

struct Factorization {
  BigInt constant{1};
  long long q_exp = 0;
  // exponents of the cyclotomic factors Phi_1,Phi_2,Phi_3,Phi_4,Phi_6
  std::map<int, long long> phi;
  QPoly residual{1};
};

const std::vector<std::pair<int, QPoly>>& phi_family() {
  static const std::vector<std::pair<int, QPoly>> fam = {
      {1, QPoly::linear(1, -1)},
      {2, QPoly::linear(1, 1)},
      {3, QPoly(std::vector<BigInt>{1, 1, 1})},
      {4, QPoly(std::vector<BigInt>{1, 0, 1})},
      {6, QPoly(std::vector<BigInt>{1, -1, 1})},
  };
  return fam;
}

Factorization factor_poly(const QPoly& p) {
  Factorization f;
  if (p.is_zero()) raise(errc::internal, "factoring zero");
  BigInt c = p.content();
  if (p.leading() < 0) c = -c;
  QPoly rest;
  if (!p.try_divide(QPoly(c), rest)) raise(errc::internal, "content division failed");
  f.constant = c;
  QPoly q;
  while (rest.try_divide(QPoly::q_pow(1), q)) {
    rest = q;
    ++f.q_exp;
  }
  for (const auto& [d, phi] : phi_family())
    while (rest.try_divide(phi, q)) {
      rest = q;
      ++f.phi[d];
    }
  f.residual = rest;
  return f;
}

void emit_factor(std::ostringstream& os, bool& first, const std::string& body, long long e) {
  if (e == 0) return;
  if (!first) os << "*";
  first = false;
  os << body;
  if (e > 1) os << "^" << e;
}

// Renders constant * q^a * (cyclotomic factors regrouped as q^m-1) * residual.
std::string render_product(const Factorization& f, bool force_one) {
  std::ostringstream os;
  bool first = true;
  auto phi = f.phi;
  if (f.constant != 1) {
    os << f.constant.str();
    first = false;
  }
  emit_factor(os, first, "q", f.q_exp);
  static const int regroup[] = {6, 4, 3, 2, 1};
  static const std::map<int, std::vector<int>> divisors = {
      {6, {1, 2, 3, 6}}, {4, {1, 2, 4}}, {3, {1, 3}}, {2, {1, 2}}, {1, {1}}};
  for (int m : regroup) {
    long long reps = 0;
    while (true) {
      bool can = true;
      for (int d : divisors.at(m))
        if (phi[d] < 1) can = false;
      if (!can) break;
      for (int d : divisors.at(m)) --phi[d];
      ++reps;
    }
    emit_factor(os, first, m == 1 ? "(q-1)" : "(q^" + std::to_string(m) + "-1)", reps);
  }
  static const std::map<int, std::string> phi_name = {
      {2, "(q+1)"}, {3, "(q^2+q+1)"}, {4, "(q^2+1)"}, {6, "(q^2-q+1)"}};
  for (const auto& [d, e] : phi)
    if (e > 0) emit_factor(os, first, phi_name.at(d), e);
  if (f.residual.degree() > 0) emit_factor(os, first, "(" + f.residual.str() + ")", 1);
  if (first && force_one) os << "1";
  return os.str();
}

}  // namespace

std::string QValue::str() const {
  if (num_.is_zero()) return "0";
  Factorization fn = factor_poly(num_);
  std::string out;
  if (fn.constant == -1 && (fn.q_exp || !fn.phi.empty() || fn.residual.degree() > 0)) {
    fn.constant = 1;
    out = "-";
  }
  out += render_product(fn, true);
  if (den_.degree() > 0) {
    Factorization fd = factor_poly(den_);
    std::string d = render_product(fd, true);
    bool simple = den_.coeffs().size() - 1 == static_cast<size_t>(fd.q_exp) || d.find('*') == std::string::npos;
    out += "/";
    out += simple ? d : "(" + d + ")";
  }
  return out;
}

}  // namespace orbital
