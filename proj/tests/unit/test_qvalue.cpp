#include <doctest.h>

#include "orbital/qvalue.hpp"

using namespace orbital;

namespace {
QPoly P(std::vector<long long> cs) {
  std::vector<BigInt> v(cs.begin(), cs.end());
  return QPoly(std::move(v));
}
}  // namespace

TEST_CASE("qpoly basics") {
  CHECK(QPoly::q_pow(3).degree() == 3);
  CHECK(QPoly::geometric(4) == P({1, 1, 1, 1}));
  CHECK(QPoly::geometric(0).is_zero());
  CHECK((P({1, 1}) * P({-1, 1})) == P({-1, 0, 1}));
  CHECK(P({-1, 0, 1}).eval(5) == 24);
  CHECK(P({2, -3, 1}).str() == "q^2-3*q+2");
}

TEST_CASE("qpoly gcd and exact division") {
  QPoly a = P({-1, 0, 0, 1});  // q^3-1
  QPoly b = P({-1, 1});        // q-1
  CHECK(QPoly::gcd(a, b) == b);
  QPoly q;
  REQUIRE(a.try_divide(b, q));
  CHECK(q == P({1, 1, 1}));
  CHECK(!P({1, 1}).try_divide(b, q));
}

TEST_CASE("qvalue canonical form cancels") {
  // (q^3-1)(q^2-1) / ((q-1) q^3) reduces with family denominator
  QValue v = QValue::ratio(P({-1, 0, 0, 1}) * P({-1, 0, 1}), P({-1, 1}) * QPoly::q_pow(3));
  CHECK(v.eval_at(2).str() == "21/8");
  QValue w = QValue::ratio(P({-1, 0, 0, 1}) * P({1, 1}), QPoly::q_pow(3));
  CHECK(v == w);
}

TEST_CASE("qvalue arithmetic is exact") {
  QValue a = QValue::ratio(P({1, 1}), QPoly::q_pow(1));          // (q+1)/q
  QValue b = QValue::ratio(P({2}), QPoly::q_pow(1));             // 2/q
  QValue c = a - b;                                              // (q-1)/q
  CHECK(c == QValue::ratio(P({-1, 1}), QPoly::q_pow(1)));
  CHECK(c.eval_at(2).str() == "1/2");
  CHECK((c * QValue::q_pow(1)) == QValue(P({-1, 1})));
  CHECK((QValue(1) / QValue::q_pow(2)).eval_at(3).str() == "1/9");
  CHECK(QValue::q_pow(-2).eval_at(3).str() == "1/9");
}

TEST_CASE("division must cancel into the denominator family") {
  QValue num(P({-1, 0, 0, 1}));  // q^3-1
  QValue den(P({1, 1, 1}));      // q^2+q+1
  CHECK((num / den) == QValue(P({-1, 1})));
  // leaving a q^2+q+1 downstairs is rejected
  CHECK_THROWS_AS(QValue(1) / den, error);
}

TEST_CASE("rendering regroups cyclotomic factors") {
  QValue v = QValue::ratio(P({-1, 0, 0, 1}) * P({-1, 0, 1}), QPoly::q_pow(5));
  CHECK(v.str() == "(q^3-1)*(q^2-1)/q^5");
  CHECK(QValue().str() == "0");
  CHECK(QValue(3).str() == "3");
  CHECK(QValue::q_pow(-3).str() == "1/q^3");
  CHECK((QValue(P({1, 1})) * QValue::ratio(P({1}), P({-1, 1}))).str() == "(q+1)/(q-1)");
  CHECK(QValue(P({0, 2})).str() == "2*q");
  CHECK(QValue(P({-3, 2})).str() == "(2*q-3)");
}

TEST_CASE("rational strings") {
  CHECK(Rational(21, 32).str() == "21/32");
  CHECK(Rational(-4, 8).str() == "-1/2");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational::parse("21/32") == Rational(21, 32));
  CHECK(Rational::parse("7") == Rational(7, 1));
  CHECK(Rational(3, 4) * Rational(4, 3) == Rational(1, 1));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
}

TEST_CASE("repeated factors render with exponents") {
  QPoly qm1 = QPoly::linear(1, -1);
  CHECK(QValue::ratio(QPoly(1), qm1 * qm1).str() == "1/(q-1)^2");
  CHECK(QValue(qm1 * qm1 * QPoly::linear(1, 1)).str() == "(q^2-1)*(q-1)");
  CHECK(QValue(QPoly(std::vector<BigInt>{-3})).str() == "-3");
  CHECK(QValue::ratio(QPoly::linear(-1, 0), QPoly::linear(1, -1)).str() == "-q/(q-1)");
}
