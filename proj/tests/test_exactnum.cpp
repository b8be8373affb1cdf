#include <gmpxx.h>
#include <gtest/gtest.h>

#include <random>

#include "cat0/exactnum.hpp"

using namespace cat0;

namespace {

// Independent oracle: evaluate with 512-bit GMP floats.
mpf_class hp(const QField& x) {
  const int prec = 512;
  mpf_class s2(2, prec), s3(3, prec), s6(6, prec);
  s2 = sqrt(s2);
  s3 = sqrt(s3);
  s6 = sqrt(s6);
  mpf_class v(x.a(), prec);
  v += mpf_class(x.b(), prec) * s2;
  v += mpf_class(x.c(), prec) * s3;
  v += mpf_class(x.d(), prec) * s6;
  return v;
}

mpf_class hp(const RadicalSum& x) {
  mpf_class v(0, 512);
  for (const auto& t : x.terms()) {
    mpf_class q = hp(t.radicand);
    v += hp(t.coef) * sqrt(q);
  }
  return v;
}

QField random_field(std::mt19937_64& rng, int range = 20, int den = 7) {
  std::uniform_int_distribution<int> num(-range, range), d(1, den);
  return {Rational(num(rng), d(rng)), Rational(num(rng), d(rng)), Rational(num(rng), d(rng)),
          Rational(num(rng), d(rng))};
}

}  // namespace

TEST(QField, ProductRules) {
  QField s = QField::sqrt2() + QField::sqrt3();
  EXPECT_EQ(s * s, QField(5, 0, 0, 2));
  EXPECT_EQ(QField::sqrt2() * QField::sqrt3(), QField::sqrt6());
  EXPECT_EQ(QField::sqrt2() * QField::sqrt6(), QField(0, 0, 2, 0));
  EXPECT_EQ(QField::sqrt3() * QField::sqrt6(), QField(0, 3, 0, 0));
  EXPECT_EQ(QField::sqrt6() * QField::sqrt6(), QField(6));
}

TEST(QField, SignExamples) {
  EXPECT_EQ(qf_sign(QField(1, 1, -1, 0)), 1);
  EXPECT_EQ(qf_sign(QField(-1, 1, 1, -1)), -1);
  EXPECT_EQ(qf_sign(QField()), 0);
}

TEST(QField, SignAgreesWithHighPrecision) {
  std::mt19937_64 rng(12345);
  int checked = 0;
  for (int i = 0; i < 1000000; ++i) {
    QField x = random_field(rng, 12, 5);
    int oracle = sgn(hp(x));
    ASSERT_EQ(qf_sign(x), oracle) << x.to_string();
    ++checked;
  }
  EXPECT_EQ(checked, 1000000);
}

TEST(QField, NearCancellationSigns) {
  // Convergent-style approximations make the parts nearly cancel.
  QField close1(Rational(-1393, 985), 1, 0, 0);
  QField close2(Rational(-1351, 780), 0, 1, 0);
  EXPECT_EQ(qf_sign(close1), sgn(hp(close1)));
  EXPECT_EQ(qf_sign(close2), sgn(hp(close2)));
  QField mixed(Rational(-4801, 1960), Rational(1, 2), 0, Rational(1, 3));
  EXPECT_EQ(qf_sign(mixed), sgn(hp(mixed)));
}

TEST(QField, InverseProperty) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    QField x = random_field(rng);
    if (x.is_zero()) continue;
    EXPECT_EQ(x * x.inverse(), QField(1)) << x.to_string();
  }
  EXPECT_THROW(QField().inverse(), std::domain_error);
}

TEST(QField, NormIsRational) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    QField x = random_field(rng);
    QField prod = x * x.conj2() * x.conj3() * x.conj23();
    ASSERT_TRUE(prod.is_rational());
    EXPECT_EQ(prod.a(), x.norm());
  }
}

TEST(QField, SquareRoots) {
  EXPECT_EQ(*qf_sqrt(QField(4)), QField(2));
  EXPECT_EQ(*qf_sqrt(QField(2)), QField::sqrt2());
  EXPECT_EQ(*qf_sqrt(QField(Rational(3, 4))), QField(0, 0, Rational(1, 2), 0));
  // 2 + sqrt3 = ((sqrt6 + sqrt2) / 2)^2
  EXPECT_EQ(*qf_sqrt(QField(2, 0, 1, 0)), QField(0, Rational(1, 2), 0, Rational(1, 2)));
  EXPECT_FALSE(qf_sqrt(QField(1, 1, 0, 0)).has_value());
  EXPECT_FALSE(qf_sqrt(QField(5)).has_value());
  EXPECT_FALSE(qf_sqrt(QField(-4)).has_value());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    QField y = random_field(rng, 9, 4);
    if (y.is_zero()) continue;
    QField y2 = y * y;
    auto r = qf_sqrt(y2);
    ASSERT_TRUE(r.has_value()) << y.to_string();
    EXPECT_EQ(*r, y.sign() < 0 ? -y : y);
  }
}

TEST(QField, ParseRational) {
  EXPECT_EQ(parse_rational("3/2"), Rational(3, 2));
  EXPECT_EQ(parse_rational("1.25"), Rational(5, 4));
  EXPECT_EQ(parse_rational("-0.5"), Rational(-1, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(RadicalSum, ExactZeroDetection) {
  EXPECT_TRUE((RadicalSum::sqrt_of(8) - RadicalSum::sqrt_of(2).scaled(2)).is_zero());
  EXPECT_TRUE((RadicalSum::sqrt_of(12) - RadicalSum(QField::sqrt3().scaled(2))).is_zero());
  EXPECT_TRUE((RadicalSum::sqrt_of(QField(2, 0, 1, 0)) - RadicalSum(QField(0, Rational(1, 2), 0, Rational(1, 2))))
                  .is_zero());
  RadicalSum a = RadicalSum::sqrt_of(7) + RadicalSum::sqrt_of(Rational(7, 4));
  EXPECT_EQ(a, RadicalSum::sqrt_of(7).scaled(QField(Rational(3, 2))));
  EXPECT_EQ(a.terms().size(), 1u);
  // sqrt(14) and sqrt(7) differ by the field element sqrt2.
  RadicalSum b = RadicalSum::sqrt_of(14) - RadicalSum::sqrt_of(7).scaled(QField::sqrt2());
  EXPECT_TRUE(b.is_zero());
  // 21 + 14 sqrt2 = 7 (1 + sqrt2)^2
  RadicalSum c = RadicalSum::sqrt_of(QField(21, 14, 0, 0)) - RadicalSum::sqrt_of(7).scaled(QField(1, 1, 0, 0));
  EXPECT_TRUE(c.is_zero());
}

TEST(RadicalSum, CompareExamples) {
  EXPECT_EQ(cmp_radical_sums(RadicalSum(1) + RadicalSum(1), RadicalSum::sqrt_of(3)), 1);
  EXPECT_EQ(cmp_radical_sums(RadicalSum::sqrt_of(2) + RadicalSum::sqrt_of(3), RadicalSum::sqrt_of(6) + RadicalSum(1)),
            -1);
  EXPECT_EQ(cmp_radical_sums(RadicalSum::sqrt_of(8), RadicalSum::sqrt_of(2).scaled(2)), 0);
}

TEST(RadicalSum, CompareAgreesWithOracle) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> q(1, 40), c(-5, 5), n(1, 4);
  auto rnd = [&]() {
    RadicalSum s;
    int k = n(rng);
    for (int i = 0; i < k; ++i) s += RadicalSum::sqrt_of(q(rng)).scaled(QField(c(rng)));
    return s;
  };
  for (int i = 0; i < 3000; ++i) {
    RadicalSum x = rnd(), y = rnd();
    mpf_class diff = hp(x) - hp(y);
    int oracle = (x - y).is_zero() ? 0 : sgn(diff);
    ASSERT_EQ(cmp_radical_sums(x, y), oracle) << x.to_string() << " vs " << y.to_string();
    EXPECT_EQ(cmp_radical_sums(y, x), -oracle);
  }
}

TEST(RadicalSum, ComparisonIsTransitive) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> q(1, 30), c(-3, 3);
  std::vector<RadicalSum> xs;
  for (int i = 0; i < 25; ++i) {
    xs.push_back(RadicalSum::sqrt_of(q(rng)).scaled(QField(c(rng))) + RadicalSum::sqrt_of(q(rng)) +
                 RadicalSum(QField(Rational(c(rng), 2))));
  }
  for (auto& a : xs)
    for (auto& b : xs)
      for (auto& d : xs) {
        if (cmp_radical_sums(a, b) <= 0 && cmp_radical_sums(b, d) <= 0) {
          EXPECT_LE(cmp_radical_sums(a, d), 0);
        }
      }
}

TEST(RadicalSum, UndecidedWhenBudgetExhausted) {
  RadicalSum near = RadicalSum::sqrt_of(QField(Rational(mpz_class("1000000000001"))));
  RadicalSum whole(QField(1000000));
  set_max_precision_bits(16);
  EXPECT_THROW(cmp_radical_sums(near, whole), Undecided);
  set_max_precision_bits(256);
  EXPECT_EQ(cmp_radical_sums(near, whole), 1);
}

TEST(RadicalSum, SquareInField) {
  RadicalSum r = RadicalSum::sqrt_of(3);
  EXPECT_EQ(*r.square_in_field(), QField(3));
  RadicalSum two(2);
  EXPECT_EQ(*two.square_in_field(), QField(4));
  EXPECT_FALSE((RadicalSum::sqrt_of(3) + RadicalSum::sqrt_of(7)).square_in_field().has_value());
}

TEST(CertInterval, EnclosesAndRefines) {
  RadicalSum x = RadicalSum::sqrt_of(2) + RadicalSum::sqrt_of(11).scaled(QField(Rational(-1, 2)));
  CertInterval iv(x, 16);
  Rational prev = iv.hi() - iv.lo();
  mpf_class truth = hp(x);
  while (true) {
    EXPECT_LE(mpf_class(iv.lo(), 512), truth);
    EXPECT_GE(mpf_class(iv.hi(), 512), truth);
    if (!iv.refine()) break;
    Rational w = iv.hi() - iv.lo();
    EXPECT_LT(w, prev);
    prev = w;
  }
  EXPECT_EQ(iv.bits(), max_precision_bits());
}

TEST(Bounds, RationalBracketsAreOrdered) {
  RadicalSum x = RadicalSum::sqrt_of(7) + RadicalSum(QField::sqrt2());
  EXPECT_LT(lower_rational(x), upper_rational(x));
  EXPECT_LE(mpf_class(lower_rational(x), 512), hp(x));
  EXPECT_GE(mpf_class(upper_rational(x), 512), hp(x));
}

TEST(RadicalSum, Products) {
  RadicalSum s2 = RadicalSum::sqrt_of(QField(2)), s3 = RadicalSum::sqrt_of(QField(3));
  EXPECT_EQ(s2 * s2, RadicalSum(2));
  EXPECT_EQ(s2 * s3, RadicalSum::sqrt_of(QField(6)));
  RadicalSum x = RadicalSum(1) + s2;
  EXPECT_EQ(x * x, RadicalSum(3) + s2.scaled(QField(2)));
  // (sqrt7 - 2)(sqrt7 + 2) = 3
  RadicalSum s7 = RadicalSum::sqrt_of(QField(7));
  EXPECT_EQ((s7 - RadicalSum(2)) * (s7 + RadicalSum(2)), RadicalSum(3));
  EXPECT_TRUE((s7 * RadicalSum()).is_zero());
}

TEST(RadicalSum, FromTerms) {
  RadicalSum x = RadicalSum(1) + RadicalSum::sqrt_of(QField(5)).scaled(QField(Rational(2, 3)));
  EXPECT_EQ(RadicalSum::from_terms(x.terms()), x);
  EXPECT_THROW(RadicalSum::from_terms({{QField(-2), QField(1)}}), std::invalid_argument);
}

TEST(ParseRadical, Forms) {
  EXPECT_EQ(parse_radical("sqrt(3)"), RadicalSum::sqrt_of(QField(3)));
  EXPECT_EQ(parse_radical(" 2*sqrt(7)/3 + 1"),
            RadicalSum(1) + RadicalSum::sqrt_of(QField(7)).scaled(QField(Rational(2, 3))));
  EXPECT_EQ(parse_radical("1.5"), RadicalSum(QField(Rational(3, 2))));
  EXPECT_EQ(parse_radical("-1/4"), RadicalSum(QField(Rational(-1, 4))));
  EXPECT_EQ(parse_radical("sqrt(12)"), RadicalSum::sqrt_of(QField(3)).scaled(QField(2)));
  EXPECT_EQ(parse_radical("1/sqrt(2)"), RadicalSum::sqrt_of(QField(Rational(1, 2))));
  EXPECT_EQ(parse_radical("(1 + sqrt(2)) * sqrt(2)"), RadicalSum(2) + RadicalSum::sqrt_of(QField(2)));
  for (const char* bad : {"", "sqrt(-1)", "2*", "sqrt 3", "1/0", "abc", "1/sqrt(5)"})
    EXPECT_THROW(parse_radical(bad), std::invalid_argument) << bad;
}
