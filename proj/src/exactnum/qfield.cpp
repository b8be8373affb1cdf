#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "cat0/exactnum.hpp"

namespace cat0 {

namespace {

int g_max_bits = -1;

// Elements alpha + beta*sqrt3 of the quadratic subfield.
struct Q3 {
  Rational x, y;
};

Q3 q3_mul(const Q3& p, const Q3& q) { return {p.x * q.x + 3 * p.y * q.y, p.x * q.y + p.y * q.x}; }
Q3 q3_sub(const Q3& p, const Q3& q) { return {p.x - q.x, p.y - q.y}; }
Q3 q3_add(const Q3& p, const Q3& q) { return {p.x + q.x, p.y + q.y}; }
Q3 q3_scale(const Q3& p, const Rational& s) { return {p.x * s, p.y * s}; }
bool q3_zero(const Q3& p) { return sgn(p.x) == 0 && sgn(p.y) == 0; }

Q3 q3_inverse(const Q3& p) {
  Rational n = p.x * p.x - 3 * p.y * p.y;
  return {p.x / n, -p.y / n};
}

int q3_sign(const Q3& p) {
  int sx = sgn(p.x);
  int sy = sgn(p.y);
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  Rational diff = p.x * p.x - 3 * p.y * p.y;
  return sgn(diff) * sx;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

// Some square root of p inside Q(sqrt3), of either sign.
std::optional<Q3> q3_sqrt(const Q3& p) {
  if (sgn(p.y) == 0) {
    if (auto r = rational_sqrt(p.x)) return Q3{*r, 0};
    if (auto r = rational_sqrt(p.x / 3)) return Q3{0, *r};
    return std::nullopt;
  }
  auto n = rational_sqrt(p.x * p.x - 3 * p.y * p.y);
  if (!n) return std::nullopt;
  for (int s : {1, -1}) {
    auto x = rational_sqrt((p.x + s * *n) / 2);
    if (!x || sgn(*x) == 0) continue;
    Q3 cand{*x, p.y / (2 * *x)};
    Q3 sq = q3_mul(cand, cand);
    if (sq.x == p.x && sq.y == p.y) return cand;
  }
  return std::nullopt;
}

}  // namespace

int max_precision_bits() {
  if (g_max_bits < 0) {
    g_max_bits = 256;
    if (const char* env = std::getenv("CAT0_MAX_PRECISION_BITS")) {
      int v = std::atoi(env);
      if (v >= 16) g_max_bits = v;
    }
  }
  return g_max_bits;
}

void set_max_precision_bits(int bits) { g_max_bits = bits; }

Rational parse_rational(const std::string& text) {
  std::string t = text;
  auto dot = t.find('.');
  if (dot != std::string::npos && t.find('/') == std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac = t.size() - dot - 1;
    mpz_class den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad number: " + text);
    if (digits[0] == '+') digits.erase(0, 1);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad number: " + text);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  Rational r;
  if (t.empty() || r.set_str(t, 10) != 0) throw std::invalid_argument("bad number: " + text);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

QField& QField::operator+=(const QField& o) {
  a_ += o.a_;
  b_ += o.b_;
  c_ += o.c_;
  d_ += o.d_;
  return *this;
}

QField& QField::operator-=(const QField& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  c_ -= o.c_;
  d_ -= o.d_;
  return *this;
}

QField operator*(const QField& x, const QField& y) {
  if (x.is_rational()) return y.scaled(x.a_);
  if (y.is_rational()) return x.scaled(y.a_);
  // Basis 1, sqrt2, sqrt3, sqrt6 indexed by bitmask; sqrt(i) * sqrt(j) = k * sqrt(i ^ j).
  const Rational* xs[4] = {&x.a_, &x.b_, &x.c_, &x.d_};
  const Rational* ys[4] = {&y.a_, &y.b_, &y.c_, &y.d_};
  QField out;
  Rational* os[4] = {&out.a_, &out.b_, &out.c_, &out.d_};
  Rational t;
  for (int i = 0; i < 4; ++i) {
    if (sgn(*xs[i]) == 0) continue;
    for (int j = 0; j < 4; ++j) {
      if (sgn(*ys[j]) == 0) continue;
      mpq_mul(t.get_mpq_t(), xs[i]->get_mpq_t(), ys[j]->get_mpq_t());
      int common = i & j;
      if (common) {
        static const unsigned long kFactor[4] = {1, 2, 3, 6};
        mpz_mul_ui(mpq_numref(t.get_mpq_t()), mpq_numref(t.get_mpq_t()), kFactor[common]);
        t.canonicalize();
      }
      mpq_add(os[i ^ j]->get_mpq_t(), os[i ^ j]->get_mpq_t(), t.get_mpq_t());
    }
  }
  return out;
}

QField qf_mul(const QField& x, const QField& y) { return x * y; }

Rational QField::norm() const {
  QField p = *this * conj2();  // lies in Q(sqrt3)
  QField n = p * p.conj3();
  return n.a();
}

QField QField::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (is_rational()) return QField(Rational(1 / a_));
  QField p = *this * conj2();
  QField rest = conj2() * p.conj3();
  Rational n = (p * p.conj3()).a();
  return rest.scaled(1 / n);
}

double QField::to_double() const {
  static const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  return a_.get_d() + b_.get_d() * s2 + c_.get_d() * s3 + d_.get_d() * s6;
}

double QField::magnitude() const {
  return std::fabs(a_.get_d()) + 1.5 * std::fabs(b_.get_d()) + 1.8 * std::fabs(c_.get_d()) +
         2.5 * std::fabs(d_.get_d());
}

int QField::sign() const {
  if (is_rational()) return sgn(a_);
  double v = to_double();
  double err = 1e-13 * magnitude();
  if (v > err) return 1;
  if (v < -err) return -1;
  // x = P + Q*sqrt2 with P, Q in Q(sqrt3): compare P^2 with 2 Q^2.
  Q3 p{a_, c_}, q{b_, d_};
  int sp = q3_sign(p);
  int sq = q3_sign(q);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  Q3 diff = q3_sub(q3_mul(p, p), q3_scale(q3_mul(q, q), 2));
  return q3_sign(diff) * sp;
}

int qf_sign(const QField& x) { return x.sign(); }

int qf_compare(const QField& x, const QField& y) { return (x - y).sign(); }

std::string QField::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto part = [&](const Rational& c, const char* unit) {
    if (sgn(c) == 0) return;
    Rational m = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (*unit == 0) {
      os << m.get_str();
    } else {
      if (m != 1) os << m.get_str() << "*";
      os << unit;
    }
  };
  part(a_, "");
  part(b_, "sqrt(2)");
  part(c_, "sqrt(3)");
  part(d_, "sqrt(6)");
  if (first) os << "0";
  return os.str();
}

bool structural_less(const QField& x, const QField& y) {
  if (x.a_ != y.a_) return x.a_ < y.a_;
  if (x.b_ != y.b_) return x.b_ < y.b_;
  if (x.c_ != y.c_) return x.c_ < y.c_;
  return x.d_ < y.d_;
}

std::optional<QField> qf_sqrt(const QField& x) {
  if (x.is_zero()) return QField(0);
  if (x.sign() < 0) return std::nullopt;
  Q3 p{x.a(), x.c()}, q{x.b(), x.d()};
  std::optional<QField> root;
  if (q3_zero(q)) {
    if (auto r = q3_sqrt(p)) {
      root = QField(r->x, 0, r->y, 0);
    } else if (auto r2 = q3_sqrt(q3_scale(p, Rational(1, 2)))) {
      // (y1 + y2 sqrt3) sqrt2 = y1 sqrt2 + y2 sqrt6
      root = QField(0, r2->x, 0, r2->y);
    }
  } else {
    Q3 n = q3_sub(q3_mul(p, p), q3_scale(q3_mul(q, q), 2));
    auto m = q3_sqrt(n);
    if (m) {
      for (int s : {1, -1}) {
        auto xx = q3_sqrt(q3_scale(q3_add(p, q3_scale(*m, s)), Rational(1, 2)));
        if (!xx || q3_zero(*xx)) continue;
        Q3 yy = q3_scale(q3_mul(q, q3_inverse(*xx)), Rational(1, 2));
        QField cand(xx->x, yy.x, xx->y, yy.y);
        if (cand * cand == x) {
          root = cand;
          break;
        }
      }
    }
  }
  if (!root) return std::nullopt;
  if (root->sign() < 0) root = -*root;
  return root;
}

}  // namespace cat0
