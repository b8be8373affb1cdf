#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cat0/exactnum.hpp"

namespace cat0 {

namespace {

struct DoubleBox {
  double lo, hi;
};

constexpr double kPad = 1e-12;

DoubleBox widen(double v, double err) {
  double e = err + std::fabs(v) * kPad + 1e-300;
  return {v - e, v + e};
}

DoubleBox mul(const DoubleBox& x, const DoubleBox& y) {
  double p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  double lo = *std::min_element(p, p + 4), hi = *std::max_element(p, p + 4);
  return widen((lo + hi) / 2, (hi - lo) / 2);
}

DoubleBox field_box(const QField& q) { return widen(q.to_double(), 1e-13 * q.magnitude()); }

DoubleBox sqrt_box(const DoubleBox& x) {
  double lo = x.lo <= 0 ? 0.0 : std::sqrt(x.lo);
  double hi = x.hi <= 0 ? 0.0 : std::sqrt(x.hi);
  return {lo * (1 - kPad), hi * (1 + kPad) + 1e-300};
}

DoubleBox box_of(const RadicalSum& s) {
  DoubleBox acc{0, 0};
  for (const auto& t : s.terms()) {
    DoubleBox term = mul(field_box(t.coef), sqrt_box(field_box(t.radicand)));
    acc.lo += term.lo;
    acc.hi += term.hi;
  }
  return widen((acc.lo + acc.hi) / 2, (acc.hi - acc.lo) / 2);
}

// Interval helpers on rationals.
RationalInterval iv_mul(const RationalInterval& x, const RationalInterval& y) {
  Rational p[4] = {x.lo * y.lo, x.lo * y.hi, x.hi * y.lo, x.hi * y.hi};
  Rational lo = p[0], hi = p[0];
  for (auto& v : p) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return {lo, hi};
}

RationalInterval iv_add(const RationalInterval& x, const RationalInterval& y) { return {x.lo + y.lo, x.hi + y.hi}; }

RationalInterval iv_point(const Rational& v) { return {v, v}; }

RationalInterval field_interval(const QField& q, int bits) {
  static thread_local int cached_bits = -1;
  static thread_local RationalInterval s2, s3, s6;
  if (cached_bits != bits) {
    s2 = sqrt_bounds(2, bits);
    s3 = sqrt_bounds(3, bits);
    s6 = sqrt_bounds(6, bits);
    cached_bits = bits;
  }
  RationalInterval acc = iv_point(q.a());
  if (sgn(q.b()) != 0) acc = iv_add(acc, iv_mul(iv_point(q.b()), s2));
  if (sgn(q.c()) != 0) acc = iv_add(acc, iv_mul(iv_point(q.c()), s3));
  if (sgn(q.d()) != 0) acc = iv_add(acc, iv_mul(iv_point(q.d()), s6));
  return acc;
}

// Write q = f^2 * m with m a positive integer coprime to 6 (square-free up to
// trial division) and f in the field. Returns {m, f}.
std::pair<mpz_class, QField> split_rational_radicand(const Rational& q) {
  mpz_class n = q.get_num() * q.get_den();
  QField f(Rational(1, q.get_den()));
  mpz_class s = 1;
  int e2 = 0, e3 = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), 2)) {
    n /= 2;
    ++e2;
  }
  while (mpz_divisible_ui_p(n.get_mpz_t(), 3)) {
    n /= 3;
    ++e3;
  }
  for (unsigned long p = 5; p < 2000; p += 2) {
    mpz_class pp = static_cast<unsigned long>(p * p);
    if (pp > n) break;
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
      n /= pp;
      s *= static_cast<unsigned long>(p);
    }
  }
  if (n > 1 && mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    s *= r;
    n = 1;
  }
  mpz_class pow2 = 1, pow3 = 1;
  for (int i = 0; i < e2 / 2; ++i) pow2 *= 2;
  for (int i = 0; i < e3 / 2; ++i) pow3 *= 3;
  f = f.scaled(Rational(s * pow2 * pow3));
  if (e2 % 2) f = f * QField::sqrt2();
  if (e3 % 2) f = f * QField::sqrt3();
  return {n, f};
}

}  // namespace

RationalInterval sqrt_bounds(const Rational& x, int bits) {
  if (sgn(x) <= 0) return {0, 0};
  mpz_class scale = 1;
  scale <<= 2 * bits;
  Rational scaled = x * scale;
  mpz_class fl = scaled.get_num() / scaled.get_den();  // floor, positive values
  mpz_class ce = fl;
  if (fl * scaled.get_den() != scaled.get_num()) ce += 1;
  mpz_class rlo, rhi;
  mpz_sqrt(rlo.get_mpz_t(), fl.get_mpz_t());
  mpz_sqrt(rhi.get_mpz_t(), ce.get_mpz_t());
  if (rhi * rhi < ce) rhi += 1;
  mpz_class den = 1;
  den <<= bits;
  Rational lo(rlo, den), hi(rhi, den);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

RadicalSum::RadicalSum(const QField& v) {
  if (!v.is_zero()) terms_.push_back({QField(1), v});
}

RadicalSum RadicalSum::sqrt_of(const QField& q) {
  int s = q.sign();
  if (s < 0) throw std::domain_error("square root of a negative number: " + q.to_string());
  RadicalSum r;
  if (s > 0) r.add_term(q, QField(1));
  return r;
}

RadicalSum RadicalSum::from_terms(const std::vector<Term>& terms) {
  RadicalSum r;
  for (const auto& t : terms) {
    if (t.radicand.sign() <= 0) throw std::invalid_argument("radicand must be positive");
    r.add_term(t.radicand, t.coef);
  }
  return r;
}

RadicalSum operator*(const RadicalSum& x, const RadicalSum& y) {
  RadicalSum r;
  for (const auto& s : x.terms_)
    for (const auto& t : y.terms_) r.add_term(s.radicand * t.radicand, s.coef * t.coef);
  return r;
}

namespace {

class RadicalParser {
 public:
  explicit RadicalParser(const std::string& text) : text_(text) {}

  RadicalSum parse() {
    RadicalSum r = sum();
    skip();
    if (pos_ != text_.size()) fail();
    return r;
  }

 private:
  [[noreturn]] void fail() const { throw std::invalid_argument("bad radical expression: " + text_); }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  RadicalSum sum() {
    bool neg = eat('-');
    if (!neg) eat('+');
    RadicalSum r = product();
    if (neg) r = -r;
    for (;;) {
      if (eat('+')) r += product();
      else if (eat('-')) r -= product();
      else return r;
    }
  }
  RadicalSum product() {
    RadicalSum r = factor();
    for (;;) {
      if (eat('*')) {
        r = r * factor();
      } else if (eat('/')) {
        auto d = factor().as_field();
        if (!d || d->is_zero()) fail();
        r = r.scaled(d->inverse());
      } else {
        return r;
      }
    }
  }
  RadicalSum factor() {
    skip();
    if (eat('(')) {
      RadicalSum r = sum();
      if (!eat(')')) fail();
      return r;
    }
    if (text_.compare(pos_, 4, "sqrt") == 0) {
      pos_ += 4;
      if (!eat('(')) fail();
      auto q = sum().as_field();
      if (!eat(')') || !q || q->sign() < 0) fail();
      return RadicalSum::sqrt_of(*q);
    }
    size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (start == pos_) fail();
    return RadicalSum(QField(parse_rational(text_.substr(start, pos_ - start))));
  }

  std::string text_;
  size_t pos_ = 0;
};

}  // namespace

RadicalSum parse_radical(const std::string& text) { return RadicalParser(text).parse(); }

void RadicalSum::add_term(const QField& radicand_in, const QField& coef_in) {
  if (coef_in.is_zero() || radicand_in.is_zero()) return;
  QField radicand = radicand_in;
  QField coef = coef_in;
  if (radicand.is_rational()) {
    auto [m, f] = split_rational_radicand(radicand.a());
    radicand = QField(Rational(m));
    coef = coef * f;
  } else if (auto root = qf_sqrt(radicand)) {
    radicand = QField(1);
    coef = coef * *root;
  }
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    std::optional<QField> ratio_root;
    if (it->radicand.is_rational() && radicand.is_rational()) {
      if (it->radicand == radicand) {
        ratio_root = QField(1);
      } else {
        mpz_class prod = radicand.a().get_num() * it->radicand.a().get_num();
        if (mpz_perfect_square_p(prod.get_mpz_t())) {
          mpz_class r;
          mpz_sqrt(r.get_mpz_t(), prod.get_mpz_t());
          Rational root(r, it->radicand.a().get_num());
          root.canonicalize();
          ratio_root = QField(root);
        }
      }
    } else {
      ratio_root = qf_sqrt(radicand / it->radicand);
    }
    if (ratio_root) {
      it->coef += coef * *ratio_root;
      if (it->coef.is_zero()) terms_.erase(it);
      return;
    }
  }
  Term t{radicand, coef};
  auto pos = std::lower_bound(terms_.begin(), terms_.end(), t, [](const Term& x, const Term& y) {
    return structural_less(x.radicand, y.radicand);
  });
  terms_.insert(pos, t);
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  for (const auto& t : o.terms_) add_term(t.radicand, t.coef);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& o) {
  for (const auto& t : o.terms_) add_term(t.radicand, -t.coef);
  return *this;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

RadicalSum RadicalSum::scaled(const QField& s) const {
  if (s.is_zero()) return {};
  RadicalSum r = *this;
  for (auto& t : r.terms_) t.coef = t.coef * s;
  return r;
}

std::optional<QField> RadicalSum::square_in_field() const {
  if (terms_.empty()) return QField(0);
  if (terms_.size() != 1) return std::nullopt;
  return terms_[0].coef * terms_[0].coef * terms_[0].radicand;
}

std::optional<QField> RadicalSum::as_field() const {
  if (terms_.empty()) return QField(0);
  if (terms_.size() == 1 && terms_[0].radicand == QField(1)) return terms_[0].coef;
  return std::nullopt;
}

RationalInterval RadicalSum::enclose(int bits) const {
  RationalInterval acc{0, 0};
  for (const auto& t : terms_) {
    RationalInterval c = field_interval(t.coef, bits);
    RationalInterval q = field_interval(t.radicand, bits);
    RationalInterval root{sqrt_bounds(q.lo, bits).lo, sqrt_bounds(q.hi, bits).hi};
    acc = iv_add(acc, iv_mul(c, root));
  }
  return acc;
}

double RadicalSum::approx() const {
  double v = 0;
  for (const auto& t : terms_) v += t.coef.to_double() * std::sqrt(std::max(0.0, t.radicand.to_double()));
  return v;
}

std::string to_decimal(const RadicalSum& x, int digits) {
  RationalInterval iv = x.enclose(64);
  Rational mid = (iv.lo + iv.hi) / 2;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, mid.get_d());
  return buf;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool unit = t.radicand == QField(1);
    bool coef_is_one = t.coef == QField(1);
    if (unit) {
      os << "(" << t.coef.to_string() << ")";
    } else {
      if (!coef_is_one) os << "(" << t.coef.to_string() << ")*";
      os << "sqrt(" << t.radicand.to_string() << ")";
    }
  }
  return os.str();
}

int rs_sign(const RadicalSum& x) {
  if (x.is_zero()) return 0;
  if (auto f = x.as_field()) return f->sign();
  DoubleBox b = box_of(x);
  if (b.lo > 0) return 1;
  if (b.hi < 0) return -1;
  int limit = max_precision_bits();
  for (int bits = std::min(64, limit); bits <= limit; bits *= 2) {
    RationalInterval iv = x.enclose(bits);
    if (sgn(iv.lo) > 0) return 1;
    if (sgn(iv.hi) < 0) return -1;
    if (bits < limit && bits * 2 > limit) bits = limit / 2;
  }
  throw Undecided("sign undecided within " + std::to_string(limit) + " bits: " + x.to_string());
}

int cmp_radical_sums(const RadicalSum& x, const RadicalSum& y) {
  DoubleBox bx = box_of(x), by = box_of(y);
  if (bx.lo > by.hi) return 1;
  if (bx.hi < by.lo) return -1;
  return rs_sign(x - y);
}

CertInterval::CertInterval(RadicalSum payload, int bits) : payload_(std::move(payload)), bits_(bits) {
  box_ = payload_.enclose(bits_);
}

bool CertInterval::refine() {
  if (bits_ >= max_precision_bits()) return false;
  bits_ = std::min(bits_ * 2, max_precision_bits());
  box_ = payload_.enclose(bits_);
  return true;
}

Rational upper_rational(const RadicalSum& x, int bits) {
  RationalInterval iv = x.enclose(bits);
  mpz_class den = 1;
  den <<= bits;
  Rational scaled = iv.hi * den;
  mpz_class c = scaled.get_num() / scaled.get_den();
  if (c * scaled.get_den() < scaled.get_num()) c += 1;
  Rational r(c, den);
  r.canonicalize();
  return r;
}

Rational lower_rational(const RadicalSum& x, int bits) {
  return -upper_rational(-x, bits);
}

}  // namespace cat0
