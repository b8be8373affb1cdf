#pragma once

// Exact arithmetic for the numbers that show up in the geometry of triangles
// with angles that are multiples of pi/12:
//   QField      elements a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational a..d
//   RadicalSum  finite sums  sum_k c_k * sqrt(q_k)  with c_k, q_k in QField
//   CertInterval  a rational enclosure of a RadicalSum that can be refined

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cat0 {

using Rational = mpq_class;

// Raised when a comparison cannot be decided within the precision budget.
class Undecided : public std::runtime_error {
 public:
  explicit Undecided(const std::string& what) : std::runtime_error(what) {}
};

// Precision budget in bits for interval refinement. Defaults to the value of
// CAT0_MAX_PRECISION_BITS, or 256 when unset.
int max_precision_bits();
void set_max_precision_bits(int bits);

Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

class QField {
 public:
  QField() = default;
  QField(int v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QField(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  QField(Rational a, Rational b, Rational c, Rational d)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    a_.canonicalize();
    b_.canonicalize();
    c_.canonicalize();
    d_.canonicalize();
  }

  static QField sqrt2() { return {0, 1, 0, 0}; }
  static QField sqrt3() { return {0, 0, 1, 0}; }
  static QField sqrt6() { return {0, 0, 0, 1}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }
  bool is_rational() const { return sgn(b_) == 0 && sgn(c_) == 0 && sgn(d_) == 0; }

  QField operator-() const { return {-a_, -b_, -c_, -d_}; }
  QField& operator+=(const QField& o);
  QField& operator-=(const QField& o);
  QField& operator*=(const QField& o) { return *this = *this * o; }
  QField& operator/=(const QField& o) { return *this = *this * o.inverse(); }
  friend QField operator+(QField x, const QField& y) { return x += y; }
  friend QField operator-(QField x, const QField& y) { return x -= y; }
  friend QField operator*(const QField& x, const QField& y);
  friend QField operator/(const QField& x, const QField& y) { return x * y.inverse(); }
  QField scaled(const Rational& s) const { return {a_ * s, b_ * s, c_ * s, d_ * s}; }

  // Galois conjugates: sqrt2 -> -sqrt2, sqrt3 -> -sqrt3, and both.
  QField conj2() const { return {a_, -b_, c_, -d_}; }
  QField conj3() const { return {a_, b_, -c_, -d_}; }
  QField conj23() const { return {a_, -b_, -c_, d_}; }
  Rational norm() const;  // product of the four conjugates
  QField inverse() const;  // throws std::domain_error on zero

  int sign() const;
  double to_double() const;
  // Sum of absolute values of the four parts, a scale for rounding error bounds.
  double magnitude() const;
  std::string to_string() const;

  friend bool operator==(const QField& x, const QField& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }
  // Lexicographic order on the coefficient vector; only for use as a map key.
  friend bool structural_less(const QField& x, const QField& y);

 private:
  Rational a_, b_, c_, d_;
};

int qf_sign(const QField& x);
QField qf_mul(const QField& x, const QField& y);
int qf_compare(const QField& x, const QField& y);
// The non-negative square root of x when it lies in the field.
std::optional<QField> qf_sqrt(const QField& x);

inline std::ostream& operator<<(std::ostream& os, const QField& x) { return os << x.to_string(); }

struct QFieldLess {
  bool operator()(const QField& x, const QField& y) const { return structural_less(x, y); }
};

// A closed rational interval [lo, hi].
struct RationalInterval {
  Rational lo, hi;
};

// Sum of c_k * sqrt(q_k). Radicands are kept in pairwise distinct square
// classes of the field, so the value is zero exactly when no terms remain.
class RadicalSum {
 public:
  struct Term {
    QField radicand;  // positive
    QField coef;      // nonzero
  };

  RadicalSum() = default;
  RadicalSum(int v) : RadicalSum(QField(v)) {}  // NOLINT(google-explicit-constructor)
  RadicalSum(const QField& v);  // NOLINT(google-explicit-constructor)
  static RadicalSum sqrt_of(const QField& q);  // q >= 0, throws otherwise
  // Sum of the given terms; radicands must be positive.
  static RadicalSum from_terms(const std::vector<Term>& terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  RadicalSum& operator+=(const RadicalSum& o);
  RadicalSum& operator-=(const RadicalSum& o);
  friend RadicalSum operator+(RadicalSum x, const RadicalSum& y) { return x += y; }
  friend RadicalSum operator-(RadicalSum x, const RadicalSum& y) { return x -= y; }
  RadicalSum operator-() const;
  RadicalSum scaled(const QField& s) const;
  friend RadicalSum operator*(const RadicalSum& x, const RadicalSum& y);

  // x^2 when it lies in the field (a single square class), otherwise nullopt.
  std::optional<QField> square_in_field() const;
  // The value itself when it lies in the field.
  std::optional<QField> as_field() const;

  RationalInterval enclose(int bits) const;
  double approx() const;
  std::string to_string() const;

  friend bool operator==(const RadicalSum& x, const RadicalSum& y) { return (x - y).is_zero(); }

 private:
  void add_term(const QField& radicand, const QField& coef);
  std::vector<Term> terms_;
};

// Parses sums and products of rationals and square roots of rationals, as in
// "sqrt(3)", "2*sqrt(7)/3 + 1" or "1.5". Throws std::invalid_argument.
RadicalSum parse_radical(const std::string& text);

// Returns -1, 0 or +1. Throws Undecided when the precision budget runs out.
int cmp_radical_sums(const RadicalSum& x, const RadicalSum& y);

inline std::ostream& operator<<(std::ostream& os, const RadicalSum& x) { return os << x.to_string(); }
int rs_sign(const RadicalSum& x);

inline bool operator<(const RadicalSum& x, const RadicalSum& y) { return cmp_radical_sums(x, y) < 0; }
inline bool operator>(const RadicalSum& x, const RadicalSum& y) { return cmp_radical_sums(x, y) > 0; }
inline bool operator<=(const RadicalSum& x, const RadicalSum& y) { return cmp_radical_sums(x, y) <= 0; }
inline bool operator>=(const RadicalSum& x, const RadicalSum& y) { return cmp_radical_sums(x, y) >= 0; }

// Enclosure lo <= value <= hi of a RadicalSum, refined on demand.
class CertInterval {
 public:
  explicit CertInterval(RadicalSum payload, int bits = 32);
  const RadicalSum& payload() const { return payload_; }
  const Rational& lo() const { return box_.lo; }
  const Rational& hi() const { return box_.hi; }
  int bits() const { return bits_; }
  // Doubles the working precision. Returns false once the budget is spent.
  bool refine();

 private:
  RadicalSum payload_;
  RationalInterval box_;
  int bits_;
};

// Decimal text with the given number of significant digits, taken from a
// certified enclosure.
std::string to_decimal(const RadicalSum& x, int digits = 12);

// Rational bounds lo <= sqrt(x) <= hi accurate to about 2^-bits.
RationalInterval sqrt_bounds(const Rational& x, int bits);
// Smallest "nice" rational (denominator 2^bits) that is >= the value.
Rational upper_rational(const RadicalSum& x, int bits = 40);
Rational lower_rational(const RadicalSum& x, int bits = 40);

}  // namespace cat0
