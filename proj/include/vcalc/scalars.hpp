#pragma once

// Exact coefficient arithmetic: arbitrary-precision rationals and the
// rational-function field Q(s).  The deformation parameter q is encoded
// as q = s^4, so quarter powers q^{k/4} = s^k stay exact for integer k.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcalc {

using Rational = mpq_class;

struct ScalarError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational rat_pow(const Rational& a, long n);

// binom(n, i) for arbitrary integer n, i >= 0
Rational binomial(long n, long i);

// Dense univariate polynomial over Q in the formal parameter s.
// Invariant: no trailing zero coefficients (zero polynomial is empty).
class Poly {
  public:
    Poly() = default;
    explicit Poly(Rational c);
    static Poly monomial(Rational c, int k);
    static Poly s();

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(int k) const;
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& lead() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<Poly, Poly> divrem(const Poly& d) const;
    // Exact division; throws if a remainder survives.
    Poly exact_div(const Poly& d) const;
    Poly monic() const;
    Poly derivative() const;
    Rational eval(const Rational& x) const;

    static Poly gcd(Poly a, Poly b);

    std::string str() const;

  private:
    void trim();
    std::vector<Rational> c_;
};

// Element of Q(s): num/den with den monic and gcd(num, den) = 1.
class QScalar {
  public:
    QScalar() : num_(), den_(Rational(1)) {}
    QScalar(long v) : num_(Rational(v)), den_(Rational(1)) {}
    explicit QScalar(Rational v) : num_(std::move(v)), den_(Rational(1)) {}
    QScalar(Poly num, Poly den);

    static QScalar s(int k = 1);       // s^k, k may be negative
    static QScalar q(int k = 1);       // q^k = s^{4k}
    static QScalar q_quarter(int k);   // q^{k/4} = s^k

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    QScalar operator+(const QScalar& o) const;
    QScalar operator-(const QScalar& o) const;
    QScalar operator-() const;
    QScalar operator*(const QScalar& o) const;
    QScalar operator/(const QScalar& o) const;  // throws on zero divisor
    QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
    QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
    QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
    bool operator==(const QScalar& o) const;
    bool operator!=(const QScalar& o) const { return !(*this == o); }

    QScalar inverse() const;
    QScalar pow(long n) const;

    // c * s^k form, if this is a single monomial over a constant denominator.
    struct Monomial {
        Rational coeff;
        int exp;
    };
    std::optional<Monomial> as_monomial() const;
    // +-s^k form (unit monomial with coefficient +-1)
    std::optional<std::pair<bool, int>> as_unit_monomial() const;  // {negative, exp}
    std::optional<Rational> as_rational() const;

    std::string str() const;

  private:
    void normalize();
    Poly num_, den_;
};

inline QScalar operator*(long a, const QScalar& b) { return QScalar(a) * b; }

std::ostream& operator<<(std::ostream& os, const QScalar& v);

// Parses scalar literals: integers, a/b, and +,-,*,/,^ expressions in s,
// e.g. "(s^4-1)/(s^2-1)".  Grammar documented in the README.
QScalar parse_scalar(const std::string& text);

}  // namespace vcalc
