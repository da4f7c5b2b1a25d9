#include "vcalc/scalars.hpp"

#include <cctype>
#include <sstream>

namespace vcalc {

Rational rat_pow(const Rational& a, long n) {
    if (n == 0) return Rational(1);
    if (a == 0) {
        if (n < 0) throw ScalarError("0^negative");
        return Rational(0);
    }
    Rational base = n > 0 ? a : Rational(1) / a;
    unsigned long e = n > 0 ? n : -n;
    Rational r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Rational binomial(long n, long i) {
    if (i < 0) return Rational(0);
    Rational r(1);
    for (long t = 0; t < i; ++t) {
        r *= Rational(n - t);
        r /= Rational(t + 1);
    }
    return r;
}

Poly::Poly(Rational c) {
    if (c != 0) c_.push_back(std::move(c));
}

Poly Poly::monomial(Rational c, int k) {
    Poly p;
    if (c == 0) return p;
    if (k < 0) throw ScalarError("Poly::monomial: negative exponent");
    p.c_.assign(k + 1, Rational(0));
    p.c_[k] = std::move(c);
    return p;
}

Poly Poly::s() { return monomial(Rational(1), 1); }

const Rational& Poly::coeff(int k) const {
    static const Rational zero(0);
    if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
    return c_[k];
}

const Rational& Poly::lead() const {
    if (is_zero()) throw ScalarError("lead of zero polynomial");
    return c_.back();
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    if (is_zero() || o.is_zero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

std::pair<Poly, Poly> Poly::divrem(const Poly& d) const {
    if (d.is_zero()) throw ScalarError("polynomial division by zero");
    Poly q, r = *this;
    if (r.degree() >= d.degree()) q.c_.assign(r.degree() - d.degree() + 1, Rational(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        Rational c = r.lead() / d.lead();
        q.c_[k] = c;
        for (int i = 0; i <= d.degree(); ++i) r.c_[i + k] -= c * d.c_[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

Poly Poly::exact_div(const Poly& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw ScalarError("inexact polynomial division");
    return q;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Poly r = *this;
    Rational inv = Rational(1) / lead();
    for (auto& c : r.c_) c *= inv;
    return r;
}

Poly Poly::derivative() const {
    Poly r;
    if (degree() < 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = Rational(long(i)) * c_[i];
    r.trim();
    return r;
}

Rational Poly::eval(const Rational& x) const {
    Rational r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeff(k);
        if (c == 0) continue;
        Rational a = c;
        if (!first)
            os << (a < 0 ? " - " : " + ");
        else if (a < 0)
            os << "-";
        first = false;
        if (a < 0) a = -a;
        if (k == 0 || a != 1) {
            os << a.get_str();
            if (k != 0) os << "*";
        }
        if (k >= 1) os << "s";
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

QScalar::QScalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ScalarError("zero denominator");
    normalize();
}

void QScalar::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0 || g.lead() != 1) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
    }
    Rational lead = den_.lead();
    if (lead != 1) {
        den_ = den_.monic();
        Poly scaled;
        Rational inv = Rational(1) / lead;
        scaled = num_ * Poly(inv);
        num_ = scaled;
    }
}

QScalar QScalar::s(int k) {
    if (k >= 0) return QScalar(Poly::monomial(Rational(1), k), Poly(Rational(1)));
    return QScalar(Poly(Rational(1)), Poly::monomial(Rational(1), -k));
}

QScalar QScalar::q(int k) { return s(4 * k); }
QScalar QScalar::q_quarter(int k) { return s(k); }

bool QScalar::is_one() const {
    return den_.degree() == 0 && num_.degree() == 0 && !num_.is_zero() && num_.lead() == 1;
}

QScalar QScalar::operator+(const QScalar& o) const {
    return QScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QScalar QScalar::operator-(const QScalar& o) const {
    return QScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

QScalar QScalar::operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

QScalar QScalar::operator*(const QScalar& o) const {
    return QScalar(num_ * o.num_, den_ * o.den_);
}

QScalar QScalar::operator/(const QScalar& o) const {
    if (o.is_zero()) throw ScalarError("division by zero");
    return QScalar(num_ * o.den_, den_ * o.num_);
}

bool QScalar::operator==(const QScalar& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

QScalar QScalar::inverse() const {
    if (is_zero()) throw ScalarError("inverse of zero");
    return QScalar(den_, num_);
}

QScalar QScalar::pow(long n) const {
    if (n == 0) return QScalar(1);
    QScalar base = n > 0 ? *this : inverse();
    unsigned long e = n > 0 ? n : -n;
    QScalar r(1);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::optional<QScalar::Monomial> QScalar::as_monomial() const {
    if (is_zero()) return std::nullopt;
    if (den_.degree() != 0) return std::nullopt;
    int lo = -1, hi = num_.degree();
    for (int k = 0; k <= hi; ++k)
        if (num_.coeff(k) != 0) {
            if (lo >= 0) return std::nullopt;
            lo = k;
        }
    // denominator is monic constant 1 after normalization
    return Monomial{num_.coeff(lo), lo};
}

std::optional<std::pair<bool, int>> QScalar::as_unit_monomial() const {
    // allow s^{-k}: a monomial numerator over a monomial denominator
    if (is_zero()) return std::nullopt;
    auto mono_exp = [](const Poly& p) -> std::optional<int> {
        int lo = -1;
        for (int k = 0; k <= p.degree(); ++k)
            if (p.coeff(k) != 0) {
                if (lo >= 0) return std::nullopt;
                lo = k;
            }
        return lo;
    };
    auto ne = mono_exp(num_);
    auto de = mono_exp(den_);
    if (!ne || !de) return std::nullopt;
    Rational c = num_.coeff(*ne);  // den is monic
    if (c == 1) return std::make_pair(false, *ne - *de);
    if (c == -1) return std::make_pair(true, *ne - *de);
    return std::nullopt;
}

std::optional<Rational> QScalar::as_rational() const {
    if (den_.degree() != 0) return std::nullopt;
    if (num_.is_zero()) return Rational(0);
    if (num_.degree() != 0) return std::nullopt;
    return num_.lead();
}

std::string QScalar::str() const {
    if (is_zero()) return "0";
    bool den_trivial = den_.degree() == 0;
    std::ostringstream os;
    if (den_trivial) {
        os << num_.str();
    } else {
        bool paren_num = num_.degree() > 0;
        if (paren_num) os << "(" << num_.str() << ")";
        else os << num_.str();
        os << "/(" << den_.str() << ")";
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const QScalar& v) { return os << v.str(); }

namespace {

struct ScalarParser {
    const std::string& t;
    size_t i = 0;

    explicit ScalarParser(const std::string& s) : t(s) {}

    void skip() {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < t.size() && t[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ScalarError("scalar parse error at position " + std::to_string(i) + ": " + msg);
    }

    QScalar parse() {
        QScalar v = expr();
        skip();
        if (i != t.size()) fail("trailing input");
        return v;
    }

    QScalar expr() {
        QScalar v = eat('-') ? -term() : (eat('+'), term());
        for (;;) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }

    QScalar term() {
        QScalar v = factor();
        for (;;) {
            if (eat('*'))
                v = v * factor();
            else if (eat('/'))
                v = v / factor();
            else
                return v;
        }
    }

    QScalar factor() {
        QScalar v = atom();
        if (eat('^')) {
            skip();
            bool neg = eat('-');
            long e = integer();
            v = v.pow(neg ? -e : e);
        }
        return v;
    }

    long integer() {
        skip();
        size_t start = i;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        if (i == start) fail("expected integer");
        return std::stol(t.substr(start, i - start));
    }

    QScalar atom() {
        skip();
        if (i >= t.size()) fail("unexpected end");
        if (t[i] == '(') {
            ++i;
            QScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (t[i] == 's') {
            ++i;
            return QScalar::s();
        }
        if (t[i] == 'q') {
            ++i;
            return QScalar::q();
        }
        if (std::isdigit(static_cast<unsigned char>(t[i]))) {
            long n = integer();
            return QScalar(Rational(n));
        }
        fail("unexpected character");
    }
};

}  // namespace

QScalar parse_scalar(const std::string& text) { return ScalarParser(text).parse(); }

}  // namespace vcalc
