#pragma once

// Dense univariate polynomials with exact rational coefficients, plus the
// field of rational functions built from them.  Used for the q-deformed
// combinatorial polynomials and for series arithmetic over Q(q).

#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace qpersist {

class QPolynomial {
    std::vector<Rational> c_;   // c_[k] multiplies q^k; no trailing zeros

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

public:
    QPolynomial() = default;
    QPolynomial(const Rational& r) { if (r != 0) c_.push_back(r); }
    QPolynomial(long v) : QPolynomial(Rational(v)) {}
    QPolynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
    explicit QPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPolynomial monomial(int deg, const Rational& coeff = Rational(1)) {
        std::vector<Rational> v(deg + 1, Rational(0));
        v[deg] = coeff;
        return QPolynomial(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
        return c_[k];
    }
    void set_coeff(int k, const Rational& v) {
        if (k >= static_cast<int>(c_.size())) c_.resize(k + 1, Rational(0));
        c_[k] = v;
        trim();
    }
    Rational leading() const {
        return c_.empty() ? Rational(0) : c_.back();
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    QPolynomial& operator+=(const QPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    QPolynomial& operator-=(const QPolynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
    friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
    QPolynomial operator-() const {
        QPolynomial r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return QPolynomial();
        std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return QPolynomial(std::move(v));
    }
    QPolynomial& operator*=(const QPolynomial& o) { return *this = *this * o; }

    QPolynomial& scale(const Rational& s) {
        if (s == 0) { c_.clear(); return *this; }
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend QPolynomial operator*(const Rational& s, QPolynomial p) { return p.scale(s); }

    friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPolynomial& a, const QPolynomial& b) { return !(a == b); }

    QPolynomial derivative() const {
        if (c_.size() <= 1) return QPolynomial();
        std::vector<Rational> v(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = Rational(static_cast<long>(k)) * c_[k];
        return QPolynomial(std::move(v));
    }

    template <class T>
    T eval(const T& x) const {
        T acc(0);
        for (size_t i = c_.size(); i-- > 0;) {
            acc *= x;
            acc += T(c_[i]);
        }
        return acc;
    }

    QPolynomial pow(unsigned e) const {
        QPolynomial acc(Rational(1)), base(*this);
        while (e) {
            if (e & 1) acc *= base;
            if (e >>= 1) base *= base;
        }
        return acc;
    }

    // q^m * p(1/q): coefficient reversal around exponent m (requires m >= degree).
    QPolynomial reversed(int m) const {
        if (is_zero()) return *this;
        if (m < degree()) throw std::invalid_argument("QPolynomial::reversed: m < degree");
        std::vector<Rational> v(m + 1, Rational(0));
        for (size_t k = 0; k < c_.size(); ++k) v[m - k] = c_[k];
        return QPolynomial(std::move(v));
    }

    bool integer_coeffs() const {
        for (const auto& x : c_)
            if (denominator(x) != 1) return false;
        return true;
    }

    // Ascending coefficient vector padded to length len (len = -1: natural length).
    std::vector<Integer> integer_coeff_vector(int len = -1) const {
        size_t n = (len < 0) ? c_.size() : static_cast<size_t>(len);
        std::vector<Integer> v(n, Integer(0));
        for (size_t k = 0; k < c_.size(); ++k) {
            if (denominator(c_[k]) != 1)
                throw std::logic_error("QPolynomial: coefficient is not an integer");
            if (k < n) v[k] = numerator(c_[k]);
        }
        return v;
    }

    std::string str(const char* var = "q") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            if (!first) os << (c_[k] > 0 ? " + " : " - ");
            Rational a = first ? c_[k] : abs_val(c_[k]);
            first = false;
            if (k == 0) { os << a; continue; }
            if (a != 1) os << a << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        return os.str();
    }
};

// --- exact division and gcd ---

// Quotient of a by b; throws unless the division is exact.
inline QPolynomial poly_divexact(const QPolynomial& a, const QPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("poly_divexact: division by zero polynomial");
    if (a.is_zero()) return QPolynomial();
    int da = a.degree(), db = b.degree();
    if (da < db) throw std::logic_error("poly_divexact: division is not exact");
    std::vector<Rational> rem(a.coeffs());
    std::vector<Rational> quo(da - db + 1, Rational(0));
    const Rational lb = b.leading();
    for (int k = da - db; k >= 0; --k) {
        Rational t = rem[k + db] / lb;
        quo[k] = t;
        if (t == 0) continue;
        for (int j = 0; j <= db; ++j) rem[k + j] -= t * b.coeff(j);
    }
    for (const auto& r : rem)
        if (r != 0) throw std::logic_error("poly_divexact: division is not exact");
    return QPolynomial(std::move(quo));
}

// Integer-primitive part with positive leading coefficient (content removed).
inline QPolynomial poly_primitive(const QPolynomial& p) {
    if (p.is_zero()) return p;
    Integer g(0), l(1);
    for (const auto& x : p.coeffs()) {
        if (x == 0) continue;
        g = gcd(g, Integer(numerator(x)));
        l = lcm(l, Integer(denominator(x)));
    }
    Rational content(g, l);
    if (p.leading() < 0) content = -content;
    QPolynomial r(p);
    return r.scale(Rational(1) / content);
}

// Primitive pseudo-remainder sequence gcd; result is integer-primitive with
// positive leading coefficient (a nonzero rational for coprime inputs -> 1).
inline QPolynomial poly_gcd(QPolynomial a, QPolynomial b) {
    if (a.is_zero()) return poly_primitive(b);
    if (b.is_zero()) return poly_primitive(a);
    a = poly_primitive(a);
    b = poly_primitive(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        // pseudo-remainder of a by b
        QPolynomial r(a);
        const Rational lb = b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            Rational t = r.leading() / lb;
            QPolynomial sub = QPolynomial::monomial(shift, t) * b;
            r -= sub;
        }
        a = b;
        b = poly_primitive(r);
    }
    return poly_primitive(a);
}

// --- rational functions over Q(q) ---
//
// Canonical form: gcd(num, den) = 1 and monic denominator, so the leading
// denominator coefficient is positive; den is never the zero polynomial.

class QRationalFn {
    QPolynomial num_, den_;

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("QRationalFn: zero denominator");
        if (num_.is_zero()) { den_ = QPolynomial(Rational(1)); return; }
        QPolynomial g = poly_gcd(num_, den_);
        if (g.degree() > 0 || g.leading() != 1) {
            num_ = poly_divexact(num_, g);
            den_ = poly_divexact(den_, g);
        }
        Rational lead = den_.leading();
        if (lead != 1) {
            num_.scale(Rational(1) / lead);
            den_.scale(Rational(1) / lead);
        }
    }

public:
    QRationalFn() : num_(), den_(Rational(1)) {}
    QRationalFn(long v) : num_(Rational(v)), den_(Rational(1)) {}
    QRationalFn(const Rational& r) : num_(r), den_(Rational(1)) {}
    QRationalFn(const QPolynomial& n) : num_(n), den_(Rational(1)) {}
    QRationalFn(QPolynomial n, QPolynomial d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    const QPolynomial& num() const { return num_; }
    const QPolynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    // Numerator as a polynomial when the denominator is trivial.
    QPolynomial to_polynomial() const {
        if (!is_polynomial())
            throw std::logic_error("QRationalFn: not a polynomial: (" + num_.str() + ")/(" + den_.str() + ")");
        return num_;   // den == 1 after canonicalization
    }

    friend QRationalFn operator+(const QRationalFn& a, const QRationalFn& b) {
        return QRationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QRationalFn operator-(const QRationalFn& a, const QRationalFn& b) {
        return QRationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    QRationalFn operator-() const {
        QRationalFn r(*this);
        r.num_ = -r.num_;
        return r;
    }
    friend QRationalFn operator*(const QRationalFn& a, const QRationalFn& b) {
        return QRationalFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend QRationalFn operator/(const QRationalFn& a, const QRationalFn& b) {
        if (b.is_zero()) throw std::domain_error("QRationalFn: division by zero");
        return QRationalFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    QRationalFn& operator+=(const QRationalFn& o) { return *this = *this + o; }
    QRationalFn& operator-=(const QRationalFn& o) { return *this = *this - o; }
    QRationalFn& operator*=(const QRationalFn& o) { return *this = *this * o; }
    QRationalFn& operator/=(const QRationalFn& o) { return *this = *this / o; }

    friend bool operator==(const QRationalFn& a, const QRationalFn& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const QRationalFn& a, const QRationalFn& b) { return !(a == b); }

    template <class T>
    T eval(const T& x) const {
        T d = den_.eval(x);
        if (d == 0) throw std::domain_error("QRationalFn::eval: pole");
        return num_.eval(x) / d;
    }
};

template <> struct scalar_traits<QRationalFn> { static constexpr bool exact = true; };

}  // namespace qpersist
