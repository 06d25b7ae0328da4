#pragma once

// Alternating-permutation counts and their inversion-statistic q-analogues.
//
// zigzag_numbers computes E_n two independent ways (boustrophedon transform
// and extraction from (1 + sin z)/cos z) and insists they agree.
//
// q_zigzag returns polynomials E_n(q).  Orders are extracted from the series
// (1 + sin_q z)/cos_q z, which counts inversions over up-down alternating
// permutations; even orders n >= 4 are then reversed to the complementary
// down-up statistic (q^{n(n-1)/2} E(1/q)).  Odd orders are palindromic under
// that reversal, so the convention only shows at even orders.

#include <mutex>
#include <stdexcept>
#include <vector>

#include "power_series.hpp"
#include "qpolynomial.hpp"
#include "scalar.hpp"

namespace qpersist {

namespace detail {

inline std::vector<Integer> zigzag_boustrophedon(unsigned n_max) {
    std::vector<Integer> result(n_max + 1);
    std::vector<Integer> prev{Integer(1)};
    result[0] = 1;
    for (unsigned n = 1; n <= n_max; ++n) {
        std::vector<Integer> row(n + 1);
        row[0] = 0;
        for (unsigned k = 1; k <= n; ++k) row[k] = row[k - 1] + prev[n - k];
        result[n] = row[n];
        prev = std::move(row);
    }
    return result;
}

inline std::vector<Integer> zigzag_from_series(unsigned n_max) {
    const int N = static_cast<int>(n_max);
    PowerSeries<Rational> num(N), den(N);
    num.set_coeff(0, Rational(1));
    Rational fact(1);
    for (int m = 1; m <= N; ++m) {
        fact *= m;
        if (m % 2 == 1)
            num.set_coeff(m, Rational((m / 2) % 2 ? -1 : 1) / fact);
        else
            den.set_coeff(m, Rational((m / 2) % 2 ? -1 : 1) / fact);
    }
    den.set_coeff(0, Rational(1));
    PowerSeries<Rational> f = num / den;
    std::vector<Integer> result(n_max + 1);
    fact = 1;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) fact *= n;
        Rational e = f.coeff(n) * fact;
        if (denominator(e) != 1)
            throw std::logic_error("zigzag_from_series: non-integer coefficient");
        result[n] = numerator(e);
    }
    return result;
}

}  // namespace detail

// E_1..E_{n_max} (1, 1, 2, 5, 16, ...); both routes are computed and compared.
inline std::vector<Integer> zigzag_numbers(unsigned n_max) {
    if (n_max == 0) throw std::invalid_argument("zigzag_numbers: n_max must be >= 1");
    auto a = detail::zigzag_boustrophedon(n_max);
    auto b = detail::zigzag_from_series(n_max);
    if (a != b)
        throw std::logic_error("zigzag_numbers: boustrophedon and series routes disagree");
    return std::vector<Integer>(a.begin() + 1, a.end());
}

inline QPolynomial q_int_poly(unsigned n) {
    std::vector<Rational> c(n, Rational(1));
    return n == 0 ? QPolynomial() : QPolynomial(std::move(c));
}

inline QPolynomial q_factorial_poly(unsigned n) {
    QPolynomial acc(Rational(1));
    for (unsigned k = 2; k <= n; ++k) acc *= q_int_poly(k);
    return acc;
}

// Gaussian binomial via the q-Pascal rule C(n,k) = C(n-1,k-1) + q^k C(n-1,k).
inline QPolynomial q_binomial_poly(unsigned n, unsigned k) {
    if (k > n) return QPolynomial();
    std::vector<QPolynomial> row{QPolynomial(Rational(1))};
    for (unsigned m = 1; m <= n; ++m) {
        std::vector<QPolynomial> next(std::min(m, k) + 1);
        next[0] = QPolynomial(Rational(1));
        for (unsigned j = 1; j < next.size(); ++j) {
            QPolynomial carry = (j < row.size()) ? QPolynomial::monomial(j) * row[j] : QPolynomial();
            next[j] = row[j - 1] + carry;
        }
        row = std::move(next);
    }
    return row[k];
}

namespace detail {

// Up-down inversion polynomials from the convolution identity
// cos_q * F = 1 + sin_q, i.e.
//   E_n = [n odd] (-1)^{(n-1)/2} - sum_{k>=1} (-1)^k C(n,2k)_q E_{n-2k}.
inline std::vector<QPolynomial> q_zigzag_updown_recurrence(unsigned n_max) {
    std::vector<QPolynomial> e(n_max + 1);
    e[0] = QPolynomial(Rational(1));
    for (unsigned n = 1; n <= n_max; ++n) {
        QPolynomial acc;
        if (n % 2 == 1) acc = QPolynomial(Rational(((n - 1) / 2) % 2 ? -1 : 1));
        for (unsigned k = 1; 2 * k <= n; ++k) {
            QPolynomial term = q_binomial_poly(n, 2 * k) * e[n - 2 * k];
            if (k % 2 == 1) acc += term; else acc -= term;
        }
        e[n] = acc;
    }
    return e;
}

// Same recurrence evaluated at a scalar q.  Only used where the convention
// does not matter (odd orders); returns the raw up-down values.
template <class T>
std::vector<T> q_zigzag_scalar(unsigned n_max, const T& q) {
    std::vector<std::vector<T>> binom(n_max + 1);
    binom[0] = {T(1)};
    for (unsigned m = 1; m <= n_max; ++m) {
        binom[m].assign(m + 1, T(0));
        binom[m][0] = T(1);
        binom[m][m] = T(1);
        T qk(1);
        for (unsigned j = 1; j < m; ++j) {
            qk *= q;
            binom[m][j] = binom[m - 1][j - 1] + qk * binom[m - 1][j];
        }
    }
    std::vector<T> e(n_max + 1, T(0));
    e[0] = T(1);
    for (unsigned n = 1; n <= n_max; ++n) {
        T acc(0);
        if (n % 2 == 1) acc = T(((n - 1) / 2) % 2 ? -1 : 1);
        for (unsigned k = 1; 2 * k <= n; ++k) {
            T term = binom[n][2 * k] * e[n - 2 * k];
            if (k % 2 == 1) acc += term; else acc -= term;
        }
        e[n] = acc;
    }
    return e;
}

// Series-division route: coefficients of (1 + sin_q)/cos_q over the rational
// function field, scaled back by [n]_q!.
inline std::vector<QPolynomial> q_zigzag_updown_series(unsigned n_max) {
    const int N = static_cast<int>(n_max);
    PowerSeries<QRationalFn> num(N), den(N);
    num.set_coeff(0, QRationalFn(1));
    den.set_coeff(0, QRationalFn(1));
    for (int m = 1; m <= N; ++m) {
        QRationalFn c(QPolynomial(Rational((m / 2) % 2 ? -1 : 1)), q_factorial_poly(m));
        if (m % 2 == 1) num.set_coeff(m, c); else den.set_coeff(m, c);
    }
    PowerSeries<QRationalFn> f = num / den;
    std::vector<QPolynomial> e(n_max + 1);
    for (int n = 0; n <= N; ++n) {
        QRationalFn en = f.coeff(n) * QRationalFn(q_factorial_poly(n));
        e[n] = en.to_polynomial();
    }
    return e;
}

inline unsigned triangle(unsigned n) { return n * (n - 1) / 2; }

inline std::vector<QPolynomial> q_zigzag_compute(unsigned n_max) {
    std::vector<QPolynomial> e = q_zigzag_updown_series(n_max);
    for (unsigned n = 0; n <= n_max; ++n) {
        if (!e[n].integer_coeffs())
            throw std::logic_error("q_zigzag: non-integer coefficients");
        for (const auto& c : e[n].coeffs())
            if (c < 0) throw std::logic_error("q_zigzag: negative coefficient");
        if (n % 2 == 1 && e[n] != e[n].reversed(triangle(n)))
            throw std::logic_error("q_zigzag: odd order is not palindromic");
        if (n >= 4 && n % 2 == 0) e[n] = e[n].reversed(triangle(n));
    }
    return e;
}

}  // namespace detail

// E_1(q)..E_{n_max}(q); results are cached across calls.
inline std::vector<QPolynomial> q_zigzag(unsigned n_max) {
    if (n_max == 0) throw std::invalid_argument("q_zigzag: n_max must be >= 1");
    static std::mutex mtx;
    static std::vector<QPolynomial> cache;
    std::lock_guard<std::mutex> lock(mtx);
    if (cache.size() <= n_max) cache = detail::q_zigzag_compute(n_max);
    return std::vector<QPolynomial>(cache.begin() + 1, cache.begin() + n_max + 1);
}

}  // namespace qpersist
