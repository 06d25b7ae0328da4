#pragma once

// Generating functions for the survival probabilities: series builders for
// both signs of theta and the odd-composition expansion coefficients.
//
// Every returned series is P(z) = sum_{n>=1} p_n z^n with zero constant
// term.  Builders work over any scalar field; with rational inputs every
// coefficient is exact.

#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "power_series.hpp"
#include "qspecial.hpp"
#include "scalar.hpp"
#include "zigzag.hpp"

namespace qpersist {

namespace detail {

// e_theta(a z) as a formal series to the given order.
template <class T>
PowerSeries<T> e_q_series(const T& a, const T& q, int order) {
    PowerSeries<T> s(order);
    T ak(1);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) ak *= a;
        s.set_coeff(k, ak / q_factorial(static_cast<unsigned>(k), q));
    }
    return s;
}

// Shifts R(z) with R(0) = 1 into (R(z) - 1)/z - 1, dropping two orders.
template <class T>
PowerSeries<T> shift_to_pn_series(const PowerSeries<T>& r, int order) {
    PowerSeries<T> p(order);
    p.set_coeff(0, T(0));
    for (int n = 1; n <= order; ++n) p.set_coeff(n, r.coeff(n + 1));
    return p;
}

}  // namespace detail

// P(z) for theta > 0, from the ratio e_theta((1-xi)z) / e_theta(-xi z);
// coefficient of z^n is p_n.  theta > 1 is folded down by duality first.
template <class T>
PowerSeries<T> gf_theta_pos(const ModelParams<T>& params, int order) {
    if (order < 0) throw std::invalid_argument("gf_theta_pos: negative order");
    ModelParams<T> p = params.theta > 1 ? duality_reduce(params) : params;
    if (!(p.theta > 0)) throw std::domain_error("gf_theta_pos: requires theta > 0");
    const int n = order + 2;
    PowerSeries<T> num = detail::e_q_series(T(1) - p.xi, p.theta, n);
    PowerSeries<T> den = detail::e_q_series(-p.xi, p.theta, n);
    return detail::shift_to_pn_series(num / den, order);
}

// P(z) for theta < 0.  With q = -theta and t = xi(1-xi) the ratio
// sin_q / (cos_q - (1-xi) sin_q/sqrt(t)-scaled) is assembled from the
// parity-rescaled series
//   A(z) = sum (-1)^k t^k z^{2k+1}/[2k+1]_q!,   sqrt(t) A(z) = sin_q(sqrt(t) z)
//   B(z) = sum (-1)^k t^k z^{2k}  /[2k]_q!,             B(z) = cos_q(sqrt(t) z)
// so only integer powers of t ever appear and rational inputs stay rational:
//   P(z) = A/(B - (1-xi)A) / z - 1.
template <class T>
PowerSeries<T> gf_theta_neg(const ModelParams<T>& params, int order) {
    if (order < 0) throw std::invalid_argument("gf_theta_neg: negative order");
    ModelParams<T> p = params.theta < -1 ? duality_reduce(params) : params;
    if (!(p.theta < 0)) throw std::domain_error("gf_theta_neg: requires theta < 0");
    if (p.xi == 0 || p.xi == 1)
        throw std::domain_error("gf_theta_neg: xi in {0,1} is a trivial case");
    const T q = -p.theta;
    const T t = p.xi * (T(1) - p.xi);
    const int n = order + 2;
    PowerSeries<T> a(n), b(n);
    T tk(1);
    for (int k = 0; 2 * k <= n; ++k) {
        if (k > 0) tk *= -t;
        b.set_coeff(2 * k, tk / q_factorial(static_cast<unsigned>(2 * k), q));
        if (2 * k + 1 <= n)
            a.set_coeff(2 * k + 1, tk / q_factorial(static_cast<unsigned>(2 * k + 1), q));
    }
    PowerSeries<T> scaled_a = a;
    scaled_a.scale(T(1) - p.xi);
    PowerSeries<T> ratio = a / (b - scaled_a);
    // ratio = z + p_1 z^2 + ...; dividing by z and dropping the 1 yields P.
    PowerSeries<T> result(order);
    result.set_coeff(0, T(0));
    for (int m = 1; m <= order; ++m) result.set_coeff(m, ratio.coeff(m + 1));
    return result;
}

namespace detail {

// table[r][m] = sum over compositions of m into r odd parts of
// prod_k E_{j_k}(q)/[j_k]_q!, i.e. the z^m coefficient of tan_q(z)^r.
template <class T>
std::vector<std::vector<T>> tan_q_power_table(unsigned n_max, const T& q) {
    std::vector<T> e = q_zigzag_scalar(n_max, q);
    std::vector<T> u(n_max + 1, T(0));
    for (unsigned j = 1; j <= n_max; j += 2) u[j] = e[j] / q_factorial(j, q);
    std::vector<std::vector<T>> table(n_max + 1, std::vector<T>(n_max + 1, T(0)));
    table[0][0] = T(1);
    for (unsigned r = 1; r <= n_max; ++r)
        for (unsigned m = r; m <= n_max; ++m) {
            T acc(0);
            for (unsigned j = 1; j <= m - r + 1; j += 2) acc += u[j] * table[r - 1][m - j];
            table[r][m] = acc;
        }
    return table;
}

}  // namespace detail

// b_1..b_N with b_n = sum_r delta^{r-1} [z^n] tan_q(z)^r, computed by the
// composition DP and checked against direct extraction from the series
// tan_q(z)/(1 - delta tan_q(z)).
template <class T>
std::vector<T> b_n_composition(const T& q, const T& delta, unsigned n_count) {
    if (n_count == 0) throw std::invalid_argument("b_n_composition: N must be >= 1");
    auto table = detail::tan_q_power_table(n_count, q);

    std::vector<T> b(n_count + 1, T(0));
    for (unsigned n = 1; n <= n_count; ++n) {
        T acc(0), dpow(1);
        for (unsigned r = 1; r <= n; ++r) {
            acc += dpow * table[r][n];
            dpow *= delta;
        }
        b[n] = acc;
    }

    // independent route: series division of tan_q by (1 - delta tan_q)
    const int order = static_cast<int>(n_count);
    PowerSeries<T> sin_s(order), cos_s(order);
    for (int m = 0; m <= order; ++m) {
        T c = T((m / 2) % 2 ? -1 : 1) / q_factorial(static_cast<unsigned>(m), q);
        if (m % 2 == 1) sin_s.set_coeff(m, c); else cos_s.set_coeff(m, c);
    }
    PowerSeries<T> tan_s = sin_s / cos_s;
    PowerSeries<T> denom = -tan_s;
    denom.scale(delta);
    denom.set_coeff(0, denom.coeff(0) + T(1));
    PowerSeries<T> b_series = tan_s / denom;
    for (unsigned n = 1; n <= n_count; ++n) {
        if constexpr (is_exact_v<T>) {
            if (b[n] != b_series.coeff(n))
                throw std::logic_error("b_n_composition: DP and series routes disagree");
        } else {
            T diff = abs_val(b[n] - b_series.coeff(n));
            if (diff > T(1e-6) * (T(1) + abs_val(b[n])))
                throw std::logic_error("b_n_composition: DP and series routes disagree");
        }
    }
    return std::vector<T>(b.begin() + 1, b.end());
}

}  // namespace qpersist
