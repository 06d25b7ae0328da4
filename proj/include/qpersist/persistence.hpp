#pragma once

// Survival probabilities p_n of the lag-one comparison chain by every
// analytic route: closed products, forward recursions for both signs of
// theta, odd-composition sums, the theta = -1 spectral series and exact
// xi-polynomials, and the geometric decay rate.
//
// Public entries fold |theta| > 1 down by duality before computing (the
// series and product machinery is controlled only for |theta| <= 1); the
// one exception is gf_ratio_pochhammer, whose defining products exist only
// for theta in (0,1) and which therefore rejects anything else.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "genfunc.hpp"
#include "model.hpp"
#include "qpolynomial.hpp"
#include "qspecial.hpp"
#include "scalar.hpp"
#include "zigzag.hpp"

namespace qpersist {

enum class Method {
    closed,
    recursion,
    gf,
    gf_pochhammer,
    composition,
    spectral,
    polynomial,
    mc,
    quad,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::closed: return "closed";
        case Method::recursion: return "recursion";
        case Method::gf: return "gf";
        case Method::gf_pochhammer: return "gf_pochhammer";
        case Method::composition: return "composition";
        case Method::spectral: return "spectral";
        case Method::polynomial: return "polynomial";
        case Method::mc: return "mc";
        case Method::quad: return "quad";
    }
    return "?";
}

template <class T>
struct PersistenceResult {
    unsigned n;
    T value;
    Method method;
    T error_bound;   // 0 in the exact backend
};

namespace detail {

template <FloatScalar T>
T pow2(int e) {
    if constexpr (std::is_same_v<T, double>) return std::ldexp(1.0, e);
    else return pow(T(2), e);
}

// Rounding bound for float backends.  Alternating recursions lose ~4 bits
// per step (empirical, see the precision guard below); plain products lose
// O(n) ulps.
template <class T>
T round_error_bound(unsigned n, const T& value, bool cancels) {
    if constexpr (is_exact_v<T>) {
        (void)n; (void)value; (void)cancels;
        return T(0);
    } else {
        int prec = static_cast<int>(working_precision_bits<T>());
        T eps = pow2<T>(1 - prec);
        if (cancels)
            return abs_val(value) * pow2<T>(4 * static_cast<int>(n) + 2 - prec) + pow2<T>(-prec);
        return abs_val(value) * T(8 * (n + 1)) * eps;
    }
}

// Cancellation guard for the alternating-sum recursions.
template <FloatScalar T>
void require_recursion_precision(unsigned n_max) {
    unsigned need = 53 + 4 * n_max;
    if (working_precision_bits<T>() < need)
        throw std::domain_error(
            "recursion: floating backend needs >= " + std::to_string(need) +
            " bits for n_max = " + std::to_string(n_max) + " (have " +
            std::to_string(working_precision_bits<T>()) + ")");
}

template <class T>
T factorial_t(unsigned n) {
    T acc(1);
    for (unsigned k = 2; k <= n; ++k) acc *= T(static_cast<long>(k));
    return acc;
}

}  // namespace detail

// Closed-form dispatch.  Handles theta >= 0 for all xi, and the trivial
// xi in {0,1} cases for theta < 0; interior xi with theta < 0 has no closed
// product form and is rejected.
template <class T>
PersistenceResult<T> p_closed(const ModelParams<T>& params, unsigned n) {
    if (n == 0) throw std::invalid_argument("p_closed: n must be >= 1");
    ModelParams<T> p = params.theta > 1 ? duality_reduce(params) : params;
    T value;
    bool product_form = false;
    if (p.theta < 0) {
        if (p.xi == 0) value = T(1);
        else if (p.xi == 1) value = T(0);
        else throw std::domain_error("p_closed: theta < 0 with xi in (0,1) has no closed form");
    } else if (p.theta == 0) {
        value = pow_int(T(1) - p.xi, n);
    } else if (p.theta == 1) {
        value = T(1) / detail::factorial_t<T>(n + 1);
    } else if (p.xi == 0) {
        value = T(1) / q_factorial(n + 1, p.theta);
        product_form = true;
    } else if (p.xi == 1) {
        value = pow_int(p.theta, static_cast<unsigned long>(n) * (n + 1) / 2) /
                q_factorial(n + 1, p.theta);
        product_form = true;
    } else {
        T num = q_pochhammer(-p.xi / (T(1) - p.xi), p.theta, n + 1);
        T den = q_pochhammer(p.theta, p.theta, n + 1);
        value = (num / den) * pow_int(T(1) - p.theta, n + 1) * pow_int(T(1) - p.xi, n + 1);
        product_form = true;
    }
    (void)product_form;
    return {n, value, Method::closed, detail::round_error_bound(n, value, false)};
}

// Forward recursion for theta > 0: state (alpha_j, c_j, r_j) with
//   alpha_1 = theta, alpha_j = (alpha_{j-1}+1) theta,
//   c_j = (1-xi)^j / [j]_theta!,
//   r_1 = xi, r_n = sum_{j<n} (-1)^{j-1} xi^j r_{n-j} / prod_{m<j}(alpha_m+1) + c_{n-1} xi,
// and p_{n-1} assembled from the r-values.  Returns p_1..p_n_max.
template <class T>
std::vector<PersistenceResult<T>> p_recursion_pos(const ModelParams<T>& params, unsigned n_max) {
    if (n_max == 0) throw std::invalid_argument("p_recursion_pos: n_max must be >= 1");
    ModelParams<T> p = params.theta > 1 ? duality_reduce(params) : params;
    if (!(p.theta > 0)) throw std::domain_error("p_recursion_pos: requires theta > 0");
    if (p.xi == 1) throw std::domain_error("p_recursion_pos: xi = 1 unsupported");
    if constexpr (!is_exact_v<T>) detail::require_recursion_precision<T>(n_max);

    const unsigned top = n_max + 1;
    const T one(1);
    std::vector<T> prod(top + 1);   // prod[j] = prod_{m=1}^{j} (alpha_m + 1)
    std::vector<T> c(top + 1);      // c[j]    = (1-xi)^j / [j]_theta!
    prod[0] = one;
    c[0] = one;
    T alpha = p.theta;
    for (unsigned j = 1; j <= top; ++j) {
        prod[j] = prod[j - 1] * (alpha + one);
        alpha = (alpha + one) * p.theta;
        c[j] = c[j - 1] * (one - p.xi) / q_integer(j, p.theta);
    }

    std::vector<T> r(top + 1);
    r[1] = p.xi;
    std::vector<PersistenceResult<T>> out;
    out.reserve(n_max);
    for (unsigned n = 2; n <= top; ++n) {
        T acc = c[n - 1] * p.xi;
        T xipow = p.xi;
        for (unsigned j = 1; j <= n - 1; ++j) {
            T term = xipow * r[n - j] / prod[j - 1];
            if (j % 2 == 1) acc += term; else acc -= term;
            xipow *= p.xi;
        }
        r[n] = acc;

        T pacc = c[n];
        xipow = one;
        for (unsigned j = 1; j <= n; ++j) {
            T term = xipow * r[n - j + 1] / prod[j - 1];
            if (j % 2 == 1) pacc += term; else pacc -= term;
            xipow *= p.xi;
        }
        out.push_back({n - 1, pacc, Method::recursion,
                       detail::round_error_bound(n - 1, pacc, true)});
    }
    return out;
}

// Forward recursion for theta < 0: alpha_1 = theta, alpha_n = (1-alpha_{n-1}) theta,
// triangular arrays r_i^n, s_i^n (s_n^n = 0) and the q_n sequence; p_{n-1} is
// assembled from level n.  Returns p_1..p_n_max.
template <class T>
std::vector<PersistenceResult<T>> p_recursion_neg(const ModelParams<T>& params, unsigned n_max) {
    if (n_max == 0) throw std::invalid_argument("p_recursion_neg: n_max must be >= 1");
    ModelParams<T> p = params.theta < -1 ? duality_reduce(params) : params;
    if (!(p.theta < 0)) throw std::domain_error("p_recursion_neg: requires theta < 0");
    if (!(p.xi > 0 && p.xi < 1))
        throw std::domain_error("p_recursion_neg: requires xi in (0,1)");
    if constexpr (!is_exact_v<T>) detail::require_recursion_precision<T>(n_max);

    const unsigned top = n_max + 1;
    const T one(1);
    const T xi = p.xi;
    const T rs = xi / (one - xi);          // r_i^n = rs^{n-i-1} s_i^{n-1}
    const T sr = (one - xi) / xi;          // s_i^n = -sr^{n-i-1} r_i^{n-1}

    std::vector<T> prod(top + 1);          // prod[j] = prod_{m=1}^{j} (1 - alpha_m)
    prod[0] = one;
    T alpha = p.theta;
    for (unsigned j = 1; j <= top; ++j) {
        prod[j] = prod[j - 1] * (one - alpha);
        alpha = (one - alpha) * p.theta;
    }

    // dense triangles, 1-indexed in i; level n occupies r[n][1..n]
    std::vector<std::vector<T>> r(top + 1), s(top + 1);
    std::vector<T> qn(top + 1);
    r[1] = {T(0), one - xi};
    s[1] = {T(0), xi};
    qn[1] = one - xi;

    std::vector<PersistenceResult<T>> out;
    out.reserve(n_max);
    for (unsigned n = 2; n <= top; ++n) {
        r[n].assign(n + 1, T(0));
        s[n].assign(n + 1, T(0));
        T rspow = one, srpow = one;
        for (unsigned i = n - 1; i >= 1; --i) {
            r[n][i] = rspow * s[n - 1][i];
            s[n][i] = -srpow * r[n - 1][i];
            rspow *= rs;
            srpow *= sr;
        }
        s[n][n] = T(0);

        T head(0), head_shift(0);   // sums over j < n with prod[j-1] resp. prod[j]
        T xipow = one;
        for (unsigned j = 1; j <= n - 1; ++j) {
            T term = xipow * (one - xi) * s[n - 1][n - j];
            if (j % 2 == 0) term = -term;
            head += term / prod[j - 1];
            head_shift += term / prod[j];
            xipow *= xi;
        }
        r[n][n] = head + qn[n - 1] * (one - xi);
        qn[n] = r[n][n] - head_shift;

        T pacc = qn[n];
        xipow = one;
        for (unsigned j = 1; j <= n; ++j) {
            T term = xipow * s[n][n - j + 1] / prod[j - 1];
            if (j % 2 == 1) pacc += term; else pacc -= term;
            xipow *= xi;
        }
        if constexpr (is_exact_v<T>) {
            if (pacc < 0 || pacc > 1)
                throw std::logic_error("p_recursion_neg: value escaped [0,1]");
        }
        out.push_back({n - 1, pacc, Method::recursion,
                       detail::round_error_bound(n - 1, pacc, true)});
    }
    return out;
}

// Odd-composition formula for theta < 0: with q = -theta and weight w = n+1,
//   p_n = sum_{r == w (mod 2)} xi^{(w-r)/2} (1-xi)^{(n-1+r)/2} [z^w] tan_q(z)^r.
// Pairing the half-integer powers this way keeps everything rational.
template <class T>
PersistenceResult<T> p_composition_neg(const ModelParams<T>& params, unsigned n) {
    if (n == 0) throw std::invalid_argument("p_composition_neg: n must be >= 1");
    ModelParams<T> p = params.theta < -1 ? duality_reduce(params) : params;
    if (!(p.theta < 0)) throw std::domain_error("p_composition_neg: requires theta < 0");
    if (p.xi == 0) return {n, T(1), Method::composition, T(0)};
    if (p.xi == 1) return {n, T(0), Method::composition, T(0)};

    const unsigned w = n + 1;
    const T q = -p.theta;
    auto table = detail::tan_q_power_table(w, q);
    T acc(0);
    for (unsigned r = 2 - (w % 2); r <= w; r += 2) {
        T term = pow_int(p.xi, (w - r) / 2) *
                 pow_int(T(1) - p.xi, (n - 1 + r) / 2) * table[r][w];
        acc += term;
    }
    return {n, acc, Method::composition, detail::round_error_bound(n, acc, false)};
}

// Spectral series at theta = -1:
//   p_n = xi (xi(1-xi))^{n/2} sum_{k in Z} (arctan(sqrt(xi/(1-xi))) + k pi)^{-(n+2)},
// truncated at |k| <= K with rigorous tail 2 int_K^inf (pi x)^{-(n+2)} dx
// (midpoint-rule convexity bounds both half-axes); K >= 3.
template <FloatScalar T>
PersistenceResult<T> p_theta_minus_one(const T& xi, unsigned n, T tol = T(0)) {
    if (n == 0) throw std::invalid_argument("p_theta_minus_one: n must be >= 1");
    if (!(xi > 0 && xi < 1))
        throw std::domain_error("p_theta_minus_one: requires xi in (0,1)");
    if (tol == 0) {
        // the tail shrinks only like K^{-(n+1)}, so "machine precision" is
        // out of reach for small n; default to a practical relative target
        tol = detail::default_tol<T>();
        if (tol < T(1e-12)) tol = T(1e-12);
    }
    const T one(1);
    const T pi = pi_value<T>();
    const T a = atan(sqrt(xi / (one - xi)));
    const int expo = static_cast<int>(n) + 2;
    const T pref = xi * pow_int(sqrt(xi * (one - xi)), n);

    auto inv_pow = [&](const T& x) { return one / pow_int(x, expo); };
    T sum = inv_pow(a);
    T tail;
    unsigned k = 0;
    for (;;) {
        ++k;
        sum += inv_pow(a + T(static_cast<long>(k)) * pi);
        sum += inv_pow(a - T(static_cast<long>(k)) * pi);
        if (k < 3) continue;
        tail = T(2) / (pow_int(pi, expo) * T(static_cast<long>(n) + 1) *
                       pow_int(T(static_cast<long>(k)), n + 1));
        if (sum > 0 && tail < tol * sum) break;
        if (k > 20000000)
            throw std::runtime_error("p_theta_minus_one: tail did not shrink below tol");
    }
    return {n, pref * sum, Method::spectral, pref * tail};
}

// p_n at theta = -1 as an exact polynomial in xi, built two independent ways:
// the differential recursion (n+2) p_{n+1} = (n(1-2xi)+2(1-xi)) p_n
// - 2 xi(1-xi) p_n', and the cotangent-derivative polynomials Q_0(z) = z,
// Q_{k+1} = -(1+z^2) Q_k' via
//   p_n = ((-1)^{n+1}/(n+1)!) xi (xi(1-xi))^{n/2} Q_{n+1}(sqrt((1-xi)/xi)).
// The printed form of that constant elsewhere omits the (-1)^{n+1}; the
// recursion route and the n = 1 value pin the sign used here.
inline QPolynomial p_theta_minus_one_polynomial(unsigned n) {
    if (n == 0) throw std::invalid_argument("p_theta_minus_one_polynomial: n must be >= 1");

    const QPolynomial xi = QPolynomial::monomial(1);
    const QPolynomial one(Rational(1));
    QPolynomial p = one - xi;
    for (unsigned m = 1; m < n; ++m) {
        QPolynomial factor({Rational(static_cast<long>(m) + 2), Rational(-2 * (static_cast<long>(m) + 1))});
        QPolynomial rhs = factor * p - Rational(2) * (xi * (one - xi)) * p.derivative();
        p = rhs.scale(Rational(1, static_cast<long>(m) + 2));
    }

    QPolynomial qpoly = QPolynomial::monomial(1);   // Q_0
    const QPolynomial one_plus_z2({Rational(1), Rational(0), Rational(1)});
    for (unsigned k = 0; k <= n; ++k) qpoly = -(one_plus_z2 * qpoly.derivative());

    Rational scale = Rational(n % 2 == 0 ? -1 : 1);   // (-1)^{n+1}
    for (unsigned k = 2; k <= n + 1; ++k) scale /= static_cast<long>(k);
    QPolynomial alt;
    for (int j = 0; j <= qpoly.degree(); ++j) {
        Rational cj = qpoly.coeff(j);
        if (cj == 0) continue;
        if ((static_cast<unsigned>(j) + n) % 2 != 0)
            throw std::logic_error("p_theta_minus_one_polynomial: parity violation in Q");
        int xi_pow = 1 + (static_cast<int>(n) - j) / 2;   // >= 0 since j <= deg Q_{n+1} = n+2
        unsigned omx_pow = (n + static_cast<unsigned>(j)) / 2;
        QPolynomial term = QPolynomial::monomial(static_cast<unsigned>(xi_pow), cj * scale) *
                           (one - xi).pow(omx_pow);
        alt += term;
    }
    if (alt != p)
        throw std::logic_error("p_theta_minus_one_polynomial: recursion and Q-formula routes disagree");
    return p;
}

// Geometric decay rate lim p_n^{1/n}.
template <class T>
T persistence_exponent(const ModelParams<T>& params) {
    const T one(1);
    if (params.theta == 0) return one - params.xi;
    if (params.theta > 1) return (one - one / params.theta) * params.xi;
    if (params.theta > 0) return (one - params.theta) * (one - params.xi);
    if (params.xi == 0 || params.xi == 1)
        throw std::domain_error("persistence_exponent: xi in {0,1} is degenerate for theta < 0");
    if constexpr (is_exact_v<T>) {
        throw std::invalid_argument("persistence_exponent: theta < 0 needs a floating backend");
    } else {
        ModelParams<T> p = duality_reduce(params);
        const T q = -p.theta;
        return sqrt(p.xi * (one - p.xi)) / arctan_q(sqrt(p.xi / (one - p.xi)), q);
    }
}

// P(z) as a ratio of two infinite Pochhammer products, expanded by the Euler
// identity (x;q)_inf = sum (-1)^k q^{k(k-1)/2} x^k/(q;q)_k.  Only defined for
// theta in (0,1); no duality fold here since the products do not exist at
// theta >= 1.
template <class T>
PowerSeries<T> gf_ratio_pochhammer(const ModelParams<T>& params, int order) {
    if (order < 0) throw std::invalid_argument("gf_ratio_pochhammer: negative order");
    if (!(params.theta > 0 && params.theta < 1))
        throw std::domain_error("gf_ratio_pochhammer: requires theta in (0,1)");
    if (params.xi == 1)
        throw std::domain_error("gf_ratio_pochhammer: xi = 1 unsupported");
    const int n = order + 2;
    const T theta = params.theta;
    const T a = -(T(1) - theta) * params.xi;
    const T b = (T(1) - theta) * (T(1) - params.xi);
    PowerSeries<T> num(n), den(n);
    T qpow(1), apow(1), bpow(1), poch(1);
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            qpow *= pow_int(theta, static_cast<unsigned long>(k) - 1);   // theta^{k(k-1)/2}
            apow *= a;
            bpow *= b;
            poch *= (T(1) - pow_int(theta, static_cast<unsigned long>(k)));
        }
        T sign = (k % 2 == 0) ? T(1) : T(-1);
        num.set_coeff(k, sign * qpow * apow / poch);
        den.set_coeff(k, sign * qpow * bpow / poch);
    }
    return detail::shift_to_pn_series(num / den, order);
}

// --- sequence wrappers and method dispatch ---

template <class T>
std::vector<PersistenceResult<T>> p_closed_seq(const ModelParams<T>& params, unsigned n_max) {
    std::vector<PersistenceResult<T>> out;
    out.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) out.push_back(p_closed(params, n));
    return out;
}

template <class T>
std::vector<PersistenceResult<T>> p_gf(const ModelParams<T>& params, unsigned n_max) {
    if (n_max == 0) throw std::invalid_argument("p_gf: n_max must be >= 1");
    if (params.theta == 0) throw std::domain_error("p_gf: theta = 0 is the trivial case");
    PowerSeries<T> series = params.theta > 0
        ? gf_theta_pos(params, static_cast<int>(n_max))
        : gf_theta_neg(params, static_cast<int>(n_max));
    std::vector<PersistenceResult<T>> out;
    out.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        T v = series.coeff(static_cast<int>(n));
        out.push_back({n, v, Method::gf, detail::round_error_bound(n, v, true)});
    }
    return out;
}

template <class T>
std::vector<PersistenceResult<T>> p_gf_pochhammer(const ModelParams<T>& params, unsigned n_max) {
    if (n_max == 0) throw std::invalid_argument("p_gf_pochhammer: n_max must be >= 1");
    PowerSeries<T> series = gf_ratio_pochhammer(params, static_cast<int>(n_max));
    std::vector<PersistenceResult<T>> out;
    out.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        T v = series.coeff(static_cast<int>(n));
        out.push_back({n, v, Method::gf_pochhammer, detail::round_error_bound(n, v, true)});
    }
    return out;
}

template <class T>
std::vector<PersistenceResult<T>> p_composition_seq(const ModelParams<T>& params, unsigned n_max) {
    std::vector<PersistenceResult<T>> out;
    out.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) out.push_back(p_composition_neg(params, n));
    return out;
}

template <FloatScalar T>
std::vector<PersistenceResult<T>> p_spectral_seq(const T& xi, unsigned n_max, T tol = T(0)) {
    std::vector<PersistenceResult<T>> out;
    out.reserve(n_max);
    for (unsigned n = 1; n <= n_max; ++n) out.push_back(p_theta_minus_one(xi, n, tol));
    return out;
}

// Evaluates the exact theta = -1 xi-polynomial at the given xi.
template <class T>
PersistenceResult<T> p_polynomial_eval(const ModelParams<T>& params, unsigned n) {
    ModelParams<T> p = params.theta < -1 ? duality_reduce(params) : params;
    if (!(p.theta == -1))
        throw std::domain_error("p_polynomial_eval: requires theta = -1");
    T v = p_theta_minus_one_polynomial(n).eval(p.xi);
    return {n, v, Method::polynomial, detail::round_error_bound(n, v, false)};
}

// Analytic methods applicable to the given parameters under backend T
// (the spectral series needs a floating backend).
template <class T>
std::vector<Method> applicable_methods(const ModelParams<T>& params) {
    std::vector<Method> out;
    if (params.theta == 0) return {Method::closed};
    ModelParams<T> p = duality_reduce(params);
    if (p.theta > 0) {
        out.push_back(Method::closed);
        if (p.xi != 1) out.push_back(Method::recursion);
        out.push_back(Method::gf);
        if (params.theta > 0 && params.theta < 1 && params.xi != 1)
            out.push_back(Method::gf_pochhammer);
    } else {
        if (p.xi == 0 || p.xi == 1) return {Method::closed};
        out.push_back(Method::recursion);
        out.push_back(Method::gf);
        out.push_back(Method::composition);
        if (p.theta == -1) {
            if constexpr (!is_exact_v<T>) out.push_back(Method::spectral);
            out.push_back(Method::polynomial);
        }
    }
    return out;
}

// Runs one analytic method over n = 1..n_max.  mc/quad live in the oracle
// headers and are dispatched by the CLI directly.
template <class T>
std::vector<PersistenceResult<T>> p_by_method(const ModelParams<T>& params, Method method,
                                              unsigned n_max, T tol = T(0)) {
    switch (method) {
        case Method::closed: return p_closed_seq(params, n_max);
        case Method::recursion:
            if (params.theta == 0) throw std::domain_error("recursion: theta = 0 is the trivial case");
            return params.theta > 0 ? p_recursion_pos(params, n_max)
                                    : p_recursion_neg(params, n_max);
        case Method::gf: return p_gf(params, n_max);
        case Method::gf_pochhammer: return p_gf_pochhammer(params, n_max);
        case Method::composition: return p_composition_seq(params, n_max);
        case Method::spectral:
            if constexpr (is_exact_v<T>) {
                throw std::invalid_argument("spectral method needs a floating backend");
            } else {
                ModelParams<T> p = duality_reduce(params);
                if (!(p.theta == -1))
                    throw std::domain_error("spectral method requires theta = -1");
                return p_spectral_seq(p.xi, n_max, tol);
            }
        case Method::polynomial: {
            std::vector<PersistenceResult<T>> out;
            out.reserve(n_max);
            for (unsigned n = 1; n <= n_max; ++n) out.push_back(p_polynomial_eval(params, n));
            return out;
        }
        default:
            throw std::invalid_argument("p_by_method: not an analytic method");
    }
}

}  // namespace qpersist
