#pragma once

// q-deformed special functions: Pochhammer symbols, factorials, exponentials
// and trigonometry.  Series routines are float-only; the finite products and
// factorials work over any scalar, including exact rationals.
//
// Conventions: [n]_q = 1 + q + ... + q^{n-1}, [n]_q! = prod_{k<=n} [k]_q,
// (a;q)_n = prod_{k<n} (1 - a q^k).  q == 0 and q == 1 dispatch to the
// classical closed forms exactly.

#include <cmath>
#include <stdexcept>

#include "scalar.hpp"

namespace qpersist {

namespace detail {

template <FloatScalar T>
T default_tol() {
    if constexpr (std::is_same_v<T, double>) {
        return 8 * std::numeric_limits<double>::epsilon();
    } else {
        unsigned bits = working_precision_bits<T>();
        return pow(T(2), 4 - static_cast<int>(bits));
    }
}

template <FloatScalar T>
T resolve_tol(const T& tol) {
    if (tol > 0) return tol;
    return default_tol<T>();
}

}  // namespace detail

template <class T>
T q_integer(unsigned n, const T& q) {
    T acc(0);
    for (unsigned k = 0; k < n; ++k) {
        acc *= q;
        acc += T(1);
    }
    return acc;
}

template <class T>
T q_factorial(unsigned n, const T& q) {
    if (q == T(1)) {
        T acc(1);
        for (unsigned k = 2; k <= n; ++k) acc *= T(static_cast<long>(k));
        return acc;
    }
    T acc(1);
    for (unsigned k = 2; k <= n; ++k) acc *= q_integer(k, q);
    return acc;
}

template <class T>
T q_pochhammer(const T& a, const T& q, unsigned n) {
    T acc(1), aq(a);
    for (unsigned k = 0; k < n; ++k) {
        acc *= (T(1) - aq);
        aq *= q;
    }
    return acc;
}

// (a;q)_inf for 0 <= q < 1.  Truncates once the omitted factors satisfy
// |a| q^K / (1-q) < tol (log-linearized tail of the infinite product).
template <FloatScalar T>
T q_pochhammer_inf(const T& a, const T& q, T tol = T(0)) {
    if (q < 0 || q >= T(1))
        throw std::domain_error("q_pochhammer_inf: requires 0 <= q < 1");
    tol = detail::resolve_tol(tol);
    if (a == 0) return T(1);
    T acc(1), aq(a);
    const T scale = T(1) - q;
    for (unsigned k = 0; k < 100000; ++k) {
        if (abs_val(aq) / scale < tol) return acc;
        acc *= (T(1) - aq);
        aq *= q;
    }
    throw std::runtime_error("q_pochhammer_inf: tail did not shrink below tol");
}

// Small q-exponential e_q(z) = sum z^n/[n]_q!.  Radius |z| < 1/(1-q) for
// 0 <= q < 1; entire for q >= 1.  q == 1 is exp, q == 0 is 1/(1-z).
template <FloatScalar T>
T e_q(const T& z, const T& q, T tol = T(0)) {
    if (q < 0) throw std::domain_error("e_q: requires q >= 0");
    if (q == T(1)) return exp(z);
    if (q == T(0)) {
        if (abs_val(z) >= T(1)) throw std::domain_error("e_q: |z| >= 1 at q = 0");
        return T(1) / (T(1) - z);
    }
    if (q < T(1) && abs_val(z) * (T(1) - q) >= T(1))
        throw std::domain_error("e_q: outside radius of convergence");
    tol = detail::resolve_tol(tol);
    T sum(1), term(1);
    for (unsigned n = 1; n < 100000; ++n) {
        T denom = q_integer(n, q);
        term *= z / denom;
        sum += term;
        T r = abs_val(z) / q_integer(n + 1, q);
        if (r < T(1) && abs_val(term) * r / (T(1) - r) <= tol * (T(1) + abs_val(sum)))
            return sum;
    }
    throw std::runtime_error("e_q: series did not converge");
}

// Product form of the same function: e_q(z) = 1 / ((1-q)z; q)_inf.
// Kept separate so the two routes can be compared against each other.
template <FloatScalar T>
T e_q_product(const T& z, const T& q, T tol = T(0)) {
    if (q < 0 || q >= T(1))
        throw std::domain_error("e_q_product: requires 0 <= q < 1");
    T denom = q_pochhammer_inf((T(1) - q) * z, q, tol);
    if (denom == 0) throw std::domain_error("e_q_product: pole");
    return T(1) / denom;
}

// Big q-exponential E_q(z) = sum q^{n(n-1)/2} z^n/[n]_q!, equal to e_{1/q}(z).
// Entire for 0 <= q <= 1; for q > 1 the domain is |z| < q/(q-1).
// E_0(z) = 1 + z, and E_q(z) e_q(-z) = 1 on the common domain.
template <FloatScalar T>
T big_e_q(const T& z, const T& q, T tol = T(0)) {
    if (q < 0) throw std::domain_error("big_e_q: requires q >= 0");
    if (q == T(0)) return T(1) + z;
    if (q == T(1)) return exp(z);
    if (q > T(1)) return e_q(z, T(1) / q, tol);
    tol = detail::resolve_tol(tol);
    T sum(1), term(1), qn(1);   // qn = q^{n-1} entering step n
    for (unsigned n = 1; n < 100000; ++n) {
        term *= qn * z / q_integer(n, q);
        sum += term;
        qn *= q;
        T r = abs_val(qn * z) / q_integer(n + 1, q);
        if (r < T(1) && abs_val(term) * r / (T(1) - r) <= tol * (T(1) + abs_val(sum)))
            return sum;
    }
    throw std::runtime_error("big_e_q: series did not converge");
}

namespace detail {

// Alternating even/odd part of e_q(iz); parity 1 = sine, 0 = cosine.
// First-omitted-term error control once the terms decrease.
template <FloatScalar T>
T q_trig_series(const T& z, const T& q, int parity, T tol) {
    T sum(parity ? z : T(1));
    T term = sum;
    unsigned m = parity;   // current power of z in `term`
    for (unsigned n = 0; n < 100000; ++n) {
        T next = -term * z * z / (q_integer(m + 1, q) * q_integer(m + 2, q));
        m += 2;
        if (abs_val(next) <= tol * (T(1) + abs_val(sum)) && abs_val(next) <= abs_val(term))
            return sum;   // |omitted| bounded by first omitted term
        sum += next;
        term = next;
    }
    throw std::runtime_error("q_trig_series: did not converge");
}

}  // namespace detail

template <FloatScalar T>
T sin_q(const T& z, const T& q, T tol = T(0)) {
    if (q < 0) throw std::domain_error("sin_q: requires q >= 0");
    if (q == T(1)) return sin(z);
    if (q == T(0)) return z / (T(1) + z * z);
    if (q < T(1) && abs_val(z) * (T(1) - q) >= T(1))
        throw std::domain_error("sin_q: outside radius of convergence");
    return detail::q_trig_series(z, q, 1, detail::resolve_tol(tol));
}

template <FloatScalar T>
T cos_q(const T& z, const T& q, T tol = T(0)) {
    if (q < 0) throw std::domain_error("cos_q: requires q >= 0");
    if (q == T(1)) return cos(z);
    if (q == T(0)) return T(1) / (T(1) + z * z);
    if (q < T(1) && abs_val(z) * (T(1) - q) >= T(1))
        throw std::domain_error("cos_q: outside radius of convergence");
    return detail::q_trig_series(z, q, 0, detail::resolve_tol(tol));
}

namespace detail {

// Phase of e_q(iz) for 0 < q < 1 and real z: sum of atan((1-q) z q^j).
// Omitted tail after J terms is below |z| q^{J+1}.
template <FloatScalar T>
T q_phase(const T& z, const T& q, const T& tol) {
    T phi(0);
    T a = (T(1) - q) * z;
    T qj(1);
    for (unsigned j = 0; j < 100000; ++j) {
        phi += atan(a * qj);
        qj *= q;
        if (abs_val(z) * qj < tol) return phi;
    }
    throw std::runtime_error("q_phase: tail did not shrink below tol");
}

}  // namespace detail

// tan_q = sin_q / cos_q, computed as tan of the phase of e_q(iz), which is
// valid for every real z (not just inside the series radius).  tan_{1/q}
// coincides with tan_q, so q > 1 reduces to 1/q.
template <FloatScalar T>
T tan_q(const T& z, const T& q, T tol = T(0)) {
    if (q < 0) throw std::domain_error("tan_q: requires q >= 0");
    if (q == T(1)) return tan(z);
    if (q == T(0)) return z;
    if (q > T(1)) return tan_q(z, T(1) / q, tol);
    tol = detail::resolve_tol(tol);
    T phi = detail::q_phase(z, q, tol);
    const T pi = pi_value<T>();
    using std::round;
    T k = round(phi / pi - T(1) / 2);
    if (abs_val(phi - (k + T(1) / 2) * pi) < tol)
        throw std::domain_error("tan_q: pole (phase within tol of pi/2 mod pi)");
    return sin(phi) / cos(phi);
}

// Inverse of tan_q on the principal branch: the unique root of
// phase(z) = atan(y) in [0, max(1, y)/(1-q)] (the first phase term alone
// reaches the target at the upper end; the phase is strictly increasing).
// Secant steps through the bracket alternate with bisection, so the bracket
// provably collapses.
template <FloatScalar T>
T arctan_q(const T& y, const T& q, T tol = T(0)) {
    if (q < 0) throw std::domain_error("arctan_q: requires q >= 0");
    if (q == T(1)) return atan(y);
    if (q == T(0)) return y;
    if (q > T(1)) return arctan_q(y, T(1) / q, tol);
    if (y < 0) return -arctan_q(-y, q, tol);
    if (y == 0) return T(0);
    tol = detail::resolve_tol(tol);
    const T target = atan(y);
    const T phase_tol = tol / 16;
    T lo(0), glo = -target;
    T hi = (y > 1 ? y : T(1)) / (T(1) - q);
    T ghi = detail::q_phase(hi, q, phase_tol) - target;
    if (ghi <= 0) return hi;
    for (unsigned it = 0; it < 100000; ++it) {
        T mid = (lo + hi) / 2;
        if (mid <= lo || mid >= hi) return mid;   // exhausted at working precision
        if (hi - lo <= tol * (T(1) + mid)) return mid;
        T z = mid;
        if (it % 2 == 0) {
            T zs = lo - glo * (hi - lo) / (ghi - glo);
            if (zs > lo && zs < hi) z = zs;
        }
        T g = detail::q_phase(z, q, phase_tol) - target;
        if (abs_val(g) <= phase_tol) return z;
        if (g > 0) { hi = z; ghi = g; } else { lo = z; glo = g; }
    }
    throw std::runtime_error("arctan_q: did not converge");
}

// arctan_q(1): the q-deformation of pi/4.
template <FloatScalar T>
T q_pi_over_4(const T& q, T tol = T(0)) {
    return arctan_q(T(1), q, tol);
}

}  // namespace qpersist
