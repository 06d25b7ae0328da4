#pragma once

// Model parameters of the lag-one comparison process: the chain survives
// step n while X_n > theta * X_{n-1}, innovations are two-sided exponential
// with mass xi on the negative side.

#include <stdexcept>

#include "scalar.hpp"

namespace qpersist {

enum class SignClass { negative, zero, positive };

// Regime of a nonnegative deformation parameter q.
enum class QRegime { zero, in_unit_interval, one, above_one };

template <class T>
QRegime classify_q(const T& q) {
    if (q < 0) throw std::domain_error("classify_q: q must be nonnegative");
    if (q == 0) return QRegime::zero;
    if (q == 1) return QRegime::one;
    if (q < 1) return QRegime::in_unit_interval;
    return QRegime::above_one;
}

template <class T>
struct ModelParams {
    T theta;
    T xi;

    ModelParams(const T& theta_, const T& xi_) : theta(theta_), xi(xi_) {
        if (xi < 0 || xi > 1)
            throw std::domain_error("ModelParams: xi must lie in [0,1]");
        if (!is_finite_val(theta) || !is_finite_val(xi))
            throw std::domain_error("ModelParams: parameters must be finite");
    }

    SignClass sign() const {
        if (theta < 0) return SignClass::negative;
        if (theta == 0) return SignClass::zero;
        return SignClass::positive;
    }

    // Deformation parameter used on the oscillating side.
    T q() const { return -theta; }

    // (1 - xi) / xi
    T gamma() const {
        if (xi == 0) throw std::domain_error("ModelParams::gamma: xi = 0");
        return (T(1) - xi) / xi;
    }

    // sqrt((1 - xi) / xi); floating backends only.
    T delta() const requires FloatScalar<T> {
        using std::sqrt;
        return sqrt(gamma());
    }
};

// Maps |theta| > 1 into |theta| <= 1 using the exchange symmetry of the
// survival event: (theta, xi) -> (1/theta, 1-xi) for theta > 1 and
// (theta, xi) -> (1/theta, xi) for theta < -1.  Idempotent.
template <class T>
ModelParams<T> duality_reduce(const ModelParams<T>& p) {
    if (p.theta == 0)
        throw std::domain_error("duality_reduce: theta = 0 is the trivial case");
    if (p.theta > 1) return ModelParams<T>(T(1) / p.theta, T(1) - p.xi);
    if (p.theta < -1) return ModelParams<T>(T(1) / p.theta, p.xi);
    return p;
}

}  // namespace qpersist
