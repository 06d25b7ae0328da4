#pragma once

// Iterated-integral quadrature.  The survival iterate
//   g_1(z) = S(theta z),  g_k(z) = int_{theta z}^inf g_{k-1}(x) f(x) dx,
// is tabulated on a uniform grid over [-L, L] with one cubic per cell
// (stencils never straddle 0, where the density has a kink) and closed-form
// integrals of cubic x exponential on every piece; p_n is the full-line
// integral of g_n against f, tail mass beyond +-L attached at the stabilized
// endpoint values.  The step halves until the final value moves by < tol/2.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "model.hpp"
#include "persistence.hpp"

namespace qpersist {
namespace detail {

// m_k(w) = int_0^w u^k e^{-u} du, k = 0..3, by alternating series; w never
// exceeds the grid step.
inline void exp_moments(double w, double out[4]) {
    for (int k = 0; k < 4; ++k) {
        double pw = 1.0;
        for (int i = 0; i <= k; ++i) pw *= w;
        double sum = 0.0, fact = 1.0;
        for (int j = 0; j < 60; ++j) {
            if (j > 0) {
                fact *= j;
                pw *= w;
            }
            double term = pw / (fact * (k + 1 + j));
            if (j % 2) sum -= term;
            else sum += term;
            if (term < 1e-20 * (sum + 1e-300)) break;
        }
        out[k] = sum;
    }
}

// Power-basis coefficients about `center` of the cubic through (xs[i], vs[i]).
inline void cubic_coeffs(const double xs[4], const double vs[4], double center, double out[4]) {
    double dd[4] = {vs[0], vs[1], vs[2], vs[3]};
    for (int lvl = 1; lvl < 4; ++lvl)
        for (int i = 3; i >= lvl; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
    double a[4] = {dd[3], 0.0, 0.0, 0.0};
    for (int i = 2; i >= 0; --i) {
        const double c = center - xs[i];
        const double r0 = c * a[0] + dd[i];
        const double r1 = a[0] + c * a[1];
        const double r2 = a[1] + c * a[2];
        const double r3 = a[2] + c * a[3];
        a[0] = r0; a[1] = r1; a[2] = r2; a[3] = r3;
    }
    out[0] = a[0]; out[1] = a[1]; out[2] = a[2]; out[3] = a[3];
}

// One grid level.  Nodes x_i = (i-m) h, i = 0..2m, h = L/m.  Cell j is
// [x_j, x_{j+1}].  Negative cells (j < m) store the cubic in u = x_{j+1}-x,
// positive cells in t = x-x_j, so every piece integral reduces to the
// decaying moments m_k against weight exp(-u) with a bounded prefactor.
inline double quad_level(double theta, double xi, unsigned n, double L, int m) {
    const double h = L / m;
    const int nn = 2 * m + 1;
    auto x_of = [&](int i) { return h * (i - m); };

    std::vector<double> g(nn);
    for (int i = 0; i < nn; ++i) {
        double y = theta * x_of(i);
        g[i] = y >= 0 ? (1.0 - xi) * std::exp(-y) : 1.0 - xi * std::exp(y);
    }

    std::vector<std::array<double, 4>> coef(2 * m);
    std::vector<double> suffix(2 * m + 1);
    double mh[4];
    exp_moments(h, mh);

    auto dot4 = [](const std::array<double, 4>& a, const double b[4]) {
        return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
    };

    auto build_cells = [&]() {
        for (int j = 0; j < 2 * m; ++j) {
            const int lo = j < m ? std::clamp(j - 1, 0, m - 3)
                                 : std::clamp(j - 1, m, 2 * m - 3);
            double xs[4], vs[4];
            for (int k = 0; k < 4; ++k) {
                xs[k] = x_of(lo + k);
                vs[k] = g[lo + k];
            }
            double c[4];
            if (j < m) {
                cubic_coeffs(xs, vs, x_of(j + 1), c);
                coef[j] = {c[0], -c[1], c[2], -c[3]};
            } else {
                cubic_coeffs(xs, vs, x_of(j), c);
                coef[j] = {c[0], c[1], c[2], c[3]};
            }
        }
        suffix[2 * m] = g[nn - 1] * (1.0 - xi) * std::exp(-L);
        for (int j = 2 * m - 1; j >= m; --j)
            suffix[j] = suffix[j + 1] + (1.0 - xi) * std::exp(-x_of(j)) * dot4(coef[j], mh);
        for (int j = m - 1; j >= 0; --j)
            suffix[j] = suffix[j + 1] + xi * std::exp(x_of(j + 1)) * dot4(coef[j], mh);
    };

    // int_y^inf g_cur f, for y = theta z in [-L, L]
    auto eval_from = [&](double y) {
        int j = static_cast<int>(std::floor((y + L) / h));
        j = std::clamp(j, 0, 2 * m - 1);
        const double right = x_of(j + 1);
        double w = std::clamp(right - y, 0.0, h);
        double mm[4];
        exp_moments(w, mm);
        double part;
        if (j < m) {
            part = xi * std::exp(right) * dot4(coef[j], mm);
        } else {
            const double d = y - x_of(j);
            const double c0 = coef[j][0], c1 = coef[j][1], c2 = coef[j][2], c3 = coef[j][3];
            const double s0 = ((c3 * d + c2) * d + c1) * d + c0;
            const double s1 = (3 * c3 * d + 2 * c2) * d + c1;
            const double s2 = 3 * c3 * d + c2;
            part = (1.0 - xi) * std::exp(-y) *
                   (s0 * mm[0] + s1 * mm[1] + s2 * mm[2] + c3 * mm[3]);
        }
        return part + suffix[j + 1];
    };

    for (unsigned k = 2; k <= n; ++k) {
        build_cells();
        std::vector<double> gnew(nn);
        for (int i = 0; i < nn; ++i)
            gnew[i] = std::clamp(eval_from(theta * x_of(i)), 0.0, 1.0);
        g.swap(gnew);
    }
    build_cells();
    return suffix[0] + g[0] * xi * std::exp(-L);
}

}  // namespace detail

// p_n by quadrature, double precision, n <= 6.  |theta| > 1 is folded down by
// duality so the integration range never has to chase theta z outside [-L,L].
inline double p_quadrature(const ModelParams<double>& params, unsigned n, double tol = 1e-8,
                           double* achieved = nullptr) {
    if (n == 0 || n > 6) throw std::invalid_argument("p_quadrature: n must be in 1..6");
    if (tol <= 0) tol = 1e-8;
    ModelParams<double> p =
        (params.theta > 1 || params.theta < -1) ? duality_reduce(params) : params;
    const double L = std::max(30.0, std::log(1.0 / tol) + 8.0);
    int m = static_cast<int>(std::ceil(L / 0.25));
    double prev = detail::quad_level(p.theta, p.xi, n, L, m);
    // accept only after two consecutive halvings both move the result by less
    // than tol/2: a single small step can be an aliasing plateau of the
    // theta-scaled evaluation points, not convergence
    int small_steps = 0;
    for (int level = 0; level < 12; ++level) {
        m *= 2;
        double cur = detail::quad_level(p.theta, p.xi, n, L, m);
        double diff = std::abs(cur - prev);
        small_steps = diff < tol / 2 ? small_steps + 1 : 0;
        if (small_steps >= 2) {
            if (achieved) *achieved = diff + 2.0 * std::exp(-L);
            return cur;
        }
        prev = cur;
    }
    throw std::runtime_error("p_quadrature: tolerance not met");
}

inline PersistenceResult<double> p_quad(const ModelParams<double>& params, unsigned n,
                                        double tol = 1e-8) {
    double err = 0.0;
    double v = p_quadrature(params, n, tol, &err);
    return {n, v, Method::quad, err};
}

}  // namespace qpersist
