#pragma once

// Truncated formal power series over an arbitrary coefficient field.
// A series of order N carries coefficients c_0..c_N; binary operations
// truncate to the smaller order of the two operands.

#include <stdexcept>
#include <utility>
#include <vector>

namespace qpersist {

template <class F>
class PowerSeries {
    std::vector<F> c_;   // size = order + 1, never empty

public:
    explicit PowerSeries(int order) : c_(static_cast<size_t>(order) + 1, F(0)) {
        if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
    }
    explicit PowerSeries(std::vector<F> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("PowerSeries: empty coefficient vector");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const F& coeff(int k) const {
        if (k < 0 || k > order()) throw std::out_of_range("PowerSeries::coeff");
        return c_[k];
    }
    void set_coeff(int k, const F& v) {
        if (k < 0 || k > order()) throw std::out_of_range("PowerSeries::set_coeff");
        c_[k] = v;
    }
    const std::vector<F>& coeffs() const { return c_; }

    PowerSeries truncated(int new_order) const {
        if (new_order > order()) throw std::invalid_argument("PowerSeries::truncated: order too large");
        return PowerSeries(std::vector<F>(c_.begin(), c_.begin() + new_order + 1));
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    PowerSeries operator-() const {
        PowerSeries r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (int i = 0; i <= n; ++i) {
            if (a.c_[i] == F(0)) continue;
            for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    // Long division; requires an invertible constant term in the divisor.
    friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
        if (b.c_[0] == F(0))
            throw std::domain_error("PowerSeries: division by series with zero constant term");
        int n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (int k = 0; k <= n; ++k) {
            F acc = a.c_[k];
            for (int j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
            r.c_[k] = acc / b.c_[0];
        }
        return r;
    }

    PowerSeries& scale(const F& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const PowerSeries& a, const PowerSeries& b) { return !(a == b); }
};

}  // namespace qpersist
