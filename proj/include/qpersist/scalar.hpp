#pragma once

// Arithmetic backends: exact big rationals (GMP) and arbitrary-precision
// reals (MPFR), both through boost::multiprecision.  Library code is
// templated on the scalar type; exact and floating scalars never mix
// inside one expression, so there is no silent promotion anywhere.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qpersist {

// et_off: plain value semantics, so results of +,*,sqrt,... deduce cleanly
// in templated code
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;   // dynamic precision

template <class T> struct scalar_traits;
template <> struct scalar_traits<Integer>  { static constexpr bool exact = true; };
template <> struct scalar_traits<Rational> { static constexpr bool exact = true; };
template <> struct scalar_traits<double>   { static constexpr bool exact = false; };
template <> struct scalar_traits<Real>     { static constexpr bool exact = false; };

template <class T>
inline constexpr bool is_exact_v = scalar_traits<T>::exact;

template <class T>
concept ExactScalar = is_exact_v<T>;

template <class T>
concept FloatScalar = !is_exact_v<T>;

// --- precision management (bits; MPFR default precision is set in digits10) ---

inline unsigned precision_bits(const Real& x) {
    return static_cast<unsigned>(mpfr_get_prec(x.backend().data()));
}

template <FloatScalar T> unsigned working_precision_bits();
template <> inline unsigned working_precision_bits<double>() { return 53; }
template <> inline unsigned working_precision_bits<Real>() { return precision_bits(Real(0)); }

// Sets the default Real precision to at least `bits` (>= 53 per contract).
inline void set_default_precision_bits(unsigned bits) {
    if (bits < 53)
        throw std::domain_error("set_default_precision_bits: precision must be >= 53 bits");
    unsigned digits = static_cast<unsigned>(bits * 0.3010299956639812) + 1;
    Real::default_precision(digits);
    while (working_precision_bits<Real>() < bits)
        Real::default_precision(++digits);
}

struct PrecisionGuard {
    unsigned saved_digits10;
    explicit PrecisionGuard(unsigned bits) : saved_digits10(Real::default_precision()) {
        set_default_precision_bits(bits);
    }
    ~PrecisionGuard() { Real::default_precision(saved_digits10); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;
};

// --- small generic helpers ---

template <class T>
T abs_val(const T& x) {
    using std::abs;
    return abs(x);
}

// x^e for integer e >= 0 by repeated squaring; exact for exact scalars.
template <class T>
T pow_int(T base, unsigned long e) {
    T acc(1);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

template <ExactScalar T> bool is_finite_val(const T&) { return true; }
inline bool is_finite_val(double x) { return std::isfinite(x); }
inline bool is_finite_val(const Real& x) { return mpfr_number_p(x.backend().data()) != 0; }

template <FloatScalar T> T pi_value();
template <> inline double pi_value<double>() { return std::numbers::pi; }
template <> inline Real pi_value<Real>() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

template <class T>
double to_double(const T& x) {
    return x.template convert_to<double>();
}
template <> inline double to_double<double>(const double& x) { return x; }

inline Real to_real(const Rational& q) { return Real(q); }

}  // namespace qpersist
