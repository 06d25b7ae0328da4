#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qpersist/qspecial.hpp"
#include "qpersist/scalar.hpp"

using namespace qpersist;

TEST_CASE("q_integer and q_factorial") {
    CHECK(q_integer(5, Rational(1, 2)) == Rational(31, 16));
    CHECK(q_integer(1, Rational(7)) == 1);
    CHECK(q_integer(0, Rational(3)) == 0);
    CHECK(q_factorial(4, Rational(1, 2)) == Rational(315, 64));

    // q = 1 gives the classical factorial, q = 0 collapses to 1
    CHECK(q_factorial(6, Rational(1)) == 720);
    CHECK(q_factorial(9, Rational(0)) == 1);

    double v = q_factorial(4, 0.5);
    CHECK(v == Catch::Approx(315.0 / 64.0));
}

TEST_CASE("q_pochhammer finite products") {
    Rational a(1, 3), q(1, 2);
    CHECK(q_pochhammer(a, q, 0) == 1);
    CHECK(q_pochhammer(a, q, 3) ==
          (1 - a) * (1 - a * q) * (1 - a * q * q));
    CHECK(q_pochhammer(Rational(-3, 7), Rational(1, 2), 3) == Rational(2635, 1372));
}

TEST_CASE("q_pochhammer_inf") {
    double a = 0.4, q = 0.5;
    double full = q_pochhammer_inf(a, q);
    double shifted = q_pochhammer_inf(a * q, q);
    CHECK(full == Catch::Approx((1 - a) * shifted).epsilon(1e-13));
    CHECK(q_pochhammer_inf(0.0, q) == 1.0);
    CHECK_THROWS_AS(q_pochhammer_inf(0.3, 1.0), std::domain_error);
    CHECK_THROWS_AS(q_pochhammer_inf(0.3, -0.1), std::domain_error);
}

TEST_CASE("e_q series equals product form") {
    double z = 0.3, q = 0.5;
    CHECK(e_q(z, q) == Catch::Approx(e_q_product(z, q)).epsilon(1e-13));
    CHECK(e_q(-1.2, 0.7) == Catch::Approx(e_q_product(-1.2, 0.7)).epsilon(1e-13));

    // classical and degenerate limits
    CHECK(e_q(0.4, 1.0) == Catch::Approx(std::exp(0.4)));
    CHECK(e_q(0.5, 0.0) == Catch::Approx(2.0));

    // radius of convergence |z| < 1/(1-q)
    CHECK_THROWS_AS(e_q(2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(e_q(2.6, 0.6), std::domain_error);
    CHECK_NOTHROW(e_q(1.9, 0.5));
}

TEST_CASE("big_e_q is the reciprocal of e_q at -z") {
    double z = 0.7, q = 0.6;
    CHECK(big_e_q(z, q) * e_q(-z, q) == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(big_e_q(-0.4, 0.3) * e_q(0.4, 0.3) == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(big_e_q(0.5, 0.0) == 1.5);
    CHECK(big_e_q(0.5, 1.0) == Catch::Approx(std::exp(0.5)));
}

TEST_CASE("q-trig classical limits") {
    CHECK(sin_q(0.8, 1.0) == Catch::Approx(std::sin(0.8)));
    CHECK(cos_q(0.8, 1.0) == Catch::Approx(std::cos(0.8)));
    CHECK(tan_q(0.8, 1.0) == Catch::Approx(std::tan(0.8)));
    CHECK(sin_q(0.5, 0.0) == Catch::Approx(0.5 / 1.25));
    CHECK(cos_q(0.5, 0.0) == Catch::Approx(1.0 / 1.25));
    CHECK(tan_q(0.5, 0.0) == 0.5);
}

TEST_CASE("tan_q equals sin_q / cos_q inside the series radius") {
    double z = 0.5, q = 0.6;
    CHECK(tan_q(z, q) == Catch::Approx(sin_q(z, q) / cos_q(z, q)).epsilon(1e-12));
    CHECK(tan_q(-z, q) == Catch::Approx(-tan_q(z, q)).epsilon(1e-13));
    CHECK(tan_q(0.0, 0.3) == 0.0);
}

TEST_CASE("arctan_q inverts tan_q on the principal branch") {
    for (double q : {0.2, 0.5, 0.8}) {
        for (double x : {0.1, 0.4, 0.9}) {
            double y = tan_q(x, q);
            CHECK(arctan_q(y, q) == Catch::Approx(x).epsilon(1e-10));
        }
    }
    CHECK(arctan_q(0.0, 0.5) == 0.0);
    CHECK(arctan_q(-1.3, 0.5) == Catch::Approx(-arctan_q(1.3, 0.5)));
    CHECK(arctan_q(0.7, 0.0) == 0.7);
    CHECK(arctan_q(0.7, 1.0) == Catch::Approx(std::atan(0.7)));
}

TEST_CASE("arctan_q is increasing in y") {
    double q = 0.6;
    double a = arctan_q(0.5, q), b = arctan_q(1.0, q), c = arctan_q(2.0, q);
    CHECK(a < b);
    CHECK(b < c);
}

TEST_CASE("q_pi_over_4") {
    CHECK(q_pi_over_4(1.0) == Catch::Approx(std::atan(1.0)));
    for (double q : {0.3, 0.7}) {
        double z = q_pi_over_4(q);
        CHECK(tan_q(z, q) == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("q special functions at extended precision") {
    PrecisionGuard guard(256);
    Real q("0.6"), z("0.7");
    Real prod = big_e_q(z, q) * e_q(-z, q);
    CHECK(abs_val(prod - Real(1)) < Real("1e-70"));

    // agree with the double evaluation to double accuracy
    double zd = to_double(q_pi_over_4(Real("0.35")));
    CHECK(zd == Catch::Approx(q_pi_over_4(0.35)).epsilon(1e-12));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(e_q(0.5, -0.2), std::domain_error);
    CHECK_THROWS_AS(sin_q(4.0, 0.7), std::domain_error);   // |z|(1-q) >= 1
    CHECK_THROWS_AS(cos_q(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(tan_q(0.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(arctan_q(0.5, -1.0), std::domain_error);
}
