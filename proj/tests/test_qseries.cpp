#include <catch2/catch_amalgamated.hpp>

#include "qpersist/genfunc.hpp"
#include "qpersist/persistence.hpp"
#include "qpersist/power_series.hpp"
#include "qpersist/qpolynomial.hpp"
#include "qpersist/zigzag.hpp"

using namespace qpersist;

namespace {

PowerSeries<Rational> exp_series(int order) {
    PowerSeries<Rational> s(order);
    Rational f(1);
    for (int n = 0; n <= order; ++n) {
        if (n > 0) f *= n;
        s.set_coeff(n, Rational(1) / f);
    }
    return s;
}

std::vector<Integer> coeffs_of(const QPolynomial& p) { return p.integer_coeff_vector(); }

}  // namespace

TEST_CASE("power series arithmetic") {
    auto e = exp_series(4);
    auto sq = e * e;   // exp(2z)
    CHECK(sq.coeff(0) == 1);
    CHECK(sq.coeff(1) == 2);
    CHECK(sq.coeff(2) == 2);
    CHECK(sq.coeff(3) == Rational(4, 3));
    CHECK(sq.coeff(4) == Rational(2, 3));

    auto back = sq / e;
    for (int k = 0; k <= 4; ++k) CHECK(back.coeff(k) == e.coeff(k));

    // binary ops truncate to the smaller order
    PowerSeries<Rational> small(2);
    CHECK((e + small).order() == 2);
    CHECK((e - small).order() == 2);
    CHECK((e * small).order() == 2);
}

TEST_CASE("power series division recovers the tangent coefficients") {
    const int order = 5;
    PowerSeries<Rational> sin_s(order), cos_s(order);
    Rational f(1);
    for (int m = 0; m <= order; ++m) {
        if (m > 0) f *= m;
        Rational c = Rational((m / 2) % 2 ? -1 : 1) / f;
        if (m % 2 == 1) sin_s.set_coeff(m, c);
        else cos_s.set_coeff(m, c);
    }
    auto tan_s = sin_s / cos_s;
    CHECK(tan_s.coeff(0) == 0);
    CHECK(tan_s.coeff(1) == 1);
    CHECK(tan_s.coeff(2) == 0);
    CHECK(tan_s.coeff(3) == Rational(1, 3));
    CHECK(tan_s.coeff(4) == 0);
    CHECK(tan_s.coeff(5) == Rational(2, 15));

    PowerSeries<Rational> no_unit(3);   // zero constant term
    CHECK_THROWS(sin_s / no_unit);
}

TEST_CASE("zigzag numbers") {
    auto e = zigzag_numbers(12);
    std::vector<long> expect = {1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765};
    REQUIRE(e.size() == 12);
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(e[i] == expect[i]);

    CHECK(zigzag_numbers(1) == std::vector<Integer>{Integer(1)});
    CHECK_THROWS_AS(zigzag_numbers(0), std::invalid_argument);
}

TEST_CASE("q-zigzag polynomials") {
    auto polys = q_zigzag(5);
    REQUIRE(polys.size() == 5);
    CHECK(coeffs_of(polys[0]) == std::vector<Integer>{1});
    CHECK(coeffs_of(polys[1]) == std::vector<Integer>{1});
    CHECK(coeffs_of(polys[2]) == std::vector<Integer>{0, 1, 1});
    CHECK(coeffs_of(polys[3]) == std::vector<Integer>{0, 0, 1, 1, 2, 1});
    CHECK(coeffs_of(polys[4]) == std::vector<Integer>{0, 0, 1, 2, 3, 4, 3, 2, 1});

    // E_5(q) = q^2 (1 + q + q^2 + q^3)^2
    QPolynomial quartet;
    for (int d = 0; d <= 3; ++d) quartet = quartet + QPolynomial::monomial(d);
    CHECK(coeffs_of(QPolynomial::monomial(2) * quartet.pow(2)) == coeffs_of(polys[4]));

    CHECK_THROWS_AS(q_zigzag(0), std::invalid_argument);
}

TEST_CASE("q-zigzag reduces to the classical numbers at q = 1") {
    auto polys = q_zigzag(9);
    auto nums = zigzag_numbers(9);
    for (unsigned n = 0; n < 9; ++n)
        CHECK(polys[n].eval(Rational(1)) == Rational(nums[n]));
}

TEST_CASE("odd q-zigzag polynomials are palindromic") {
    auto polys = q_zigzag(9);
    for (unsigned n : {3u, 5u, 7u, 9u}) {
        const QPolynomial& p = polys[n - 1];
        auto cs = p.integer_coeff_vector();
        int low = 0;
        while (cs[low] == 0) ++low;
        CHECK(p == p.reversed(p.degree() + low));
    }
}

TEST_CASE("q-integer and q-binomial polynomials") {
    CHECK(q_int_poly(4).eval(Rational(1)) == 4);
    CHECK(coeffs_of(q_int_poly(3)) == std::vector<Integer>{1, 1, 1});
    CHECK(q_factorial_poly(4).eval(Rational(1)) == 24);
    CHECK(q_factorial_poly(4).degree() == 6);
    CHECK(coeffs_of(q_binomial_poly(4, 2)) == std::vector<Integer>{1, 1, 2, 1, 1});
    CHECK(q_binomial_poly(5, 2).eval(Rational(1)) == 10);
}

TEST_CASE("generating function for positive theta matches the closed form") {
    ModelParams<Rational> params(Rational(1, 2), Rational(3, 10));
    auto gf = gf_theta_pos(params, 5);
    auto direct = p_closed_seq(params, 5);
    CHECK(gf.coeff(0) == 0);
    CHECK(gf.coeff(1) == Rational(17, 30));
    for (unsigned n = 1; n <= 5; ++n) CHECK(gf.coeff(n) == direct[n - 1].value);

    CHECK_THROWS_AS(gf_theta_pos(ModelParams<Rational>(Rational(-1, 2), Rational(1, 2)), 3),
                    std::domain_error);
}

TEST_CASE("generating function for negative theta matches the recursion") {
    ModelParams<Rational> params(Rational(-1, 2), Rational(1, 2));
    auto gf = gf_theta_neg(params, 6);
    auto rec = p_recursion_neg(params, 6);
    CHECK(gf.coeff(0) == 0);
    for (unsigned n = 1; n <= 6; ++n) CHECK(gf.coeff(n) == rec[n - 1].value);

    CHECK_THROWS_AS(gf_theta_neg(ModelParams<Rational>(Rational(1, 2), Rational(1, 2)), 3),
                    std::domain_error);
    CHECK_THROWS_AS(gf_theta_neg(ModelParams<Rational>(Rational(-1, 2), Rational(0)), 3),
                    std::domain_error);
    CHECK_THROWS_AS(gf_theta_neg(ModelParams<Rational>(Rational(-1, 2), Rational(1)), 3),
                    std::domain_error);
}

TEST_CASE("tangent-power composition") {
    auto b = b_n_composition(Rational(1), Rational(1), 3);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == 1);           // b_1 = [z] tan z
    CHECK(b[1] == 1);           // b_2 = [z^2] tan^2 z
    CHECK(b[2] == Rational(4, 3));

    auto b2 = b_n_composition(Rational(1, 2), Rational(2), 3);
    CHECK(b2[2] == Rational(30, 7));

    CHECK_THROWS_AS(b_n_composition(Rational(1), Rational(1), 0), std::invalid_argument);
}
