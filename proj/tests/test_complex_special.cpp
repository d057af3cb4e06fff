#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "solprop/complex_special.hpp"
#include "solprop/quadrature.hpp"
#include "support/wref.hpp"

using namespace solprop;
using cplx = std::complex<double>;

namespace {

double rel(const cplx& a, const cplx& b) {
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

cplx random_disc(std::mt19937_64& rng, double radius, bool upper_half) {
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    const double r = radius * std::sqrt(ur(rng));
    const double th = (upper_half ? 1.0 : -1.0) * M_PI * ur(rng);
    return std::polar(r, th);
}

} // namespace

TEST_CASE("faddeeva anchors") {
    CHECK(faddeeva_w({0.0, 0.0}) == cplx(1.0, 0.0));
    // w(i) = e erfc(1), oracle-frozen
    const cplx wi = faddeeva_w({0.0, 1.0});
    CHECK(wi.real() == doctest::Approx(0.42758357615580689).epsilon(1e-13));
    CHECK(std::fabs(wi.imag()) < 1e-16);
    // asymptotic regime: |z| = 20, arg pi/3.  The leading 1/z term alone
    // differs by the next correction 1/(2|z|^2) = 1.25e-3, so test against
    // leading order loosely and against leading + first correction sharply.
    const cplx z = std::polar(20.0, M_PI / 3.0);
    const cplx lead = cplx(0.0, 1.0) / (std::sqrt(M_PI) * z);
    CHECK(rel(faddeeva_w(z), lead) < 2e-3);
    CHECK(rel(faddeeva_w(z), lead * (1.0 + 0.5 / (z * z))) < 1e-5);
}

TEST_CASE("faddeeva vs oracle, upper half |z| <= 30") {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const cplx z = random_disc(rng, 30.0, true);
        worst = std::max(worst, rel(faddeeva_w(z), oracle::w_ref(z)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("faddeeva vs oracle, lower half") {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const cplx z = random_disc(rng, 8.0, false);
        worst = std::max(worst, rel(faddeeva_w(z), oracle::w_ref(z)));
    }
    CHECK(worst < 1e-10);
    // overflow of e^{-z^2} must be a declared error naming the point
    CHECK_THROWS_AS(faddeeva_w({0.0, -30.0}), std::range_error);
}

TEST_CASE("faddeeva conjugation identity is exact") {
    std::mt19937_64 rng(103);
    for (int i = 0; i < 300; ++i) {
        const cplx z = random_disc(rng, 10.0, true);
        const cplx a = faddeeva_w(std::conj(-z));
        const cplx b = std::conj(faddeeva_w(z));
        CHECK(rel(a, b) < 1e-15);
    }
}

TEST_CASE("erf anchors and oddness") {
    CHECK(erf_complex({0.0, 0.0}) == cplx(0.0, 0.0));
    CHECK(erf_complex({1.0, 0.0}).real() == doctest::Approx(0.84270079294971489).epsilon(1e-12));
    std::mt19937_64 rng(104);
    for (int i = 0; i < 100; ++i) {
        const cplx z = random_disc(rng, 5.0, (i % 2 == 0));
        CHECK(rel(erf_complex(-z), -erf_complex(z)) < 1e-12);
        CHECK(rel(erf_complex(std::conj(z)), std::conj(erf_complex(z))) < 1e-14);
    }
}

TEST_CASE("erf vs oracle up to |z| = 15") {
    std::mt19937_64 rng(105);
    double worst = 0.0;
    for (int i = 0; i < 3000; ++i) {
        const cplx z = random_disc(rng, 15.0, (i % 2 == 0));
        worst = std::max(worst, rel(erf_complex(z), oracle::erf_ref(z)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("erfc_scaled") {
    CHECK(erfc_scaled({0.0, 0.0}) == cplx(1.0, 0.0));
    CHECK(erfc_scaled({2.0, 0.0}).real() == doctest::Approx(0.25539567631050569).epsilon(1e-13));
    // defining identity erfcx(x) e^{-x^2} = erfc(x)
    for (double x : {0.5, 1.0, 3.0}) {
        const cplx lhs = erfc_scaled({x, 0.0}) * std::exp(-x * x);
        CHECK(rel(lhs, oracle::erfc_ref({x, 0.0})) < 1e-13);
    }
    // identity against erf across the plane wherever e^{-z^2} is
    // representable; the deviation is normalized by max(1, |values|) since
    // the identity's scale swings over e^{+-16} on this disc
    std::mt19937_64 rng(106);
    for (int i = 0; i < 300; ++i) {
        const cplx z = random_disc(rng, 4.0, (i % 2 == 0));
        const cplx lhs = erfc_scaled(z) * std::exp(-(z * z));
        const cplx rhs = 1.0 - erf_complex(z);
        const double err = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
        CHECK(err < 1e-10);
    }
    // no overflow for huge arguments in the right half-plane
    const cplx big = erfc_scaled({1e8, 3.0});
    CHECK(std::isfinite(big.real()));
    CHECK(rel(big, 1.0 / (std::sqrt(M_PI) * cplx(1e8, 3.0))) < 1e-6);
    // left half-plane may overflow, declared
    CHECK_THROWS_AS(erfc_scaled({-40.0, 0.0}), std::range_error);
}

TEST_CASE("erfc_scaled_arg matches erfc_scaled and survives huge exponents") {
    std::mt19937_64 rng(107);
    for (int i = 0; i < 300; ++i) {
        const cplx z = random_disc(rng, 6.0, (i % 2 == 0));
        const cplx a = erfc_scaled_arg(z, z * z).to_complex();
        CHECK(rel(a, erfc_scaled(z)) < 1e-13);
    }
    // Re z < 0 with e^{z^2} far beyond double range stays representable in scaled form
    const cplx z(-40.0, 1.0);
    const ScaledComplex s = erfc_scaled_arg(z, z * z);
    CHECK(s.exponent() > 2000); // |e^{z^2}| ~ e^1599
}

TEST_CASE("integral_I against adaptive quadrature") {
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> ua(0.3, 2.2), ux(-2.0, 2.0);
    // spec anchor I(1,0) = pi e^2 erfc(sqrt 2)
    CHECK(integral_I({1.0, 0.0}, {0.0, 0.0}).real() ==
          doctest::Approx(1.0562160241929075).epsilon(1e-12));
    for (int i = 0; i < 25; ++i) {
        const double a = ua(rng), x = ux(rng);
        const double window = 12.0 + 4.0 * std::fabs(x);
        auto f = [&](double p) { return std::exp(-2 * p * p + 4 * p * x) / (p * p + a * a); };
        auto q = quad::integrate(f, -window, window, 1e-13, 1e-12);
        CHECK(rel(integral_I({a, 0.0}, {x, 0.0}), q.value) < 1e-9);
    }
    // named example pair
    {
        auto f = [&](double p) { return std::exp(-2 * p * p + 4 * p * 0.7) / (p * p + 1.3 * 1.3); };
        auto q = quad::integrate(f, -14.8, 14.8, 1e-13, 1e-12);
        CHECK(rel(integral_I({1.3, 0.0}, {0.7, 0.0}), q.value) < 1e-9);
    }
    // evenness in x (substitution p -> -p)
    CHECK(rel(integral_I({1.3, 0.0}, {0.7, 0.0}), integral_I({1.3, 0.0}, {-0.7, 0.0})) < 1e-14);
    // analytic continuation: complex a and x against complex-valued quadrature
    {
        const cplx a(0.86, 0.26), x(0.4, 0.2);
        auto f = [&](double p) { return std::exp(-2.0 * p * p + 4.0 * p * x) / (p * p + a * a); };
        auto q = quad::integrate(f, -14.0, 14.0, 1e-13, 1e-12);
        CHECK(rel(integral_I(a, x), q.value) < 1e-9);
    }
    CHECK_THROWS_AS(integral_I({0.0, 0.0}, {0.5, 0.0}), std::domain_error);
}

TEST_CASE("cauchy_gaussian against adaptive quadrature") {
    // spec anchor: -i pi e^2 erfc(sqrt 2)
    const cplx cg0 = cauchy_gaussian({1.0, 0.0}, {0.0, 0.0});
    CHECK(std::fabs(cg0.real()) < 1e-14);
    CHECK(cg0.imag() == doctest::Approx(-1.0562160241929075).epsilon(1e-12));
    std::mt19937_64 rng(109);
    std::uniform_real_distribution<double> ua(0.3, 2.2), ux(-2.0, 2.0);
    for (int i = 0; i < 25; ++i) {
        const double al = ua(rng), x = ux(rng);
        const double window = 12.0 + 4.0 * std::fabs(x);
        auto f = [&](double p) { return std::exp(-2 * p * p + 4 * p * x) / cplx(p, al); };
        auto q = quad::integrate(f, -window, window, 1e-13, 1e-12);
        CHECK(rel(cauchy_gaussian({al, 0.0}, {x, 0.0}), q.value) < 1e-9);
    }
    // (alpha, x) = (2, 1) named example
    {
        auto f = [&](double p) { return std::exp(-2 * p * p + 4 * p) / cplx(p, 2.0); };
        auto q = quad::integrate(f, -16.0, 16.0, 1e-13, 1e-12);
        CHECK(rel(cauchy_gaussian({2.0, 0.0}, {1.0, 0.0}), q.value) < 1e-9);
    }
    // complex arguments against quadrature (pole held off the contour)
    {
        const cplx al(0.7, 0.3), x(0.2, -0.1);
        auto f = [&](double p) { return std::exp(-2.0 * p * p + 4.0 * p * x) / (p + cplx(0.0, 1.0) * al); };
        auto q = quad::integrate(f, -14.0, 14.0, 1e-13, 1e-12);
        CHECK(rel(cauchy_gaussian(al, x), q.value) < 1e-9);
    }
}

TEST_CASE("partial fractions tie cauchy_gaussian to integral_I") {
    // The closed form equals the integral only for Re alpha > 0; continuing to
    // -alpha crosses the pole and picks up the residue 2 pi i e^{2a(a+2ix)}.
    const cplx i(0.0, 1.0);
    for (double alv : {0.8, 1.4}) {
        const cplx al(alv, 0.0), x(0.3, 0.0);
        const cplx combo = (cauchy_gaussian(-al, x) - cauchy_gaussian(al, x)) / (2.0 * i * al);
        const cplx residue = M_PI / al * std::exp(2.0 * al * (al + 2.0 * i * x));
        CHECK(rel(integral_I(al, x), combo + residue) < 1e-12);
    }
}
