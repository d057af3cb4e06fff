#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "solprop/quadrature.hpp"
#include "solprop/soliton_core.hpp"

using namespace solprop;
using cplx = std::complex<double>;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }

// Long-double cofactor determinant of the Wronskian matrix; independent
// high-precision oracle for moderate x.
long double ld_mode_deriv(const Mode& m, int order, long double x) {
    const long double arg = static_cast<long double>(m.a) * x + m.b;
    const bool base_even = (m.parity == Parity::even);
    const bool use_cosh = base_even == (order % 2 == 0);
    long double v = use_cosh ? std::cosh(arg) : std::sinh(arg);
    for (int i = 0; i < order; ++i) v *= m.a;
    return v;
}

long double ld_det(std::vector<long double>& m, int n) {
    long double det = 1.0L;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(static_cast<double>(m[r * n + c])) > std::fabs(static_cast<double>(m[piv * n + c]))) piv = r;
        if (m[piv * n + c] == 0.0L) return 0.0L;
        if (piv != c) {
            for (int k = 0; k < n; ++k) std::swap(m[piv * n + k], m[c * n + k]);
            det = -det;
        }
        for (int r = c + 1; r < n; ++r) {
            const long double f = m[r * n + c] / m[c * n + c];
            for (int k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
        }
        det *= m[c * n + c];
    }
    return det;
}

long double ld_wronskian_modes(const std::vector<Mode>& modes, long double x) {
    const int n = static_cast<int>(modes.size());
    std::vector<long double> m(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i * n + j] = ld_mode_deriv(modes[j], i, x);
    return ld_det(m, n);
}

long double ld_wronskian(const SolitonParams& p, long double x) {
    return ld_wronskian_modes(p.modes(), x);
}

// Richardson-extrapolated second derivative (5-point base).
double fd2(const std::function<double(double)>& f, double x, double h) {
    auto d2 = [&](double hh) {
        return (-f(x + 2 * hh) + 16 * f(x + hh) - 30 * f(x) + 16 * f(x - hh) - f(x - 2 * hh)) / (12 * hh * hh);
    };
    return (16 * d2(h / 2) - d2(h)) / 15.0;
}

const SolitonParams P1 = SolitonParams::reflectionless({{1.0, 0.0}});
const SolitonParams P2 = SolitonParams::reflectionless({{1.0, 0.0}, {2.0, 0.0}});
const SolitonParams P3 = SolitonParams::reflectionless({{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}});
const SolitonParams P4 = SolitonParams::reflectionless({{0.5, 0.0}, {1.0, 0.0}, {1.5, 0.0}, {2.0, 0.0}});

} // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(SolitonParams{});
    CHECK_THROWS_AS(SolitonParams::reflectionless({{1.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SolitonParams::reflectionless({{2.0, 0.0}, {1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(SolitonParams::reflectionless({{-1.0, 0.0}}), std::invalid_argument);
    // parity must alternate starting with cosh
    CHECK_THROWS_AS(SolitonParams({{1.0, 0.0, Parity::odd}}), std::invalid_argument);
    CHECK_THROWS_AS(SolitonParams({{1.0, 0.0, Parity::even}, {2.0, 0.0, Parity::even}}), std::invalid_argument);
    CHECK(SpectralPoint::bound(P2, 2).E == doctest::Approx(-4.0));
    CHECK(SpectralPoint::continuum(1.5).E == doctest::Approx(2.25));
}

TEST_CASE("mode derivatives") {
    CHECK(mode_derivative(P1, 1, 0, 0.0).to_double() == 1.0);
    auto p = SolitonParams::reflectionless({{1.0, 0.0}, {2.0, 0.0}});
    CHECK(mode_derivative(p, 2, 1, 0.0).to_double() == 2.0); // d/dx sinh(2x) at 0
    auto pb = SolitonParams::reflectionless({{3.0, 0.5}});
    CHECK(rel(mode_derivative(pb, 1, 4, 0.2).to_double(), 135.15000285960278) < 1e-14); // 81 cosh(1.1)
    CHECK_THROWS_AS(mode_derivative(P1, 2, 0, 0.0), std::out_of_range);
}

TEST_CASE("wronskian values") {
    CHECK(wronskian(SolitonParams{}, 1.3).to_double() == 1.0); // empty determinant
    CHECK(rel(wronskian(P1, 0.7).to_double(), std::cosh(0.7)) < 1e-15);
    CHECK(wronskian(P2, 0.0).to_double() == doctest::Approx(2.0).epsilon(1e-15));
    // high-precision determinant oracle
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> ux(-10.0, 10.0);
    for (const auto& p : {P2, P3, P4}) {
        for (int i = 0; i < 40; ++i) {
            const double x = ux(rng);
            const long double ref = ld_wronskian(p, x);
            CHECK(rel(wronskian(p, x).to_double(), static_cast<double>(ref)) < 1e-12);
        }
    }
}

TEST_CASE("wronskian positivity across the working window") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> ua(0.1, 1.0), ub(-2.0, 2.0);
    for (int cfg = 0; cfg < 20; ++cfg) {
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<std::pair<double, double>> ab;
        double a = 0.0;
        for (int j = 0; j < n; ++j) {
            a += ua(rng);
            ab.emplace_back(a, ub(rng));
        }
        SolitonParams p = SolitonParams::reflectionless(ab);
        const double window = 50.0 / p.mode(1).a;
        for (int i = 0; i <= 200; ++i) {
            const double x = -window + 2 * window * i / 200.0;
            CHECK(wronskian(p, x).sign() > 0);
        }
    }
}

TEST_CASE("reduced wronskian") {
    CHECK(reduced_wronskian(P1, 1, 2.9).to_double() == 1.0);
    CHECK(rel(reduced_wronskian(P2, 1, 0.6).to_double(), std::sinh(1.2)) < 1e-15);
    CHECK(rel(reduced_wronskian(P2, 2, 0.6).to_double(), std::cosh(0.6)) < 1e-15);
    // N=3 drop-middle against the long-double oracle; the surviving modes
    // keep their original parities (cosh, cosh)
    const std::vector<Mode> kept = {P3.modes()[0], P3.modes()[2]};
    CHECK(rel(reduced_wronskian(P3, 2, 0.4).to_double(),
              static_cast<double>(ld_wronskian_modes(kept, 0.4))) < 1e-13);
    CHECK_THROWS_AS(reduced_wronskian(P2, 3, 0.0), std::out_of_range);
}

TEST_CASE("potential anchors") {
    for (double a : {0.5, 1.0, 2.0}) {
        auto p = SolitonParams::reflectionless({{a, 0.0}});
        CHECK(rel(potential(p, 0.0), -2.0 * a * a) < 1e-14);
        // sech^2 shape
        CHECK(rel(potential(p, 0.8), -2.0 * a * a / std::pow(std::cosh(a * 0.8), 2)) < 1e-12);
    }
    CHECK(potential(SolitonParams{}, 3.0) == 0.0);
    // decay at the window edge
    CHECK(std::fabs(potential(P2, 50.0)) < 1e-10);
    CHECK(std::fabs(potential(P4, -100.0)) < 1e-10);
}

TEST_CASE("potential agrees with finite differences of -2 log W") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ux(-4.0, 4.0);
    for (const auto& p : {P1, P2, P3, P4}) {
        for (int i = 0; i < 10; ++i) {
            const double x = ux(rng);
            auto logw = [&](double xx) { return wronskian(p, xx).log_abs(); };
            CHECK(std::fabs(potential(p, x) - (-2.0 * fd2(logw, x, 1e-2))) < 1e-8);
        }
        // far out, where W alone overflows double
        const double xfar = 60.0 / p.mode(1).a;
        auto logw = [&](double xx) { return wronskian(p, xx).log_abs(); };
        CHECK(std::fabs(potential(p, xfar) - (-2.0 * fd2(logw, xfar, 1e-2))) < 1e-8);
    }
}

TEST_CASE("scale covariance") {
    // draws stay where V is O(1): in the exponential tail both sides are
    // dominated by the cancellation floor of the second log-derivative
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> ul(0.5, 2.0), ux(-1.2, 1.2);
    const std::vector<std::pair<double, double>> ab = {{0.7, 0.3}, {1.4, -0.8}, {2.1, 0.1}};
    SolitonParams p = SolitonParams::reflectionless(ab);
    for (int i = 0; i < 20; ++i) {
        const double lam = ul(rng), x = ux(rng);
        std::vector<std::pair<double, double>> scaled = ab;
        for (auto& m : scaled) m.first *= lam;
        SolitonParams ps = SolitonParams::reflectionless(scaled);
        CHECK(rel(potential(ps, x), lam * lam * potential(p, lam * x)) < 1e-10);
    }
}

TEST_CASE("bound states") {
    CHECK(rel(bound_state(P1, 1, 0.0), 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(rel(bound_state(P1, 1, 1.3), (1.0 / std::sqrt(2.0)) / std::cosh(1.3)) < 1e-13);
    CHECK(bound_energy(P2, 1) == doctest::Approx(-1.0));
    CHECK(bound_energy(P2, 2) == doctest::Approx(-4.0));
    // unit norms
    for (int n = 1; n <= 2; ++n) CHECK(std::fabs(bound_state_norm(P2, n) - 1.0) < 1e-8);
    // Gram matrix of the N=4 family
    const double window = 40.0 / P4.mode(1).a;
    for (int i = 1; i <= 4; ++i) {
        for (int j = i; j <= 4; ++j) {
            auto f = [&](double x) { return bound_state(P4, i, x) * bound_state(P4, j, x); };
            auto q = quad::integrate(f, -window, window, 1e-12, 1e-11);
            const double target = (i == j) ? 1.0 : 0.0;
            CHECK(std::fabs(q.value.real() - target) < 1e-8);
        }
    }
}

TEST_CASE("bound state eigen-residuals") {
    for (const auto& p : {P1, P2, P3}) {
        for (int n = 1; n <= p.size(); ++n) {
            const double e = bound_energy(p, n);
            for (double x : {-1.0, 0.0, 2.0}) {
                auto f = [&](double xx) { return bound_state(p, n, xx); };
                const double resid = -fd2(f, x, 1e-3) + (potential(p, x) - e) * bound_state(p, n, x);
                CHECK(std::fabs(resid) < 1e-6);
            }
        }
    }
}

TEST_CASE("darboux_apply") {
    // N=0 is the identity
    const cplx f0(0.3, -0.2);
    CHECK(darboux_apply({SolitonParams{}}, std::vector<cplx>{f0}, 1.0) == f0);
    // f = u_1 collapses the determinant
    {
        const double x = 0.9;
        std::vector<cplx> derivs = {std::cosh(x), std::sinh(x)};
        CHECK(std::abs(darboux_apply({P1}, derivs, x)) < 1e-14);
    }
    // N=1, f = e^x: W(cosh x, e^x)/cosh x = e^x (1 - tanh x)
    {
        const double x = 0.7;
        std::vector<cplx> derivs = {std::exp(x), std::exp(x)};
        const cplx got = darboux_apply({P1}, derivs, x);
        CHECK(rel(got.real(), std::exp(x) * (1.0 - std::tanh(x))) < 1e-13);
        CHECK(std::fabs(got.imag()) == 0.0);
    }
    CHECK_THROWS_AS(darboux_apply({P1}, std::vector<cplx>{f0}, 0.0), std::invalid_argument);
}

TEST_CASE("continuum states") {
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);
    // N=0 plane wave
    {
        const cplx pw = continuum_state(SolitonParams{}, 0.9, 1.2);
        CHECK(std::abs(pw - std::exp(cplx(0.0, -0.9 * 1.2)) * inv_sqrt_2pi) < 1e-15);
    }
    // reflectionless transmission
    for (double x : {30.0, -30.0}) {
        CHECK(std::fabs(std::abs(continuum_state(P2, 1.7, x)) - inv_sqrt_2pi) < 1e-8);
        CHECK(std::fabs(std::abs(continuum_state(P4, 1.1, x * 2.0)) - inv_sqrt_2pi) < 1e-8);
    }
    // k = 0 allowed
    CHECK(std::isfinite(continuum_state(P2, 0.0, 0.3).real()));
    // stationary-equation residual
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> ux(-2.0, 2.0), uk(-2.5, 2.5);
    for (const auto& p : {P1, P2, P3}) {
        for (int i = 0; i < 5; ++i) {
            const double k = uk(rng), x = ux(rng);
            auto fre = [&](double xx) { return continuum_state(p, k, xx).real(); };
            auto fim = [&](double xx) { return continuum_state(p, k, xx).imag(); };
            const cplx dd(fd2(fre, x, 1e-3), fd2(fim, x, 1e-3));
            const cplx resid = -dd + (potential(p, x) - k * k) * continuum_state(p, k, x);
            CHECK(std::abs(resid) < 1e-6);
        }
    }
}
