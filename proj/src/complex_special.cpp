#include "solprop/complex_special.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace solprop {

namespace {

using cplx = std::complex<double>;

constexpr double SQRT_PI = 1.7724538509055160273;
constexpr double INV_SQRT_PI = 0.56418958354775628695;
constexpr double TWO_OVER_SQRT_PI = 1.1283791670955125739;

std::string format_z(const cplx& z) {
    std::ostringstream os;
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

void require_finite(const cplx& z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument(std::string(who) + ": non-finite argument");
}

void check_result(const cplx& z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::range_error(std::string(who) + ": result not representable");
}

// exp(w) in double, throwing instead of returning inf.
cplx cexp_checked(const cplx& w, const char* who) {
    if (w.real() > 709.0)
        throw std::range_error(std::string(who) + ": exponential overflow at exponent " + format_z(w));
    return std::exp(w);
}

// ---------------------------------------------------------------------------
// Weideman rational approximation of w(z) on the closed upper half-plane.
// Coefficients are built once from the trapezoidal Fourier expansion of
// exp(-t^2)(L^2+t^2) under the Mobius map t = L tan(theta/2).
// ---------------------------------------------------------------------------

constexpr int WEIDEMAN_N = 64;

struct WeidemanTable {
    double L = 0.0;
    std::array<double, WEIDEMAN_N> a{}; // a[0] multiplies Z^{N-1}
};

WeidemanTable build_weideman() {
    WeidemanTable tbl;
    const int N = WEIDEMAN_N;
    const int M = 2 * N;
    const int M2 = 4 * N;
    tbl.L = std::sqrt(static_cast<double>(N) / std::sqrt(2.0));

    // Sample f(theta_k) = exp(-t^2)(L^2+t^2), t = L tan(theta/2),
    // theta_k = k pi / M for k = -M+1 .. M-1, preceded by one zero sample
    // (the point at theta = +-pi where f vanishes).
    std::vector<long double> f(M2, 0.0L);
    const long double Ll = static_cast<long double>(tbl.L);
    for (int k = -M + 1; k <= M - 1; ++k) {
        long double theta = static_cast<long double>(k) * static_cast<long double>(M_PI) / M;
        long double t = Ll * std::tan(theta / 2.0L);
        long double val = std::exp(-t * t) * (Ll * Ll + t * t);
        int idx = 1 + (k + M - 1); // slot 0 holds the zero sample
        f[idx] = val;
    }
    // fftshift for even length: index i -> (i + M2/2) mod M2.
    std::vector<long double> fs(M2);
    for (int i = 0; i < M2; ++i) fs[(i + M2 / 2) % M2] = f[i];
    // Real part of the DFT, naive evaluation (done once).
    for (int n = 1; n <= N; ++n) {
        long double acc = 0.0L;
        for (int j = 0; j < M2; ++j) {
            long double ang = 2.0L * static_cast<long double>(M_PI) * n * j / M2;
            acc += fs[j] * std::cos(ang);
        }
        tbl.a[N - n] = static_cast<double>(acc / M2); // flip for Horner, highest power first
    }
    return tbl;
}

const WeidemanTable& weideman() {
    static const WeidemanTable tbl = build_weideman();
    return tbl;
}

// Valid for Im z >= 0, |z| not large.
cplx w_weideman(const cplx& z) {
    const WeidemanTable& tbl = weideman();
    const cplx iz(-z.imag(), z.real());
    const cplx lm = tbl.L - iz;
    const cplx lp = tbl.L + iz;
    const cplx Z = lp / lm;
    cplx p(0.0, 0.0);
    for (double c : tbl.a) p = p * Z + c;
    return 2.0 * p / (lm * lm) + INV_SQRT_PI / lm;
}

// Asymptotic expansion w(z) ~ (i/sqrt(pi)) sum_m (2m-1)!! / (2 z^2)^m / z,
// adequate for |z| >= 12 anywhere in the closed upper half-plane.
cplx w_asymptotic(const cplx& z) {
    const cplx inv_2z2 = 0.5 / (z * z);
    cplx term(1.0, 0.0);
    cplx sum = term;
    for (int m = 1; m <= 40; ++m) {
        term *= static_cast<double>(2 * m - 1) * inv_2z2;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    const cplx pref = cplx(0.0, INV_SQRT_PI) / z;
    return pref * sum;
}

// Maclaurin series of erf, used near the origin where 1 - erfc cancels.
cplx erf_series(const cplx& z) {
    const cplx z2 = z * z;
    cplx term = z;
    cplx sum = z;
    for (int n = 1; n <= 40; ++n) {
        term *= -z2 / static_cast<double>(n);
        cplx add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return TWO_OVER_SQRT_PI * sum;
}

cplx w_upper(const cplx& z) {
    double n2 = std::norm(z);
    if (n2 <= 0.25) {
        // w(z) = e^{-z^2} (1 + erf(iz)), series-exact near the origin.
        const cplx iz(-z.imag(), z.real());
        return std::exp(-(z * z)) * (1.0 + erf_series(iz));
    }
    if (n2 >= 144.0) return w_asymptotic(z);
    return w_weideman(z);
}

} // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
    require_finite(z, "faddeeva_w");
    if (z.imag() >= 0.0) return w_upper(z);
    // w(z) = 2 e^{-z^2} - w(-z)
    const cplx mz2 = -(z * z);
    cplx e = cexp_checked(mz2, "faddeeva_w");
    return 2.0 * e - w_upper(-z);
}

std::complex<double> erfc_scaled(std::complex<double> z) {
    require_finite(z, "erfc_scaled");
    const cplx iz(-z.imag(), z.real());
    if (z.real() >= 0.0) return w_upper(iz);
    // erfcx(z) = 2 e^{z^2} - erfcx(-z)
    cplx e = cexp_checked(z * z, "erfc_scaled");
    return 2.0 * e - w_upper(-iz);
}

ScaledComplex erfc_scaled_arg(std::complex<double> z, std::complex<double> z_squared) {
    require_finite(z, "erfc_scaled_arg");
    const cplx iz(-z.imag(), z.real());
    if (z.real() >= 0.0) return ScaledComplex::from_complex(w_upper(iz));
    ScaledComplex out = scaled_cexp(z_squared);
    out *= 2.0;
    out -= ScaledComplex::from_complex(w_upper(-iz));
    return out;
}

std::complex<double> erf_complex(std::complex<double> z) {
    require_finite(z, "erf_complex");
    if (z.real() < 0.0) return -erf_complex(-z);
    if (std::norm(z) <= 0.25) return erf_series(z);
    // erf = 1 - e^{-z^2} erfcx(z), with Re z >= 0 so erfcx stays in the
    // well-conditioned half-plane.
    const cplx iz(-z.imag(), z.real());
    cplx e = cexp_checked(-(z * z), "erf_complex");
    return 1.0 - e * w_upper(iz);
}

std::complex<double> integral_I(std::complex<double> a, std::complex<double> x) {
    require_finite(a, "integral_I");
    require_finite(x, "integral_I");
    if (a == cplx(0.0, 0.0)) throw std::domain_error("integral_I: pole on contour (a = 0)");
    const cplx ix(-x.imag(), x.real());
    const cplx two_x2 = 2.0 * x * x;
    const cplx wp = std::sqrt(2.0) * (a + ix);
    const cplx wm = std::sqrt(2.0) * (a - ix);
    auto term = [&](const cplx& w, const cplx& grow_exp) -> cplx {
        // e^{grow_exp} erfc(w) with grow_exp - w^2 = 2x^2.
        if (w.real() >= 0.0) {
            const cplx iw(-w.imag(), w.real());
            return cexp_checked(two_x2, "integral_I") * w_upper(iw);
        }
        const cplx miw(w.imag(), -w.real());
        return 2.0 * cexp_checked(grow_exp, "integral_I") -
               cexp_checked(two_x2, "integral_I") * w_upper(miw);
    };
    const cplx four_iax = 4.0 * ix * a;
    const cplx two_a2 = 2.0 * a * a;
    cplx sum = term(wp, two_a2 + four_iax) + term(wm, two_a2 - four_iax);
    cplx out = M_PI / (2.0 * a) * sum;
    check_result(out, "integral_I");
    return out;
}

std::complex<double> cauchy_gaussian(std::complex<double> alpha, std::complex<double> x) {
    require_finite(alpha, "cauchy_gaussian");
    require_finite(x, "cauchy_gaussian");
    const cplx ix(-x.imag(), x.real());
    const cplx w = std::sqrt(2.0) * (alpha - ix);
    const cplx two_x2 = 2.0 * x * x;
    cplx val;
    if (w.real() >= 0.0) {
        const cplx iw(-w.imag(), w.real());
        val = cexp_checked(two_x2, "cauchy_gaussian") * w_upper(iw);
    } else {
        const cplx grow = 2.0 * alpha * (alpha - 2.0 * ix);
        const cplx miw(w.imag(), -w.real());
        val = 2.0 * cexp_checked(grow, "cauchy_gaussian") -
              cexp_checked(two_x2, "cauchy_gaussian") * w_upper(miw);
    }
    cplx out = cplx(0.0, -M_PI) * val;
    check_result(out, "cauchy_gaussian");
    return out;
}

} // namespace solprop
