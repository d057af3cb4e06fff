#include "solprop/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "solprop/complex_special.hpp"
#include "solprop/quadrature.hpp"

namespace solprop {

namespace {

using cplx = std::complex<double>;

const cplx I_UNIT(0.0, 1.0);
// i sqrt(i) = e^{3 i pi/4}
const cplx I_SQRT_I(-0.70710678118654752440, 0.70710678118654752440);

std::string format_t(const cplx& t) {
    std::ostringstream os;
    os << "t=(" << t.real() << (t.imag() < 0 ? "" : "+") << t.imag() << "i)";
    return os.str();
}

double coefficient_product(const SolitonParams& params, int n) {
    const double an = params.mode(n).a;
    double prod = 1.0;
    for (int j = 1; j <= params.size(); ++j) {
        if (j == n) continue;
        const double aj = params.mode(j).a;
        prod *= std::fabs(an * an - aj * aj);
    }
    return prod;
}

// The scaled soliton-term bracket R_n e^{i a^2 t} [erf_+ + erf_-], evaluated
// through erfcx with all exponents combined analytically:
//   z_pm^2 = i a^2 t -+ a d - i d^2/(4t)
//   e^{i a^2 t} erfc(z_pm) = e^{+-a d + i d^2/(4t)} erfcx(z_pm).
ScaledComplex soliton_bracket(double a, double d, const TimeParam& t, const ScaledReal& rn) {
    const cplx tv = t.value();
    const cplx e0 = I_UNIT * a * a * tv;
    const cplx phase = I_UNIT * d * d / (4.0 * tv);
    const cplx ep = a * d + phase;
    const cplx em = -a * d + phase;
    const cplx zp = a * t.sqrt_it() + I_SQRT_I * d / (2.0 * t.sqrt_t());
    const cplx zm = a * t.sqrt_it() - I_SQRT_I * d / (2.0 * t.sqrt_t());
    ScaledComplex acc = scaled_cexp(e0) * rn * 2.0;
    acc -= scaled_cexp(ep) * erfc_scaled_arg(zp, e0 - ep) * rn;
    acc -= scaled_cexp(em) * erfc_scaled_arg(zm, e0 - em) * rn;
    return acc;
}

// erf(z) with z^2 supplied analytically; reflects into Re z >= 0 first.
cplx erf_from_argsq(const cplx& z, const cplx& z_squared) {
    if (z.real() < 0.0) return -erf_from_argsq(-z, z_squared);
    ScaledComplex e = scaled_cexp(-z_squared);
    e *= erfc_scaled_arg(z, z_squared);
    return 1.0 - e.to_complex();
}

// ---------------------------------------------------------------------------
// Fornberg weights: derivatives 0..m at point 0 on the given nodes.
// ---------------------------------------------------------------------------
std::vector<std::vector<double>> fornberg_weights(const std::vector<double>& nodes, int m) {
    const int n = static_cast<int>(nodes.size());
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0];
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = nodes[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return c;
}

// Derivatives 0..m of a smooth complex function at s, central stencil of
// 2q+1 points with spacing h.
std::vector<cplx> stencil_derivatives(const std::function<cplx(double)>& g, double s,
                                      double h, int q, int m) {
    std::vector<double> nodes(2 * q + 1);
    std::vector<cplx> vals(2 * q + 1);
    for (int i = -q; i <= q; ++i) {
        nodes[i + q] = i * h;
        vals[i + q] = g(s + i * h);
    }
    auto w = fornberg_weights(nodes, m);
    std::vector<cplx> d(m + 1, cplx(0.0, 0.0));
    for (int k = 0; k <= m; ++k)
        for (int i = 0; i < 2 * q + 1; ++i) d[k] += w[i][k] * vals[i];
    return d;
}

// Six-point Lagrange interpolation of uniform samples.
cplx interp6(const SampledFunction& f, double x) {
    const int n = static_cast<int>(f.size());
    double u = (x - f.x0) / f.dx;
    int j0 = static_cast<int>(std::floor(u)) - 2;
    j0 = std::clamp(j0, 0, n - 6);
    cplx acc(0.0, 0.0);
    for (int i = 0; i < 6; ++i) {
        double li = 1.0;
        for (int j = 0; j < 6; ++j) {
            if (j == i) continue;
            li *= (u - (j0 + j)) / static_cast<double>(i - j);
        }
        acc += li * f.values[j0 + i];
    }
    return acc;
}

} // namespace

TimeParam::TimeParam(std::complex<double> t) : t_(t) {
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
        throw std::invalid_argument("TimeParam: non-finite time");
    if (t == cplx(0.0, 0.0)) throw std::domain_error("TimeParam: t = 0");
    if (t.imag() > 0.0)
        throw std::invalid_argument("TimeParam: Im t must be <= 0, got " + format_t(t));
}

cplx TimeParam::sqrt_t() const { return std::sqrt(t_); }

cplx TimeParam::sqrt_it() const { return std::sqrt(I_UNIT * t_); }

std::complex<double> free_kernel(double x, double y, const TimeParam& t) {
    const cplx tv = t.value();
    const double d = x - y;
    const cplx phase = I_UNIT * d * d / (4.0 * tv);
    return std::exp(phase) / std::sqrt(4.0 * M_PI * I_UNIT * tv);
}

std::pair<std::complex<double>, std::complex<double>>
erf_pm(double a, double x, double y, const TimeParam& t) {
    if (a <= 0.0) throw std::invalid_argument("erf_pm: a must be positive");
    const cplx tv = t.value();
    const double d = x - y;
    const cplx e0 = I_UNIT * a * a * tv;
    const cplx phase = I_UNIT * d * d / (4.0 * tv);
    const cplx zp = a * t.sqrt_it() + I_SQRT_I * d / (2.0 * t.sqrt_t());
    const cplx zm = a * t.sqrt_it() - I_SQRT_I * d / (2.0 * t.sqrt_t());
    const cplx zp2 = e0 - (a * d + phase);
    const cplx zm2 = e0 - (-a * d + phase);
    return {erf_from_argsq(zp, zp2), erf_from_argsq(zm, zm2)};
}

namespace detail {

KernelSite make_site(const SolitonParams& params, double x) {
    KernelSite s;
    s.x = x;
    s.w = wronskian(params, x);
    s.reduced.reserve(params.size());
    for (int n = 1; n <= params.size(); ++n)
        s.reduced.push_back(reduced_wronskian(params, n, x));
    return s;
}

std::complex<double> kernel_from_sites(const SolitonParams& params, const KernelSite& sx,
                                       const KernelSite& sy, const TimeParam& t) {
    cplx acc = free_kernel(sx.x, sy.x, t);
    const double d = sx.x - sy.x;
    for (int n = 1; n <= params.size(); ++n) {
        const double a = params.mode(n).a;
        const ScaledReal rn = sx.reduced[n - 1] * sy.reduced[n - 1] / (sx.w * sy.w);
        const double coef = 0.25 * a * coefficient_product(params, n);
        acc += coef * soliton_bracket(a, d, t, rn).to_complex();
    }
    return acc;
}

std::complex<double> discrete_from_sites(const SolitonParams& params, const KernelSite& sx,
                                         const KernelSite& sy, const TimeParam& t) {
    cplx acc(0.0, 0.0);
    for (int n = 1; n <= params.size(); ++n) {
        const double a = params.mode(n).a;
        const ScaledReal rn = sx.reduced[n - 1] * sy.reduced[n - 1] / (sx.w * sy.w);
        const double coef = 0.5 * a * coefficient_product(params, n);
        ScaledComplex term = scaled_cexp(I_UNIT * a * a * t.value()) * rn;
        acc += coef * term.to_complex();
    }
    return acc;
}

} // namespace detail

std::complex<double> discrete_part(const SolitonParams& params, double x, double y,
                                   const TimeParam& t) {
    return detail::discrete_from_sites(params, detail::make_site(params, x),
                                       detail::make_site(params, y), t);
}

std::complex<double> kernel_closed(const SolitonParams& params, double x, double y,
                                   const TimeParam& t) {
    return detail::kernel_from_sites(params, detail::make_site(params, x),
                                     detail::make_site(params, y), t);
}

std::pair<std::complex<double>, std::complex<double>>
kernel_split(const SolitonParams& params, double x, double y, const TimeParam& t) {
    const auto sx = detail::make_site(params, x);
    const auto sy = detail::make_site(params, y);
    const cplx kd = detail::discrete_from_sites(params, sx, sy, t);
    const cplx k = detail::kernel_from_sites(params, sx, sy, t);
    return {kd, k - kd};
}

std::complex<double> continuous_part_darboux(const SolitonParams& params, double x,
                                             double y, const TimeParam& t) {
    const int N = params.size();
    if (N == 0) return free_kernel(x, y, t);
    if (N > 4)
        throw std::invalid_argument("continuous_part_darboux: N > 4 unsupported (derivative cost)");

    const cplx tv = t.value();
    const cplx sqrt_it_half = t.sqrt_it() / std::sqrt(2.0);
    const cplx xfac = std::sqrt(I_UNIT / (8.0 * tv));

    std::vector<double> cn(N);
    std::vector<cplx> an(N);
    for (int n = 0; n < N; ++n) {
        const double a_n = params.modes()[n].a;
        double prod = 1.0;
        for (int m = 0; m < N; ++m) {
            if (m == n) continue;
            const double a_m = params.modes()[m].a;
            prod *= (a_m * a_m - a_n * a_n); // alpha_n - alpha_m
        }
        cn[n] = 1.0 / prod;
        an[n] = a_n * sqrt_it_half;
    }

    auto g = [&](double s) -> cplx {
        cplx acc(0.0, 0.0);
        for (int n = 0; n < N; ++n) acc += cn[n] * integral_I(an[n], xfac * s);
        return acc;
    };

    // Step size tied to the I-argument scale; two evaluations for Richardson.
    const double scale = std::sqrt(8.0 * std::abs(tv)) / std::max(1.0, std::abs(an[N - 1]));
    const double h = 0.12 * scale;
    const int m_max = 2 * N;
    const int q = N + 3; // 2q+1 points
    const std::function<cplx(double)> gf = g;
    const double d = x - y;
    auto d_h = stencil_derivatives(gf, d, h, q, m_max);
    auto d_h2 = stencil_derivatives(gf, d, 0.5 * h, q, m_max);
    std::vector<cplx> deriv(m_max + 1);
    for (int m = 0; m <= m_max; ++m) {
        int p = 2 * q + 1 - m;
        if (p % 2 != 0) ++p;
        const double f = std::pow(2.0, p);
        deriv[m] = (f * d_h2[m] - d_h[m]) / (f - 1.0);
    }

    const std::vector<double> lx = detail::darboux_minor_ratios(params, x);
    const std::vector<double> ly = detail::darboux_minor_ratios(params, y);
    cplx acc(0.0, 0.0);
    for (int i = 0; i <= N; ++i) {
        const double si = ((N + i) % 2 == 0) ? 1.0 : -1.0;
        for (int j = 0; j <= N; ++j) {
            double sj = ((N + j) % 2 == 0) ? 1.0 : -1.0;
            if (j % 2 != 0) sj = -sj; // d/dy of g(x-y) flips sign per order
            acc += si * sj * lx[i] * ly[j] * deriv[i + j];
        }
    }
    return acc * sqrt_it_half / (2.0 * M_PI);
}

std::complex<double> gaussian_packet(double x, double center, double width, double momentum) {
    if (width <= 0.0) throw std::invalid_argument("gaussian_packet: width must be positive");
    const double u = x - center;
    const cplx expo(-u * u / (2.0 * width * width), momentum * u);
    return std::pow(M_PI * width * width, -0.25) * std::exp(expo);
}

double SampledFunction::l2_norm() const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return std::sqrt(s * dx);
}

SampledFunction evolve(const SolitonParams& params, const SampledFunction& psi0,
                       const TimeParam& t, const QuadratureSpec& rule) {
    const std::size_t n = psi0.size();
    if (n < 16 || psi0.dx <= 0.0) throw std::invalid_argument("evolve: need a uniform grid with >= 16 samples");
    const double max_dx = std::sqrt(std::abs(t.value())) / 8.0;
    if (psi0.dx > max_dx) {
        std::ostringstream os;
        os << "evolve: grid spacing " << psi0.dx << " too coarse for " << format_t(t.value())
           << "; need spacing <= " << max_dx;
        throw std::invalid_argument(os.str());
    }
    if (std::abs(psi0.values.front()) > 1e-12 || std::abs(psi0.values.back()) > 1e-12)
        throw std::invalid_argument("evolve: psi0 must decay below 1e-12 at the grid edges");

    const double y_lo = psi0.x0;
    const double y_hi = psi0.x_at(n - 1);
    const double span = y_hi - y_lo;
    // Kernel phase rate bound over the grid; panels hold phase_budget radians.
    const double omega = span * std::abs(1.0 / (2.0 * t.value()));
    double panel_w = rule.phase_budget / std::max(omega, 1e-12);
    panel_w = std::min({panel_w, span, 16.0 * psi0.dx});
    const int panels = std::max(1, static_cast<int>(std::ceil(span / panel_w)));
    const auto& gl = quad::gauss_legendre(rule.panel_order);

    // Quadrature nodes, weights, and per-node kernel data.
    const double w_actual = span / panels;
    std::vector<double> ynodes;
    std::vector<double> yweights;
    std::vector<cplx> ypsi;
    ynodes.reserve(static_cast<std::size_t>(panels) * gl.nodes.size());
    for (int p = 0; p < panels; ++p) {
        const double mid = y_lo + (p + 0.5) * w_actual;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            ynodes.push_back(mid + 0.5 * w_actual * gl.nodes[i]);
            yweights.push_back(0.5 * w_actual * gl.weights[i]);
        }
    }
    std::vector<detail::KernelSite> ysites;
    ysites.reserve(ynodes.size());
    for (double ynode : ynodes) {
        ysites.push_back(detail::make_site(params, ynode));
        ypsi.push_back(interp6(psi0, ynode));
    }

    SampledFunction out;
    out.x0 = psi0.x0;
    out.dx = psi0.dx;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto sx = detail::make_site(params, psi0.x_at(i));
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < ynodes.size(); ++k)
            acc += yweights[k] * detail::kernel_from_sites(params, sx, ysites[k], t) * ypsi[k];
        out.values[i] = acc;
    }
    return out;
}

} // namespace solprop
