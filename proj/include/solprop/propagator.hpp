#ifndef SOLPROP_PROPAGATOR_HPP
#define SOLPROP_PROPAGATOR_HPP

#include <complex>
#include <utility>
#include <vector>

#include "solprop/soliton_core.hpp"

namespace solprop {

// Propagation time t = t' - t''.  Invariants: Im t <= 0, t != 0.  Real t > 0
// is the Schroedinger regime; t = -i tau (tau > 0) is the heat regime.
// Branch conventions: principal square roots throughout, sqrt(i) = e^{i pi/4}.
class TimeParam {
public:
    explicit TimeParam(std::complex<double> t);
    static TimeParam real_time(double t) { return TimeParam(std::complex<double>(t, 0.0)); }
    static TimeParam heat(double tau) { return TimeParam(std::complex<double>(0.0, -tau)); }

    std::complex<double> value() const { return t_; }
    std::complex<double> sqrt_t() const;  // principal
    std::complex<double> sqrt_it() const; // principal sqrt(i t) = e^{i pi/4} sqrt(t)
    bool is_heat() const { return t_.real() == 0.0 && t_.imag() < 0.0; }

private:
    std::complex<double> t_;
};

enum class KernelPath { closed_form, spectral_oracle, darboux_construction };

struct KernelSample {
    double x;
    double y;
    std::complex<double> t;
    std::complex<double> value;
    KernelPath path;
};

// Free propagator (4 pi i t)^{-1/2} e^{i(x-y)^2/(4t)}; the Gaussian heat
// kernel at t = -i tau.
std::complex<double> free_kernel(double x, double y, const TimeParam& t);

// erf_pm = erf[a sqrt(it) +- i sqrt(i) (x-y)/(2 sqrt(t))], evaluated through
// the scaled-erfcx identity rather than erf of large arguments.
std::pair<std::complex<double>, std::complex<double>>
erf_pm(double a, double x, double y, const TimeParam& t);

// Discrete-spectrum part: sum_n (a_n/2 prod |a_n^2-a_j^2|)
//   W^(n)(x) W^(n)(y) / (W(x) W(y)) e^{i a_n^2 t}.
std::complex<double> discrete_part(const SolitonParams& params, double x, double y,
                                   const TimeParam& t);

// Continuum part built from the transformation-operator route:
// (1/2pi) sqrt(it/2) L_x L_y sum_n (prod_{m!=n} 1/(alpha_n-alpha_m))
//   I(a_n sqrt(it/2), sqrt(i/8t)(x-y)),
// with L_x, L_y applied through high-order central differences.
// Verification path; N <= 4.
std::complex<double> continuous_part_darboux(const SolitonParams& params, double x,
                                             double y, const TimeParam& t);

// Closed-form propagator: free kernel plus one scaled-erfcx soliton term per
// mode.  Valid for any N >= 0.
std::complex<double> kernel_closed(const SolitonParams& params, double x, double y,
                                   const TimeParam& t);

// (K_d, K - K_d) with K from kernel_closed.
std::pair<std::complex<double>, std::complex<double>>
kernel_split(const SolitonParams& params, double x, double y, const TimeParam& t);

// Complex samples on a uniform grid.
struct SampledFunction {
    double x0 = 0.0;
    double dx = 0.0;
    std::vector<std::complex<double>> values;

    double x_at(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
    std::size_t size() const { return values.size(); }
    double l2_norm() const;
};

struct QuadratureSpec {
    int panel_order = 16;      // Gauss-Legendre points per panel
    double phase_budget = 6.0; // max kernel phase change per panel (radians)
};

// psi(x,t) = Integral K(x,y;t) psi0(y) dy over the sample support, composite
// Gauss-Legendre panels sized by the kernel oscillation scale.
// Preconditions: grid spacing <= sqrt(|t|)/8, edge samples below 1e-12.
SampledFunction evolve(const SolitonParams& params, const SampledFunction& psi0,
                       const TimeParam& t, const QuadratureSpec& rule = {});

// Normalized Gaussian packet (pi w^2)^{-1/4} e^{-(x-c)^2/(2w^2) + i k0 (x-c)}.
std::complex<double> gaussian_packet(double x, double center, double width, double momentum);

namespace detail {
// Per-point Wronskian data shared by kernel evaluations.
struct KernelSite {
    double x = 0.0;
    ScaledReal w;
    std::vector<ScaledReal> reduced; // W^(n), n = 1..N
};
KernelSite make_site(const SolitonParams& params, double x);
std::complex<double> kernel_from_sites(const SolitonParams& params, const KernelSite& sx,
                                       const KernelSite& sy, const TimeParam& t);
std::complex<double> discrete_from_sites(const SolitonParams& params, const KernelSite& sx,
                                         const KernelSite& sy, const TimeParam& t);
} // namespace detail

} // namespace solprop

#endif
