#ifndef SOLPROP_VERIFY_HPP
#define SOLPROP_VERIFY_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "solprop/propagator.hpp"

namespace solprop {

// One oracle-vs-closed-form comparison.  pass is decided by the error named
// in metric ("rel", "abs" or "flag") against tolerance.
struct OracleReport {
    std::string name;
    std::complex<double> closed_form{0.0, 0.0};
    std::complex<double> oracle{0.0, 0.0};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string metric = "rel";
    std::string note; // truncation windows, stencil sizes, etc.

    std::string to_json_line() const;
};

// Eigenbasis quadrature propagator
//   sum_n phi_n(x) phi_n(y) e^{+i a_n^2 t} + Integral dk phi_k(x) phi_k*(y) e^{-i k^2 t}
// over |k| <= 10/sqrt(|Im t|).  Requires Im t < 0 (the continuum integrand
// must decay); throws std::invalid_argument otherwise.
std::complex<double> spectral_kernel_oracle(const SolitonParams& params, double x, double y,
                                            const TimeParam& t);

// The continuum integral alone, same restrictions.
std::complex<double> spectral_continuum_oracle(const SolitonParams& params, double x,
                                               double y, const TimeParam& t);

using KernelFn = std::function<std::complex<double>(double, double, std::complex<double>)>;

// |(i d_t + d_x^2 - V_N(x)) K| / (|K| + 1e-30), 5-point stencils in x
// (h = 1e-3) and t (h = 1e-4) with Richardson extrapolation.
double pde_residual(const KernelFn& kernel, const SolitonParams& params, double x, double y,
                    const TimeParam& t);

// Split-step (Strang) spectral integrator for i psi_t = -psi'' + V psi on a
// periodic grid with a power-of-two point count.  Oracle only.
SampledFunction reference_evolver(const SolitonParams& params, const SampledFunction& psi0,
                                  double t_final, int steps);

struct SuiteOptions {
    bool corrupt_kernel = false; // scale soliton terms by 1.01 to prove sensitivity
};

// Runs the cross-module invariant checks at seeded random points.
// Deterministic: equal seeds give bit-identical reports.
std::vector<OracleReport> run_suite(const SolitonParams& params, std::uint64_t seed,
                                    const SuiteOptions& options = {});

} // namespace solprop

#endif
