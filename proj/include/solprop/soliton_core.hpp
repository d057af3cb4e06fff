#ifndef SOLPROP_SOLITON_CORE_HPP
#define SOLPROP_SOLITON_CORE_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "solprop/scaled_real.hpp"

namespace solprop {

enum class Parity { even, odd }; // even -> cosh, odd -> sinh

struct Mode {
    double a;      // wave number, a > 0; bound energy is -a^2
    double b;      // phase shift
    Parity parity;
};

// Transformation data {(a_j, b_j, parity_j)} for an N-soliton potential.
// Invariants: 0 < a_1 < a_2 < ... < a_N, parity alternating starting with
// cosh.  N = 0 is the free particle.
class SolitonParams {
public:
    SolitonParams() = default;
    explicit SolitonParams(std::vector<Mode> modes);

    // Builds the standard alternating cosh/sinh chain from (a, b) pairs.
    static SolitonParams reflectionless(const std::vector<std::pair<double, double>>& ab);

    int size() const { return static_cast<int>(modes_.size()); }
    const Mode& mode(int j) const; // 1-based
    const std::vector<Mode>& modes() const { return modes_; }

private:
    std::vector<Mode> modes_;
};

struct SpectralPoint {
    double k; // wave number (0 for bound states)
    double E; // k^2 on the continuum, -a_n^2 for bound states

    static SpectralPoint bound(const SolitonParams& params, int n);
    static SpectralPoint continuum(double k) { return {k, k * k}; }
};

// d^m/dx^m u_j(x) = a_j^m (cosh|sinh)(a_j x + b_j), parity flipping with each
// derivative.  j is 1-based.
ScaledReal mode_derivative(const SolitonParams& params, int j, int m, double x);

// Determinant of [d^{i-1} u_j / dx^{i-1}], scaled LU with partial pivoting.
ScaledReal wronskian(const SolitonParams& params, double x);

// Order-(N-1) Wronskian with mode n dropped; 1 for N = 1.  n is 1-based.
ScaledReal reduced_wronskian(const SolitonParams& params, int n, double x);

struct WronskianDerivs {
    ScaledReal w;  // W
    ScaledReal w1; // W'
    ScaledReal w2; // W''
};

// W and its first two derivatives via the determinant row-derivative rule.
WronskianDerivs wronskian_derivatives(const SolitonParams& params, double x);

// V_N(x) = -2 (W'' W - W'^2) / W^2; 0 for N = 0.
double potential(const SolitonParams& params, double x);

double bound_energy(const SolitonParams& params, int n); // -a_n^2

// Normalization sqrt(a_n/2 prod_{j != n} |a_n^2 - a_j^2|).
double bound_norm_constant(const SolitonParams& params, int n);

// phi_n(x), unit L2 norm.  n is 1-based.
double bound_state(const SolitonParams& params, int n, double x);

// Quadrature check of the L2 norm of phi_n over |x| <= 40/a_1.
double bound_state_norm(const SolitonParams& params, int n);

// Order-N transformation operator L of the Crum-Krein chain.
struct DarbouxOperator {
    SolitonParams params;
    int order() const { return params.size(); }
};

// L f = W(u_1,...,u_N,f) / W(u_1,...,u_N) given exact derivatives
// f^{(0..N)} at x (f_derivs.size() == N+1).
std::complex<double> darboux_apply(const DarbouxOperator& op,
                                   std::span<const std::complex<double>> f_derivs,
                                   double x);

// Continuum eigenfunction phi_k(x): L applied to e^{-ikx}/sqrt(2 pi),
// divided by prod_j sqrt(k^2 + a_j^2).  Satisfies h_N phi_k = k^2 phi_k.
std::complex<double> continuum_state(const SolitonParams& params, double k, double x);

namespace detail {
// Determinant over the given modes (0-based indices) with the given row
// derivative orders.  Empty selection gives 1.
ScaledReal wronskian_with_orders(const SolitonParams& params,
                                 std::span<const int> mode_idx,
                                 std::span<const int> orders, double x);
// Minors of the bordered Wronskian: M_i = det over all modes with orders
// {0..N} \ {i}.  Ratios M_i / W, as doubles, for i = 0..N.
std::vector<double> darboux_minor_ratios(const SolitonParams& params, double x);
} // namespace detail

} // namespace solprop

#endif
