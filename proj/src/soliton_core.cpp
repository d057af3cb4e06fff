#include "solprop/soliton_core.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "solprop/quadrature.hpp"

namespace solprop {

namespace {

constexpr double SQRT_2PI = 2.5066282746310005024;

// In-place determinant of an n x n ScaledReal matrix (row-major) by Gaussian
// elimination with partial pivoting.
ScaledReal scaled_det(std::vector<ScaledReal>& m, int n) {
    if (n == 0) return ScaledReal::one();
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (ScaledReal::abs_less(m[piv * n + col], m[r * n + col])) piv = r;
        if (m[piv * n + col].is_zero()) return ScaledReal();
        if (piv != col) {
            for (int c = col; c < n; ++c) std::swap(m[piv * n + c], m[col * n + c]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            if (m[r * n + col].is_zero()) continue;
            ScaledReal factor = m[r * n + col] / m[col * n + col];
            for (int c = col + 1; c < n; ++c)
                m[r * n + c] -= factor * m[col * n + c];
            m[r * n + col] = ScaledReal();
        }
    }
    ScaledReal det = ScaledReal::one();
    for (int i = 0; i < n; ++i) det *= m[i * n + i];
    if (sign < 0) det = -det;
    return det;
}

ScaledReal mode_derivative_raw(const Mode& mode, int m, double x) {
    const double arg = mode.a * x + mode.b;
    // Derivative cycle: cosh <-> sinh with each order.
    const bool base_even = (mode.parity == Parity::even);
    const bool use_cosh = base_even == (m % 2 == 0);
    ScaledReal val = use_cosh ? scaled_cosh(arg) : scaled_sinh(arg);
    for (int i = 0; i < m; ++i) val *= ScaledReal::from_double(mode.a);
    return val;
}

std::vector<int> all_indices(int n) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

} // namespace

SolitonParams::SolitonParams(std::vector<Mode> modes) : modes_(std::move(modes)) {
    double prev = 0.0;
    for (std::size_t j = 0; j < modes_.size(); ++j) {
        const Mode& m = modes_[j];
        if (!std::isfinite(m.a) || !std::isfinite(m.b))
            throw std::invalid_argument("SolitonParams: non-finite mode data");
        if (m.a <= prev)
            throw std::invalid_argument("SolitonParams: wave numbers must satisfy 0 < a_1 < ... < a_N (violated at mode " +
                                        std::to_string(j + 1) + ")");
        const Parity expect = (j % 2 == 0) ? Parity::even : Parity::odd;
        if (m.parity != expect)
            throw std::invalid_argument("SolitonParams: parity must alternate starting with cosh (violated at mode " +
                                        std::to_string(j + 1) + ")");
        prev = m.a;
    }
}

SolitonParams SolitonParams::reflectionless(const std::vector<std::pair<double, double>>& ab) {
    std::vector<Mode> modes;
    modes.reserve(ab.size());
    for (std::size_t j = 0; j < ab.size(); ++j)
        modes.push_back({ab[j].first, ab[j].second, (j % 2 == 0) ? Parity::even : Parity::odd});
    return SolitonParams(std::move(modes));
}

const Mode& SolitonParams::mode(int j) const {
    if (j < 1 || j > size()) throw std::out_of_range("SolitonParams::mode: index out of range");
    return modes_[j - 1];
}

SpectralPoint SpectralPoint::bound(const SolitonParams& params, int n) {
    const double a = params.mode(n).a;
    return {0.0, -a * a};
}

ScaledReal mode_derivative(const SolitonParams& params, int j, int m, double x) {
    if (m < 0) throw std::out_of_range("mode_derivative: negative order");
    return mode_derivative_raw(params.mode(j), m, x);
}

namespace detail {

ScaledReal wronskian_with_orders(const SolitonParams& params,
                                 std::span<const int> mode_idx,
                                 std::span<const int> orders, double x) {
    const int n = static_cast<int>(mode_idx.size());
    if (static_cast<int>(orders.size()) != n)
        throw std::invalid_argument("wronskian_with_orders: shape mismatch");
    std::vector<ScaledReal> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i * n + j] = mode_derivative_raw(params.modes()[mode_idx[j]], orders[i], x);
    return scaled_det(m, n);
}

std::vector<double> darboux_minor_ratios(const SolitonParams& params, double x) {
    const int n = params.size();
    const std::vector<int> modes = all_indices(n);
    const ScaledReal w = wronskian(params, x);
    std::vector<double> ratios(n + 1);
    std::vector<int> orders(n);
    for (int skip = 0; skip <= n; ++skip) {
        int pos = 0;
        for (int o = 0; o <= n; ++o)
            if (o != skip) orders[pos++] = o;
        ScaledReal minor = wronskian_with_orders(params, modes, orders, x);
        ratios[skip] = (minor / w).to_double();
    }
    return ratios;
}

} // namespace detail

ScaledReal wronskian(const SolitonParams& params, double x) {
    const int n = params.size();
    const std::vector<int> modes = all_indices(n);
    std::vector<int> orders(n);
    std::iota(orders.begin(), orders.end(), 0);
    return detail::wronskian_with_orders(params, modes, orders, x);
}

ScaledReal reduced_wronskian(const SolitonParams& params, int n, double x) {
    const int N = params.size();
    if (n < 1 || n > N) throw std::out_of_range("reduced_wronskian: index out of range");
    std::vector<int> modes;
    modes.reserve(N - 1);
    for (int j = 0; j < N; ++j)
        if (j != n - 1) modes.push_back(j);
    std::vector<int> orders(N - 1);
    std::iota(orders.begin(), orders.end(), 0);
    return detail::wronskian_with_orders(params, modes, orders, x);
}

WronskianDerivs wronskian_derivatives(const SolitonParams& params, double x) {
    const int n = params.size();
    WronskianDerivs out;
    if (n == 0) {
        out.w = ScaledReal::one();
        out.w1 = ScaledReal();
        out.w2 = ScaledReal();
        return out;
    }
    const std::vector<int> modes = all_indices(n);
    std::vector<int> orders(n);
    std::iota(orders.begin(), orders.end(), 0);
    out.w = detail::wronskian_with_orders(params, modes, orders, x);
    // W': only the derivative of the last row survives (others duplicate).
    orders[n - 1] = n;
    out.w1 = detail::wronskian_with_orders(params, modes, orders, x);
    // W'': rows (0..N-2, N+1) plus rows (0..N-3, N-1, N).
    orders[n - 1] = n + 1;
    out.w2 = detail::wronskian_with_orders(params, modes, orders, x);
    if (n >= 2) {
        std::iota(orders.begin(), orders.end(), 0);
        orders[n - 2] = n - 1;
        orders[n - 1] = n;
        out.w2 += detail::wronskian_with_orders(params, modes, orders, x);
    }
    return out;
}

double potential(const SolitonParams& params, double x) {
    if (params.size() == 0) return 0.0;
    WronskianDerivs d = wronskian_derivatives(params, x);
    const double r2 = (d.w2 / d.w).to_double();
    const double r1 = (d.w1 / d.w).to_double();
    return -2.0 * (r2 - r1 * r1);
}

double bound_energy(const SolitonParams& params, int n) {
    const double a = params.mode(n).a;
    return -a * a;
}

double bound_norm_constant(const SolitonParams& params, int n) {
    const double an = params.mode(n).a;
    double prod = an / 2.0;
    for (int j = 1; j <= params.size(); ++j) {
        if (j == n) continue;
        const double aj = params.mode(j).a;
        prod *= std::fabs(an * an - aj * aj);
    }
    return std::sqrt(prod);
}

double bound_state(const SolitonParams& params, int n, double x) {
    const ScaledReal ratio = reduced_wronskian(params, n, x) / wronskian(params, x);
    return bound_norm_constant(params, n) * ratio.to_double();
}

double bound_state_norm(const SolitonParams& params, int n) {
    const double window = 40.0 / params.mode(1).a;
    auto f = [&](double x) {
        const double v = bound_state(params, n, x);
        return v * v;
    };
    auto q = quad::integrate(f, -window, window, 1e-12, 1e-11);
    return std::sqrt(q.value.real());
}

std::complex<double> darboux_apply(const DarbouxOperator& op,
                                   std::span<const std::complex<double>> f_derivs,
                                   double x) {
    const int n = op.order();
    if (static_cast<int>(f_derivs.size()) != n + 1)
        throw std::invalid_argument("darboux_apply: need derivatives f^(0..N)");
    if (n == 0) return f_derivs[0];
    const std::vector<double> ratios = detail::darboux_minor_ratios(op.params, x);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double sign = ((n + i) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * ratios[i] * f_derivs[i];
    }
    return acc;
}

std::complex<double> continuum_state(const SolitonParams& params, double k, double x) {
    const int n = params.size();
    std::vector<std::complex<double>> derivs(n + 1);
    const std::complex<double> base = std::exp(std::complex<double>(0.0, -k * x)) / SQRT_2PI;
    std::complex<double> factor(1.0, 0.0);
    const std::complex<double> mik(0.0, -k);
    for (int m = 0; m <= n; ++m) {
        derivs[m] = factor * base;
        factor *= mik;
    }
    std::complex<double> val = darboux_apply({params}, derivs, x);
    double norm = 1.0;
    for (const Mode& mode : params.modes()) norm *= std::sqrt(k * k + mode.a * mode.a);
    return val / norm;
}

} // namespace solprop
