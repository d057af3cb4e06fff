#ifndef SOLPROP_QUADRATURE_HPP
#define SOLPROP_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace solprop::quad {

struct GlRule {
    std::vector<double> nodes;   // on [-1,1]
    std::vector<double> weights;
};

// Gauss-Legendre rule of order n, cached.
const GlRule& gauss_legendre(int n);

struct Result {
    std::complex<double> value;
    double error_estimate; // |last refinement delta|
    int panels;
};

namespace detail {

template <typename F>
std::complex<double> composite(F&& f, double a, double b, int panels, const GlRule& rule) {
    const double w = (b - a) / panels;
    std::complex<double> acc(0.0, 0.0);
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double mid = lo + 0.5 * w;
        const double half = 0.5 * w;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * std::complex<double>(f(mid + half * rule.nodes[i]));
    }
    // Panels share one width, so the half-width Jacobian factors out.
    return acc * (0.5 * w);
}

} // namespace detail

// Composite Gauss-Legendre with panel doubling until two refinements agree.
// Throws std::runtime_error if the tolerance is not reached.
template <typename F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                 int initial_panels = 4, int max_doublings = 12, int order = 16) {
    const GlRule& rule = gauss_legendre(order);
    int panels = initial_panels;
    std::complex<double> prev = detail::composite(f, a, b, panels, rule);
    for (int k = 0; k < max_doublings; ++k) {
        panels *= 2;
        std::complex<double> cur = detail::composite(f, a, b, panels, rule);
        double delta = std::abs(cur - prev);
        if (delta <= abs_tol + rel_tol * std::abs(cur)) return {cur, delta, panels};
        prev = cur;
    }
    throw std::runtime_error("quad::integrate: tolerance not reached");
}

} // namespace solprop::quad

#endif
