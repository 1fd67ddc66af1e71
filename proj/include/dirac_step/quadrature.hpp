#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace dirac_step {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const
    {
        decltype(f(0.0)) acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// n-point Gauss-Legendre rule mapped onto [a, b].
inline QuadratureRule gauss_legendre(std::size_t n, double a, double b)
{
    if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
    if (!(a < b)) throw std::invalid_argument("gauss_legendre: empty interval");

    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
        table(gsl_integration_glfixed_table_alloc(n), &gsl_integration_glfixed_table_free);
    if (!table) throw std::runtime_error("gauss_legendre: table allocation failed");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (gsl_integration_glfixed_point(a, b, i, &rule.nodes[i], &rule.weights[i], table.get()) !=
            GSL_SUCCESS) {
            throw std::runtime_error("gauss_legendre: node lookup failed");
        }
    }
    return rule;
}

/// Composite trapezoid rule for samples on a uniform grid with spacing h.
inline double trapezoid(std::span<const double> f, double h) noexcept
{
    if (f.size() < 2) return 0.0;
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
    return acc * h;
}

} // namespace dirac_step
