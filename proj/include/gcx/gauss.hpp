#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace gcx {

// Standard normal CDF. Absolute error below 1e-14; throws
// std::invalid_argument on non-finite input.
double std_normal_cdf(double t);

// Density of the standard normal.
double std_normal_pdf(double t);

// Inverse of std_normal_cdf on (0,1). Throws std::domain_error for
// p outside the open interval (the infinite endpoints are rejected).
double std_normal_quantile(double p);

// Nodes/weights integrating against the standard Gaussian measure on R:
// integral f dgamma ~= sum w_i f(x_i). Exact for polynomials of degree
// 2m-1. Weights are positive and sum to 1.
struct GaussianQuadrature {
    std::vector<double> nodes;
    std::vector<double> weights;

    double integrate(const std::function<double(double)>& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

// Gauss-Hermite rule for the gamma_1 weight, 1 <= m <= 200.
GaussianQuadrature gauss_hermite(std::size_t m);

// Number of quadrature nodes used by default for 1-D Gaussian integrals.
inline constexpr std::size_t kDefaultQuadratureSize = 60;

// E|Z| for Z standard Gaussian in R^n: sqrt(2)*Gamma((n+1)/2)/Gamma(n/2).
double chi_mean(std::size_t n);

// log of sum of exp(terms), guarded against overflow; -inf input allowed.
double log_sum_exp(const std::vector<double>& terms);

}  // namespace gcx
