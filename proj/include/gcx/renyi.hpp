#pragma once

#include "gcx/oracle.hpp"
#include "gcx/random.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gcx::renyi {

// A law mu with d mu / d gamma_n = e^f for a concave (or affine) f. On
// construction the normalization E_gamma e^f is measured; a deviation beyond
// 1e-6 is absorbed by shifting f, and both raw and adjusted values are kept.
class RelativeDensity {
public:
    // n <= 3 uses tensorized Gauss-Hermite quadrature; larger n uses Monte
    // Carlo with e^f as control variate.
    RelativeDensity(ConvexFunctionOracle f, std::size_t quadrature_size = 60,
                    std::size_t mc_samples = 200000, SeededStream mc_stream = {});

    std::size_t dimension() const { return f_.dimension; }
    const ConvexFunctionOracle& oracle() const { return f_; }
    double raw_normalization() const { return raw_normalization_; }
    double log_shift() const { return log_shift_; }
    bool uses_quadrature() const { return use_quadrature_; }

    // E_gamma g(f(Z)) exp(k f(Z)) building block; f already shifted.
    double expect(const std::function<double(double)>& g_of_f, double* stderr_out = nullptr) const;

private:
    ConvexFunctionOracle f_;
    double raw_normalization_ = 1.0;
    double log_shift_ = 0.0;
    bool use_quadrature_ = true;
    std::size_t quad_size_;
    std::size_t mc_samples_;
    SeededStream mc_stream_;

    // quadrature tensor (cached nodes/weights) or MC draws of f(Z)
    std::vector<double> f_values_;
    std::vector<double> log_weights_;
};

struct DivergenceReport {
    double alpha = 1.0;
    double value = 0.0;
    std::string method;  // "quadrature" | "mc"
    std::optional<double> stderr_value;
    bool divergent = false;
};

DivergenceReport renyi_divergence(const RelativeDensity& rd, double alpha);
DivergenceReport kl_divergence(const RelativeDensity& rd);

// Squared Hellinger distance via the alpha = 1/2 bridge.
double hellinger_squared(const RelativeDensity& rd);
// chi^2 divergence via the alpha = 2 bridge.
double chi_squared(const RelativeDensity& rd);

struct ComparisonReport {
    double d_alpha = 0.0;
    double d_beta = 0.0;
    double ratio_bound_slack = 0.0;  // (beta/alpha) D_alpha - D_beta
    double monotone_slack = 0.0;     // D_beta - D_alpha
};

ComparisonReport comparison_check(const RelativeDensity& rd, double alpha, double beta);

struct ChainReport {
    double d2 = 0.0;
    double two_d1 = 0.0;
    double four_d_half = 0.0;
    bool holds(double tol) const { return d2 <= two_d1 + tol && two_d1 <= four_d_half + tol; }
};

ChainReport chain_check(const RelativeDensity& rd);

}  // namespace gcx::renyi
