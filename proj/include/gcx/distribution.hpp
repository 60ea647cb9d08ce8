#pragma once

#include "gcx/oracle.hpp"
#include "gcx/random.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcx {

// A one-dimensional law described by a closed form, a density on a grid, or
// a sample set. Closed forms include the pushforward of the standard
// Gaussian by a declared-shape oracle, evaluated by quadrature.
class ScalarDistribution {
public:
    enum class Kind { gaussian, poisson, exponential, pushforward, density_grid, sample_set };

    static ScalarDistribution gaussian(double mu, double sigma2);
    static ScalarDistribution poisson(double rate);
    static ScalarDistribution exponential(double rate);
    static ScalarDistribution pushforward(ConvexFunctionOracle phi,
                                          std::size_t quadrature_size = 60);
    // Density values on a strictly increasing grid; trapezoid mass must be 1
    // within 1e-8.
    static ScalarDistribution density_grid(std::vector<double> x, std::vector<double> density);
    static ScalarDistribution sample_set(std::vector<double> samples);

    Kind kind() const { return kind_; }
    std::string describe() const;

    double mean() const;
    double variance() const;
    // Overrides computed moments (used when closed forms are known for data
    // given as samples).
    void set_moment_cache(double mean, double variance) { moment_cache_ = {mean, variance}; }

    // P(X <= t).
    double cdf(double t) const;

    // n samples, bit-exact in (stream, n).
    std::vector<double> sample(std::size_t n, SeededStream stream) const;

    // Structural negation -X. Unsupported for the poisson/exponential closed
    // forms (represent those through samples or grids instead).
    ScalarDistribution negated() const;

    // Accessors used by serialization and tests.
    double param0() const { return p0_; }
    double param1() const { return p1_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const ConvexFunctionOracle& oracle() const { return phi_; }
    std::size_t quadrature_size() const { return quad_size_; }

private:
    ScalarDistribution() = default;

    Kind kind_ = Kind::gaussian;
    double p0_ = 0.0;  // mu | rate
    double p1_ = 1.0;  // sigma2
    ConvexFunctionOracle phi_;
    std::size_t quad_size_ = 60;
    std::vector<double> grid_;    // density grid | sorted samples
    std::vector<double> values_;  // density values
    std::optional<std::pair<double, double>> moment_cache_;

    friend struct DistributionAccess;
};

// Value of the normalized log moment generating function at p, with the
// convention that p = 0 yields the mean. +infinity marks divergence; the
// overflow flag distinguishes numeric overflow from exact divergence.
struct LambdaResult {
    double value = 0.0;
    bool overflow = false;

    bool finite() const;
};

LambdaResult lambda_value(const ScalarDistribution& dist, double p);

}  // namespace gcx
