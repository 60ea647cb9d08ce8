#pragma once

#include "gcx/distribution.hpp"
#include "gcx/oracle.hpp"
#include "gcx/random.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

namespace gcx::transport {

// A map sampled on a strictly increasing grid. strictly_increasing is false
// for maps built from step CDFs (discrete laws), which is exactly the case
// the concavity test is meant to reject.
struct MonotoneMap {
    std::vector<double> grid;
    std::vector<double> values;
    bool strictly_increasing = true;
    std::size_t excluded_points = 0;  // grid points dropped because F hit 0 or 1
};

// P(X <= t); exact for closed forms, trapezoid for grids, i/(N+1) for samples.
double distribution_function(const ScalarDistribution& dist, double t);

// T(t) = quantile(F(t)) on the grid; points where F is 0 or 1 are excluded
// (counted, not fatal).
MonotoneMap gaussian_transport_map(const ScalarDistribution& dist, const std::vector<double>& grid);

void write_csv(const MonotoneMap& map, std::ostream& os);

struct ConcavityResult {
    bool is_concave = false;
    // First grid triple (indices) whose slopes increase, when not concave.
    std::optional<std::array<std::size_t, 3>> witness;
    double max_violation = 0.0;  // largest slope increase observed
};

// Slope test: consecutive secant slopes must be nonincreasing within tol.
ConcavityResult concavity_test(const MonotoneMap& map, double tol = 1e-9);

// Samples phi(Z) and returns them as a sample-set distribution; phi must be
// declared convex and one-dimensional.
ScalarDistribution convex_pushforward(const ConvexFunctionOracle& phi, std::size_t N,
                                      SeededStream stream);

// Mean/variance screen for "looks standard normal" at MC resolution.
struct NormalityScreen {
    double mean = 0.0;
    double variance = 0.0;
    bool passes = false;
};

NormalityScreen normality_screen(const std::vector<double>& values);

struct TailRow {
    double t = 0.0;
    double empirical = 0.0;
    double bound = 0.0;
    double mc_se = 0.0;
    bool holds = false;
};

// Deviation check for f at iid standard exponential input, realized as
// (x^2+y^2)/2 over pairs of Gaussians; f must be declared convex and is
// expected to be coordinate-increasing.
std::vector<TailRow> exponential_adaptation_check(const ConvexFunctionOracle& f,
                                                  const std::vector<double>& t_grid, std::size_t N,
                                                  SeededStream stream);

}  // namespace gcx::transport
