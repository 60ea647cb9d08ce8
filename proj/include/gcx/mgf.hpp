#pragma once

#include "gcx/distribution.hpp"
#include "gcx/random.hpp"

#include <iosfwd>
#include <vector>

namespace gcx::mgf {

// Normalized log-MGF sampled on a grid, with discrete curvature data. The
// finiteness set is always a contiguous index range (L_p monotonicity).
struct LambdaProfile {
    std::vector<double> grid;
    std::vector<double> values;            // +inf where divergent
    std::vector<double> second_differences;  // aligned with interior points; NaN if a neighbor is infinite
    double min_second_difference = 0.0;    // over the finite entries
    std::size_t finite_count = 0;
};

// Requires a strictly increasing grid of >= 3 points and at least 3 finite
// values (insufficient-domain otherwise). On non-uniform grids the entries
// are divided differences rescaled to agree with plain second differences on
// uniform grids.
LambdaProfile lambda_profile(const ScalarDistribution& dist, const std::vector<double>& grid);

void write_csv(const LambdaProfile& profile, std::ostream& os);

// Gaussian matching Lambda at p0 and p1 (an affine function through the two
// points). negative_sigma2 flags inputs outside the theorem's hypotheses.
struct GaussianChord {
    double mu = 0.0;
    double sigma2 = 0.0;
    bool negative_sigma2 = false;

    double lambda_at(double p) const { return mu + 0.5 * sigma2 * p; }
};

GaussianChord gaussian_chord(const ScalarDistribution& dist, double p0, double p1);

enum class Orientation { convex, concave };

// Signed chord gaps on interior grid points: for the convex orientation the
// gap is chord - Lambda, for the concave orientation Lambda - chord, so a
// distribution of the claimed shape yields nonnegative gaps and a Gaussian
// yields zeros.
std::vector<double> strict_convexity_gap(const ScalarDistribution& dist, double p0, double p1,
                                         const std::vector<double>& interior_grid,
                                         Orientation orientation = Orientation::convex);

struct MgfBoundCheck {
    double lhs = 0.0;  // E e^{lambda X}
    double rhs = 0.0;  // exp(lambda^2 var/2 + lambda mean)
    bool holds = false;
};

// lambda must be <= 0; the bound is only claimed on that side.
MgfBoundCheck mgf_upper_bound_check(const ScalarDistribution& dist, double lambda,
                                    double tol = 1e-9);

struct ChernoffRow {
    double t = 0.0;
    double empirical = 0.0;
    double bound = 0.0;
    double mc_se = 0.0;
    bool holds = false;
};

// Empirical lower-tail P(X <= EX - t) against exp(-t^2 / 2 var), using N
// samples from the stream; holds allows 3 binomial standard errors.
std::vector<ChernoffRow> chernoff_lower_tail_check(const ScalarDistribution& dist,
                                                   const std::vector<double>& t_grid,
                                                   SeededStream mc, std::size_t N);

}  // namespace gcx::mgf
