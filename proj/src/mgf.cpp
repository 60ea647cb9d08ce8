#include "gcx/mgf.hpp"

#include "gcx/stats.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace gcx::mgf {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

LambdaProfile lambda_profile(const ScalarDistribution& dist, const std::vector<double>& grid) {
    if (grid.size() < 3) throw std::invalid_argument("lambda_profile: need at least 3 grid points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("lambda_profile: grid must be strictly increasing");

    LambdaProfile out;
    out.grid = grid;
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = lambda_value(dist, grid[i]).value;
        if (std::isfinite(out.values[i])) ++out.finite_count;
    }
    if (out.finite_count < 3)
        throw std::runtime_error("lambda_profile: fewer than 3 finite values on the grid");

    out.second_differences.assign(grid.size(), kNaN);
    double min_sd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double vm = out.values[i - 1], v0 = out.values[i], vp = out.values[i + 1];
        if (!std::isfinite(vm) || !std::isfinite(v0) || !std::isfinite(vp)) continue;
        const double hm = grid[i] - grid[i - 1];
        const double hp = grid[i + 1] - grid[i];
        const double hbar = 0.5 * (hm + hp);
        const double sd = ((vp - v0) / hp - (v0 - vm) / hm) * hbar;
        out.second_differences[i] = sd;
        min_sd = std::min(min_sd, sd);
    }
    out.min_second_difference = min_sd;
    return out;
}

void write_csv(const LambdaProfile& profile, std::ostream& os) {
    os << "p,lambda,second_diff\n";
    char buf[96];
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", profile.grid[i], profile.values[i],
                      profile.second_differences[i]);
        os << buf;
    }
}

GaussianChord gaussian_chord(const ScalarDistribution& dist, double p0, double p1) {
    if (!(p0 < p1)) throw std::invalid_argument("gaussian_chord: need p0 < p1");
    if (p0 == 0.0 || p1 == 0.0)
        throw std::invalid_argument("gaussian_chord: endpoints must be nonzero");
    const auto l0 = lambda_value(dist, p0);
    const auto l1 = lambda_value(dist, p1);
    if (!l0.finite() || !l1.finite())
        throw std::runtime_error("gaussian_chord: Lambda must be finite at both endpoints");
    GaussianChord chord;
    chord.mu = (p1 * l0.value - p0 * l1.value) / (p1 - p0);
    chord.sigma2 = 2.0 * (l1.value - l0.value) / (p1 - p0);
    chord.negative_sigma2 = chord.sigma2 < 0.0;
    return chord;
}

std::vector<double> strict_convexity_gap(const ScalarDistribution& dist, double p0, double p1,
                                         const std::vector<double>& interior_grid,
                                         Orientation orientation) {
    for (double p : interior_grid)
        if (!(p > p0 && p < p1) || p == 0.0)
            throw std::invalid_argument(
                "strict_convexity_gap: interior grid must lie in (p0,p1) away from 0");
    const auto chord = gaussian_chord(dist, p0, p1);
    std::vector<double> gaps;
    gaps.reserve(interior_grid.size());
    for (double p : interior_grid) {
        const auto l = lambda_value(dist, p);
        const double diff = chord.lambda_at(p) - l.value;
        gaps.push_back(orientation == Orientation::convex ? diff : -diff);
    }
    return gaps;
}

MgfBoundCheck mgf_upper_bound_check(const ScalarDistribution& dist, double lambda, double tol) {
    if (lambda > 0.0)
        throw std::domain_error("mgf_upper_bound_check: bound is only claimed for lambda <= 0");
    MgfBoundCheck r;
    if (lambda == 0.0) {
        r.lhs = 1.0;
        r.rhs = 1.0;
        r.holds = true;
        return r;
    }
    const auto l = lambda_value(dist, lambda);
    r.lhs = std::exp(lambda * l.value);
    r.rhs = std::exp(0.5 * lambda * lambda * dist.variance() + lambda * dist.mean());
    r.holds = r.lhs <= r.rhs * (1.0 + tol);
    return r;
}

std::vector<ChernoffRow> chernoff_lower_tail_check(const ScalarDistribution& dist,
                                                   const std::vector<double>& t_grid,
                                                   SeededStream mc, std::size_t N) {
    if (N < 1000) throw std::invalid_argument("chernoff_lower_tail_check: need N >= 1000");
    const double var = dist.variance();
    if (!(var > 0.0) || !std::isfinite(var))
        throw std::invalid_argument("chernoff_lower_tail_check: variance must be positive finite");
    const double m = dist.mean();
    const auto xs = dist.sample(N, mc);
    std::vector<ChernoffRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw std::invalid_argument("chernoff_lower_tail_check: t must be >= 0");
        std::size_t hits = 0;
        for (double x : xs)
            if (x <= m - t) ++hits;
        ChernoffRow row;
        row.t = t;
        row.empirical = static_cast<double>(hits) / static_cast<double>(N);
        row.bound = std::exp(-t * t / (2.0 * var));
        row.mc_se = binomial_se(row.empirical, N);
        row.holds = row.empirical <= row.bound + 3.0 * row.mc_se;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gcx::mgf
