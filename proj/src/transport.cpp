#include "gcx/transport.hpp"

#include "gcx/gauss.hpp"
#include "gcx/stats.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace gcx::transport {

double distribution_function(const ScalarDistribution& dist, double t) {
    return dist.cdf(t);
}

MonotoneMap gaussian_transport_map(const ScalarDistribution& dist,
                                   const std::vector<double>& grid) {
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("gaussian_transport_map: grid must be strictly increasing");
    MonotoneMap map;
    map.grid.reserve(grid.size());
    map.values.reserve(grid.size());
    for (double t : grid) {
        const double F = dist.cdf(t);
        if (F <= 0.0 || F >= 1.0) {
            ++map.excluded_points;
            continue;
        }
        map.grid.push_back(t);
        map.values.push_back(std_normal_quantile(F));
    }
    for (std::size_t i = 0; i + 1 < map.values.size(); ++i) {
        if (!(map.values[i] < map.values[i + 1])) {
            map.strictly_increasing = false;
            break;
        }
    }
    return map;
}

void write_csv(const MonotoneMap& map, std::ostream& os) {
    os << "t,T,second_diff\n";
    char buf[96];
    for (std::size_t i = 0; i < map.grid.size(); ++i) {
        double sd = std::numeric_limits<double>::quiet_NaN();
        if (i > 0 && i + 1 < map.grid.size()) {
            const double hm = map.grid[i] - map.grid[i - 1];
            const double hp = map.grid[i + 1] - map.grid[i];
            sd = ((map.values[i + 1] - map.values[i]) / hp -
                  (map.values[i] - map.values[i - 1]) / hm) *
                 0.5 * (hm + hp);
        }
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", map.grid[i], map.values[i], sd);
        os << buf;
    }
}

ConcavityResult concavity_test(const MonotoneMap& map, double tol) {
    if (map.grid.size() < 3) throw std::invalid_argument("concavity_test: need >= 3 grid points");
    ConcavityResult r;
    r.is_concave = true;
    for (std::size_t i = 1; i + 1 < map.grid.size(); ++i) {
        const double sl_left = (map.values[i] - map.values[i - 1]) / (map.grid[i] - map.grid[i - 1]);
        const double sl_right =
            (map.values[i + 1] - map.values[i]) / (map.grid[i + 1] - map.grid[i]);
        const double increase = sl_right - sl_left;
        if (increase > r.max_violation) r.max_violation = increase;
        if (increase > tol && r.is_concave) {
            r.is_concave = false;
            r.witness = std::array<std::size_t, 3>{i - 1, i, i + 1};
        }
    }
    return r;
}

ScalarDistribution convex_pushforward(const ConvexFunctionOracle& phi, std::size_t N,
                                      SeededStream stream) {
    if (phi.declared_shape != FunctionShape::convex && phi.declared_shape != FunctionShape::affine)
        throw std::invalid_argument("convex_pushforward: oracle must be declared convex");
    if (phi.dimension != 1)
        throw std::invalid_argument("convex_pushforward: oracle must be one-dimensional");
    CounterRng rng(stream);
    std::vector<double> out(N);
    for (std::size_t i = 0; i < N; ++i) {
        const double z = rng.next_normal();
        out[i] = phi(z);
        if (!std::isfinite(out[i]))
            throw std::runtime_error("convex_pushforward: non-finite oracle value at z=" +
                                     std::to_string(z));
    }
    return ScalarDistribution::sample_set(std::move(out));
}

NormalityScreen normality_screen(const std::vector<double>& values) {
    const auto s = summarize(values);
    NormalityScreen screen;
    screen.mean = s.mean;
    screen.variance = s.variance;
    const double root_n = std::sqrt(static_cast<double>(s.n));
    screen.passes =
        std::abs(s.mean) <= 3.0 / root_n && std::abs(s.variance - 1.0) <= 5.0 / root_n;
    return screen;
}

std::vector<TailRow> exponential_adaptation_check(const ConvexFunctionOracle& f,
                                                  const std::vector<double>& t_grid, std::size_t N,
                                                  SeededStream stream) {
    if (f.declared_shape != FunctionShape::convex && f.declared_shape != FunctionShape::affine)
        throw std::invalid_argument("exponential_adaptation_check: f must be declared convex");
    const std::size_t n = f.dimension;
    if (n == 0 || n > 8)
        throw std::invalid_argument("exponential_adaptation_check: dimension must be in [1,8]");
    CounterRng rng(stream);
    std::vector<double> x(n);
    std::vector<double> fx(N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double a = rng.next_normal();
            const double b = rng.next_normal();
            x[j] = 0.5 * (a * a + b * b);  // standard exponential
        }
        fx[i] = f.evaluate(x);
    }
    const auto s = summarize(fx);
    std::vector<TailRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        std::size_t hits = 0;
        for (double v : fx)
            if (v <= s.mean - t) ++hits;
        TailRow row;
        row.t = t;
        row.empirical = static_cast<double>(hits) / static_cast<double>(N);
        row.bound = std::exp(-t * t / (2.0 * s.variance));
        row.mc_se = binomial_se(row.empirical, N);
        row.holds = row.empirical <= row.bound + 3.0 * row.mc_se;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gcx::transport
