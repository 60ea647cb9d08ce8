#include "gcx/distribution.hpp"

#include "gcx/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gcx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this |p| the division by p in (1/p) log E e^{pX} amplifies rounding
// faster than the value departs from the mean, so the mean convention wins.
constexpr double kTinyP = 1e-8;
// The gamma_1 mass outside [-14,14] is ~1e-44; sublevel searches stay inside.
constexpr double kSupportBound = 14.0;

std::vector<double> trapezoid_weights(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> w(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = 0.5 * (x[i + 1] - x[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    return w;
}

}  // namespace

bool LambdaResult::finite() const { return std::isfinite(value); }

ScalarDistribution ScalarDistribution::gaussian(double mu, double sigma2) {
    if (!(sigma2 >= 0.0) || !std::isfinite(mu) || !std::isfinite(sigma2))
        throw std::invalid_argument("gaussian: mean must be finite and variance nonnegative");
    ScalarDistribution d;
    d.kind_ = Kind::gaussian;
    d.p0_ = mu;
    d.p1_ = sigma2;
    return d;
}

ScalarDistribution ScalarDistribution::poisson(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("poisson: rate must be positive");
    ScalarDistribution d;
    d.kind_ = Kind::poisson;
    d.p0_ = rate;
    return d;
}

ScalarDistribution ScalarDistribution::exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate))
        throw std::invalid_argument("exponential: rate must be positive");
    ScalarDistribution d;
    d.kind_ = Kind::exponential;
    d.p0_ = rate;
    return d;
}

ScalarDistribution ScalarDistribution::pushforward(ConvexFunctionOracle phi,
                                                   std::size_t quadrature_size) {
    if (!phi.evaluate) throw std::invalid_argument("pushforward: oracle has no evaluator");
    if (phi.dimension != 1)
        throw std::invalid_argument("pushforward: oracle must be one-dimensional");
    ScalarDistribution d;
    d.kind_ = Kind::pushforward;
    d.phi_ = std::move(phi);
    d.quad_size_ = quadrature_size;
    return d;
}

ScalarDistribution ScalarDistribution::density_grid(std::vector<double> x,
                                                    std::vector<double> density) {
    if (x.size() != density.size() || x.size() < 2)
        throw std::invalid_argument("density_grid: need matching grids with >= 2 points");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1]))
            throw std::invalid_argument("density_grid: grid must be strictly increasing");
    double mass = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(density[i] >= 0.0))
            throw std::invalid_argument("density_grid: density values must be nonnegative");
    }
    const auto w = trapezoid_weights(x);
    for (std::size_t i = 0; i < x.size(); ++i) mass += w[i] * density[i];
    if (std::abs(mass - 1.0) > 1e-8)
        throw std::invalid_argument("density_grid: trapezoid mass deviates from 1 beyond 1e-8");
    ScalarDistribution d;
    d.kind_ = Kind::density_grid;
    d.grid_ = std::move(x);
    d.values_ = std::move(density);
    return d;
}

ScalarDistribution ScalarDistribution::sample_set(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("sample_set: empty sample");
    for (double v : samples)
        if (!std::isfinite(v)) throw std::invalid_argument("sample_set: non-finite sample value");
    std::sort(samples.begin(), samples.end());
    ScalarDistribution d;
    d.kind_ = Kind::sample_set;
    d.grid_ = std::move(samples);
    return d;
}

std::string ScalarDistribution::describe() const {
    switch (kind_) {
        case Kind::gaussian:
            return "gaussian(" + std::to_string(p0_) + "," + std::to_string(p1_) + ")";
        case Kind::poisson: return "poisson(" + std::to_string(p0_) + ")";
        case Kind::exponential: return "exponential(" + std::to_string(p0_) + ")";
        case Kind::pushforward: return "pushforward(" + phi_.name + ")";
        case Kind::density_grid: return "density_grid[" + std::to_string(grid_.size()) + "]";
        case Kind::sample_set: return "sample_set[" + std::to_string(grid_.size()) + "]";
    }
    return "?";
}

double ScalarDistribution::mean() const {
    if (moment_cache_) return moment_cache_->first;
    switch (kind_) {
        case Kind::gaussian: return p0_;
        case Kind::poisson: return p0_;
        case Kind::exponential: return 1.0 / p0_;
        case Kind::pushforward: {
            const auto q = gauss_hermite(quad_size_);
            return q.integrate([&](double z) { return phi_(z); });
        }
        case Kind::density_grid: {
            const auto w = trapezoid_weights(grid_);
            double m = 0.0;
            for (std::size_t i = 0; i < grid_.size(); ++i) m += w[i] * values_[i] * grid_[i];
            return m;
        }
        case Kind::sample_set: {
            double acc = 0.0;
            for (double v : grid_) acc += v;
            return acc / static_cast<double>(grid_.size());
        }
    }
    return 0.0;
}

double ScalarDistribution::variance() const {
    if (moment_cache_) return moment_cache_->second;
    switch (kind_) {
        case Kind::gaussian: return p1_;
        case Kind::poisson: return p0_;
        case Kind::exponential: return 1.0 / (p0_ * p0_);
        case Kind::pushforward: {
            const auto q = gauss_hermite(quad_size_);
            const double m = q.integrate([&](double z) { return phi_(z); });
            return q.integrate([&](double z) {
                const double d = phi_(z) - m;
                return d * d;
            });
        }
        case Kind::density_grid: {
            const auto w = trapezoid_weights(grid_);
            const double m = mean();
            double acc = 0.0;
            for (std::size_t i = 0; i < grid_.size(); ++i) {
                const double d = grid_[i] - m;
                acc += w[i] * values_[i] * d * d;
            }
            return acc;
        }
        case Kind::sample_set: {
            const double m = mean();
            double acc = 0.0;
            for (double v : grid_) acc += (v - m) * (v - m);
            return grid_.size() > 1 ? acc / static_cast<double>(grid_.size() - 1) : 0.0;
        }
    }
    return 0.0;
}

namespace {

// The sublevel set {phi <= t} of a convex 1-D function is an interval;
// locate its endpoints by minimizing phi (golden section) and bisecting the
// crossing on each flank.
struct Interval {
    double lo, hi;
    bool empty;
};

double golden_min(const ConvexFunctionOracle& phi, double a, double b, double* arg) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = phi(x1), f2 = phi(x2);
    for (int it = 0; it < 160; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = phi(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = phi(x2);
        }
    }
    *arg = 0.5 * (a + b);
    return phi(*arg);
}

double bisect_crossing(const ConvexFunctionOracle& phi, double level, double below, double above) {
    // phi(below) <= level < phi(above); returns the crossing point.
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (below + above);
        if (phi(mid) <= level)
            below = mid;
        else
            above = mid;
        if (std::abs(above - below) < 1e-14 * std::max(1.0, std::abs(below))) break;
    }
    return 0.5 * (below + above);
}

Interval convex_sublevel(const ConvexFunctionOracle& phi, double t) {
    double zmin = 0.0;
    const double fmin = golden_min(phi, -kSupportBound, kSupportBound, &zmin);
    if (fmin > t) return {0.0, 0.0, true};
    double lo = -kSupportBound;
    if (phi(lo) > t) lo = bisect_crossing(phi, t, zmin, lo);
    double hi = kSupportBound;
    if (phi(hi) > t) hi = bisect_crossing(phi, t, zmin, hi);
    return {lo, hi, false};
}

}  // namespace

double ScalarDistribution::cdf(double t) const {
    if (!std::isfinite(t)) throw std::invalid_argument("cdf: non-finite input");
    switch (kind_) {
        case Kind::gaussian: {
            if (p1_ == 0.0) return t >= p0_ ? 1.0 : 0.0;
            return std_normal_cdf((t - p0_) / std::sqrt(p1_));
        }
        case Kind::poisson: {
            if (t < 0.0) return 0.0;
            const auto kmax = static_cast<std::size_t>(std::floor(t));
            double term = std::exp(-p0_);
            double acc = term;
            for (std::size_t k = 1; k <= kmax; ++k) {
                term *= p0_ / static_cast<double>(k);
                acc += term;
            }
            return std::min(acc, 1.0);
        }
        case Kind::exponential: return t <= 0.0 ? 0.0 : -std::expm1(-p0_ * t);
        case Kind::pushforward: {
            switch (phi_.declared_shape) {
                case FunctionShape::affine: {
                    const double at_zero = phi_(0.0);
                    const double slope = phi_(1.0) - at_zero;
                    if (slope == 0.0) return t >= at_zero ? 1.0 : 0.0;
                    const double z = (t - at_zero) / slope;
                    return slope > 0.0 ? std_normal_cdf(z) : 1.0 - std_normal_cdf(z);
                }
                case FunctionShape::convex: {
                    const auto iv = convex_sublevel(phi_, t);
                    if (iv.empty) return 0.0;
                    return std_normal_cdf(iv.hi) - std_normal_cdf(iv.lo);
                }
                case FunctionShape::concave: {
                    // {phi <= t} is the complement of an open interval.
                    ConvexFunctionOracle neg{
                        [this](std::span<const double> x) { return -phi_.evaluate(x); },
                        FunctionShape::convex, 1, phi_.name};
                    const auto iv = convex_sublevel(neg, -t);  // {-phi < -t} = {phi > t}
                    if (iv.empty) return 1.0;
                    return std_normal_cdf(iv.lo) + 1.0 - std_normal_cdf(iv.hi);
                }
                default:
                    throw std::invalid_argument(
                        "cdf: pushforward requires a declared convex/concave/affine shape");
            }
        }
        case Kind::density_grid: {
            if (t <= grid_.front()) return 0.0;
            if (t >= grid_.back()) return 1.0;
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
                if (t >= grid_[i + 1]) {
                    acc += 0.5 * (values_[i] + values_[i + 1]) * (grid_[i + 1] - grid_[i]);
                } else {
                    const double frac = (t - grid_[i]) / (grid_[i + 1] - grid_[i]);
                    const double ft = values_[i] + frac * (values_[i + 1] - values_[i]);
                    acc += 0.5 * (values_[i] + ft) * (t - grid_[i]);
                    break;
                }
            }
            return std::min(acc, 1.0);
        }
        case Kind::sample_set: {
            // Right-continuous with F = i/(N+1) at the i-th order statistic,
            // which keeps the Gaussian quantile finite at both extremes.
            const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
            const auto below = static_cast<double>(std::distance(grid_.begin(), it));
            return below / (static_cast<double>(grid_.size()) + 1.0);
        }
    }
    return 0.0;
}

std::vector<double> ScalarDistribution::sample(std::size_t n, SeededStream stream) const {
    if (n == 0) throw std::invalid_argument("sample: count must be positive");
    CounterRng rng(stream);
    std::vector<double> out(n);
    switch (kind_) {
        case Kind::gaussian: {
            const double sd = std::sqrt(p1_);
            for (double& v : out) v = p0_ + sd * rng.next_normal();
            break;
        }
        case Kind::poisson: {
            for (double& v : out) {
                const double u = rng.next_uniform();
                double term = std::exp(-p0_);
                double acc = term;
                double k = 0.0;
                while (acc < u && k < 1e6) {
                    k += 1.0;
                    term *= p0_ / k;
                    acc += term;
                }
                v = k;
            }
            break;
        }
        case Kind::exponential:
            for (double& v : out) v = -std::log(rng.next_uniform()) / p0_;
            break;
        case Kind::pushforward:
            for (double& v : out) {
                v = phi_(rng.next_normal());
                if (!std::isfinite(v))
                    throw std::runtime_error("sample: pushforward oracle returned non-finite value");
            }
            break;
        case Kind::density_grid: {
            // Inverse transform on the piecewise-linear CDF.
            std::vector<double> cum(grid_.size(), 0.0);
            for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
                cum[i + 1] = cum[i] + 0.5 * (values_[i] + values_[i + 1]) * (grid_[i + 1] - grid_[i]);
            const double total = cum.back();
            for (double& v : out) {
                const double u = rng.next_uniform() * total;
                const auto it = std::upper_bound(cum.begin(), cum.end(), u);
                const std::size_t j = std::min<std::size_t>(
                    grid_.size() - 2, static_cast<std::size_t>(std::distance(cum.begin(), it)) - 1);
                const double seg = cum[j + 1] - cum[j];
                const double frac = seg > 0.0 ? (u - cum[j]) / seg : 0.5;
                v = grid_[j] + frac * (grid_[j + 1] - grid_[j]);
            }
            break;
        }
        case Kind::sample_set:
            for (double& v : out) {
                const auto idx = static_cast<std::size_t>(rng.next_u64() % grid_.size());
                v = grid_[idx];
            }
            break;
    }
    return out;
}

ScalarDistribution ScalarDistribution::negated() const {
    switch (kind_) {
        case Kind::gaussian: return gaussian(-p0_, p1_);
        case Kind::pushforward: {
            ConvexFunctionOracle neg{
                [phi = phi_](std::span<const double> x) { return -phi.evaluate(x); },
                phi_.declared_shape == FunctionShape::convex    ? FunctionShape::concave
                : phi_.declared_shape == FunctionShape::concave ? FunctionShape::convex
                                                                : phi_.declared_shape,
                1, "-" + phi_.name};
            return pushforward(std::move(neg), quad_size_);
        }
        case Kind::density_grid: {
            std::vector<double> x(grid_.rbegin(), grid_.rend());
            std::vector<double> f(values_.rbegin(), values_.rend());
            for (double& v : x) v = -v;
            return density_grid(std::move(x), std::move(f));
        }
        case Kind::sample_set: {
            std::vector<double> s(grid_);
            for (double& v : s) v = -v;
            return sample_set(std::move(s));
        }
        default:
            throw std::invalid_argument(
                "negated: not a closed form under negation; use samples or a grid");
    }
}

LambdaResult lambda_value(const ScalarDistribution& dist, double p) {
    if (!std::isfinite(p)) throw std::invalid_argument("lambda_value: non-finite p");
    switch (dist.kind()) {
        case ScalarDistribution::Kind::gaussian:
            return {dist.param0() + 0.5 * dist.param1() * p, false};
        case ScalarDistribution::Kind::poisson: {
            if (p == 0.0) return {dist.param0(), false};
            const double e = std::expm1(p);
            if (!std::isfinite(e)) return {kInf, true};
            return {dist.param0() * e / p, false};
        }
        case ScalarDistribution::Kind::exponential: {
            const double rate = dist.param0();
            if (p >= rate) return {kInf, false};
            if (p == 0.0) return {1.0 / rate, false};
            return {-std::log1p(-p / rate) / p, false};
        }
        case ScalarDistribution::Kind::pushforward: {
            if (std::abs(p) < 1e-8) return {dist.mean(), false};
            const auto q = gauss_hermite(dist.quadrature_size());
            std::vector<double> terms(q.nodes.size());
            for (std::size_t i = 0; i < q.nodes.size(); ++i) {
                const double f = dist.oracle()(q.nodes[i]);
                terms[i] = std::log(q.weights[i]) + p * f;
                if (!std::isfinite(f)) return {kInf, true};
            }
            const double lse = log_sum_exp(terms);
            if (!std::isfinite(lse)) return {kInf, true};
            return {lse / p, false};
        }
        case ScalarDistribution::Kind::density_grid: {
            if (std::abs(p) < 1e-8) return {dist.mean(), false};
            const auto& x = dist.grid();
            const auto& f = dist.values();
            std::vector<double> terms;
            terms.reserve(x.size());
            std::vector<double> w(x.size(), 0.0);
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double h = 0.5 * (x[i + 1] - x[i]);
                w[i] += h;
                w[i + 1] += h;
            }
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (w[i] * f[i] > 0.0) terms.push_back(std::log(w[i] * f[i]) + p * x[i]);
            }
            const double lse = log_sum_exp(terms);
            if (!std::isfinite(lse) && lse > 0) return {kInf, true};
            return {lse / p, false};
        }
        case ScalarDistribution::Kind::sample_set: {
            if (std::abs(p) < 1e-8) return {dist.mean(), false};
            const auto& s = dist.grid();
            std::vector<double> terms(s.size());
            bool overflow = false;
            for (std::size_t i = 0; i < s.size(); ++i) {
                terms[i] = p * s[i];
                if (!std::isfinite(terms[i])) overflow = true;
            }
            if (overflow) return {kInf, true};
            const double lse = log_sum_exp(terms) - std::log(static_cast<double>(s.size()));
            return {lse / p, false};
        }
    }
    return {0.0, false};
}

}  // namespace gcx
