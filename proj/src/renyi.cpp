#include "gcx/renyi.hpp"

#include "gcx/gauss.hpp"
#include "gcx/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gcx::renyi {

RelativeDensity::RelativeDensity(ConvexFunctionOracle f, std::size_t quadrature_size,
                                 std::size_t mc_samples, SeededStream mc_stream)
    : f_(std::move(f)),
      quad_size_(quadrature_size),
      mc_samples_(mc_samples),
      mc_stream_(mc_stream) {
    if (!f_.evaluate) throw std::invalid_argument("RelativeDensity: oracle has no evaluator");
    if (f_.declared_shape != FunctionShape::concave && f_.declared_shape != FunctionShape::affine)
        throw std::invalid_argument("RelativeDensity: relative log-density must be concave");
    const std::size_t n = f_.dimension;
    if (n == 0) throw std::invalid_argument("RelativeDensity: dimension must be positive");
    use_quadrature_ = n <= 3;

    if (use_quadrature_) {
        const auto q = gauss_hermite(quad_size_);
        const std::size_t m = q.nodes.size();
        std::size_t total = 1;
        for (std::size_t d = 0; d < n; ++d) total *= m;
        f_values_.resize(total);
        log_weights_.resize(total);
        std::vector<double> x(n);
        std::vector<std::size_t> idx(n, 0);
        for (std::size_t flat = 0; flat < total; ++flat) {
            double logw = 0.0;
            for (std::size_t d = 0; d < n; ++d) {
                x[d] = q.nodes[idx[d]];
                logw += std::log(q.weights[idx[d]]);
            }
            f_values_[flat] = f_.evaluate(x);
            log_weights_[flat] = logw;
            for (std::size_t d = 0; d < n; ++d) {
                if (++idx[d] < m) break;
                idx[d] = 0;
            }
        }
    } else {
        if (mc_samples_ < 1000) throw std::invalid_argument("RelativeDensity: need >= 1e3 samples");
        CounterRng rng(mc_stream_);
        f_values_.resize(mc_samples_);
        std::vector<double> x(n);
        for (std::size_t i = 0; i < mc_samples_; ++i) {
            for (std::size_t d = 0; d < n; ++d) x[d] = rng.next_normal();
            f_values_[i] = f_.evaluate(x);
        }
        log_weights_.assign(mc_samples_, -std::log(static_cast<double>(mc_samples_)));
    }

    raw_normalization_ = expect([](double t) { return std::exp(t); });
    if (std::abs(raw_normalization_ - 1.0) > 1e-6) {
        log_shift_ = std::log(raw_normalization_);
        for (double& v : f_values_) v -= log_shift_;
    }
}

double RelativeDensity::expect(const std::function<double(double)>& g_of_f,
                               double* stderr_out) const {
    if (use_quadrature_) {
        double acc = 0.0;
        for (std::size_t i = 0; i < f_values_.size(); ++i)
            acc += std::exp(log_weights_[i]) * g_of_f(f_values_[i]);
        if (stderr_out) *stderr_out = 0.0;
        return acc;
    }
    // Monte Carlo with e^f as control variate: its mean is 1 after the
    // normalization shift.
    const std::size_t n = f_values_.size();
    std::vector<double> g(n), cv(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = g_of_f(f_values_[i]);
        cv[i] = std::exp(f_values_[i]);
    }
    const auto sg = summarize(g);
    const auto sc = summarize(cv);
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) cov += (g[i] - sg.mean) * (cv[i] - sc.mean);
    cov /= static_cast<double>(n - 1);
    const double c = sc.variance > 0.0 ? cov / sc.variance : 0.0;
    const double est = sg.mean - c * (sc.mean - 1.0);
    if (stderr_out) {
        const double resid_var =
            std::max(0.0, sg.variance - (sc.variance > 0.0 ? cov * cov / sc.variance : 0.0));
        *stderr_out = std::sqrt(resid_var / static_cast<double>(n));
    }
    return est;
}

DivergenceReport renyi_divergence(const RelativeDensity& rd, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("renyi_divergence: alpha must be positive");
    if (alpha == 1.0) return kl_divergence(rd);
    DivergenceReport rep;
    rep.alpha = alpha;
    rep.method = rd.uses_quadrature() ? "quadrature" : "mc";
    double se = 0.0;
    const double moment = rd.expect([alpha](double t) { return std::exp(alpha * t); }, &se);
    if (!std::isfinite(moment) || moment <= 0.0) {
        rep.divergent = true;
        rep.value = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.value = std::log(moment) / (alpha - 1.0);
    if (!rd.uses_quadrature()) rep.stderr_value = se / moment / std::abs(alpha - 1.0);
    return rep;
}

DivergenceReport kl_divergence(const RelativeDensity& rd) {
    DivergenceReport rep;
    rep.alpha = 1.0;
    rep.method = rd.uses_quadrature() ? "quadrature" : "mc";
    double se = 0.0;
    rep.value = rd.expect([](double t) { return t * std::exp(t); }, &se);
    if (!rd.uses_quadrature()) rep.stderr_value = se;
    if (!std::isfinite(rep.value)) rep.divergent = true;
    return rep;
}

double hellinger_squared(const RelativeDensity& rd) {
    const double d_half = renyi_divergence(rd, 0.5).value;
    return 2.0 * (1.0 - std::exp(-0.5 * d_half));
}

double chi_squared(const RelativeDensity& rd) {
    const double d2 = renyi_divergence(rd, 2.0).value;
    return std::expm1(d2);
}

ComparisonReport comparison_check(const RelativeDensity& rd, double alpha, double beta) {
    if (!(0.0 < alpha && alpha < beta))
        throw std::domain_error("comparison_check: need 0 < alpha < beta");
    ComparisonReport rep;
    rep.d_alpha = renyi_divergence(rd, alpha).value;
    rep.d_beta = renyi_divergence(rd, beta).value;
    rep.ratio_bound_slack = (beta / alpha) * rep.d_alpha - rep.d_beta;
    rep.monotone_slack = rep.d_beta - rep.d_alpha;
    return rep;
}

ChainReport chain_check(const RelativeDensity& rd) {
    ChainReport rep;
    rep.d2 = renyi_divergence(rd, 2.0).value;
    rep.two_d1 = 2.0 * kl_divergence(rd).value;
    rep.four_d_half = 4.0 * renyi_divergence(rd, 0.5).value;
    return rep;
}

}  // namespace gcx::renyi
