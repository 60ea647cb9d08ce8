#include "gcx/gauss.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gcx {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
}  // namespace

double std_normal_cdf(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("std_normal_cdf: non-finite input");
    // erfc form is cancellation-free on the tail side of the argument.
    if (t < 0.0) return 0.5 * std::erfc(-t * kInvSqrt2);
    return 1.0 - 0.5 * std::erfc(t * kInvSqrt2);
}

double std_normal_pdf(double t) {
    return kInvSqrt2Pi * std::exp(-0.5 * t * t);
}

namespace {

// Lower-tail probability with full relative accuracy, used so the Newton
// correction below stays meaningful far into the tails.
double lower_tail(double t) {
    return 0.5 * std::erfc(-t * kInvSqrt2);
}

// Rational initial approximation (Acklam-style minimax over (0,1)).
double quantile_estimate(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("std_normal_quantile: p must lie in (0,1)");
    // Work on the lower half so the residual below is computed without
    // cancellation; mirror at the end.
    const bool flip = p > 0.5;
    const double pl = flip ? 1.0 - p : p;
    double x = quantile_estimate(pl);
    for (int it = 0; it < 2; ++it) {
        const double err = lower_tail(x) - pl;
        const double dens = std_normal_pdf(x);
        if (dens <= 0.0) break;
        double step = err / dens;
        // Halley refinement; the second-order term is x*step^2/2.
        step /= 1.0 + 0.5 * x * step;
        x -= step;
    }
    return flip ? -x : x;
}

GaussianQuadrature gauss_hermite(std::size_t m) {
    if (m < 1 || m > 200) throw std::invalid_argument("gauss_hermite: m must be in [1,200]");
    // Golub-Welsch on the Jacobi matrix of the probabilists' Hermite
    // recurrence: diagonal 0, off-diagonal sqrt(k).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 1 ? m - 1 : 0));
    for (std::size_t k = 1; k < m; ++k) sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(static_cast<double>(k));

    GaussianQuadrature q;
    q.nodes.resize(m);
    q.weights.resize(m);
    if (m == 1) {
        q.nodes[0] = 0.0;
        q.weights[0] = 1.0;
        return q;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("gauss_hermite: tridiagonal eigen decomposition failed");
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    for (std::size_t i = 0; i < m; ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        q.nodes[i] = values[ii];
        const double v0 = vectors(0, ii);
        q.weights[i] = v0 * v0;  // columns are unit vectors, so these sum to 1
    }
    // Symmetrize: nodes of an even rule come in +- pairs and the smallest
    // weights live in the far tail; averaging the mirrored entries removes
    // the eigensolver's asymmetric rounding.
    for (std::size_t i = 0, j = m - 1; i < j; ++i, --j) {
        const double node = 0.5 * (q.nodes[j] - q.nodes[i]);
        q.nodes[i] = -node;
        q.nodes[j] = node;
        const double w = 0.5 * (q.weights[i] + q.weights[j]);
        q.weights[i] = w;
        q.weights[j] = w;
    }
    if (m % 2 == 1) q.nodes[m / 2] = 0.0;
    return q;
}

double chi_mean(std::size_t n) {
    if (n == 0) throw std::invalid_argument("chi_mean: order must be positive");
    const double half_n = 0.5 * static_cast<double>(n);
    return std::exp(0.5 * std::numbers::ln2_v<double> + std::lgamma(half_n + 0.5) - std::lgamma(half_n));
}

double log_sum_exp(const std::vector<double>& terms) {
    double m = -std::numeric_limits<double>::infinity();
    for (double t : terms) m = std::max(m, t);
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - m);
    return m + std::log(acc);
}

}  // namespace gcx
