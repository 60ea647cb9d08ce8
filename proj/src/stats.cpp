#include "gcx/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace gcx {

MomentSummary summarize(std::span<const double> values) {
    MomentSummary s;
    s.n = values.size();
    if (s.n == 0) return s;
    double acc = 0.0;
    for (double v : values) acc += v;
    s.mean = acc / static_cast<double>(s.n);
    if (s.n == 1) return s;
    double m2 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    const double n = static_cast<double>(s.n);
    s.variance = m2 / (n - 1.0);
    m2 /= n;
    m4 /= n;
    s.se_mean = std::sqrt(s.variance / n);
    const double var_of_var = (m4 - m2 * m2) / n;
    s.se_variance = var_of_var > 0.0 ? std::sqrt(var_of_var) : 0.0;
    return s;
}

double binomial_se(double p_hat, std::size_t n) {
    if (n == 0) throw std::invalid_argument("binomial_se: empty sample");
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
}

double binomial_half_pmf(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    const double log_choose = std::lgamma(static_cast<double>(n) + 1.0) -
                              std::lgamma(static_cast<double>(k) + 1.0) -
                              std::lgamma(static_cast<double>(n - k) + 1.0);
    return std::exp(log_choose - static_cast<double>(n) * std::log(2.0));
}

}  // namespace gcx
