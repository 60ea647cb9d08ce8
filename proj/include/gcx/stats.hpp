#pragma once

#include <cstddef>
#include <span>

namespace gcx {

// Sample mean/variance with standard errors. The variance stderr comes from
// the delta method, se(var) = sqrt((m4 - var^2)/n), with m4 the fourth
// central moment.
struct MomentSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double se_mean = 0.0;
    double se_variance = 0.0;
};

MomentSummary summarize(std::span<const double> values);

// Standard error of an empirical probability p over n Bernoulli trials.
double binomial_se(double p_hat, std::size_t n);

// pmf of Binomial(n, 1/2) at k.
double binomial_half_pmf(std::size_t n, std::size_t k);

}  // namespace gcx
