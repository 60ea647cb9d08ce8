#include "gcx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gcx {

std::string to_string(FunctionShape s) {
    switch (s) {
        case FunctionShape::convex: return "convex";
        case FunctionShape::concave: return "concave";
        case FunctionShape::affine: return "affine";
        default: return "unknown";
    }
}

bool shape_probe(const ConvexFunctionOracle& oracle, SeededStream stream, std::size_t probes,
                 double tol, double scale) {
    if (oracle.declared_shape == FunctionShape::unknown) return true;
    CounterRng rng(stream);
    const std::size_t n = oracle.dimension;
    std::vector<double> x(n), y(n), mid(n);
    for (std::size_t k = 0; k < probes; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = scale * rng.next_normal();
            y[i] = scale * rng.next_normal();
            mid[i] = 0.5 * (x[i] + y[i]);
        }
        const double fm = oracle.evaluate(mid);
        const double avg = 0.5 * (oracle.evaluate(x) + oracle.evaluate(y));
        const bool convex_ok = fm <= avg + tol;
        const bool concave_ok = fm >= avg - tol;
        switch (oracle.declared_shape) {
            case FunctionShape::convex:
                if (!convex_ok) return false;
                break;
            case FunctionShape::concave:
                if (!concave_ok) return false;
                break;
            case FunctionShape::affine:
                if (!convex_ok || !concave_ok) return false;
                break;
            default: break;
        }
    }
    return true;
}

ConvexFunctionOracle oracle_affine(double slope, double intercept) {
    return {[slope, intercept](std::span<const double> x) { return slope * x[0] + intercept; },
            FunctionShape::affine, 1,
            "affine(" + std::to_string(slope) + "," + std::to_string(intercept) + ")"};
}

ConvexFunctionOracle oracle_square() {
    return {[](std::span<const double> x) { return x[0] * x[0]; }, FunctionShape::convex, 1,
            "square"};
}

ConvexFunctionOracle oracle_abs() {
    return {[](std::span<const double> x) { return std::abs(x[0]); }, FunctionShape::convex, 1,
            "abs"};
}

ConvexFunctionOracle oracle_exp() {
    return {[](std::span<const double> x) { return std::exp(x[0]); }, FunctionShape::convex, 1,
            "exp"};
}

ConvexFunctionOracle oracle_softplus() {
    return {[](std::span<const double> x) {
                const double z = x[0];
                return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
            },
            FunctionShape::convex, 1, "softplus"};
}

ConvexFunctionOracle oracle_sum(std::size_t n) {
    return {[](std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); },
            FunctionShape::convex, n, "sum"};
}

ConvexFunctionOracle oracle_max(std::size_t n) {
    return {[](std::span<const double> x) { return *std::max_element(x.begin(), x.end()); },
            FunctionShape::convex, n, "max"};
}

ConvexFunctionOracle oracle_translation(std::vector<double> a) {
    double norm2 = 0.0;
    for (double v : a) norm2 += v * v;
    const std::size_t n = a.size();
    return {[a = std::move(a), norm2](std::span<const double> x) {
                double dot = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * x[i];
                return dot - 0.5 * norm2;
            },
            FunctionShape::affine, n, "translation"};
}

}  // namespace gcx
