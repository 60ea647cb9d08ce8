#pragma once

#include "gcx/random.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gcx {

enum class FunctionShape { convex, concave, affine, unknown };

std::string to_string(FunctionShape s);

// Black-box evaluator for a function on R^n together with the shape the
// caller vouches for. The library never differentiates it; shape claims are
// spot-checked with randomized midpoint probes.
struct ConvexFunctionOracle {
    std::function<double(std::span<const double>)> evaluate;
    FunctionShape declared_shape = FunctionShape::unknown;
    std::size_t dimension = 1;
    std::string name;  // used in reports and fixture listings

    double operator()(std::span<const double> x) const { return evaluate(x); }
    double operator()(double x) const { return evaluate(std::span<const double>(&x, 1)); }
};

// Midpoint test f((x+y)/2) <= (f(x)+f(y))/2 + tol on `probes` random pairs
// drawn from N(0, scale^2 I). Returns true when no probe violates the
// declared shape (affine is checked both ways, unknown always passes).
bool shape_probe(const ConvexFunctionOracle& oracle, SeededStream stream, std::size_t probes = 128,
                 double tol = 1e-9, double scale = 2.0);

// Built-in one-dimensional oracles.
ConvexFunctionOracle oracle_affine(double slope, double intercept);
ConvexFunctionOracle oracle_square();       // z -> z^2
ConvexFunctionOracle oracle_abs();          // z -> |z|
ConvexFunctionOracle oracle_exp();          // z -> e^z
ConvexFunctionOracle oracle_softplus();     // z -> log(1+e^z)

// n-dimensional helpers used by the adaptation checks.
ConvexFunctionOracle oracle_sum(std::size_t n);          // x -> sum x_i
ConvexFunctionOracle oracle_max(std::size_t n);          // x -> max x_i
ConvexFunctionOracle oracle_translation(std::vector<double> a);  // x -> <a,x> - |a|^2/2

}  // namespace gcx
