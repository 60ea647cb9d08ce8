#pragma once

#include "gcx/random.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace gcx::cones {

// Closed convex polyhedral cone, described by generators (cone = {V l : l >= 0},
// V is n x m) and/or halfspaces (cone = {x : A x <= 0}, A is k x n).
struct PolyhedralCone {
    std::size_t dimension = 0;
    Eigen::MatrixXd generators;  // n x m; zero columns when absent
    Eigen::MatrixXd halfspaces;  // k x n; zero rows when absent

    bool has_generators() const { return generators.cols() > 0; }
    bool has_halfspaces() const { return halfspaces.rows() > 0; }

    static PolyhedralCone from_generators(Eigen::MatrixXd V);
    static PolyhedralCone from_halfspaces(Eigen::MatrixXd A);
    static PolyhedralCone orthant(std::size_t n);
    // Subspace spanned by the first d coordinates, as +-e_i generator pairs.
    static PolyhedralCone subspace(std::size_t n, std::size_t d);
    static PolyhedralCone random_cone(std::size_t n, std::size_t m, SeededStream stream);
    static PolyhedralCone product(const PolyhedralCone& a, const PolyhedralCone& b);
};

// Classification thresholds (applied after normalizing the input point to
// unit norm): coefficients above tau_act count as active, singular values
// above tau_rank * sigma_max count toward the face rank: decisions falling
// in the surrounding decade are flagged as ambiguous.
struct Thresholds {
    double tau_act = 1e-8;
    double tau_rank = 1e-8;
    double nnls_tol = 1e-10;
};

struct ProjectionResult {
    Eigen::VectorXd projection;
    Eigen::VectorXd coefficients;  // generator weights (generator path only)
    std::vector<int> active;       // active generator columns / halfspace rows
    bool ambiguous = false;        // an activity decision fell in the flag band
    bool via_dual = false;         // projected as x - proj onto the polar cone
};

ProjectionResult project_cone(const PolyhedralCone& cone, const Eigen::VectorXd& x,
                              const Thresholds& thr = {});

// Polar cone; requires the generator form and returns the halfspace form
// A = V^T (its projections run through the Moreau identity).
PolyhedralCone dual_cone(const PolyhedralCone& cone);

struct FaceDimension {
    int dim = 0;
    bool flagged = false;  // rank or activity decision inside the ambiguity band
};

FaceDimension face_dimension(const PolyhedralCone& cone, const Eigen::VectorXd& x,
                             const Thresholds& thr = {});

struct ConicProfile {
    std::vector<double> v;         // length n+1
    std::vector<double> se_v;
    double delta_facedim = 0.0;    // mean face dimension
    double se_delta_facedim = 0.0;
    double delta_sqnorm = 0.0;     // mean |Pi(Z)|^2
    double se_delta_sqnorm = 0.0;
    double var_v = 0.0;
    double se_var_v = 0.0;
    double var_sqnorm = 0.0;
    double se_var_sqnorm = 0.0;
    double flagged_fraction = 0.0;
    std::size_t samples = 0;
    SeededStream stream;
};

// Monte Carlo histogram of face dimensions over N Gaussian samples plus the
// two statistical-dimension estimators. N >= 1e3.
ConicProfile estimate_profile(const PolyhedralCone& cone, std::size_t N, SeededStream stream,
                              const Thresholds& thr = {});

struct VarianceIdentity {
    double var_v = 0.0;
    double rhs = 0.0;  // var(|Pi(Z)|^2) - 2 delta
    double combined_se = 0.0;
    bool agree = false;
};

VarianceIdentity variance_identity_check(const PolyhedralCone& cone, std::size_t N,
                                         SeededStream stream, const Thresholds& thr = {});

struct MgfIdentityRow {
    double eta = 0.0;
    double xi = 0.0;
    double lhs = 0.0;  // E e^{eta V}
    double rhs = 0.0;  // E e^{xi |Pi(Z)|^2}
    double rel_err = 0.0;
    double combined_rel_se = 0.0;
    bool holds = false;
};

// For xi > 0 the right side is estimated with an exponential tilt of the
// sampling law (proposal N(0, I/(1-2 xi))), which keeps the estimator's
// variance finite for every cone; plain Monte Carlo otherwise.
std::vector<MgfIdentityRow> mgf_identity_check(const PolyhedralCone& cone,
                                               const std::vector<double>& eta_grid, std::size_t N,
                                               SeededStream stream, const Thresholds& thr = {});

struct TailRow {
    double t = 0.0;
    double empirical_two_sided = 0.0;
    double bound_two_sided = 0.0;
    double empirical_lower = 0.0;
    double bound_lower = 0.0;
    double empirical_upper = 0.0;
    double bound_upper = 0.0;
    bool holds = false;
};

std::vector<TailRow> tail_bound_check(const PolyhedralCone& cone, const std::vector<double>& t_grid,
                                      std::size_t N, SeededStream stream, const Thresholds& thr = {});

// Variance proxies derived from a profile: lower var+2delta, upper
// var+2(n-delta), two-sided var+2 max(delta, n-delta).
struct VarianceProxies {
    double lower = 0.0;
    double upper = 0.0;
    double two_sided = 0.0;
};

VarianceProxies variance_proxies(const ConicProfile& profile, std::size_t n);

}  // namespace gcx::cones
