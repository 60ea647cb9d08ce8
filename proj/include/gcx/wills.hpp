#pragma once

#include "gcx/random.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace gcx::wills {

// Compact convex set with projection and support oracles plus a declared
// bounding radius (K inside the centered ball of that radius). The radius is
// part of the declaration; probes only validate it.
class ConvexBody {
public:
    enum class Kind { ball, box, polytope, oracle_only };

    // Ball of the given radius (optionally off-center).
    static ConvexBody ball(std::size_t n, double radius, std::vector<double> center = {});
    // Axis box prod_i [0, side_i].
    static ConvexBody box(std::vector<double> sides);
    // Convex hull of the columns of `vertices` (n x v).
    static ConvexBody polytope(Eigen::MatrixXd vertices);
    static ConvexBody from_oracles(std::size_t n,
                                   std::function<Eigen::VectorXd(const Eigen::VectorXd&)> project,
                                   std::function<double(const Eigen::VectorXd&)> support,
                                   double bounding_radius, std::string name = "oracle");
    // The singleton {0}.
    static ConvexBody origin(std::size_t n);

    std::size_t dimension() const { return n_; }
    double bounding_radius() const { return radius_; }
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<double>& box_sides() const { return sides_; }
    double ball_radius() const { return ball_radius_; }
    const Eigen::MatrixXd& vertices() const { return vertices_; }

    Eigen::VectorXd project(const Eigen::VectorXd& x) const;
    double support(const Eigen::VectorXd& theta) const;

    // Same body shifted by c (oracle-only result; intrinsic volumes are
    // translation invariant, which the tests exercise).
    ConvexBody translated(const std::vector<double>& c) const;

private:
    ConvexBody() = default;

    Kind kind_ = Kind::oracle_only;
    std::size_t n_ = 0;
    double radius_ = 0.0;
    std::string name_;
    double ball_radius_ = 0.0;
    std::vector<double> center_;
    std::vector<double> sides_;
    Eigen::MatrixXd vertices_;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> project_;
    std::function<double(const Eigen::VectorXd&)> support_;
};

// f_K(z) = |z|^2/2 - d^2(z, sqrt(2 pi) K)/2, the log integrand whose
// Gaussian mean-exponential is the Wills functional.
double f_K(const ConvexBody& body, const Eigen::VectorXd& z);

struct WillsReport {
    double W_estimate = 0.0;
    double W_se = 0.0;
    double V1_estimate = 0.0;
    double V1_se = 0.0;
    double mean_f = 0.0;
    double var_f = 0.0;
    double mean_f_se = 0.0;
    double var_f_se = 0.0;
    double mcmullen_slack = 0.0;     // e^{V1} - W
    double mcmullen_slack_se = 0.0;
    double reversal_lhs = 0.0;       // log W
    double rhs_main = 0.0;           // var f / 2 + mean f
    double rhs_cor = 0.0;            // var f / 2 + V1 - r^2/2 (declared radius)
    double rhs_cor_lifted = 0.0;     // var f / 2 + V1 - pi r^2 (radius of the lifted body)
    bool main_holds = false;
    bool cor_holds = false;
    std::size_t samples = 0;
    SeededStream stream;
};

// One Monte Carlo pass producing all Wills-functional statistics.
WillsReport wills_mc(const ConvexBody& body, std::size_t N, SeededStream stream);

// Exact intrinsic volumes V_0..V_n for box and ball kinds.
std::vector<double> intrinsic_volumes_closed(const ConvexBody& body);

// V1 by the Gaussian mean-width representation sqrt(2 pi) E h_K(Z).
double v1_mc(const ConvexBody& body, std::size_t N, SeededStream stream, double* se = nullptr);

// e^{V1} - W with a 3-sigma allowance; returns the slack.
double mcmullen_check(const ConvexBody& body, std::size_t N, SeededStream stream,
                      bool* holds = nullptr);

WillsReport reversal_check(const ConvexBody& body, std::size_t N, SeededStream stream);

// Volume of the k-dimensional unit ball.
double unit_ball_volume(std::size_t k);

}  // namespace gcx::wills
