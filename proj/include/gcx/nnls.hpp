#pragma once

#include <Eigen/Dense>

namespace gcx {

struct NnlsResult {
    Eigen::VectorXd coefficients;  // lambda >= 0
    Eigen::VectorXd fitted;        // A * lambda
    int iterations = 0;
    bool converged = false;
    double kkt_residual = 0.0;  // largest positive dual component at exit
};

// Lawson-Hanson active-set solve of min |A x - b| subject to x >= 0.
// Finite termination; iteration cap defaults to 50 per column.
NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol = 1e-10,
                int max_iterations = -1);

// min |V lambda - x| subject to lambda >= 0 and sum lambda = 1 (nearest
// point of the convex hull of the columns of V).
NnlsResult simplex_least_squares(const Eigen::MatrixXd& V, const Eigen::VectorXd& x,
                                 double tol = 1e-10, int max_iterations = -1);

}  // namespace gcx
