#include "gcx/nnls.hpp"

#include <stdexcept>
#include <vector>

namespace gcx {

namespace {

Eigen::VectorXd solve_subproblem(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                 const std::vector<int>& passive) {
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(passive.size()));
    for (std::size_t k = 0; k < passive.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(passive[k]);
    return Ap.colPivHouseholderQr().solve(b);
}

}  // namespace

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol,
                int max_iterations) {
    const Eigen::Index m = A.cols();
    if (A.rows() != b.size()) throw std::invalid_argument("nnls: dimension mismatch");
    if (max_iterations < 0) max_iterations = 50 * static_cast<int>(m);

    NnlsResult res;
    res.coefficients = Eigen::VectorXd::Zero(m);
    std::vector<bool> in_passive(static_cast<std::size_t>(m), false);
    std::vector<int> passive;

    const double scale = std::max(1.0, b.norm());
    Eigen::VectorXd w = A.transpose() * b;

    int iter = 0;
    while (iter < max_iterations) {
        // Most violated dual coordinate among the active (zero) set.
        int best = -1;
        double best_w = tol * scale;
        for (Eigen::Index j = 0; j < m; ++j) {
            if (!in_passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
                best_w = w[j];
                best = static_cast<int>(j);
            }
        }
        if (best < 0) {
            res.converged = true;
            break;
        }
        in_passive[static_cast<std::size_t>(best)] = true;
        passive.push_back(best);

        while (iter++ < max_iterations) {
            Eigen::VectorXd s = solve_subproblem(A, b, passive);
            double alpha = 1.0;
            int drop = -1;
            for (std::size_t k = 0; k < passive.size(); ++k) {
                const auto kk = static_cast<Eigen::Index>(k);
                if (s[kk] <= 0.0) {
                    const double lam = res.coefficients[passive[k]];
                    const double step = lam / (lam - s[kk]);
                    if (step < alpha) {
                        alpha = step;
                        drop = static_cast<int>(k);
                    }
                }
            }
            if (drop < 0) {
                for (std::size_t k = 0; k < passive.size(); ++k)
                    res.coefficients[passive[k]] = s[static_cast<Eigen::Index>(k)];
                break;
            }
            for (std::size_t k = 0; k < passive.size(); ++k) {
                const auto kk = static_cast<Eigen::Index>(k);
                double& lam = res.coefficients[passive[k]];
                lam += alpha * (s[kk] - lam);
            }
            res.coefficients[passive[static_cast<std::size_t>(drop)]] = 0.0;
            in_passive[static_cast<std::size_t>(passive[static_cast<std::size_t>(drop)])] = false;
            passive.erase(passive.begin() + drop);
        }
        w = A.transpose() * (b - A * res.coefficients);
    }
    res.iterations = iter;
    res.fitted = A * res.coefficients;
    double kkt = 0.0;
    for (Eigen::Index j = 0; j < m; ++j)
        if (!in_passive[static_cast<std::size_t>(j)]) kkt = std::max(kkt, w[j]);
    res.kkt_residual = kkt;
    if (!res.converged && kkt <= tol * scale) res.converged = true;
    return res;
}

NnlsResult simplex_least_squares(const Eigen::MatrixXd& V, const Eigen::VectorXd& x, double tol,
                                 int max_iterations) {
    const Eigen::Index m = V.cols();
    if (V.rows() != x.size()) throw std::invalid_argument("simplex_least_squares: dimension mismatch");
    if (m == 0) throw std::invalid_argument("simplex_least_squares: empty vertex set");
    if (max_iterations < 0) max_iterations = 50 * static_cast<int>(m) + 50;

    NnlsResult res;
    res.coefficients = Eigen::VectorXd::Zero(m);

    // Start at the nearest vertex.
    int start = 0;
    double best = (V.col(0) - x).squaredNorm();
    for (Eigen::Index j = 1; j < m; ++j) {
        const double d = (V.col(j) - x).squaredNorm();
        if (d < best) {
            best = d;
            start = static_cast<int>(j);
        }
    }
    std::vector<int> support{start};
    res.coefficients[start] = 1.0;
    const double scale = std::max(1.0, x.norm() + V.colwise().norm().maxCoeff());

    int iter = 0;
    while (iter++ < max_iterations) {
        // Affine minimizer on the current support: KKT system for
        // min |V_S s - x|^2 with 1's = 1.
        const auto k = static_cast<Eigen::Index>(support.size());
        Eigen::MatrixXd Vs(V.rows(), k);
        for (Eigen::Index j = 0; j < k; ++j) Vs.col(j) = V.col(support[static_cast<std::size_t>(j)]);
        Eigen::MatrixXd kkt(k + 1, k + 1);
        kkt.topLeftCorner(k, k) = 2.0 * Vs.transpose() * Vs;
        kkt.topRightCorner(k, 1).setOnes();
        kkt.bottomLeftCorner(1, k).setOnes();
        kkt(k, k) = 0.0;
        Eigen::VectorXd rhs(k + 1);
        rhs.head(k) = 2.0 * Vs.transpose() * x;
        rhs[k] = 1.0;
        Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
        Eigen::VectorXd s = sol.head(k);

        bool feasible = true;
        for (Eigen::Index j = 0; j < k; ++j)
            if (s[j] < -1e-14) feasible = false;

        if (!feasible) {
            // Step from current coefficients toward s until a coordinate
            // hits zero, then drop it.
            double alpha = 1.0;
            int drop = -1;
            for (Eigen::Index j = 0; j < k; ++j) {
                const double cur = res.coefficients[support[static_cast<std::size_t>(j)]];
                if (s[j] < cur) {
                    const double step = cur / (cur - s[j]);
                    if (step < alpha) {
                        alpha = step;
                        drop = static_cast<int>(j);
                    }
                }
            }
            for (Eigen::Index j = 0; j < k; ++j) {
                double& lam = res.coefficients[support[static_cast<std::size_t>(j)]];
                lam += alpha * (s[j] - lam);
            }
            if (drop >= 0) {
                res.coefficients[support[static_cast<std::size_t>(drop)]] = 0.0;
                support.erase(support.begin() + drop);
            }
            continue;
        }

        for (Eigen::Index j = 0; j < k; ++j)
            res.coefficients[support[static_cast<std::size_t>(j)]] = std::max(0.0, s[j]);
        const Eigen::VectorXd proj = V * res.coefficients;
        // Optimality over the hull: <x - proj, v_i - proj> <= 0 for all i.
        const Eigen::VectorXd r = x - proj;
        double worst = tol * scale * scale;
        int add = -1;
        const double base = r.dot(proj);
        for (Eigen::Index j = 0; j < m; ++j) {
            const double gain = r.dot(V.col(j)) - base;
            if (gain > worst) {
                bool already = false;
                for (int sidx : support)
                    if (sidx == static_cast<int>(j)) already = true;
                if (!already) {
                    worst = gain;
                    add = static_cast<int>(j);
                }
            }
        }
        res.kkt_residual = add >= 0 ? worst : 0.0;
        if (add < 0) {
            res.converged = true;
            break;
        }
        support.push_back(add);
    }
    res.iterations = iter;
    res.fitted = V * res.coefficients;
    return res;
}

}  // namespace gcx
