#include "gcx/cones.hpp"

#include "gcx/nnls.hpp"
#include "gcx/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace gcx::cones {

namespace {

void validate(const PolyhedralCone& c) {
    if (c.dimension == 0) throw std::invalid_argument("cone: dimension must be positive");
    if (!c.has_generators() && !c.has_halfspaces())
        throw std::invalid_argument("cone: need a generator or halfspace description");
    if (c.has_generators()) {
        if (static_cast<std::size_t>(c.generators.rows()) != c.dimension)
            throw std::invalid_argument("cone: generator rows must equal the dimension");
        for (Eigen::Index j = 0; j < c.generators.cols(); ++j)
            if (c.generators.col(j).norm() == 0.0)
                throw std::invalid_argument("cone: zero generator column");
    }
    if (c.has_halfspaces() && static_cast<std::size_t>(c.halfspaces.cols()) != c.dimension)
        throw std::invalid_argument("cone: halfspace columns must equal the dimension");
    if (c.has_generators() && c.has_halfspaces()) {
        const Eigen::MatrixXd prod = c.halfspaces * c.generators;
        if (prod.maxCoeff() > 1e-10)
            throw std::invalid_argument("cone: a generator violates a declared halfspace");
    }
}

Eigen::MatrixXd unit_columns(const Eigen::MatrixXd& V) {
    Eigen::MatrixXd U = V;
    for (Eigen::Index j = 0; j < U.cols(); ++j) U.col(j).normalize();
    return U;
}

// Columns that occur in +- pairs (after normalization) span lineality
// directions; every face of the cone contains them.
std::vector<int> lineality_columns(const Eigen::MatrixXd& unit) {
    std::vector<int> lin;
    for (Eigen::Index i = 0; i < unit.cols(); ++i) {
        for (Eigen::Index j = 0; j < unit.cols(); ++j) {
            if (i == j) continue;
            if ((unit.col(i) + unit.col(j)).norm() <= 1e-10) {
                lin.push_back(static_cast<int>(i));
                break;
            }
        }
    }
    return lin;
}

struct RankDecision {
    int rank = 0;
    bool flagged = false;
};

RankDecision rank_with_band(const Eigen::MatrixXd& M, double tau_rank) {
    RankDecision rd;
    if (M.cols() == 0) return rd;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv[0] : 0.0;
    if (smax == 0.0) return rd;
    const double cut = tau_rank * smax;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > cut) ++rd.rank;
        if (sv[i] >= cut / 10.0 && sv[i] <= cut * 10.0) rd.flagged = true;
    }
    return rd;
}

}  // namespace

PolyhedralCone PolyhedralCone::from_generators(Eigen::MatrixXd V) {
    PolyhedralCone c;
    c.dimension = static_cast<std::size_t>(V.rows());
    c.generators = std::move(V);
    validate(c);
    return c;
}

PolyhedralCone PolyhedralCone::from_halfspaces(Eigen::MatrixXd A) {
    PolyhedralCone c;
    c.dimension = static_cast<std::size_t>(A.cols());
    c.halfspaces = std::move(A);
    c.generators.resize(c.dimension, 0);
    validate(c);
    return c;
}

PolyhedralCone PolyhedralCone::orthant(std::size_t n) {
    return from_generators(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                     static_cast<Eigen::Index>(n)));
}

PolyhedralCone PolyhedralCone::subspace(std::size_t n, std::size_t d) {
    if (d > n) throw std::invalid_argument("subspace: d must not exceed n");
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(2 * d));
    for (std::size_t i = 0; i < d; ++i) {
        V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * i)) = 1.0;
        V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(2 * i + 1)) = -1.0;
    }
    return from_generators(std::move(V));
}

PolyhedralCone PolyhedralCone::random_cone(std::size_t n, std::size_t m, SeededStream stream) {
    CounterRng rng(stream);
    Eigen::MatrixXd V(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (Eigen::Index j = 0; j < V.cols(); ++j)
        for (Eigen::Index i = 0; i < V.rows(); ++i) V(i, j) = rng.next_normal();
    return from_generators(std::move(V));
}

PolyhedralCone PolyhedralCone::product(const PolyhedralCone& a, const PolyhedralCone& b) {
    if (!a.has_generators() || !b.has_generators())
        throw std::invalid_argument("product: both cones need generator forms");
    const auto na = static_cast<Eigen::Index>(a.dimension);
    const auto nb = static_cast<Eigen::Index>(b.dimension);
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(na + nb, a.generators.cols() + b.generators.cols());
    V.topLeftCorner(na, a.generators.cols()) = a.generators;
    V.bottomRightCorner(nb, b.generators.cols()) = b.generators;
    return from_generators(std::move(V));
}

ProjectionResult project_cone(const PolyhedralCone& cone, const Eigen::VectorXd& x,
                              const Thresholds& thr) {
    validate(cone);
    if (static_cast<std::size_t>(x.size()) != cone.dimension)
        throw std::invalid_argument("project_cone: point dimension mismatch");
    if (!x.allFinite()) throw std::invalid_argument("project_cone: non-finite point");

    ProjectionResult res;
    const double norm = x.norm();
    if (norm == 0.0) {
        res.projection = Eigen::VectorXd::Zero(x.size());
        res.coefficients = Eigen::VectorXd::Zero(cone.has_generators() ? cone.generators.cols() : 0);
        return res;
    }
    const Eigen::VectorXd xu = x / norm;

    if (cone.has_generators()) {
        const Eigen::MatrixXd U = unit_columns(cone.generators);
        const auto sol = nnls(U, xu, thr.nnls_tol);
        if (!sol.converged)
            throw std::runtime_error("project_cone: NNLS did not converge (iterations " +
                                     std::to_string(sol.iterations) + ", kkt residual " +
                                     std::to_string(sol.kkt_residual) + ")");
        res.projection = norm * sol.fitted;
        res.coefficients = norm * sol.coefficients;
        for (Eigen::Index j = 0; j < sol.coefficients.size(); ++j) {
            const double lam = sol.coefficients[j];
            if (lam > thr.tau_act) res.active.push_back(static_cast<int>(j));
            if (lam >= thr.tau_act / 10.0 && lam <= thr.tau_act * 10.0) res.ambiguous = true;
        }
        return res;
    }

    // Halfspace-only: project onto the polar cone (generated by the rows of
    // A) and use the Moreau decomposition.
    PolyhedralCone polar = PolyhedralCone::from_generators(cone.halfspaces.transpose());
    const auto polar_proj = project_cone(polar, x, thr);
    res.projection = x - polar_proj.projection;
    res.via_dual = true;
    const Eigen::VectorXd yu = res.projection.norm() > 0.0
                                   ? Eigen::VectorXd(res.projection / res.projection.norm())
                                   : Eigen::VectorXd::Zero(x.size());
    const Eigen::MatrixXd rows = unit_columns(cone.halfspaces.transpose()).transpose();
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const double s = std::abs(rows.row(i).dot(yu));
        if (s <= thr.tau_act) res.active.push_back(static_cast<int>(i));
        if (s >= thr.tau_act / 10.0 && s <= thr.tau_act * 10.0) res.ambiguous = true;
    }
    return res;
}

PolyhedralCone dual_cone(const PolyhedralCone& cone) {
    if (!cone.has_generators())
        throw std::invalid_argument(
            "dual_cone: generator form required (dual generator enumeration is unsupported)");
    return PolyhedralCone::from_halfspaces(cone.generators.transpose());
}

namespace {

FaceDimension classify_face(const PolyhedralCone& cone, const ProjectionResult& proj,
                            const Thresholds& thr) {
    FaceDimension fd;
    fd.flagged = proj.ambiguous;

    if (cone.has_generators()) {
        const Eigen::MatrixXd U = unit_columns(cone.generators);
        std::vector<int> cols = lineality_columns(U);
        for (int a : proj.active) {
            bool seen = false;
            for (int c : cols)
                if (c == a) seen = true;
            if (!seen) cols.push_back(a);
        }
        Eigen::MatrixXd sub(U.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k)
            sub.col(static_cast<Eigen::Index>(k)) = U.col(cols[k]);
        const auto rd = rank_with_band(sub, thr.tau_rank);
        fd.dim = rd.rank;
        fd.flagged = fd.flagged || rd.flagged;
        return fd;
    }

    // Halfspace form: the face containing the projection in its relative
    // interior has the affine hull {y : a_i y = 0 for active rows}, so its
    // dimension is n minus the rank of the active rows.
    Eigen::MatrixXd act(static_cast<Eigen::Index>(proj.active.size()), cone.halfspaces.cols());
    for (std::size_t k = 0; k < proj.active.size(); ++k)
        act.row(static_cast<Eigen::Index>(k)) = cone.halfspaces.row(proj.active[k]);
    const auto rd = rank_with_band(act.transpose(), thr.tau_rank);
    fd.dim = static_cast<int>(cone.dimension) - rd.rank;
    fd.flagged = fd.flagged || rd.flagged;
    return fd;
}

}  // namespace

FaceDimension face_dimension(const PolyhedralCone& cone, const Eigen::VectorXd& x,
                             const Thresholds& thr) {
    return classify_face(cone, project_cone(cone, x, thr), thr);
}

ConicProfile estimate_profile(const PolyhedralCone& cone, std::size_t N, SeededStream stream,
                              const Thresholds& thr) {
    if (N < 1000) throw std::invalid_argument("estimate_profile: need N >= 1e3");
    validate(cone);
    const std::size_t n = cone.dimension;

    ConicProfile prof;
    prof.samples = N;
    prof.stream = stream;
    prof.v.assign(n + 1, 0.0);
    prof.se_v.assign(n + 1, 0.0);

    CounterRng rng(stream);
    Eigen::VectorXd z(static_cast<Eigen::Index>(n));
    std::vector<double> dims;
    dims.reserve(N);
    std::vector<double> sqnorms;
    sqnorms.reserve(N);
    std::size_t flagged = 0;

    for (std::size_t i = 0; i < N; ++i) {
        for (Eigen::Index d = 0; d < z.size(); ++d) z[d] = rng.next_normal();
        const auto proj = project_cone(cone, z, thr);
        sqnorms.push_back(proj.projection.squaredNorm());
        const auto fd = classify_face(cone, proj, thr);
        if (fd.flagged) {
            ++flagged;
            continue;
        }
        dims.push_back(static_cast<double>(fd.dim));
        prof.v[static_cast<std::size_t>(fd.dim)] += 1.0;
    }

    const double kept = static_cast<double>(dims.size());
    for (std::size_t k = 0; k <= n; ++k) {
        prof.v[k] /= kept;
        prof.se_v[k] = binomial_se(prof.v[k], dims.size());
    }
    const auto sd = summarize(dims);
    prof.delta_facedim = sd.mean;
    prof.se_delta_facedim = sd.se_mean;
    prof.var_v = sd.variance;
    prof.se_var_v = sd.se_variance;
    const auto sq = summarize(sqnorms);
    prof.delta_sqnorm = sq.mean;
    prof.se_delta_sqnorm = sq.se_mean;
    prof.var_sqnorm = sq.variance;
    prof.se_var_sqnorm = sq.se_variance;
    prof.flagged_fraction = static_cast<double>(flagged) / static_cast<double>(N);
    return prof;
}

VarianceIdentity variance_identity_check(const PolyhedralCone& cone, std::size_t N,
                                         SeededStream stream, const Thresholds& thr) {
    const auto prof = estimate_profile(cone, N, stream, thr);
    VarianceIdentity vi;
    vi.var_v = prof.var_v;
    vi.rhs = prof.var_sqnorm - 2.0 * prof.delta_sqnorm;
    vi.combined_se = std::sqrt(prof.se_var_v * prof.se_var_v + prof.se_var_sqnorm * prof.se_var_sqnorm +
                               4.0 * prof.se_delta_sqnorm * prof.se_delta_sqnorm);
    vi.agree = std::abs(vi.var_v - vi.rhs) <= 3.0 * vi.combined_se;
    return vi;
}

std::vector<MgfIdentityRow> mgf_identity_check(const PolyhedralCone& cone,
                                               const std::vector<double>& eta_grid, std::size_t N,
                                               SeededStream stream, const Thresholds& thr) {
    if (N < 1000) throw std::invalid_argument("mgf_identity_check: need N >= 1e3");
    validate(cone);
    const std::size_t n = cone.dimension;

    // Face-dimension samples for the left side.
    const auto prof = estimate_profile(cone, N, stream, thr);

    std::vector<MgfIdentityRow> rows;
    rows.reserve(eta_grid.size());
    Eigen::VectorXd z(static_cast<Eigen::Index>(n));
    std::uint64_t sub = 1;
    for (double eta : eta_grid) {
        MgfIdentityRow row;
        row.eta = eta;
        row.xi = 0.5 * (1.0 - std::exp(-2.0 * eta));

        double lhs = 0.0, lhs_var = 0.0;
        {
            // E e^{eta V} from the estimated pmf; variance from the spread.
            double m1 = 0.0, m2 = 0.0;
            for (std::size_t k = 0; k <= n; ++k) {
                const double e = std::exp(eta * static_cast<double>(k));
                m1 += prof.v[k] * e;
                m2 += prof.v[k] * e * e;
            }
            lhs = m1;
            lhs_var = std::max(0.0, m2 - m1 * m1);
        }
        row.lhs = lhs;
        const double se_lhs =
            std::sqrt(lhs_var / static_cast<double>(N));

        // Right side on a fresh sub-stream; tilted proposal when xi > 0.
        CounterRng rng(substream(stream, sub++));
        const double xi = row.xi;
        const double tau = xi > 0.0 ? 1.0 / std::sqrt(1.0 - 2.0 * xi) : 1.0;
        std::vector<double> vals(N);
        for (std::size_t i = 0; i < N; ++i) {
            for (Eigen::Index d = 0; d < z.size(); ++d) z[d] = tau * rng.next_normal();
            const auto proj = project_cone(cone, z, thr);
            const double pi2 = proj.projection.squaredNorm();
            if (xi > 0.0) {
                const double logw = static_cast<double>(n) * std::log(tau) + xi * (pi2 - z.squaredNorm());
                vals[i] = std::exp(logw);
            } else {
                vals[i] = std::exp(xi * pi2);
            }
        }
        const auto s = summarize(vals);
        row.rhs = s.mean;
        const double se_rhs = s.se_mean;
        row.rel_err = std::abs(row.lhs - row.rhs) / std::abs(row.lhs);
        row.combined_rel_se = std::sqrt(se_lhs * se_lhs + se_rhs * se_rhs) / std::abs(row.lhs);
        row.holds = row.rel_err <= std::max(0.01, 3.0 * row.combined_rel_se);
        rows.push_back(row);
    }
    return rows;
}

std::vector<TailRow> tail_bound_check(const PolyhedralCone& cone, const std::vector<double>& t_grid,
                                      std::size_t N, SeededStream stream, const Thresholds& thr) {
    const auto prof = estimate_profile(cone, N, stream, thr);
    const std::size_t n = cone.dimension;
    const auto proxies = variance_proxies(prof, n);
    const double delta = prof.delta_facedim;

    // Recover the face-dimension sample pmf for empiricals.
    std::vector<TailRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        TailRow row;
        row.t = t;
        double lower = 0.0, upper = 0.0, two = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double kd = static_cast<double>(k);
            if (kd <= delta - t) lower += prof.v[k];
            if (kd >= delta + t) upper += prof.v[k];
            if (std::abs(kd - delta) >= t) two += prof.v[k];
        }
        row.empirical_lower = lower;
        row.empirical_upper = upper;
        row.empirical_two_sided = two;
        row.bound_lower = std::exp(-t * t / (2.0 * proxies.lower));
        row.bound_upper = std::exp(-t * t / (2.0 * proxies.upper));
        row.bound_two_sided = 2.0 * std::exp(-t * t / (2.0 * proxies.two_sided));
        const double se3 = 3.0 * binomial_se(std::max({lower, upper, two}),
                                             static_cast<std::size_t>(
                                                 static_cast<double>(N) * (1.0 - prof.flagged_fraction)));
        row.holds = lower <= row.bound_lower + se3 && upper <= row.bound_upper + se3 &&
                    two <= row.bound_two_sided + se3;
        rows.push_back(row);
    }
    return rows;
}

VarianceProxies variance_proxies(const ConicProfile& profile, std::size_t n) {
    VarianceProxies p;
    const double delta = profile.delta_facedim;
    p.lower = profile.var_v + 2.0 * delta;
    p.upper = profile.var_v + 2.0 * (static_cast<double>(n) - delta);
    p.two_sided = profile.var_v + 2.0 * std::max(delta, static_cast<double>(n) - delta);
    return p;
}

}  // namespace gcx::cones
