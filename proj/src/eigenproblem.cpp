#include "epifront/eigenproblem.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace epifront {

namespace detail {

DominantEig dominant_eigenpair(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                               long n, double tol, long max_applies) {
    const long m = std::min<long>(n, 80); // Krylov subspace per restart
    Eigen::MatrixXd V(n, m + 1);
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd q = Eigen::VectorXd::Ones(n);
    q.normalize();

    long applies = 0;
    double theta = 0.0;
    Eigen::VectorXd x = q;

    while (applies < max_applies) {
        V.col(0) = q;
        long j = 0;
        bool breakdown = false;
        for (; j < m && applies < max_applies; ++j) {
            Eigen::VectorXd w = apply(V.col(j));
            ++applies;
            // twice-through Gram-Schmidt keeps the basis orthonormal
            Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
            w.noalias() -= V.leftCols(j + 1) * h;
            Eigen::VectorXd h2 = V.leftCols(j + 1).transpose() * w;
            w.noalias() -= V.leftCols(j + 1) * h2;
            h += h2;
            H.col(j).head(j + 1) = h;
            const double beta = w.norm();
            H(j + 1, j) = beta;
            if (beta < 1e-14 * std::max(1.0, std::abs(theta))) {
                ++j;
                breakdown = true;
                break;
            }
            V.col(j + 1) = w / beta;
        }
        if (j == 0) break;

        Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(j, j));
        long best = 0;
        for (long i = 1; i < j; ++i)
            if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
        theta = es.eigenvalues()[best].real();
        Eigen::VectorXd y = es.eigenvectors().col(best).real();
        x.noalias() = V.leftCols(j) * y;
        x /= x.cwiseAbs().maxCoeff();

        Eigen::VectorXd r = apply(x) - theta * x;
        ++applies;
        const double res = r.cwiseAbs().maxCoeff();
        if (res <= tol * std::max(1.0, std::abs(theta)) || breakdown)
            return {theta, x, applies};
        q = x.normalized();
    }
    throw NoConvergence("dominant_eigenpair: no convergence within the apply budget");
}

namespace {

// sign-fix and positivity cleanup for a converged Perron vector
Eigen::VectorXd positive_normalized(Eigen::VectorXd v) {
    if (v.sum() < 0.0) v = -v;
    v = v.cwiseAbs();
    v /= v.maxCoeff();
    return v;
}

} // namespace

} // namespace detail

std::pair<double, Eigen::VectorXd> k_principal(const Kernel& K, double l, const Grid& grid) {
    const IntervalMesh mesh = interval_mesh(grid, l);
    const KernelBand band = sample_band(K, mesh.delta);
    auto apply = [&](const Eigen::VectorXd& f) { return apply_conv(band, mesh.w, f); };
    auto dom = detail::dominant_eigenpair(apply, mesh.size(), 1e-12, 50000);
    Eigen::VectorXd theta = detail::positive_normalized(dom.vector);
    if (theta.minCoeff() <= 0.0)
        throw NoConvergence("k_principal: eigenfunction lost strict positivity");
    return {dom.value, theta};
}

std::pair<double, double> lambda1_closed(const ModelParams& p, double lambda_tilde) {
    const double s1 = p.d1 + p.a11;
    const double s2 = p.d2 + p.a22;
    const double gp0 = p.reaction.slope_at_zero();
    const double disc = std::sqrt((s1 - s2) * (s1 - s2) + 4.0 * p.a12 * gp0 * lambda_tilde);
    const double lam1 = 0.5 * (s1 + s2 - disc);
    const double lam2 = 0.5 * (s1 + s2 + disc);
    if (lambda_tilde > 0.0 && !((s2 - lam1) / gp0 > 0.0))
        throw InvalidParam("lambda1_closed: delta1 must be positive");
    return {lam1, lam2};
}

namespace {

struct CoupledApply {
    // matrix-free apply of the shifted coupled operator on a closed mesh
    const ModelParams& p;
    const IntervalMesh& mesh;
    KernelBand b1, b2, bk;
    double shift;

    CoupledApply(const ModelParams& p_, const IntervalMesh& mesh_)
        : p(p_), mesh(mesh_), b1(sample_band(p_.J1, mesh_.delta)),
          b2(sample_band(p_.J2, mesh_.delta)), bk(sample_band(p_.K, mesh_.delta)),
          shift(std::max(p_.d1 + p_.a11, p_.d2 + p_.a22)) {}

    Eigen::VectorXd operator()(const Eigen::VectorXd& phi) const {
        const long n = mesh.size();
        Eigen::VectorXd out(2 * n);
        const Eigen::VectorXd phi1 = phi.head(n);
        const Eigen::VectorXd phi2 = phi.tail(n);
        out.head(n) = p.d1 * apply_conv(b1, mesh.w, phi1) + (shift - p.d1 - p.a11) * phi1 +
                      p.a12 * apply_conv(bk, mesh.w, phi2);
        out.tail(n) = p.reaction.slope_at_zero() * phi1 + p.d2 * apply_conv(b2, mesh.w, phi2) +
                      (shift - p.d2 - p.a22) * phi2;
        return out;
    }
};

} // namespace

EigenResult lambda0(const ModelParams& p, double l, const Grid& grid, double tol,
                    long max_applies) {
    p.check();
    const IntervalMesh mesh = interval_mesh(grid, l);
    const long n = mesh.size();
    const CoupledApply A(p, mesh);

    auto dom = detail::dominant_eigenpair([&](const Eigen::VectorXd& v) { return A(v); }, 2 * n,
                                          tol, max_applies);
    Eigen::VectorXd theta = detail::positive_normalized(dom.vector);
    if (theta.minCoeff() <= 0.0) {
        // one extra pass through the positive operator restores strict signs
        theta = detail::positive_normalized(A(theta));
        ++dom.applies;
    }

    EigenResult res;
    res.lambda0 = dom.value - A.shift;
    res.theta1 = theta.head(n);
    res.theta2 = theta.tail(n);
    res.residual = (A(theta) - dom.value * theta).cwiseAbs().maxCoeff();
    res.iterations = dom.applies + 1;
    if (theta.minCoeff() <= 0.0)
        throw NoConvergence("lambda0: eigenfunction lost strict positivity");
    return res;
}

namespace {

// Workspace for r(alpha): dense K-convolution assembled once, one LU per alpha.
struct ResolventComposition {
    const ModelParams& p;
    IntervalMesh mesh;
    Eigen::MatrixXd CK;
    KernelBand b1, b2;
    double lambda1;

    ResolventComposition(const ModelParams& p_, double l, const Grid& grid)
        : p(p_), mesh(interval_mesh(grid, l)), CK(conv_matrix(p_.K, mesh)),
          b1(sample_band(p_.J1, mesh.delta)), b2(sample_band(p_.J2, mesh.delta)) {
        lambda1 = lambda1_closed(p, k_principal(p.K, l, grid).first).first;
    }

    double r_of(double alpha, double tol, long max_applies) const {
        if (alpha <= -lambda1 + 1e-12)
            throw SingularResolvent("r_alpha: alpha must exceed -lambda1");
        const double s1 = p.d1 + p.a11 + alpha;
        const double s2 = p.d2 + p.a22 + alpha;
        const double gp0 = p.reaction.slope_at_zero();
        const double c = s1 * s2 / (p.a12 * gp0);
        const long n = mesh.size();
        Eigen::MatrixXd S = -CK;
        S.diagonal().array() += c;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(S);

        auto apply = [&](const Eigen::VectorXd& phi) {
            const Eigen::VectorXd phi1 = phi.head(n);
            const Eigen::VectorXd phi2 = phi.tail(n);
            const Eigen::VectorXd rhs = phi1 / p.a12 + (s1 / (p.a12 * gp0)) * phi2;
            const Eigen::VectorXd psi2 = lu.solve(rhs);
            const Eigen::VectorXd psi1 = (s2 * psi2 - phi2) / gp0;
            Eigen::VectorXd out(2 * n);
            out.head(n) = p.d1 * apply_conv(b1, mesh.w, psi1);
            out.tail(n) = p.d2 * apply_conv(b2, mesh.w, psi2);
            return out;
        };
        return detail::dominant_eigenpair(apply, 2 * n, tol, max_applies).value;
    }
};

} // namespace

double r_alpha(const ModelParams& p, double l, double alpha, const Grid& grid, double tol,
               long max_applies) {
    p.check();
    return ResolventComposition(p, l, grid).r_of(alpha, tol, max_applies);
}

SpectralCurve spectral_curve(const ModelParams& p, double l, const Grid& grid,
                             const std::vector<double>& alphas) {
    ResolventComposition comp(p, l, grid);
    SpectralCurve curve;
    for (double a : alphas) {
        curve.alphas.push_back(a);
        curve.r_values.push_back(comp.r_of(a, 1e-12, 50000));
    }
    return curve;
}

double find_alpha0(const ModelParams& p, double l, const Grid& grid, double tol) {
    p.check();
    ResolventComposition comp(p, l, grid);
    auto r = [&](double a) { return comp.r_of(a, 1e-12, 50000); };

    // walk toward -lambda1 until r > 1, then expand up until r < 1
    double lo = -comp.lambda1 + 1.0;
    double step = 0.5;
    while (r(lo) <= 1.0) {
        lo = -comp.lambda1 + step;
        step *= 0.5;
        if (step < 1e-12) throw NoBracket("find_alpha0: no alpha with r(alpha) > 1");
    }
    double hi = lo + 1.0;
    double span = 1.0;
    while (r(hi) >= 1.0) {
        span *= 2.0;
        hi = lo + span;
        if (span > 1e6) throw NoBracket("find_alpha0: no alpha with r(alpha) < 1");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (r(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LstarResult find_lstar(const ModelParams& p, const Grid& grid, double l_max, double tol) {
    p.check();
    if (r0(p) <= 1.0)
        throw SubcriticalModel("find_lstar: r0 <= 1, the principal eigenvalue stays negative");
    if (!(tol > 0.0) || !(l_max > 0.0)) throw InvalidParam("find_lstar: bad l_max or tol");

    auto lam = [&](double l) { return lambda0(p, l, grid).lambda0; };

    double lo = 2.0 * grid.dx;
    double lam_lo = lam(lo);
    if (lam_lo >= 0.0) // critical length below grid resolution
        return {lo, lo, lo, lam_lo, lam_lo};

    double hi = std::max(l_max, lo * 2.0);
    double lam_hi = lam(hi);
    int expansions = 0;
    while (lam_hi < 0.0 && expansions < 6) {
        hi *= 2.0;
        lam_hi = lam(hi);
        ++expansions;
    }
    if (lam_hi < 0.0)
        throw NoBracket("find_lstar: lambda0 still negative after expanding l_max");

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double lm = lam(mid);
        if (lm > 0.0) {
            hi = mid;
            lam_hi = lm;
        } else {
            lo = mid;
            lam_lo = lm;
        }
    }
    return {0.5 * (lo + hi), lo, hi, lam_lo, lam_hi};
}

} // namespace epifront
