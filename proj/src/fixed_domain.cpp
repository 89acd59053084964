#include "epifront/fixed_domain.hpp"

#include <cmath>

namespace epifront {

namespace {

struct FixedStepper {
    const ModelParams& p;
    const IntervalMesh& mesh;
    KernelBand b1, b2, bk;
    double dt;

    FixedStepper(const ModelParams& p_, const IntervalMesh& mesh_, double dt_)
        : p(p_), mesh(mesh_), b1(sample_band(p_.J1, mesh_.delta)),
          b2(sample_band(p_.J2, mesh_.delta)), bk(sample_band(p_.K, mesh_.delta)), dt(dt_) {}

    void step(Eigen::VectorXd& u, Eigen::VectorXd& v) const {
        const Eigen::VectorXd cu = apply_conv(b1, mesh.w, u);
        const Eigen::VectorXd cv = apply_conv(b2, mesh.w, v);
        const Eigen::VectorXd ck = apply_conv(bk, mesh.w, v);
        Eigen::VectorXd gu(u.size());
        for (long i = 0; i < u.size(); ++i) gu[i] = p.reaction(u[i]);
        Eigen::VectorXd un = u + dt * (p.d1 * cu - (p.d1 + p.a11) * u + p.a12 * ck);
        v = v + dt * (p.d2 * cv - (p.d2 + p.a22) * v + gu);
        u = std::move(un);
    }

    // sup-norm defect of the steady equations at (u, v)
    double residual(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
        const Eigen::VectorXd cu = apply_conv(b1, mesh.w, u);
        const Eigen::VectorXd cv = apply_conv(b2, mesh.w, v);
        const Eigen::VectorXd ck = apply_conv(bk, mesh.w, v);
        double r = 0.0;
        for (long i = 0; i < u.size(); ++i) {
            r = std::max(r, std::abs(p.d1 * cu[i] - (p.d1 + p.a11) * u[i] + p.a12 * ck[i]));
            r = std::max(r, std::abs(p.d2 * cv[i] - (p.d2 + p.a22) * v[i] + p.reaction(u[i])));
        }
        return r;
    }
};

} // namespace

std::vector<FixedFrame> evolve_fixed(const ModelParams& p, double l, const Grid& grid,
                                     const Eigen::VectorXd& u0, const Eigen::VectorXd& v0,
                                     double dt, double T, long stride) {
    p.check();
    const IntervalMesh mesh = interval_mesh(grid, l);
    if (u0.size() != mesh.size() || v0.size() != mesh.size())
        throw ShapeMismatch("evolve_fixed: initial fields do not match the mesh");
    if (u0.minCoeff() < 0.0 || v0.minCoeff() < 0.0)
        throw InvalidParam("evolve_fixed: initial fields must be nonnegative");
    if (dt * std::max(p.d1 + p.a11, p.d2 + p.a22) >= 1.0)
        throw StepTooLarge("evolve_fixed: dt * max(d1+a11, d2+a22) must be below 1");
    if (stride < 1) stride = 1;

    const FixedStepper stepper(p, mesh, dt);
    const long nsteps = static_cast<long>(std::llround(T / dt));
    Eigen::VectorXd u = u0, v = v0;
    std::vector<FixedFrame> frames;
    frames.push_back({0.0, u, v});
    for (long k = 0; k < nsteps; ++k) {
        stepper.step(u, v);
        if ((k + 1) % stride == 0 || k + 1 == nsteps)
            frames.push_back({dt * static_cast<double>(k + 1), u, v});
    }
    return frames;
}

SteadyState steady_state(const ModelParams& p, double l, const Grid& grid, double tol,
                         double upper_scale) {
    p.check();
    if (!(tol > 0.0)) throw InvalidParam("steady_state: tol must be positive");
    const IntervalMesh mesh = interval_mesh(grid, l);
    const long n = mesh.size();

    SteadyState out;
    out.l = l;
    out.x = mesh.x;

    const EigenResult eig = lambda0(p, l, grid);
    if (eig.lambda0 <= 0.0) {
        out.kind = SteadyKind::Trivial;
        out.w = Eigen::VectorXd::Zero(n);
        out.z = Eigen::VectorXd::Zero(n);
        return out;
    }

    const auto eq = equilibrium(p); // lambda0 > 0 forces r0 > 1
    if (!eq) throw SubcriticalModel("steady_state: positive eigenvalue with r0 <= 1");
    const double M1 = std::max(1.5, upper_scale) * eq->first;
    const double M2 = M1 * p.a11 / p.a12;

    // largest eps = 2^-k whose scaled eigenpair satisfies the discrete
    // lower-solution inequalities under the upper constants
    const FixedStepper stepper(p, mesh, 0.9 / std::max(p.d1 + p.a11, p.d2 + p.a22));
    const KernelBand b1 = sample_band(p.J1, mesh.delta);
    const KernelBand b2 = sample_band(p.J2, mesh.delta);
    const KernelBand bk = sample_band(p.K, mesh.delta);
    double eps = 1.0;
    bool eps_found = false;
    for (int k = 0; k < 50; ++k, eps *= 0.5) {
        const Eigen::VectorXd t1 = eps * eig.theta1;
        const Eigen::VectorXd t2 = eps * eig.theta2;
        if (t1.maxCoeff() > M1 || t2.maxCoeff() > M2) continue;
        const Eigen::VectorXd e1 = p.d1 * apply_conv(b1, mesh.w, t1) - (p.d1 + p.a11) * t1 +
                                   p.a12 * apply_conv(bk, mesh.w, t2);
        Eigen::VectorXd e2 = p.d2 * apply_conv(b2, mesh.w, t2) - (p.d2 + p.a22) * t2;
        for (long i = 0; i < n; ++i) e2[i] += p.reaction(t1[i]);
        if (e1.minCoeff() >= 0.0 && e2.minCoeff() >= 0.0) {
            eps_found = true;
            break;
        }
    }
    if (!eps_found)
        throw NoConvergence("steady_state: no admissible lower-solution scale found");
    out.eps_lower = eps;

    Eigen::VectorXd uu = Eigen::VectorXd::Constant(n, M1);
    Eigen::VectorXd vu = Eigen::VectorXd::Constant(n, M2);
    Eigen::VectorXd ul = eps * eig.theta1;
    Eigen::VectorXd vl = eps * eig.theta2;

    double margin = 0.0;
    const long max_iters = 500000;
    long k = 0;
    for (; k < max_iters; ++k) {
        const Eigen::VectorXd uu_old = uu, ul_old = ul;
        stepper.step(uu, vu);
        stepper.step(ul, vl);
        margin = std::min(margin, std::min((uu - ul).minCoeff(), (vu - vl).minCoeff()));
        if (margin < -1e-12)
            throw SandwichViolation("steady_state: upper march dipped below lower march");
        const double gap = std::max((uu - ul).cwiseAbs().maxCoeff(),
                                    (vu - vl).cwiseAbs().maxCoeff());
        const double change = std::max((uu - uu_old).cwiseAbs().maxCoeff(),
                                       (ul - ul_old).cwiseAbs().maxCoeff());
        if (gap < tol && change < 0.1 * tol) {
            out.gap = gap;
            break;
        }
    }
    if (k == max_iters)
        throw NoConvergence("steady_state: marches did not meet within the iteration budget");

    out.kind = SteadyKind::Positive;
    out.w = 0.5 * (uu + ul);
    out.z = 0.5 * (vu + vl);
    out.iterations = k + 1;
    out.sandwich_margin = margin;
    out.residual = stepper.residual(out.w, out.z);
    return out;
}

} // namespace epifront
