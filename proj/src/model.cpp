#include "epifront/model.hpp"

#include <cmath>

namespace epifront {

Reaction make_reaction(double beta, double kappa) {
    if (beta <= 0.0) throw InvalidParam("reaction: beta must be positive");
    if (kappa <= 0.0) throw InvalidParam("reaction: kappa must be positive");
    return Reaction{ReactionFamily::Monod, beta, kappa};
}

void ModelParams::check() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw InvalidParam(std::string("model: ") + name + " must be positive");
    };
    positive(d1, "d1");
    positive(d2, "d2");
    positive(a11, "a11");
    positive(a12, "a12");
    positive(a22, "a22");
    positive(mu, "mu");
    if (rho < 0.0) throw InvalidParam("model: rho must be nonnegative");
    positive(reaction.beta, "beta");
    positive(reaction.kappa, "kappa");
}

double r0(const ModelParams& p) { return p.a12 * p.reaction.slope_at_zero() / (p.a11 * p.a22); }

std::optional<std::pair<double, double>> equilibrium(const ModelParams& p) {
    const double R0 = r0(p);
    if (R0 <= 1.0) return std::nullopt;
    // Monod: G(u)/u = beta / (1 + u/kappa) solves to u* = kappa (R0 - 1)
    const double ustar = p.reaction.kappa * (R0 - 1.0);
    return std::make_pair(ustar, p.a11 / p.a12 * ustar);
}

ValidationReport validate_reaction_fn(const std::function<double(double)>& G,
                                      const std::function<double(double)>& dG,
                                      double a11, double a12, double a22,
                                      std::span<const double> z_samples) {
    if (z_samples.empty()) throw InvalidParam("validate_reaction: sample set is empty");

    ValidationReport rep;
    rep.checks.push_back({"zero_at_origin", std::abs(G(0.0)) <= 1e-14, G(0.0)});

    double worst_slope = std::numeric_limits<double>::infinity();
    for (double z : z_samples) worst_slope = std::min(worst_slope, dG(z));
    rep.checks.push_back({"positive_slope", worst_slope > 0.0, worst_slope});

    // strict decrease of G(z)/z over the sorted samples
    std::vector<double> zs(z_samples.begin(), z_samples.end());
    std::sort(zs.begin(), zs.end());
    double worst_drop = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < zs.size(); ++i) {
        if (zs[i] <= 0.0 || zs[i + 1] <= 0.0) continue;
        worst_drop = std::min(worst_drop, G(zs[i]) / zs[i] - G(zs[i + 1]) / zs[i + 1]);
    }
    rep.checks.push_back({"ratio_strictly_decreasing", worst_drop > 0.0, worst_drop});

    const double zmax = zs.back();
    const double limit_gap = a11 * a22 / a12 - G(zmax) / zmax;
    rep.checks.push_back({"ratio_below_a11a22_over_a12", limit_gap > 0.0, limit_gap});
    return rep;
}

ValidationReport validate_reaction(const ModelParams& p, std::span<const double> z_samples) {
    const Reaction& r = p.reaction;
    return validate_reaction_fn([r](double z) { return r(z); },
                                [r](double z) { return r.derivative(z); }, p.a11, p.a12, p.a22,
                                z_samples);
}

std::vector<OdeSample> ode_trajectory(const ModelParams& p, double u0, double v0, double dt,
                                      double T, long stride) {
    p.check();
    if (u0 < 0.0 || v0 < 0.0) throw InvalidParam("ode_trajectory: nonnegative initial data");
    if (dt <= 0.0 || T <= 0.0) throw InvalidParam("ode_trajectory: dt and T must be positive");
    if (dt * std::max(p.a11, p.a22) >= 1.0)
        throw StepTooLarge("ode_trajectory: dt * max(a11, a22) must be below 1");
    if (stride < 1) stride = 1;

    const auto& G = p.reaction;
    auto fu = [&](double u, double v) { return -p.a11 * u + p.a12 * v; };
    auto fv = [&](double u, double v) { return -p.a22 * v + G(u); };

    const long nsteps = static_cast<long>(std::llround(T / dt));
    std::vector<OdeSample> out;
    out.reserve(static_cast<size_t>(nsteps / stride) + 2);
    double u = u0, v = v0;
    out.push_back({0.0, u, v});
    for (long k = 0; k < nsteps; ++k) {
        const double k1u = fu(u, v), k1v = fv(u, v);
        const double k2u = fu(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
        const double k2v = fv(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v);
        const double k3u = fu(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
        const double k3v = fv(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v);
        const double k4u = fu(u + dt * k3u, v + dt * k3v);
        const double k4v = fv(u + dt * k3u, v + dt * k3v);
        u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if ((k + 1) % stride == 0 || k + 1 == nsteps)
            out.push_back({dt * static_cast<double>(k + 1), u, v});
    }
    return out;
}

} // namespace epifront
