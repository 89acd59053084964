#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "epifront/kernels.hpp"

namespace epifront {

enum class ReactionFamily { Monod };

/// Infection-rate nonlinearity. The Monod form G(z) = beta z / (1 + z/kappa)
/// has G(0) = 0, G' > 0 and strictly decreasing G(z)/z in closed form;
/// beta is G'(0). Other families with these properties can be added here.
struct Reaction {
    ReactionFamily family = ReactionFamily::Monod;
    double beta = 1.0;
    double kappa = 1.0;

    double operator()(double z) const { return beta * z / (1.0 + z / kappa); }
    double derivative(double z) const {
        const double d = 1.0 + z / kappa;
        return beta / (d * d);
    }
    double slope_at_zero() const { return beta; }
};

Reaction make_reaction(double beta, double kappa);

struct ModelParams {
    double d1 = 1.0;  // agent dispersal rate
    double d2 = 1.0;  // host dispersal rate
    double a11 = 1.0; // agent death rate
    double a12 = 2.0; // agent growth coefficient
    double a22 = 1.0; // host fatality rate
    double mu = 1.0;  // front expansion coefficient
    double rho = 1.0; // host weight in the front flux, >= 0
    Kernel J1, J2, K;
    Reaction reaction;

    void check() const; // throws InvalidParam on a bad rate
};

/// Basic reproduction number a12 G'(0) / (a11 a22).
double r0(const ModelParams& p);

/// The positive equilibrium (u*, v*) when r0 > 1: G(u*)/u* = a11 a22 / a12
/// and v* = (a11/a12) u*. Empty when r0 <= 1.
std::optional<std::pair<double, double>> equilibrium(const ModelParams& p);

/// Sampled checks on a reaction candidate: value zero at the origin,
/// positive slope, strictly decreasing G(z)/z, and the large-z ratio below
/// a11 a22 / a12.
ValidationReport validate_reaction_fn(const std::function<double(double)>& G,
                                      const std::function<double(double)>& dG,
                                      double a11, double a12, double a22,
                                      std::span<const double> z_samples);
ValidationReport validate_reaction(const ModelParams& p, std::span<const double> z_samples);

struct OdeSample {
    double t, u, v;
};

/// Classical fourth-order one-step integration of the space-free system
///   u' = -a11 u + a12 v,   v' = -a22 v + G(u).
/// Samples every `stride` steps (plus the final state).
std::vector<OdeSample> ode_trajectory(const ModelParams& p, double u0, double v0, double dt,
                                      double T, long stride = 1);

} // namespace epifront
