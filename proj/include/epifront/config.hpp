#pragma once

#include <string>
#include <vector>

#include "epifront/free_boundary.hpp"

namespace epifront {

/// Flat sectioned key=value run configuration. Unknown keys are rejected
/// and every validation problem is reported, not just the first.
struct RunConfig {
    // [model]
    double d1 = 1.0, d2 = 1.0;
    double a11 = 1.0, a12 = 2.0, a22 = 1.0;
    double mu = 1.0, rho = 1.0;
    double beta = 1.0, kappa = 1.0;

    // [kernel.J1] / [kernel.J2] / [kernel.K]
    KernelSpec j1, j2, kk;

    // [init]
    std::string init_shape = "tent";
    double h0 = 1.0, amp_u = 1.0, amp_v = 1.0;

    // [numerics]
    double dx = 0.02, dt = 0.01, T = 100.0;
    long stride = 50;
    double l = 5.0;
    double l_max = 20.0, lstar_tol = 1e-3;
    double eigen_tol = 1e-12, steady_tol = 1e-8;
    double eps_front = 1e-6, window = 10.0, mass_eps_factor = 1e-8;
    double mu_lo = 1e-3, mu_hi = 50.0, horizon = 400.0, mustar_tol = 0.03;
    double T_short = 0.0, fp_tol = 1e-12;
    std::vector<double> mus; // sweep targets
    long threads = 1;
    double ode_u0 = 0.1, ode_v0 = 0.1;

    Grid grid() const { return build_grid(dx); }
    ModelParams to_params() const;
    InitialData initial_data(const Grid& g) const;

    /// Canonical serialization (fixed key order, full precision); the
    /// content hash of this text tags sweep rows for provenance.
    std::string canonical_text() const;
    std::string content_hash() const;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

} // namespace epifront
