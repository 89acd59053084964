#pragma once

#include <vector>

#include "epifront/eigenproblem.hpp"

namespace epifront {

enum class SteadyKind { Trivial, Positive };

struct SteadyState {
    double l = 0.0;
    SteadyKind kind = SteadyKind::Trivial;
    Eigen::VectorXd x;        // mesh nodes
    Eigen::VectorXd w, z;     // steady fields (zero for Trivial)
    double gap = 0.0;         // upper-lower sup distance at termination
    double residual = 0.0;    // sup-norm defect in the steady equations
    double eps_lower = 0.0;   // scale of the eigenfunction lower start
    long iterations = 0;
    double sandwich_margin = 0.0; // most negative (upper - lower) seen, >= -1e-12
};

struct FixedFrame {
    double t;
    Eigen::VectorXd u, v;
};

/// Explicit Euler evolution of the two coupled equations on the fixed
/// interval [-l, l] (no boundary condition; endpoint nodes evolve too).
/// Requires dt * max(d1+a11, d2+a22) < 1, which also makes the update
/// monotone and positivity preserving.
std::vector<FixedFrame> evolve_fixed(const ModelParams& p, double l, const Grid& grid,
                                     const Eigen::VectorXd& u0, const Eigen::VectorXd& v0,
                                     double dt, double T, long stride);

/// Steady state on [-l, l] by two-sided monotone time marching. When the
/// principal eigenvalue is nonpositive only the trivial state exists.
/// Otherwise one march starts from the constant upper pair (M1, M2) with
/// G(M1)/M1 < a11 a22 / a12 and M2 = M1 a11/a12, the other from
/// eps (theta1, theta2) with eps the largest power of 1/2 for which the
/// discrete lower-solution inequalities hold at every node; the marches
/// stay ordered and squeeze the unique positive solution.
SteadyState steady_state(const ModelParams& p, double l, const Grid& grid, double tol,
                         double upper_scale = 2.0);

} // namespace epifront
