#pragma once

#include <optional>
#include <vector>

#include "epifront/eigenproblem.hpp"

namespace epifront {

enum class InitialShape { Tent, RaisedCosine, SmoothedPlateau };

InitialShape initial_shape_from_name(const std::string& name);

/// Initial profiles sampled on the interior lattice nodes of (-h0, h0);
/// every shape vanishes at the fronts and is positive inside.
struct InitialData {
    double h0 = 0.0;
    Eigen::VectorXd u0, v0;
};

InitialData make_initial_data(const Grid& grid, InitialShape shape, double h0, double amp_u,
                              double amp_v);

/// Heavy per-frame snapshot (strided).
struct Frame {
    double t = 0.0, g = 0.0, h = 0.0;
    long j_lo = 0;
    Eigen::VectorXd u, v;
};

/// Light per-frame record used for classification and diagnostics.
struct FrameStats {
    double t = 0.0, g = 0.0, h = 0.0;
    double sup_u = 0.0, sup_v = 0.0;
    double mass = 0.0; // integral of u + (a12/a22) v over the slice
    double g_rate = 0.0, h_rate = 0.0;
};

enum class Tag { Spreading, Vanishing, Undecided };
enum class Trigger { WidthExceeds2Lstar, FrontsStalledAndMassDecayed, HorizonReached };

std::string tag_name(Tag t);
std::string trigger_name(Trigger t);

struct Classification {
    Tag tag = Tag::Undecided;
    Trigger trigger = Trigger::HorizonReached;
    double decision_time = 0.0;
    double width_at_decision = 0.0;
    // a posteriori eigenvalue of the final interval, reported for
    // vanishing runs (it should be nonpositive up to tolerance)
    bool lambda0_checked = false;
    double final_lambda0 = 0.0;
};

struct ClassifyOptions {
    double eps_mass = -1.0; // < 0 means 1e-8 times the initial sup
    double eps_front = 1e-6;
    double window = 10.0;
};

struct RunDiagnostics {
    double K1 = 0.0, K2 = 0.0; // a priori sup bounds for the fields
    long positivity_violations = 0;
    long bound_violations = 0;
    double max_bound_excess = 0.0;
    double max_front_retreat = 0.0; // worst move of h down / g up (should be 0)
};

struct RunResult {
    ModelParams params;
    Grid grid;
    double h0 = 0.0;
    double dt = 0.0, T = 0.0;
    long stride = 1;
    std::vector<Frame> frames;
    std::vector<FrameStats> stats; // same cadence as frames
    RunDiagnostics diagnostics;
    Classification classification; // what the run itself could decide
};

/// Optional in-run decision rules so threshold searches can stop early.
/// The predicates are evaluated at frame-recording moments only, so a
/// later classify() pass over the stored frames reproduces the decision.
struct EarlyStop {
    double spread_width = std::numeric_limits<double>::infinity();
    bool vanish = false;
    ClassifyOptions opts;
};

/// Explicit Euler integration of the coupled fields with moving fronts:
/// per step the clipped convolutions and reaction update (u, v), the
/// tail-weighted boundary fluxes move (g, h), and the slice is re-cut
/// with newly interior nodes starting from zero. Fronts never retreat
/// and per-step front motion must stay below dx.
RunResult evolve(const ModelParams& p, const InitialData& init, const Grid& grid, double dt,
                 double T, long stride, const EarlyStop* early = nullptr);

/// Decides Spreading as soon as the width exceeds 2 lstar + dx, and
/// Vanishing once front motion and field sup have both collapsed over a
/// trailing window. For vanishing runs the principal eigenvalue of the
/// final interval is computed and reported as supporting evidence.
Classification classify(const RunResult& run, std::optional<double> lstar,
                        ClassifyOptions opts = {});

struct MuStarLedgerRow {
    double mu = 0.0;
    Tag tag = Tag::Undecided;
    double decision_time = 0.0;
    double dt_used = 0.0;
};

struct MuStarResult {
    double mu_star = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double lstar = 0.0;
    std::vector<MuStarLedgerRow> ledger;
};

/// Bisection in the front-expansion coefficient between a vanishing and a
/// spreading probe. Each probe halves dt as needed to keep the rigorous
/// front-speed bound below dx per step. An Undecided probe stops the
/// refinement and is reported in the ledger rather than being resolved
/// silently.
MuStarResult find_mustar(const ModelParams& p, const InitialData& init, const Grid& grid,
                         double mu_lo, double mu_hi, double horizon, double tol, double dt_hint,
                         long stride);

struct PicardResult {
    double T_short = 0.0, dt = 0.0;
    std::vector<double> t, g, h;  // converged front paths
    std::vector<double> path_changes; // sup path change per outer iteration
    long iterations = 0;
    double delta1 = 0.0, delta2 = 0.0; // front-slope lower bounds from the initial data
    double min_h_slope = 0.0, max_g_slope = 0.0;
};

/// Independent short-horizon reference: alternately solves the fields for
/// frozen front paths and rebuilds the paths from the cumulative flux
/// integrals, iterating to a fixed point. The default horizon keeps the
/// front displacement under a quarter of the kernel support so the map
/// contracts. Path updates use the trapezoid rule, so the fixed point is
/// a genuinely different discretization from evolve().
PicardResult picard_reference(const ModelParams& p, const InitialData& init, const Grid& grid,
                              double T_short, double dt, double fp_tol);

struct ComparisonReport {
    long frames_checked = 0;
    long violations = 0;
    // worst (most negative) slack in each ordering; nonnegative when the
    // comparison principle holds discretely
    double worst_h = 0.0, worst_g = 0.0, worst_u = 0.0, worst_v = 0.0;
};

/// Frame-by-frame ordering check between a run and one started from
/// pointwise-larger data and/or larger mu: fronts within one cell and
/// fields within tol must stay ordered.
ComparisonReport comparison_check(const RunResult& lower, const RunResult& upper, double tol);

struct MassReport {
    std::vector<double> t, mass, lyapunov;
    double m0 = 1.0;
    bool width_bound_applicable = false; // only when r0 <= 1
    bool width_bound_ok = true;
    double worst_width_margin = 0.0; // min of bound - width over frames
    bool lyapunov_nonincreasing = true;
    double worst_lyapunov_rise = 0.0;
};

/// Mass functional M(t) = integral of u + (a12/a22) v. For subcritical
/// parameters the width obeys h - g <= 2 h0 + (mu / (m0 d1)) M(0) with
/// m0 = min(1, d2 a12 / (rho d1 a22)), and M + (m0 d1 / mu)(h - g) is
/// nonincreasing up to quadrature tolerance.
MassReport mass_diagnostic(const RunResult& run, const ModelParams& p, double rise_tol = -1.0);

} // namespace epifront
