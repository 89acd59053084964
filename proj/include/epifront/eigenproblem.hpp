#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "epifront/convolution.hpp"
#include "epifront/grid.hpp"
#include "epifront/model.hpp"

namespace epifront {

/// Principal eigenpair of the coupled dispersal operator on [-l, l].
struct EigenResult {
    double lambda0 = 0.0;
    Eigen::VectorXd theta1, theta2; // strictly positive, ||(theta1,theta2)||_inf = 1
    double residual = 0.0;          // sup-norm of (A - lambda0 I) theta
    long iterations = 0;            // operator applications spent
};

struct SpectralCurve {
    std::vector<double> alphas;
    std::vector<double> r_values;
};

/// Principal eigenvalue of f -> integral of K(x-y) f(y) over [-l, l],
/// with its positive normalized eigenfunction. The value lies in (0, 1)
/// and matches the Rayleigh characterization on the weighted mesh.
std::pair<double, Eigen::VectorXd> k_principal(const Kernel& K, double l, const Grid& grid);

/// Closed-form eigenvalues of the non-dispersive part:
///   lambda_{1,2} = [(d1+a11+d2+a22) -/+ sqrt((d1+a11-d2-a22)^2
///                   + 4 a12 G'(0) lambda_tilde)] / 2.
/// Checks delta1 = (d2+a22-lambda1)/G'(0) > 0 when lambda_tilde > 0.
std::pair<double, double> lambda1_closed(const ModelParams& p, double lambda_tilde);

/// Principal eigenvalue of the coupled operator on [-l, l]: the
/// discretized block operator is shifted by s = max(d1+a11, d2+a22) so it
/// becomes entrywise nonnegative and primitive, and its Perron root is
/// found by Krylov iteration from the all-ones start vector.
EigenResult lambda0(const ModelParams& p, double l, const Grid& grid,
                    double tol = 1e-12, long max_applies = 50000);

/// Spectral radius r(alpha) of J (T + alpha I)^{-1} for alpha > -lambda1.
/// The resolvent eliminates the first component and solves one dense
/// n x n system per apply.
double r_alpha(const ModelParams& p, double l, double alpha, const Grid& grid,
               double tol = 1e-12, long max_applies = 50000);

SpectralCurve spectral_curve(const ModelParams& p, double l, const Grid& grid,
                             const std::vector<double>& alphas);

/// The alpha solving r(alpha) = 1, located by bisection. Independent
/// route to the principal eigenvalue: it must agree with lambda0.
double find_alpha0(const ModelParams& p, double l, const Grid& grid, double tol = 1e-8);

struct LstarResult {
    double lstar = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double lambda0_lo = 0.0, lambda0_hi = 0.0; // eigenvalues at the bracket ends
};

/// Critical half-length: the unique l with lambda0(l) = 0 when r0 > 1.
/// Brackets a sign change on (2 dx, l_max], doubling l_max a few times if
/// needed, then bisects to width tol.
LstarResult find_lstar(const ModelParams& p, const Grid& grid, double l_max, double tol);

namespace detail {

struct DominantEig {
    double value = 0.0;
    Eigen::VectorXd vector;
    long applies = 0;
};

/// Dominant eigenpair of a linear operator by restarted Arnoldi iteration
/// started from the all-ones vector (a Krylov-accelerated power method;
/// with subspace size 1 it reduces to plain power iteration). Assumes the
/// dominant eigenvalue is real and simple, as it is for the shifted
/// nonnegative operators used here. Converges on the true sup-norm
/// residual; throws NoConvergence past max_applies.
DominantEig dominant_eigenpair(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                               long n, double tol, long max_applies);

} // namespace detail

} // namespace epifront
