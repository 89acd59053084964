#pragma once

#include <Eigen/Core>

#include "epifront/grid.hpp"
#include "epifront/kernels.hpp"
#include "epifront/model.hpp"

namespace epifront {

/// Kernel sampled on the lattice: values[b + k] = j(k * dx) for
/// k in [-b, b]. Convolutions reduce to banded weighted sums on a
/// uniform mesh; entries beyond the support are zero.
struct KernelBand {
    Eigen::VectorXd values;
    long halfwidth = 0;
};

KernelBand sample_band(const Kernel& k, double spacing);

struct FieldPair {
    Eigen::VectorXd u, v;
};

/// Clipped convolution on a moving-boundary slice: at each interior node
/// x_i returns the composite-trapezoid value of the integral of
/// j(x_i - y) f(y) over (g, h), with f linear-to-zero on the partial end
/// cells. The sum is clipped to the kernel support window.
Eigen::VectorXd apply_conv(const Kernel& k, const Grid& grid, const DomainSlice& dom,
                           const Eigen::VectorXd& f);

/// Same banded apply given precomputed band and quadrature weights
/// (both the slice and IntervalMesh paths share it).
Eigen::VectorXd apply_conv(const KernelBand& band, const Eigen::VectorXd& w,
                           const Eigen::VectorXd& f);

/// Dense matrix C with C(i,j) = k(x_i - x_j) w_j on a closed mesh.
/// Assembled once where the same operator is applied many times
/// (resolvent solves, dense eigensolve oracles).
Eigen::MatrixXd conv_matrix(const Kernel& k, const IntervalMesh& mesh);

/// Outward front fluxes, with the inner dispersal integrals reduced to
/// kernel tails:
///   h_rate =  mu * sum_i w_i [Psi1(h - x_i) u_i + rho Psi2(h - x_i) v_i]
///   g_rate = -mu * sum_i w_i [Psi1(x_i - g) u_i + rho Psi2(x_i - g) v_i]
/// so h_rate >= 0 >= g_rate whenever the fields are nonnegative.
std::pair<double, double> boundary_flux(const ModelParams& p, const Grid& grid,
                                        const DomainSlice& dom, const FieldPair& fields);

} // namespace epifront
