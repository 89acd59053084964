#pragma once

#include <Eigen/Core>

#include "epifront/errors.hpp"

namespace epifront {

/// Fixed global lattice x_j = j * dx with node 0 at the origin. Moving
/// boundaries clip integration limits against this lattice; field storage
/// is never remapped and nodes entering a domain start at zero.
struct Grid {
    double dx = 0.0;
    double node(long j) const { return static_cast<double>(j) * dx; }
};

Grid build_grid(double dx);

/// Lattice window strictly inside an interval (g, h). Field values at and
/// beyond the endpoints are zero. g_frac / h_frac are the partial-cell
/// widths between each front and the outermost interior node; they equal
/// dx exactly when a front sits on a lattice node.
struct DomainSlice {
    double g = 0.0, h = 0.0;
    long j_lo = 0, j_hi = -1; // empty when j_lo > j_hi
    double g_frac = 0.0, h_frac = 0.0;

    bool empty() const { return j_lo > j_hi; }
    long size() const { return empty() ? 0 : j_hi - j_lo + 1; }
};

/// Throws EmptyDomain when h - g < dx; an interval at least dx wide that
/// still traps no interior node (front sitting exactly on a node) comes
/// back as an empty slice for the caller to judge.
DomainSlice slice_domain(const Grid& grid, double g, double h);

/// Composite-trapezoid weights over the slice, closing the partial end
/// cells linearly to zero at the fronts. All weights are positive.
Eigen::VectorXd slice_weights(const Grid& grid, const DomainSlice& dom);

/// Closed uniform mesh on [-l, l] including both endpoints, used by the
/// eigenvalue and fixed-interval solvers (no boundary condition there, so
/// endpoint nodes carry honest unknowns). Spacing tracks the lattice dx;
/// node count is capped at 4001 per component, with `capped` set so
/// callers can surface an accuracy warning.
struct IntervalMesh {
    double l = 0.0;
    double delta = 0.0;
    bool capped = false;
    Eigen::VectorXd x; // nodes
    Eigen::VectorXd w; // trapezoid weights
    long size() const { return x.size(); }
};

IntervalMesh interval_mesh(const Grid& grid, double l);

} // namespace epifront
