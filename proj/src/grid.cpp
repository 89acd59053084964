#include "epifront/grid.hpp"

#include <cmath>

namespace epifront {

Grid build_grid(double dx) {
    if (!(dx > 0.0)) throw InvalidParam("grid: dx must be positive");
    return Grid{dx};
}

DomainSlice slice_domain(const Grid& grid, double g, double h) {
    if (!(g < h)) throw InvalidParam("slice_domain: need g < h");
    if (h - g < grid.dx) throw EmptyDomain("slice_domain: interval narrower than dx");

    long j_lo = static_cast<long>(std::floor(g / grid.dx)) + 1;
    while (grid.node(j_lo) <= g) ++j_lo;
    while (grid.node(j_lo - 1) > g) --j_lo;
    long j_hi = static_cast<long>(std::ceil(h / grid.dx)) - 1;
    while (grid.node(j_hi) >= h) --j_hi;
    while (grid.node(j_hi + 1) < h) ++j_hi;

    DomainSlice dom;
    dom.g = g;
    dom.h = h;
    dom.j_lo = j_lo;
    dom.j_hi = j_hi;
    if (!dom.empty()) {
        dom.g_frac = grid.node(j_lo) - g;
        dom.h_frac = h - grid.node(j_hi);
    }
    return dom;
}

Eigen::VectorXd slice_weights(const Grid& grid, const DomainSlice& dom) {
    const long n = dom.size();
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n, grid.dx);
    if (n == 0) return w;
    if (n == 1) {
        w[0] = 0.5 * (dom.g_frac + dom.h_frac);
    } else {
        w[0] = 0.5 * (grid.dx + dom.g_frac);
        w[n - 1] = 0.5 * (grid.dx + dom.h_frac);
    }
    return w;
}

IntervalMesh interval_mesh(const Grid& grid, double l) {
    if (!(l > 0.0)) throw InvalidParam("interval_mesh: l must be positive");
    if (l < 2.0 * grid.dx) throw DegenerateDomain("interval_mesh: need l >= 2 dx");

    long n = static_cast<long>(std::llround(2.0 * l / grid.dx)) + 1;
    IntervalMesh mesh;
    if (n > 4001) {
        n = 4001;
        mesh.capped = true;
    }
    mesh.l = l;
    mesh.delta = 2.0 * l / static_cast<double>(n - 1);
    mesh.x = Eigen::VectorXd::LinSpaced(n, -l, l);
    mesh.w = Eigen::VectorXd::Constant(n, mesh.delta);
    mesh.w[0] *= 0.5;
    mesh.w[n - 1] *= 0.5;
    return mesh;
}

} // namespace epifront
