#include "epifront/convolution.hpp"

#include <cmath>

namespace epifront {

KernelBand sample_band(const Kernel& k, double spacing) {
    if (!(spacing > 0.0)) throw InvalidParam("sample_band: spacing must be positive");
    const long b = static_cast<long>(std::floor(k.support_radius / spacing)) + 1;
    KernelBand band;
    band.halfwidth = b;
    band.values.resize(2 * b + 1);
    for (long j = -b; j <= b; ++j)
        band.values[j + b] = k.density(static_cast<double>(j) * spacing);
    return band;
}

Eigen::VectorXd apply_conv(const KernelBand& band, const Eigen::VectorXd& w,
                           const Eigen::VectorXd& f) {
    if (w.size() != f.size()) throw ShapeMismatch("apply_conv: weights and field sizes differ");
    const long n = f.size();
    const long b = band.halfwidth;
    Eigen::VectorXd wf = w.cwiseProduct(f);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (long i = 0; i < n; ++i) {
        const long k_lo = std::max<long>(-b, -i);
        const long k_hi = std::min<long>(b, n - 1 - i);
        double acc = 0.0;
        const double* bv = band.values.data() + b;
        const double* ff = wf.data() + i;
        for (long k = k_lo; k <= k_hi; ++k) acc += bv[k] * ff[k];
        out[i] = acc;
    }
    return out;
}

Eigen::VectorXd apply_conv(const Kernel& k, const Grid& grid, const DomainSlice& dom,
                           const Eigen::VectorXd& f) {
    if (f.size() != dom.size()) throw ShapeMismatch("apply_conv: field does not match slice");
    const KernelBand band = sample_band(k, grid.dx);
    return apply_conv(band, slice_weights(grid, dom), f);
}

Eigen::MatrixXd conv_matrix(const Kernel& k, const IntervalMesh& mesh) {
    const long n = mesh.size();
    Eigen::MatrixXd C(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) C(i, j) = k.density(mesh.x[i] - mesh.x[j]) * mesh.w[j];
    return C;
}

std::pair<double, double> boundary_flux(const ModelParams& p, const Grid& grid,
                                        const DomainSlice& dom, const FieldPair& fields) {
    const long n = dom.size();
    if (fields.u.size() != n || fields.v.size() != n)
        throw ShapeMismatch("boundary_flux: fields do not match slice");
    if (n == 0) return {0.0, 0.0};

    const Eigen::VectorXd w = slice_weights(grid, dom);
    const double reach = std::max(p.J1.support_radius, p.J2.support_radius);

    double h_acc = 0.0;
    for (long i = n - 1; i >= 0; --i) {
        const double s = dom.h - grid.node(dom.j_lo + i);
        if (s >= reach) break;
        h_acc += w[i] * (p.J1.tail(s) * fields.u[i] + p.rho * p.J2.tail(s) * fields.v[i]);
    }
    double g_acc = 0.0;
    for (long i = 0; i < n; ++i) {
        const double s = grid.node(dom.j_lo + i) - dom.g;
        if (s >= reach) break;
        g_acc += w[i] * (p.J1.tail(s) * fields.u[i] + p.rho * p.J2.tail(s) * fields.v[i]);
    }
    return {-p.mu * g_acc, p.mu * h_acc};
}

} // namespace epifront
