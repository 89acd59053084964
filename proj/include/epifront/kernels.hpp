#pragma once

#include <string>
#include <vector>

#include "epifront/errors.hpp"

namespace epifront {

/// Dispersal density families. All are continuous, bounded, symmetric,
/// positive at the origin and normalized to unit mass; each one has a
/// closed-form tail integral. A discontinuous uniform kernel is
/// deliberately not offered.
enum class KernelFamily { Tent, CosineBump, TruncatedGaussian, AlgebraicTail };

std::string family_name(KernelFamily f);

struct KernelSpec {
    KernelFamily family = KernelFamily::Tent;
    double width = 1.0;      // half-width R (Tent, CosineBump)
    double sigma = 1.0;      // TruncatedGaussian shape
    double gamma = 2.5;      // AlgebraicTail exponent, > 1
    double truncation = 0.0; // support radius for TruncatedGaussian/AlgebraicTail
};

/// Immutable dispersal kernel. `normalization` is the scale factor that
/// makes the total integral one; it is a plain field so tests can corrupt
/// it and watch validation fail.
struct Kernel {
    KernelFamily family;
    double width = 0.0;
    double sigma = 0.0;
    double gamma = 0.0;
    double truncation = 0.0;
    double normalization = 1.0;
    double support_radius = 0.0;

    /// Pointwise density j(x).
    double density(double x) const;

    /// Tail integral Psi(s) = integral of j over [s, inf), s >= 0.
    /// Closed form for every family; Psi(0) = 1/2 by symmetry.
    double tail(double s) const;

    /// Integral of Psi over [0, inf) (= half first absolute moment of j).
    /// Bounds the front flux per unit sup-norm of the field.
    double tail_integral() const;
};

Kernel make_kernel(const KernelSpec& spec);

// convenience constructors
Kernel tent_kernel(double half_width);
Kernel cosine_kernel(double half_width);
Kernel gaussian_kernel(double sigma, double truncation);
Kernel algebraic_kernel(double gamma, double truncation);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double measure = 0.0; // worst defect observed for this check
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
    std::string to_json() const;
};

/// Samples the density on a uniform grid over its support and checks
/// symmetry, nonnegativity, a positive value at the origin, and that the
/// composite-trapezoid integral matches one within tol.
ValidationReport validate_kernel(const Kernel& k, double grid_resolution, double tol);

} // namespace epifront
