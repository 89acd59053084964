#include "epifront/kernels.hpp"

#include <cmath>
#include <sstream>

namespace epifront {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sqr(double z) { return z * z; }

} // namespace

std::string family_name(KernelFamily f) {
    switch (f) {
    case KernelFamily::Tent: return "tent";
    case KernelFamily::CosineBump: return "cosine";
    case KernelFamily::TruncatedGaussian: return "gaussian";
    case KernelFamily::AlgebraicTail: return "algebraic";
    }
    return "?";
}

double Kernel::density(double x) const {
    // the closed endpoint carries the one-sided limit, so truncated
    // families with an edge jump still quadrature-integrate to one
    const double ax = std::abs(x);
    if (ax > support_radius) return 0.0;
    switch (family) {
    case KernelFamily::Tent:
        return normalization * (width - ax);
    case KernelFamily::CosineBump:
        return normalization * (1.0 + std::cos(kPi * ax / width));
    case KernelFamily::TruncatedGaussian:
        return normalization * std::exp(-0.5 * sqr(ax / sigma));
    case KernelFamily::AlgebraicTail:
        return normalization * std::pow(1.0 + ax, -gamma);
    }
    return 0.0;
}

double Kernel::tail(double s) const {
    if (s < 0.0) throw NegativeArgument("kernel tail: s must be nonnegative");
    if (s >= support_radius) return 0.0;
    switch (family) {
    case KernelFamily::Tent:
        return normalization * 0.5 * sqr(width - s);
    case KernelFamily::CosineBump:
        return normalization * ((width - s) - (width / kPi) * std::sin(kPi * s / width));
    case KernelFamily::TruncatedGaussian: {
        const double rt2 = std::sqrt(2.0);
        return normalization * sigma * std::sqrt(kPi / 2.0) *
               (std::erf(truncation / (sigma * rt2)) - std::erf(s / (sigma * rt2)));
    }
    case KernelFamily::AlgebraicTail:
        return normalization *
               (std::pow(1.0 + s, 1.0 - gamma) - std::pow(1.0 + truncation, 1.0 - gamma)) /
               (gamma - 1.0);
    }
    return 0.0;
}

double Kernel::tail_integral() const {
    // int_0^inf Psi(s) ds = int_0^R s j(s) ds
    switch (family) {
    case KernelFamily::Tent:
        return width / 6.0;
    case KernelFamily::CosineBump:
        return width * (0.25 - 1.0 / sqr(kPi));
    case KernelFamily::TruncatedGaussian:
        return normalization * sqr(sigma) * (1.0 - std::exp(-0.5 * sqr(truncation / sigma)));
    case KernelFamily::AlgebraicTail: {
        const double T = truncation;
        // int_0^T s (1+s)^-g ds, split via s = (1+s) - 1
        double a;
        if (gamma == 2.0)
            a = std::log1p(T);
        else
            a = (std::pow(1.0 + T, 2.0 - gamma) - 1.0) / (2.0 - gamma);
        const double b = (1.0 - std::pow(1.0 + T, 1.0 - gamma)) / (gamma - 1.0);
        return normalization * (a - b);
    }
    }
    return 0.0;
}

Kernel make_kernel(const KernelSpec& spec) {
    Kernel k;
    k.family = spec.family;
    switch (spec.family) {
    case KernelFamily::Tent:
        if (spec.width <= 0.0) throw InvalidParam("tent kernel: width must be positive");
        k.width = spec.width;
        k.support_radius = spec.width;
        k.normalization = 1.0 / sqr(spec.width); // area of max(0, R-|x|) is R^2
        break;
    case KernelFamily::CosineBump:
        if (spec.width <= 0.0) throw InvalidParam("cosine kernel: width must be positive");
        k.width = spec.width;
        k.support_radius = spec.width;
        k.normalization = 0.5 / spec.width; // int (1+cos(pi x/R)) over [-R,R] is 2R
        break;
    case KernelFamily::TruncatedGaussian: {
        if (spec.sigma <= 0.0) throw InvalidParam("gaussian kernel: sigma must be positive");
        const double T = spec.truncation > 0.0 ? spec.truncation : 6.0 * spec.sigma;
        k.sigma = spec.sigma;
        k.truncation = T;
        k.support_radius = T;
        const double mass =
            spec.sigma * std::sqrt(2.0 * kPi) * std::erf(T / (spec.sigma * std::sqrt(2.0)));
        k.normalization = 1.0 / mass;
        break;
    }
    case KernelFamily::AlgebraicTail: {
        if (spec.gamma <= 1.0) throw InvalidParam("algebraic kernel: gamma must exceed 1");
        if (spec.truncation <= 0.0)
            throw InvalidParam("algebraic kernel: truncation radius required");
        k.gamma = spec.gamma;
        k.truncation = spec.truncation;
        k.support_radius = spec.truncation;
        const double mass =
            2.0 * (1.0 - std::pow(1.0 + spec.truncation, 1.0 - spec.gamma)) / (spec.gamma - 1.0);
        k.normalization = 1.0 / mass;
        break;
    }
    }
    return k;
}

Kernel tent_kernel(double half_width) {
    return make_kernel({KernelFamily::Tent, half_width, 0, 0, 0});
}
Kernel cosine_kernel(double half_width) {
    return make_kernel({KernelFamily::CosineBump, half_width, 0, 0, 0});
}
Kernel gaussian_kernel(double sigma, double truncation) {
    return make_kernel({KernelFamily::TruncatedGaussian, 0, sigma, 0, truncation});
}
Kernel algebraic_kernel(double gamma, double truncation) {
    return make_kernel({KernelFamily::AlgebraicTail, 0, 0, gamma, truncation});
}

bool ValidationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ValidationReport::to_json() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& c : checks) {
        if (!first) os << ",";
        first = false;
        os << "\"" << c.name << "\":{\"pass\":" << (c.pass ? "true" : "false")
           << ",\"measure\":" << c.measure << "}";
    }
    os << "}";
    return os.str();
}

ValidationReport validate_kernel(const Kernel& k, double grid_resolution, double tol) {
    if (tol <= 0.0) throw InvalidParam("validate_kernel: tol must be positive");
    if (grid_resolution <= 0.0)
        throw InvalidParam("validate_kernel: grid_resolution must be positive");

    const double R = k.support_radius;
    const long n = std::max<long>(3, static_cast<long>(std::round(2.0 * R / grid_resolution)) + 1);
    const double dx = 2.0 * R / static_cast<double>(n - 1);

    double worst_sym = 0.0, worst_neg = 0.0, integral = 0.0;
    for (long i = 0; i < n; ++i) {
        const double x = -R + dx * static_cast<double>(i);
        const double j = k.density(x);
        worst_sym = std::max(worst_sym, std::abs(j - k.density(-x)));
        worst_neg = std::min(worst_neg, j);
        integral += (i == 0 || i == n - 1 ? 0.5 : 1.0) * dx * j;
    }
    const double j0 = k.density(0.0);

    ValidationReport rep;
    rep.checks.push_back({"symmetry", worst_sym <= tol, worst_sym});
    rep.checks.push_back({"nonnegative", worst_neg >= 0.0, worst_neg});
    rep.checks.push_back({"positive_at_origin", j0 > 0.0, j0});
    rep.checks.push_back({"unit_integral", std::abs(integral - 1.0) <= tol, integral - 1.0});
    return rep;
}

} // namespace epifront
