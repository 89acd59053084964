#include <doctest.h>

#include <cmath>
#include <random>

#include "epifront/kernels.hpp"

using namespace epifront;

namespace {

// independent normalization oracle: composite Simpson over the support
double simpson_mass(const Kernel& k, long n) {
    if (n % 2) ++n;
    const double a = -k.support_radius, b = k.support_radius;
    const double h = (b - a) / static_cast<double>(n);
    double acc = k.density(a) + k.density(b);
    for (long i = 1; i < n; ++i)
        acc += k.density(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

} // namespace

TEST_CASE("tent kernels normalize in closed form") {
    const Kernel t1 = tent_kernel(1.0);
    CHECK(t1.density(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t1.density(0.25) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(t1.density(1.5) == 0.0);

    const Kernel t2 = tent_kernel(2.0);
    CHECK(t2.density(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(t2.density(1.0) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("truncated gaussian peak matches the numeric normalization oracle") {
    const Kernel g = gaussian_kernel(1.0, 6.0);
    CHECK(std::abs(g.density(0.0) - 0.39894) < 1e-4);
    CHECK(simpson_mass(g, 20000) == doctest::Approx(1.0).epsilon(1e-10));

    // normalization from raw quadrature of the unscaled profile
    long n = 20000;
    const double h = 12.0 / static_cast<double>(n);
    double raw = std::exp(-18.0) * 2.0;
    for (long i = 1; i < n; ++i) {
        const double x = -6.0 + h * static_cast<double>(i);
        raw += std::exp(-0.5 * x * x) * (i % 2 ? 4.0 : 2.0);
    }
    raw *= h / 3.0;
    CHECK(g.density(0.0) == doctest::Approx(1.0 / raw).epsilon(1e-10));
}

TEST_CASE("kernel construction rejects bad parameters") {
    CHECK_THROWS_AS(tent_kernel(0.0), InvalidParam);
    CHECK_THROWS_AS(tent_kernel(-1.0), InvalidParam);
    CHECK_THROWS_AS(cosine_kernel(0.0), InvalidParam);
    CHECK_THROWS_AS(gaussian_kernel(-0.5, 3.0), InvalidParam);
    CHECK_THROWS_AS(algebraic_kernel(1.0, 10.0), InvalidParam);
    CHECK_THROWS_AS(algebraic_kernel(0.5, 10.0), InvalidParam);
    CHECK_THROWS_AS(algebraic_kernel(2.5, 0.0), InvalidParam);
}

TEST_CASE("validation passes for the built-in families") {
    CHECK(validate_kernel(tent_kernel(1.0), 1e-3, 1e-10).all_pass());
    CHECK(validate_kernel(cosine_kernel(1.0), 1e-3, 1e-8).all_pass());
    CHECK(validate_kernel(gaussian_kernel(1.0, 6.0), 1e-3, 1e-8).all_pass());
    CHECK(validate_kernel(algebraic_kernel(2.5, 100.0), 1e-3, 1e-6).all_pass());
}

TEST_CASE("corrupted normalization fails the integral check with the right deficit") {
    Kernel k = tent_kernel(1.0);
    k.normalization *= 0.9;
    const ValidationReport rep = validate_kernel(k, 1e-3, 1e-8);
    CHECK_FALSE(rep.all_pass());
    for (const auto& c : rep.checks)
        if (c.name == "unit_integral") {
            CHECK_FALSE(c.pass);
            CHECK(c.measure == doctest::Approx(-0.1).epsilon(1e-8));
        }
}

TEST_CASE("tent tails in closed form") {
    const Kernel t = tent_kernel(1.0);
    CHECK(t.tail(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.tail(0.5) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(t.tail(0.25) == doctest::Approx(0.28125).epsilon(1e-15));
    CHECK(t.tail(1.0) == 0.0);
    CHECK(t.tail(3.0) == 0.0);
    CHECK_THROWS_AS(t.tail(-0.1), NegativeArgument);
}

TEST_CASE("tails are half at zero, nonincreasing, zero past the support") {
    const Kernel kernels[] = {tent_kernel(1.5), cosine_kernel(2.0), gaussian_kernel(0.7, 4.0),
                              algebraic_kernel(2.2, 30.0)};
    for (const Kernel& k : kernels) {
        CHECK(k.tail(0.0) == doctest::Approx(0.5).epsilon(1e-12));
        double prev = k.tail(0.0);
        for (int i = 1; i <= 200; ++i) {
            const double s = k.support_radius * 1.05 * static_cast<double>(i) / 200.0;
            const double cur = k.tail(s);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
        CHECK(k.tail(k.support_radius) == 0.0);

        // tail is the antiderivative of -density: midpoint consistency
        const double s0 = 0.3 * k.support_radius, s1 = 0.300001 * k.support_radius;
        const double lhs = (k.tail(s0) - k.tail(s1)) / (s1 - s0);
        CHECK(lhs == doctest::Approx(k.density(0.5 * (s0 + s1))).epsilon(1e-6));
    }
}

TEST_CASE("randomly drawn kernel parameters keep the family contracts") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 25; ++i) {
        Kernel k;
        switch (i % 4) {
        case 0: k = tent_kernel(0.2 + 3.0 * unif(rng)); break;
        case 1: k = cosine_kernel(0.2 + 3.0 * unif(rng)); break;
        case 2: k = gaussian_kernel(0.3 + 2.0 * unif(rng), 3.0 + 5.0 * unif(rng)); break;
        default: k = algebraic_kernel(1.2 + 3.0 * unif(rng), 5.0 + 40.0 * unif(rng)); break;
        }
        const double tol = k.family == KernelFamily::AlgebraicTail ? 1e-6 : 1e-8;
        CHECK(validate_kernel(k, k.support_radius * 2e-5, tol).all_pass());
        CHECK(k.tail(0.0) == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(k.tail(0.3 * k.support_radius) >= k.tail(0.7 * k.support_radius));
        CHECK(k.tail(k.support_radius * 1.5) == 0.0);
        CHECK(k.density(0.4 * k.support_radius) ==
              k.density(-0.4 * k.support_radius)); // exact symmetry
    }
}

TEST_CASE("tail integrals match quadrature of s j(s)") {
    const Kernel kernels[] = {tent_kernel(1.0), cosine_kernel(1.0), gaussian_kernel(1.0, 6.0),
                              algebraic_kernel(2.5, 50.0), algebraic_kernel(2.0, 50.0)};
    for (const Kernel& k : kernels) {
        // Simpson on s * j(s) over [0, support]
        long n = 200000;
        const double h = k.support_radius / static_cast<double>(n);
        double acc = 0.0 + k.support_radius * k.density(k.support_radius);
        for (long i = 1; i < n; ++i) {
            const double s = h * static_cast<double>(i);
            acc += s * k.density(s) * (i % 2 ? 4.0 : 2.0);
        }
        acc *= h / 3.0;
        CHECK(k.tail_integral() == doctest::Approx(acc).epsilon(1e-6));
    }
}
