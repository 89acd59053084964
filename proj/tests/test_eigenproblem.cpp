#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "epifront/eigenproblem.hpp"
#include "support.hpp"

using namespace epifront;

TEST_CASE("k_principal approaches one on wide intervals") {
    const Grid grid = build_grid(0.1);
    const auto [lt, theta] = k_principal(tent_kernel(1.0), 50.0, grid);
    CHECK(lt > 0.99);
    CHECK(lt < 1.0);
    CHECK(theta.minCoeff() > 0.0);

    // Rayleigh characterization on the weighted mesh
    const IntervalMesh mesh = interval_mesh(grid, 50.0);
    const KernelBand band = sample_band(tent_kernel(1.0), mesh.delta);
    const Eigen::VectorXd conv = apply_conv(band, mesh.w, theta);
    const double rayleigh = theta.cwiseProduct(mesh.w).dot(conv) /
                            theta.cwiseProduct(mesh.w).dot(theta);
    CHECK(std::abs(lt - rayleigh) < 1e-9);
}

TEST_CASE("k_principal on a tiny interval matches the dense oracle and 2 l K(0)") {
    const Grid grid = build_grid(0.0125);
    const double l = 0.05;
    const auto [lt, theta] = k_principal(tent_kernel(1.0), l, grid);
    CHECK(std::abs(lt - 2.0 * l * 1.0) / (2.0 * l) < 0.1);
    CHECK(theta.minCoeff() > 0.0);

    const IntervalMesh mesh = interval_mesh(grid, l);
    const Eigen::MatrixXd C = conv_matrix(tent_kernel(1.0), mesh);
    const Eigen::EigenSolver<Eigen::MatrixXd> es(C);
    double biggest = -1e300;
    for (long i = 0; i < es.eigenvalues().size(); ++i)
        biggest = std::max(biggest, es.eigenvalues()[i].real());
    CHECK(std::abs(lt - biggest) < 1e-10);
}

TEST_CASE("closed-form lambda1 and lambda2") {
    const ModelParams p = testsup::p1();

    const auto [l1a, l2a] = lambda1_closed(p, 1.0);
    CHECK(l1a == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
    CHECK(l2a == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));

    const auto [l1b, l2b] = lambda1_closed(p, 0.0);
    CHECK(l1b == doctest::Approx(2.0).epsilon(1e-14)); // min(d1+a11, d2+a22)
    CHECK(l2b == doctest::Approx(2.0).epsilon(1e-14));

    const auto [l1c, l2c] = lambda1_closed(p, 0.5);
    CHECK(l1c == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l2c == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("principal eigenvalue: residual, positivity, frozen values") {
    const Grid grid = build_grid(0.02);
    const ModelParams p1 = testsup::p1();

    const EigenResult r5 = lambda0(p1, 5.0, grid);
    CHECK(r5.residual < 1e-10);
    CHECK(std::max(r5.theta1.maxCoeff(), r5.theta2.maxCoeff()) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r5.theta1.minCoeff() > 0.0);
    CHECK(r5.theta2.minCoeff() > 0.0);
    CHECK(r5.lambda0 == doctest::Approx(testsup::kLambda0P1L5).epsilon(1e-6));

    const EigenResult r2 = lambda0(p1, 2.0, grid);
    CHECK(r2.lambda0 == doctest::Approx(testsup::kLambda0P1L2).epsilon(1e-6));

    for (double l : {1.0, 5.0, 20.0})
        CHECK(lambda0(testsup::p2(), l, grid).lambda0 < 0.0);
}

TEST_CASE("principal eigenvalue grows with the interval") {
    const Grid grid = build_grid(0.05);
    const ModelParams p = testsup::p1();
    double prev = -1e300;
    for (double l : {0.5, 1.0, 2.0, 4.0}) {
        const double lam = lambda0(p, l, grid).lambda0;
        CHECK(lam > prev + 1e-8);
        prev = lam;
    }
}

TEST_CASE("resolvent spectral radius: fixed point, decay, monotonicity") {
    const Grid grid = build_grid(0.02);
    const ModelParams p = testsup::p1();
    const double l = 5.0;

    const double lam = lambda0(p, l, grid).lambda0;
    CHECK(std::abs(r_alpha(p, l, lam, grid) - 1.0) < 1e-6);

    CHECK(r_alpha(p, l, 100.0, grid) < 0.05);

    double prev = 1e300;
    for (double a : {0.2, 0.5, 1.0, 2.0}) {
        const double r = r_alpha(p, l, a, grid);
        CHECK(r < prev);
        prev = r;
    }

    const double lt = k_principal(p.K, l, grid).first;
    const double lam1 = lambda1_closed(p, lt).first;
    CHECK_THROWS_AS(r_alpha(p, l, -lam1 - 0.1, grid), SingularResolvent);
}

TEST_CASE("sampled spectral curve is strictly decreasing") {
    const Grid grid = build_grid(0.05);
    const SpectralCurve curve =
        spectral_curve(testsup::p1(), 3.0, grid, {0.1, 0.4, 0.8, 1.5, 3.0, 6.0});
    REQUIRE(curve.alphas.size() == curve.r_values.size());
    for (size_t i = 1; i < curve.r_values.size(); ++i)
        CHECK(curve.r_values[i] < curve.r_values[i - 1]);
}

TEST_CASE("the two eigenvalue routes agree") {
    const Grid grid = build_grid(0.02);
    const ModelParams p = testsup::p1();
    const double lam = lambda0(p, 2.0, grid).lambda0;
    const double alpha0 = find_alpha0(p, 2.0, grid, 1e-9);
    CHECK(std::abs(lam - alpha0) < 1e-6);
}

TEST_CASE("critical length: golden value, straddle, subcritical rejection") {
    const Grid grid = build_grid(0.02);
    const ModelParams p = testsup::p1();

    const LstarResult res = find_lstar(p, grid, 2.0, 1e-3);
    CHECK(std::abs(res.lstar - testsup::kLstarP1) < 2.5e-3);
    CHECK(lambda0(p, res.lstar - 0.01, grid).lambda0 < 0.0);
    CHECK(lambda0(p, res.lstar + 0.01, grid).lambda0 > 0.0);

    CHECK_THROWS_AS(find_lstar(testsup::p2(), grid, 2.0, 1e-3), SubcriticalModel);
}

TEST_CASE("no bracket for a barely supercritical model with a tight cap") {
    // r0 = 1.0024 puts the critical length near 19, past the expansion cap
    ModelParams p = testsup::p1();
    p.reaction = make_reaction(0.5012, 1.0);
    const Grid grid = build_grid(0.05);
    CHECK_THROWS_AS(find_lstar(p, grid, 0.1, 1e-3), NoBracket);
}

TEST_CASE("constant pair certifies a negative eigenvalue when r0 <= 1") {
    // images of (1, H1) under the operator stay componentwise nonpositive
    const ModelParams p = testsup::p2();
    const Grid grid = build_grid(0.05);
    const IntervalMesh mesh = interval_mesh(grid, 5.0);
    const KernelBand b1 = sample_band(p.J1, mesh.delta);
    const KernelBand b2 = sample_band(p.J2, mesh.delta);
    const KernelBand bk = sample_band(p.K, mesh.delta);
    const double H1 = 1.5; // between G'(0)/a22 = 1 and a11/a12 = 2
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(mesh.size());
    const Eigen::VectorXd e1 = p.d1 * apply_conv(b1, mesh.w, ones) -
                               (p.d1 + p.a11) * ones +
                               p.a12 * H1 * apply_conv(bk, mesh.w, ones);
    const Eigen::VectorXd e2 = p.d2 * H1 * apply_conv(b2, mesh.w, ones) -
                               (p.d2 + p.a22) * H1 * ones +
                               p.reaction.slope_at_zero() * ones;
    CHECK(e1.maxCoeff() <= 0.0);
    CHECK(e2.maxCoeff() <= 0.0);
    CHECK(lambda0(p, 5.0, grid).lambda0 < 0.0);
}

TEST_CASE("tent pair certifies a positive eigenvalue on wide intervals") {
    const ModelParams p = testsup::p1();
    const Grid grid = build_grid(0.02);
    const double l = 10.0;
    const IntervalMesh mesh = interval_mesh(grid, l);
    const KernelBand b1 = sample_band(p.J1, mesh.delta);
    const KernelBand b2 = sample_band(p.J2, mesh.delta);
    const KernelBand bk = sample_band(p.K, mesh.delta);
    const double H3 = 0.75; // between a11/a12 = 1/2 and G'(0)/a22 = 1
    Eigen::VectorXd hat(mesh.size());
    for (long i = 0; i < mesh.size(); ++i) hat[i] = std::max(l - std::abs(mesh.x[i]), 0.0);
    const Eigen::VectorXd e1 = p.d1 * apply_conv(b1, mesh.w, hat) - (p.d1 + p.a11) * hat +
                               p.a12 * H3 * apply_conv(bk, mesh.w, hat);
    const Eigen::VectorXd e2 = p.d2 * H3 * apply_conv(b2, mesh.w, hat) -
                               (p.d2 + p.a22) * H3 * hat +
                               p.reaction.slope_at_zero() * hat;
    CHECK(e1.minCoeff() >= 0.0);
    CHECK(e2.minCoeff() >= 0.0);
    CHECK(lambda0(p, l, grid).lambda0 > 0.0);
}

TEST_CASE("degenerate interval is rejected") {
    const Grid grid = build_grid(0.02);
    CHECK_THROWS_AS(lambda0(testsup::p1(), 0.03, grid), DegenerateDomain);
}
