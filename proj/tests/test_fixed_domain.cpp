#include <doctest.h>

#include <cmath>

#include "epifront/fixed_domain.hpp"
#include "support.hpp"

using namespace epifront;

namespace {

Eigen::VectorXd hat_profile(const IntervalMesh& mesh, double amp) {
    Eigen::VectorXd f(mesh.size());
    for (long i = 0; i < mesh.size(); ++i)
        f[i] = amp * (1.0 - std::abs(mesh.x[i]) / mesh.l);
    return f;
}

} // namespace

TEST_CASE("fixed-interval evolution: zero data stays zero") {
    const Grid grid = build_grid(0.05);
    const IntervalMesh mesh = interval_mesh(grid, 2.0);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(mesh.size());
    auto frames = evolve_fixed(testsup::p1(), 2.0, grid, zero, zero, 0.4, 20.0, 10);
    for (const auto& f : frames) {
        CHECK(f.u.cwiseAbs().maxCoeff() == 0.0);
        CHECK(f.v.cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("fixed-interval evolution dies out for subcritical parameters") {
    const Grid grid = build_grid(0.05);
    const IntervalMesh mesh = interval_mesh(grid, 5.0);
    auto frames = evolve_fixed(testsup::p2(), 5.0, grid, hat_profile(mesh, 1.0),
                               hat_profile(mesh, 1.0), 0.4, 400.0, 100);
    CHECK(frames.back().u.maxCoeff() + frames.back().v.maxCoeff() < 1e-6);
    for (const auto& f : frames) {
        CHECK(f.u.minCoeff() >= 0.0);
        CHECK(f.v.minCoeff() >= 0.0);
    }
}

TEST_CASE("fixed-interval evolution settles on the positive steady state") {
    const Grid grid = build_grid(0.02);
    const double l = 2.0 * testsup::kLstarP1;
    const SteadyState st = steady_state(testsup::p1(), l, grid, 1e-8);
    REQUIRE(st.kind == SteadyKind::Positive);

    const IntervalMesh mesh = interval_mesh(grid, l);
    auto frames = evolve_fixed(testsup::p1(), l, grid, hat_profile(mesh, 0.5),
                               hat_profile(mesh, 0.2), 0.4, 400.0, 200);
    const double du = (frames.back().u - st.w).cwiseAbs().maxCoeff();
    const double dv = (frames.back().v - st.z).cwiseAbs().maxCoeff();
    CHECK(du < 1e-4);
    CHECK(dv < 1e-4);
}

TEST_CASE("steady state is trivial below the critical length") {
    const Grid grid = build_grid(0.02);
    const SteadyState st = steady_state(testsup::p1(), 0.5 * testsup::kLstarP1, grid, 1e-8);
    CHECK(st.kind == SteadyKind::Trivial);
    CHECK(st.w.cwiseAbs().maxCoeff() == 0.0);
    CHECK(st.z.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("wide-interval steady state approaches the space-free equilibrium") {
    const Grid grid = build_grid(0.02);
    const SteadyState st = steady_state(testsup::p1(), 30.0, grid, 1e-8);
    REQUIRE(st.kind == SteadyKind::Positive);
    const long center = st.x.size() / 2;
    CHECK(std::abs(st.w[center] - 1.0) < 2e-2);
    CHECK(std::abs(st.z[center] - 0.5) < 2e-2);
    CHECK(st.residual <= 1e-8);
    CHECK(st.sandwich_margin >= -1e-12);
    CHECK(st.eps_lower > 0.0);
}

TEST_CASE("steady center value is nondecreasing in the interval length") {
    const Grid grid = build_grid(0.05);
    const SteadyState s6 = steady_state(testsup::p1(), 6.0, grid, 1e-8);
    const SteadyState s10 = steady_state(testsup::p1(), 10.0, grid, 1e-8);
    CHECK(s6.w[s6.x.size() / 2] <= s10.w[s10.x.size() / 2] + 1e-10);
    CHECK(s6.z[s6.x.size() / 2] <= s10.z[s10.x.size() / 2] + 1e-10);
}

TEST_CASE("distinct admissible upper starts reach the same steady state") {
    const Grid grid = build_grid(0.05);
    const SteadyState a = steady_state(testsup::p1(), 4.0, grid, 1e-9, 2.0);
    const SteadyState b = steady_state(testsup::p1(), 4.0, grid, 1e-9, 3.3);
    CHECK((a.w - b.w).cwiseAbs().maxCoeff() < 2e-9);
    CHECK((a.z - b.z).cwiseAbs().maxCoeff() < 2e-9);
}

TEST_CASE("steady state of a symmetric problem is even") {
    const Grid grid = build_grid(0.05);
    const SteadyState st = steady_state(testsup::p1(), 4.0, grid, 1e-10);
    const long n = st.x.size();
    double defect = 0.0;
    for (long i = 0; i < n; ++i)
        defect = std::max(defect, std::abs(st.w[i] - st.w[n - 1 - i]));
    CHECK(defect < 1e-10);
}

TEST_CASE("fixed-interval guards") {
    const Grid grid = build_grid(0.05);
    const IntervalMesh mesh = interval_mesh(grid, 2.0);
    const Eigen::VectorXd ok = hat_profile(mesh, 1.0);
    CHECK_THROWS_AS(evolve_fixed(testsup::p1(), 2.0, grid, ok, ok, 0.6, 10.0, 1), StepTooLarge);
    CHECK_THROWS_AS(
        evolve_fixed(testsup::p1(), 2.0, grid, Eigen::VectorXd::Ones(3), ok, 0.4, 10.0, 1),
        ShapeMismatch);
}
