#include <doctest.h>

#include "epifront/config.hpp"

using namespace epifront;

TEST_CASE("empty config text yields the documented defaults") {
    const RunConfig cfg = parse_config_text("");
    CHECK(cfg.d1 == 1.0);
    CHECK(cfg.a12 == 2.0);
    CHECK(cfg.rho == 1.0);
    CHECK(cfg.dx == 0.02);
    CHECK(cfg.dt == 0.01);
    CHECK(cfg.T == 100.0);
    CHECK(cfg.stride == 50);
    CHECK(cfg.init_shape == "tent");
    CHECK(cfg.h0 == 1.0);
    CHECK(cfg.j1.family == KernelFamily::Tent);
    CHECK(cfg.j1.width == 1.0);
    CHECK(cfg.eigen_tol == 1e-12);
    CHECK(cfg.steady_tol == 1e-8);
    CHECK(cfg.eps_front == 1e-6);
    CHECK(cfg.window == 10.0);
}

TEST_CASE("values, sections and comments parse") {
    const RunConfig cfg = parse_config_text(
        "# comment\n"
        "[model]\n"
        "a12 = 0.5   # subcritical\n"
        "mu=2.5\n"
        "[kernel.K]\n"
        "family = gaussian\n"
        "sigma = 0.7\n"
        "truncation = 4.2\n"
        "[numerics]\n"
        "mus = 0.1, 1, 10\n"
        "threads = 3\n");
    CHECK(cfg.a12 == 0.5);
    CHECK(cfg.mu == 2.5);
    CHECK(cfg.kk.family == KernelFamily::TruncatedGaussian);
    CHECK(cfg.kk.sigma == 0.7);
    CHECK(cfg.mus.size() == 3);
    CHECK(cfg.mus[2] == 10.0);
    CHECK(cfg.threads == 3);
}

TEST_CASE("bad values are rejected with the key named") {
    try {
        parse_config_text("[model]\nd1 = -1\n");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("model.d1") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected and errors are aggregated") {
    try {
        parse_config_text("[model]\na13 = 1\nd1 = -2\n[numerics]\ndt = oops\n");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("unknown key 'model.a13'") != std::string::npos);
        CHECK(msg.find("model.d1") != std::string::npos);
        CHECK(msg.find("numerics.dt") != std::string::npos);
    }
}

TEST_CASE("canonical text round-trips and hashes deterministically") {
    RunConfig cfg;
    cfg.mu = 3.25;
    cfg.mus = {0.5, 1.5};
    const std::string text = cfg.canonical_text();
    const RunConfig back = parse_config_text(text);
    CHECK(back.canonical_text() == text);
    CHECK(back.content_hash() == cfg.content_hash());
    CHECK(cfg.content_hash().size() == 16);

    RunConfig other;
    other.mu = 3.26;
    CHECK(other.content_hash() != cfg.content_hash());
}

TEST_CASE("config builds model parameters and initial data") {
    const RunConfig cfg = parse_config_text("[model]\na12 = 0.5\n");
    const ModelParams p = cfg.to_params();
    CHECK(r0(p) == doctest::Approx(0.5));
    const Grid grid = cfg.grid();
    const InitialData init = cfg.initial_data(grid);
    CHECK(init.h0 == 1.0);
    CHECK(init.u0.minCoeff() > 0.0);
}
