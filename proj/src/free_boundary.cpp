#include "epifront/free_boundary.hpp"

#include <cmath>

namespace epifront {

std::string tag_name(Tag t) {
    switch (t) {
    case Tag::Spreading: return "Spreading";
    case Tag::Vanishing: return "Vanishing";
    case Tag::Undecided: return "Undecided";
    }
    return "?";
}

std::string trigger_name(Trigger t) {
    switch (t) {
    case Trigger::WidthExceeds2Lstar: return "WidthExceeds2Lstar";
    case Trigger::FrontsStalledAndMassDecayed: return "FrontsStalledAndMassDecayed";
    case Trigger::HorizonReached: return "HorizonReached";
    }
    return "?";
}

InitialShape initial_shape_from_name(const std::string& name) {
    if (name == "tent") return InitialShape::Tent;
    if (name == "cosine") return InitialShape::RaisedCosine;
    if (name == "plateau") return InitialShape::SmoothedPlateau;
    throw InvalidParam("unknown initial shape: " + name);
}

InitialData make_initial_data(const Grid& grid, InitialShape shape, double h0, double amp_u,
                              double amp_v) {
    if (!(h0 > 0.0)) throw InvalidParam("initial data: h0 must be positive");
    if (!(amp_u > 0.0) || !(amp_v > 0.0))
        throw InvalidParam("initial data: amplitudes must be positive");
    const DomainSlice dom = slice_domain(grid, -h0, h0);
    if (dom.empty()) throw EmptyDomain("initial data: no lattice node inside (-h0, h0)");

    auto profile = [&](double xi) { // xi in (-1, 1)
        switch (shape) {
        case InitialShape::Tent: return 1.0 - std::abs(xi);
        case InitialShape::RaisedCosine: return 0.5 * (1.0 + std::cos(M_PI * xi));
        case InitialShape::SmoothedPlateau: return std::min(1.0, (1.0 - std::abs(xi)) / 0.2);
        }
        return 0.0;
    };

    InitialData init;
    init.h0 = h0;
    init.u0.resize(dom.size());
    init.v0.resize(dom.size());
    for (long i = 0; i < dom.size(); ++i) {
        const double xi = grid.node(dom.j_lo + i) / h0;
        init.u0[i] = amp_u * profile(xi);
        init.v0[i] = amp_v * profile(xi);
    }
    return init;
}

namespace {

std::pair<double, double> sup_bounds(const ModelParams& p, const InitialData& init) {
    const double sup_u0 = init.u0.size() ? init.u0.maxCoeff() : 0.0;
    const double sup_v0 = init.v0.size() ? init.v0.maxCoeff() : 0.0;
    const auto eq = equilibrium(p);
    const double ustar = eq ? eq->first : 0.0;
    const double K1 = std::max({ustar, sup_u0, p.a12 / p.a11 * sup_v0});
    const double K2 = std::max(sup_v0, p.reaction(K1) / p.a22);
    return {K1, K2};
}

std::optional<Classification> decide_from_stats(const std::vector<FrameStats>& stats, double dx,
                                                std::optional<double> lstar,
                                                const ClassifyOptions& opts, double eps_mass) {
    for (size_t k = 1; k < stats.size(); ++k) {
        const FrameStats& s = stats[k];
        const double width = s.h - s.g;
        if (lstar && width > 2.0 * (*lstar) + dx) {
            Classification c;
            c.tag = Tag::Spreading;
            c.trigger = Trigger::WidthExceeds2Lstar;
            c.decision_time = s.t;
            c.width_at_decision = width;
            return c;
        }
        if (s.t < opts.window) continue;
        // trailing window [t - window, t]
        size_t j0 = k;
        while (j0 > 0 && stats[j0 - 1].t >= s.t - opts.window) --j0;
        if (j0 == k) continue;
        const double span = s.t - stats[j0].t;
        const double width_rate = (width - (stats[j0].h - stats[j0].g)) / span;
        double sup = 0.0;
        for (size_t j = j0; j <= k; ++j) sup = std::max(sup, stats[j].sup_u + stats[j].sup_v);
        if (width_rate < opts.eps_front && sup < eps_mass) {
            Classification c;
            c.tag = Tag::Vanishing;
            c.trigger = Trigger::FrontsStalledAndMassDecayed;
            c.decision_time = s.t;
            c.width_at_decision = width;
            return c;
        }
    }
    return std::nullopt;
}

double auto_eps_mass(const std::vector<FrameStats>& stats, const ClassifyOptions& opts) {
    if (opts.eps_mass >= 0.0) return opts.eps_mass;
    const double sup0 = stats.empty() ? 1.0 : std::max(stats[0].sup_u, stats[0].sup_v);
    return 1e-8 * sup0;
}

} // namespace

RunResult evolve(const ModelParams& p, const InitialData& init, const Grid& grid, double dt,
                 double T, long stride, const EarlyStop* early) {
    p.check();
    if (dt * std::max(p.d1 + p.a11, p.d2 + p.a22) >= 1.0)
        throw StepTooLarge("evolve: dt * max(d1+a11, d2+a22) must be below 1");
    if (stride < 1) stride = 1;

    RunResult run;
    run.params = p;
    run.grid = grid;
    run.h0 = init.h0;
    run.dt = dt;
    run.T = T;
    run.stride = stride;

    const KernelBand b1 = sample_band(p.J1, grid.dx);
    const KernelBand b2 = sample_band(p.J2, grid.dx);
    const KernelBand bk = sample_band(p.K, grid.dx);

    double g = -init.h0, h = init.h0;
    DomainSlice dom = slice_domain(grid, g, h);
    if (init.u0.size() != dom.size() || init.v0.size() != dom.size())
        throw ShapeMismatch("evolve: initial fields do not match the starting slice");
    if (init.u0.minCoeff() < 0.0 || init.v0.minCoeff() < 0.0)
        throw InvalidParam("evolve: initial fields must be nonnegative");

    Eigen::VectorXd u = init.u0, v = init.v0;
    auto [K1, K2] = sup_bounds(p, init);
    run.diagnostics.K1 = K1;
    run.diagnostics.K2 = K2;
    const double bound_tol = 1e-10;
    const double mass_w = p.a12 / p.a22;

    const double eps_mass_auto =
        1e-8 * std::max(init.u0.maxCoeff(), init.v0.maxCoeff());

    auto record = [&](double t) {
        const Eigen::VectorXd w = slice_weights(grid, dom);
        const auto [g_rate, h_rate] = boundary_flux(p, grid, dom, {u, v});
        FrameStats s;
        s.t = t;
        s.g = g;
        s.h = h;
        s.sup_u = u.size() ? u.maxCoeff() : 0.0;
        s.sup_v = v.size() ? v.maxCoeff() : 0.0;
        s.mass = w.dot(u) + mass_w * w.dot(v);
        s.g_rate = g_rate;
        s.h_rate = h_rate;
        run.stats.push_back(s);
        run.frames.push_back({t, g, h, dom.j_lo, u, v});
    };

    record(0.0);

    const long nsteps = static_cast<long>(std::llround(T / dt));
    for (long k = 0; k < nsteps; ++k) {
        const Eigen::VectorXd w = slice_weights(grid, dom);
        const Eigen::VectorXd cu = apply_conv(b1, w, u);
        const Eigen::VectorXd cv = apply_conv(b2, w, v);
        const Eigen::VectorXd ck = apply_conv(bk, w, v);
        const auto [g_rate, h_rate] = boundary_flux(p, grid, dom, {u, v});

        Eigen::VectorXd un = u + dt * (p.d1 * cu - (p.d1 + p.a11) * u + p.a12 * ck);
        Eigen::VectorXd vn(v.size());
        for (long i = 0; i < v.size(); ++i)
            vn[i] = v[i] + dt * (p.d2 * cv[i] - (p.d2 + p.a22) * v[i] + p.reaction(u[i]));

        for (long i = 0; i < un.size(); ++i) {
            if (un[i] < -bound_tol || vn[i] < -bound_tol) ++run.diagnostics.positivity_violations;
            const double excess = std::max(un[i] - K1, vn[i] - K2);
            if (excess > bound_tol) {
                ++run.diagnostics.bound_violations;
                run.diagnostics.max_bound_excess =
                    std::max(run.diagnostics.max_bound_excess, excess);
            }
        }

        if (dt * h_rate >= grid.dx || -dt * g_rate >= grid.dx)
            throw FrontOvershoot("evolve: front moved a full cell in one step; reduce dt");
        run.diagnostics.max_front_retreat =
            std::max({run.diagnostics.max_front_retreat, -dt * h_rate, dt * g_rate});

        g += dt * g_rate;
        h += dt * h_rate;
        const DomainSlice ndom = slice_domain(grid, g, h);
        if (ndom.j_lo < dom.j_lo || ndom.j_hi > dom.j_hi) {
            Eigen::VectorXd u2 = Eigen::VectorXd::Zero(ndom.size());
            Eigen::VectorXd v2 = Eigen::VectorXd::Zero(ndom.size());
            u2.segment(dom.j_lo - ndom.j_lo, un.size()) = un;
            v2.segment(dom.j_lo - ndom.j_lo, vn.size()) = vn;
            un = std::move(u2);
            vn = std::move(v2);
        }
        dom = ndom;
        u = std::move(un);
        v = std::move(vn);

        if ((k + 1) % stride == 0 || k + 1 == nsteps) {
            record(dt * static_cast<double>(k + 1));
            if (early) {
                std::optional<double> lstar_rule;
                if (std::isfinite(early->spread_width))
                    lstar_rule = 0.5 * (early->spread_width - grid.dx);
                ClassifyOptions opts = early->opts;
                if (!early->vanish) opts.window = std::numeric_limits<double>::infinity();
                const double eps_mass =
                    opts.eps_mass >= 0.0 ? opts.eps_mass : eps_mass_auto;
                auto decision =
                    decide_from_stats(run.stats, grid.dx, lstar_rule, opts, eps_mass);
                if (decision) {
                    run.classification = *decision;
                    return run;
                }
            }
        }
    }
    run.classification = Classification{}; // undecided at the horizon
    run.classification.decision_time = T;
    if (!run.stats.empty())
        run.classification.width_at_decision = run.stats.back().h - run.stats.back().g;
    return run;
}

Classification classify(const RunResult& run, std::optional<double> lstar, ClassifyOptions opts) {
    if (r0(run.params) > 1.0 && !lstar)
        throw MissingLstar("classify: lstar is required when r0 > 1");
    const double eps_mass = auto_eps_mass(run.stats, opts);
    auto decision = decide_from_stats(run.stats, run.grid.dx, lstar, opts, eps_mass);
    Classification c;
    if (decision) {
        c = *decision;
    } else {
        c.tag = Tag::Undecided;
        c.trigger = Trigger::HorizonReached;
        c.decision_time = run.stats.empty() ? 0.0 : run.stats.back().t;
        c.width_at_decision = run.stats.empty() ? 0.0 : run.stats.back().h - run.stats.back().g;
    }
    if (c.tag == Tag::Vanishing) {
        const FrameStats& last = run.stats.back();
        const double l_final = 0.5 * (last.h - last.g);
        if (l_final >= 2.0 * run.grid.dx) {
            c.final_lambda0 = lambda0(run.params, l_final, run.grid).lambda0;
            c.lambda0_checked = true;
        }
    }
    return c;
}

MuStarResult find_mustar(const ModelParams& p, const InitialData& init, const Grid& grid,
                         double mu_lo, double mu_hi, double horizon, double tol, double dt_hint,
                         long stride) {
    p.check();
    if (!(0.0 < mu_lo && mu_lo < mu_hi)) throw InvalidParam("find_mustar: need 0 < mu_lo < mu_hi");

    const LstarResult ls = find_lstar(p, grid, 4.0 * init.h0 + 8.0, 1e-3); // throws when r0 <= 1
    if (init.h0 >= ls.lstar)
        throw DegenerateRegime("find_mustar: h0 >= lstar, spreading holds for every mu");

    const auto [K1, K2] = sup_bounds(p, init);
    const double flux_per_mu =
        K1 * p.J1.tail_integral() + p.rho * K2 * p.J2.tail_integral(); // front speed / mu

    MuStarResult out;
    out.lstar = ls.lstar;

    EarlyStop early;
    early.spread_width = 2.0 * ls.lstar + grid.dx;
    early.vanish = true;

    auto probe = [&](double mu) {
        ModelParams q = p;
        q.mu = mu;
        double dt = dt_hint;
        const double cap = 0.5 * grid.dx / std::max(1e-300, mu * flux_per_mu);
        while (dt > cap) dt *= 0.5; // halving keeps step counts integral
        RunResult run = evolve(q, init, grid, dt, horizon, stride, &early);
        Classification c = classify(run, ls.lstar);
        out.ledger.push_back({mu, c.tag, c.decision_time, dt});
        return c.tag;
    };

    if (probe(mu_lo) != Tag::Vanishing)
        throw InconsistentMonotonicity(
            "find_mustar: the lower bracket end did not vanish; widen the bracket or the horizon");
    if (probe(mu_hi) != Tag::Spreading)
        throw InconsistentMonotonicity(
            "find_mustar: the upper bracket end did not spread; widen the bracket or the horizon");

    // Probes right at the threshold may fail to decide within the horizon.
    // Such probes are reported in the ledger, and the bracket keeps
    // shrinking through the quarter points, which sit farther from the
    // threshold and decide sooner. Refinement stops only when the whole
    // remaining bracket is undecidable at this horizon.
    double lo = mu_lo, hi = mu_hi;
    while (hi - lo > tol) {
        bool progressed = false;
        for (double f : {0.5, 0.25, 0.75}) {
            const double mu = lo + f * (hi - lo);
            const Tag tag = probe(mu);
            if (tag == Tag::Vanishing) {
                lo = mu;
                progressed = true;
                break;
            }
            if (tag == Tag::Spreading) {
                hi = mu;
                progressed = true;
                break;
            }
        }
        if (!progressed) break;
    }

    // the ledger must order vanishing strictly below spreading
    double max_vanish = 0.0, min_spread = std::numeric_limits<double>::infinity();
    for (const auto& row : out.ledger) {
        if (row.tag == Tag::Vanishing) max_vanish = std::max(max_vanish, row.mu);
        if (row.tag == Tag::Spreading) min_spread = std::min(min_spread, row.mu);
    }
    if (max_vanish >= min_spread)
        throw InconsistentMonotonicity(
            "find_mustar: a larger mu vanished while a smaller one spread; the horizon or dt "
            "is too coarse");

    out.mu_star = 0.5 * (lo + hi);
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    return out;
}

PicardResult picard_reference(const ModelParams& p, const InitialData& init, const Grid& grid,
                              double T_short, double dt, double fp_tol) {
    p.check();
    {
        const DomainSlice dom0 = slice_domain(grid, -init.h0, init.h0);
        if (init.u0.size() != dom0.size() || init.v0.size() != dom0.size())
            throw ShapeMismatch("picard_reference: initial fields do not match the slice");
        if (init.u0.minCoeff() < 0.0 || init.v0.minCoeff() < 0.0)
            throw InvalidParam("picard_reference: initial fields must be nonnegative");
    }
    const auto [K1, K2] = sup_bounds(p, init);
    const double c = p.mu * (K1 + p.rho * K2);
    const double s_min = std::min(p.J1.support_radius, p.J2.support_radius);
    if (T_short <= 0.0) T_short = std::log1p(s_min / (8.0 * init.h0)) / c;
    if (dt > T_short / 20.0) dt = T_short / 20.0;
    if (dt * std::max(p.d1 + p.a11, p.d2 + p.a22) >= 1.0)
        throw StepTooLarge("picard_reference: dt too large for the field update");

    const long nsteps = std::max<long>(1, static_cast<long>(std::llround(T_short / dt)));
    const KernelBand b1 = sample_band(p.J1, grid.dx);
    const KernelBand b2 = sample_band(p.J2, grid.dx);
    const KernelBand bk = sample_band(p.K, grid.dx);

    PicardResult out;
    out.T_short = T_short;
    out.dt = dt;
    out.t.resize(nsteps + 1);
    for (long k = 0; k <= nsteps; ++k) out.t[k] = dt * static_cast<double>(k);

    std::vector<double> gp(nsteps + 1, -init.h0), hp(nsteps + 1, init.h0);

    const long max_outer = 200;
    for (long it = 0; it < max_outer; ++it) {
        // field solve along the frozen paths, collecting flux series
        std::vector<double> grate(nsteps + 1), hrate(nsteps + 1);
        DomainSlice dom = slice_domain(grid, gp[0], hp[0]);
        Eigen::VectorXd u = init.u0, v = init.v0;
        for (long k = 0; k <= nsteps; ++k) {
            if (k > 0) {
                const DomainSlice ndom = slice_domain(grid, gp[k], hp[k]);
                if (ndom.j_lo < dom.j_lo || ndom.j_hi > dom.j_hi) {
                    Eigen::VectorXd u2 = Eigen::VectorXd::Zero(ndom.size());
                    Eigen::VectorXd v2 = Eigen::VectorXd::Zero(ndom.size());
                    u2.segment(dom.j_lo - ndom.j_lo, u.size()) = u;
                    v2.segment(dom.j_lo - ndom.j_lo, v.size()) = v;
                    u = std::move(u2);
                    v = std::move(v2);
                }
                dom = ndom;
            }
            const auto [gr, hr] = boundary_flux(p, grid, dom, {u, v});
            grate[k] = gr;
            hrate[k] = hr;
            if (k == nsteps) break;
            const Eigen::VectorXd w = slice_weights(grid, dom);
            const Eigen::VectorXd cu = apply_conv(b1, w, u);
            const Eigen::VectorXd cv = apply_conv(b2, w, v);
            const Eigen::VectorXd ck = apply_conv(bk, w, v);
            Eigen::VectorXd un = u + dt * (p.d1 * cu - (p.d1 + p.a11) * u + p.a12 * ck);
            for (long i = 0; i < v.size(); ++i)
                v[i] = v[i] + dt * (p.d2 * cv[i] - (p.d2 + p.a22) * v[i] + p.reaction(u[i]));
            u = std::move(un);
        }

        // path update by trapezoid accumulation of the fluxes
        std::vector<double> gn(nsteps + 1), hn(nsteps + 1);
        gn[0] = -init.h0;
        hn[0] = init.h0;
        for (long k = 0; k < nsteps; ++k) {
            gn[k + 1] = gn[k] + 0.5 * dt * (grate[k] + grate[k + 1]);
            hn[k + 1] = hn[k] + 0.5 * dt * (hrate[k] + hrate[k + 1]);
        }
        double change = 0.0;
        for (long k = 0; k <= nsteps; ++k)
            change = std::max({change, std::abs(gn[k] - gp[k]), std::abs(hn[k] - hp[k])});
        gp = std::move(gn);
        hp = std::move(hn);

        if (!out.path_changes.empty() && change > out.path_changes.back() && change > fp_tol)
            throw NoContraction("picard_reference: path change grew; shrink T_short");
        out.path_changes.push_back(change);
        out.iterations = it + 1;
        if (change < fp_tol) break;
    }
    if (out.path_changes.empty() || out.path_changes.back() >= fp_tol)
        throw NoConvergence("picard_reference: fixed point not reached");

    out.g = gp;
    out.h = hp;

    // front-slope lower bounds evaluated from the initial data
    const double eps0 = 0.25 * std::min(init.h0, s_min);
    const double theta0 = std::min(p.J1.density(eps0), p.J2.density(eps0));
    const DomainSlice dom0 = slice_domain(grid, -init.h0, init.h0);
    auto edge_integral = [&](const Eigen::VectorXd& f, bool right) {
        const double a = right ? init.h0 - 0.25 * eps0 : -init.h0;
        const double b = right ? init.h0 : -init.h0 + 0.25 * eps0;
        double acc = 0.0;
        for (long i = 0; i < dom0.size(); ++i) {
            const double x = grid.node(dom0.j_lo + i);
            if (x >= a && x <= b) acc += grid.dx * f[i];
        }
        return acc;
    };
    const double e1 = std::exp(-(p.d1 + p.a11) * T_short);
    const double e2 = std::exp(-(p.d2 + p.a22) * T_short);
    out.delta1 = 0.25 * eps0 * theta0 *
                 (e1 * edge_integral(init.u0, true) + p.rho * e2 * edge_integral(init.v0, true));
    out.delta2 = 0.25 * eps0 * theta0 *
                 (e1 * edge_integral(init.u0, false) + p.rho * e2 * edge_integral(init.v0, false));

    out.min_h_slope = std::numeric_limits<double>::infinity();
    out.max_g_slope = -std::numeric_limits<double>::infinity();
    for (long k = 0; k < nsteps; ++k) {
        out.min_h_slope = std::min(out.min_h_slope, (hp[k + 1] - hp[k]) / dt);
        out.max_g_slope = std::max(out.max_g_slope, (gp[k + 1] - gp[k]) / dt);
    }
    return out;
}

ComparisonReport comparison_check(const RunResult& lower, const RunResult& upper, double tol) {
    if (lower.grid.dx != upper.grid.dx || lower.dt != upper.dt || lower.stride != upper.stride)
        throw GridMismatch("comparison_check: runs use different discretizations");
    const size_t n = std::min(lower.frames.size(), upper.frames.size());

    // raw ordering margins (0 for identical runs); violations are counted
    // against the allowed slack: one cell for the fronts, tol for fields
    ComparisonReport rep;
    rep.worst_h = rep.worst_g = rep.worst_u = rep.worst_v =
        std::numeric_limits<double>::infinity();
    const double dx = lower.grid.dx;
    for (size_t k = 0; k < n; ++k) {
        const Frame& lo = lower.frames[k];
        const Frame& up = upper.frames[k];
        if (std::abs(lo.t - up.t) > 1e-12)
            throw GridMismatch("comparison_check: frame times differ");
        rep.worst_h = std::min(rep.worst_h, up.h - lo.h);
        rep.worst_g = std::min(rep.worst_g, lo.g - up.g);
        const long lo_end = lo.j_lo + lo.u.size();
        const long up_end = up.j_lo + up.u.size();
        const long j0 = std::max(lo.j_lo, up.j_lo);
        const long j1 = std::min(lo_end, up_end);
        for (long j = j0; j < j1; ++j) {
            rep.worst_u = std::min(rep.worst_u, up.u[j - up.j_lo] - lo.u[j - lo.j_lo]);
            rep.worst_v = std::min(rep.worst_v, up.v[j - up.j_lo] - lo.v[j - lo.j_lo]);
        }
        ++rep.frames_checked;
    }
    if (rep.worst_h < -dx) ++rep.violations;
    if (rep.worst_g < -dx) ++rep.violations;
    if (rep.worst_u < -tol) ++rep.violations;
    if (rep.worst_v < -tol) ++rep.violations;
    return rep;
}

MassReport mass_diagnostic(const RunResult& run, const ModelParams& p, double rise_tol) {
    MassReport rep;
    rep.m0 = p.rho > 0.0 ? std::min(1.0, p.d2 * p.a12 / (p.rho * p.d1 * p.a22)) : 1.0;
    if (run.stats.empty()) return rep;

    const double m0d1_over_mu = rep.m0 * p.d1 / p.mu;
    for (const auto& s : run.stats) {
        rep.t.push_back(s.t);
        rep.mass.push_back(s.mass);
        rep.lyapunov.push_back(s.mass + m0d1_over_mu * (s.h - s.g));
    }
    const double M0 = rep.mass.front();
    if (rise_tol < 0.0) rise_tol = 1e-6 * std::max(M0, 1e-300);

    rep.width_bound_applicable = r0(p) <= 1.0;
    if (rep.width_bound_applicable) {
        const double bound = 2.0 * run.h0 + M0 / m0d1_over_mu;
        rep.worst_width_margin = std::numeric_limits<double>::infinity();
        for (const auto& s : run.stats)
            rep.worst_width_margin = std::min(rep.worst_width_margin, bound - (s.h - s.g));
        rep.width_bound_ok = rep.worst_width_margin >= 0.0;

        for (size_t k = 1; k < rep.lyapunov.size(); ++k) {
            const double rise = rep.lyapunov[k] - rep.lyapunov[k - 1];
            rep.worst_lyapunov_rise = std::max(rep.worst_lyapunov_rise, rise);
        }
        rep.lyapunov_nonincreasing = rep.worst_lyapunov_rise <= rise_tol;
    }
    return rep;
}

} // namespace epifront
