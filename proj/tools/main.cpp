#include <atomic>
#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "epifront/io.hpp"

using namespace epifront;
using nlohmann::json;

namespace {

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const SubcriticalModel*>(&e)) return "SubcriticalModel";
    if (dynamic_cast<const DegenerateRegime*>(&e)) return "DegenerateRegime";
    if (dynamic_cast<const NoBracket*>(&e)) return "NoBracket";
    if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
    if (dynamic_cast<const NoContraction*>(&e)) return "NoContraction";
    if (dynamic_cast<const InconsistentMonotonicity*>(&e)) return "InconsistentMonotonicity";
    if (dynamic_cast<const SingularResolvent*>(&e)) return "SingularResolvent";
    if (dynamic_cast<const MissingLstar*>(&e)) return "MissingLstar";
    if (dynamic_cast<const GridMismatch*>(&e)) return "GridMismatch";
    if (dynamic_cast<const SandwichViolation*>(&e)) return "SandwichViolation";
    if (dynamic_cast<const FrontOvershoot*>(&e)) return "FrontOvershoot";
    if (dynamic_cast<const StepTooLarge*>(&e)) return "StepTooLarge";
    if (dynamic_cast<const EmptyDomain*>(&e)) return "EmptyDomain";
    if (dynamic_cast<const DegenerateDomain*>(&e)) return "DegenerateDomain";
    if (dynamic_cast<const InvalidParam*>(&e)) return "InvalidParam";
    return "Error";
}

json run_summary_fields(const RunResult& run, const Classification& cls,
                        const MassReport& mass) {
    json r;
    r["classification"] = json::parse(classification_json(cls));
    json diag;
    diag["K1"] = run.diagnostics.K1;
    diag["K2"] = run.diagnostics.K2;
    diag["positivity_violations"] = run.diagnostics.positivity_violations;
    diag["bound_violations"] = run.diagnostics.bound_violations;
    diag["max_front_retreat"] = run.diagnostics.max_front_retreat;
    diag["mass_initial"] = mass.mass.empty() ? 0.0 : mass.mass.front();
    diag["mass_final"] = mass.mass.empty() ? 0.0 : mass.mass.back();
    if (mass.width_bound_applicable) {
        diag["width_bound_ok"] = mass.width_bound_ok;
        diag["worst_width_margin"] = mass.worst_width_margin;
        diag["lyapunov_nonincreasing"] = mass.lyapunov_nonincreasing;
    }
    r["diagnostics"] = diag;
    r["final_t"] = run.stats.empty() ? 0.0 : run.stats.back().t;
    r["final_width"] = run.stats.empty() ? 0.0 : run.stats.back().h - run.stats.back().g;
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"epifront: two-species epidemic fronts with nonlocal dispersal"};
    app.require_subcommand(1);

    std::string config_path, out_prefix = "out";
    double opt_T = -1, opt_dt = -1, opt_dx = -1, opt_l = -1, opt_mu = -1;
    long opt_stride = -1;
    std::string curve_kind;
    double curve_min = -1, curve_max = -1;
    long curve_points = 20;
    double mu_factor = 2.0, init_factor = 1.0;

    auto add_common = [&](CLI::App* sc) {
        sc->add_option("--config", config_path, "configuration file (key=value sections)");
        sc->add_option("--out", out_prefix, "output file prefix");
        sc->add_option("--T", opt_T, "time horizon override");
        sc->add_option("--dt", opt_dt, "time step override");
        sc->add_option("--dx", opt_dx, "lattice spacing override");
        sc->add_option("--stride", opt_stride, "frame stride override");
        return sc;
    };

    auto* c_validate = add_common(app.add_subcommand("validate", "check kernels and reaction"));
    auto* c_ode = add_common(app.add_subcommand("ode", "space-free two-component system"));
    auto* c_eigen = add_common(app.add_subcommand("eigen", "principal eigenvalue on [-l, l]"));
    c_eigen->add_option("--l", opt_l, "interval half-width");
    c_eigen->add_option("--curve", curve_kind, "dump a curve: 'lambda0' or 'ralpha'");
    c_eigen->add_option("--min", curve_min, "curve lower end");
    c_eigen->add_option("--max", curve_max, "curve upper end");
    c_eigen->add_option("--points", curve_points, "curve sample count");
    auto* c_lstar = add_common(app.add_subcommand("lstar", "critical interval half-width"));
    auto* c_steady = add_common(app.add_subcommand("steady", "steady state on [-l, l]"));
    c_steady->add_option("--l", opt_l, "interval half-width");
    auto* c_fixed = add_common(app.add_subcommand("fixed", "evolution on a fixed interval"));
    c_fixed->add_option("--l", opt_l, "interval half-width");
    auto* c_run = add_common(app.add_subcommand("run", "free-boundary evolution"));
    auto* c_mustar =
        add_common(app.add_subcommand("mustar", "critical front-expansion coefficient"));
    auto* c_sweep = add_common(app.add_subcommand("sweep", "classify a list of mu values"));
    auto* c_compare = add_common(app.add_subcommand("compare", "ordering check between runs"));
    c_compare->add_option("--mu-factor", mu_factor, "mu scale for the upper run");
    c_compare->add_option("--init-factor", init_factor, "initial-data scale for the upper run");
    auto* c_picard =
        add_common(app.add_subcommand("picard-check", "fixed-point reference comparison"));
    c_picard->add_option("--mu", opt_mu, "mu override");

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = parse_config(config_path);
        if (opt_T > 0) cfg.T = opt_T;
        if (opt_dt > 0) cfg.dt = opt_dt;
        if (opt_dx > 0) cfg.dx = opt_dx;
        if (opt_stride > 0) cfg.stride = opt_stride;
        if (opt_l > 0) cfg.l = opt_l;
        if (opt_mu > 0) cfg.mu = opt_mu;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    const std::string prefix = resolve_output_path(out_prefix);
    try {
        const Grid grid = cfg.grid();

        if (c_validate->parsed()) {
            const ModelParams p = cfg.to_params();
            json out;
            out["J1"] = json::parse(validate_kernel(p.J1, cfg.dx, 1e-6).to_json());
            out["J2"] = json::parse(validate_kernel(p.J2, cfg.dx, 1e-6).to_json());
            out["K"] = json::parse(validate_kernel(p.K, cfg.dx, 1e-6).to_json());
            const std::vector<double> zs{0.1, 1.0, 10.0, 100.0};
            out["reaction"] = json::parse(validate_reaction(p, zs).to_json());
            std::cout << summary_json(cfg, "validate", out.dump());
            bool ok = true;
            for (const auto& [key, rep] : out.items())
                for (const auto& [name, chk] : rep.items()) ok = ok && chk["pass"].get<bool>();
            return ok ? 0 : 1;
        }

        if (c_ode->parsed()) {
            const ModelParams p = cfg.to_params();
            auto series = ode_trajectory(p, cfg.ode_u0, cfg.ode_v0, cfg.dt, cfg.T, cfg.stride);
            write_ode_csv(prefix + "_ode.csv", series);
            json r;
            r["final_u"] = series.back().u;
            r["final_v"] = series.back().v;
            std::cout << summary_json(cfg, "ode", r.dump());
            return 0;
        }

        if (c_eigen->parsed()) {
            const ModelParams p = cfg.to_params();
            if (curve_kind == "lambda0") {
                const double lo = curve_min > 0 ? curve_min : 2.0 * cfg.dx * 2.0;
                const double hi = curve_max > 0 ? curve_max : cfg.l;
                std::vector<double> ls, vals;
                for (long i = 0; i < curve_points; ++i) {
                    const double l =
                        lo + (hi - lo) * static_cast<double>(i) /
                                 static_cast<double>(std::max<long>(1, curve_points - 1));
                    ls.push_back(l);
                    vals.push_back(lambda0(p, l, grid, cfg.eigen_tol).lambda0);
                }
                write_curve_csv(prefix + "_lambda0_curve.csv", "l", "lambda0", ls, vals);
                json r;
                r["curve"] = prefix + "_lambda0_curve.csv";
                std::cout << summary_json(cfg, "eigen", r.dump());
                return 0;
            }
            if (curve_kind == "ralpha") {
                std::vector<double> alphas;
                const double lo = curve_min, hi = curve_max;
                for (long i = 0; i < curve_points; ++i)
                    alphas.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                              static_cast<double>(std::max<long>(1, curve_points - 1)));
                const SpectralCurve curve = spectral_curve(p, cfg.l, grid, alphas);
                write_curve_csv(prefix + "_ralpha_curve.csv", "alpha", "r", curve.alphas,
                                curve.r_values);
                json r;
                r["curve"] = prefix + "_ralpha_curve.csv";
                std::cout << summary_json(cfg, "eigen", r.dump());
                return 0;
            }
            const IntervalMesh mesh = interval_mesh(grid, cfg.l);
            if (mesh.capped)
                std::cerr << "warning: mesh capped at " << mesh.size()
                          << " nodes per component; effective spacing " << mesh.delta
                          << " exceeds dx, expect reduced accuracy\n";
            const EigenResult res = lambda0(p, cfg.l, grid, cfg.eigen_tol);
            json r;
            r["l"] = cfg.l;
            r["lambda0"] = res.lambda0;
            r["residual"] = res.residual;
            r["iterations"] = res.iterations;
            r["mesh_capped"] = mesh.capped;
            std::cout << summary_json(cfg, "eigen", r.dump());
            return 0;
        }

        if (c_lstar->parsed()) {
            const ModelParams p = cfg.to_params();
            const LstarResult res = find_lstar(p, grid, cfg.l_max, cfg.lstar_tol);
            json r;
            r["lstar"] = res.lstar;
            r["bracket_lo"] = res.bracket_lo;
            r["bracket_hi"] = res.bracket_hi;
            r["lambda0_at_lo"] = res.lambda0_lo;
            r["lambda0_at_hi"] = res.lambda0_hi;
            std::cout << summary_json(cfg, "lstar", r.dump());
            return 0;
        }

        if (c_steady->parsed()) {
            const ModelParams p = cfg.to_params();
            const SteadyState st = steady_state(p, cfg.l, grid, cfg.steady_tol);
            write_steady_csv(prefix + "_steady.csv", st);
            json r;
            r["l"] = st.l;
            r["kind"] = st.kind == SteadyKind::Positive ? "Positive" : "Trivial";
            r["iterations"] = st.iterations;
            r["gap"] = st.gap;
            r["residual"] = st.residual;
            r["eps_lower"] = st.eps_lower;
            std::cout << summary_json(cfg, "steady", r.dump());
            return 0;
        }

        if (c_fixed->parsed()) {
            const ModelParams p = cfg.to_params();
            const IntervalMesh mesh = interval_mesh(grid, cfg.l);
            Eigen::VectorXd u0(mesh.size()), v0(mesh.size());
            for (long i = 0; i < mesh.size(); ++i) {
                const double xi = mesh.x[i] / cfg.l;
                const double s = std::max(0.0, 1.0 - std::abs(xi));
                u0[i] = cfg.amp_u * s;
                v0[i] = cfg.amp_v * s;
            }
            auto frames = evolve_fixed(p, cfg.l, grid, u0, v0, cfg.dt, cfg.T, cfg.stride);
            std::ostringstream csv;
            csv << "t,x,u,v\n";
            for (const auto& f : frames)
                for (long i = 0; i < mesh.size(); ++i)
                    csv << format_number(f.t) << ',' << format_number(mesh.x[i]) << ','
                        << format_number(f.u[i]) << ',' << format_number(f.v[i]) << '\n';
            write_text_file(prefix + "_fixed.csv", csv.str());
            json r;
            r["frames"] = frames.size();
            r["final_sup_u"] = frames.back().u.maxCoeff();
            r["final_sup_v"] = frames.back().v.maxCoeff();
            std::cout << summary_json(cfg, "fixed", r.dump());
            return 0;
        }

        if (c_run->parsed()) {
            const ModelParams p = cfg.to_params();
            const InitialData init = cfg.initial_data(grid);
            const RunResult run = evolve(p, init, grid, cfg.dt, cfg.T, cfg.stride);
            std::optional<double> lstar;
            json r;
            if (r0(p) > 1.0) {
                const LstarResult ls = find_lstar(p, grid, cfg.l_max, cfg.lstar_tol);
                lstar = ls.lstar;
                r["lstar"] = ls.lstar;
            }
            ClassifyOptions opts;
            opts.eps_front = cfg.eps_front;
            opts.window = cfg.window;
            opts.eps_mass = cfg.mass_eps_factor *
                            std::max(init.u0.maxCoeff(), init.v0.maxCoeff());
            const Classification cls = classify(run, lstar, opts);
            const MassReport mass = mass_diagnostic(run, p);
            write_frames_csv(prefix + "_frames.csv", run);
            write_fronts_csv(prefix + "_fronts.csv", run);
            const json fields = run_summary_fields(run, cls, mass);
            json merged = fields;
            if (lstar) merged["lstar"] = *lstar;
            const std::string summary = summary_json(cfg, "run", merged.dump());
            write_text_file(prefix + "_summary.json", summary);
            std::cout << summary;
            return 0;
        }

        if (c_mustar->parsed()) {
            const ModelParams p = cfg.to_params();
            const InitialData init = cfg.initial_data(grid);
            const MuStarResult res = find_mustar(p, init, grid, cfg.mu_lo, cfg.mu_hi,
                                                 cfg.horizon, cfg.mustar_tol, cfg.dt, cfg.stride);
            append_sweep_rows(prefix + "_results.csv", cfg.content_hash(), res.ledger);
            json r;
            r["mu_star"] = res.mu_star;
            r["bracket_lo"] = res.bracket_lo;
            r["bracket_hi"] = res.bracket_hi;
            r["lstar"] = res.lstar;
            json ledger = json::array();
            for (const auto& row : res.ledger) {
                json jr;
                jr["mu"] = row.mu;
                jr["classification"] = tag_name(row.tag);
                jr["decision_time"] = row.decision_time;
                jr["dt"] = row.dt_used;
                ledger.push_back(jr);
            }
            r["ledger"] = ledger;
            std::cout << summary_json(cfg, "mustar", r.dump());
            return 0;
        }

        if (c_sweep->parsed()) {
            const ModelParams p = cfg.to_params();
            const InitialData init = cfg.initial_data(grid);
            if (cfg.mus.empty()) throw InvalidParam("sweep: numerics.mus is empty");
            std::optional<double> lstar;
            if (r0(p) > 1.0) lstar = find_lstar(p, grid, cfg.l_max, cfg.lstar_tol).lstar;

            std::vector<MuStarLedgerRow> rows(cfg.mus.size());
            std::atomic<size_t> next{0};
            auto worker = [&]() {
                for (size_t i; (i = next.fetch_add(1)) < cfg.mus.size();) {
                    ModelParams q = p;
                    q.mu = cfg.mus[i];
                    EarlyStop early;
                    if (lstar) early.spread_width = 2.0 * *lstar + grid.dx;
                    early.vanish = true;
                    const RunResult run = evolve(q, init, grid, cfg.dt, cfg.T, cfg.stride, &early);
                    const Classification cls = classify(run, lstar);
                    rows[i] = {cfg.mus[i], cls.tag, cls.decision_time, cfg.dt};
                }
            };
            std::vector<std::thread> pool;
            const long nt = std::max<long>(1, std::min<long>(cfg.threads,
                                                             static_cast<long>(cfg.mus.size())));
            for (long i = 0; i < nt; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();

            append_sweep_rows(prefix + "_results.csv", cfg.content_hash(), rows);
            json r;
            r["rows"] = rows.size();
            r["results_csv"] = prefix + "_results.csv";
            std::cout << summary_json(cfg, "sweep", r.dump());
            return 0;
        }

        if (c_compare->parsed()) {
            const ModelParams p = cfg.to_params();
            const InitialData base = cfg.initial_data(grid);
            InitialData bigger = base;
            bigger.u0 *= init_factor;
            bigger.v0 *= init_factor;
            ModelParams q = p;
            q.mu = p.mu * mu_factor;
            const RunResult lower = evolve(p, base, grid, cfg.dt, cfg.T, cfg.stride);
            const RunResult upper = evolve(q, bigger, grid, cfg.dt, cfg.T, cfg.stride);
            const ComparisonReport rep = comparison_check(lower, upper, 1e-9);
            json r;
            r["frames_checked"] = rep.frames_checked;
            r["violations"] = rep.violations;
            r["worst_h"] = rep.worst_h;
            r["worst_g"] = rep.worst_g;
            r["worst_u"] = rep.worst_u;
            r["worst_v"] = rep.worst_v;
            std::cout << summary_json(cfg, "compare", r.dump());
            return rep.violations == 0 ? 0 : 1;
        }

        if (c_picard->parsed()) {
            const ModelParams p = cfg.to_params();
            const InitialData init = cfg.initial_data(grid);
            const PicardResult pic =
                picard_reference(p, init, grid, cfg.T_short, cfg.dt, cfg.fp_tol);
            const RunResult run = evolve(p, init, grid, pic.dt, pic.T_short, 1);
            double agree = 0.0;
            const size_t n = std::min(pic.t.size(), run.stats.size());
            for (size_t k = 0; k < n; ++k)
                agree = std::max({agree, std::abs(pic.h[k] - run.stats[k].h),
                                  std::abs(pic.g[k] - run.stats[k].g)});
            json r;
            r["T_short"] = pic.T_short;
            r["iterations"] = pic.iterations;
            r["front_path_agreement"] = agree;
            r["delta1"] = pic.delta1;
            r["delta2"] = pic.delta2;
            r["min_h_slope"] = pic.min_h_slope;
            r["mu_delta1"] = p.mu * pic.delta1;
            json changes = json::array();
            for (double c : pic.path_changes) changes.push_back(c);
            r["path_changes"] = changes;
            std::cout << summary_json(cfg, "picard-check", r.dump());
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"] = error_kind(e);
        err["message"] = e.what();
        std::cout << err.dump() << "\n";
        return 1;
    }
    return 2;
}
