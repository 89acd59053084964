#include "epifront/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

namespace epifront {

using nlohmann::json;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string resolve_output_path(const std::string& name) {
    const char* dir = std::getenv("EPIFRONT_OUTDIR");
    if (!dir || !*dir || name.empty() || name.front() == '/') return name;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + name;
}

namespace {

std::ofstream open_out(const std::string& path, bool append = false) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

} // namespace

void write_frames_csv(const std::string& path, const RunResult& run) {
    auto out = open_out(path);
    out << "t,g,h,x,u,v\n";
    for (const Frame& f : run.frames)
        for (long i = 0; i < f.u.size(); ++i)
            out << format_number(f.t) << ',' << format_number(f.g) << ',' << format_number(f.h)
                << ',' << format_number(run.grid.node(f.j_lo + i)) << ','
                << format_number(f.u[i]) << ',' << format_number(f.v[i]) << '\n';
}

void write_fronts_csv(const std::string& path, const RunResult& run) {
    auto out = open_out(path);
    out << "t,g,h,g_rate,h_rate\n";
    for (const FrameStats& s : run.stats)
        out << format_number(s.t) << ',' << format_number(s.g) << ',' << format_number(s.h) << ','
            << format_number(s.g_rate) << ',' << format_number(s.h_rate) << '\n';
}

void write_ode_csv(const std::string& path, const std::vector<OdeSample>& series) {
    auto out = open_out(path);
    out << "t,u,v\n";
    for (const auto& s : series)
        out << format_number(s.t) << ',' << format_number(s.u) << ',' << format_number(s.v)
            << '\n';
}

void write_steady_csv(const std::string& path, const SteadyState& st) {
    auto out = open_out(path);
    out << "x,w,z\n";
    for (long i = 0; i < st.x.size(); ++i)
        out << format_number(st.x[i]) << ',' << format_number(st.w[i]) << ','
            << format_number(st.z[i]) << '\n';
}

void write_curve_csv(const std::string& path, const std::string& xname, const std::string& yname,
                     const std::vector<double>& xs, const std::vector<double>& ys) {
    auto out = open_out(path);
    out << xname << ',' << yname << '\n';
    for (size_t i = 0; i < xs.size(); ++i)
        out << format_number(xs[i]) << ',' << format_number(ys[i]) << '\n';
}

void append_sweep_rows(const std::string& path, const std::string& config_hash,
                       const std::vector<MuStarLedgerRow>& rows) {
    const bool fresh = !std::ifstream(path).good();
    auto out = open_out(path, /*append=*/true);
    if (fresh) out << "config_hash,mu,classification,decision_time\n";
    for (const auto& r : rows)
        out << config_hash << ',' << format_number(r.mu) << ',' << tag_name(r.tag) << ','
            << format_number(r.decision_time) << '\n';
}

std::string classification_json(const Classification& c) {
    json j;
    j["tag"] = tag_name(c.tag);
    j["trigger"] = trigger_name(c.trigger);
    j["decision_time"] = c.decision_time;
    j["width_at_decision"] = c.width_at_decision;
    if (c.lambda0_checked) j["final_interval_lambda0"] = c.final_lambda0;
    return j.dump();
}

std::string summary_json(const RunConfig& cfg, const std::string& command,
                         const std::string& results_json) {
    json j;
    j["schema_version"] = 1;
    j["command"] = command;
    j["config_hash"] = cfg.content_hash();

    const ModelParams p = cfg.to_params();
    json params;
    params["d1"] = cfg.d1;
    params["d2"] = cfg.d2;
    params["a11"] = cfg.a11;
    params["a12"] = cfg.a12;
    params["a22"] = cfg.a22;
    params["mu"] = cfg.mu;
    params["rho"] = cfg.rho;
    params["beta"] = cfg.beta;
    params["kappa"] = cfg.kappa;
    params["kernel_J1"] = family_name(cfg.j1.family);
    params["kernel_J2"] = family_name(cfg.j2.family);
    params["kernel_K"] = family_name(cfg.kk.family);
    // effective support radii (the truncation radius for truncated families)
    params["kernel_support_J1"] = p.J1.support_radius;
    params["kernel_support_J2"] = p.J2.support_radius;
    params["kernel_support_K"] = p.K.support_radius;
    params["dx"] = cfg.dx;
    params["dt"] = cfg.dt;
    j["params"] = params;

    j["r0"] = r0(p);
    if (const auto eq = equilibrium(p)) {
        j["u_star"] = eq->first;
        j["v_star"] = eq->second;
    }
    j["results"] = json::parse(results_json);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
}

} // namespace epifront
