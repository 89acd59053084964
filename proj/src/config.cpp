#include "epifront/config.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace epifront {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, std::vector<std::string>& errs) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        errs.push_back("key '" + key + "': cannot parse number from '" + v + "'");
        return 0.0;
    }
}

long parse_long(const std::string& v, const std::string& key, std::vector<std::string>& errs) {
    try {
        size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        errs.push_back("key '" + key + "': cannot parse integer from '" + v + "'");
        return 0;
    }
}

KernelFamily parse_family(const std::string& v, const std::string& key,
                          std::vector<std::string>& errs) {
    if (v == "tent") return KernelFamily::Tent;
    if (v == "cosine") return KernelFamily::CosineBump;
    if (v == "gaussian") return KernelFamily::TruncatedGaussian;
    if (v == "algebraic") return KernelFamily::AlgebraicTail;
    errs.push_back("key '" + key + "': unknown kernel family '" + v + "'");
    return KernelFamily::Tent;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ModelParams RunConfig::to_params() const {
    ModelParams p;
    p.d1 = d1;
    p.d2 = d2;
    p.a11 = a11;
    p.a12 = a12;
    p.a22 = a22;
    p.mu = mu;
    p.rho = rho;
    p.J1 = make_kernel(j1);
    p.J2 = make_kernel(j2);
    p.K = make_kernel(kk);
    p.reaction = make_reaction(beta, kappa);
    p.check();
    return p;
}

InitialData RunConfig::initial_data(const Grid& g) const {
    return make_initial_data(g, initial_shape_from_name(init_shape), h0, amp_u, amp_v);
}

std::string RunConfig::canonical_text() const {
    std::ostringstream os;
    auto kernel_block = [&](const char* name, const KernelSpec& k) {
        os << "[kernel." << name << "]\n";
        os << "family=" << family_name(k.family) << "\n";
        switch (k.family) {
        case KernelFamily::Tent:
        case KernelFamily::CosineBump: os << "width=" << fmt(k.width) << "\n"; break;
        case KernelFamily::TruncatedGaussian:
            os << "sigma=" << fmt(k.sigma) << "\n";
            os << "truncation=" << fmt(k.truncation) << "\n";
            break;
        case KernelFamily::AlgebraicTail:
            os << "gamma=" << fmt(k.gamma) << "\n";
            os << "truncation=" << fmt(k.truncation) << "\n";
            break;
        }
    };
    os << "[model]\n";
    os << "d1=" << fmt(d1) << "\nd2=" << fmt(d2) << "\na11=" << fmt(a11) << "\na12=" << fmt(a12)
       << "\na22=" << fmt(a22) << "\nmu=" << fmt(mu) << "\nrho=" << fmt(rho)
       << "\nbeta=" << fmt(beta) << "\nkappa=" << fmt(kappa) << "\n";
    kernel_block("J1", j1);
    kernel_block("J2", j2);
    kernel_block("K", kk);
    os << "[init]\nshape=" << init_shape << "\nh0=" << fmt(h0) << "\namp_u=" << fmt(amp_u)
       << "\namp_v=" << fmt(amp_v) << "\n";
    os << "[numerics]\ndx=" << fmt(dx) << "\ndt=" << fmt(dt) << "\nT=" << fmt(T)
       << "\nstride=" << stride << "\nl=" << fmt(l) << "\nl_max=" << fmt(l_max)
       << "\nlstar_tol=" << fmt(lstar_tol) << "\neigen_tol=" << fmt(eigen_tol)
       << "\nsteady_tol=" << fmt(steady_tol) << "\neps_front=" << fmt(eps_front)
       << "\nwindow=" << fmt(window) << "\nmass_eps_factor=" << fmt(mass_eps_factor)
       << "\nmu_lo=" << fmt(mu_lo) << "\nmu_hi=" << fmt(mu_hi) << "\nhorizon=" << fmt(horizon)
       << "\nmustar_tol=" << fmt(mustar_tol) << "\nT_short=" << fmt(T_short)
       << "\nfp_tol=" << fmt(fp_tol) << "\nthreads=" << threads << "\node_u0=" << fmt(ode_u0)
       << "\node_v0=" << fmt(ode_v0) << "\nmus=";
    for (size_t i = 0; i < mus.size(); ++i) os << (i ? "," : "") << fmt(mus[i]);
    os << "\n";
    return os.str();
}

std::string RunConfig::content_hash() const {
    // FNV-1a, 64-bit
    const std::string text = canonical_text();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::vector<std::string> errs;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    std::map<std::string, Setter> table;
    auto dbl = [&](const char* name, double& slot) {
        table[name] = [&errs, &slot](const std::string& key, const std::string& v) {
            slot = parse_double(v, key, errs);
        };
    };
    auto intg = [&](const char* name, long& slot) {
        table[name] = [&errs, &slot](const std::string& key, const std::string& v) {
            slot = parse_long(v, key, errs);
        };
    };
    auto kernel = [&](const std::string& prefix, KernelSpec& k) {
        table[prefix + ".family"] = [&errs, &k](const std::string& key, const std::string& v) {
            k.family = parse_family(v, key, errs);
        };
        dbl((prefix + ".width").c_str(), k.width);
        dbl((prefix + ".sigma").c_str(), k.sigma);
        dbl((prefix + ".gamma").c_str(), k.gamma);
        dbl((prefix + ".truncation").c_str(), k.truncation);
    };

    dbl("model.d1", cfg.d1);
    dbl("model.d2", cfg.d2);
    dbl("model.a11", cfg.a11);
    dbl("model.a12", cfg.a12);
    dbl("model.a22", cfg.a22);
    dbl("model.mu", cfg.mu);
    dbl("model.rho", cfg.rho);
    dbl("model.beta", cfg.beta);
    dbl("model.kappa", cfg.kappa);
    kernel("kernel.J1", cfg.j1);
    kernel("kernel.J2", cfg.j2);
    kernel("kernel.K", cfg.kk);
    table["init.shape"] = [&](const std::string&, const std::string& v) { cfg.init_shape = v; };
    dbl("init.h0", cfg.h0);
    dbl("init.amp_u", cfg.amp_u);
    dbl("init.amp_v", cfg.amp_v);
    dbl("numerics.dx", cfg.dx);
    dbl("numerics.dt", cfg.dt);
    dbl("numerics.T", cfg.T);
    intg("numerics.stride", cfg.stride);
    dbl("numerics.l", cfg.l);
    dbl("numerics.l_max", cfg.l_max);
    dbl("numerics.lstar_tol", cfg.lstar_tol);
    dbl("numerics.eigen_tol", cfg.eigen_tol);
    dbl("numerics.steady_tol", cfg.steady_tol);
    dbl("numerics.eps_front", cfg.eps_front);
    dbl("numerics.window", cfg.window);
    dbl("numerics.mass_eps_factor", cfg.mass_eps_factor);
    dbl("numerics.mu_lo", cfg.mu_lo);
    dbl("numerics.mu_hi", cfg.mu_hi);
    dbl("numerics.horizon", cfg.horizon);
    dbl("numerics.mustar_tol", cfg.mustar_tol);
    dbl("numerics.T_short", cfg.T_short);
    dbl("numerics.fp_tol", cfg.fp_tol);
    intg("numerics.threads", cfg.threads);
    dbl("numerics.ode_u0", cfg.ode_u0);
    dbl("numerics.ode_v0", cfg.ode_v0);
    table["numerics.mus"] = [&](const std::string& key, const std::string& v) {
        cfg.mus.clear();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty()) cfg.mus.push_back(parse_double(trim(item), key, errs));
    };

    std::string section;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errs.push_back("line " + std::to_string(lineno) + ": unterminated section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errs.push_back("line " + std::to_string(lineno) + ": expected key=value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string full = section.empty() ? key : section + "." + key;
        const auto it = table.find(full);
        if (it == table.end()) {
            errs.push_back("unknown key '" + full + "' (line " + std::to_string(lineno) + ")");
            continue;
        }
        it->second(full, val);
    }

    // semantic validation, aggregated
    auto need_positive = [&](double v, const char* name) {
        if (!(v > 0.0)) errs.push_back(std::string("key '") + name + "' must be positive");
    };
    need_positive(cfg.d1, "model.d1");
    need_positive(cfg.d2, "model.d2");
    need_positive(cfg.a11, "model.a11");
    need_positive(cfg.a12, "model.a12");
    need_positive(cfg.a22, "model.a22");
    need_positive(cfg.mu, "model.mu");
    need_positive(cfg.beta, "model.beta");
    need_positive(cfg.kappa, "model.kappa");
    if (cfg.rho < 0.0) errs.push_back("key 'model.rho' must be nonnegative");
    need_positive(cfg.h0, "init.h0");
    need_positive(cfg.amp_u, "init.amp_u");
    need_positive(cfg.amp_v, "init.amp_v");
    need_positive(cfg.dx, "numerics.dx");
    need_positive(cfg.dt, "numerics.dt");
    need_positive(cfg.T, "numerics.T");
    need_positive(cfg.l, "numerics.l");
    if (cfg.stride < 1) errs.push_back("key 'numerics.stride' must be at least 1");
    if (cfg.threads < 1) errs.push_back("key 'numerics.threads' must be at least 1");
    if (cfg.init_shape != "tent" && cfg.init_shape != "cosine" && cfg.init_shape != "plateau")
        errs.push_back("key 'init.shape' must be tent, cosine or plateau");

    if (!errs.empty()) {
        std::string joined = "config invalid:";
        for (const auto& e : errs) joined += "\n  - " + e;
        throw ValidationError(joined);
    }
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace epifront
