#pragma once

#include <string>

#include "epifront/config.hpp"
#include "epifront/fixed_domain.hpp"

namespace epifront {

/// Full-precision number formatting shared by every writer, so identical
/// configs produce byte-identical outputs.
std::string format_number(double v);

/// Output location: EPIFRONT_OUTDIR, when set, is prepended to relative
/// output prefixes.
std::string resolve_output_path(const std::string& name);

// CSV schemas (documented in the README):
//   frames:  t,g,h,x,u,v        one row per stored frame per node
//   fronts:  t,g,h,g_rate,h_rate
//   ode:     t,u,v
//   steady:  x,w,z
//   curves:  l,lambda0   /   alpha,r
//   sweep:   config_hash,mu,classification,decision_time
void write_frames_csv(const std::string& path, const RunResult& run);
void write_fronts_csv(const std::string& path, const RunResult& run);
void write_ode_csv(const std::string& path, const std::vector<OdeSample>& series);
void write_steady_csv(const std::string& path, const SteadyState& st);
void write_curve_csv(const std::string& path, const std::string& xname,
                     const std::string& yname, const std::vector<double>& xs,
                     const std::vector<double>& ys);
void append_sweep_rows(const std::string& path, const std::string& config_hash,
                       const std::vector<MuStarLedgerRow>& rows);

std::string classification_json(const Classification& c);

/// Run summary with schema version, parameter echo and derived
/// quantities; extra fields slot in under "results".
std::string summary_json(const RunConfig& cfg, const std::string& command,
                         const std::string& results_json);

void write_text_file(const std::string& path, const std::string& content);

} // namespace epifront
