#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "cqed/ed.hpp"

namespace cqed::harness {

// A fully deterministic sweep definition. The grid is the cartesian
// product model x omega_z/omega_c x beta x N x lambda/lambda_c, evaluated
// in that (row-major) order regardless of worker count.
struct SweepSpec {
    std::vector<ed::Model> models{ed::Model::full_polaron};
    std::vector<double> lambda_ratios{1.0};   // lambda / lambda_c
    std::vector<int> Ns{10};
    std::vector<double> betas{5.0};           // in 1/omega_c
    std::vector<double> omega_z_ratios{1.0};  // omega_z / omega_c
    double omega_c = 1.0;
    int n_ph = 10;
    int workers = 1;
    double point_timeout_s = 0.0;  // 0 disables the per-point wall-time cap
    bool emit_timing = false;      // wall_time_ms column breaks bit-identity
    // observable columns to emit, subset of {f_per_site, photon_number,
    // sx2_per_n2}; empty selects all three
    std::vector<std::string> outputs;

    void validate() const;
};

struct SweepRow {
    ed::Model model = ed::Model::full_polaron;
    double lambda_ratio = 0.0;
    double lambda = 0.0;
    double omega_z = 0.0;
    double beta = 0.0;
    int N = 0;
    int n_ph = 0;
    double f_per_site = 0.0;
    double photon_number = 0.0;
    double sx2_per_n2 = 0.0;
    double wall_time_ms = 0.0;
    std::string error;  // empty on success; failed points keep the run alive
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;

    bool any_errors() const;
};

SweepResult run_sweep(const SweepSpec& spec);

// RFC-4180 CSV with '.' decimals and 17 significant digits (round-trip
// exact for doubles); byte-identical across runs and worker counts unless
// emit_timing is set.
void write_csv(const SweepResult& result, std::ostream& out);
void write_jsonl(const SweepResult& result, std::ostream& out);

struct CompareRow {
    ed::Model model;
    double lambda_ratio, omega_z, beta;
    int N;
    double f, f_baseline, rel_diff;
};

// max over the lambda grid for one (model, omega_z, beta, N) group, the
// quantity used in finite-size-scaling plots.
struct CompareGroup {
    ed::Model model;
    double omega_z, beta;
    int N;
    double max_rel_diff;
};

struct CompareTable {
    std::vector<CompareRow> rows;
    std::vector<CompareGroup> groups;
};

// Per-point |f - f_base| / |f_base| against the baseline model, which must
// be present (and error-free) at every grid point.
CompareTable compare_models(const SweepResult& result, ed::Model baseline);

void write_compare_csv(const CompareTable& table, std::ostream& out);

// Config file is a single JSON object; unknown keys are rejected. CLI flag
// overrides are applied by the caller on top of the parsed spec.
SweepSpec spec_from_json(const nlohmann::json& j);

std::string format_double(double v);  // %.17g

} // namespace cqed::harness
