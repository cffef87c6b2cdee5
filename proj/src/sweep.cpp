#include "cqed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace cqed::harness {

void SweepSpec::validate() const {
    if (models.empty() || lambda_ratios.empty() || Ns.empty() || betas.empty() ||
        omega_z_ratios.empty())
        throw std::invalid_argument("sweep spec: empty grid dimension");
    if (omega_c <= 0.0) throw std::invalid_argument("sweep spec: omega_c must be > 0");
    if (n_ph < 1) throw std::invalid_argument("sweep spec: n_ph must be >= 1");
    if (workers < 1) throw std::invalid_argument("sweep spec: workers must be >= 1");
    for (double r : lambda_ratios)
        if (r < 0.0) throw std::invalid_argument("sweep spec: lambda ratios must be >= 0");
    for (int n : Ns)
        if (n < 1) throw std::invalid_argument("sweep spec: N must be >= 1");
    for (double b : betas)
        if (b <= 0.0) throw std::invalid_argument("sweep spec: beta must be > 0");
    for (double r : omega_z_ratios)
        if (r <= 0.0) throw std::invalid_argument("sweep spec: omega_z ratios must be > 0");
    for (const auto& name : outputs)
        if (name != "f_per_site" && name != "photon_number" && name != "sx2_per_n2")
            throw std::invalid_argument("sweep spec: unknown output column '" + name + "'");
}

bool SweepResult::any_errors() const {
    for (const auto& r : rows)
        if (!r.error.empty()) return true;
    return false;
}

namespace {

struct GridPoint {
    ed::Model model;
    double lambda_ratio, omega_z_ratio, beta;
    int N;
};

std::vector<GridPoint> enumerate_grid(const SweepSpec& spec) {
    std::vector<GridPoint> grid;
    for (auto model : spec.models)
        for (double wz : spec.omega_z_ratios)
            for (double beta : spec.betas)
                for (int n : spec.Ns)
                    for (double lr : spec.lambda_ratios)
                        grid.push_back({model, lr, wz, beta, n});
    return grid;
}

SweepRow evaluate_point(const SweepSpec& spec, const GridPoint& pt) {
    models::DickeParams p;
    p.omega_c = spec.omega_c;
    p.omega_z = pt.omega_z_ratio * spec.omega_c;
    p.beta = pt.beta / spec.omega_c;
    p.N = pt.N;
    p.n_ph = spec.n_ph;
    p.lambda = pt.lambda_ratio * p.lambda_c();

    SweepRow row;
    row.model = pt.model;
    row.lambda_ratio = pt.lambda_ratio;
    row.lambda = p.lambda;
    row.omega_z = p.omega_z;
    row.beta = p.beta;
    row.N = p.N;
    row.n_ph = p.n_ph;

    ed::Deadline deadline;
    if (spec.point_timeout_s > 0.0)
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(spec.point_timeout_s));

    const auto t0 = std::chrono::steady_clock::now();
    try {
        // Each point stays single-threaded; the pool parallelism lives here
        // in the harness.
        const auto res = ed::thermal_point(p, pt.model, 1, deadline);
        row.f_per_site = res.f_per_site;
        row.photon_number = res.photon_number;
        row.sx2_per_n2 = res.sx2_per_n2;
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const auto grid = enumerate_grid(spec);

    SweepResult result;
    result.spec = spec;
    result.rows.resize(grid.size());

    const int workers = std::min<int>(spec.workers, static_cast<int>(grid.size()));
    if (workers <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) result.rows[i] = evaluate_point(spec, grid[i]);
        return result;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                result.rows[i] = evaluate_point(spec, grid[i]);
        });
    for (auto& t : pool) t.join();
    return result;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

bool wants(const SweepSpec& spec, const char* name) {
    if (spec.outputs.empty()) return true;
    return std::find(spec.outputs.begin(), spec.outputs.end(), name) != spec.outputs.end();
}

std::vector<std::string> column_names(const SweepSpec& spec) {
    std::vector<std::string> cols = {"model", "lambda_over_lambda_c", "lambda",
                                     "omega_z", "beta", "N", "n_ph"};
    if (wants(spec, "f_per_site")) cols.push_back("f_per_site");
    if (wants(spec, "photon_number")) cols.push_back("photon_number");
    if (wants(spec, "sx2_per_n2")) cols.push_back("sx2_per_n2");
    if (spec.emit_timing) cols.push_back("wall_time_ms");
    cols.push_back("error");
    return cols;
}

std::vector<std::string> row_fields(const SweepSpec& spec, const SweepRow& r) {
    std::vector<std::string> f = {ed::to_string(r.model),
                                  format_double(r.lambda_ratio),
                                  format_double(r.lambda),
                                  format_double(r.omega_z),
                                  format_double(r.beta),
                                  std::to_string(r.N),
                                  std::to_string(r.n_ph)};
    if (wants(spec, "f_per_site")) f.push_back(format_double(r.f_per_site));
    if (wants(spec, "photon_number")) f.push_back(format_double(r.photon_number));
    if (wants(spec, "sx2_per_n2")) f.push_back(format_double(r.sx2_per_n2));
    if (spec.emit_timing) f.push_back(format_double(r.wall_time_ms));
    f.push_back(r.error);
    return f;
}

} // namespace

void write_csv(const SweepResult& result, std::ostream& out) {
    const auto cols = column_names(result.spec);
    for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\r\n";
    for (const auto& row : result.rows) {
        const auto fields = row_fields(result.spec, row);
        for (size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_quote(fields[i]);
        out << "\r\n";
    }
}

void write_jsonl(const SweepResult& result, std::ostream& out) {
    const auto cols = column_names(result.spec);
    for (const auto& row : result.rows) {
        const auto fields = row_fields(result.spec, row);
        nlohmann::ordered_json j;
        for (size_t i = 0; i < cols.size(); ++i) {
            if (cols[i] == "model" || cols[i] == "error")
                j[cols[i]] = fields[i];
            else if (cols[i] == "N" || cols[i] == "n_ph")
                j[cols[i]] = std::stoll(fields[i]);
            else
                j[cols[i]] = std::stod(fields[i]);
        }
        out << j.dump() << "\n";
    }
}

CompareTable compare_models(const SweepResult& result, ed::Model baseline) {
    // Key: everything but the model; baseline values indexed first.
    using Key = std::tuple<double, double, double, int>;
    std::map<Key, const SweepRow*> base;
    for (const auto& r : result.rows)
        if (r.model == baseline && r.error.empty())
            base[{r.lambda_ratio, r.omega_z, r.beta, r.N}] = &r;

    CompareTable table;
    std::map<std::tuple<int, double, double, int>, double> group_max;  // (model, wz, beta, N)
    for (const auto& r : result.rows) {
        if (r.model == baseline || !r.error.empty()) continue;
        const auto it = base.find({r.lambda_ratio, r.omega_z, r.beta, r.N});
        if (it == base.end())
            throw std::invalid_argument("compare_models: baseline row missing for a grid point");
        const double fb = it->second->f_per_site;
        CompareRow cr{r.model, r.lambda_ratio, r.omega_z, r.beta, r.N,
                      r.f_per_site, fb, std::abs(r.f_per_site - fb) / std::abs(fb)};
        table.rows.push_back(cr);
        auto& slot = group_max[{static_cast<int>(r.model), r.omega_z, r.beta, r.N}];
        slot = std::max(slot, cr.rel_diff);
    }
    for (const auto& [key, val] : group_max)
        table.groups.push_back(
            {static_cast<ed::Model>(std::get<0>(key)), std::get<1>(key), std::get<2>(key),
             std::get<3>(key), val});
    return table;
}

void write_compare_csv(const CompareTable& table, std::ostream& out) {
    out << "model,lambda_over_lambda_c,omega_z,beta,N,f,f_baseline,rel_diff\r\n";
    for (const auto& r : table.rows)
        out << ed::to_string(r.model) << ',' << format_double(r.lambda_ratio) << ','
            << format_double(r.omega_z) << ',' << format_double(r.beta) << ',' << r.N << ','
            << format_double(r.f) << ',' << format_double(r.f_baseline) << ','
            << format_double(r.rel_diff) << "\r\n";
    out << "# max over lambda grid\r\n";
    out << "model,omega_z,beta,N,max_rel_diff\r\n";
    for (const auto& g : table.groups)
        out << ed::to_string(g.model) << ',' << format_double(g.omega_z) << ','
            << format_double(g.beta) << ',' << g.N << ',' << format_double(g.max_rel_diff)
            << "\r\n";
}

SweepSpec spec_from_json(const nlohmann::json& j) {
    SweepSpec spec;
    static const std::vector<std::string> known = {
        "models",  "lambda_over_lambda_c", "N",       "beta",            "omega_z_over_omega_c",
        "omega_c", "n_ph",                 "workers", "point_timeout_s", "emit_timing",
        "outputs"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("sweep config: unknown key '" + key + "'");

    if (j.contains("models")) {
        spec.models.clear();
        for (const auto& m : j["models"]) spec.models.push_back(ed::model_from_string(m));
    }
    auto grid_list = [&](const char* key, auto& target) {
        if (!j.contains(key)) return;
        target.clear();
        for (const auto& v : j[key]) target.push_back(v);
    };
    grid_list("lambda_over_lambda_c", spec.lambda_ratios);
    grid_list("N", spec.Ns);
    grid_list("beta", spec.betas);
    grid_list("omega_z_over_omega_c", spec.omega_z_ratios);
    spec.omega_c = j.value("omega_c", spec.omega_c);
    spec.n_ph = j.value("n_ph", spec.n_ph);
    spec.workers = j.value("workers", spec.workers);
    spec.point_timeout_s = j.value("point_timeout_s", spec.point_timeout_s);
    spec.emit_timing = j.value("emit_timing", spec.emit_timing);
    if (j.contains("outputs"))
        for (const auto& name : j["outputs"]) spec.outputs.push_back(name);
    spec.validate();
    return spec;
}

} // namespace cqed::harness
