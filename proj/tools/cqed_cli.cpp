// cqed: exact-diagonalization and effective-theory toolkit for collective
// light-matter models. Subcommands: sweep, analytic, ed, bogoliubov,
// kernel, condensation, spin-couplings, selftest.
//
// Exit codes: 0 success, 1 configuration error, 2 partial per-point
// failures in a sweep.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cqed/applications.hpp"
#include "cqed/bogoliubov.hpp"
#include "cqed/ed.hpp"
#include "cqed/effective.hpp"
#include "cqed/selftest.hpp"
#include "cqed/sweep.hpp"
#include "cqed/thermo.hpp"

namespace {

using cqed::harness::format_double;

// "start:stop:steps" -> inclusive uniform grid.
std::vector<double> parse_grid(const std::string& text) {
    double start = 0.0, stop = 0.0;
    int steps = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (!(ss >> start >> c1 >> stop >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 1)
        throw CLI::ValidationError("grid must be start:stop:steps with steps >= 1");
    std::vector<double> grid;
    if (steps == 1) return {start};
    for (int i = 0; i < steps; ++i) grid.push_back(start + (stop - start) * i / (steps - 1));
    return grid;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("cannot open output file " + path);
    return file;
}

struct SweepFlags {
    std::string config, out_path, format = "csv", lambda_grid;
    std::vector<std::string> models;
    std::vector<int> Ns;
    std::vector<double> betas, omega_z;
    double omega_c = -1.0;
    int n_ph = -1, workers = -1;
    double point_timeout_s = -1.0;
    bool timing = false;
    std::string compare_baseline, compare_out;
};

int run_sweep_cmd(const SweepFlags& flags) {
    cqed::harness::SweepSpec spec;
    if (!flags.config.empty()) {
        std::ifstream in(flags.config);
        if (!in) {
            std::cerr << "error: cannot open config " << flags.config << "\n";
            return 1;
        }
        nlohmann::json j;
        in >> j;
        spec = cqed::harness::spec_from_json(j);
    }
    // Flags win over the config file.
    if (!flags.models.empty()) {
        spec.models.clear();
        for (const auto& m : flags.models) spec.models.push_back(cqed::ed::model_from_string(m));
    }
    if (!flags.lambda_grid.empty()) spec.lambda_ratios = parse_grid(flags.lambda_grid);
    if (!flags.Ns.empty()) spec.Ns = flags.Ns;
    if (!flags.betas.empty()) spec.betas = flags.betas;
    if (!flags.omega_z.empty()) spec.omega_z_ratios = flags.omega_z;
    if (flags.omega_c > 0.0) spec.omega_c = flags.omega_c;
    if (flags.n_ph > 0) spec.n_ph = flags.n_ph;
    if (flags.workers > 0) spec.workers = flags.workers;
    if (flags.point_timeout_s >= 0.0) spec.point_timeout_s = flags.point_timeout_s;
    if (flags.timing) spec.emit_timing = true;
    spec.validate();

    const auto result = cqed::harness::run_sweep(spec);
    std::ofstream file;
    auto& out = open_output(file, flags.out_path);
    if (flags.format == "csv")
        cqed::harness::write_csv(result, out);
    else if (flags.format == "jsonl")
        cqed::harness::write_jsonl(result, out);
    else {
        std::cerr << "error: unknown format " << flags.format << "\n";
        return 1;
    }
    if (!flags.compare_baseline.empty()) {
        const auto table = cqed::harness::compare_models(
            result, cqed::ed::model_from_string(flags.compare_baseline));
        std::ofstream cmp_file;
        auto& cmp_out = open_output(cmp_file, flags.compare_out);
        cqed::harness::write_compare_csv(table, cmp_out);
    }
    if (result.any_errors()) {
        for (const auto& row : result.rows)
            if (!row.error.empty())
                std::cerr << "point failed: model=" << cqed::ed::to_string(row.model)
                          << " lambda/lambda_c=" << row.lambda_ratio << " N=" << row.N << ": "
                          << row.error << "\n";
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective light-matter models: ED, effective theory, sweeps"};
    app.require_subcommand(1);

    // ---- sweep ----
    SweepFlags sf;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep with CSV/JSONL emission");
    sweep->add_option("--config", sf.config, "JSON config file (flags override it)");
    sweep->add_option("--model", sf.models,
                      "models: full, full_polaron, effective, sw, analytic");
    sweep->add_option("--lambda-grid", sf.lambda_grid, "lambda/lambda_c grid start:stop:steps");
    sweep->add_option("--N", sf.Ns, "system sizes");
    sweep->add_option("--beta", sf.betas, "inverse temperatures (units 1/omega_c)");
    sweep->add_option("--omega-z", sf.omega_z, "omega_z/omega_c ratios");
    sweep->add_option("--omega-c", sf.omega_c, "cavity frequency (sets the unit)");
    sweep->add_option("--nph", sf.n_ph, "boson cutoff");
    sweep->add_option("--workers", sf.workers, "worker threads over grid points");
    sweep->add_option("--point-timeout", sf.point_timeout_s, "per-point wall-time cap in seconds");
    sweep->add_option("--out", sf.out_path, "output path ('-' for stdout)");
    sweep->add_option("--format", sf.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    sweep->add_flag("--timing", sf.timing, "emit wall_time_ms (breaks bit-reproducibility)");
    sweep->add_option("--compare", sf.compare_baseline,
                      "also emit per-point and max-over-lambda relative differences against "
                      "this baseline model");
    sweep->add_option("--compare-out", sf.compare_out, "path for the comparison table");

    // ---- analytic ----
    double an_omega_c = 1.0, an_omega_z = 1.0, an_beta = 5.0;
    std::string an_grid = "0:2:21";
    auto* analytic = app.add_subcommand("analytic", "thermodynamic-limit free energy");
    analytic->add_option("--omega-c", an_omega_c, "cavity frequency");
    analytic->add_option("--omega-z", an_omega_z, "spin splitting");
    analytic->add_option("--beta", an_beta, "inverse temperature");
    analytic->add_option("--lambda-grid", an_grid, "lambda/lambda_c grid start:stop:steps");

    // ---- ed ----
    std::string ed_model = "full_polaron";
    double ed_lambda_ratio = 1.0, ed_beta = 5.0, ed_omega_z = 1.0, ed_omega_c = 1.0;
    int ed_N = 10, ed_nph = 10, ed_workers = 1;
    auto* ed_cmd = app.add_subcommand("ed", "one exact-diagonalization thermal point");
    ed_cmd->add_option("--model", ed_model, "full, full_polaron, effective or sw");
    ed_cmd->add_option("--lambda", ed_lambda_ratio, "lambda/lambda_c");
    ed_cmd->add_option("--N", ed_N, "system size");
    ed_cmd->add_option("--nph", ed_nph, "boson cutoff");
    ed_cmd->add_option("--beta", ed_beta, "inverse temperature (1/omega_c)");
    ed_cmd->add_option("--omega-z", ed_omega_z, "omega_z/omega_c");
    ed_cmd->add_option("--omega-c", ed_omega_c, "cavity frequency");
    ed_cmd->add_option("--workers", ed_workers, "threads over spin sectors");

    // ---- bogoliubov ----
    std::string bg_file;
    double bg_delta = -1.0, bg_omega = 1.0;
    auto* bogo = app.add_subcommand("bogoliubov", "single- or multimode Bogoliubov data");
    bogo->add_option("--delta", bg_delta, "single-mode diamagnetic strength");
    bogo->add_option("--omega", bg_omega, "single-mode frequency");
    bogo->add_option("--form", bg_file, "JSON file with H1/H2 blocks ([re,im] entries)");

    // ---- kernel ----
    double kr_wt = 1.0, kr_beta = 5.0;
    int kr_nmax = 2000, kr_points = 256;
    std::string kr_out;
    auto* kernel = app.add_subcommand("kernel", "Matsubara kernel samples and split");
    kernel->add_option("--omega-tilde", kr_wt, "dressed mode frequency");
    kernel->add_option("--beta", kr_beta, "inverse temperature");
    kernel->add_option("--nmax", kr_nmax, "Matsubara truncation");
    kernel->add_option("--tau-points", kr_points, "uniform tau samples in [0, beta)");
    kernel->add_option("--out", kr_out, "output CSV ('-' for stdout)");

    // ---- condensation ----
    double cd_delta0 = 0.0, cd_omega0 = 1.0, cd_c0e = -1.0;
    int cd_N = 1;
    auto* cond = app.add_subcommand("condensation", "photon-condensation criteria");
    cond->add_option("--delta0", cd_delta0, "uniform-mode diamagnetic strength");
    cond->add_option("--omega0", cd_omega0, "uniform-mode frequency");
    cond->add_option("--c0e", cd_c0e, "electric coupling for the A^2-omitted criterion");
    cond->add_option("--N", cd_N, "particle count for the A^2-omitted criterion");

    // ---- spin-couplings ----
    std::string sc_modes, sc_out;
    auto* sc = app.add_subcommand("spin-couplings", "cavity-mediated spin-spin couplings");
    sc->add_option("--modes", sc_modes, "mode-set file (.json or .csv)")->required();
    sc->add_option("--out", sc_out, "output CSV ('-' for stdout)");

    // ---- selftest ----
    auto* self = app.add_subcommand("selftest", "structural property suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) return run_sweep_cmd(sf);

        if (analytic->parsed()) {
            cqed::models::DickeParams p;
            p.omega_c = an_omega_c;
            p.omega_z = an_omega_z;
            p.beta = an_beta;
            std::cout << "lambda_c," << format_double(p.lambda_c()) << "\n";
            std::cout << "lambda_over_lambda_c,f_per_site,branch,sigma,beta_c\n";
            for (double r : parse_grid(an_grid)) {
                p.lambda = r * p.lambda_c();
                const auto [res, mf] = cqed::thermo::analytic_free_energy(p);
                std::cout << format_double(r) << ',' << format_double(res.free_energy_per_site)
                          << ','
                          << (mf.branch == cqed::thermo::Branch::superradiant ? "superradiant"
                                                                              : "normal")
                          << ',' << format_double(mf.sigma) << ','
                          << (mf.beta_c ? format_double(*mf.beta_c) : "") << "\n";
            }
            return 0;
        }

        if (ed_cmd->parsed()) {
            cqed::models::DickeParams p;
            p.omega_c = ed_omega_c;
            p.omega_z = ed_omega_z * ed_omega_c;
            p.beta = ed_beta / ed_omega_c;
            p.N = ed_N;
            p.n_ph = ed_nph;
            p.lambda = ed_lambda_ratio * p.lambda_c();
            const auto model = cqed::ed::model_from_string(ed_model);
            const auto res = cqed::ed::thermal_point(p, model, ed_workers);
            std::cout << "model," << ed_model << "\nlambda," << format_double(p.lambda)
                      << "\nlog_Z," << format_double(res.log_Z) << "\nf_per_site,"
                      << format_double(res.f_per_site) << "\nphoton_number,"
                      << format_double(res.photon_number) << "\nsx2_per_n2,"
                      << format_double(res.sx2_per_n2) << "\n";
            return 0;
        }

        if (bogo->parsed()) {
            if (bg_delta >= 0.0) {
                const auto b = cqed::bogo::single_mode(bg_delta, bg_omega);
                std::cout << "lambda_k," << format_double(b.lambda_k) << "\ncosh_theta,"
                          << format_double(b.cosh_theta) << "\nsinh_theta,"
                          << format_double(b.sinh_theta) << "\nomega_tilde,"
                          << format_double(b.omega_tilde) << "\n";
                return 0;
            }
            if (bg_file.empty()) {
                std::cerr << "error: pass --delta for a single mode or --form for a multimode "
                             "block\n";
                return 1;
            }
            std::ifstream in(bg_file);
            if (!in) {
                std::cerr << "error: cannot open " << bg_file << "\n";
                return 1;
            }
            nlohmann::json j;
            in >> j;
            auto parse_block = [](const nlohmann::json& rows) {
                const auto m = rows.size();
                cqed::Mat out(m, m);
                for (size_t r = 0; r < m; ++r)
                    for (size_t c = 0; c < m; ++c) {
                        const auto& e = rows[r][c];
                        out(r, c) = e.is_array()
                                        ? cqed::Complex(e[0].get<double>(), e[1].get<double>())
                                        : cqed::Complex(e.get<double>(), 0.0);
                    }
                return out;
            };
            cqed::bogo::QuadraticBosonForm form{parse_block(j.at("H1")), parse_block(j.at("H2"))};
            const auto t = cqed::bogo::diagonalize_quadratic(form);
            std::cout << "omega_tilde";
            for (Eigen::Index k = 0; k < t.omega_tilde.size(); ++k)
                std::cout << ',' << format_double(t.omega_tilde(k));
            const cqed::Mat im = [&] {
                cqed::Mat g = cqed::Mat::Identity(t.T.rows(), t.T.cols());
                g.bottomRightCorner(form.modes(), form.modes()) *= -1.0;
                return g;
            }();
            std::cout << "\npseudo_unitarity_residual,"
                      << format_double((t.T.adjoint() * im * t.T - im).cwiseAbs().maxCoeff())
                      << "\n";
            return 0;
        }

        if (kernel->parsed()) {
            cqed::effective::MatsubaraKernelSpec spec;
            spec.omega_tilde = kr_wt;
            spec.beta = kr_beta;
            spec.n_max = kr_nmax;
            for (int i = 0; i < kr_points; ++i) spec.tau.push_back(kr_beta * i / kr_points);
            const auto k = cqed::effective::matsubara_kernel(spec);
            std::ofstream file;
            auto& out = open_output(file, kr_out);
            out << "tau,K,K_even,K_odd,K_even_closed_form\n";
            for (size_t i = 0; i < k.tau.size(); ++i)
                out << format_double(k.tau[i]) << ',' << format_double(k.full[i].real()) << ','
                    << format_double(k.even[i]) << ',' << format_double(k.odd[i].real()) << ','
                    << format_double(k.even_closed[i]) << "\n";
            std::cerr << "# delta comb weight (kbar = beta*delta - kbarbar split): "
                      << format_double(k.delta_weight) << ", even-part tail change "
                      << format_double(k.even_tail_change) << "\n";
            return 0;
        }

        if (cond->parsed()) {
            const auto with = cqed::apps::nogo_factor(cd_delta0, cd_omega0);
            std::cout << "nogo_factor," << format_double(with.factor) << "\ntransition_possible,"
                      << (with.transition_possible ? "true" : "false") << "\n";
            if (cd_c0e >= 0.0) {
                const auto without = cqed::apps::nogo_factor_without_A2(cd_N, cd_c0e, cd_omega0);
                std::cout << "factor_without_A2," << format_double(without.factor)
                          << "\ntransition_possible_without_A2,"
                          << (without.transition_possible ? "true" : "false") << "\n";
            }
            return 0;
        }

        if (sc->parsed()) {
            const auto set = sc_modes.ends_with(".csv") ? cqed::apps::load_mode_set_csv(sc_modes)
                                                        : cqed::apps::load_mode_set_json(sc_modes);
            const auto j = cqed::apps::spin_coupling_matrix(set, set.positions);
            std::ofstream file;
            auto& out = open_output(file, sc_out);
            out << "i,j,Jxx,Jxy,Jxz,Jyx,Jyy,Jyz,Jzx,Jzy,Jzz\n";
            for (int i = 0; i < j.n_sites; ++i)
                for (int jj = 0; jj < j.n_sites; ++jj) {
                    out << i << ',' << jj;
                    const auto& b = j.block(i, jj);
                    for (int r = 0; r < 3; ++r)
                        for (int c = 0; c < 3; ++c) out << ',' << format_double(b(r, c));
                    out << "\n";
                }
            return 0;
        }

        if (self->parsed()) return cqed::selftest::run_and_report(std::cout) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
