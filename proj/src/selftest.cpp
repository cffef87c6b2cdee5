#include "cqed/selftest.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cqed/applications.hpp"
#include "cqed/ed.hpp"
#include "cqed/effective.hpp"
#include "cqed/models.hpp"
#include "cqed/spin.hpp"
#include "cqed/thermo.hpp"

namespace cqed::selftest {

namespace {

Check spin_algebra_closure() {
    double worst = 0.0;
    for (int twice_s = 1; twice_s <= 20; ++twice_s) {
        const auto s = spin::build_spin_operators(HalfInt{twice_s});
        const Complex i(0.0, 1.0);
        worst = std::max(worst, linalg::max_abs_diff(s.sx * s.sy - s.sy * s.sx, i * s.sz));
        worst = std::max(worst, linalg::max_abs_diff(s.sy * s.sz - s.sz * s.sy, i * s.sx));
        worst = std::max(worst, linalg::max_abs_diff(s.sz * s.sx - s.sx * s.sz, i * s.sy));
        const double sv = s.S.value();
        const Mat casimir = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
        worst = std::max(worst,
                         linalg::max_abs_diff(casimir, sv * (sv + 1.0) * Mat::Identity(s.sz.rows(),
                                                                                       s.sz.cols())));
    }
    std::ostringstream detail;
    detail << "max residual " << worst << " over S <= 10";
    return {"spin algebra closure and Casimir", worst < 1e-10, detail.str()};
}

Check degeneracy_sum_rule() {
    double worst = 0.0;
    for (int n = 1; n <= 60; ++n) {
        std::vector<double> terms;
        for (const auto& sec : spin::sector_list(n))
            terms.push_back(sec.log_degeneracy + std::log(static_cast<double>(sec.dim)));
        const double total = linalg::logsumexp(terms);
        worst = std::max(worst, std::abs(total - n * std::numbers::ln2) / (n * std::numbers::ln2));
    }
    std::ostringstream detail;
    detail << "max relative log error " << worst << " for N <= 60";
    return {"degeneracy sum rule sum_S Omega (2S+1) = 2^N", worst < 1e-9, detail.str()};
}

Check degeneracy_unimodality() {
    for (int n : {50, 101, 200}) {
        const auto sectors = spin::sector_list(n);
        size_t argmax = 0;
        for (size_t i = 1; i < sectors.size(); ++i)
            if (sectors[i].log_degeneracy > sectors[argmax].log_degeneracy) argmax = i;
        for (size_t i = argmax + 1; i < sectors.size(); ++i)
            if (sectors[i].log_degeneracy > sectors[i - 1].log_degeneracy + 1e-12)
                return {"degeneracy unimodality", false,
                        "Omega increases past its peak at N=" + std::to_string(n)};
    }
    return {"degeneracy unimodality", true, "nonincreasing past the peak for N in {50,101,200}"};
}

Check hepp_lieb_sandwich() {
    models::DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;
    p.N = 6;
    p.n_ph = 30;
    double min_gap = 1e300, max_gap = -1e300;
    const std::vector<double> freqs = {p.omega_c};
    for (double beta : {1.0, 5.0}) {
        for (double ratio : {0.5, 1.0, 1.5}) {
            p.beta = beta;
            p.lambda = ratio * p.lambda_c();
            const auto full = ed::sector_spectra(p, ed::Model::full);
            const double log_Z =
                thermo::free_energy_from_spectra(full, p.beta, p.N).log_Z;
            // Coherent-state lower bound: the Gaussian integral over the
            // displaced mode leaves (1/beta omega) Tr exp(-beta H_eff).
            const auto eff = ed::sector_spectra(p, ed::Model::effective);
            const double log_Z_tilde = -std::log(p.beta * p.omega_c) +
                                       thermo::free_energy_from_spectra(eff, p.beta, p.N).log_Z;
            try {
                const double gap = thermo::hepp_lieb_gap(log_Z, log_Z_tilde, freqs, p.beta);
                min_gap = std::min(min_gap, gap);
                max_gap = std::max(max_gap, gap);
            } catch (const std::exception& e) {
                return {"Hepp-Lieb sandwich", false, e.what()};
            }
        }
    }
    std::ostringstream detail;
    detail << "gap in [" << min_gap << ", " << max_gap << "] on 6 Dicke points (N=6)";
    return {"Hepp-Lieb sandwich", true, detail.str()};
}

Check spin_coupling_structure() {
    std::vector<Eigen::Vector3d> positions;
    for (int i = 0; i < 5; ++i) positions.emplace_back(0.3 * i, 0.1 * i * i, -0.2 * i);

    // Uniform single mode: all-to-all rank-1 ferromagnetic block e1 (x) e1.
    const auto uniform = apps::uniform_single_mode(1.3, 0.7, Eigen::Vector3d::UnitX(), positions);
    const auto j_uniform = apps::spin_coupling_matrix(uniform, positions);
    const double w = 0.7 * 0.7 / 1.3;
    double structural = 0.0;
    Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
    expected(0, 0) = w;
    for (int i = 0; i < j_uniform.n_sites; ++i)
        for (int j = 0; j < j_uniform.n_sites; ++j)
            structural = std::max(structural,
                                  (j_uniform.block(i, j) - expected).cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_uniform(j_uniform.dense());
    const auto ev_u = es_uniform.eigenvalues();
    const bool rank1 = std::abs(ev_u(ev_u.size() - 1) - 5.0 * w) < 1e-12 &&
                       std::abs(ev_u(ev_u.size() - 2)) < 1e-12;

    // Two random complex modes: the 3N x 3N matrix stays PSD.
    std::mt19937 rng(421);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    apps::ModeSet random_set;
    random_set.positions = positions;
    for (int m = 0; m < 2; ++m) {
        apps::Mode mode;
        mode.omega = 1.0 + 0.5 * m;
        mode.c_m = 0.4 + 0.2 * m;
        for (size_t i = 0; i < positions.size(); ++i) {
            Eigen::Vector3cd u;
            for (int k = 0; k < 3; ++k) u(k) = Complex(dist(rng), dist(rng));
            mode.u_perp.push_back(u);
        }
        random_set.modes.push_back(mode);
    }
    const auto j_random = apps::spin_coupling_matrix(random_set, positions);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_random(j_random.dense());
    const double min_ev = es_random.eigenvalues().minCoeff();

    std::ostringstream detail;
    detail << "uniform-mode block residual " << structural << ", rank-1 " << (rank1 ? "ok" : "BAD")
           << ", random-mode min eigenvalue " << min_ev;
    return {"spin-coupling PSD and uniform-mode rank-1", structural < 1e-12 && rank1 &&
                                                             min_ev > -1e-12,
            detail.str()};
}

Check kernel_parity_and_sum_rule() {
    effective::MatsubaraKernelSpec spec;
    spec.omega_tilde = 2.5;
    spec.beta = 2.0;
    spec.n_max = 2000;
    const int m = 4096;
    for (int i = 0; i < m; ++i) spec.tau.push_back(spec.beta * i / m);
    const auto kernel = effective::matsubara_kernel(spec);

    // Parity: K_odd(tau) = -K_odd(beta - tau); grid point m-i mirrors i.
    double parity = 0.0;
    for (int i = 1; i < m; ++i)
        parity = std::max(parity, std::abs(kernel.odd[i].real() + kernel.odd[m - i].real()));

    // Sum rule (1/beta) int_0^beta K_even = 1, composite Simpson with the
    // periodic closure K_even(beta) = K_even(0).
    double simpson = kernel.even[0] + kernel.even[0];
    for (int i = 1; i < m; ++i) simpson += kernel.even[i] * (i % 2 == 1 ? 4.0 : 2.0);
    const double integral = simpson * (spec.beta / m) / 3.0 / spec.beta;

    // Truncated even part against the resummed closed form.
    double closed_residual = 0.0;
    for (int i = 0; i < m; ++i)
        closed_residual = std::max(closed_residual,
                                   std::abs(kernel.even[i] - kernel.even_closed[i]));

    std::ostringstream detail;
    detail << "parity residual " << parity << ", sum rule |I-1| = " << std::abs(integral - 1.0)
           << ", closed-form residual " << closed_residual;
    return {"kernel parity, sum rule, closed form", parity < 1e-8 &&
                                                        std::abs(integral - 1.0) < 1e-8 &&
                                                        closed_residual < 1e-6,
            detail.str()};
}

} // namespace

std::vector<Check> run_all() {
    return {spin_algebra_closure(),   degeneracy_sum_rule(),
            degeneracy_unimodality(), hepp_lieb_sandwich(),
            spin_coupling_structure(), kernel_parity_and_sum_rule()};
}

bool run_and_report(std::ostream& out) {
    bool all = true;
    for (const auto& check : run_all()) {
        out << (check.pass ? "[PASS] " : "[FAIL] ") << check.name << ": " << check.detail << "\n";
        all = all && check.pass;
    }
    return all;
}

} // namespace cqed::selftest
