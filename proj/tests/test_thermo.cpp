#include <cmath>
#include <vector>

#include "doctest.h"

#include "cqed/ed.hpp"
#include "cqed/fock.hpp"
#include "cqed/models.hpp"
#include "cqed/thermo.hpp"

using namespace cqed;
using models::DickeParams;

namespace {

// Brute-force Dicke Hamiltonian on the full 2^N (x) boson space, no sector
// decomposition: (omega_z/2) sum_j sigma_z^j + omega_c a†a
// + (lambda/sqrt(N)) sum_j sigma_x^j (a + a†).
Mat dicke_individual_spins(const DickeParams& p) {
    const auto b = fock::build_fock(p.n_ph);
    const auto s = spin::build_spin_operators(half(1));
    const Eigen::Index spin_dim = 1LL << p.N;

    auto embed = [&](const Mat& op, int site) {
        Mat out = Mat::Identity(1, 1);
        for (int j = 0; j < p.N; ++j)
            out = linalg::kron(out, j == site ? op : Mat::Identity(2, 2));
        return out;
    };

    Mat h = Mat::Zero(spin_dim * (p.n_ph + 1), spin_dim * (p.n_ph + 1));
    const Mat x = b.a + b.a_dag;
    const Mat boson_id = Mat::Identity(p.n_ph + 1, p.n_ph + 1);
    for (int j = 0; j < p.N; ++j) {
        h += p.omega_z * linalg::kron(embed(s.sz, j), boson_id);
        h += 2.0 * p.g() * linalg::kron(embed(s.sx, j), x);
    }
    h += p.omega_c * linalg::kron(Mat::Identity(spin_dim, spin_dim), b.n);
    return h;
}

double brute_force_log_Z(const Mat& h, double beta) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    const RealVec evals = solver.eigenvalues();
    const double e0 = evals.minCoeff();
    double z = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) z += std::exp(-beta * (evals(i) - e0));
    return -beta * e0 + std::log(z);
}

} // namespace

TEST_CASE("single sector, single level: f = E/N") {
    std::vector<thermo::SectorSpectrum> spectra;
    for (const auto& sec : spin::sector_list(1)) {
        thermo::SectorSpectrum s;
        s.sector = sec;
        s.energies = RealVec::Constant(1, 3.5);
        spectra.push_back(s);
    }
    const auto res = thermo::free_energy_from_spectra(spectra, 2.0, 1);
    CHECK(res.free_energy_per_site == doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("lambda = 0: matter part is the free-spin free energy") {
    DickeParams p;
    p.omega_z = 1.0;
    p.lambda = 0.0;
    p.N = 5;
    p.n_ph = 40;
    p.beta = 5.0;
    const auto spectra = ed::sector_spectra(p, ed::Model::full);
    const auto res = thermo::free_energy_from_spectra(spectra, p.beta, p.N);
    const double f_spin = -std::log(2.0 * std::cosh(0.5 * p.beta * p.omega_z)) / p.beta;
    const double f_boson = std::log1p(-std::exp(-p.beta * p.omega_c)) / p.beta;  // truncation-negligible
    CHECK(res.free_energy_per_site ==
          doctest::Approx(f_spin + f_boson / p.N).epsilon(1e-10));
}

TEST_CASE("sector decomposition reproduces brute-force individual-spin ED") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 0.8;
    p.N = 4;
    p.n_ph = 3;
    p.beta = 1.7;
    for (double lambda : {0.13, 0.52}) {
        p.lambda = lambda;
        const double brute = brute_force_log_Z(dicke_individual_spins(p), p.beta);
        const auto spectra = ed::sector_spectra(p, ed::Model::full);
        const double sectored = thermo::free_energy_from_spectra(spectra, p.beta, p.N).log_Z;
        CHECK(std::abs(sectored - brute) / std::abs(brute) < 1e-10);
    }
}

TEST_CASE("free_energy_from_spectra rejects broken sector sets") {
    DickeParams p;
    p.N = 4;
    p.n_ph = 2;
    auto spectra = ed::sector_spectra(p, ed::Model::full);
    CHECK_THROWS_AS(thermo::free_energy_from_spectra(spectra, -1.0, p.N), std::invalid_argument);

    auto missing = spectra;
    missing.pop_back();
    CHECK_THROWS_AS(thermo::free_energy_from_spectra(missing, 1.0, p.N), std::invalid_argument);

    auto duplicated = spectra;
    duplicated.back() = duplicated.front();
    CHECK_THROWS_AS(thermo::free_energy_from_spectra(duplicated, 1.0, p.N), std::invalid_argument);
}

TEST_CASE("analytic free energy: normal branch closed form") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;
    p.beta = 5.0;
    p.lambda = 0.3;  // below lambda_c = 1/2
    const auto [res, mf] = thermo::analytic_free_energy(p);
    CHECK(mf.branch == thermo::Branch::normal);
    CHECK(res.free_energy_per_site ==
          doctest::Approx(-std::log(2.0 * std::cosh(2.5)) / 5.0).epsilon(1e-14));
    CHECK(mf.lambda_c == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("analytic free energy: sigma saturates at strong coupling and low temperature") {
    DickeParams p;
    p.beta = 400.0;
    p.lambda = 40.0;
    const auto [res, mf] = thermo::analytic_free_energy(p);
    CHECK(mf.branch == thermo::Branch::superradiant);
    CHECK(mf.sigma == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("free energy is continuous across the branch line") {
    // At the finite-temperature transition coupling lambda*(beta), where
    // 4 lambda^2 tanh(beta omega_z/2) = omega_c omega_z, both branch
    // expressions must agree.
    for (double beta : {2.0, 5.0, 50.0}) {
        DickeParams p;
        p.omega_c = 1.0;
        p.omega_z = 1.0;
        p.beta = beta;
        const double lambda_star = 0.5 / std::sqrt(std::tanh(0.5 * beta));
        const double eps = 1e-9;

        p.lambda = lambda_star * (1.0 - eps);
        const double f_normal = thermo::analytic_free_energy(p).first.free_energy_per_site;
        p.lambda = lambda_star * (1.0 + eps);
        const auto [res_sr, mf_sr] = thermo::analytic_free_energy(p);
        CHECK(mf_sr.branch == thermo::Branch::superradiant);
        CHECK(std::abs(res_sr.free_energy_per_site - f_normal) < 1e-7);

        // Exactly at lambda*, sigma* = omega_c omega_z/(8 lambda*^2) and the
        // superradiant expression collapses onto the normal branch.
        const double lam2 = lambda_star * lambda_star;
        const double sigma_star = 1.0 / (8.0 * lam2);
        const double kappa = 4.0 * lam2;
        const double sr_value = -(std::log(2.0 * std::cosh(beta * kappa * sigma_star)) -
                                  beta * kappa * sigma_star * sigma_star +
                                  beta / (16.0 * lam2)) /
                                beta;
        p.lambda = lambda_star * (1.0 - 1e-14);
        const double normal_value = thermo::analytic_free_energy(p).first.free_energy_per_site;
        CHECK(std::abs(sr_value - normal_value) < 1e-10);
    }
}

TEST_CASE("df/dlambda is continuous at the transition (second order)") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;
    p.beta = 5.0;
    const double lambda_star = 0.5 / std::sqrt(std::tanh(2.5));
    const double h = 1e-4;
    auto f = [&](double lambda) {
        DickeParams q = p;
        q.lambda = lambda;
        return thermo::analytic_free_energy(q).first.free_energy_per_site;
    };
    const double slope_below = (f(lambda_star - h) - f(lambda_star - 3.0 * h)) / (2.0 * h);
    const double slope_above = (f(lambda_star + 3.0 * h) - f(lambda_star + h)) / (2.0 * h);
    // a first-order transition would leave an O(1) slope jump; the residual
    // here is the f'' mismatch times the stencil width
    CHECK(std::abs(slope_above - slope_below) < 1e-2);
}

TEST_CASE("critical temperature") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;

    p.lambda = 0.5;
    CHECK_FALSE(thermo::critical_temperature(p).has_value());
    p.lambda = 0.3;
    CHECK_FALSE(thermo::critical_temperature(p).has_value());

    p.lambda = 0.6;
    const auto beta_c = thermo::critical_temperature(p);
    REQUIRE(beta_c.has_value());
    CHECK(*beta_c == doctest::Approx(2.0 * std::atanh(1.0 / 1.44)).epsilon(1e-11));

    // lambda -> infinity: beta_c -> 0 like tanh(beta_c/2) = 1/(4 lambda^2)
    p.lambda = 200.0;
    const auto tiny = thermo::critical_temperature(p);
    REQUIRE(tiny.has_value());
    CHECK(*tiny == doctest::Approx(2.0 * std::atanh(1.0 / (4.0 * 200.0 * 200.0))).epsilon(1e-9));
}

TEST_CASE("thermal expectation: identity, ground-state limit, free spins") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;
    p.N = 4;
    p.n_ph = 6;
    p.beta = 5.0;
    p.lambda = 0.2;

    const auto sectors = spin::sector_list(p.N);
    std::vector<thermo::SectorEigensystem> systems;
    std::vector<Mat> identities, sz_ops;
    for (const auto& sec : sectors) {
        const Mat h = models::dicke_full(p, sec);
        Eigen::SelfAdjointEigenSolver<Mat> solver(h);
        systems.push_back({sec, solver.eigenvalues(), solver.eigenvectors()});
        identities.push_back(Mat::Identity(h.rows(), h.cols()));
        const auto s = spin::build_spin_operators(sec.S);
        sz_ops.push_back(linalg::kron(s.sz, Mat::Identity(p.n_ph + 1, p.n_ph + 1)));
    }
    CHECK(thermo::thermal_expectation(identities, systems, p.beta, p.N) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // free spins at lambda = 0: <Sz>/N = -tanh(beta omega_z/2)/2
    DickeParams q = p;
    q.lambda = 0.0;
    std::vector<thermo::SectorEigensystem> free_systems;
    std::vector<Mat> free_sz;
    for (const auto& sec : sectors) {
        const Mat h = models::dicke_full(q, sec);
        Eigen::SelfAdjointEigenSolver<Mat> solver(h);
        free_systems.push_back({sec, solver.eigenvalues(), solver.eigenvectors()});
        const auto s = spin::build_spin_operators(sec.S);
        free_sz.push_back(linalg::kron(s.sz, Mat::Identity(q.n_ph + 1, q.n_ph + 1)));
    }
    const double sz_per_site =
        thermo::thermal_expectation(free_sz, free_systems, q.beta, q.N) / q.N;
    CHECK(sz_per_site == doctest::Approx(-0.5 * std::tanh(2.5)).epsilon(1e-9));

    // beta -> infinity picks out the (sector-degeneracy-weighted) ground state
    const double gs = thermo::thermal_expectation(sz_ops, systems, 400.0, p.N);
    Eigen::Index which = 0;
    double e0 = 1e300;
    for (size_t k = 0; k < systems.size(); ++k)
        if (systems[k].energies.minCoeff() < e0) {
            e0 = systems[k].energies.minCoeff();
            which = static_cast<Eigen::Index>(k);
        }
    const auto& sys = systems[which];
    const Mat op = sz_ops[which];
    const double expected =
        (sys.vectors.col(0).adjoint() * op * sys.vectors.col(0)).value().real();
    CHECK(gs == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("Hepp-Lieb gap: free-mode closed forms and classical limit") {
    const std::vector<double> freqs = {1.3};
    SUBCASE("free mode at beta = 2") {
        const double beta = 2.0;
        // log Z - log Z~ = -log(1 - e^{-bw}) - log(1/(bw))
        const double exact = -std::log1p(-std::exp(-beta * 1.3));
        const double lower = std::log(1.0 / (beta * 1.3));
        const double gap = thermo::hepp_lieb_gap(exact, lower, freqs, beta);
        CHECK(gap > 0.0);
        CHECK(gap == doctest::Approx(exact - lower).epsilon(1e-14));
    }
    SUBCASE("classical limit beta -> 0") {
        const double beta = 1e-5;
        const double exact = -std::log1p(-std::exp(-beta * 1.3));
        const double lower = std::log(1.0 / (beta * 1.3));
        CHECK(thermo::hepp_lieb_gap(exact, lower, freqs, beta) < 1e-4);
    }
    SUBCASE("violations throw") {
        CHECK_THROWS_AS(thermo::hepp_lieb_gap(0.0, 1.0, freqs, 1.0), std::logic_error);
        CHECK_THROWS_AS(thermo::hepp_lieb_gap(10.0, 0.0, freqs, 1.0), std::logic_error);
    }
}

TEST_CASE("polaron-frame observables match the lab frame at far smaller cutoff") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;
    p.beta = 2.0;
    p.N = 3;
    p.lambda = 0.9 * p.lambda_c();

    DickeParams lab = p;
    lab.n_ph = 60;
    const auto full = ed::thermal_point(lab, ed::Model::full);
    DickeParams pol = p;
    pol.n_ph = 14;
    const auto polaron = ed::thermal_point(pol, ed::Model::full_polaron);

    CHECK(std::abs(full.f_per_site - polaron.f_per_site) < 1e-9);
    CHECK(std::abs(full.photon_number - polaron.photon_number) < 1e-8);
    CHECK(std::abs(full.sx2_per_n2 - polaron.sx2_per_n2) < 1e-9);
}

TEST_CASE("free_energy and thermal_point agree for every model") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 0.5;
    p.beta = 3.0;
    p.N = 5;
    p.n_ph = 12;
    p.lambda = 1.3 * p.lambda_c();
    for (auto model : {ed::Model::full, ed::Model::full_polaron, ed::Model::effective,
                       ed::Model::sw, ed::Model::analytic}) {
        const double lean = ed::free_energy(p, model);
        const double full = ed::thermal_point(p, model).f_per_site;
        CHECK(lean == doctest::Approx(full).epsilon(1e-13));
    }
}

TEST_CASE("Hepp-Lieb sandwich for the N=6 Dicke model") {
    DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;
    p.N = 6;
    p.n_ph = 40;
    p.beta = 2.0;
    const std::vector<double> freqs = {p.omega_c};
    for (double ratio : {0.5, 1.2}) {
        p.lambda = ratio * p.lambda_c();
        const double log_Z =
            thermo::free_energy_from_spectra(ed::sector_spectra(p, ed::Model::full), p.beta, p.N)
                .log_Z;
        const double log_Z_tilde =
            -std::log(p.beta * p.omega_c) +
            thermo::free_energy_from_spectra(ed::sector_spectra(p, ed::Model::effective), p.beta,
                                             p.N)
                .log_Z;
        const double gap = thermo::hepp_lieb_gap(log_Z, log_Z_tilde, freqs, p.beta);
        CHECK(gap >= 0.0);
        CHECK(gap <= p.beta * p.omega_c);
    }
}
