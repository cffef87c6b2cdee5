#include <cmath>
#include <random>

#include "doctest.h"

#include "cqed/effective.hpp"
#include "cqed/models.hpp"
#include "cqed/spin.hpp"
#include "cqed/thermo.hpp"

using namespace cqed;
using effective::CouplingChannel;

TEST_CASE("no channels leave the matter Hamiltonian unchanged") {
    Mat h = Mat::Random(4, 4);
    h = 0.5 * (h + h.adjoint().eval());
    CHECK(linalg::max_abs_diff(effective::build_effective(h, {}), h) == 0.0);
}

TEST_CASE("the Dicke channel reproduces dicke_effective") {
    models::DickeParams p;
    p.omega_c = 1.4;
    p.omega_z = 0.8;
    p.lambda = 0.9;
    p.N = 5;
    const spin::SpinSector sec{half(3), 5, 4, spin::log_degeneracy(half(3), 5)};
    const auto s = spin::build_spin_operators(sec.S);

    CouplingChannel ch;
    ch.c = 2.0 * p.g();
    ch.omega_tilde = p.omega_c;
    ch.C = s.sx;
    ch.hermitian = true;
    const Mat via_channel =
        effective::build_effective(p.omega_z * s.sz, std::span(&ch, 1));
    CHECK(linalg::max_abs_diff(via_channel, models::dicke_effective(p, sec)) < 1e-14);
}

TEST_CASE("two half-weight channels equal one full channel") {
    const auto s = spin::build_spin_operators(half(2));
    CouplingChannel full;
    full.c = 0.6;
    full.omega_tilde = 1.2;
    full.C = s.sx;
    CouplingChannel halved = full;
    halved.c = full.c / std::sqrt(2.0);
    const std::vector<CouplingChannel> twice = {halved, halved};
    const Mat h_m = 0.7 * s.sz;
    CHECK(linalg::max_abs_diff(effective::build_effective(h_m, std::span(&full, 1)),
                               effective::build_effective(h_m, twice)) < 1e-14);
}

TEST_CASE("scaling (c, C) -> (c/sqrt(s), sqrt(s) C) leaves H_eff invariant") {
    const auto sp = spin::build_spin_operators(half(4));
    const Mat h_m = 0.3 * sp.sz;
    for (double s : {0.1, 2.0, 97.0}) {
        CouplingChannel a{0.8, 1.5, sp.sp, false};
        CouplingChannel b{0.8 / std::sqrt(s), 1.5, Mat(std::sqrt(s) * sp.sp), false};
        CHECK(linalg::max_abs_diff(effective::build_effective(h_m, std::span(&a, 1)),
                                   effective::build_effective(h_m, std::span(&b, 1))) < 1e-12);
    }
}

TEST_CASE("C C-dagger ordering is pinned by a non-Hermitian coupling") {
    Mat c_op = Mat::Zero(2, 2);
    c_op(0, 1) = 1.0;  // sigma^+ in the descending-m basis
    CouplingChannel ch{1.0, 1.0, c_op, false};
    const Mat h = effective::build_effective(Mat::Zero(2, 2), std::span(&ch, 1));
    // C C† = diag(1, 0); the opposite ordering would give diag(0, 1).
    CHECK(h(0, 0).real() == doctest::Approx(-1.0));
    CHECK(h(1, 1).real() == doctest::Approx(0.0));
}

TEST_CASE("the induced term is negative semidefinite for arbitrary C") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Mat c_op(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) c_op(i, j) = Complex(unit(rng), unit(rng));
        CouplingChannel ch{0.7, 1.1, c_op, false};
        const Mat induced = effective::build_effective(Mat::Zero(5, 5), std::span(&ch, 1));
        CHECK(linalg::hermiticity_error(induced) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Mat> solver(induced);
        CHECK(solver.eigenvalues().maxCoeff() < 1e-12);
    }
}

TEST_CASE("photon quadratures from matter expectations") {
    CouplingChannel ch{0.4, 2.0, Mat::Zero(2, 2), true};
    SUBCASE("zero expectation gives zero quadratures") {
        const auto q = effective::photon_quadrature_from_matter(ch, 0.0, 0.0);
        CHECK(std::abs(q.plus) == 0.0);
        CHECK(std::abs(q.minus) == 0.0);
    }
    SUBCASE("Hermitian C with <C> = x") {
        const double x = 0.9;
        const auto q = effective::photon_quadrature_from_matter(ch, x, x);
        CHECK(q.plus.real() == doctest::Approx(-2.0 * 0.4 * x / 2.0));
        CHECK(std::abs(q.plus.imag()) == 0.0);
        CHECK(std::abs(q.minus) == 0.0);
    }
}

TEST_CASE("normal phase: <Sx> = 0 under the effective Gibbs state, so <a+a†> = 0") {
    models::DickeParams p;
    p.omega_c = 1.0;
    p.omega_z = 1.0;
    p.beta = 5.0;
    p.N = 40;
    p.lambda = 0.6 * p.lambda_c();

    std::vector<thermo::SectorEigensystem> systems;
    std::vector<Mat> sx_ops;
    for (const auto& sec : spin::sector_list(p.N)) {
        const Mat h = models::dicke_effective(p, sec);
        Eigen::SelfAdjointEigenSolver<Mat> solver(h);
        systems.push_back({sec, solver.eigenvalues(), solver.eigenvectors()});
        sx_ops.push_back(spin::build_spin_operators(sec.S).sx);
    }
    const double mean_sx = thermo::thermal_expectation(sx_ops, systems, p.beta, p.N);
    CHECK(std::abs(mean_sx) < 1e-10);  // exact symmetry at finite N

    CouplingChannel ch{2.0 * p.g(), p.omega_c, Mat(), true};
    const auto q = effective::photon_quadrature_from_matter(ch, mean_sx, mean_sx);
    CHECK(std::abs(q.plus) < 1e-10);
}

TEST_CASE("photon number from matter") {
    CouplingChannel ch{0.0, 1.5, Mat::Zero(2, 2), true};
    SUBCASE("c = 0 is the bare Bose occupation") {
        CHECK(effective::photon_number_from_matter(ch, 2.0, 123.0) ==
              doctest::Approx(1.0 / std::expm1(3.0)).epsilon(1e-14));
    }
    SUBCASE("zero-temperature limit vanishes") {
        CHECK(effective::photon_number_from_matter(ch, 700.0, 0.0) == doctest::Approx(0.0));
    }
    SUBCASE("coupled term adds (c/omega~)^2 <CC†>") {
        CouplingChannel c2{0.5, 2.0, Mat::Zero(2, 2), true};
        const double expected = 1.0 / std::expm1(2.0 * 2.0) + 0.0625 * 3.0;
        CHECK(effective::photon_number_from_matter(c2, 2.0, 3.0) ==
              doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("Matsubara kernel: closed form, parity, sum rule") {
    effective::MatsubaraKernelSpec spec;
    spec.omega_tilde = 1.7;
    spec.beta = 3.0;
    spec.n_max = 3000;
    const int m = 2048;
    for (int i = 0; i < m; ++i) spec.tau.push_back(spec.beta * i / m);
    const auto k = effective::matsubara_kernel(spec);

    SUBCASE("even part matches the resummed closed form") {
        for (int i = 0; i < m; ++i) CHECK(std::abs(k.even[i] - k.even_closed[i]) < 1e-8);
        // and the closed form is continuous across the period boundary
        CHECK(k.even_closed[0] ==
              doctest::Approx(0.5 * spec.beta * spec.omega_tilde /
                              std::tanh(0.5 * spec.beta * spec.omega_tilde)));
    }
    SUBCASE("odd part is odd about beta/2") {
        for (int i = 1; i < m; ++i)
            CHECK(std::abs(k.odd[i].real() + k.odd[m - i].real()) < 1e-8);
        CHECK(std::abs(k.odd[0]) == 0.0);
    }
    SUBCASE("sum rule: mean of the even part over the period is 1") {
        double simpson = 2.0 * k.even[0];
        for (int i = 1; i < m; ++i) simpson += k.even[i] * (i % 2 == 1 ? 4.0 : 2.0);
        const double integral = simpson * (spec.beta / m) / 3.0 / spec.beta;
        CHECK(std::abs(integral - 1.0) < 1e-8);
    }
    SUBCASE("full kernel equals the free-boson imaginary-time correlator shape") {
        // K = K̄ + odd = beta omega~ e^{-omega~ tau}/(1 - e^{-beta omega~}) on (0, beta)
        for (int i = 1; i < m; ++i) {
            const double tau = k.tau[i];
            const double expect = spec.beta * spec.omega_tilde *
                                  std::exp(-spec.omega_tilde * tau) /
                                  (-std::expm1(-spec.beta * spec.omega_tilde));
            CHECK(std::abs(k.full[i].real() - expect) < 1e-7);
        }
    }
    SUBCASE("delta comb weight is symbolic, equal to beta") {
        CHECK(k.delta_weight == doctest::Approx(spec.beta));
    }
}

TEST_CASE("kernel convergence guard rejects tiny n_max") {
    effective::MatsubaraKernelSpec spec;
    spec.omega_tilde = 5.0;
    spec.beta = 2.0;
    spec.n_max = 2;
    spec.tau = {0.0, 0.5, 1.0};
    CHECK_THROWS_WITH_AS(effective::matsubara_kernel(spec), doctest::Contains("not converged"),
                         std::runtime_error);
}

TEST_CASE("kernel input validation") {
    effective::MatsubaraKernelSpec spec;
    spec.omega_tilde = 1.0;
    spec.beta = 2.0;
    spec.n_max = 100;
    spec.tau = {2.5};  // outside [0, beta)
    CHECK_THROWS_AS(effective::matsubara_kernel(spec), std::invalid_argument);
    spec.tau = {0.5};
    spec.n_max = 0;
    CHECK_THROWS_AS(effective::matsubara_kernel(spec), std::invalid_argument);
}

TEST_CASE("dimension mismatch between channel and matter Hamiltonian") {
    CouplingChannel ch{1.0, 1.0, Mat::Zero(3, 3), true};
    CHECK_THROWS_AS(effective::build_effective(Mat::Zero(2, 2), std::span(&ch, 1)),
                    std::invalid_argument);
}
