#include "cqed/models.hpp"

#include <stdexcept>
#include <string>

#include "cqed/fock.hpp"

namespace cqed::models {

namespace {

void check_sector(const DickeParams& p, const spin::SpinSector& sector) {
    if (sector.N != p.N)
        throw std::invalid_argument("dicke builder: sector belongs to N=" + std::to_string(sector.N) +
                                    ", params have N=" + std::to_string(p.N));
    if (p.omega_c <= 0.0 || p.omega_z <= 0.0)
        throw std::invalid_argument("dicke builder: frequencies must be positive");
    if (p.lambda < 0.0) throw std::invalid_argument("dicke builder: lambda must be >= 0");
}

void check_dim(Eigen::Index dim) {
    if (dim > kMaxDenseDim)
        throw std::invalid_argument("dicke builder: matrix dimension " + std::to_string(dim) +
                                    " exceeds the dense-ED guard of " + std::to_string(kMaxDenseDim));
}

Mat eye(Eigen::Index n) { return Mat::Identity(n, n); }

} // namespace

Mat dicke_full(const DickeParams& p, const spin::SpinSector& sector) {
    check_sector(p, sector);
    const auto s = spin::build_spin_operators(sector.S);
    const auto b = fock::build_fock(p.n_ph);
    const Eigen::Index dim = static_cast<Eigen::Index>(sector.dim) * (p.n_ph + 1);
    check_dim(dim);

    const Mat x = b.a + b.a_dag;
    using linalg::kron;
    return p.omega_z * kron(s.sz, eye(b.n.rows())) + p.omega_c * kron(eye(sector.dim), b.n) +
           2.0 * p.g() * kron(s.sx, x);
}

Mat dicke_polaron(const DickeParams& p, const spin::SpinSector& sector) {
    check_sector(p, sector);
    const auto s = spin::build_spin_operators(sector.S);
    const auto b = fock::build_fock(p.n_ph);
    const Eigen::Index dim = static_cast<Eigen::Index>(sector.dim) * (p.n_ph + 1);
    check_dim(dim);

    const Mat alpha = 2.0 * p.zeta() * (b.a_dag - b.a);
    const auto hyp = fock::cosh_sinh_of(alpha);
    const double kappa = 4.0 * p.g() * p.g() / p.omega_c;

    using linalg::kron;
    Mat h = p.omega_z * kron(s.sz, hyp.cosh_op);
    h += p.omega_z * kron(Complex(0.0, -1.0) * s.sy, hyp.sinh_op);
    h += p.omega_c * kron(eye(sector.dim), b.n);
    h -= kappa * kron(s.sx * s.sx, eye(b.n.rows()));
    return h;
}

Mat dicke_effective(const DickeParams& p, const spin::SpinSector& sector) {
    check_sector(p, sector);
    const auto s = spin::build_spin_operators(sector.S);
    const double kappa = 4.0 * p.g() * p.g() / p.omega_c;
    return p.omega_z * s.sz - kappa * (s.sx * s.sx);
}

Mat dicke_sw_full(const DickeParams& p, const spin::SpinSector& sector) {
    check_sector(p, sector);
    if (std::abs(p.omega_c - p.omega_z) < 1e-6 * p.omega_c)
        throw std::invalid_argument("dicke_sw_full: SW undefined at resonance (omega_c = omega_z)");
    const auto s = spin::build_spin_operators(sector.S);
    const auto b = fock::build_fock(p.n_ph);
    const Eigen::Index dim = static_cast<Eigen::Index>(sector.dim) * (p.n_ph + 1);
    check_dim(dim);

    const double g2 = p.g() * p.g();
    const double det = p.omega_c * p.omega_c - p.omega_z * p.omega_z;
    const Mat x = b.a + b.a_dag;
    const Mat x2 = x * x;

    using linalg::kron;
    Mat h = p.omega_z * kron(s.sz, eye(b.n.rows()));
    h += p.omega_c * kron(eye(sector.dim), b.n);
    h -= (2.0 * g2 * p.omega_z / det) * kron(s.sz, x2);
    h -= (4.0 * g2 * p.omega_c / det) * kron(s.sx * s.sx, eye(b.n.rows()));
    return h;
}

SlowCavityFrequency sw_slow_cavity_frequency(const DickeParams& p, HalfInt m_z, HalfInt S) {
    if (std::abs(m_z.twice) > S.twice)
        throw std::invalid_argument("sw_slow_cavity_frequency: |m_z| > S");
    if (p.omega_c <= 0.0 || p.omega_z <= 0.0)
        throw std::invalid_argument("sw_slow_cavity_frequency: frequencies must be positive");

    // radicand = omega_c² + (8 g² omega_c / omega_z) m_z, factored so the
    // m_z = -N/2 cancellation at 4λ² = omega_c omega_z is exact: with
    // g² = λ²/N and 2 m_z = -N it reduces to (ωc/ωz)(ωc ωz - 4λ²).
    const double lam2 = p.lambda * p.lambda;
    const double ratio = static_cast<double>(m_z.twice) / static_cast<double>(p.N);
    const double radicand = (p.omega_c / p.omega_z) * (p.omega_c * p.omega_z + 4.0 * lam2 * ratio);

    SlowCavityFrequency out;
    if (radicand < 0.0) {
        out.imaginary = true;
        out.value = std::sqrt(-radicand);
    } else {
        out.value = std::sqrt(radicand);
    }
    return out;
}

} // namespace cqed::models
