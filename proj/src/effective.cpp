#include "cqed/effective.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cqed::effective {

Mat build_effective(const Mat& H_M, std::span<const CouplingChannel> channels) {
    if (H_M.rows() != H_M.cols()) throw std::invalid_argument("build_effective: H_M must be square");
    Mat h = H_M;
    for (const auto& ch : channels) {
        if (ch.C.rows() != H_M.rows() || ch.C.cols() != H_M.cols())
            throw std::invalid_argument("build_effective: channel operator dimension mismatch");
        if (ch.omega_tilde <= 0.0)
            throw std::invalid_argument("build_effective: omega_tilde must be > 0");
        if (ch.hermitian && linalg::hermiticity_error(ch.C) > 1e-12)
            throw std::invalid_argument("build_effective: channel flagged Hermitian is not");
        h -= (ch.c * ch.c / ch.omega_tilde) * (ch.C * ch.C.adjoint());
    }
    return h;
}

PhotonQuadratures photon_quadrature_from_matter(const CouplingChannel& ch, Complex exp_C,
                                                Complex exp_C_dag) {
    PhotonQuadratures q;
    q.plus = -(ch.c / ch.omega_tilde) * (exp_C + exp_C_dag);
    q.minus = (ch.c / ch.omega_tilde) * (exp_C - exp_C_dag);
    return q;
}

double bose_occupation(double beta, double omega) {
    if (beta <= 0.0 || omega <= 0.0)
        throw std::invalid_argument("bose_occupation: beta and omega must be > 0");
    return 1.0 / std::expm1(beta * omega);
}

double photon_number_from_matter(const CouplingChannel& ch, double beta, double exp_CCdag) {
    const double r = ch.c / ch.omega_tilde;
    return bose_occupation(beta, ch.omega_tilde) + r * r * exp_CCdag;
}

namespace {

// Remainder sums after peeling off the 1/ω_n² (even) and 1/ω_n (odd)
// asymptotics; both converge absolutely, as 1/n⁴ and 1/n³.
double even_remainder(double tau, double beta, double wt, int n_max) {
    double acc = 0.0;
    const double wt2 = wt * wt;
    for (int n = n_max; n >= 1; --n) {
        const double wn = 2.0 * std::numbers::pi * n / beta;
        const double wn2 = wn * wn;
        acc += 2.0 * wt2 * wt2 * std::cos(wn * tau) / (wn2 * (wn2 + wt2));
    }
    return acc;
}

double odd_remainder(double tau, double beta, double wt, int n_max) {
    double acc = 0.0;
    const double wt2 = wt * wt;
    for (int n = n_max; n >= 1; --n) {
        const double wn = 2.0 * std::numbers::pi * n / beta;
        acc += 2.0 * wt * wt2 * std::sin(wn * tau) / (wn * (wn * wn + wt2));
    }
    return acc;
}

} // namespace

MatsubaraKernel matsubara_kernel(const MatsubaraKernelSpec& spec, double tol) {
    if (spec.n_max < 1) throw std::invalid_argument("matsubara_kernel: n_max must be >= 1");
    if (spec.beta <= 0.0 || spec.omega_tilde <= 0.0)
        throw std::invalid_argument("matsubara_kernel: beta and omega_tilde must be > 0");
    for (double t : spec.tau)
        if (t < 0.0 || t >= spec.beta)
            throw std::invalid_argument("matsubara_kernel: tau samples must lie in [0, beta)");

    const double beta = spec.beta;
    const double wt = spec.omega_tilde;

    MatsubaraKernel out;
    out.tau = spec.tau;
    out.n_max = spec.n_max;
    out.delta_weight = beta;
    out.full.reserve(spec.tau.size());
    out.even.reserve(spec.tau.size());
    out.odd.reserve(spec.tau.size());
    out.even_closed.reserve(spec.tau.size());

    double max_change = 0.0;
    for (double tau : spec.tau) {
        const double x = tau / beta;
        // Σ_{n>=1} 2ω~² cos(ω_n τ)/ω_n² = (ω~²β²/2) B₂(x), B₂ = x² - x + 1/6.
        const double b2 = x * x - x + 1.0 / 6.0;
        const double even_lead = 1.0 + 0.5 * wt * wt * beta * beta * b2;
        const double rem1 = even_remainder(tau, beta, wt, spec.n_max);
        const double rem2 = even_remainder(tau, beta, wt, 2 * spec.n_max);
        max_change = std::max(max_change, std::abs(rem2 - rem1));
        const double even = even_lead - rem1;

        // Σ_{n>=1} 2ω~ sin(ω_n τ)/ω_n = ω~β(1/2 - x) on (0, β); 0 at τ = 0.
        double odd = 0.0;
        if (tau > 0.0) odd = wt * beta * (0.5 - x) - odd_remainder(tau, beta, wt, spec.n_max);

        out.even.push_back(even);
        out.odd.push_back(Complex(odd, 0.0));
        out.full.push_back(Complex(even + odd, 0.0));
        // (βω~/2) cosh(ω~(β/2-τ))/sinh(βω~/2), in overflow-safe form.
        const double closed = 0.5 * beta * wt * (std::exp(-wt * tau) + std::exp(-wt * (beta - tau))) /
                              (-std::expm1(-beta * wt));
        out.even_closed.push_back(closed);
    }
    out.even_tail_change = max_change;
    if (max_change >= tol)
        throw std::runtime_error("matsubara_kernel: even part not converged at n_max=" +
                                 std::to_string(spec.n_max) + " (doubling moves it by " +
                                 std::to_string(max_change) + "); increase n_max");
    return out;
}

} // namespace cqed::effective
