#pragma once

#include <vector>

#include "cqed/types.hpp"

namespace cqed::effective {

// One photonic channel after diagonalization: coupling constant c, dressed
// frequency ω~ and the matter-side coupling operator C (not necessarily
// Hermitian).
struct CouplingChannel {
    double c = 0.0;
    double omega_tilde = 1.0;
    Mat C;
    bool hermitian = false;
};

// H_eff = H_M - Σ_κ (c²/ω~) C C†. The C C† ordering is load-bearing for
// non-Hermitian C and is kept exactly as written.
Mat build_effective(const Mat& H_M, std::span<const CouplingChannel> channels);

// Light quadratures from matter expectations:
//   <b + b†> = -(c/ω~) <C + C†>,  <b - b†> = +(c/ω~) <C - C†>.
struct PhotonQuadratures {
    Complex plus;   // real for Hermitian C
    Complex minus;  // imaginary for Hermitian C
};

PhotonQuadratures photon_quadrature_from_matter(const CouplingChannel& ch, Complex exp_C,
                                                Complex exp_C_dag);

double bose_occupation(double beta, double omega);

// <b†b> = n_B(β, ω~) + (c/ω~)² <C C†>_M.
double photon_number_from_matter(const CouplingChannel& ch, double beta, double exp_CCdag);

// Matsubara kernel K(τ) = Σ_n ω~/(iω_n + ω~) e^{iω_n τ}, ω_n = 2πn/β,
// and its even/odd split K = K̄ - (1/ω~) ∂_τ K̄.
struct MatsubaraKernelSpec {
    double omega_tilde = 1.0;
    double beta = 1.0;
    int n_max = 2000;
    std::vector<double> tau;  // sample points in [0, beta)
};

struct MatsubaraKernel {
    std::vector<double> tau;
    std::vector<Complex> full;       // K(τ)
    std::vector<double> even;        // K̄(τ)
    std::vector<Complex> odd;        // -(1/ω~) ∂_τ K̄
    std::vector<double> even_closed; // (βω~/2) cosh(ω~(β/2-τ)) / sinh(βω~/2)
    // Weight of the delta comb in the further split K̄ = β Σ_n δ(τ - βn) - K̄̄,
    // kept symbolic: the delta never appears as a numeric spike.
    double delta_weight = 0.0;
    int n_max = 0;
    double even_tail_change = 0.0;  // |change of K̄| when n_max doubles
};

// The 1/ω_n and 1/ω_n² asymptotics of the summands are resummed in closed
// form (Bernoulli polynomials), so n_max only controls the absolutely
// convergent remainder; the convergence guard (doubling n_max must move
// the even part by < tol) is enforced on the computed values.
MatsubaraKernel matsubara_kernel(const MatsubaraKernelSpec& spec, double tol = 1e-8);

} // namespace cqed::effective
