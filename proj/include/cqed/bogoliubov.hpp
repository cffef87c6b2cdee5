#pragma once

#include "cqed/types.hpp"

namespace cqed::bogo {

// Single-mode Bogoliubov data for a diamagnetic strength Delta and a bare
// frequency omega: lambda = sqrt(1 + 4 Delta/omega), cosh θ = (λ+1)/(2√λ),
// sinh θ = (λ-1)/(2√λ), dressed frequency ω~ = ω λ.
struct SingleModeBogo {
    double Delta = 0.0;
    double omega = 0.0;
    double lambda_k = 1.0;
    double cosh_theta = 1.0;
    double sinh_theta = 0.0;
    double omega_tilde = 0.0;
};

SingleModeBogo single_mode(double Delta, double omega);

// Quadratic photonic form H = 1/2 Ψ† ℍ Ψ with Ψ = (a†..., a...) and
// ℍ = [[H1, H2], [H2†, H1*]]; H1 Hermitian, H2 symmetric.
struct QuadraticBosonForm {
    Mat H1;
    Mat H2;

    int modes() const { return static_cast<int>(H1.rows()); }
    Mat assemble() const;  // the 2M x 2M block matrix
};

// Pseudo-unitary transform T (T† I₋ T = I₋) with T† ℍ T diagonal.
// Old operators recover as a_κ = Σ_κ' (α_{κκ'} b_κ' + β_{κκ'} b†_κ').
struct BogoTransform {
    Mat T;
    Mat alpha;
    Mat beta;
    RealVec omega_tilde;  // ascending, all > 0 for stable forms
};

// Diagonalizes via the eigen-decomposition of I₋ℍ with eigenvectors
// normalized in the indefinite metric. Dynamically unstable forms
// (eigenvalues of I₋ℍ with imaginary part beyond tol) are rejected.
BogoTransform diagonalize_quadratic(const QuadraticBosonForm& form, double stability_tol = 1e-9);

// Transformed coupling amplitudes: row j, column κ holds
// Ã_κ ũ_κ(R_j) = Σ_κ' A_κ' (u_κ'(R_j) α_{κκ'} + u*_κ'(R_j) β*_{κκ'}),
// with mode_fns(j, κ') = u_κ'(R_j).
Mat transform_couplings(const BogoTransform& bogo, const RealVec& amplitudes, const Mat& mode_fns);

} // namespace cqed::bogo
