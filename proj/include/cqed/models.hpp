#pragma once

#include <cmath>

#include "cqed/spin.hpp"
#include "cqed/types.hpp"

namespace cqed::models {

// Parameters of the Dicke testbed. lambda is the collective coupling;
// the per-spin coupling g = lambda/sqrt(N) is always derived, never stored.
// Units: energies in omega_c unless stated otherwise, beta in 1/omega_c.
struct DickeParams {
    double omega_c = 1.0;
    double omega_z = 1.0;
    double lambda = 0.0;
    int N = 1;
    int n_ph = 10;
    double beta = 1.0;

    double g() const { return lambda / std::sqrt(static_cast<double>(N)); }
    double zeta() const { return g() / omega_c; }
    double lambda_c() const { return 0.5 * std::sqrt(omega_c * omega_z); }
};

// Largest matrix any builder will produce; beyond this dense ED is a
// mistake, not a long run.
inline constexpr int kMaxDenseDim = 20000;

// H = omega_z Sz + omega_c a†a + 2g Sx (a + a†) on spin (x) boson.
Mat dicke_full(const DickeParams& p, const spin::SpinSector& sector);

// Polaron frame: H_P = omega_z (Sz cosh α - i Sy sinh α) + omega_c a†a
// - (4g²/omega_c) Sx², with α = 2ζ(a† - a), ζ = g/omega_c. Same spectrum
// as dicke_full at converged cutoff, but needs a much smaller one.
Mat dicke_polaron(const DickeParams& p, const spin::SpinSector& sector);

// Matter-only effective Hamiltonian: omega_z Sz - (4g²/omega_c) Sx².
Mat dicke_effective(const DickeParams& p, const spin::SpinSector& sector);

// First-order Schrieffer-Wolff Hamiltonian on spin (x) boson. Undefined at
// resonance; |omega_c - omega_z| < 1e-6 omega_c is rejected.
Mat dicke_sw_full(const DickeParams& p, const spin::SpinSector& sector);

// Boson frequency of the slow-cavity SW Hamiltonian in a fixed m_z sector:
// eps(m_z) = sqrt(omega_c² + (8g² omega_c/omega_z) m_z). A negative
// radicand is reported explicitly, never as a silent complex number.
struct SlowCavityFrequency {
    double value = 0.0;  // eps if real, |Im eps| if imaginary
    bool imaginary = false;
};

SlowCavityFrequency sw_slow_cavity_frequency(const DickeParams& p, HalfInt m_z, HalfInt S);

} // namespace cqed::models
