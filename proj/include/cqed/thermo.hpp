#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cqed/models.hpp"
#include "cqed/spin.hpp"
#include "cqed/types.hpp"

namespace cqed::thermo {

struct SectorSpectrum {
    spin::SpinSector sector;
    RealVec energies;
};

struct SectorEigensystem {
    spin::SpinSector sector;
    RealVec energies;
    Mat vectors;  // columns are eigenvectors, aligned with energies
};

struct ThermoResult {
    double beta = 0.0;
    double free_energy_per_site = 0.0;  // -log_Z / (beta N)
    double log_Z = 0.0;
    std::map<std::string, double> observables;
};

// log Z = logsumexp_S(ln Omega(S,N) + log Z_S), Z_S = sum_i exp(-beta E_i).
// Requires every sector of N exactly once.
ThermoResult free_energy_from_spectra(std::span<const SectorSpectrum> spectra, double beta, int N);

enum class Branch { normal, superradiant };

struct MeanFieldSolution {
    double sigma = 0.0;  // in [0, 1/2], 0 on the normal branch
    Branch branch = Branch::normal;
    double lambda_c = 0.0;
    std::optional<double> beta_c;  // absent for lambda <= lambda_c
};

// Exact thermodynamic-limit free energy per site of the Dicke model.
// Normal branch: -beta f = ln 2cosh(beta omega_z/2).
// Superradiant:  -beta f = ln 2cosh(beta (4λ²/ωc) σ) - beta (4λ²/ωc) σ²
//                          + beta ωc ωz²/(16λ²),
// with σ the nontrivial root of 2σ = tanh(4βλ²σ/ωc). The superradiant
// branch applies when 4λ² tanh(β ωz/2) > ωc ωz, i.e. exactly when the
// physical (σ large enough for a real field displacement) root exists.
std::pair<ThermoResult, MeanFieldSolution> analytic_free_energy(const models::DickeParams& p);

// Root beta_c of ωc ωz = 4λ² tanh(beta_c ωz/2), by bracketed bisection;
// nullopt when lambda <= lambda_c (tanh < 1 leaves no solution).
std::optional<double> critical_temperature(const models::DickeParams& p);

// Gibbs average sum_S Omega_S Tr(op e^{-beta H_S}) / Z with log-domain
// sector weights. ops[i] must act in the basis of systems[i].
double thermal_expectation(std::span<const Mat> ops, std::span<const SectorEigensystem> systems,
                           double beta, int N);

// Sandwich slack log Z - log Z~ of the coherent-state bounds
// Z~ <= Z <= exp(beta sum_k omega_k) Z~. A violation beyond tol is an
// upstream inconsistency and throws.
double hepp_lieb_gap(double log_Z, double log_Z_tilde, std::span<const double> mode_freqs,
                     double beta, double tol = 1e-9);

} // namespace cqed::thermo
