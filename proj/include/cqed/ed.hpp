#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "cqed/models.hpp"
#include "cqed/thermo.hpp"

namespace cqed::ed {

enum class Model { full, full_polaron, effective, sw, analytic };

const char* to_string(Model m);
Model model_from_string(const std::string& name);

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

struct PointTimeout : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Eigenvalues of the model Hamiltonian in every spin sector of p.N.
// workers > 1 parallelizes over sectors; output order and values are
// identical for any worker count. Not defined for Model::analytic.
std::vector<thermo::SectorSpectrum> sector_spectra(const models::DickeParams& p, Model model,
                                                   int workers = 1, const Deadline& deadline = {});

// One thermal point: free energy per site, photon number and <Sx²>/N².
//
// Photon-number conventions per model:
//   full          <a†a> in the lab frame
//   full_polaron  lab-frame <a†a>, i.e. the polaron-transformed number
//                 operator a†a - 2ζ Sx(a+a†) + 4ζ² Sx²
//   sw            frame <a†a> (the SW frame is not undone)
//   effective     n_B(beta, ωc) + (2g/ωc)² <Sx²>, the light-from-matter
//                 relation of the effective theory
//   analytic      N x² with x² the thermodynamic-limit condensate density
//
// For Model::effective the reported log_Z and f include the free-photon
// prefactor ln Z0 = -ln(1 - e^{-beta ωc}), matching Z = Z0 Tr_M e^{-βH_eff},
// so finite-N comparisons against the boson-carrying models are aligned.
struct PointResult {
    double log_Z = 0.0;
    double f_per_site = 0.0;
    double photon_number = 0.0;
    double sx2_per_n2 = 0.0;
};

PointResult thermal_point(const models::DickeParams& p, Model model, int workers = 1,
                          const Deadline& deadline = {});

// Eigenvalue-only free energy per site; same conventions as thermal_point
// (Z0 prefactor for the effective model) but skips the observable pass.
double free_energy(const models::DickeParams& p, Model model, int workers = 1,
                   const Deadline& deadline = {});

} // namespace cqed::ed
