#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "cqed/types.hpp"

namespace cqed::apps {

// One cavity mode: frequency, diamagnetic strength, electric/magnetic
// coupling constants, polarization, and transverse mode-function samples
// (one complex 3-vector per site).
struct Mode {
    double omega = 1.0;
    double Delta = 0.0;
    double c_e = 0.0;
    double c_m = 0.0;
    Eigen::Vector3d polarization = Eigen::Vector3d::UnitX();
    std::vector<Eigen::Vector3cd> u_perp;
};

struct ModeSet {
    std::vector<Mode> modes;
    std::vector<Eigen::Vector3d> positions;
};

struct NogoResult {
    double factor = 0.0;
    bool transition_possible = false;
};

// Uniform-mode critical factor 4Δ₀/(ω₀ + 4Δ₀); strictly < 1, so a
// self-consistent finite <e₁·p> never exists: no-go at any temperature.
NogoResult nogo_factor(double Delta0, double omega0);

// Same criterion with the A² term dropped: factor N(c₀ᵉ)²/ω₀², which can
// reach 1 and falsely predicts a transition.
NogoResult nogo_factor_without_A2(int N, double c0e, double omega0);

// Non-uniform-field criterion: ΔE_matter <= Σ_κ ω~_κ n_κ with the photon
// occupations supplied as (ω~, n) pairs.
bool nonuniform_criterion(double deltaE_matter,
                          std::span<const std::pair<double, double>> occupations);

// Momentum-renormalization prefactor Σ_k 4Δ_k/(ω_k + 4Δ_k) of the electron
// gas in a cavity.
double electron_gas_factor(const ModeSet& modes);

// Cavity-mediated spin-spin couplings: 3x3 blocks
//   J[i][j] = Σ_κ (c_κ²/ω_κ) Re[u_⊥κ(r_i) ⊗ u*_⊥κ(r_j)],  c_κ = c_m,
// such that H_eff = H_S - Σ_ij S_i · J[i][j] · S_j (conjugate ±k pairs
// combined into real channels keep J real).
struct SpinCouplingMatrix {
    int n_sites = 0;
    std::vector<Eigen::Matrix3d> blocks;  // row-major, i * n_sites + j
    std::vector<Eigen::Vector3d> positions;

    const Eigen::Matrix3d& block(int i, int j) const { return blocks[i * n_sites + j]; }
    Eigen::MatrixXd dense() const;  // 3N x 3N, PSD
};

SpinCouplingMatrix spin_coupling_matrix(const ModeSet& modes,
                                        std::span<const Eigen::Vector3d> positions);

// Built-in mode-function generators: a k→0 uniform mode and a 1D cosine
// standing wave u(r) = pol * cos(k·r + phase).
ModeSet uniform_single_mode(double omega, double coupling, const Eigen::Vector3d& polarization,
                            std::vector<Eigen::Vector3d> positions);
ModeSet cosine_standing_wave(double omega, double coupling, const Eigen::Vector3d& polarization,
                             const Eigen::Vector3d& wavevector, double phase,
                             std::vector<Eigen::Vector3d> positions);

// Mode-function samples from disk; JSON carries the whole mode set, CSV
// rows are (mode,x,y,z,re_ux,im_ux,re_uy,im_uy,re_uz,im_uz) with per-mode
// header rows "#mode,omega,Delta,c_e,c_m".
ModeSet load_mode_set_json(const std::filesystem::path& file);
ModeSet load_mode_set_csv(const std::filesystem::path& file);

} // namespace cqed::apps
