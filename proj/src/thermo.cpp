#include "cqed/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cqed::thermo {

namespace {

// ln(2 cosh x) without overflow at large |x|.
double log_2cosh(double x) { return std::abs(x) + std::log1p(std::exp(-2.0 * std::abs(x))); }

// log sum_i exp(-beta E_i), shifted by the ground energy.
double log_partition(const RealVec& energies, double beta) {
    const double e0 = energies.minCoeff();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < energies.size(); ++i) acc += std::exp(-beta * (energies(i) - e0));
    return -beta * e0 + std::log(acc);
}

void check_sector_cover(std::span<const spin::SpinSector> sectors, int N) {
    const auto expected = spin::sector_list(N);
    if (sectors.size() != expected.size())
        throw std::invalid_argument("sector spectra must cover every sector of N exactly once");
    std::vector<int> seen(expected.size(), 0);
    for (const auto& sec : sectors) {
        const int idx = (sec.S.twice - (N % 2)) / 2;
        if (sec.N != N || idx < 0 || idx >= static_cast<int>(expected.size()) ||
            expected[idx].S.twice != sec.S.twice)
            throw std::invalid_argument("unexpected sector in spectra list");
        if (++seen[idx] > 1) throw std::invalid_argument("duplicate sector in spectra list");
    }
}

} // namespace

ThermoResult free_energy_from_spectra(std::span<const SectorSpectrum> spectra, double beta, int N) {
    if (beta <= 0.0) throw std::invalid_argument("free_energy_from_spectra: beta must be > 0");
    std::vector<spin::SpinSector> sectors;
    sectors.reserve(spectra.size());
    for (const auto& sp : spectra) sectors.push_back(sp.sector);
    check_sector_cover(sectors, N);

    // Deterministic ordered fold: terms accumulated in ascending S.
    std::vector<const SectorSpectrum*> ordered(spectra.size());
    for (const auto& sp : spectra) ordered[(sp.sector.S.twice - (N % 2)) / 2] = &sp;
    std::vector<double> terms;
    terms.reserve(ordered.size());
    for (const auto* sp : ordered)
        terms.push_back(sp->sector.log_degeneracy + log_partition(sp->energies, beta));

    ThermoResult out;
    out.beta = beta;
    out.log_Z = linalg::logsumexp(terms);
    out.free_energy_per_site = -out.log_Z / (beta * N);
    return out;
}

namespace {

// Nontrivial root of 2σ = tanh(4βλ²σ/ωc) on (0, 1/2], by bisection on
// r(σ) = tanh(4βλ²σ/ωc) - 2σ. r(1/2) < 0 always; a bracket start where
// r > 0 exists whenever the slope at 0 exceeds 2.
std::optional<double> solve_sigma(double beta, double lambda, double omega_c) {
    const double slope = 4.0 * beta * lambda * lambda / omega_c;
    if (slope <= 2.0) return std::nullopt;
    auto residual = [&](double sig) { return std::tanh(slope * sig) - 2.0 * sig; };
    double lo = 1e-12;
    if (residual(lo) <= 0.0) return std::nullopt;
    double hi = 0.5;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-16) break;
    }
    const double sig = 0.5 * (lo + hi);
    if (std::abs(residual(sig)) > 1e-12)
        throw std::runtime_error("analytic_free_energy: sigma fixed point did not converge");
    return sig;
}

} // namespace

std::pair<ThermoResult, MeanFieldSolution> analytic_free_energy(const models::DickeParams& p) {
    if (p.beta <= 0.0 || p.omega_c <= 0.0 || p.omega_z <= 0.0)
        throw std::invalid_argument("analytic_free_energy: beta and frequencies must be > 0");

    MeanFieldSolution mf;
    mf.lambda_c = p.lambda_c();
    if (auto bc = critical_temperature(p)) mf.beta_c = *bc;

    // The superradiant branch exists when 4λ² tanh(β ωz/2) > ωc ωz. The
    // fixed-point equation alone admits spurious roots with an effective
    // field below ωz (imaginary displacement); those stay on the normal
    // branch.
    const double lhs = 4.0 * p.lambda * p.lambda * std::tanh(0.5 * p.beta * p.omega_z);
    const bool superradiant = lhs > p.omega_c * p.omega_z;

    double minus_beta_f;
    if (!superradiant) {
        mf.branch = Branch::normal;
        mf.sigma = 0.0;
        minus_beta_f = log_2cosh(0.5 * p.beta * p.omega_z);
    } else {
        const auto sigma = solve_sigma(p.beta, p.lambda, p.omega_c);
        if (!sigma)
            throw std::runtime_error("analytic_free_energy: superradiant condition met but no fixed point");
        mf.branch = Branch::superradiant;
        mf.sigma = *sigma;
        const double kappa = 4.0 * p.lambda * p.lambda / p.omega_c;
        minus_beta_f = log_2cosh(p.beta * kappa * mf.sigma) -
                       p.beta * kappa * mf.sigma * mf.sigma +
                       p.beta * p.omega_c * p.omega_z * p.omega_z / (16.0 * p.lambda * p.lambda);
    }

    ThermoResult res;
    res.beta = p.beta;
    res.free_energy_per_site = -minus_beta_f / p.beta;
    res.log_Z = minus_beta_f * p.N;  // per-site value scaled back up
    res.observables["sigma"] = mf.sigma;
    return {res, mf};
}

std::optional<double> critical_temperature(const models::DickeParams& p) {
    const double target = p.omega_c * p.omega_z / (4.0 * p.lambda * p.lambda);
    if (!(p.lambda > p.lambda_c())) return std::nullopt;
    // tanh(beta ωz/2) = target with target < 1; bisection on an expanding
    // bracket, no Newton.
    auto residual = [&](double beta) { return std::tanh(0.5 * beta * p.omega_z) - target; };
    double lo = 0.0, hi = 1.0 / p.omega_z;
    while (residual(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e18) throw std::runtime_error("critical_temperature: bracket expansion failed");
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double beta_c = 0.5 * (lo + hi);
    if (std::abs(residual(beta_c)) > 1e-12)
        throw std::runtime_error("critical_temperature: bisection residual too large");
    return beta_c;
}

double thermal_expectation(std::span<const Mat> ops, std::span<const SectorEigensystem> systems,
                           double beta, int N) {
    if (beta <= 0.0) throw std::invalid_argument("thermal_expectation: beta must be > 0");
    if (ops.size() != systems.size())
        throw std::invalid_argument("thermal_expectation: one operator per sector required");
    std::vector<spin::SpinSector> sectors;
    for (const auto& sys : systems) sectors.push_back(sys.sector);
    check_sector_cover(sectors, N);

    std::vector<double> log_terms(systems.size());
    std::vector<double> sector_means(systems.size());
    for (size_t k = 0; k < systems.size(); ++k) {
        const auto& sys = systems[k];
        if (ops[k].rows() != sys.vectors.rows())
            throw std::invalid_argument("thermal_expectation: operator/eigenbasis dimension mismatch");
        const double e0 = sys.energies.minCoeff();
        double zs = 0.0, acc = 0.0;
        const Mat applied = ops[k] * sys.vectors;
        for (Eigen::Index i = 0; i < sys.energies.size(); ++i) {
            const double w = std::exp(-beta * (sys.energies(i) - e0));
            const double diag = (sys.vectors.col(i).adjoint() * applied.col(i)).value().real();
            zs += w;
            acc += w * diag;
        }
        log_terms[k] = sys.sector.log_degeneracy - beta * e0 + std::log(zs);
        sector_means[k] = acc / zs;
    }
    const double log_Z = linalg::logsumexp(log_terms);
    double mean = 0.0;
    for (size_t k = 0; k < systems.size(); ++k)
        mean += std::exp(log_terms[k] - log_Z) * sector_means[k];
    return mean;
}

double hepp_lieb_gap(double log_Z, double log_Z_tilde, std::span<const double> mode_freqs,
                     double beta, double tol) {
    double width = 0.0;
    for (double w : mode_freqs) width += beta * w;
    const double gap = log_Z - log_Z_tilde;
    if (gap < -tol || gap > width + tol)
        throw std::logic_error("hepp_lieb_gap: partition-function bounds violated (gap=" +
                               std::to_string(gap) + ", width=" + std::to_string(width) + ")");
    return gap;
}

} // namespace cqed::thermo
