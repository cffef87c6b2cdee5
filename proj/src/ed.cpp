#include "cqed/ed.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cqed/fock.hpp"

namespace cqed::ed {

const char* to_string(Model m) {
    switch (m) {
        case Model::full: return "full";
        case Model::full_polaron: return "full_polaron";
        case Model::effective: return "effective";
        case Model::sw: return "sw";
        case Model::analytic: return "analytic";
    }
    return "?";
}

Model model_from_string(const std::string& name) {
    if (name == "full") return Model::full;
    if (name == "full_polaron") return Model::full_polaron;
    if (name == "effective") return Model::effective;
    if (name == "sw") return Model::sw;
    if (name == "analytic") return Model::analytic;
    throw std::invalid_argument("unknown model '" + name + "'");
}

namespace {

void check_deadline(const Deadline& deadline) {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
        throw PointTimeout("per-point wall-time cap exceeded");
}

Mat build_hamiltonian(const models::DickeParams& p, Model model, const spin::SpinSector& sector) {
    switch (model) {
        case Model::full: return models::dicke_full(p, sector);
        case Model::full_polaron: return models::dicke_polaron(p, sector);
        case Model::effective: return models::dicke_effective(p, sector);
        case Model::sw: return models::dicke_sw_full(p, sector);
        case Model::analytic: break;
    }
    throw std::invalid_argument("analytic model has no Hamiltonian to diagonalize");
}

bool is_real(const Mat& m) { return m.imag().cwiseAbs().maxCoeff() < 1e-14; }

// Dense Hermitian ED; all builders here produce real-symmetric matrices,
// which the real path solves ~4x faster than the complex one.
void eigensolve(const Mat& h, bool want_vectors, RealVec& evals, Mat& evecs) {
    if (is_real(h)) {
        Eigen::SelfAdjointEigenSolver<RealMat> solver(
            h.real(), want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
        evals = solver.eigenvalues();
        if (want_vectors) evecs = solver.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<Mat> solver(
            h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
        evals = solver.eigenvalues();
        if (want_vectors) evecs = solver.eigenvectors();
    }
}

// Per-sector Gibbs data gathered in one eigensolve.
struct SectorReduction {
    double log_term = 0.0;  // ln Omega_S + ln Z_S
    double mean_number = 0.0;
    double mean_sx2 = 0.0;
};

SectorReduction reduce_sector(const models::DickeParams& p, Model model,
                              const spin::SpinSector& sector, bool want_observables) {
    const Mat h = build_hamiltonian(p, model, sector);
    RealVec evals;
    Mat evecs;
    eigensolve(h, want_observables, evals, evecs);

    SectorReduction red;
    const double e0 = evals.minCoeff();
    double zs = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) zs += std::exp(-p.beta * (evals(i) - e0));
    red.log_term = sector.log_degeneracy - p.beta * e0 + std::log(zs);
    if (!want_observables) return red;

    const auto s = spin::build_spin_operators(sector.S);
    Mat sx2_op;  // in the model's Hilbert space
    Mat number_op;
    const Eigen::Index bdim = p.n_ph + 1;
    using linalg::kron;
    if (model == Model::effective) {
        sx2_op = s.sx * s.sx;
    } else {
        const auto b = fock::build_fock(p.n_ph);
        sx2_op = kron(s.sx * s.sx, Mat::Identity(bdim, bdim));
        if (model == Model::full_polaron) {
            // Lab-frame a†a seen from the polaron frame.
            const double z = p.zeta();
            number_op = kron(Mat::Identity(sector.dim, sector.dim), b.n) -
                        2.0 * z * kron(s.sx, b.a + b.a_dag) +
                        4.0 * z * z * kron(s.sx * s.sx, Mat::Identity(bdim, bdim));
        } else {
            number_op = kron(Mat::Identity(sector.dim, sector.dim), b.n);
        }
    }

    auto gibbs_mean = [&](const Mat& op) {
        const Mat applied = op * evecs;
        double acc = 0.0, norm = 0.0;
        for (Eigen::Index i = 0; i < evals.size(); ++i) {
            const double w = std::exp(-p.beta * (evals(i) - e0));
            acc += w * (evecs.col(i).adjoint() * applied.col(i)).value().real();
            norm += w;
        }
        return acc / norm;
    };
    red.mean_sx2 = gibbs_mean(sx2_op);
    if (number_op.size() > 0) red.mean_number = gibbs_mean(number_op);
    return red;
}

// Runs fn(i) for i in [0, count) on the requested number of threads.
// Exceptions are captured and rethrown on the caller thread.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
                next.store(count);
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

std::vector<thermo::SectorSpectrum> sector_spectra(const models::DickeParams& p, Model model,
                                                   int workers, const Deadline& deadline) {
    const auto sectors = spin::sector_list(p.N);
    std::vector<thermo::SectorSpectrum> out(sectors.size());
    parallel_for(static_cast<int>(sectors.size()), workers, [&](int i) {
        check_deadline(deadline);
        const Mat h = build_hamiltonian(p, model, sectors[i]);
        RealVec evals;
        Mat evecs;
        eigensolve(h, false, evals, evecs);
        out[i] = {sectors[i], std::move(evals)};
    });
    return out;
}

PointResult thermal_point(const models::DickeParams& p, Model model, int workers,
                          const Deadline& deadline) {
    PointResult res;
    if (model == Model::analytic) {
        const auto [thermo_res, mf] = thermo::analytic_free_energy(p);
        res.log_Z = thermo_res.log_Z;
        res.f_per_site = thermo_res.free_energy_per_site;
        if (mf.branch == thermo::Branch::superradiant) {
            // Condensate density x² = (Θ² - ωz²)/(16λ²) with Θ = 8λ²σ/ωc.
            const double theta = 8.0 * p.lambda * p.lambda * mf.sigma / p.omega_c;
            const double x2 =
                (theta * theta - p.omega_z * p.omega_z) / (16.0 * p.lambda * p.lambda);
            res.photon_number = p.N * x2;
            res.sx2_per_n2 = x2 * p.omega_c * p.omega_c / (4.0 * p.lambda * p.lambda);
        }
        return res;
    }

    const auto sectors = spin::sector_list(p.N);
    std::vector<SectorReduction> reductions(sectors.size());
    parallel_for(static_cast<int>(sectors.size()), workers, [&](int i) {
        check_deadline(deadline);
        reductions[i] = reduce_sector(p, model, sectors[i], true);
    });

    std::vector<double> log_terms(reductions.size());
    for (size_t i = 0; i < reductions.size(); ++i) log_terms[i] = reductions[i].log_term;
    double log_Z = linalg::logsumexp(log_terms);

    double mean_sx2 = 0.0, mean_number = 0.0;
    for (size_t i = 0; i < reductions.size(); ++i) {
        const double w = std::exp(log_terms[i] - log_Z);
        mean_sx2 += w * reductions[i].mean_sx2;
        mean_number += w * reductions[i].mean_number;
    }

    if (model == Model::effective) {
        // Z = Z0 Tr_M e^{-βH_eff}; the Dicke mode has no A² term, so the
        // dressed frequency is ωc itself.
        log_Z += -std::log1p(-std::exp(-p.beta * p.omega_c));
        const double g = p.g();
        const double n_b = 1.0 / std::expm1(p.beta * p.omega_c);
        mean_number = n_b + 4.0 * g * g / (p.omega_c * p.omega_c) * mean_sx2;
    }

    res.log_Z = log_Z;
    res.f_per_site = -log_Z / (p.beta * p.N);
    res.photon_number = mean_number;
    res.sx2_per_n2 = mean_sx2 / (static_cast<double>(p.N) * p.N);
    return res;
}

double free_energy(const models::DickeParams& p, Model model, int workers,
                   const Deadline& deadline) {
    if (model == Model::analytic)
        return thermo::analytic_free_energy(p).first.free_energy_per_site;
    const auto spectra = sector_spectra(p, model, workers, deadline);
    double log_Z = thermo::free_energy_from_spectra(spectra, p.beta, p.N).log_Z;
    if (model == Model::effective) log_Z += -std::log1p(-std::exp(-p.beta * p.omega_c));
    return -log_Z / (p.beta * p.N);
}

} // namespace cqed::ed
