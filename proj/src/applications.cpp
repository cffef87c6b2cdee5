#include "cqed/applications.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cqed::apps {

NogoResult nogo_factor(double Delta0, double omega0) {
    if (Delta0 < 0.0 || omega0 <= 0.0)
        throw std::invalid_argument("nogo_factor: need Delta0 >= 0 and omega0 > 0");
    NogoResult r;
    r.factor = 4.0 * Delta0 / (omega0 + 4.0 * Delta0);
    r.transition_possible = false;  // factor < 1 for every finite Delta0
    return r;
}

NogoResult nogo_factor_without_A2(int N, double c0e, double omega0) {
    if (N < 1 || c0e < 0.0 || omega0 <= 0.0)
        throw std::invalid_argument("nogo_factor_without_A2: inputs must be positive");
    NogoResult r;
    r.factor = static_cast<double>(N) * c0e * c0e / (omega0 * omega0);
    r.transition_possible = r.factor >= 1.0;
    return r;
}

bool nonuniform_criterion(double deltaE_matter,
                          std::span<const std::pair<double, double>> occupations) {
    double budget = 0.0;
    for (const auto& [omega_tilde, n] : occupations) {
        if (n < 0.0) throw std::invalid_argument("nonuniform_criterion: negative occupation");
        budget += omega_tilde * n;
    }
    return deltaE_matter <= budget;
}

double electron_gas_factor(const ModeSet& modes) {
    double acc = 0.0;
    for (const auto& m : modes.modes) {
        if (m.Delta < 0.0 || m.omega <= 0.0)
            throw std::invalid_argument("electron_gas_factor: need Delta >= 0 and omega > 0");
        acc += 4.0 * m.Delta / (m.omega + 4.0 * m.Delta);
    }
    return acc;
}

Eigen::MatrixXd SpinCouplingMatrix::dense() const {
    Eigen::MatrixXd out(3 * n_sites, 3 * n_sites);
    for (int i = 0; i < n_sites; ++i)
        for (int j = 0; j < n_sites; ++j) out.block<3, 3>(3 * i, 3 * j) = block(i, j);
    return out;
}

SpinCouplingMatrix spin_coupling_matrix(const ModeSet& modes,
                                        std::span<const Eigen::Vector3d> positions) {
    const int n = static_cast<int>(positions.size());
    for (const auto& m : modes.modes)
        if (static_cast<int>(m.u_perp.size()) != n)
            throw std::invalid_argument("spin_coupling_matrix: mode-function samples missing for "
                                        "some positions");

    SpinCouplingMatrix J;
    J.n_sites = n;
    J.positions.assign(positions.begin(), positions.end());
    J.blocks.assign(static_cast<size_t>(n) * n, Eigen::Matrix3d::Zero());
    for (const auto& m : modes.modes) {
        const double weight = m.c_m * m.c_m / m.omega;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Eigen::Matrix3cd outer = m.u_perp[i] * m.u_perp[j].adjoint();
                J.blocks[i * n + j] += weight * outer.real();
            }
    }
    return J;
}

ModeSet uniform_single_mode(double omega, double coupling, const Eigen::Vector3d& polarization,
                            std::vector<Eigen::Vector3d> positions) {
    Mode m;
    m.omega = omega;
    m.c_m = coupling;
    m.polarization = polarization.normalized();
    m.u_perp.assign(positions.size(), m.polarization.cast<Complex>());
    ModeSet set;
    set.modes.push_back(std::move(m));
    set.positions = std::move(positions);
    return set;
}

ModeSet cosine_standing_wave(double omega, double coupling, const Eigen::Vector3d& polarization,
                             const Eigen::Vector3d& wavevector, double phase,
                             std::vector<Eigen::Vector3d> positions) {
    Mode m;
    m.omega = omega;
    m.c_m = coupling;
    m.polarization = polarization.normalized();
    m.u_perp.reserve(positions.size());
    for (const auto& r : positions)
        m.u_perp.push_back(std::cos(wavevector.dot(r) + phase) * m.polarization.cast<Complex>());
    ModeSet set;
    set.modes.push_back(std::move(m));
    set.positions = std::move(positions);
    return set;
}

namespace {

Eigen::Vector3cd parse_u_entry(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("mode set: u_perp entries must be 3-vectors");
    Eigen::Vector3cd u;
    for (int k = 0; k < 3; ++k) {
        const auto& c = j[k];
        if (c.is_number())
            u(k) = Complex(c.get<double>(), 0.0);
        else if (c.is_array() && c.size() == 2)
            u(k) = Complex(c[0].get<double>(), c[1].get<double>());
        else
            throw std::invalid_argument("mode set: components must be numbers or [re, im] pairs");
    }
    return u;
}

} // namespace

ModeSet load_mode_set_json(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open mode-set file " + file.string());
    nlohmann::json j;
    in >> j;

    ModeSet set;
    for (const auto& pos : j.at("positions"))
        set.positions.emplace_back(pos.at(0).get<double>(), pos.at(1).get<double>(),
                                   pos.at(2).get<double>());
    for (const auto& jm : j.at("modes")) {
        Mode m;
        m.omega = jm.at("omega").get<double>();
        m.Delta = jm.value("Delta", 0.0);
        m.c_e = jm.value("c_e", 0.0);
        m.c_m = jm.value("c_m", 0.0);
        if (jm.contains("polarization")) {
            const auto& p = jm["polarization"];
            m.polarization = Eigen::Vector3d(p.at(0).get<double>(), p.at(1).get<double>(),
                                             p.at(2).get<double>())
                                 .normalized();
        }
        for (const auto& ju : jm.at("u_perp")) m.u_perp.push_back(parse_u_entry(ju));
        if (m.u_perp.size() != set.positions.size())
            throw std::invalid_argument("mode set: u_perp sample count != position count");
        set.modes.push_back(std::move(m));
    }
    return set;
}

ModeSet load_mode_set_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open mode-set file " + file.string());

    ModeSet set;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // skip the column-name row
            header_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::vector<double> fields;
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(std::stod(tok));
        if (fields.size() != 14)
            throw std::invalid_argument("mode-set csv: expected 14 columns, got " +
                                        std::to_string(fields.size()));
        const int mode_idx = static_cast<int>(fields[0]);
        if (mode_idx == static_cast<int>(set.modes.size())) {
            Mode m;
            m.omega = fields[1];
            m.Delta = fields[2];
            m.c_e = fields[3];
            m.c_m = fields[4];
            set.modes.push_back(std::move(m));
        } else if (mode_idx != static_cast<int>(set.modes.size()) - 1) {
            throw std::invalid_argument("mode-set csv: mode indices must be contiguous");
        }
        Eigen::Vector3d pos(fields[5], fields[6], fields[7]);
        if (mode_idx == 0)
            set.positions.push_back(pos);
        Eigen::Vector3cd u(Complex(fields[8], fields[9]), Complex(fields[10], fields[11]),
                           Complex(fields[12], fields[13]));
        set.modes[mode_idx].u_perp.push_back(u);
    }
    for (const auto& m : set.modes)
        if (m.u_perp.size() != set.positions.size())
            throw std::invalid_argument("mode-set csv: u_perp sample count != position count");
    return set;
}

} // namespace cqed::apps
