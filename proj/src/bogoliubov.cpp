#include "cqed/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cqed::bogo {

SingleModeBogo single_mode(double Delta, double omega) {
    if (Delta < 0.0)
        throw std::invalid_argument("single_mode: Delta < 0 signals an unstable mode");
    if (omega <= 0.0) throw std::invalid_argument("single_mode: omega must be > 0");
    SingleModeBogo b;
    b.Delta = Delta;
    b.omega = omega;
    b.lambda_k = std::sqrt(1.0 + 4.0 * Delta / omega);
    const double sq = std::sqrt(b.lambda_k);
    b.cosh_theta = (b.lambda_k + 1.0) / (2.0 * sq);
    b.sinh_theta = (b.lambda_k - 1.0) / (2.0 * sq);
    b.omega_tilde = omega * b.lambda_k;
    return b;
}

Mat QuadraticBosonForm::assemble() const {
    const Eigen::Index m = H1.rows();
    Mat h(2 * m, 2 * m);
    h.topLeftCorner(m, m) = H1;
    h.topRightCorner(m, m) = H2;
    h.bottomLeftCorner(m, m) = H2.adjoint();
    h.bottomRightCorner(m, m) = H1.conjugate();
    return h;
}

namespace {

void validate_form(const QuadraticBosonForm& form) {
    if (form.H1.rows() != form.H1.cols() || form.H2.rows() != form.H2.cols() ||
        form.H1.rows() != form.H2.rows())
        throw std::invalid_argument("diagonalize_quadratic: H1/H2 must be square and same size");
    if (linalg::hermiticity_error(form.H1) > 1e-12)
        throw std::invalid_argument("diagonalize_quadratic: H1 not Hermitian");
    if ((form.H2 - form.H2.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("diagonalize_quadratic: H2 not symmetric");
}

Mat metric(Eigen::Index m) {
    Mat im = Mat::Identity(2 * m, 2 * m);
    im.bottomRightCorner(m, m) *= -1.0;
    return im;
}

// Deterministic phase: rotate so the largest-magnitude component is real
// and positive.
void fix_phase(Eigen::VectorXcd& v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex z = v(imax);
    if (std::abs(z) > 0.0) v *= std::conj(z) / std::abs(z);
}

} // namespace

BogoTransform diagonalize_quadratic(const QuadraticBosonForm& form, double stability_tol) {
    validate_form(form);
    const Eigen::Index m = form.H1.rows();
    const Mat h = form.assemble();
    const Mat im = metric(m);
    const Mat dyn = im * h;

    Eigen::ComplexEigenSolver<Mat> solver(dyn);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize_quadratic: eigensolver failed");

    // Stable forms have real eigenvalues in ± pairs; keep the positive half.
    struct Pair {
        double freq;
        Eigen::VectorXcd vec;
    };
    std::vector<Pair> positive;
    for (Eigen::Index i = 0; i < 2 * m; ++i) {
        const Complex ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) > stability_tol)
            throw std::runtime_error("diagonalize_quadratic: dynamically unstable form "
                                     "(complex eigenvalue of I-. H)");
        if (ev.real() > 0.0) positive.push_back({ev.real(), solver.eigenvectors().col(i)});
    }
    if (static_cast<Eigen::Index>(positive.size()) != m)
        throw std::runtime_error("diagonalize_quadratic: dynamically unstable form "
                                 "(zero or unpaired eigenvalues)");

    std::sort(positive.begin(), positive.end(), [](const Pair& a, const Pair& b) {
        return a.freq < b.freq;
    });

    // I₋-orthonormalize. Within a degenerate cluster, Gram-Schmidt in the
    // indefinite metric with deterministic ordering: descending |first
    // component|, ties broken lexicographically on component magnitudes.
    const double degeneracy_tol = 1e-9;
    size_t lo = 0;
    while (lo < positive.size()) {
        size_t hi = lo + 1;
        while (hi < positive.size() && positive[hi].freq - positive[lo].freq < degeneracy_tol) ++hi;
        std::sort(positive.begin() + lo, positive.begin() + hi, [](const Pair& a, const Pair& b) {
            const double fa = std::abs(a.vec(0)), fb = std::abs(b.vec(0));
            if (std::abs(fa - fb) > 1e-12) return fa > fb;
            for (Eigen::Index i = 1; i < a.vec.size(); ++i) {
                const double ma = std::abs(a.vec(i)), mb = std::abs(b.vec(i));
                if (std::abs(ma - mb) > 1e-12) return ma > mb;
            }
            return false;
        });
        for (size_t i = lo; i < hi; ++i) {
            for (size_t j = lo; j < i; ++j) {
                const Complex overlap = (positive[j].vec.adjoint() * im * positive[i].vec).value();
                positive[i].vec -= overlap * positive[j].vec;  // previous vecs have I₋-norm +1
            }
            const double norm = (positive[i].vec.adjoint() * im * positive[i].vec).value().real();
            if (norm <= 0.0)
                throw std::runtime_error("diagonalize_quadratic: non-positive metric norm "
                                         "(unstable or defective form)");
            positive[i].vec /= std::sqrt(norm);
            fix_phase(positive[i].vec);
        }
        lo = hi;
    }

    // Columns 1..M from the positive family; columns M+1..2M are the
    // particle-hole partners (swap blocks, conjugate), eigenvectors of -ω~.
    BogoTransform out;
    out.T = Mat(2 * m, 2 * m);
    out.omega_tilde = RealVec(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto& v = positive[k].vec;
        out.omega_tilde(k) = positive[k].freq;
        out.T.col(k) = v;
        Eigen::VectorXcd partner(2 * m);
        partner.head(m) = v.tail(m).conjugate();
        partner.tail(m) = v.head(m).conjugate();
        out.T.col(m + k) = partner;
    }
    out.beta = out.T.bottomLeftCorner(m, m);
    out.alpha = out.T.bottomRightCorner(m, m);
    return out;
}

Mat transform_couplings(const BogoTransform& bogo, const RealVec& amplitudes, const Mat& mode_fns) {
    const Eigen::Index m = bogo.alpha.rows();
    if (amplitudes.size() != m || mode_fns.cols() != m)
        throw std::invalid_argument("transform_couplings: amplitude/mode-function count must match "
                                    "the transform's mode count");
    const Mat weighted = mode_fns * amplitudes.asDiagonal();
    return weighted * bogo.alpha.transpose() + weighted.conjugate() * bogo.beta.adjoint();
}

} // namespace cqed::bogo
