#include "cqed/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed::fock {

FockOperators build_fock(int n_ph) {
    if (n_ph < 1) throw std::invalid_argument("build_fock: cutoff must be >= 1");
    const int dim = n_ph + 1;
    FockOperators ops;
    ops.cutoff = n_ph;
    ops.a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
    ops.a_dag = ops.a.adjoint();
    ops.n = ops.a_dag * ops.a;
    return ops;
}

CoshSinh cosh_sinh_of(const Mat& alpha, double herm_tol) {
    if (alpha.rows() != alpha.cols())
        throw std::invalid_argument("cosh_sinh_of: matrix must be square");
    if (linalg::anti_hermiticity_error(alpha) > herm_tol)
        throw std::invalid_argument("cosh_sinh_of: argument is not anti-Hermitian");

    // i*alpha is Hermitian; with i*alpha = V D V†, alpha = V (-iD) V† and
    // cosh(alpha) = V cos(D) V†, sinh(alpha) = V (-i sin(D)) V†.
    const Mat herm = Complex(0.0, 1.0) * alpha;
    Eigen::SelfAdjointEigenSolver<Mat> solver(herm);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("cosh_sinh_of: eigendecomposition failed");
    const RealVec d = solver.eigenvalues();
    const Mat& v = solver.eigenvectors();

    Eigen::VectorXcd ch(d.size()), sh(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        ch(i) = std::cos(d(i));
        sh(i) = Complex(0.0, -std::sin(d(i)));
    }
    CoshSinh out;
    out.cosh_op = v * ch.asDiagonal() * v.adjoint();
    out.sinh_op = v * sh.asDiagonal() * v.adjoint();
    return out;
}

CutoffCheck check_cutoff_convergence(const std::function<double(int)>& eval,
                                     int cutoff, double tol, int step) {
    const double lo = eval(cutoff);
    const double hi = eval(cutoff + step);
    CutoffCheck c;
    c.value = hi;
    c.change = std::abs(hi - lo);
    c.converged = c.change < tol;
    return c;
}

} // namespace cqed::fock
