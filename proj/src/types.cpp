#include "cqed/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cqed::linalg {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double hermiticity_error(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double anti_hermiticity_error(const Mat& m) {
    return (m + m.adjoint()).cwiseAbs().maxCoeff();
}

double logsumexp(std::span<const double> xs) {
    if (xs.empty()) return -std::numeric_limits<double>::infinity();
    const double m = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

double max_abs_diff(const Mat& a, const Mat& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace cqed::linalg
