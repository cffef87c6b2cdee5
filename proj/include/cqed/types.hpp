#pragma once

#include <complex>
#include <span>
#include <stdexcept>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using RealVec = Eigen::VectorXd;

// Half-integer quantum number, carried as 2x its value so that parity
// arithmetic (2S vs N) stays exact.
struct HalfInt {
    int twice = 0;

    constexpr double value() const { return 0.5 * static_cast<double>(twice); }
    constexpr bool is_integer() const { return twice % 2 == 0; }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) { return a.twice <=> b.twice; }
};

constexpr HalfInt half(int twice) { return HalfInt{twice}; }

namespace linalg {

Mat kron(const Mat& a, const Mat& b);

// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_error(const Mat& m);
// max_ij |m(i,j) + conj(m(j,i))|
double anti_hermiticity_error(const Mat& m);

// log(sum_i exp(x_i)), stable; -inf input handled, empty input is -inf
double logsumexp(std::span<const double> xs);

// max_ij |a(i,j) - b(i,j)|
double max_abs_diff(const Mat& a, const Mat& b);

} // namespace linalg
} // namespace cqed
