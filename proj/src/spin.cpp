#include "cqed/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed::spin {

SpinOperators build_spin_operators(HalfInt S) {
    if (S.twice < 0)
        throw std::invalid_argument("build_spin_operators: 2S must be a non-negative integer, got " +
                                    std::to_string(S.twice));
    const int dim = S.twice + 1;
    const double s = S.value();

    SpinOperators ops;
    ops.S = S;
    ops.sp = Mat::Zero(dim, dim);
    ops.sz = Mat::Zero(dim, dim);

    // Row i holds m_i = S - i.
    for (int i = 0; i < dim; ++i) {
        const double m = s - i;
        ops.sz(i, i) = m;
        if (i + 1 < dim) {
            // S+ |S, m-1> = sqrt(S(S+1) - (m-1)m) |S, m>
            const double mlow = m - 1.0;
            ops.sp(i, i + 1) = std::sqrt(s * (s + 1.0) - mlow * (mlow + 1.0));
        }
    }
    ops.sm = ops.sp.adjoint();
    ops.sx = 0.5 * (ops.sp + ops.sm);
    ops.sy = Complex(0.0, -0.5) * (ops.sp - ops.sm);
    return ops;
}

double log_degeneracy(HalfInt S, int N) {
    if (N < 1) throw std::invalid_argument("log_degeneracy: N must be >= 1");
    if (S.twice < 0 || S.twice > N)
        throw std::invalid_argument("log_degeneracy: S out of range for N=" + std::to_string(N));
    if ((N - S.twice) % 2 != 0)
        throw std::invalid_argument("log_degeneracy: parity mismatch between 2S and N");

    // N/2 - S and N/2 + S + 1 are integers for valid (S, N) pairs.
    const int n_minus = (N - S.twice) / 2;
    const int n_plus = (N + S.twice) / 2 + 1;
    return std::lgamma(N + 1.0) + std::log(S.twice + 1.0) -
           std::lgamma(n_minus + 1.0) - std::lgamma(n_plus + 1.0);
}

std::vector<SpinSector> sector_list(int N) {
    if (N < 1) throw std::invalid_argument("sector_list: N must be >= 1");
    std::vector<SpinSector> sectors;
    for (int twice_s = N % 2; twice_s <= N; twice_s += 2) {
        SpinSector sec;
        sec.S = HalfInt{twice_s};
        sec.N = N;
        sec.dim = twice_s + 1;
        sec.log_degeneracy = log_degeneracy(sec.S, N);
        sectors.push_back(sec);
    }
    return sectors;
}

} // namespace cqed::spin
