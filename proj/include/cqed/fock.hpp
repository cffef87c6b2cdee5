#pragma once

#include <functional>

#include "cqed/types.hpp"

namespace cqed::fock {

// Truncated ladder operators on occupations 0..cutoff. The commutator
// [a, a†] = 1 holds everywhere except the top Fock level, which is the
// usual truncation artifact; results are converged by raising the cutoff,
// not by patching the matrices.
struct FockOperators {
    int cutoff = 0;
    Mat a, a_dag, n;
};

FockOperators build_fock(int n_ph);

// cosh/sinh of an anti-Hermitian argument via the Hermitian
// eigendecomposition of i*alpha. cosh is Hermitian, sinh anti-Hermitian,
// and both share one eigenbasis so they commute exactly.
struct CoshSinh {
    Mat cosh_op;
    Mat sinh_op;
};

CoshSinh cosh_sinh_of(const Mat& alpha, double herm_tol = 1e-12);

// Cutoff-convergence guard: evaluates a scalar at cutoff and cutoff+step
// and reports whether the change is within tol.
struct CutoffCheck {
    double value = 0.0;   // at the larger cutoff
    double change = 0.0;  // |f(cutoff+step) - f(cutoff)|
    bool converged = false;
};

CutoffCheck check_cutoff_convergence(const std::function<double(int)>& eval,
                                     int cutoff, double tol, int step = 5);

} // namespace cqed::fock
