#pragma once

#include <vector>

#include "cqed/types.hpp"

namespace cqed::spin {

// One total-spin sector of N spins-1/2. Degeneracies are kept in log
// domain: Omega(S, 100) already overflows a double.
struct SpinSector {
    HalfInt S;
    int N = 0;
    int dim = 0;            // 2S+1
    double log_degeneracy = 0.0;
};

// Collective angular-momentum matrices in the S_z eigenbasis, ordered
// m = S, S-1, ..., -S (descending). Every module adopts this ordering.
struct SpinOperators {
    HalfInt S;
    Mat sx, sy, sz, sp, sm;
};

SpinOperators build_spin_operators(HalfInt S);

// ln Omega(S,N) with Omega(S,N) = N!(2S+1) / ((N/2-S)! (N/2+S+1)!),
// evaluated via lgamma. Rejects S > N/2 and 2S/N parity mismatch.
double log_degeneracy(HalfInt S, int N);

// All sectors s0..N/2 ascending, s0 = 0 (even N) or 1/2 (odd N).
std::vector<SpinSector> sector_list(int N);

} // namespace cqed::spin
