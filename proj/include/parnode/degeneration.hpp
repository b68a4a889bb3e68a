// Component-level bookkeeping of the degeneration: the per-component levels
// n_j, the window of componentwise Euler characteristics, genericity of the
// polarization, and the local types of the torsion-free sheaves at the node.
#pragma once

#include <utility>
#include <vector>

#include "parnode/parabolic.hpp"

namespace parnode {

// Per-component levels (n_1, n_2): the balance identity splits k·chi across
// the two sides; n_j collects the side-j interior exponents plus r·ell_j,
// divided by k. Requires a balanced spec (UnbalancedSpec); then n_1 + n_2 = chi.
std::pair<Rational, Rational> component_levels(const DegenerationSpec& spec);

// Window of admissible componentwise Euler characteristics: all integer pairs
// (chi1, chi2) with n_j <= chi_j <= n_j + r and chi1 + chi2 = chi + r,
// boundary included. Requires a balanced spec (UnbalancedSpec).
struct ComponentWindow {
    Rational n1, n2;
    std::vector<std::pair<long long, long long>> pairs;
};
ComponentWindow chi_window(const DegenerationSpec& spec);

// Generic <=> neither n_j is an integer (then no strictly semistable wall
// meets the boundary and the non-locally-free locus of the limit is empty).
enum class Genericity { Generic, NonGeneric };
Genericity generic_polarization(const DegenerationSpec& spec);

// Local type (a, b, c) of a torsion-free sheaf at the node: a copies of the
// full local ring, b of the branch-1 structure sheaf, c of branch-2, with
// componentwise ranks (a+b, a+c) and node fiber dimension a + b + c.
struct LocalType {
    long long a = 0, b = 0, c = 0;

    long long rank1() const { return a + b; }
    long long rank2() const { return a + c; }
    long long fiber_dim() const { return a + b + c; }
};

// Local type from componentwise ranks and the node fiber dimension; feasible
// iff max(r1, r2) <= fiber_dim <= r1 + r2 (InfeasibleFiberDim otherwise).
LocalType local_type(long long r1, long long r2, long long fiber_dim);

// Superadditivity of the locally-free part count in a short exact sequence
// 0 -> sub -> total -> quotient -> 0: checks a(total) >= a(sub) + a(quotient).
// Requires componentwise rank additivity (PreconditionViolated otherwise).
bool superadditivity_check(const LocalType& total, const LocalType& sub,
                           const LocalType& quotient);

// Local type of a rank-r limit determined by the rank of the node-quotient
// pairing on the first branch: a = rank_q_x1, fiber dimension 2r - a.
// Throws RankOutOfRange unless 0 <= rank_q_x1 <= r.
LocalType gps_rank_correspondence(long long rank_q_x1, long long r);

}  // namespace parnode
