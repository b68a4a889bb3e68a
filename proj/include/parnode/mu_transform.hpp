// The node label transform: a weakly decreasing label mu in [0, k-1]^r turns
// the node into a pair of parabolic points (one per branch), splits the Euler
// characteristic across the components, and enumerates the summands of the
// component-count factorization.
#pragma once

#include <utility>
#include <vector>

#include "parnode/parabolic.hpp"

namespace parnode {

using MuLabel = std::vector<long long>;

// Throws LabelOutOfRange unless mu is weakly decreasing with entries in
// [0, k-1] and length r.
void validate_mu(const MuLabel& mu, long long r, long long k);

// All admissible labels for (r, k), lexicographically descending from
// (k-1, ..., k-1) to (0, ..., 0); count = C(k-1+r, r).
std::vector<MuLabel> enumerate_mu(long long r, long long k);

// The two node points cut out by mu. Both carry the flag of mu's constancy
// blocks — mirrored on the second branch — with weights running from mu_r up
// to mu_1 by the side-specific jump order, and twists alpha(x1) = mu_r,
// alpha(x2) = k - mu_1.
struct NodeParabolic {
    ParabolicPoint x1;  // Component::Node1
    ParabolicPoint x2;  // Component::Node2
};
NodeParabolic node_parabolic(const MuLabel& mu, long long r, long long k);

// Componentwise Euler characteristics attached to mu:
//   chi_1 = n_1 + |mu|/k,   chi_2 = n_2 + r - |mu|/k.
std::pair<Rational, Rational> chi_mu(const DegenerationSpec& spec, const MuLabel& mu);

// Independent re-derivation of the side balance identity: on each component,
// interior exponents + node-point exponents + r·ell_j must equal k·chi_j.
struct SideBalanceResult {
    bool holds = true;
    int failed_side = 0;  // 1 or 2 when !holds
    BigInt lhs = 0, rhs = 0;
};
SideBalanceResult verify_side_balance(const DegenerationSpec& spec, const MuLabel& mu);

// One summand of the component-count factorization: the label, the split
// Euler characteristics, integrality (only integral splits index actual
// moduli), and the two node points for the single-curve problems.
struct FactorSummand {
    MuLabel mu;
    Rational chi1, chi2;
    bool admissible = false;
    ParabolicPoint left_point, right_point;
};

// All summands in enumerate_mu order.
std::vector<FactorSummand> factorization_summands(const DegenerationSpec& spec);

}  // namespace parnode
