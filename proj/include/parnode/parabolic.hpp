// Core data model: quasi-parabolic points on a two-component nodal curve,
// degeneration specs, sheaf numerics, and the exact Euler-characteristic /
// slope bookkeeping (including the polarization-weighted m-correction and the
// balance identity that pins the component-level splitting).
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parnode/errors.hpp"
#include "parnode/rational.hpp"

namespace parnode {

// Which piece of the curve a marked point lives on. Interior points sit on
// one of the two smooth components; node points are the two preimages of the
// node on the normalization and only arise from the node transform.
enum class Component { C1, C2, Node1, Node2 };

const char* component_name(Component c);
bool is_interior(Component c);

// One marked point with a quasi-parabolic flag:
//   flag_type = block multiplicities (n_1, ..., n_{l+1}), sum = r,
//   weights   = strictly increasing integers (a_1, ..., a_{l+1}),
//   alpha     = the free twist exponent attached to the point.
// Interior points need 0 < a_1, a_{l+1} < k and 0 <= alpha < k - a_{l+1} + a_1;
// node points relax the weight bounds to the closed window [0, k].
struct ParabolicPoint {
    std::string id;
    Component component = Component::C1;
    std::vector<long long> flag_type;
    std::vector<long long> weights;
    long long alpha = 0;

    // Number of flag steps l (= jumps count); flag_type has l+1 blocks.
    std::size_t steps() const { return flag_type.empty() ? 0 : flag_type.size() - 1; }
};

// Global numerical data of a one-parameter degeneration problem:
// two component genera, a coprime polarization pair, rank, polarization
// degree k, total Euler characteristic and the total twisting level ell_total
// which splits across components proportionally to (c1, c2).
struct DegenerationSpec {
    long long g1 = 0, g2 = 0;
    long long c1 = 1, c2 = 1;
    long long r = 1;
    long long k = 1;
    long long chi = 0;
    long long ell_total = 0;
    std::vector<ParabolicPoint> points;

    std::vector<const ParabolicPoint*> interior_points(Component side) const;
    const ParabolicPoint* find_point(const std::string& id) const;
};

// Numerics of a (sub)sheaf relative to a spec: componentwise generic ranks, an
// integer Euler characteristic, and for every flagged point the sequence
//   flag_dims[i] = dim( F_x / (F_x ∩ G_i) ),  i = 1..l,
// where G_i is the flag step of the ambient fiber with codimension r_i(x).
// Differencing these recovers the induced block multiplicities at x.
struct SheafNumerics {
    long long r1 = 0, r2 = 0;
    long long chi = 0;
    std::map<std::string, std::vector<long long>> flag_dims;

    long long fiber_rank(Component side) const {
        return (side == Component::C1 || side == Component::Node1) ? r1 : r2;
    }
};

// Verdict of the balance identity (*): lhs = sum over interior points of
// (jump · cumulative-rank) plus r·(sum alpha) plus r·ell_total, rhs = k·chi.
struct BalanceResult {
    bool balanced = false;
    BigInt lhs = 0, rhs = 0;
};

// Exponent bookkeeping of the determinantal theta datum: level k, the pair of
// component twisting levels, and per point the (alpha, jump vector) exponents.
struct ThetaMultidegree {
    long long k = 0;
    long long ell1 = 0, ell2 = 0;
    struct PointExponents {
        std::string id;
        long long alpha = 0;
        std::vector<long long> jumps;
    };
    std::vector<PointExponents> points;
};

// --- flag combinatorics -----------------------------------------------------

// Weight jumps d_i = a_{i+1} - a_i (strictly positive); throws
// NonIncreasingWeights when the weight vector is not strictly increasing or
// disagrees in length with flag_type.
std::vector<long long> jumps(const ParabolicPoint& point);

// Partial sums r_i = n_1 + ... + n_i for i = 1..l+1 (last entry = full rank);
// throws NonPositiveMultiplicity on empty or non-positive blocks.
std::vector<long long> cumulative_ranks(const ParabolicPoint& point);

// Polarization-weighted rank (c1·r1 + c2·r2)/(c1 + c2); throws
// ZeroPolarization unless c1, c2 >= 1.
Rational rank_of(long long r1, long long r2, long long c1, long long c2);

// Leading coefficient and constant term of the polarized Hilbert polynomial
// m ↦ (c1·r1 + c2·r2)·m + chi.
struct HilbertPoly {
    BigInt leading = 0;
    BigInt constant = 0;
};
HilbertPoly hilbert_poly(long long r1, long long r2, long long chi, long long c1,
                         long long c2);

// Point validation shared by spec loading and direct construction. `index`
// only decorates error messages ("points[3].weights").
void validate_point(const ParabolicPoint& point, long long r, long long k,
                    std::size_t index);

// Structural validation and normalization: positivity, point invariants,
// unique ids, integral level split. A common factor of (c1, c2) is divided
// out in place — the slope calculus only sees the ratio. Balance is checked
// only when `enforce_balance` is set (the verdict-valued path calls
// balance_check itself). Throws InvariantViolation with a field path.
void validate_spec(DegenerationSpec& spec, bool enforce_balance);

// Induced block multiplicities of `sheaf` at `point`: differences of
// flag_dims padded with 0 in front and the fiber rank behind. Throws
// MissingFlagData / InconsistentFlagDims.
std::vector<long long> induced_multiplicities(const SheafNumerics& sheaf,
                                              const ParabolicPoint& point);

// Parabolic Euler characteristic: chi(F) + (1/k)·Σ_x Σ_i ñ_i(x)·a_i(x).
Rational par_chi(const SheafNumerics& sheaf, const DegenerationSpec& spec);

// Polarization correction: Σ_{j=1,2} (r(F) - r_j)/k · Σ_{x ∈ I_j} (a_{l+1}(x) + alpha_x).
Rational m_correction(const SheafNumerics& sheaf, const DegenerationSpec& spec);

// par_chi + m_correction, and its slope (throws ZeroRank on rank (0,0)).
Rational par_chi_m(const SheafNumerics& sheaf, const DegenerationSpec& spec);
Rational par_mu_m(const SheafNumerics& sheaf, const DegenerationSpec& spec);

// The balance identity (*). Exact; never throws on structurally valid specs.
BalanceResult balance_check(const DegenerationSpec& spec);

// Component twisting levels (ell1, ell2) = (c1, c2)/(c1+c2) · ell_total;
// throws NonIntegralSplit when the proportional split leaves Z.
std::pair<long long, long long> split_levels(long long c1, long long c2,
                                             long long ell_total);
std::pair<long long, long long> split_levels(const DegenerationSpec& spec);

// Exponents of the theta datum; requires a balanced spec (UnbalancedSpec).
ThetaMultidegree theta_exponents(const DegenerationSpec& spec);

// Numerics of the full ambient sheaf: rank pair (r, r), chi = spec.chi, and
// tautological flag_dims = cumulative ranks at every flagged point.
SheafNumerics ambient_numerics(const DegenerationSpec& spec);

}  // namespace parnode
