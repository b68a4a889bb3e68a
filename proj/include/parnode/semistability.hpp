// Semistability margins for subsheaf profiles against an ambient sheaf, both
// in the parabolic setting and in the generalized (torsion-quotient) setting
// on the normalization, plus the exact residual check of the two-component
// slope gluing identity.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parnode/parabolic.hpp"

namespace parnode {

enum class StabilityClass { Stable, StrictlySemistable, Unstable };

const char* stability_class_name(StabilityClass c);

// margin > 0 => the profile respects the strict inequality (Stable);
// margin = 0 => equality (StrictlySemistable); margin < 0 => Unstable.
// The margin is the ambient slope minus the profile slope, rescaled by the
// profile rank so it stays a polynomial-in-the-data rational (no divisions
// beyond the ambient rank).
struct Verdict {
    StabilityClass cls = StabilityClass::Stable;
    Rational margin;
};

// One candidate destabilizer: componentwise ranks, Euler characteristic and
// flag intersection dims; dim_q_image is only meaningful for the generalized
// profiles on the normalization (dimension of the image in the node quotient).
struct SubobjectProfile {
    std::string label;
    SheafNumerics numerics;
    std::optional<long long> dim_q_image;
};

struct CertifyOutcome {
    struct Entry {
        std::string label;
        Verdict verdict;
    };
    std::vector<Entry> entries;
    std::size_t min_index = 0;  // entry with the minimum margin
};

// Parabolic margin of `sub` against `ambient`:
//   par_chi_m(ambient)/rank(ambient) · rank(sub) - par_chi_m(sub).
// Throws RankOverflow when sub exceeds ambient componentwise, ZeroRank when
// either rank pair is (0,0), MissingFlagData/InconsistentFlagDims per par_chi.
Verdict check_parabolic(const SheafNumerics& sub, const SheafNumerics& ambient,
                        const DegenerationSpec& spec);

// Generalized margin on the normalization: Euler characteristics are lowered
// by the respective node-quotient dimensions before comparing slopes:
//   (par_chi_m(E) - dim_q)/rank(E) · rank(E') - (par_chi_m(E') - dim_q_image).
// Throws QImageOverflow when dim_q_image is negative, exceeds dim_q, or
// exceeds the profile's node fiber dimensions r1 + r2.
Verdict check_gps(const SheafNumerics& sub, long long dim_q_image,
                  const SheafNumerics& ambient, long long dim_q,
                  const DegenerationSpec& spec);

// Minimum-margin certificate over a finite profile list. GPS mode is selected
// by passing the ambient node-quotient dimension; then every profile must
// carry dim_q_image. Throws InvariantViolation on an empty list or on
// mode/profile mismatches.
CertifyOutcome certify(const std::vector<SubobjectProfile>& profiles,
                       const SheafNumerics& ambient, const DegenerationSpec& spec,
                       std::optional<long long> ambient_dim_q = std::nullopt);

// Quotient-adjusted slope (deg - dim_q)/rank; throws ZeroRank on rank 0.
Rational mu_g(long long deg, long long dim_q, long long rank);

// Window for the componentwise Euler characteristics of a generalized
// semistable sheaf with node-quotient dims (dim_q_e1, dim_q_e2) on the two
// pullback summands: chi(E_j) ranges over [n_j + r - dim_q_other, n_j + dim_q_j].
struct GpsChiBounds {
    Rational lo1, hi1;  // closed interval for chi(E1)
    Rational lo2, hi2;  // closed interval for chi(E2)
};
GpsChiBounds gps_chi_bounds(const DegenerationSpec& spec, long long dim_q_e1,
                            long long dim_q_e2);

// One instance of the slope gluing identity: corrected Euler characteristics
// of the ambient sheaf E on the nodal curve, its restrictions E1(-node) and
// E2, a subsheaf F and its parts F1, F2, together with the rank data.
struct GluingInstance {
    long long r = 1;    // ambient rank
    long long r1 = 1;   // rank of F on the first component
    long long r2 = 1;   // rank of F on the second component
    long long c1 = 1, c2 = 1;
    Rational chi_e;           // par_chi_m of E
    Rational chi_e1_twisted;  // par_chi_m of E1(-node)
    Rational chi_e2;          // par_chi_m of E2
    Rational chi_f;           // par_chi_m of F
    Rational chi_f1;          // par_chi_m of F1
    Rational chi_f2;          // par_chi_m of F2
};

// Exact residual (lhs - rhs) of the gluing identity; zero for every instance
// satisfying the additivity preconditions chi_f = chi_f1 + chi_f2 and
// chi_e = chi_e1_twisted + chi_e2. Throws PreconditionViolated on violated
// additivity or non-positive ranks/polarization.
Rational verify_gluing_identity(const GluingInstance& instance);

}  // namespace parnode
