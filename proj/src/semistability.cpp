#include "parnode/semistability.hpp"

#include "parnode/degeneration.hpp"

namespace parnode {

const char* stability_class_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::Stable: return "stable";
        case StabilityClass::StrictlySemistable: return "strictly-semistable";
        case StabilityClass::Unstable: return "unstable";
    }
    return "?";
}

namespace {

Verdict classify(const Rational& margin) {
    Verdict v;
    v.margin = margin;
    if (margin > 0)
        v.cls = StabilityClass::Stable;
    else if (margin == 0)
        v.cls = StabilityClass::StrictlySemistable;
    else
        v.cls = StabilityClass::Unstable;
    return v;
}

void require_subobject_ranks(const SheafNumerics& sub, const SheafNumerics& ambient) {
    if (sub.r1 < 0 || sub.r2 < 0 || sub.r1 > ambient.r1 || sub.r2 > ambient.r2)
        fail(ErrorCode::RankOverflow,
             "subobject rank pair (" + std::to_string(sub.r1) + ", " +
                 std::to_string(sub.r2) + ") must fit inside ambient (" +
                 std::to_string(ambient.r1) + ", " + std::to_string(ambient.r2) + ")");
    if (sub.r1 == 0 && sub.r2 == 0)
        fail(ErrorCode::ZeroRank, "rank pair (0, 0) carries no slope");
    if (ambient.r1 == 0 && ambient.r2 == 0)
        fail(ErrorCode::ZeroRank, "ambient rank pair (0, 0) carries no slope");
}

}  // namespace

Verdict check_parabolic(const SheafNumerics& sub, const SheafNumerics& ambient,
                        const DegenerationSpec& spec) {
    require_subobject_ranks(sub, ambient);
    const Rational r_amb = rank_of(ambient.r1, ambient.r2, spec.c1, spec.c2);
    const Rational r_sub = rank_of(sub.r1, sub.r2, spec.c1, spec.c2);
    const Rational margin =
        par_chi_m(ambient, spec) / r_amb * r_sub - par_chi_m(sub, spec);
    return classify(margin);
}

Verdict check_gps(const SheafNumerics& sub, long long dim_q_image,
                  const SheafNumerics& ambient, long long dim_q,
                  const DegenerationSpec& spec) {
    require_subobject_ranks(sub, ambient);
    if (dim_q_image < 0 || dim_q_image > dim_q || dim_q_image > sub.r1 + sub.r2)
        fail(ErrorCode::QImageOverflow,
             "node-quotient image dimension " + std::to_string(dim_q_image) +
                 " out of range (quotient dim " + std::to_string(dim_q) +
                 ", profile fiber dims " + std::to_string(sub.r1 + sub.r2) + ")");
    const Rational r_amb = rank_of(ambient.r1, ambient.r2, spec.c1, spec.c2);
    const Rational r_sub = rank_of(sub.r1, sub.r2, spec.c1, spec.c2);
    const Rational margin = (par_chi_m(ambient, spec) - dim_q) / r_amb * r_sub -
                            (par_chi_m(sub, spec) - dim_q_image);
    return classify(margin);
}

CertifyOutcome certify(const std::vector<SubobjectProfile>& profiles,
                       const SheafNumerics& ambient, const DegenerationSpec& spec,
                       std::optional<long long> ambient_dim_q) {
    if (profiles.empty())
        fail(ErrorCode::InvariantViolation, "subobjects: empty profile list");
    CertifyOutcome out;
    for (const auto& profile : profiles) {
        Verdict v;
        if (ambient_dim_q.has_value()) {
            if (!profile.dim_q_image.has_value())
                fail(ErrorCode::InvariantViolation,
                     "subobjects: profile '" + profile.label +
                         "' lacks dim_q_image in generalized mode");
            v = check_gps(profile.numerics, *profile.dim_q_image, ambient,
                          *ambient_dim_q, spec);
        } else {
            if (profile.dim_q_image.has_value())
                fail(ErrorCode::InvariantViolation,
                     "subobjects: profile '" + profile.label +
                         "' carries dim_q_image but ambient has no quotient");
            v = check_parabolic(profile.numerics, ambient, spec);
        }
        out.entries.push_back({profile.label, v});
    }
    out.min_index = 0;
    for (std::size_t i = 1; i < out.entries.size(); ++i)
        if (out.entries[i].verdict.margin < out.entries[out.min_index].verdict.margin)
            out.min_index = i;
    return out;
}

Rational mu_g(long long deg, long long dim_q, long long rank) {
    if (rank == 0) fail(ErrorCode::ZeroRank, "slope undefined at rank 0");
    return ratio(deg - dim_q, rank);
}

GpsChiBounds gps_chi_bounds(const DegenerationSpec& spec, long long dim_q_e1,
                            long long dim_q_e2) {
    BalanceResult b = balance_check(spec);
    if (!b.balanced)
        fail(ErrorCode::UnbalancedSpec,
             "chi bounds require a balanced spec (lhs " + b.lhs.str() + " != rhs " +
                 b.rhs.str() + ")");
    if (dim_q_e1 < 0 || dim_q_e1 > spec.r || dim_q_e2 < 0 || dim_q_e2 > spec.r)
        fail(ErrorCode::QImageOverflow,
             "node-quotient dims must lie in [0, r]");
    const auto levels = component_levels(spec);
    const Rational& n1 = levels.first;
    const Rational& n2 = levels.second;
    GpsChiBounds out;
    out.lo1 = n1 + spec.r - dim_q_e2;
    out.hi1 = n1 + dim_q_e1;
    out.lo2 = n2 + spec.r - dim_q_e1;
    out.hi2 = n2 + dim_q_e2;
    return out;
}

Rational verify_gluing_identity(const GluingInstance& in) {
    if (in.r < 1 || in.r1 < 1 || in.r2 < 1)
        fail(ErrorCode::PreconditionViolated,
             "ranks r, r1, r2 must be positive (slopes divide by them)");
    if (in.c1 < 1 || in.c2 < 1)
        fail(ErrorCode::PreconditionViolated, "polarization pair must be positive");
    if (in.chi_f != in.chi_f1 + in.chi_f2)
        fail(ErrorCode::PreconditionViolated,
             "chi_f must equal chi_f1 + chi_f2 (normalization additivity)");
    if (in.chi_e != in.chi_e1_twisted + in.chi_e2)
        fail(ErrorCode::PreconditionViolated,
             "chi_e must equal chi_e1_twisted + chi_e2 (normalization additivity)");

    const Rational rf = rank_of(in.r1, in.r2, in.c1, in.c2);
    const Rational a1 = ratio(in.c1, in.c1 + in.c2);
    const Rational r(in.r);

    const Rational lhs = in.chi_e / r - in.chi_f / rf;
    // Untwisting the first restriction costs one rank: chi(E1) = chi_e1_twisted + r.
    const Rational chi_e1 = in.chi_e1_twisted + in.r;
    const Rational rhs = Rational(in.r1) / rf * (in.chi_e1_twisted / r - in.chi_f1 / in.r1) +
                         Rational(in.r2) / rf * (in.chi_e2 / r - in.chi_f2 / in.r2) +
                         Rational(in.r1 - in.r2) * (a1 * in.chi_e + in.r - chi_e1) / (rf * r);
    return lhs - rhs;
}

}  // namespace parnode
