#include "parnode/degeneration.hpp"

#include <algorithm>

namespace parnode {

std::pair<Rational, Rational> component_levels(const DegenerationSpec& spec) {
    const BalanceResult b = balance_check(spec);
    if (!b.balanced)
        fail(ErrorCode::UnbalancedSpec,
             "component levels require a balanced spec (lhs " + b.lhs.str() +
                 " != rhs " + b.rhs.str() + ")");
    const auto levels = split_levels(spec);
    BigInt side1 = BigInt(spec.r) * levels.first;
    BigInt side2 = BigInt(spec.r) * levels.second;
    for (const auto& point : spec.points) {
        const auto d = jumps(point);
        const auto cums = cumulative_ranks(point);
        BigInt acc = BigInt(spec.r) * point.alpha;
        for (std::size_t i = 0; i < d.size(); ++i) acc += BigInt(d[i]) * cums[i];
        (point.component == Component::C1 ? side1 : side2) += acc;
    }
    const BigInt k(spec.k);
    return {Rational(side1, k), Rational(side2, k)};
}

ComponentWindow chi_window(const DegenerationSpec& spec) {
    ComponentWindow out;
    const auto levels = component_levels(spec);
    out.n1 = levels.first;
    out.n2 = levels.second;
    const BigInt lo = rational_ceil(out.n1);
    const BigInt hi = rational_floor(out.n1 + spec.r);
    for (BigInt chi1 = lo; chi1 <= hi; ++chi1) {
        const BigInt chi2 = BigInt(spec.chi) + spec.r - chi1;
        out.pairs.emplace_back(static_cast<long long>(chi1),
                               static_cast<long long>(chi2));
    }
    return out;
}

Genericity generic_polarization(const DegenerationSpec& spec) {
    const auto levels = component_levels(spec);
    return (!is_integer(levels.first) && !is_integer(levels.second))
               ? Genericity::Generic
               : Genericity::NonGeneric;
}

LocalType local_type(long long r1, long long r2, long long fiber_dim) {
    if (r1 < 0 || r2 < 0)
        fail(ErrorCode::InfeasibleFiberDim, "componentwise ranks must be nonnegative");
    if (fiber_dim < std::max(r1, r2) || fiber_dim > r1 + r2)
        fail(ErrorCode::InfeasibleFiberDim,
             "node fiber dimension " + std::to_string(fiber_dim) +
                 " outside [max(r1, r2), r1 + r2] = [" +
                 std::to_string(std::max(r1, r2)) + ", " + std::to_string(r1 + r2) + "]");
    LocalType t;
    t.a = r1 + r2 - fiber_dim;
    t.b = fiber_dim - r2;
    t.c = fiber_dim - r1;
    return t;
}

bool superadditivity_check(const LocalType& total, const LocalType& sub,
                           const LocalType& quotient) {
    if (total.rank1() != sub.rank1() + quotient.rank1() ||
        total.rank2() != sub.rank2() + quotient.rank2())
        fail(ErrorCode::PreconditionViolated,
             "componentwise ranks must be additive across the sequence");
    return total.a >= sub.a + quotient.a;
}

LocalType gps_rank_correspondence(long long rank_q_x1, long long r) {
    if (r < 0 || rank_q_x1 < 0 || rank_q_x1 > r)
        fail(ErrorCode::RankOutOfRange,
             "pairing rank " + std::to_string(rank_q_x1) + " outside [0, " +
                 std::to_string(r) + "]");
    return local_type(r, r, 2 * r - rank_q_x1);
}

}  // namespace parnode
