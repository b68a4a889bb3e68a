#include "parnode/parabolic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace parnode {

const char* component_name(Component c) {
    switch (c) {
        case Component::C1: return "1";
        case Component::C2: return "2";
        case Component::Node1: return "node1";
        case Component::Node2: return "node2";
    }
    return "?";
}

bool is_interior(Component c) {
    return c == Component::C1 || c == Component::C2;
}

std::vector<const ParabolicPoint*> DegenerationSpec::interior_points(Component side) const {
    std::vector<const ParabolicPoint*> out;
    for (const auto& p : points)
        if (p.component == side) out.push_back(&p);
    return out;
}

const ParabolicPoint* DegenerationSpec::find_point(const std::string& id) const {
    for (const auto& p : points)
        if (p.id == id) return &p;
    return nullptr;
}

std::vector<long long> jumps(const ParabolicPoint& point) {
    if (point.weights.size() != point.flag_type.size())
        fail(ErrorCode::NonIncreasingWeights,
             "point '" + point.id + "': weights/flag_type length mismatch");
    std::vector<long long> d;
    for (std::size_t i = 0; i + 1 < point.weights.size(); ++i) {
        long long step = point.weights[i + 1] - point.weights[i];
        if (step <= 0)
            fail(ErrorCode::NonIncreasingWeights,
                 "point '" + point.id + "': weights must be strictly increasing");
        d.push_back(step);
    }
    return d;
}

std::vector<long long> cumulative_ranks(const ParabolicPoint& point) {
    if (point.flag_type.empty())
        fail(ErrorCode::NonPositiveMultiplicity,
             "point '" + point.id + "': empty flag_type");
    std::vector<long long> r;
    long long acc = 0;
    for (long long n : point.flag_type) {
        if (n <= 0)
            fail(ErrorCode::NonPositiveMultiplicity,
                 "point '" + point.id + "': block multiplicities must be positive");
        acc += n;
        r.push_back(acc);
    }
    return r;
}

Rational rank_of(long long r1, long long r2, long long c1, long long c2) {
    if (c1 <= 0 || c2 <= 0)
        fail(ErrorCode::ZeroPolarization, "polarization pair must be positive");
    return ratio(c1 * r1 + c2 * r2, c1 + c2);
}

HilbertPoly hilbert_poly(long long r1, long long r2, long long chi, long long c1,
                         long long c2) {
    if (c1 <= 0 || c2 <= 0)
        fail(ErrorCode::ZeroPolarization, "polarization pair must be positive");
    HilbertPoly h;
    h.leading = BigInt(c1) * r1 + BigInt(c2) * r2;
    h.constant = chi;
    return h;
}

void validate_point(const ParabolicPoint& point, long long r, long long k,
                    std::size_t index) {
    const std::string path = "points[" + std::to_string(index) + "]";
    if (point.id.empty())
        fail(ErrorCode::InvariantViolation, path + ".id: empty identifier");
    if (point.flag_type.empty())
        fail(ErrorCode::InvariantViolation, path + ".flag_type: empty");
    long long total = 0;
    for (long long n : point.flag_type) {
        if (n <= 0)
            fail(ErrorCode::InvariantViolation,
                 path + ".flag_type: blocks must be positive");
        total += n;
    }
    if (total != r)
        fail(ErrorCode::InvariantViolation,
             path + ".flag_type: blocks must sum to rank " + std::to_string(r));
    if (point.weights.size() != point.flag_type.size())
        fail(ErrorCode::InvariantViolation,
             path + ".weights: expected " + std::to_string(point.flag_type.size()) +
                 " entries");
    for (std::size_t i = 0; i + 1 < point.weights.size(); ++i)
        if (point.weights[i] >= point.weights[i + 1])
            fail(ErrorCode::InvariantViolation,
                 path + ".weights: must be strictly increasing");
    const long long lo = point.weights.front(), hi = point.weights.back();
    if (is_interior(point.component)) {
        if (lo <= 0 || hi >= k)
            fail(ErrorCode::InvariantViolation,
                 path + ".weights: interior weights must lie strictly inside (0, " +
                     std::to_string(k) + ")");
        if (point.alpha < 0 || point.alpha >= k - hi + lo)
            fail(ErrorCode::InvariantViolation,
                 path + ".alpha: must lie in [0, k - a_max + a_min)");
    } else {
        if (lo < 0 || hi > k)
            fail(ErrorCode::InvariantViolation,
                 path + ".weights: node weights must lie in [0, " + std::to_string(k) + "]");
        if (point.alpha < 0 || point.alpha > k - hi + lo)
            fail(ErrorCode::InvariantViolation,
                 path + ".alpha: must lie in [0, k - a_max + a_min]");
    }
}

void validate_spec(DegenerationSpec& spec, bool enforce_balance) {
    if (spec.g1 < 0 || spec.g2 < 0)
        fail(ErrorCode::InvariantViolation, "g1/g2: genera must be nonnegative");
    if (spec.r < 1) fail(ErrorCode::InvariantViolation, "r: rank must be positive");
    if (spec.k < 1) fail(ErrorCode::InvariantViolation, "k: level must be positive");
    if (spec.c1 < 1 || spec.c2 < 1)
        fail(ErrorCode::InvariantViolation, "c1/c2: polarization must be positive");
    // Only the ratio c1 : c2 enters ranks, slopes and the level split.
    const long long g = std::gcd(spec.c1, spec.c2);
    spec.c1 /= g;
    spec.c2 /= g;
    if (spec.ell_total % (spec.c1 + spec.c2) != 0)
        fail(ErrorCode::InvariantViolation,
             "ell_total: proportional split across components is not integral");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < spec.points.size(); ++i) {
        const auto& p = spec.points[i];
        if (!is_interior(p.component))
            fail(ErrorCode::InvariantViolation,
                 "points[" + std::to_string(i) + "].component: must be an interior component");
        validate_point(p, spec.r, spec.k, i);
        if (!ids.insert(p.id).second)
            fail(ErrorCode::InvariantViolation,
                 "points[" + std::to_string(i) + "].id: duplicate identifier '" + p.id + "'");
    }
    if (enforce_balance) {
        BalanceResult b = balance_check(spec);
        if (!b.balanced)
            fail(ErrorCode::InvariantViolation,
                 "balance: lhs " + b.lhs.str() + " != rhs " + b.rhs.str());
    }
}

std::vector<long long> induced_multiplicities(const SheafNumerics& sheaf,
                                              const ParabolicPoint& point) {
    const long long fiber = sheaf.fiber_rank(point.component);
    const std::size_t l = point.steps();
    std::vector<long long> dims;  // flag intersection dims, length l
    if (l > 0) {
        auto it = sheaf.flag_dims.find(point.id);
        if (it == sheaf.flag_dims.end())
            fail(ErrorCode::MissingFlagData,
                 "no flag_dims for flagged point '" + point.id + "'");
        dims = it->second;
        if (dims.size() != l)
            fail(ErrorCode::InconsistentFlagDims,
                 "point '" + point.id + "': expected " + std::to_string(l) +
                     " flag dims, got " + std::to_string(dims.size()));
    }
    const auto cums = cumulative_ranks(point);
    long long prev = 0;
    std::vector<long long> mult;
    for (std::size_t i = 0; i < l; ++i) {
        if (dims[i] < prev)
            fail(ErrorCode::InconsistentFlagDims,
                 "point '" + point.id + "': flag dims must be nondecreasing");
        if (dims[i] > std::min(fiber, cums[i]))
            fail(ErrorCode::InconsistentFlagDims,
                 "point '" + point.id + "': flag dim exceeds min(fiber rank, ambient step)");
        mult.push_back(dims[i] - prev);
        prev = dims[i];
    }
    if (fiber < prev)
        fail(ErrorCode::InconsistentFlagDims,
             "point '" + point.id + "': fiber rank below last flag dim");
    mult.push_back(fiber - prev);
    return mult;
}

Rational par_chi(const SheafNumerics& sheaf, const DegenerationSpec& spec) {
    BigInt weighted = 0;  // Σ_x Σ_i ñ_i(x)·a_i(x)
    for (const auto& point : spec.points) {
        const auto mult = induced_multiplicities(sheaf, point);
        for (std::size_t i = 0; i < mult.size(); ++i)
            weighted += BigInt(mult[i]) * point.weights[i];
    }
    return Rational(sheaf.chi) + Rational(weighted, BigInt(spec.k));
}

Rational m_correction(const SheafNumerics& sheaf, const DegenerationSpec& spec) {
    const Rational rf = rank_of(sheaf.r1, sheaf.r2, spec.c1, spec.c2);
    BigInt side1 = 0, side2 = 0;  // Σ (a_{l+1} + alpha) per component
    for (const auto& point : spec.points) {
        BigInt term = BigInt(point.weights.back()) + point.alpha;
        (point.component == Component::C1 ? side1 : side2) += term;
    }
    const Rational k(spec.k);
    return (rf - sheaf.r1) / k * Rational(side1) + (rf - sheaf.r2) / k * Rational(side2);
}

Rational par_chi_m(const SheafNumerics& sheaf, const DegenerationSpec& spec) {
    return par_chi(sheaf, spec) + m_correction(sheaf, spec);
}

Rational par_mu_m(const SheafNumerics& sheaf, const DegenerationSpec& spec) {
    const Rational rf = rank_of(sheaf.r1, sheaf.r2, spec.c1, spec.c2);
    if (rf == 0)
        fail(ErrorCode::ZeroRank, "slope undefined for rank pair (0, 0)");
    return par_chi_m(sheaf, spec) / rf;
}

BalanceResult balance_check(const DegenerationSpec& spec) {
    BigInt lhs = 0;
    for (const auto& point : spec.points) {
        const auto d = jumps(point);
        const auto cums = cumulative_ranks(point);
        for (std::size_t i = 0; i < d.size(); ++i) lhs += BigInt(d[i]) * cums[i];
        lhs += BigInt(spec.r) * point.alpha;
    }
    lhs += BigInt(spec.r) * spec.ell_total;
    BalanceResult out;
    out.lhs = lhs;
    out.rhs = BigInt(spec.k) * spec.chi;
    out.balanced = (out.lhs == out.rhs);
    return out;
}

std::pair<long long, long long> split_levels(long long c1, long long c2,
                                             long long ell_total) {
    if (c1 <= 0 || c2 <= 0)
        fail(ErrorCode::ZeroPolarization, "polarization pair must be positive");
    const long long csum = c1 + c2;
    if ((c1 * ell_total) % csum != 0 || (c2 * ell_total) % csum != 0)
        fail(ErrorCode::NonIntegralSplit,
             "ell_total " + std::to_string(ell_total) +
                 " does not split integrally over (c1, c2) = (" + std::to_string(c1) +
                 ", " + std::to_string(c2) + ")");
    return {c1 * ell_total / csum, c2 * ell_total / csum};
}

std::pair<long long, long long> split_levels(const DegenerationSpec& spec) {
    return split_levels(spec.c1, spec.c2, spec.ell_total);
}

ThetaMultidegree theta_exponents(const DegenerationSpec& spec) {
    BalanceResult b = balance_check(spec);
    if (!b.balanced)
        fail(ErrorCode::UnbalancedSpec,
             "theta datum requires a balanced spec (lhs " + b.lhs.str() + " != rhs " +
                 b.rhs.str() + ")");
    ThetaMultidegree theta;
    theta.k = spec.k;
    auto levels = split_levels(spec);
    theta.ell1 = levels.first;
    theta.ell2 = levels.second;
    for (const auto& point : spec.points) {
        ThetaMultidegree::PointExponents e;
        e.id = point.id;
        e.alpha = point.alpha;
        e.jumps = jumps(point);
        theta.points.push_back(std::move(e));
    }
    return theta;
}

SheafNumerics ambient_numerics(const DegenerationSpec& spec) {
    SheafNumerics e;
    e.r1 = e.r2 = spec.r;
    e.chi = spec.chi;
    for (const auto& point : spec.points) {
        if (point.steps() == 0) continue;
        auto cums = cumulative_ranks(point);
        cums.pop_back();  // dims against the proper flag steps only
        e.flag_dims[point.id] = cums;
    }
    return e;
}

}  // namespace parnode
