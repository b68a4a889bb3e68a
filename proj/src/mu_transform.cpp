#include "parnode/mu_transform.hpp"

#include <algorithm>
#include <numeric>

#include "parnode/degeneration.hpp"

namespace parnode {

void validate_mu(const MuLabel& mu, long long r, long long k) {
    if (static_cast<long long>(mu.size()) != r)
        fail(ErrorCode::LabelOutOfRange,
             "label length " + std::to_string(mu.size()) + " != rank " + std::to_string(r));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] < 0 || mu[i] > k - 1)
            fail(ErrorCode::LabelOutOfRange,
                 "label entry " + std::to_string(mu[i]) + " outside [0, " +
                     std::to_string(k - 1) + "]");
        if (i > 0 && mu[i] > mu[i - 1])
            fail(ErrorCode::LabelOutOfRange, "label must be weakly decreasing");
    }
}

std::vector<MuLabel> enumerate_mu(long long r, long long k) {
    if (r < 1 || k < 1)
        fail(ErrorCode::LabelOutOfRange, "rank and level must be positive");
    std::vector<MuLabel> out;
    MuLabel current(r, 0);
    // depth-first, each entry descending from the previous one's value
    auto rec = [&](auto&& self, long long pos, long long cap) -> void {
        if (pos == r) {
            out.push_back(current);
            return;
        }
        for (long long v = cap; v >= 0; --v) {
            current[pos] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, k - 1);
    return out;
}

NodeParabolic node_parabolic(const MuLabel& mu, long long r, long long k) {
    validate_mu(mu, r, k);
    // Constancy blocks of mu: jump positions p (1-based) where mu_p > mu_{p+1},
    // with jump sizes d.
    std::vector<long long> positions, d;
    for (long long p = 1; p < r; ++p)
        if (mu[p - 1] > mu[p]) {
            positions.push_back(p);
            d.push_back(mu[p - 1] - mu[p]);
        }
    const std::size_t l = positions.size();
    const long long lo = mu[r - 1], hi = mu[0];

    auto build = [&](bool mirrored) {
        ParabolicPoint x;
        x.id = mirrored ? "x2" : "x1";
        x.component = mirrored ? Component::Node2 : Component::Node1;
        // cumulative ranks: positions (mirrored: r - reversed positions), then r
        std::vector<long long> cums;
        if (!mirrored) {
            cums = positions;
        } else {
            for (std::size_t i = 0; i < l; ++i) cums.push_back(r - positions[l - 1 - i]);
        }
        cums.push_back(r);
        long long prev = 0;
        for (long long c : cums) {
            x.flag_type.push_back(c - prev);
            prev = c;
        }
        // weights: partial sums of the (mirrored: reversed) jumps starting at mu_r
        long long w = lo;
        x.weights.push_back(w);
        for (std::size_t i = 0; i < l; ++i) {
            w += mirrored ? d[l - 1 - i] : d[i];
            x.weights.push_back(w);
        }
        x.alpha = mirrored ? k - hi : lo;
        return x;
    };

    NodeParabolic out;
    out.x1 = build(false);
    out.x2 = build(true);
    return out;
}

namespace {

// Interior-style exponent sum of one point: Σ_i d_i·r_i + r·alpha.
BigInt point_exponents(const ParabolicPoint& point, long long r) {
    const auto d = jumps(point);
    const auto cums = cumulative_ranks(point);
    BigInt acc = BigInt(r) * point.alpha;
    for (std::size_t i = 0; i < d.size(); ++i) acc += BigInt(d[i]) * cums[i];
    return acc;
}

}  // namespace

std::pair<Rational, Rational> chi_mu(const DegenerationSpec& spec, const MuLabel& mu) {
    validate_mu(mu, spec.r, spec.k);
    const auto levels = component_levels(spec);
    BigInt total = 0;
    for (long long m : mu) total += m;
    const Rational share(total, BigInt(spec.k));
    return {levels.first + share, levels.second + spec.r - share};
}

SideBalanceResult verify_side_balance(const DegenerationSpec& spec, const MuLabel& mu) {
    const auto node = node_parabolic(mu, spec.r, spec.k);
    const auto ell = split_levels(spec);
    const auto chis = chi_mu(spec, mu);
    for (int side = 1; side <= 2; ++side) {
        const Component comp = (side == 1) ? Component::C1 : Component::C2;
        BigInt lhs = BigInt(spec.r) * (side == 1 ? ell.first : ell.second);
        for (const auto& point : spec.points)
            if (point.component == comp) lhs += point_exponents(point, spec.r);
        lhs += point_exponents(side == 1 ? node.x1 : node.x2, spec.r);
        const Rational rhs_q = Rational(spec.k) * (side == 1 ? chis.first : chis.second);
        // k·chi_j is integral by construction; keep the comparison exact anyway.
        if (Rational(lhs) != rhs_q) {
            SideBalanceResult bad;
            bad.holds = false;
            bad.failed_side = side;
            bad.lhs = lhs;
            bad.rhs = numerator(rhs_q);  // exact when rhs is integral
            if (!is_integer(rhs_q)) bad.rhs = rational_floor(rhs_q);
            return bad;
        }
    }
    SideBalanceResult ok;
    ok.lhs = ok.rhs = 0;
    return ok;
}

std::vector<FactorSummand> factorization_summands(const DegenerationSpec& spec) {
    std::vector<FactorSummand> out;
    for (const auto& mu : enumerate_mu(spec.r, spec.k)) {
        FactorSummand s;
        s.mu = mu;
        const auto chis = chi_mu(spec, mu);
        s.chi1 = chis.first;
        s.chi2 = chis.second;
        s.admissible = is_integer(s.chi1) && is_integer(s.chi2);
        auto node = node_parabolic(mu, spec.r, spec.k);
        s.left_point = std::move(node.x1);
        s.right_point = std::move(node.x2);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace parnode
