// Shared builders for the test suites: compact constructors for points,
// specs and sheaf numerics, plus a rejection sampler producing random
// balanced specs for the property-based suites.
#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "parnode/parabolic.hpp"

namespace testutil {

using namespace parnode;

inline ParabolicPoint make_point(std::string id, Component side,
                                 std::vector<long long> flag_type,
                                 std::vector<long long> weights, long long alpha = 0) {
    ParabolicPoint p;
    p.id = std::move(id);
    p.component = side;
    p.flag_type = std::move(flag_type);
    p.weights = std::move(weights);
    p.alpha = alpha;
    return p;
}

inline DegenerationSpec make_spec(long long r, long long k, long long chi,
                                  long long ell_total,
                                  std::vector<ParabolicPoint> points = {},
                                  long long c1 = 1, long long c2 = 1, long long g1 = 0,
                                  long long g2 = 0) {
    DegenerationSpec spec;
    spec.g1 = g1;
    spec.g2 = g2;
    spec.c1 = c1;
    spec.c2 = c2;
    spec.r = r;
    spec.k = k;
    spec.chi = chi;
    spec.ell_total = ell_total;
    spec.points = std::move(points);
    return spec;
}

inline SheafNumerics make_numerics(
    long long r1, long long r2, long long chi,
    std::map<std::string, std::vector<long long>> flag_dims = {}) {
    SheafNumerics s;
    s.r1 = r1;
    s.r2 = r2;
    s.chi = chi;
    s.flag_dims = std::move(flag_dims);
    return s;
}

inline long long rand_in(std::mt19937& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

// Distinct increasing values sampled from [lo, hi].
inline std::vector<long long> rand_increasing(std::mt19937& rng, long long lo,
                                              long long hi, long long count) {
    std::vector<long long> pool;
    for (long long v = lo; v <= hi; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(count));
    std::sort(pool.begin(), pool.end());
    return pool;
}

// One random interior point with a valid flag for rank r at level k >= 2.
inline ParabolicPoint random_point(std::mt19937& rng, std::string id, long long r,
                                   long long k) {
    ParabolicPoint p;
    p.id = std::move(id);
    p.component = (rng() % 2 == 0) ? Component::C1 : Component::C2;
    const long long blocks = rand_in(rng, 1, std::min(r, k - 1));
    // composition of r into `blocks` positive parts via distinct cut points
    std::vector<long long> cuts =
        blocks > 1 ? rand_increasing(rng, 1, r - 1, blocks - 1) : std::vector<long long>{};
    cuts.push_back(r);
    long long prev = 0;
    for (long long c : cuts) {
        p.flag_type.push_back(c - prev);
        prev = c;
    }
    p.weights = rand_increasing(rng, 1, k - 1, blocks);
    const long long alpha_bound = k - p.weights.back() + p.weights.front();  // exclusive
    p.alpha = rand_in(rng, 0, alpha_bound - 1);
    return p;
}

// Random balanced spec: rejection-samples the point/level data until the
// balance identity admits an integer chi. Always validates.
inline DegenerationSpec random_balanced_spec(std::mt19937& rng, long long rmax = 4,
                                             long long kmax = 5, int max_points = 3) {
    for (;;) {
        DegenerationSpec spec;
        spec.g1 = rand_in(rng, 0, 2);
        spec.g2 = rand_in(rng, 0, 2);
        spec.r = rand_in(rng, 1, rmax);
        spec.k = rand_in(rng, 1, kmax);
        static const long long choices[5][2] = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 2}};
        const auto& cc = choices[rng() % 5];
        spec.c1 = cc[0];
        spec.c2 = cc[1];
        spec.ell_total = (spec.c1 + spec.c2) * rand_in(rng, -2, 2);
        if (spec.k >= 2) {
            const int npts = static_cast<int>(rng() % (max_points + 1));
            for (int i = 0; i < npts; ++i)
                spec.points.push_back(
                    random_point(rng, "p" + std::to_string(i), spec.r, spec.k));
        }
        BigInt total = BigInt(spec.r) * spec.ell_total;
        for (const auto& p : spec.points) {
            const auto d = jumps(p);
            const auto cums = cumulative_ranks(p);
            for (std::size_t i = 0; i < d.size(); ++i) total += BigInt(d[i]) * cums[i];
            total += BigInt(spec.r) * p.alpha;
        }
        if (total % spec.k != 0) continue;  // no integer chi balances this draw
        spec.chi = (total / spec.k).convert_to<long long>();
        validate_spec(spec, /*enforce_balance=*/true);
        return spec;
    }
}

// Random subobject numerics consistent with the spec's points: componentwise
// ranks in [0, r] (not both zero) and feasible nondecreasing flag dims.
inline SheafNumerics random_subobject(std::mt19937& rng, const DegenerationSpec& spec) {
    SheafNumerics s;
    do {
        s.r1 = rand_in(rng, 0, spec.r);
        s.r2 = rand_in(rng, 0, spec.r);
    } while (s.r1 == 0 && s.r2 == 0);
    s.chi = rand_in(rng, -5, 5);
    for (const auto& p : spec.points) {
        if (p.steps() == 0) continue;
        const long long fiber = s.fiber_rank(p.component);
        const auto cums = cumulative_ranks(p);
        std::vector<long long> dims;
        long long prev = 0;
        for (std::size_t i = 0; i + 1 < cums.size(); ++i) {
            // hi >= prev: cums is increasing, so the bound never shrinks
            const long long hi = std::min(fiber, cums[i]);
            prev = rand_in(rng, prev, hi);
            dims.push_back(prev);
        }
        s.flag_dims[p.id] = std::move(dims);
    }
    return s;
}

}  // namespace testutil
