// Exact fusion-dimension engine for the reduced rank-r level-k problem, with
// two independent oracles:
//   * dim_recursive — integer recursion on pair-of-pants decompositions with
//     exact three-point coefficients (tableau expansion + affine folding),
//   * dim_direct   — the closed trigonometric sum, rounded under a pinned
//     tolerance (the only floating point in the repository).
// factorization_report ties the node-label transform to these oracles.
#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "parnode/mu_transform.hpp"
#include "parnode/parabolic.hpp"

namespace parnode {

// Weakly decreasing, lambda_r = 0, lambda_1 <= k.
using FusionLabel = std::vector<long long>;

void validate_label(const FusionLabel& label, long long r, long long k);

// Total box count of a node label with its ambient (r, k) context; the
// residue of `total` mod k decides integrality of the split chi's.
struct Charge {
    long long total = 0;
    long long r = 1;
    long long k = 1;
};

// Node label -> normalized fusion label (subtract the last entry) + charge.
std::pair<FusionLabel, Charge> mu_to_label(const MuLabel& mu, long long r, long long k);

// Dual (charge-conjugate) label: lambda*_i = lambda_1 - lambda_{r+1-i}.
FusionLabel dual_label(const FusionLabel& label);

// All normalized labels at level k: count C(k+r-1, r-1), lexicographically
// descending. Unlike the mu box, the alcove includes the boundary
// lambda_1 = k.
std::vector<FusionLabel> alcove_labels(long long r, long long k);

// Dictionary from a parabolic point to an insertion label: the multiset
// {(a_last - a_i) with multiplicity n_i}, read off in descending order.
// Only flagless points, full flags, and two-block flags with n_1 = 1 convert
// unambiguously; anything else throws UnconvertibleWeights.
FusionLabel point_to_label(const ParabolicPoint& point, long long r, long long k);

struct DimQuery {
    long long genus = 0;
    long long r = 1;
    long long k = 1;
    std::vector<FusionLabel> labels;
};

// Decomposition order used by the exact recursion; both must agree (tested).
enum class Strategy { HandleFirst, SeparatingFirst };

class VerlindeEngine {
public:
    VerlindeEngine(long long r, long long k);

    long long rank() const { return r_; }
    long long level() const { return k_; }
    const std::vector<FusionLabel>& alcove() const { return alcove_; }

    // Three-point genus-zero dimension N(a, b, c); totally symmetric.
    long long fusion_coeff(const FusionLabel& a, const FusionLabel& b,
                           const FusionLabel& c);

    // Exact integer dimension by recursive decomposition.
    long long dim_recursive(long long genus, std::vector<FusionLabel> labels,
                            Strategy strategy = Strategy::HandleFirst);

    // Trigonometric oracle; throws NumericallyUnstable when the sum is
    // further than `tolerance` from an integer (real or imaginary part).
    long long dim_direct(long long genus, const std::vector<FusionLabel>& labels,
                         double tolerance = 1e-6) const;

    // Memo persistence (HandleFirst memo only). Loading tolerates missing or
    // malformed files (cold cache); saving rewrites the file sorted.
    void load_cache_file(const std::string& path);
    void save_cache_file(const std::string& path) const;

private:
    long long dim_recursive_impl(long long genus, std::vector<FusionLabel> labels,
                                 Strategy strategy);

    long long r_, k_;
    std::vector<FusionLabel> alcove_;
    std::map<std::string, long long> fusion_memo_;
    std::map<std::string, long long> memo_handle_, memo_separating_;
    mutable std::mutex mutex_;
};

// Per-label row of the factorization table. dim_left/dim_right are the
// single-curve dimensions with the label (resp. its dual) inserted at the
// node point; `product` is their plain product, counted into the admissible
// total only when the split chi's are integral.
struct FactorizationRow {
    MuLabel mu;
    Rational chi1, chi2;
    bool admissible = false;
    FusionLabel label, dual;
    long long dim_left = 0, dim_right = 0;
    long long product = 0;
};

// Cross-oracle factorization check. The verdict `equal` compares the smooth
// genus-(g1+g2) dimension against the fusion-complete right-hand side (sum
// over the full alcove); the mu-indexed table is reported alongside, and
// mu_sum_matches_fusion flags whether its admissible total already agrees
// (the mu box misses boundary labels and repeats labels in distinct charge
// sectors, so the two totals differ in general — that gap is surfaced here,
// not hidden).
struct FactorizationReport {
    long long r = 1, k = 1;
    long long g1 = 0, g2 = 0;
    std::vector<FusionLabel> labels1, labels2;  // converted interior insertions
    long long lhs = 0;         // exact recursion, genus g1+g2
    long long lhs_direct = 0;  // trig oracle on the same query
    bool oracles_agree = false;
    std::vector<FactorizationRow> rows;
    long long rhs_mu_admissible = 0;
    long long rhs_fusion = 0;
    bool equal = false;
    bool mu_sum_matches_fusion = false;
};

// Requires a balanced spec (UnbalancedSpec); interior points must convert
// (UnconvertibleWeights). `workers` >= 1 parallelizes the row computation.
FactorizationReport factorization_report(const DegenerationSpec& spec,
                                         VerlindeEngine& engine,
                                         double tolerance = 1e-6,
                                         int workers = 1);

}  // namespace parnode
