// Acceptance gate for the degeneration engine. Each criterion prints exactly
// one [PASS]/[FAIL] line; the exit code is the number of failed criteria.
// Budgets and tolerances are pinned here, next to the checks they govern.
//
// argv[1]: path to the parnode CLI binary (used by the determinism criterion).
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "parnode/degeneration.hpp"
#include "parnode/json_io.hpp"
#include "parnode/local_model.hpp"
#include "parnode/mu_transform.hpp"
#include "parnode/parabolic.hpp"
#include "parnode/semistability.hpp"
#include "parnode/verlinde.hpp"
#include "testutil.hpp"

using namespace parnode;

namespace {

// Pinned targets.
constexpr int kGridSpecsTotal = 500;           // 25 per (r, k) cell, r<=4, k<=5
constexpr int kGluingInstances = 10000;
constexpr double kBalanceBudgetSec = 10.0;
constexpr double kFactorizationBudgetSec = 60.0;
constexpr double kCensusBudgetSec = 30.0;
constexpr double kTrigTolerance = 1e-6;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1fs", s);
    return buf;
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail_out(std::string detail) { return {false, std::move(detail)}; }
Outcome pass_out(std::string detail) { return {true, std::move(detail)}; }

// Balanced random spec with the (r, k) cell pinned, so the 500-spec grid
// covers every cell deterministically. Mirrors the rejection sampling of the
// unit-test builder but fixes rank and level.
DegenerationSpec random_spec_in_cell(std::mt19937& rng, long long r, long long k) {
    using testutil::rand_in;
    for (;;) {
        DegenerationSpec spec;
        spec.g1 = rand_in(rng, 0, 2);
        spec.g2 = rand_in(rng, 0, 2);
        spec.r = r;
        spec.k = k;
        static const long long choices[5][2] = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 2}};
        const auto& cc = choices[rng() % 5];
        spec.c1 = cc[0];
        spec.c2 = cc[1];
        spec.ell_total = (spec.c1 + spec.c2) * rand_in(rng, -2, 2);
        if (k >= 2) {
            const int npts = static_cast<int>(rng() % 4);
            for (int i = 0; i < npts; ++i)
                spec.points.push_back(
                    testutil::random_point(rng, "p" + std::to_string(i), r, k));
        }
        BigInt total = BigInt(r) * spec.ell_total;
        for (const auto& p : spec.points) {
            const auto d = jumps(p);
            const auto cums = cumulative_ranks(p);
            for (std::size_t i = 0; i < d.size(); ++i) total += BigInt(d[i]) * cums[i];
            total += BigInt(r) * p.alpha;
        }
        if (total % k != 0) continue;
        spec.chi = (total / k).convert_to<long long>();
        validate_spec(spec, /*enforce_balance=*/true);
        return spec;
    }
}

// Criterion 1: for every spec in the grid and every node label, the per-side
// balance identity holds and the label's chi split sums to chi + r exactly.
Outcome check_side_balance(std::vector<DegenerationSpec>& grid) {
    const auto start = Clock::now();
    std::mt19937 rng(7001);
    grid.clear();
    for (int i = 0; i < kGridSpecsTotal; ++i) {
        const long long r = 1 + i % 4;
        const long long k = 1 + (i / 4) % 5;
        grid.push_back(random_spec_in_cell(rng, r, k));
    }
    long long labels_checked = 0;
    for (const auto& spec : grid) {
        const Rational expected_sum = Rational(spec.chi) + spec.r;
        for (const auto& mu : enumerate_mu(spec.r, spec.k)) {
            const auto sb = verify_side_balance(spec, mu);
            if (!sb.holds)
                return fail_out("side balance violated on side " +
                                std::to_string(sb.failed_side) + " (lhs " +
                                sb.lhs.str() + ", rhs " + sb.rhs.str() + ")");
            const auto chi = chi_mu(spec, mu);
            if (chi.first + chi.second != expected_sum)
                return fail_out("chi split sums to " +
                                to_fraction_string(chi.first + chi.second) +
                                ", expected " + to_fraction_string(expected_sum));
            ++labels_checked;
        }
    }
    const double elapsed = seconds_since(start);
    const std::string timing =
        " (" + fmt_seconds(elapsed) + " < " + fmt_seconds(kBalanceBudgetSec) + ")";
    if (elapsed >= kBalanceBudgetSec)
        return fail_out("identities hold but the budget was exceeded" + timing);
    return pass_out(std::to_string(grid.size()) + " specs, " +
                    std::to_string(labels_checked) +
                    " node labels, exact chi split" + timing);
}

// Criterion 2: the component window has r+1 entries exactly when n_1 is an
// integer and r otherwise, and generic polarizations are exactly the r-count
// case (no wall meets the boundary, empty non-locally-free locus).
Outcome check_component_window(const std::vector<DegenerationSpec>& grid) {
    if (grid.empty()) return fail_out("grid was not generated (criterion 1 aborted)");
    long long integral_cells = 0;
    for (const auto& spec : grid) {
        const ComponentWindow window = chi_window(spec);
        const bool integral = is_integer(window.n1);
        integral_cells += integral ? 1 : 0;
        const std::size_t expected = static_cast<std::size_t>(spec.r + (integral ? 1 : 0));
        if (window.pairs.size() != expected)
            return fail_out("window has " + std::to_string(window.pairs.size()) +
                            " entries, expected " + std::to_string(expected));
        for (const auto& [chi1, chi2] : window.pairs)
            if (chi1 + chi2 != spec.chi + spec.r)
                return fail_out("window pair does not sum to chi + r");
        const bool generic = generic_polarization(spec) == Genericity::Generic;
        if (generic != (window.pairs.size() == static_cast<std::size_t>(spec.r)))
            return fail_out("genericity disagrees with the window count");
    }
    return pass_out("counts are r + [n1 integral] on " + std::to_string(grid.size()) +
                    " specs (" + std::to_string(integral_cells) +
                    " integral); generic <=> count r");
}

// Criterion 3: the two dimension oracles agree on the pinned grid, and the
// factorization report verdict is positive for every no-insertion spec with
// (r, k) in {(2,1), (2,2), (3,1)} and g1, g2 <= 2.
Outcome check_factorization(std::map<std::pair<long long, long long>, VerlindeEngine>& engines) {
    const auto start = Clock::now();
    auto engine_at = [&](long long r, long long k) -> VerlindeEngine& {
        return engines.try_emplace({r, k}, r, k).first->second;
    };

    long long oracle_checks = 0;
    auto crosscheck = [&](long long r, long long k, long long gmax) -> std::string {
        VerlindeEngine& engine = engine_at(r, k);
        std::vector<std::vector<FusionLabel>> label_sets;
        label_sets.push_back({});
        const auto& alcove = engine.alcove();
        for (const auto& a : alcove) label_sets.push_back({a});
        for (std::size_t i = 0; i < alcove.size(); ++i)
            for (std::size_t j = i; j < alcove.size(); ++j)
                label_sets.push_back({alcove[i], alcove[j]});
        for (long long g = 0; g <= gmax; ++g)
            for (const auto& labels : label_sets) {
                const long long rec = engine.dim_recursive(g, labels);
                const long long dir = engine.dim_direct(g, labels, kTrigTolerance);
                ++oracle_checks;
                if (rec != dir)
                    return "oracles disagree at r=" + std::to_string(r) +
                           " k=" + std::to_string(k) + " g=" + std::to_string(g) +
                           ": recursive " + std::to_string(rec) + ", direct " +
                           std::to_string(dir);
            }
        return "";
    };
    for (long long k = 1; k <= 4; ++k)
        if (auto msg = crosscheck(2, k, 3); !msg.empty()) return fail_out(msg);
    for (long long k = 1; k <= 2; ++k)
        if (auto msg = crosscheck(3, k, 2); !msg.empty()) return fail_out(msg);

    long long reports = 0;
    for (const auto& [r, k] : {std::pair<long long, long long>{2, 1}, {2, 2}, {3, 1}})
        for (long long g1 = 0; g1 <= 2; ++g1)
            for (long long g2 = 0; g2 <= 2; ++g2) {
                auto spec = testutil::make_spec(r, k, 0, 0, {}, 1, 1, g1, g2);
                const auto rep =
                    factorization_report(spec, engine_at(r, k), kTrigTolerance);
                ++reports;
                if (!rep.oracles_agree)
                    return fail_out("report oracles disagree at r=" + std::to_string(r) +
                                    " k=" + std::to_string(k));
                if (!rep.equal)
                    return fail_out("factorization fails at r=" + std::to_string(r) +
                                    " k=" + std::to_string(k) + " g1=" +
                                    std::to_string(g1) + " g2=" + std::to_string(g2) +
                                    ": lhs " + std::to_string(rep.lhs) + ", rhs " +
                                    std::to_string(rep.rhs_fusion));
            }
    const double elapsed = seconds_since(start);
    const std::string timing =
        " (" + fmt_seconds(elapsed) + " < " + fmt_seconds(kFactorizationBudgetSec) + ")";
    if (elapsed >= kFactorizationBudgetSec)
        return fail_out("identities hold but the budget was exceeded" + timing);
    return pass_out(std::to_string(oracle_checks) + " oracle pairs agree; " +
                    std::to_string(reports) + " factorization reports equal" + timing);
}

// Criterion 4: closed-form sanity values. Genus-1 sl_2 dimensions are k+1;
// at level 1 the genus-g dimension is r^g.
Outcome check_oracle_sanity(std::map<std::pair<long long, long long>, VerlindeEngine>& engines) {
    auto engine_at = [&](long long r, long long k) -> VerlindeEngine& {
        return engines.try_emplace({r, k}, r, k).first->second;
    };
    for (long long k = 1; k <= 8; ++k) {
        VerlindeEngine& engine = engine_at(2, k);
        const long long rec = engine.dim_recursive(1, {});
        const long long dir = engine.dim_direct(1, {}, kTrigTolerance);
        if (rec != k + 1 || dir != k + 1)
            return fail_out("sl2 genus-1 at k=" + std::to_string(k) + ": recursive " +
                            std::to_string(rec) + ", direct " + std::to_string(dir) +
                            ", expected " + std::to_string(k + 1));
    }
    for (long long r = 1; r <= 3; ++r) {
        VerlindeEngine& engine = engine_at(r, 1);
        long long expected = 1;
        for (long long g = 0; g <= 3; ++g) {
            const long long rec = engine.dim_recursive(g, {});
            const long long dir = engine.dim_direct(g, {}, kTrigTolerance);
            if (rec != expected || dir != expected)
                return fail_out("level-1 at r=" + std::to_string(r) +
                                " g=" + std::to_string(g) + ": recursive " +
                                std::to_string(rec) + ", direct " + std::to_string(dir) +
                                ", expected " + std::to_string(expected));
            expected *= r;
        }
    }
    return pass_out("sl2 genus-1 dims k+1 (k<=8); level-1 dims r^g (r<=3, g<=3)");
}

// Criterion 5: the slope gluing identity has residual exactly zero on random
// rational instances satisfying both additivity preconditions.
Outcome check_gluing() {
    std::mt19937 rng(8101);
    using testutil::rand_in;
    auto rand_rational = [&]() {
        return ratio(rand_in(rng, -15, 15), rand_in(rng, 1, 8));
    };
    for (int i = 0; i < kGluingInstances; ++i) {
        GluingInstance g;
        g.r = rand_in(rng, 1, 5);
        g.r1 = rand_in(rng, 1, 5);
        g.r2 = rand_in(rng, 1, 5);
        g.c1 = rand_in(rng, 1, 4);
        g.c2 = rand_in(rng, 1, 4);
        g.chi_e1_twisted = rand_rational();
        g.chi_e2 = rand_rational();
        g.chi_e = g.chi_e1_twisted + g.chi_e2;
        g.chi_f1 = rand_rational();
        g.chi_f2 = rand_rational();
        g.chi_f = g.chi_f1 + g.chi_f2;
        const Rational residual = verify_gluing_identity(g);
        if (residual != 0)
            return fail_out("instance " + std::to_string(i) + " has residual " +
                            to_fraction_string(residual));
    }
    return pass_out("residual 0 on " + std::to_string(kGluingInstances) +
                    "/" + std::to_string(kGluingInstances) +
                    " random rational instances");
}

// Independent recount used by criterion 6: 2x2 matrices over F_2 packed as
// 4-bit masks, entry (i, j) at bit 2i + j, pairs enumerated in reversed order.
int f2_entry(int m, int i, int j) { return (m >> (2 * i + j)) & 1; }

bool f2_products_vanish(int x, int y) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const int xy =
                (f2_entry(x, i, 0) & f2_entry(y, 0, j)) ^
                (f2_entry(x, i, 1) & f2_entry(y, 1, j));
            const int yx =
                (f2_entry(y, i, 0) & f2_entry(x, 0, j)) ^
                (f2_entry(y, i, 1) & f2_entry(x, 1, j));
            if (xy || yx) return false;
        }
    return true;
}

int f2_rank(int m) {
    if (m == 0) return 0;
    const int det = (f2_entry(m, 0, 0) & f2_entry(m, 1, 1)) ^
                    (f2_entry(m, 0, 1) & f2_entry(m, 1, 0));
    return det ? 2 : 1;
}

int f2_transpose(int m) {
    const int b01 = f2_entry(m, 0, 1), b10 = f2_entry(m, 1, 0);
    return (m & 0b1001) | (b10 << 1) | (b01 << 2);
}

FqMatrix f2_matrix(int m) {
    return FqMatrix{2, {f2_entry(m, 0, 0), f2_entry(m, 0, 1), f2_entry(m, 1, 0),
                        f2_entry(m, 1, 1)}};
}

// Criterion 6: census oracles. n=1 totals are 2q-1; the n=2, q=2 census
// matches a self-contained reversed-order recount; membership and strata are
// transpose-symmetric.
Outcome check_census() {
    const auto start = Clock::now();
    for (long long q : {2, 3, 4, 5}) {
        const CensusResult res = census(1, q);
        if (res.total != 2 * q - 1)
            return fail_out("n=1 q=" + std::to_string(q) + " total " +
                            std::to_string(res.total) + ", expected " +
                            std::to_string(2 * q - 1));
        const std::vector<long long> expected{1, 2 * q - 2};
        if (res.by_stratum != expected)
            return fail_out("n=1 q=" + std::to_string(q) + " strata mismatch");
    }

    const CensusResult lib = census(2, 2);
    long long recount[5] = {0, 0, 0, 0, 0};
    for (int x = 15; x >= 0; --x)
        for (int y = 15; y >= 0; --y)
            if (f2_products_vanish(x, y)) ++recount[f2_rank(x) + f2_rank(y)];
    if (recount[3] != 0 || recount[4] != 0)
        return fail_out("recount places pairs above stratum n");
    for (int s = 0; s <= 2; ++s)
        if (recount[s] != lib.by_stratum[static_cast<std::size_t>(s)])
            return fail_out("stratum " + std::to_string(s) + ": census " +
                            std::to_string(lib.by_stratum[static_cast<std::size_t>(s)]) +
                            ", reversed-order recount " + std::to_string(recount[s]));

    const GaloisField field(2);
    long long members = 0;
    for (int x = 0; x < 16; ++x)
        for (int y = 0; y < 16; ++y) {
            const bool mine = f2_products_vanish(x, y);
            const FqMatrix xm = f2_matrix(x), ym = f2_matrix(y);
            if (in_z(xm, ym, field) != mine)
                return fail_out("membership disagrees with the library at (" +
                                std::to_string(x) + ", " + std::to_string(y) + ")");
            if (!mine) continue;
            ++members;
            const FqMatrix xt = f2_matrix(f2_transpose(x)), yt = f2_matrix(f2_transpose(y));
            if (!in_z(yt, xt, field))
                return fail_out("transpose pair left the locus at (" +
                                std::to_string(x) + ", " + std::to_string(y) + ")");
            if (stratum(xm, ym, field) != stratum(yt, xt, field))
                return fail_out("transpose changed the stratum at (" +
                                std::to_string(x) + ", " + std::to_string(y) + ")");
        }
    if (members != lib.total)
        return fail_out("membership sweep saw " + std::to_string(members) +
                        " pairs, census total " + std::to_string(lib.total));
    const double elapsed = seconds_since(start);
    const std::string timing =
        " (" + fmt_seconds(elapsed) + " < " + fmt_seconds(kCensusBudgetSec) + ")";
    if (elapsed >= kCensusBudgetSec)
        return fail_out("counts match but the budget was exceeded" + timing);
    return pass_out("n=1 totals 2q-1 (q<=5); n=2/q=2 matches reversed-order recount (" +
                    std::to_string(lib.total) + " pairs); transpose symmetric" + timing);
}

// Criterion 7: two CLI runs of `factorize` on the same spec produce
// byte-identical output.
Outcome check_determinism(const std::string& binary) {
    if (binary.empty())
        return fail_out("no CLI binary path supplied (argv[1])");
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "parnode-acceptance";
    fs::create_directories(dir);
    const auto spec = testutil::make_spec(2, 2, 0, 0, {}, 1, 1, 2, 2);
    const fs::path spec_path = dir / "determinism-spec.json";
    std::ofstream(spec_path) << serialize_spec(spec).dump(2) << "\n";

    auto run_once = [&](const fs::path& out_path) -> int {
        const std::string cmd = "\"" + binary + "\" factorize --input \"" +
                                spec_path.string() + "\" > \"" + out_path.string() +
                                "\" 2> /dev/null";
        const int rc = std::system(cmd.c_str());
        return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    };
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const fs::path out1 = dir / "run1.json", out2 = dir / "run2.json";
    const int code1 = run_once(out1);
    const int code2 = run_once(out2);
    if (code1 != 0 || code2 != 0)
        return fail_out("CLI exited with " + std::to_string(code1) + " and " +
                        std::to_string(code2) + ", expected 0");
    const std::string bytes1 = slurp(out1), bytes2 = slurp(out2);
    if (bytes1.empty()) return fail_out("first run produced no output");
    if (bytes1 != bytes2)
        return fail_out("outputs differ (" + std::to_string(bytes1.size()) + " vs " +
                        std::to_string(bytes2.size()) + " bytes)");
    return pass_out("two factorize runs byte-identical (" +
                    std::to_string(bytes1.size()) + " bytes)");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string binary = argc > 1 ? argv[1] : "";
    std::vector<DegenerationSpec> grid;
    std::map<std::pair<long long, long long>, VerlindeEngine> engines;

    struct Criterion {
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria{
        {"side-balance identity", [&] { return check_side_balance(grid); }},
        {"component window", [&] { return check_component_window(grid); }},
        {"factorization", [&] { return check_factorization(engines); }},
        {"oracle sanity", [&] { return check_oracle_sanity(engines); }},
        {"gluing identity", [&] { return check_gluing(); }},
        {"local-model census", [&] { return check_census(); }},
        {"determinism", [&] { return check_determinism(binary); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].check();
        } catch (const std::exception& e) {
            outcome = fail_out(std::string("unexpected error: ") + e.what());
        }
        if (!outcome.pass) ++failures;
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
                  << criteria[i].name << ": " << outcome.detail << "\n";
    }
    std::cout << "acceptance: " << (criteria.size() - failures) << "/"
              << criteria.size() << " criteria passed\n";
    return failures;
}
