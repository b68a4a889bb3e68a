#include "parnode/verlinde.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "parnode/degeneration.hpp"

namespace parnode {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

std::string label_to_string(const FusionLabel& label) {
    std::string out;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(label[i]);
    }
    return out;
}

std::string make_key(long long genus, const std::vector<FusionLabel>& labels) {
    std::string key = std::to_string(genus) + ";";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) key += '|';
        key += label_to_string(labels[i]);
    }
    return key;
}

// Expand the product of two <=r-row Schur functions in GL_r via tableau
// chains: letter t contributes a horizontal strip of b_t boxes, subject to
// the lattice (ballot) condition against letter t-1. `emit` fires once per
// tableau, i.e. with the multiplicity of each constituent.
void lr_expand(const std::vector<long long>& a, const std::vector<long long>& b,
               long long r, const std::function<void(const std::vector<long long>&)>& emit) {
    std::vector<long long> shape = a;
    std::vector<long long> letters;
    for (long long v : b)
        if (v > 0) letters.push_back(v);
    std::vector<long long> prev_cum(r, 0);  // cumulative boxes of previous letter

    std::function<void(std::size_t)> place_letter = [&](std::size_t t) {
        if (t == letters.size()) {
            emit(shape);
            return;
        }
        const long long m = letters[t];
        const std::vector<long long> old_shape = shape;

        std::function<void(long long, long long)> place_row = [&](long long row,
                                                                  long long placed) {
            if (row == r) {
                if (placed != m) return;
                const std::vector<long long> saved = prev_cum;
                long long c = 0;
                for (long long i = 0; i < r; ++i) {
                    c += shape[i] - old_shape[i];
                    prev_cum[i] = c;
                }
                place_letter(t + 1);
                prev_cum = saved;
                return;
            }
            long long cap = m - placed;
            if (row > 0) cap = std::min(cap, old_shape[row - 1] - shape[row]);
            if (t > 0) {
                const long long ballot = (row == 0) ? 0 : prev_cum[row - 1];
                cap = std::min(cap, ballot - placed);
            }
            for (long long x = 0; x <= cap; ++x) {
                shape[row] += x;
                place_row(row + 1, placed + x);
                shape[row] -= x;
            }
        };
        place_row(0, 0);
    };
    place_letter(0);
}

// Fold a GL constituent into the level-k alcove through the shifted affine
// Weyl action: rho-shift, kill wall orbits (residue collisions mod h), then
// alternate descending sorts with the affine reflection that swaps the
// extremes across the spread-h wall. Returns sign 0 on walls.
std::pair<int, FusionLabel> fold_to_alcove(const std::vector<long long>& nu,
                                           long long r, long long k) {
    const long long h = r + k;
    std::vector<long long> l(r);
    for (long long i = 0; i < r; ++i) l[i] = nu[i] + (r - 1 - i);
    for (long long i = 0; i < r; ++i)
        for (long long j = i + 1; j < r; ++j)
            if ((l[i] - l[j]) % h == 0) return {0, {}};
    int sign = 1;
    for (;;) {
        for (long long i = 0; i + 1 < r; ++i)
            for (long long j = 0; j + 1 < r - i; ++j)
                if (l[j] < l[j + 1]) {
                    std::swap(l[j], l[j + 1]);
                    sign = -sign;
                }
        if (l[0] - l[r - 1] < h) break;
        const long long first = l[0], last = l[r - 1];
        l[0] = last + h;
        l[r - 1] = first - h;
        sign = -sign;
    }
    FusionLabel lambda(r);
    for (long long i = 0; i < r; ++i) lambda[i] = l[i] - (r - 1 - i);
    const long long base = lambda[r - 1];
    for (auto& v : lambda) v -= base;
    return {sign, lambda};
}

Complex ipow(Complex z, long long n) {
    Complex out = 1;
    while (n > 0) {
        if (n & 1) out *= z;
        z *= z;
        n >>= 1;
    }
    return out;
}

Complex determinant(std::vector<std::vector<Complex>> m) {
    const std::size_t n = m.size();
    Complex det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        if (std::abs(m[pivot][col]) == 0.0) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const Complex f = m[row][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return det;
}

// Schur polynomial at distinct unit-circle points via the bialternant ratio.
Complex schur_at(const FusionLabel& lambda, const std::vector<Complex>& z) {
    const std::size_t r = z.size();
    std::vector<std::vector<Complex>> num(r, std::vector<Complex>(r));
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
            num[a][b] = ipow(z[a], lambda[b] + static_cast<long long>(r - 1 - b));
    Complex den = 1;
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b) den *= z[a] - z[b];
    return determinant(std::move(num)) / den;
}

}  // namespace

void validate_label(const FusionLabel& label, long long r, long long k) {
    if (static_cast<long long>(label.size()) != r)
        fail(ErrorCode::LabelOutOfRange,
             "label length " + std::to_string(label.size()) + " != rank " +
                 std::to_string(r));
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i > 0 && label[i] > label[i - 1])
            fail(ErrorCode::LabelOutOfRange, "label must be weakly decreasing");
    }
    if (label.back() != 0)
        fail(ErrorCode::LabelOutOfRange, "label must be normalized (last entry 0)");
    if (label.front() > k || label.front() < 0)
        fail(ErrorCode::LabelOutOfRange,
             "label width " + std::to_string(label.front()) + " outside [0, " +
                 std::to_string(k) + "]");
}

std::pair<FusionLabel, Charge> mu_to_label(const MuLabel& mu, long long r, long long k) {
    validate_mu(mu, r, k);
    FusionLabel label(mu.size());
    long long total = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        label[i] = mu[i] - mu.back();
        total += mu[i];
    }
    Charge charge;
    charge.total = total;
    charge.r = r;
    charge.k = k;
    return {label, charge};
}

FusionLabel dual_label(const FusionLabel& label) {
    FusionLabel out(label.size());
    for (std::size_t i = 0; i < label.size(); ++i)
        out[i] = label.front() - label[label.size() - 1 - i];
    return out;
}

std::vector<FusionLabel> alcove_labels(long long r, long long k) {
    if (r < 1 || k < 1)
        fail(ErrorCode::LabelOutOfRange, "rank and level must be positive");
    std::vector<FusionLabel> out;
    FusionLabel current(r, 0);
    auto rec = [&](auto&& self, long long pos, long long cap) -> void {
        if (pos == r - 1) {
            out.push_back(current);  // last entry stays 0
            return;
        }
        for (long long v = cap; v >= 0; --v) {
            current[pos] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, k);
    return out;
}

FusionLabel point_to_label(const ParabolicPoint& point, long long r, long long k) {
    const auto cums = cumulative_ranks(point);
    jumps(point);  // validates weight monotonicity
    if (cums.back() != r)
        fail(ErrorCode::LabelOutOfRange,
             "point '" + point.id + "': flag blocks sum to " +
                 std::to_string(cums.back()) + ", expected rank " + std::to_string(r));
    const std::size_t l = point.steps();
    const bool full_flag =
        std::all_of(point.flag_type.begin(), point.flag_type.end(),
                    [](long long n) { return n == 1; });
    const bool single_row = (l == 1 && point.flag_type.front() == 1);
    if (!(l == 0 || full_flag || single_row))
        fail(ErrorCode::UnconvertibleWeights,
             "point '" + point.id +
                 "': only flagless, full-flag, or single-row flags convert to "
                 "insertion labels");
    FusionLabel label;
    for (std::size_t i = 0; i < point.flag_type.size(); ++i) {
        const long long value = point.weights.back() - point.weights[i];
        label.insert(label.end(), point.flag_type[i], value);
    }
    if (label.front() > k)
        fail(ErrorCode::LabelOutOfRange,
             "point '" + point.id + "': weight spread exceeds level");
    return label;
}

VerlindeEngine::VerlindeEngine(long long r, long long k) : r_(r), k_(k) {
    if (r < 1 || k < 1)
        fail(ErrorCode::InvariantViolation, "engine requires rank >= 1 and level >= 1");
    alcove_ = alcove_labels(r, k);
}

long long VerlindeEngine::fusion_coeff(const FusionLabel& a, const FusionLabel& b,
                                       const FusionLabel& c) {
    validate_label(a, r_, k_);
    validate_label(b, r_, k_);
    validate_label(c, r_, k_);
    std::vector<FusionLabel> triple{a, b, c};
    std::sort(triple.begin(), triple.end());
    const std::string key = make_key(0, triple);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = fusion_memo_.find(key);
        if (it != fusion_memo_.end()) return it->second;
    }
    const FusionLabel target = dual_label(c);
    long long count = 0;
    lr_expand(a, b, r_, [&](const std::vector<long long>& nu) {
        const auto folded = fold_to_alcove(nu, r_, k_);
        if (folded.first != 0 && folded.second == target) count += folded.first;
    });
    if (count < 0)
        throw std::logic_error("fusion multiplicity went negative (engine bug)");
    std::lock_guard<std::mutex> lock(mutex_);
    fusion_memo_.emplace(key, count);
    return count;
}

long long VerlindeEngine::dim_recursive(long long genus, std::vector<FusionLabel> labels,
                                        Strategy strategy) {
    if (genus < 0)
        fail(ErrorCode::InvariantViolation, "genus must be nonnegative");
    for (const auto& label : labels) validate_label(label, r_, k_);
    return dim_recursive_impl(genus, std::move(labels), strategy);
}

long long VerlindeEngine::dim_recursive_impl(long long genus,
                                             std::vector<FusionLabel> labels,
                                             Strategy strategy) {
    std::sort(labels.begin(), labels.end());
    const std::string key = make_key(genus, labels);
    auto& memo = (strategy == Strategy::HandleFirst) ? memo_handle_ : memo_separating_;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    long long value = 0;
    if (genus > 0) {
        if (strategy == Strategy::HandleFirst || genus == 1) {
            // cut a handle: insert a dual pair on a genus-(g-1) surface
            for (const auto& nu : alcove_) {
                auto next = labels;
                next.push_back(nu);
                next.push_back(dual_label(nu));
                value += dim_recursive_impl(genus - 1, std::move(next), strategy);
            }
        } else {
            // split off a one-handled piece along a separating curve
            for (const auto& nu : alcove_) {
                auto next = labels;
                next.push_back(dual_label(nu));
                value += dim_recursive_impl(1, {nu}, strategy) *
                         dim_recursive_impl(genus - 1, std::move(next), strategy);
            }
        }
    } else {
        const std::size_t n = labels.size();
        const FusionLabel vacuum(r_, 0);
        if (n == 0) {
            value = 1;
        } else if (n == 1) {
            value = (labels[0] == vacuum) ? 1 : 0;
        } else if (n == 2) {
            value = (labels[1] == dual_label(labels[0])) ? 1 : 0;
        } else if (n == 3) {
            value = fusion_coeff(labels[0], labels[1], labels[2]);
        } else {
            // split a three-holed sphere off the far end (strategy-dependent)
            FusionLabel a, b;
            std::vector<FusionLabel> rest;
            if (strategy == Strategy::HandleFirst) {
                a = labels[0];
                b = labels[1];
                rest.assign(labels.begin() + 2, labels.end());
            } else {
                a = labels[n - 1];
                b = labels[n - 2];
                rest.assign(labels.begin(), labels.end() - 2);
            }
            for (const auto& nu : alcove_) {
                const long long three = fusion_coeff(a, b, nu);
                if (three == 0) continue;
                auto next = rest;
                next.push_back(dual_label(nu));
                value += three * dim_recursive_impl(0, std::move(next), strategy);
            }
        }
    }

    std::lock_guard<std::mutex> lock(mutex_);
    memo.emplace(key, value);
    return value;
}

long long VerlindeEngine::dim_direct(long long genus,
                                     const std::vector<FusionLabel>& labels,
                                     double tolerance) const {
    if (genus < 0)
        fail(ErrorCode::InvariantViolation, "genus must be nonnegative");
    if (tolerance <= 0)
        fail(ErrorCode::InvariantViolation, "tolerance must be positive");
    for (const auto& label : labels) validate_label(label, r_, k_);
    const long long h = r_ + k_;
    Complex total = 0;
    std::vector<long long> m(r_);
    std::vector<Complex> z(r_);
    for (const auto& mu : alcove_) {
        long long msum = 0;
        for (long long i = 0; i < r_; ++i) {
            m[i] = mu[i] + (r_ - 1 - i);
            msum += m[i];
        }
        const double mbar = static_cast<double>(msum) / r_;
        double w = 1.0 / (r_ * std::pow(static_cast<double>(h), r_ - 1));
        for (long long a = 0; a < r_; ++a)
            for (long long b = a + 1; b < r_; ++b) {
                const double s = std::sin(kPi * static_cast<double>(m[a] - m[b]) / h);
                w *= 4.0 * s * s;
            }
        for (long long a = 0; a < r_; ++a)
            z[a] = std::polar(1.0, -2.0 * kPi * (static_cast<double>(m[a]) - mbar) / h);
        Complex contrib = std::pow(w, 1.0 - static_cast<double>(genus));
        for (const auto& label : labels) contrib *= schur_at(label, z);
        total += contrib;
    }
    const double re = total.real(), im = total.imag();
    const long long rounded = std::llround(re);
    if (std::abs(re - static_cast<double>(rounded)) > tolerance ||
        std::abs(im) > tolerance)
        fail(ErrorCode::NumericallyUnstable,
             "trigonometric sum " + std::to_string(re) + " + " + std::to_string(im) +
                 "i is not within " + std::to_string(tolerance) + " of an integer");
    return rounded;
}

void VerlindeEngine::load_cache_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;  // cold cache
    std::string line;
    bool complained = false;
    std::lock_guard<std::mutex> lock(mutex_);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto eq = line.rfind('=');
        bool ok = (eq != std::string::npos && eq > 0 && eq + 1 < line.size());
        if (ok) {
            try {
                memo_handle_[line.substr(0, eq)] = std::stoll(line.substr(eq + 1));
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok && !complained) {
            std::cerr << "note: ignoring malformed cache line in " << path << "\n";
            complained = true;
        }
    }
}

void VerlindeEngine::save_cache_file(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        std::cerr << "note: cannot write cache file " << path << "\n";
        return;
    }
    std::lock_guard<std::mutex> lock(mutex_);
    for (const auto& [key, value] : memo_handle_) out << key << "=" << value << "\n";
}

FactorizationReport factorization_report(const DegenerationSpec& spec,
                                         VerlindeEngine& engine, double tolerance,
                                         int workers) {
    if (engine.rank() != spec.r || engine.level() != spec.k)
        fail(ErrorCode::InvariantViolation,
             "engine (r, k) does not match the spec");
    const BalanceResult bal = balance_check(spec);
    if (!bal.balanced)
        fail(ErrorCode::UnbalancedSpec,
             "factorization requires a balanced spec (lhs " + bal.lhs.str() +
                 " != rhs " + bal.rhs.str() + ")");

    FactorizationReport rep;
    rep.r = spec.r;
    rep.k = spec.k;
    rep.g1 = spec.g1;
    rep.g2 = spec.g2;
    for (const auto& point : spec.points) {
        auto label = point_to_label(point, spec.r, spec.k);
        (point.component == Component::C1 ? rep.labels1 : rep.labels2)
            .push_back(std::move(label));
    }

    std::vector<FusionLabel> all = rep.labels1;
    all.insert(all.end(), rep.labels2.begin(), rep.labels2.end());
    rep.lhs = engine.dim_recursive(rep.g1 + rep.g2, all);
    rep.lhs_direct = engine.dim_direct(rep.g1 + rep.g2, all, tolerance);
    rep.oracles_agree = (rep.lhs == rep.lhs_direct);

    const auto summands = factorization_summands(spec);
    rep.rows.resize(summands.size());
    auto fill_row = [&](std::size_t i) {
        const auto& s = summands[i];
        FactorizationRow row;
        row.mu = s.mu;
        row.chi1 = s.chi1;
        row.chi2 = s.chi2;
        row.admissible = s.admissible;
        row.label = mu_to_label(s.mu, spec.r, spec.k).first;
        row.dual = dual_label(row.label);
        auto left = rep.labels1;
        left.push_back(row.label);
        auto right = rep.labels2;
        right.push_back(row.dual);
        row.dim_left = engine.dim_recursive(rep.g1, std::move(left));
        row.dim_right = engine.dim_recursive(rep.g2, std::move(right));
        row.product = row.dim_left * row.dim_right;
        rep.rows[i] = std::move(row);
    };
    const int used = std::max(1, std::min<int>(workers, static_cast<int>(summands.size())));
    if (used == 1) {
        for (std::size_t i = 0; i < summands.size(); ++i) fill_row(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < used; ++t)
            pool.emplace_back([&, t]() {
                for (std::size_t i = t; i < summands.size(); i += used) fill_row(i);
            });
        for (auto& th : pool) th.join();
    }

    rep.rhs_mu_admissible = 0;
    for (const auto& row : rep.rows)
        if (row.admissible) rep.rhs_mu_admissible += row.product;

    rep.rhs_fusion = 0;
    for (const auto& nu : engine.alcove()) {
        auto left = rep.labels1;
        left.push_back(nu);
        auto right = rep.labels2;
        right.push_back(dual_label(nu));
        rep.rhs_fusion += engine.dim_recursive(rep.g1, std::move(left)) *
                          engine.dim_recursive(rep.g2, std::move(right));
    }
    rep.equal = (rep.lhs == rep.rhs_fusion);
    rep.mu_sum_matches_fusion = (rep.rhs_mu_admissible == rep.rhs_fusion);
    return rep;
}

}  // namespace parnode
