#include "parnode/local_model.hpp"

#include <algorithm>
#include <thread>

#include "parnode/rational.hpp"

namespace parnode {

namespace {

// Supported prime powers with p, e and the reduction rule x^e = red (low
// coefficients first) from a fixed irreducible polynomial.
struct FieldTemplate {
    long long q;
    int p, e;
    int red[4];
};

const FieldTemplate kFields[] = {
    {2, 2, 1, {0, 0, 0, 0}},   {3, 3, 1, {0, 0, 0, 0}},
    {4, 2, 2, {1, 1, 0, 0}},   // x^2 = x + 1
    {5, 5, 1, {0, 0, 0, 0}},   {7, 7, 1, {0, 0, 0, 0}},
    {8, 2, 3, {1, 1, 0, 0}},   // x^3 = x + 1
    {9, 3, 2, {2, 0, 0, 0}},   // x^2 = 2
    {11, 11, 1, {0, 0, 0, 0}}, {13, 13, 1, {0, 0, 0, 0}},
    {16, 2, 4, {1, 1, 0, 0}},  // x^4 = x + 1
};

const FieldTemplate* find_template(long long q) {
    for (const auto& f : kFields)
        if (f.q == q) return &f;
    return nullptr;
}

std::vector<int> digits(long long value, int p, int e) {
    std::vector<int> out(e, 0);
    for (int i = 0; i < e; ++i) {
        out[i] = static_cast<int>(value % p);
        value /= p;
    }
    return out;
}

long long from_digits(const std::vector<int>& d, int p, int e) {
    long long value = 0;
    for (int i = e - 1; i >= 0; --i) value = value * p + d[i];
    return value;
}

}  // namespace

GaloisField::GaloisField(long long q) : q_(q) {
    const FieldTemplate* tmpl = find_template(q);
    if (!tmpl)
        fail(ErrorCode::InvariantViolation,
             "field size " + std::to_string(q) + " is not a supported prime power <= 16");
    p_ = tmpl->p;
    e_ = tmpl->e;
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (long long a = 0; a < q_; ++a) {
        const auto da = digits(a, p_, e_);
        for (long long b = 0; b < q_; ++b) {
            const auto db = digits(b, p_, e_);
            std::vector<int> sum(e_, 0);
            for (int i = 0; i < e_; ++i) sum[i] = (da[i] + db[i]) % p_;
            add_[a * q_ + b] = static_cast<int>(from_digits(sum, p_, e_));
            // polynomial product, then reduce degrees >= e via the rule
            std::vector<int> prod(2 * e_ - 1, 0);
            for (int i = 0; i < e_; ++i)
                for (int j = 0; j < e_; ++j)
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            for (int d = 2 * e_ - 2; d >= e_; --d) {
                const int carry = prod[d];
                if (carry == 0) continue;
                prod[d] = 0;
                for (int i = 0; i < e_; ++i)
                    prod[d - e_ + i] = (prod[d - e_ + i] + carry * tmpl->red[i]) % p_;
            }
            prod.resize(e_);
            mul_[a * q_ + b] = static_cast<int>(from_digits(prod, p_, e_));
        }
        std::vector<int> negd(e_, 0);
        for (int i = 0; i < e_; ++i) negd[i] = (p_ - da[i]) % p_;
        neg_[a] = static_cast<int>(from_digits(negd, p_, e_));
    }
    for (long long a = 1; a < q_; ++a)
        for (long long b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = static_cast<int>(b);
                break;
            }
}

int GaloisField::inv(int a) const {
    if (a == 0) fail(ErrorCode::InvariantViolation, "0 has no inverse");
    return inv_[a];
}

long long rank_fq(const FqMatrix& m, const GaloisField& field) {
    FqMatrix a = m;
    const long long n = a.n;
    long long rank = 0;
    for (long long col = 0; col < n && rank < n; ++col) {
        long long pivot = -1;
        for (long long row = rank; row < n; ++row)
            if (a.entries[row * n + col] != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) continue;
        for (long long j = 0; j < n; ++j)
            std::swap(a.entries[pivot * n + j], a.entries[rank * n + j]);
        const int scale = field.inv(a.entries[rank * n + col]);
        for (long long j = 0; j < n; ++j)
            a.entries[rank * n + j] = field.mul(a.entries[rank * n + j], scale);
        for (long long row = 0; row < n; ++row) {
            if (row == rank) continue;
            const int f = a.entries[row * n + col];
            if (f == 0) continue;
            for (long long j = 0; j < n; ++j)
                a.entries[row * n + j] = field.add(
                    a.entries[row * n + j],
                    field.mul(field.neg(f), a.entries[rank * n + j]));
        }
        ++rank;
    }
    return rank;
}

namespace {

void require_shape(const FqMatrix& x, const FqMatrix& y, const GaloisField& field) {
    if (x.n < 1 || x.n != y.n)
        fail(ErrorCode::InvariantViolation, "matrix pair must share a positive size");
    const long long n = x.n;
    if (static_cast<long long>(x.entries.size()) != n * n ||
        static_cast<long long>(y.entries.size()) != n * n)
        fail(ErrorCode::InvariantViolation, "matrix entries must be n*n");
    for (int v : x.entries)
        if (v < 0 || v >= field.size())
            fail(ErrorCode::InvariantViolation, "matrix entry outside field range");
    for (int v : y.entries)
        if (v < 0 || v >= field.size())
            fail(ErrorCode::InvariantViolation, "matrix entry outside field range");
}

bool product_is_zero(const FqMatrix& a, const FqMatrix& b, const GaloisField& field) {
    const long long n = a.n;
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            int acc = 0;
            for (long long t = 0; t < n; ++t)
                acc = field.add(acc, field.mul(a.at(i, t), b.at(t, j)));
            if (acc != 0) return false;
        }
    return true;
}

}  // namespace

bool in_z(const FqMatrix& x, const FqMatrix& y, const GaloisField& field) {
    require_shape(x, y, field);
    return product_is_zero(x, y, field) && product_is_zero(y, x, field);
}

long long stratum(const FqMatrix& x, const FqMatrix& y, const GaloisField& field) {
    if (!in_z(x, y, field))
        fail(ErrorCode::NotInZ, "pair violates XY = YX = 0");
    return rank_fq(x, field) + rank_fq(y, field);
}

CensusResult census(long long n, long long q, int workers) {
    if (n < 1) fail(ErrorCode::InvariantViolation, "matrix size must be positive");
    const GaloisField field(q);  // validates q
    // exact guard: q^(2n^2) <= 2^24
    BigInt pairs = 1;
    for (long long i = 0; i < 2 * n * n; ++i) pairs *= q;
    if (pairs > (BigInt(1) << 24))
        fail(ErrorCode::TooLarge,
             "census space q^(2n^2) = " + pairs.str() + " exceeds 2^24");

    long long matrices = 1;
    for (long long i = 0; i < n * n; ++i) matrices *= q;

    auto decode = [&](long long index) {
        FqMatrix m;
        m.n = n;
        m.entries.resize(n * n);
        for (long long i = 0; i < n * n; ++i) {
            m.entries[i] = static_cast<int>(index % q);
            index /= q;
        }
        return m;
    };

    const int used = std::max(1, std::min<int>(workers, 64));
    std::vector<std::vector<long long>> partial(used, std::vector<long long>(n + 1, 0));
    auto scan = [&](int worker) {
        auto& counts = partial[worker];
        for (long long xi = worker; xi < matrices; xi += used) {
            const FqMatrix x = decode(xi);
            const long long rx = rank_fq(x, field);
            for (long long yi = 0; yi < matrices; ++yi) {
                const FqMatrix y = decode(yi);
                if (!product_is_zero(x, y, field)) continue;
                if (!product_is_zero(y, x, field)) continue;
                const long long s = rx + rank_fq(y, field);
                if (s > n)  // im Y ⊆ ker X forces rank X + rank Y <= n
                    throw std::logic_error("stratum exceeded matrix size (engine bug)");
                ++counts[s];
            }
        }
    };
    if (used == 1) {
        scan(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < used; ++t) pool.emplace_back(scan, t);
        for (auto& th : pool) th.join();
    }

    CensusResult out;
    out.n = n;
    out.q = q;
    out.by_stratum.assign(n + 1, 0);
    for (const auto& counts : partial)
        for (long long s = 0; s <= n; ++s) out.by_stratum[s] += counts[s];
    for (long long s = 0; s <= n; ++s) out.total += out.by_stratum[s];
    return out;
}

}  // namespace parnode
