// Finite-field census of the local model at the node: pairs of n x n
// matrices (X, Y) over F_q with XY = YX = 0, stratified by rank X + rank Y.
// Fields are table-based GF(p^e) for prime powers q <= 16.
#pragma once

#include <map>
#include <vector>

#include "parnode/errors.hpp"

namespace parnode {

class GaloisField {
public:
    explicit GaloisField(long long q);  // InvariantViolation unless q is a prime power <= 16

    long long size() const { return q_; }
    int characteristic() const { return p_; }
    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int inv(int a) const;  // InvariantViolation on 0

private:
    long long q_;
    int p_ = 0, e_ = 0;
    std::vector<int> add_, mul_, neg_, inv_;
};

// Dense n x n matrix over F_q, row-major entries in [0, q).
struct FqMatrix {
    long long n = 0;
    std::vector<int> entries;

    int at(long long row, long long col) const { return entries[row * n + col]; }
};

// Row-reduction rank over F_q.
long long rank_fq(const FqMatrix& m, const GaloisField& field);

// Membership in the local model: XY = YX = 0. Throws InvariantViolation on
// shape or entry-range mismatches.
bool in_z(const FqMatrix& x, const FqMatrix& y, const GaloisField& field);

// Stratum index rank X + rank Y; throws NotInZ when (X, Y) violates the
// defining equations.
long long stratum(const FqMatrix& x, const FqMatrix& y, const GaloisField& field);

// Full point count of the local model over F_q, stratified. The enumeration
// has q^(2n^2) candidate pairs; anything above 2^24 is refused (TooLarge).
struct CensusResult {
    long long n = 0, q = 0;
    std::vector<long long> by_stratum;  // index s = rank X + rank Y, size n+1
    long long total = 0;
};
CensusResult census(long long n, long long q, int workers = 1);

}  // namespace parnode
