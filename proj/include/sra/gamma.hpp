#pragma once

#include <vector>

#include "sra/arith.hpp"

namespace sra {

// The cyclic group Gamma = Z/l inside SL(2,C).  Elements are gamma^a with
// each its own conjugacy class; irreducible characters chi_j(gamma^a) =
// zeta^{ja} with chi_0 trivial.  The defining 2-dimensional representation L
// has weights gamma.x = zeta x, gamma.y = zeta^{-1} y and omega_L(x, y) = 1,
// so the character table is the l-by-l DFT matrix and det(gamma|_L) = 1.
class CyclicGroup {
public:
    explicit CyclicGroup(long long ell);

    long long order() const { return ell_; }

    // chi_j(gamma^a)
    Cyclotomic character(long long j, long long a) const;
    Cyclotomic zeta(long long power = 1) const;

    // dimension vector of the irreducibles: delta = (1, ..., 1)
    std::vector<long long> delta() const { return std::vector<long long>(static_cast<std::size_t>(ell_), 1); }

private:
    long long ell_;
};

// c: conjugation-invariant function on Gamma \ {1}; entry a-1 stores c_{gamma^a}.
struct ClassParameter {
    long long ell = 2;
    std::vector<Cyclotomic> values;  // length ell - 1

    static ClassParameter zero(long long ell);
    Cyclotomic at(long long a) const;  // a in 1..ell-1
};

// lambda_j = Tr|_{V_j} Lambda where Lambda = 1 + sum_{a} c_a gamma^a.
struct LambdaVector {
    long long ell = 2;
    std::vector<Cyclotomic> values;  // length ell

    Cyclotomic at(long long j) const { return values[static_cast<std::size_t>(((j % ell) + ell) % ell)]; }

    static LambdaVector from_rationals(long long ell, const std::vector<Rational>& vals);
};

LambdaVector lambda_from_c(const CyclicGroup& group, const ClassParameter& c);

// Inverse DFT; requires sum_j lambda_j = ell exactly (the identity coefficient
// of Lambda is pinned at 1).
ClassParameter c_from_lambda(const CyclicGroup& group, const LambdaVector& lambda);

// lambda . delta = Tr|_R Lambda, R the regular representation.
Cyclotomic regular_trace(const CyclicGroup& group, const LambdaVector& lambda);

}  // namespace sra
