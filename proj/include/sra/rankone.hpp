#pragma once

#include <vector>

#include "sra/linalg.hpp"
#include "sra/roots.hpp"

namespace sra {

using CMatrix = Matrix<Cyclotomic>;

// Explicit matrix model of a finite-dimensional simple module of
// B = H_{1,c}(Gamma) for cyclic Gamma.  Basis v_0..v_{d-1} is a string:
// v_m spans a copy of V_{(j0+m) mod l},  X v_m = v_{m+1},  Y v_m = a_m v_{m-1}
// with a_0 = a_d = 0 and a_{m+1} = a_m - lambda_{(j0+m) mod l}.  The matrix
// relations X Y - Y X = diag(Lambda eigenvalues), G X G^{-1} = zeta X,
// G Y G^{-1} = zeta^{-1} Y, G^l = 1 then hold by construction.
struct SimpleModule {
    long long ell = 2;
    RootVec alpha;                    // dimension vector
    long long dim = 0;                // d = sum alpha_i
    long long j0 = 0;                 // start character of the string
    std::vector<Cyclotomic> string;   // a_0..a_d
    CMatrix X, Y, G;

    long long character_of(long long m) const { return ((j0 + m) % ell + ell) % ell; }
    Int dim_as_int() const { return Int(dim); }
    Cyclotomic char_gamma(const CyclicGroup& g, long long a) const;  // Tr(G^a) = chi_Y(gamma^a)
};

// Builds the simple with dimension vector alpha in Sigma_lambda.  Rejects
// imaginary roots explicitly and any alpha outside the classification
// (non-root, lambda.alpha != 0, or a vanishing intermediate string
// coefficient, which would split alpha into two members of R_lambda).
SimpleModule build_simple(const CyclicGroup& group, const LambdaVector& lambda, const RootVec& alpha);

// Exact verification of the four matrix invariants plus the isotypic count.
bool check_relations(const SimpleModule& m, const LambdaVector& lambda);

// dim of first-order extensions between two simples over the same (l, lambda):
// pairs (xi_X, xi_Y) with G_1 xi_X G_2^{-1} = zeta xi_X,
// G_1 xi_Y G_2^{-1} = zeta^{-1} xi_Y and
// X_1 xi_Y + xi_X Y_2 - Y_1 xi_X - xi_Y X_2 = 0, modulo
// xi_X = X_1 h - h X_2, xi_Y = Y_1 h - h Y_2 for equivariant h.
long long ext1_dim(const SimpleModule& m1, const SimpleModule& m2, const LambdaVector& lambda);

// Degree-0 analogue: equivariant h with X_1 h = h X_2 and Y_1 h = h Y_2.
long long hom_dim(const SimpleModule& m1, const SimpleModule& m2);

// Group-algebra element Z = sum_a u_a gamma^a with Tr_{Y_i}(Z) = targets_i.
// Underdetermined DFT modes are set to zero; linearly dependent dimension
// vectors raise a singular-system error.
std::vector<Cyclotomic> central_with_traces(const CyclicGroup& group,
                                            const std::vector<SimpleModule>& simples,
                                            const std::vector<Cyclotomic>& targets);

}  // namespace sra
