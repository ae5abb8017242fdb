#pragma once

#include <optional>
#include <vector>

#include "sra/gamma.hpp"

namespace sra {

using RootVec = std::vector<long long>;

// McKay quiver of Gamma: vertices are the irreducible characters, adjacency
// a_ij = multiplicity of V_j inside L (x) V_i.  For cyclic Gamma this is the
// affine A~_{l-1} cycle (doubled edge at l = 2).
struct Quiver {
    std::size_t num_vertices = 0;
    std::vector<std::vector<long long>> adjacency;  // symmetric, nonnegative
    std::size_t trivial_vertex = 0;

    std::vector<long long> delta() const { return std::vector<long long>(num_vertices, 1); }
};

Quiver mckay_quiver(const CyclicGroup& group);

// q(alpha) = sum alpha_i^2 - sum_{i<j} a_ij alpha_i alpha_j = (1/2) a^T C a.
long long tits_form(const Quiver& q, const RootVec& alpha);

// Positive real roots of affine type decompose uniquely as a 0/1 cyclic
// interval plus n*delta.  Returns (start j0, length t, n) or nullopt.
struct IntervalDecomposition {
    long long j0 = 0;
    long long length = 0;
    long long n = 0;
};
std::optional<IntervalDecomposition> decompose_positive_real(const Quiver& q, const RootVec& alpha);

// Real roots orthogonal to lambda.  Every real root is ±(beta + n*delta) with
// beta a finite-type root vanishing at the trivial vertex; beta is enumerated
// by brute force over |beta_i| <= 6 with q(beta) = 1, and n is forced to
// -(lambda.beta)/(lambda.delta).  Requires lambda.delta != 0.  Output is
// sorted lexicographically and closed under negation.
std::vector<RootVec> r_lambda(const Quiver& q, const LambdaVector& lambda);

// The unique basis of R consisting of positive roots: positive members that
// are not the sum of two positive members.  Input must be closed under
// negation; output sorted lexicographically.
std::vector<RootVec> sigma_lambda(const Quiver& q, const std::vector<RootVec>& r);

bool is_positive(const RootVec& alpha);
bool is_imaginary(const Quiver& q, const RootVec& alpha);  // nonzero multiple of delta

Cyclotomic lambda_dot(const LambdaVector& lambda, const RootVec& alpha);

}  // namespace sra
