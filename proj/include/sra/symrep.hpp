#pragma once

#include <vector>

#include "sra/linalg.hpp"
#include "sra/symcomb.hpp"

namespace sra {

// Permutations as image vectors on {0..n-1}: p[i] is the image of i.
using Perm = std::vector<int>;

Perm perm_identity(int n);
Perm perm_mul(const Perm& a, const Perm& b);  // (a*b)(i) = a(b(i))
Perm perm_inverse(const Perm& a);
Perm perm_transposition(int n, int i, int j);
int perm_sign(const Perm& a);
// Word in adjacent transpositions s_k = (k, k+1) whose ordered product is a.
std::vector<int> adjacent_word(const Perm& a);

// Irreducible S_n representation of shape mu in Young's seminormal form;
// entries are exact rationals.  Basis is indexed by the standard tableaux of
// shape mu in generation order.
class SeminormalRep {
public:
    explicit SeminormalRep(const Partition& mu);

    const Partition& shape() const { return shape_; }
    std::size_t dim() const { return dim_; }
    std::size_t degree() const { return n_; }  // n of S_n

    // rho(s_k) for the adjacent transposition (k, k+1), 0 <= k < n-1.
    const Matrix<Rational>& adjacent(std::size_t k) const { return adj_[k]; }

    Matrix<Rational> matrix(const Perm& sigma) const;

private:
    Partition shape_;
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<Matrix<Rational>> adj_;
};

// Number and explicit list of standard tableaux; tableau[k] = (row, col) of
// entry k (0-based entries).
std::vector<std::vector<std::pair<int, int>>> standard_tableaux(const Partition& mu);

}  // namespace sra
