#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "sra/rankone.hpp"
#include "sra/symrep.hpp"

namespace sra {

// Element (sigma, a) of Gamma_N = S_N x| Gamma^N, identified with
// sigma * gamma_1^{a_1} ... gamma_N^{a_N}.  Fixed composition convention:
// (sigma, a)(tau, b) = (sigma tau, a o tau + b) with (a o tau)_i = a_{tau(i)}.
struct WreathElement {
    Perm sigma;
    std::vector<long long> twist;

    static WreathElement identity(int n);
    static WreathElement transposition_elem(int n, int i, int j, long long m, long long ell);
    static WreathElement gamma(int n, int i, long long power, long long ell);
    bool is_symplectic_reflection(long long ell) const;  // types (S) and (Gamma)
};
WreathElement wreath_mul(const WreathElement& a, const WreathElement& b, long long ell);

struct DeformationParameter {
    Cyclotomic k;
    ClassParameter c;
};

// Hyperplane H_{Y,m,l}: dim Y + (k/2)|Gamma|(m-l) + sum_a c_a chi_Y(gamma^a) = 0,
// equivalently lambda . alpha + (k/2)|Gamma|(m-l) = 0 in lambda coordinates.
struct Hyperplane {
    RootVec alpha;                     // lambda-form coefficients (integers)
    Rational k_coeff;                  // (|Gamma|/2)(m - l), shared by both forms
    Cyclotomic constant;               // dim Y
    std::vector<Cyclotomic> c_coeffs;  // chi_Y(gamma^a), a = 1..ell-1
    long long width = 0, height = 0;   // m, l
};

Hyperplane hyperplane(const CyclicGroup& group, const RootVec& alpha, long long width,
                      long long height, long long block_size);
Hyperplane hyperplane_for(const CyclicGroup& group, const RootVec& alpha, const Partition& w);

struct AffineSubspace {
    bool consistent = true;
    std::vector<Cyclotomic> offset;                  // a point (k, c_1..c_{l-1})
    std::vector<std::vector<Cyclotomic>> directions; // basis of the linear part
    std::size_t codimension = 0;                     // rank of the coefficient matrix
};
AffineSubspace intersect_hyperplanes(const CyclicGroup& group, const std::vector<Hyperplane>& hyps);

// Test hooks: production callers always leave both checks on.  Bypassing the
// hypothesis checks is required by the negative-control regressions, which
// compare the honest first-order system against the naive hyperplane
// intersection on modules the production gate rejects.
struct BuildOptions {
    bool skip_rectangle_check = false;
    bool skip_ext_check = false;
};

// The induced module M = Ind_{S_Nvec # B^(x)N}^{S_N # B^(x)N} (W (x) Y) at
// parameter (0, c_0), with explicit matrices for the Gamma_N generators and
// the slotwise x_i, y_i.  Basis is indexed by (coset l, W basis vector,
// tensor multi-index); coset l stores the abstract vector sigma_l (x) m'.
class InducedModule {
public:
    long long ell() const { return group_.order(); }
    const CyclicGroup& group() const { return group_; }
    const LambdaVector& lambda() const { return lambda_; }
    const ClassParameter& c0() const { return c0_; }
    int num_slots() const { return n_slots_; }                 // N
    const std::vector<long long>& composition() const { return composition_; }
    const std::vector<Partition>& w_shapes() const { return w_shapes_; }
    const std::vector<SimpleModule>& simples() const { return simples_; }
    std::size_t num_cosets() const { return coset_reps_.size(); }
    std::size_t dim_w() const { return dim_w_; }
    std::size_t dim() const { return total_dim_; }
    bool at_k_zero() const { return at_k_zero_; }
    void mark_not_at_k_zero() { at_k_zero_ = false; }  // test hook

    int block_of_slot(int slot) const { return slot_block_[static_cast<std::size_t>(slot)]; }
    int first_slot_of_block(int block) const;
    const Perm& coset_rep(std::size_t l) const { return coset_reps_[l]; }

    const CMatrix& adjacent_transposition(int t) const { return adj_[static_cast<std::size_t>(t)]; }
    const CMatrix& gamma1() const { return gamma1_; }
    const CMatrix& x_op(int p) const { return x_[static_cast<std::size_t>(p)]; }
    const CMatrix& y_op(int p) const { return y_[static_cast<std::size_t>(p)]; }

    CMatrix rho_perm(const Perm& sigma) const;               // product of stored adjacents
    CMatrix rho_gamma(int q, long long power) const;         // diagonal, built on demand
    CMatrix rho_element(const WreathElement& g) const;
    CMatrix identity_matrix() const;

    friend InducedModule build_induced(const CyclicGroup&, const LambdaVector&,
                                       const std::vector<long long>&, const std::vector<Partition>&,
                                       const std::vector<RootVec>&, const BuildOptions&);

private:
    InducedModule() : group_(2) {}

    CyclicGroup group_;
    LambdaVector lambda_;
    ClassParameter c0_;
    std::vector<long long> composition_;
    std::vector<Partition> w_shapes_;
    std::vector<SimpleModule> simples_;
    std::vector<SeminormalRep> w_reps_;
    int n_slots_ = 0;
    std::vector<int> slot_block_;                   // block of each standard slot
    std::vector<std::vector<int>> arrangements_;    // coset -> type per position
    std::vector<Perm> coset_reps_;                  // sigma_l: slot -> position
    std::vector<std::size_t> slot_dims_, slot_strides_;
    std::vector<std::size_t> w_dims_, w_strides_;
    std::size_t dim_w_ = 1, slot_size_ = 1, total_dim_ = 0;
    std::vector<CMatrix> adj_;
    CMatrix gamma1_;
    std::vector<CMatrix> x_, y_;
    bool at_k_zero_ = true;

    std::size_t basis_index(std::size_t coset, std::size_t w, const std::vector<std::size_t>& t) const;
    Matrix<Rational> w_matrix(const Perm& block_perm) const;  // tensor of per-block seminormal matrices
    void route(const Perm& sigma, std::size_t coset, std::size_t& coset_out, Perm& block_perm) const;
    CMatrix build_rho_perm(const Perm& sigma) const;
};

InducedModule build_induced(const CyclicGroup& group, const LambdaVector& lambda,
                            const std::vector<long long>& composition,
                            const std::vector<Partition>& w_shapes,
                            const std::vector<RootVec>& roots, const BuildOptions& opts = {});

// Exact evaluation of the defining relations at an arbitrary parameter.
struct RelationReport {
    std::vector<bool> r1_zero;  // per slot index i
    struct R2Entry {
        int i, j;
        char u, v;
        bool zero;
    };
    std::vector<R2Entry> r2;

    bool all_zero() const;
    bool r1_all_zero() const;
    bool r2_all_zero() const;
};
RelationReport check_R1_R2(const InducedModule& m, const DeformationParameter& param);

// Linear form in (k, c): constant + k_coeff * k + sum_a c_coeffs[a-1] * c_a.
struct LinearFormKC {
    Cyclotomic constant;
    Cyclotomic k_coeff;
    std::vector<Cyclotomic> c_coeffs;

    bool operator==(const LinearFormKC& o) const;
    LinearFormKC scaled(const Cyclotomic& s) const;
};
LinearFormKC hyperplane_form(const Hyperplane& h, long long ell);

// Trace condition of block i: Tr_M((RHS of R1 at the block's first slot) * P_i)
// with P_i built from the central element Z(i) with Tr_{Y_j} Z(i) = 1 - delta_ij.
// Equals a * (dim Y_i)^{N_i - 1} * prod_j dim W_j times the hyperplane form,
// a = (N - N_i)! / prod_{j != i} N_j!.
LinearFormKC trace_condition(const InducedModule& m, int block);
Rational trace_condition_expected_scale(const InducedModule& m, int block);

struct CorrectionSet {
    std::vector<CMatrix> x1, y1;  // per slot
};

struct DeformationReport {
    std::vector<std::vector<Cyclotomic>> tangent_kc;       // basis vectors (khat, chat_1..chat_{l-1})
    std::vector<std::vector<Cyclotomic>> tangent_klambda;  // (khat, lambdahat_0..lambdahat_{l-1})
    std::size_t codimension = 0;
    long long solution_dim_at_zero = 0;  // fixed-parameter first-order deformations
    long long trivial_dim = 0;           // commutators with equivariant endomorphisms
    bool unique_mod_trivial = false;
    std::vector<CorrectionSet> representatives;  // one per tangent basis vector
};

// First-order deformation solver: unknown corrections to all x_i, y_i with the
// group action frozen, subject to S_N- and Gamma-equivariance and the
// linearized R1/R2 in (khat, chat); the parameter projection is computed by
// exact elimination of the matrix unknowns.
DeformationReport first_order_deformation(const InducedModule& m);

// Row-space equality of exact tangent bases.
bool same_row_space(const std::vector<std::vector<Cyclotomic>>& a,
                    const std::vector<std::vector<Cyclotomic>>& b, std::size_t cols);

}  // namespace sra
