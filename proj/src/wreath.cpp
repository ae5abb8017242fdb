#include "sra/wreath.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sra {

WreathElement WreathElement::identity(int n) {
    return WreathElement{perm_identity(n), std::vector<long long>(static_cast<std::size_t>(n), 0)};
}

WreathElement WreathElement::transposition_elem(int n, int i, int j, long long m, long long ell) {
    WreathElement e = identity(n);
    e.sigma = perm_transposition(n, i, j);
    e.twist[static_cast<std::size_t>(i)] = ((m % ell) + ell) % ell;
    e.twist[static_cast<std::size_t>(j)] = ((-m % ell) + ell) % ell;
    return e;
}

WreathElement WreathElement::gamma(int n, int i, long long power, long long ell) {
    WreathElement e = identity(n);
    e.twist[static_cast<std::size_t>(i)] = ((power % ell) + ell) % ell;
    return e;
}

bool WreathElement::is_symplectic_reflection(long long ell) const {
    int moved = 0, a = -1, b = -1;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i] != static_cast<int>(i)) {
            ++moved;
            if (a < 0) a = static_cast<int>(i);
            else b = static_cast<int>(i);
        }
    if (moved == 0) {
        int nonzero = 0;
        for (long long t : twist)
            if (t % ell != 0) ++nonzero;
        return nonzero == 1;  // type (Gamma)
    }
    if (moved != 2) return false;
    if (sigma[static_cast<std::size_t>(a)] != b) return false;
    for (std::size_t i = 0; i < twist.size(); ++i) {
        if (static_cast<int>(i) == a || static_cast<int>(i) == b) continue;
        if (twist[i] % ell != 0) return false;
    }
    return (twist[static_cast<std::size_t>(a)] + twist[static_cast<std::size_t>(b)]) % ell == 0;  // type (S)
}

WreathElement wreath_mul(const WreathElement& a, const WreathElement& b, long long ell) {
    if (a.sigma.size() != b.sigma.size())
        throw errors::dimension_mismatch("wreath elements of different rank");
    WreathElement r;
    r.sigma = perm_mul(a.sigma, b.sigma);
    r.twist.resize(a.twist.size());
    for (std::size_t i = 0; i < r.twist.size(); ++i) {
        long long at = a.twist[static_cast<std::size_t>(b.sigma[i])];
        r.twist[i] = ((at + b.twist[i]) % ell + ell) % ell;
    }
    return r;
}

Hyperplane hyperplane(const CyclicGroup& group, const RootVec& alpha, long long width,
                      long long height, long long block_size) {
    if (width * height != block_size)
        throw errors::precondition("rectangle " + std::to_string(height) + "x" + std::to_string(width) +
                                   " does not fill the block of size " + std::to_string(block_size));
    const long long ell = group.order();
    if (static_cast<long long>(alpha.size()) != ell)
        throw errors::dimension_mismatch("dimension vector length differs from group order");
    Hyperplane h;
    h.alpha = alpha;
    h.width = width;
    h.height = height;
    h.k_coeff = Rational(ell * (width - height), 2);
    long long dim = 0;
    for (long long v : alpha) dim += v;
    h.constant = Cyclotomic(Rational(dim), ell);
    for (long long a = 1; a < ell; ++a) {
        Cyclotomic chi(Rational(0), ell);
        for (long long j = 0; j < ell; ++j)
            chi += Cyclotomic(Rational(alpha[static_cast<std::size_t>(j)])) * group.character(j, a);
        h.c_coeffs.push_back(chi);
    }
    return h;
}

Hyperplane hyperplane_for(const CyclicGroup& group, const RootVec& alpha, const Partition& w) {
    if (!is_rectangle(w))
        throw errors::precondition("partition " + w.to_string() + " is not a rectangle");
    long long height = static_cast<long long>(w.parts.size());
    long long width = w.parts[0];
    return hyperplane(group, alpha, width, height, w.size());
}

AffineSubspace intersect_hyperplanes(const CyclicGroup& group, const std::vector<Hyperplane>& hyps) {
    const long long ell = group.order();
    const std::size_t cols = static_cast<std::size_t>(ell);  // (k, c_1..c_{l-1})
    Matrix<Cyclotomic> coeff(hyps.size(), cols, Cyclotomic(Rational(0), ell));
    Matrix<Cyclotomic> aug(hyps.size(), cols + 1, Cyclotomic(Rational(0), ell));
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        coeff.at(i, 0) = Cyclotomic(hyps[i].k_coeff, ell);
        aug.at(i, 0) = coeff.at(i, 0);
        for (long long a = 1; a < ell; ++a) {
            coeff.at(i, static_cast<std::size_t>(a)) = hyps[i].c_coeffs[static_cast<std::size_t>(a - 1)];
            aug.at(i, static_cast<std::size_t>(a)) = coeff.at(i, static_cast<std::size_t>(a));
        }
        aug.at(i, cols) = -hyps[i].constant;
    }
    AffineSubspace out;
    Matrix<Cyclotomic> coeff_copy = coeff;
    out.codimension = rref(coeff_copy).size();
    std::vector<std::size_t> pivots = rref(aug);
    out.consistent = pivots.empty() || pivots.back() < cols;
    if (!out.consistent) return out;
    out.offset.assign(cols, Cyclotomic(Rational(0), ell));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        out.offset[pivots[i]] = aug.at(i, cols);
    out.directions = kernel_basis(coeff);
    return out;
}

// ---------------------------------------------------------------------------
// InducedModule construction

namespace {

std::vector<std::vector<int>> enumerate_arrangements(const std::vector<long long>& comp) {
    const int n = static_cast<int>([&] {
        long long s = 0;
        for (long long c : comp) s += c;
        return s;
    }());
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::vector<long long> left = comp;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t b = 0; b < comp.size(); ++b) {
            if (left[b] == 0) continue;
            --left[b];
            cur.push_back(static_cast<int>(b));
            self(self, pos + 1);
            cur.pop_back();
            ++left[b];
        }
    };
    rec(rec, 0);
    return out;
}

Perm rep_from_arrangement(const std::vector<int>& arr, const std::vector<int>& slot_block) {
    const int n = static_cast<int>(arr.size());
    Perm sigma(static_cast<std::size_t>(n), 0);
    int nblocks = 0;
    for (int b : slot_block) nblocks = std::max(nblocks, b + 1);
    for (int b = 0; b < nblocks; ++b) {
        std::vector<int> slots, positions;
        for (int s = 0; s < n; ++s)
            if (slot_block[static_cast<std::size_t>(s)] == b) slots.push_back(s);
        for (int p = 0; p < n; ++p)
            if (arr[static_cast<std::size_t>(p)] == b) positions.push_back(p);
        for (std::size_t k = 0; k < slots.size(); ++k)
            sigma[static_cast<std::size_t>(slots[k])] = positions[k];
    }
    return sigma;
}

}  // namespace

std::size_t InducedModule::basis_index(std::size_t coset, std::size_t w,
                                       const std::vector<std::size_t>& t) const {
    std::size_t ti = 0;
    for (std::size_t s = 0; s < t.size(); ++s) ti += t[s] * slot_strides_[s];
    return (coset * dim_w_ + w) * slot_size_ + ti;
}

int InducedModule::first_slot_of_block(int block) const {
    for (int s = 0; s < n_slots_; ++s)
        if (slot_block_[static_cast<std::size_t>(s)] == block) return s;
    throw errors::precondition("block index out of range");
}

Matrix<Rational> InducedModule::w_matrix(const Perm& block_perm) const {
    // per-block matrices
    std::vector<Matrix<Rational>> mats;
    int offset = 0;
    for (std::size_t b = 0; b < composition_.size(); ++b) {
        int nb = static_cast<int>(composition_[b]);
        Perm local(static_cast<std::size_t>(nb));
        for (int i = 0; i < nb; ++i) {
            int img = block_perm[static_cast<std::size_t>(offset + i)] - offset;
            if (img < 0 || img >= nb)
                throw errors::consistency("routing permutation does not preserve blocks");
            local[static_cast<std::size_t>(i)] = img;
        }
        mats.push_back(w_reps_[b].matrix(local));
        offset += nb;
    }
    Matrix<Rational> out(dim_w_, dim_w_, Rational(0));
    const Rational zero(0);
    for (std::size_t wr = 0; wr < dim_w_; ++wr)
        for (std::size_t wc = 0; wc < dim_w_; ++wc) {
            Rational prod(1);
            for (std::size_t b = 0; b < mats.size() && prod != zero; ++b) {
                std::size_t rb = (wr / w_strides_[b]) % w_dims_[b];
                std::size_t cb = (wc / w_strides_[b]) % w_dims_[b];
                prod *= mats[b].at(rb, cb);
            }
            out.at(wr, wc) = prod;
        }
    return out;
}

void InducedModule::route(const Perm& sigma, std::size_t coset, std::size_t& coset_out,
                          Perm& block_perm) const {
    Perm tau = perm_mul(sigma, coset_reps_[coset]);
    Perm tau_inv = perm_inverse(tau);
    std::vector<int> arr(tau.size());
    for (std::size_t p = 0; p < tau.size(); ++p)
        arr[p] = slot_block_[static_cast<std::size_t>(tau_inv[p])];
    auto it = std::lower_bound(arrangements_.begin(), arrangements_.end(), arr);
    if (it == arrangements_.end() || *it != arr)
        throw errors::consistency("arrangement lookup failed");
    coset_out = static_cast<std::size_t>(it - arrangements_.begin());
    block_perm = perm_mul(perm_inverse(coset_reps_[coset_out]), tau);
}

CMatrix InducedModule::build_rho_perm(const Perm& sigma) const {
    const long long ell = group_.order();
    CMatrix out(total_dim_, total_dim_, Cyclotomic(Rational(0), ell));
    const Rational zero(0);
    std::vector<std::size_t> t(static_cast<std::size_t>(n_slots_), 0);
    for (std::size_t l = 0; l < coset_reps_.size(); ++l) {
        std::size_t h = 0;
        Perm sp;
        route(sigma, l, h, sp);
        Perm sp_inv = perm_inverse(sp);
        Matrix<Rational> mw = w_matrix(sp);
        std::fill(t.begin(), t.end(), 0);
        bool done = false;
        while (!done) {
            std::vector<std::size_t> tt(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                tt[i] = t[static_cast<std::size_t>(sp_inv[i])];
            for (std::size_t wc = 0; wc < dim_w_; ++wc)
                for (std::size_t wr = 0; wr < dim_w_; ++wr) {
                    if (mw.at(wr, wc) == zero) continue;
                    out.at(basis_index(h, wr, tt), basis_index(l, wc, t)) +=
                        Cyclotomic(mw.at(wr, wc), ell);
                }
            // advance multi-index
            std::size_t s = 0;
            while (s < t.size()) {
                if (++t[s] < slot_dims_[s]) break;
                t[s] = 0;
                ++s;
            }
            done = s == t.size();
        }
    }
    return out;
}

CMatrix InducedModule::rho_perm(const Perm& sigma) const {
    CMatrix m = identity_matrix();
    for (int k : adjacent_word(sigma)) m = m * adj_[static_cast<std::size_t>(k)];
    return m;
}

CMatrix InducedModule::rho_gamma(int q, long long power) const {
    const long long ell = group_.order();
    CMatrix out(total_dim_, total_dim_, Cyclotomic(Rational(0), ell));
    std::vector<std::size_t> t(static_cast<std::size_t>(n_slots_), 0);
    for (std::size_t l = 0; l < coset_reps_.size(); ++l) {
        int s = perm_inverse(coset_reps_[l])[static_cast<std::size_t>(q)];
        const SimpleModule& y = simples_[static_cast<std::size_t>(slot_block_[static_cast<std::size_t>(s)])];
        std::fill(t.begin(), t.end(), 0);
        bool done = false;
        while (!done) {
            long long chr = y.character_of(static_cast<long long>(t[static_cast<std::size_t>(s)]));
            Cyclotomic factor = group_.zeta(chr * power);
            for (std::size_t w = 0; w < dim_w_; ++w) {
                std::size_t idx = basis_index(l, w, t);
                out.at(idx, idx) = factor;
            }
            std::size_t sidx = 0;
            while (sidx < t.size()) {
                if (++t[sidx] < slot_dims_[sidx]) break;
                t[sidx] = 0;
                ++sidx;
            }
            done = sidx == t.size();
        }
    }
    return out;
}

CMatrix InducedModule::rho_element(const WreathElement& g) const {
    CMatrix m = rho_perm(g.sigma);
    for (int q = 0; q < n_slots_; ++q) {
        long long a = g.twist[static_cast<std::size_t>(q)];
        if (a % group_.order() != 0) m = m * rho_gamma(q, a);
    }
    return m;
}

CMatrix InducedModule::identity_matrix() const {
    CMatrix m(total_dim_, total_dim_, Cyclotomic(Rational(0), group_.order()));
    for (std::size_t i = 0; i < total_dim_; ++i) m.at(i, i) = Cyclotomic(Rational(1), group_.order());
    return m;
}

InducedModule build_induced(const CyclicGroup& group, const LambdaVector& lambda,
                            const std::vector<long long>& composition,
                            const std::vector<Partition>& w_shapes,
                            const std::vector<RootVec>& roots, const BuildOptions& opts) {
    const long long ell = group.order();
    if (composition.empty() || composition.size() != w_shapes.size() ||
        composition.size() != roots.size())
        throw errors::dimension_mismatch("composition, partitions and roots must have equal length");
    for (std::size_t b = 0; b < composition.size(); ++b) {
        if (composition[b] < 1) throw errors::precondition("composition parts must be positive");
        if (w_shapes[b].size() != composition[b])
            throw errors::precondition("partition W_" + std::to_string(b + 1) + " must have size N_" +
                                       std::to_string(b + 1));
        if (!opts.skip_rectangle_check && !is_rectangle(w_shapes[b]))
            throw errors::precondition("hypothesis violated: partition " + w_shapes[b].to_string() +
                                       " of block " + std::to_string(b + 1) +
                                       " is not a rectangle (num_corners = " +
                                       std::to_string(num_corners(w_shapes[b])) + ")");
    }
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (roots[i] == roots[j])
                throw errors::precondition("repeated dimension vector: the Y_i must be pairwise "
                                           "non-isomorphic simples");

    InducedModule m;
    m.group_ = group;
    m.lambda_ = lambda;
    m.c0_ = c_from_lambda(group, lambda);
    m.composition_ = composition;
    m.w_shapes_ = w_shapes;
    for (const RootVec& a : roots) m.simples_.push_back(build_simple(group, lambda, a));

    if (!opts.skip_ext_check) {
        for (std::size_t i = 0; i < m.simples_.size(); ++i)
            for (std::size_t j = 0; j < m.simples_.size(); ++j) {
                if (i == j) continue;
                long long e = ext1_dim(m.simples_[i], m.simples_[j], lambda);
                if (e != 0)
                    throw errors::precondition(
                        "hypothesis violated: Ext^1(Y_" + std::to_string(i + 1) + ", Y_" +
                        std::to_string(j + 1) + ") has dimension " + std::to_string(e) +
                        ", expected 0");
            }
    }

    long long n = 0;
    for (long long c : composition) n += c;
    m.n_slots_ = static_cast<int>(n);
    for (std::size_t b = 0; b < composition.size(); ++b)
        for (long long k = 0; k < composition[b]; ++k) m.slot_block_.push_back(static_cast<int>(b));

    m.arrangements_ = enumerate_arrangements(composition);
    std::sort(m.arrangements_.begin(), m.arrangements_.end());
    for (const auto& arr : m.arrangements_)
        m.coset_reps_.push_back(rep_from_arrangement(arr, m.slot_block_));

    for (const Partition& w : w_shapes) m.w_reps_.emplace_back(w);
    m.dim_w_ = 1;
    for (const SeminormalRep& r : m.w_reps_) m.w_dims_.push_back(r.dim());
    m.w_strides_.assign(m.w_dims_.size(), 1);
    for (std::size_t b = m.w_dims_.size(); b-- > 0;) {
        if (b + 1 < m.w_dims_.size()) m.w_strides_[b] = m.w_strides_[b + 1] * m.w_dims_[b + 1];
    }
    for (std::size_t d : m.w_dims_) m.dim_w_ *= d;

    for (int s = 0; s < m.n_slots_; ++s)
        m.slot_dims_.push_back(static_cast<std::size_t>(
            m.simples_[static_cast<std::size_t>(m.slot_block_[static_cast<std::size_t>(s)])].dim));
    m.slot_strides_.assign(m.slot_dims_.size(), 1);
    for (std::size_t s = m.slot_dims_.size(); s-- > 0;)
        if (s + 1 < m.slot_dims_.size()) m.slot_strides_[s] = m.slot_strides_[s + 1] * m.slot_dims_[s + 1];
    m.slot_size_ = 1;
    for (std::size_t d : m.slot_dims_) m.slot_size_ *= d;
    m.total_dim_ = m.coset_reps_.size() * m.dim_w_ * m.slot_size_;
    if (m.total_dim_ > 2000)
        throw errors::limit("induced module dimension " + std::to_string(m.total_dim_) +
                            " exceeds the 2000 guardrail");

    for (int t = 0; t + 1 < m.n_slots_; ++t)
        m.adj_.push_back(m.build_rho_perm(perm_transposition(m.n_slots_, t, t + 1)));
    m.gamma1_ = m.rho_gamma(0, 1);

    // x_p, y_p act in the slot routed to position p
    const Cyclotomic zero(Rational(0), ell);
    for (int p = 0; p < m.n_slots_; ++p) {
        CMatrix xm(m.total_dim_, m.total_dim_, zero), ym(m.total_dim_, m.total_dim_, zero);
        std::vector<std::size_t> t(static_cast<std::size_t>(m.n_slots_), 0);
        for (std::size_t l = 0; l < m.coset_reps_.size(); ++l) {
            int s = perm_inverse(m.coset_reps_[l])[static_cast<std::size_t>(p)];
            const SimpleModule& y =
                m.simples_[static_cast<std::size_t>(m.slot_block_[static_cast<std::size_t>(s)])];
            std::fill(t.begin(), t.end(), 0);
            bool done = false;
            while (!done) {
                std::size_t ts = t[static_cast<std::size_t>(s)];
                for (std::size_t w = 0; w < m.dim_w_; ++w) {
                    std::size_t src = m.basis_index(l, w, t);
                    if (ts + 1 < static_cast<std::size_t>(y.dim)) {
                        auto tt = t;
                        ++tt[static_cast<std::size_t>(s)];
                        xm.at(m.basis_index(l, w, tt), src) = Cyclotomic(Rational(1), ell);
                    }
                    if (ts > 0) {
                        auto tt = t;
                        --tt[static_cast<std::size_t>(s)];
                        ym.at(m.basis_index(l, w, tt), src) = y.string[ts];
                    }
                }
                std::size_t sidx = 0;
                while (sidx < t.size()) {
                    if (++t[sidx] < m.slot_dims_[sidx]) break;
                    t[sidx] = 0;
                    ++sidx;
                }
                done = sidx == t.size();
            }
        }
        m.x_.push_back(std::move(xm));
        m.y_.push_back(std::move(ym));
    }
    return m;
}

// ---------------------------------------------------------------------------
// Relation checking

bool RelationReport::all_zero() const { return r1_all_zero() && r2_all_zero(); }

bool RelationReport::r1_all_zero() const {
    return std::all_of(r1_zero.begin(), r1_zero.end(), [](bool b) { return b; });
}

bool RelationReport::r2_all_zero() const {
    return std::all_of(r2.begin(), r2.end(), [](const R2Entry& e) { return e.zero; });
}

namespace {

Cyclotomic omega_weight(const CyclicGroup& g, long long m, char u, char v) {
    if (u == 'x' && v == 'y') return g.zeta(m);
    if (u == 'y' && v == 'x') return -g.zeta(-m);
    return Cyclotomic(Rational(0), g.order());
}

}  // namespace

RelationReport check_R1_R2(const InducedModule& m, const DeformationParameter& param) {
    const long long ell = m.ell();
    const CyclicGroup& g = m.group();
    if (param.c.ell != ell) throw errors::order_mismatch("parameter order differs from module order");
    const Cyclotomic half_k = param.k.promoted(ell) / Cyclotomic(Rational(2), ell);
    RelationReport rep;
    const int n = m.num_slots();
    CMatrix id = m.identity_matrix();
    for (int i = 0; i < n; ++i) {
        CMatrix res = m.x_op(i) * m.y_op(i) - m.y_op(i) * m.x_op(i) - id;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            CMatrix sij = m.rho_perm(perm_transposition(n, i, j));
            for (long long mm = 0; mm < ell; ++mm)
                res = res - (sij * m.rho_gamma(i, mm) * m.rho_gamma(j, -mm)).scaled(half_k);
        }
        for (long long a = 1; a < ell; ++a)
            res = res - m.rho_gamma(i, a).scaled(param.c.at(a));
        rep.r1_zero.push_back(res.is_zero());
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            CMatrix sij = m.rho_perm(perm_transposition(n, i, j));
            for (char u : {'x', 'y'})
                for (char v : {'x', 'y'}) {
                    const CMatrix& ui = (u == 'x') ? m.x_op(i) : m.y_op(i);
                    const CMatrix& vj = (v == 'x') ? m.x_op(j) : m.y_op(j);
                    CMatrix res = ui * vj - vj * ui;
                    for (long long mm = 0; mm < ell; ++mm) {
                        Cyclotomic w = omega_weight(g, mm, u, v);
                        if (w.is_zero()) continue;
                        res = res + (sij * m.rho_gamma(i, mm) * m.rho_gamma(j, -mm)).scaled(half_k * w);
                    }
                    rep.r2.push_back({i, j, u, v, res.is_zero()});
                }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Hyperplane forms and the trace condition

bool LinearFormKC::operator==(const LinearFormKC& o) const {
    return constant == o.constant && k_coeff == o.k_coeff && c_coeffs == o.c_coeffs;
}

LinearFormKC LinearFormKC::scaled(const Cyclotomic& s) const {
    LinearFormKC r;
    r.constant = constant * s;
    r.k_coeff = k_coeff * s;
    for (const Cyclotomic& c : c_coeffs) r.c_coeffs.push_back(c * s);
    return r;
}

LinearFormKC hyperplane_form(const Hyperplane& h, long long ell) {
    LinearFormKC f;
    f.constant = h.constant;
    f.k_coeff = Cyclotomic(h.k_coeff, ell);
    f.c_coeffs = h.c_coeffs;
    return f;
}

LinearFormKC trace_condition(const InducedModule& m, int block) {
    const long long ell = m.ell();
    const int r = static_cast<int>(m.composition().size());
    if (block < 0 || block >= r) throw errors::precondition("block index out of range");
    const int n = m.num_slots();
    const int anchor = m.first_slot_of_block(block);

    std::vector<Cyclotomic> targets;
    for (int j = 0; j < r; ++j)
        targets.push_back(Cyclotomic(Rational(j == block ? 0 : 1), ell));
    std::vector<Cyclotomic> u = central_with_traces(m.group(), m.simples(), targets);

    CMatrix p = m.identity_matrix();
    for (int pos = 0; pos < n; ++pos) {
        if (m.block_of_slot(pos) == block) continue;
        CMatrix z(m.dim(), m.dim(), Cyclotomic(Rational(0), ell));
        for (long long a = 0; a < ell; ++a) z = z + m.rho_gamma(pos, a).scaled(u[static_cast<std::size_t>(a)]);
        p = p * z;
    }

    LinearFormKC f;
    f.constant = p.trace();
    Cyclotomic ksum(Rational(0), ell);
    for (int j = 0; j < n; ++j) {
        if (j == anchor) continue;
        CMatrix sij = m.rho_perm(perm_transposition(n, anchor, j));
        for (long long mm = 0; mm < ell; ++mm)
            ksum += (sij * m.rho_gamma(anchor, mm) * m.rho_gamma(j, -mm) * p).trace();
    }
    f.k_coeff = ksum / Cyclotomic(Rational(2), ell);
    for (long long a = 1; a < ell; ++a)
        f.c_coeffs.push_back((m.rho_gamma(anchor, a) * p).trace());
    return f;
}

Rational trace_condition_expected_scale(const InducedModule& m, int block) {
    const auto& comp = m.composition();
    long long n = 0;
    for (long long c : comp) n += c;
    long long ni = comp[static_cast<std::size_t>(block)];
    auto factorial = [](long long v) {
        Int f(1);
        for (long long k = 2; k <= v; ++k) f *= Int(k);
        return f;
    };
    Int num = factorial(n - ni);
    Int den(1);
    for (std::size_t j = 0; j < comp.size(); ++j)
        if (static_cast<int>(j) != block) den *= factorial(comp[j]);
    Rational a(num, den);
    Rational dimy(1);
    for (long long k = 1; k < ni; ++k) dimy *= Rational(m.simples()[static_cast<std::size_t>(block)].dim);
    Rational dimw(1);
    for (const Partition& w : m.w_shapes()) dimw *= Rational(dim_irrep(w));
    return a * dimy * dimw;
}

// ---------------------------------------------------------------------------
// First-order deformation solver

DeformationReport first_order_deformation(const InducedModule& m) {
    if (!m.at_k_zero())
        throw errors::precondition("first-order deformation requires a module built at k = 0");
    const long long ell = m.ell();
    const CyclicGroup& g = m.group();
    const int n = m.num_slots();
    const std::size_t dd = m.dim() * m.dim();
    const std::size_t nm = 2 * static_cast<std::size_t>(n) * dd;
    const std::size_t ncols = nm + static_cast<std::size_t>(ell);  // + (khat, chat_1..chat_{l-1})
    const std::size_t d = m.dim();
    const Cyclotomic zero(Rational(0), ell);
    const Cyclotomic half(Rational(1, 2), ell);

    auto xid = [&](int p, std::size_t a, std::size_t b) {
        return (static_cast<std::size_t>(p) * 2) * dd + a * d + b;
    };
    auto yid = [&](int p, std::size_t a, std::size_t b) {
        return (static_cast<std::size_t>(p) * 2 + 1) * dd + a * d + b;
    };
    const std::size_t kcol = nm;
    auto ccol = [&](long long a) { return nm + static_cast<std::size_t>(a); };

    LinearSystem<Cyclotomic> sys(ncols);

    // Gamma-equivariance: rho(g_q) Z_p rho(g_q)^{-1} = zeta^{±[p=q]} Z_p.
    // rho(g_q) is diagonal, so these are one-term rows.
    for (int q = 0; q < n; ++q) {
        CMatrix gq = m.rho_gamma(q, 1);
        for (int p = 0; p < n; ++p) {
            for (int which = 0; which < 2; ++which) {
                Cyclotomic tw = (p == q) ? g.zeta(which == 0 ? 1 : -1) : Cyclotomic(Rational(1), ell);
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        Cyclotomic coef = gq.at(a, a) / gq.at(b, b) - tw;
                        if (coef.is_zero()) continue;
                        std::size_t col = which == 0 ? xid(p, a, b) : yid(p, a, b);
                        sys.add_row({{col, coef}});
                    }
            }
        }
    }

    // S_N-equivariance for adjacent transpositions: rho(s) Z_p rho(s)^{-1} = Z_{s(p)}.
    for (int t = 0; t + 1 < n; ++t) {
        const CMatrix& s = m.adjacent_transposition(t);
        for (int p = 0; p < n; ++p) {
            int sp = (p == t) ? t + 1 : (p == t + 1 ? t : p);
            for (int which = 0; which < 2; ++which) {
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        LinearSystem<Cyclotomic>::SparseRow row;
                        for (std::size_t c = 0; c < d; ++c) {
                            if (s.at(a, c) == zero) continue;
                            for (std::size_t e = 0; e < d; ++e) {
                                if (s.at(e, b) == zero) continue;  // rho(s)^{-1} = rho(s)
                                std::size_t col = which == 0 ? xid(p, c, e) : yid(p, c, e);
                                row.emplace_back(col, s.at(a, c) * s.at(e, b));
                            }
                        }
                        std::size_t col2 = which == 0 ? xid(sp, a, b) : yid(sp, a, b);
                        row.emplace_back(col2, Cyclotomic(Rational(-1), ell));
                        sys.add_row(std::move(row));
                    }
            }
        }
    }

    // R1 linearized
    for (int i = 0; i < n; ++i) {
        const CMatrix& x0 = m.x_op(i);
        const CMatrix& y0 = m.y_op(i);
        CMatrix ssum(d, d, zero);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            CMatrix sij = m.rho_perm(perm_transposition(n, i, j));
            for (long long mm = 0; mm < ell; ++mm)
                ssum = ssum + sij * m.rho_gamma(i, mm) * m.rho_gamma(j, -mm);
        }
        std::vector<CMatrix> gi;
        for (long long a = 0; a < ell; ++a) gi.push_back(m.rho_gamma(i, a));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                LinearSystem<Cyclotomic>::SparseRow row;
                for (std::size_t c = 0; c < d; ++c) {
                    if (!(x0.at(a, c) == zero)) row.emplace_back(yid(i, c, b), x0.at(a, c));
                    if (!(x0.at(c, b) == zero)) row.emplace_back(yid(i, a, c), -x0.at(c, b));
                    if (!(y0.at(c, b) == zero)) row.emplace_back(xid(i, a, c), y0.at(c, b));
                    if (!(y0.at(a, c) == zero)) row.emplace_back(xid(i, c, b), -y0.at(a, c));
                }
                if (!(ssum.at(a, b) == zero)) row.emplace_back(kcol, -half * ssum.at(a, b));
                for (long long aa = 1; aa < ell; ++aa)
                    if (!(gi[static_cast<std::size_t>(aa)].at(a, b) == zero))
                        row.emplace_back(ccol(aa), -gi[static_cast<std::size_t>(aa)].at(a, b));
                sys.add_row(std::move(row));
            }
    }

    // R2 linearized, all ordered pairs and all (u, v) in {x, y}^2
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            CMatrix sij = m.rho_perm(perm_transposition(n, i, j));
            for (char u : {'x', 'y'})
                for (char v : {'x', 'y'}) {
                    const CMatrix& u0 = (u == 'x') ? m.x_op(i) : m.y_op(i);
                    const CMatrix& v0 = (v == 'x') ? m.x_op(j) : m.y_op(j);
                    auto uid = [&](std::size_t a, std::size_t b) {
                        return (u == 'x') ? xid(i, a, b) : yid(i, a, b);
                    };
                    auto vid = [&](std::size_t a, std::size_t b) {
                        return (v == 'x') ? xid(j, a, b) : yid(j, a, b);
                    };
                    CMatrix tmat(d, d, zero);
                    bool any = false;
                    for (long long mm = 0; mm < ell; ++mm) {
                        Cyclotomic w = omega_weight(g, mm, u, v);
                        if (w.is_zero()) continue;
                        tmat = tmat + (sij * m.rho_gamma(i, mm) * m.rho_gamma(j, -mm)).scaled(w);
                        any = true;
                    }
                    for (std::size_t a = 0; a < d; ++a)
                        for (std::size_t b = 0; b < d; ++b) {
                            LinearSystem<Cyclotomic>::SparseRow row;
                            for (std::size_t c = 0; c < d; ++c) {
                                if (!(u0.at(a, c) == zero)) row.emplace_back(vid(c, b), u0.at(a, c));
                                if (!(u0.at(c, b) == zero)) row.emplace_back(vid(a, c), -u0.at(c, b));
                                if (!(v0.at(c, b) == zero)) row.emplace_back(uid(a, c), v0.at(c, b));
                                if (!(v0.at(a, c) == zero)) row.emplace_back(uid(c, b), -v0.at(a, c));
                            }
                            if (any && !(tmat.at(a, b) == zero))
                                row.emplace_back(kcol, half * tmat.at(a, b));
                            sys.add_row(std::move(row));
                        }
                }
        }

    DeformationReport out;

    // parameter constraints: echelon rows supported on the parameter block
    std::vector<std::vector<Cyclotomic>> pc = sys.rows_supported_from(nm);
    Matrix<Cyclotomic> pcm(pc.size(), static_cast<std::size_t>(ell), zero);
    for (std::size_t i = 0; i < pc.size(); ++i)
        for (std::size_t j = 0; j < pc[i].size(); ++j) pcm.at(i, j) = pc[i][j];
    out.tangent_kc = kernel_basis(pcm);
    out.codimension = static_cast<std::size_t>(ell) - out.tangent_kc.size();

    for (const auto& v : out.tangent_kc) {
        std::vector<Cyclotomic> kl;
        kl.push_back(v[0]);
        for (long long j = 0; j < ell; ++j) {
            Cyclotomic lj(Rational(0), ell);
            for (long long a = 1; a < ell; ++a) lj += v[static_cast<std::size_t>(a)] * g.character(j, a);
            kl.push_back(lj);
        }
        out.tangent_klambda.push_back(std::move(kl));
    }

    long long total_solution_dim = static_cast<long long>(ncols) - static_cast<long long>(sys.rank());
    out.solution_dim_at_zero = total_solution_dim - static_cast<long long>(out.tangent_kc.size());

    // trivial deformations: commutators with Gamma_N-equivariant endomorphisms
    LinearSystem<Cyclotomic> endo(dd);
    std::vector<CMatrix> gens;
    for (int t = 0; t + 1 < n; ++t) gens.push_back(m.adjacent_transposition(t));
    for (int q = 0; q < n; ++q) gens.push_back(m.rho_gamma(q, 1));
    for (const CMatrix& gen : gens) {
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                LinearSystem<Cyclotomic>::SparseRow row;
                for (std::size_t c = 0; c < d; ++c) {
                    if (!(gen.at(a, c) == zero)) row.emplace_back(c * d + b, gen.at(a, c));
                    if (!(gen.at(c, b) == zero)) row.emplace_back(a * d + c, -gen.at(c, b));
                }
                endo.add_row(std::move(row));
            }
    }
    std::vector<std::vector<Cyclotomic>> hbasis = endo.kernel();
    LinearSystem<Cyclotomic> trivial_span(nm);
    long long trivial_rank = 0;
    for (const auto& hv : hbasis) {
        CMatrix h(d, d, zero);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) h.at(a, b) = hv[a * d + b];
        LinearSystem<Cyclotomic>::SparseRow row;
        for (int p = 0; p < n; ++p) {
            CMatrix cx = h * m.x_op(p) - m.x_op(p) * h;
            CMatrix cy = h * m.y_op(p) - m.y_op(p) * h;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    if (!(cx.at(a, b) == zero)) row.emplace_back(xid(p, a, b), cx.at(a, b));
                    if (!(cy.at(a, b) == zero)) row.emplace_back(yid(p, a, b), cy.at(a, b));
                }
        }
        std::size_t before = trivial_span.rank();
        trivial_span.add_row(std::move(row));
        if (trivial_span.rank() > before) ++trivial_rank;
    }
    out.trivial_dim = trivial_rank;
    out.unique_mod_trivial = out.solution_dim_at_zero == trivial_rank;

    // representative corrections, one per tangent direction
    for (const auto& v : out.tangent_kc) {
        auto sol = sys.particular_solution(nm, v);
        if (!sol) throw errors::consistency("tangent vector does not extend to a correction");
        CorrectionSet cs;
        for (int p = 0; p < n; ++p) {
            CMatrix x1(d, d, zero), y1(d, d, zero);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    x1.at(a, b) = (*sol)[xid(p, a, b)];
                    y1.at(a, b) = (*sol)[yid(p, a, b)];
                }
            cs.x1.push_back(std::move(x1));
            cs.y1.push_back(std::move(y1));
        }
        out.representatives.push_back(std::move(cs));
    }
    return out;
}

bool same_row_space(const std::vector<std::vector<Cyclotomic>>& a,
                    const std::vector<std::vector<Cyclotomic>>& b, std::size_t cols) {
    return row_space_canonical(a, cols) == row_space_canonical(b, cols);
}

}  // namespace sra
