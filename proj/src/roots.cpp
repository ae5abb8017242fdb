#include "sra/roots.hpp"

#include <algorithm>
#include <set>

namespace sra {

Quiver mckay_quiver(const CyclicGroup& group) {
    const long long ell = group.order();
    Quiver q;
    q.num_vertices = static_cast<std::size_t>(ell);
    q.trivial_vertex = 0;
    q.adjacency.assign(q.num_vertices, std::vector<long long>(q.num_vertices, 0));
    const Rational inv_ell(1, ell);
    for (long long i = 0; i < ell; ++i) {
        for (long long j = 0; j < ell; ++j) {
            // <chi_L * chi_i, chi_j> with chi_L(g^a) = zeta^a + zeta^{-a}
            Cyclotomic acc(Rational(0), ell);
            for (long long a = 0; a < ell; ++a) {
                Cyclotomic chi_l = group.zeta(a) + group.zeta(-a);
                acc += chi_l * group.character(i, a) * group.character(j, -a);
            }
            acc = Cyclotomic(inv_ell) * acc;
            if (!acc.is_integer())
                throw errors::consistency("McKay multiplicity is not an integer");
            q.adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<long long>(numerator(acc.rational_value()));
        }
    }
    return q;
}

long long tits_form(const Quiver& q, const RootVec& alpha) {
    if (alpha.size() != q.num_vertices)
        throw errors::dimension_mismatch("root vector length differs from quiver size");
    long long val = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) val += alpha[i] * alpha[i];
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::size_t j = i + 1; j < alpha.size(); ++j)
            val -= q.adjacency[i][j] * alpha[i] * alpha[j];
    return val;
}

bool is_positive(const RootVec& alpha) {
    bool any = false;
    for (long long v : alpha) {
        if (v < 0) return false;
        if (v > 0) any = true;
    }
    return any;
}

bool is_imaginary(const Quiver& q, const RootVec& alpha) {
    if (alpha.size() != q.num_vertices || alpha.empty()) return false;
    long long m = alpha[0];
    if (m == 0) return false;
    for (long long v : alpha)
        if (v != m) return false;
    return true;
}

Cyclotomic lambda_dot(const LambdaVector& lambda, const RootVec& alpha) {
    if (static_cast<long long>(alpha.size()) != lambda.ell)
        throw errors::dimension_mismatch("root vector length differs from lambda length");
    Cyclotomic acc(Rational(0), lambda.ell);
    for (std::size_t i = 0; i < alpha.size(); ++i)
        acc += Cyclotomic(Rational(alpha[i])) * lambda.values[i];
    return acc;
}

std::optional<IntervalDecomposition> decompose_positive_real(const Quiver& q, const RootVec& alpha) {
    if (alpha.size() != q.num_vertices) return std::nullopt;
    const long long ell = static_cast<long long>(alpha.size());
    long long n = *std::min_element(alpha.begin(), alpha.end());
    if (n < 0) return std::nullopt;
    std::vector<long long> ind(alpha.size());
    long long t = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        ind[i] = alpha[i] - n;
        if (ind[i] != 0 && ind[i] != 1) return std::nullopt;
        t += ind[i];
    }
    if (t == 0 || t == ell) return std::nullopt;  // zero or imaginary
    for (long long s = 0; s < ell; ++s) {
        if (ind[static_cast<std::size_t>(s)] != 1) continue;
        bool ok = true;
        for (long long k = 0; k < ell; ++k) {
            bool inside = k < t;
            if (ind[static_cast<std::size_t>((s + k) % ell)] != (inside ? 1 : 0)) {
                ok = false;
                break;
            }
        }
        if (ok) return IntervalDecomposition{s, t, n};
    }
    return std::nullopt;
}

std::vector<RootVec> r_lambda(const Quiver& q, const LambdaVector& lambda) {
    const std::size_t nu = q.num_vertices;
    if (static_cast<long long>(nu) != lambda.ell)
        throw errors::dimension_mismatch("quiver size differs from lambda length");
    Cyclotomic ld(Rational(0), lambda.ell);
    for (const Cyclotomic& v : lambda.values) ld += v;
    if (ld.is_zero())
        throw errors::precondition("lambda . delta = 0: the classification requires Tr|_R Lambda != 0");

    constexpr long long kBound = 6;
    double combos = 1;
    for (std::size_t i = 0; i + 1 < nu; ++i) combos *= 2 * kBound + 1;
    if (combos > 1e8)
        throw errors::limit("finite-root enumeration too large for quiver of this size");

    std::set<RootVec> result;
    RootVec beta(nu, 0);
    // iterate over all beta with beta[trivial_vertex] = 0, |beta_i| <= 6
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < nu; ++i)
        if (i != q.trivial_vertex) free_idx.push_back(i);
    std::vector<long long> counter(free_idx.size(), -kBound);
    bool done = free_idx.empty();
    while (!done) {
        for (std::size_t i = 0; i < free_idx.size(); ++i) beta[free_idx[i]] = counter[i];
        if (tits_form(q, beta) == 1) {
            Cyclotomic num = lambda_dot(lambda, beta);
            Cyclotomic nval = -(num / ld);
            if (nval.is_integer()) {
                long long n = static_cast<long long>(numerator(nval.rational_value()));
                RootVec alpha = beta;
                for (long long& v : alpha) v += n;
                result.insert(alpha);
                for (long long& v : alpha) v = -v;
                result.insert(alpha);
            }
        }
        // advance counter
        std::size_t pos = 0;
        while (pos < counter.size()) {
            if (++counter[pos] <= kBound) break;
            counter[pos] = -kBound;
            ++pos;
        }
        done = pos == counter.size();
    }
    return {result.begin(), result.end()};
}

std::vector<RootVec> sigma_lambda(const Quiver& q, const std::vector<RootVec>& r) {
    std::set<RootVec> all(r.begin(), r.end());
    for (const RootVec& a : r) {
        RootVec neg = a;
        for (long long& v : neg) v = -v;
        if (!all.count(neg))
            throw errors::precondition("input root set is not closed under negation");
    }
    std::vector<RootVec> positive;
    for (const RootVec& a : all)
        if (is_positive(a)) positive.push_back(a);
    std::set<RootVec> pos_set(positive.begin(), positive.end());
    std::vector<RootVec> basis;
    for (const RootVec& a : positive) {
        bool decomposable = false;
        for (const RootVec& b : positive) {
            RootVec diff(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
            if (pos_set.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) basis.push_back(a);
    }
    std::sort(basis.begin(), basis.end());
    (void)q;
    return basis;
}

}  // namespace sra
