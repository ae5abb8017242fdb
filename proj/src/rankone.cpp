#include "sra/rankone.hpp"

#include <sstream>

namespace sra {

namespace {

std::string vec_str(const RootVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

}  // namespace

Cyclotomic SimpleModule::char_gamma(const CyclicGroup& g, long long a) const {
    Cyclotomic acc(Rational(0), ell);
    for (std::size_t j = 0; j < alpha.size(); ++j)
        acc += Cyclotomic(Rational(alpha[j])) * g.character(static_cast<long long>(j), a);
    return acc;
}

SimpleModule build_simple(const CyclicGroup& group, const LambdaVector& lambda, const RootVec& alpha) {
    const long long ell = group.order();
    if (lambda.ell != ell) throw errors::order_mismatch("lambda order differs from group order");
    if (static_cast<long long>(alpha.size()) != ell)
        throw errors::dimension_mismatch("dimension vector length differs from group order");

    Quiver quiver = mckay_quiver(group);
    if (is_imaginary(quiver, alpha))
        throw errors::classification("dimension vector " + vec_str(alpha) +
                                     " is an imaginary root; no simple module exists for it");
    auto deco = decompose_positive_real(quiver, alpha);
    if (!deco || tits_form(quiver, alpha) != 1)
        throw errors::classification("dimension vector " + vec_str(alpha) +
                                     " is not a positive real root");
    if (!lambda_dot(lambda, alpha).is_zero())
        throw errors::classification("lambda . alpha != 0 for " + vec_str(alpha) +
                                     "; alpha is not in Sigma_lambda");

    SimpleModule m;
    m.ell = ell;
    m.alpha = alpha;
    m.j0 = deco->j0;
    m.dim = deco->length + deco->n * ell;

    // string coefficients a_{m+1} = a_m - lambda_{(j0+m) mod l}
    m.string.push_back(Cyclotomic(Rational(0), ell));
    for (long long k = 0; k < m.dim; ++k)
        m.string.push_back(m.string.back() - lambda.at(m.j0 + k));
    if (!m.string.back().is_zero())
        throw errors::consistency("string did not close: lambda . alpha != 0");
    for (long long k = 1; k < m.dim; ++k) {
        if (m.string[static_cast<std::size_t>(k)].is_zero())
            throw errors::classification(
                "intermediate string coefficient vanishes at position " + std::to_string(k) +
                ": " + vec_str(alpha) + " splits into two members of R_lambda and is not in Sigma_lambda");
    }

    const std::size_t d = static_cast<std::size_t>(m.dim);
    m.X = CMatrix(d, d, Cyclotomic(Rational(0), ell));
    m.Y = CMatrix(d, d, Cyclotomic(Rational(0), ell));
    m.G = CMatrix(d, d, Cyclotomic(Rational(0), ell));
    for (std::size_t k = 0; k < d; ++k) {
        if (k + 1 < d) m.X.at(k + 1, k) = Cyclotomic(Rational(1), ell);
        if (k > 0) m.Y.at(k - 1, k) = m.string[k];
        m.G.at(k, k) = group.zeta(m.character_of(static_cast<long long>(k)));
    }
    return m;
}

bool check_relations(const SimpleModule& m, const LambdaVector& lambda) {
    if (lambda.ell != m.ell) return false;
    const std::size_t d = static_cast<std::size_t>(m.dim);
    CyclicGroup group(m.ell);
    const Cyclotomic zeta = group.zeta();

    CMatrix comm = m.X * m.Y - m.Y * m.X;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Cyclotomic want = (i == j) ? lambda.at(m.character_of(static_cast<long long>(i)))
                                       : Cyclotomic(Rational(0), m.ell);
            if (comm.at(i, j) != want) return false;
        }

    CMatrix ginv(d, d, Cyclotomic(Rational(0), m.ell));
    for (std::size_t i = 0; i < d; ++i) ginv.at(i, i) = m.G.at(i, i).inverse();
    if (!(m.G * m.X * ginv == m.X.scaled(zeta))) return false;
    if (!(m.G * m.Y * ginv == m.Y.scaled(zeta.inverse()))) return false;

    CMatrix gpow = Matrix<Cyclotomic>::identity(d);
    for (long long k = 0; k < m.ell; ++k) gpow = gpow * m.G;
    if (!(gpow == Matrix<Cyclotomic>::identity(d))) return false;

    // Gamma-isotypic multiplicities (eigenvalue counts of G) must reproduce alpha.
    std::vector<long long> counts(static_cast<std::size_t>(m.ell), 0);
    for (std::size_t i = 0; i < d; ++i) {
        bool matched = false;
        for (long long j = 0; j < m.ell && !matched; ++j) {
            if (m.G.at(i, i) == group.zeta(j)) {
                ++counts[static_cast<std::size_t>(j)];
                matched = true;
            }
        }
        if (!matched) return false;
    }
    for (std::size_t j = 0; j < counts.size(); ++j)
        if (counts[j] != m.alpha[j]) return false;

    // string boundary conditions
    if (!m.string.front().is_zero() || !m.string.back().is_zero()) return false;
    return true;
}

namespace {

void require_compatible(const SimpleModule& a, const SimpleModule& b, const LambdaVector& lambda) {
    if (a.ell != b.ell || lambda.ell != a.ell)
        throw errors::order_mismatch("modules live over different (ell, lambda)");
}

}  // namespace

long long ext1_dim(const SimpleModule& m1, const SimpleModule& m2, const LambdaVector& lambda) {
    require_compatible(m1, m2, lambda);
    const long long ell = m1.ell;
    const std::size_t d1 = static_cast<std::size_t>(m1.dim), d2 = static_cast<std::size_t>(m2.dim);
    const std::size_t nm = d1 * d2;
    CyclicGroup group(ell);
    const Cyclotomic zero(Rational(0), ell);

    // unknowns: xi_X entries (row-major), then xi_Y entries
    LinearSystem<Cyclotomic> sys(2 * nm);
    auto xid = [&](std::size_t a, std::size_t b) { return a * d2 + b; };
    auto yid = [&](std::size_t a, std::size_t b) { return nm + a * d2 + b; };

    // G_1 xi G_2^{-1} = zeta^{±1} xi;  G diagonal, so entrywise scalar rows
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b) {
            Cyclotomic ratio = m1.G.at(a, a) / m2.G.at(b, b);
            Cyclotomic cx = ratio - group.zeta(1);
            Cyclotomic cy = ratio - group.zeta(-1);
            if (!cx.is_zero()) sys.add_row({{xid(a, b), cx}});
            if (!cy.is_zero()) sys.add_row({{yid(a, b), cy}});
        }

    // X_1 xi_Y + xi_X Y_2 - Y_1 xi_X - xi_Y X_2 = 0
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b) {
            LinearSystem<Cyclotomic>::SparseRow row;
            for (std::size_t c = 0; c < d1; ++c) {
                if (!(m1.X.at(a, c) == zero)) row.emplace_back(yid(c, b), m1.X.at(a, c));
                if (!(m1.Y.at(a, c) == zero)) row.emplace_back(xid(c, b), -m1.Y.at(a, c));
            }
            for (std::size_t c = 0; c < d2; ++c) {
                if (!(m2.Y.at(c, b) == zero)) row.emplace_back(xid(a, c), m2.Y.at(c, b));
                if (!(m2.X.at(c, b) == zero)) row.emplace_back(yid(a, c), -m2.X.at(c, b));
            }
            sys.add_row(std::move(row));
        }

    long long cocycles = static_cast<long long>(2 * nm) - static_cast<long long>(sys.rank());

    // coboundaries from equivariant h: G_1 h G_2^{-1} = h
    std::vector<std::pair<std::size_t, std::size_t>> hbasis;
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b)
            if (m1.G.at(a, a) == m2.G.at(b, b)) hbasis.emplace_back(a, b);
    LinearSystem<Cyclotomic> img(2 * nm);
    std::size_t before = 0;
    long long rank_cob = 0;
    for (auto [ha, hb] : hbasis) {
        LinearSystem<Cyclotomic>::SparseRow row;
        // xi_X = X_1 h - h X_2 with h = E_{ha,hb}
        for (std::size_t a = 0; a < d1; ++a)
            if (!(m1.X.at(a, ha) == zero)) row.emplace_back(xid(a, hb), m1.X.at(a, ha));
        for (std::size_t b = 0; b < d2; ++b)
            if (!(m2.X.at(hb, b) == zero)) row.emplace_back(xid(ha, b), -m2.X.at(hb, b));
        for (std::size_t a = 0; a < d1; ++a)
            if (!(m1.Y.at(a, ha) == zero)) row.emplace_back(yid(a, hb), m1.Y.at(a, ha));
        for (std::size_t b = 0; b < d2; ++b)
            if (!(m2.Y.at(hb, b) == zero)) row.emplace_back(yid(ha, b), -m2.Y.at(hb, b));
        before = img.rank();
        img.add_row(std::move(row));
        if (img.rank() > before) ++rank_cob;
    }
    return cocycles - rank_cob;
}

long long hom_dim(const SimpleModule& m1, const SimpleModule& m2) {
    if (m1.ell != m2.ell) throw errors::order_mismatch("modules live over different orders");
    const std::size_t d1 = static_cast<std::size_t>(m1.dim), d2 = static_cast<std::size_t>(m2.dim);
    const Cyclotomic zero(Rational(0), m1.ell);
    LinearSystem<Cyclotomic> sys(d1 * d2);
    auto hid = [&](std::size_t a, std::size_t b) { return a * d2 + b; };
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b)
            if (!(m1.G.at(a, a) == m2.G.at(b, b)))
                sys.add_row({{hid(a, b), Cyclotomic(Rational(1), m1.ell)}});
    for (std::size_t a = 0; a < d1; ++a)
        for (std::size_t b = 0; b < d2; ++b) {
            LinearSystem<Cyclotomic>::SparseRow rx, ry;
            for (std::size_t c = 0; c < d1; ++c) {
                if (!(m1.X.at(a, c) == zero)) rx.emplace_back(hid(c, b), m1.X.at(a, c));
                if (!(m1.Y.at(a, c) == zero)) ry.emplace_back(hid(c, b), m1.Y.at(a, c));
            }
            for (std::size_t c = 0; c < d2; ++c) {
                if (!(m2.X.at(c, b) == zero)) rx.emplace_back(hid(a, c), -m2.X.at(c, b));
                if (!(m2.Y.at(c, b) == zero)) ry.emplace_back(hid(a, c), -m2.Y.at(c, b));
            }
            sys.add_row(std::move(rx));
            sys.add_row(std::move(ry));
        }
    return static_cast<long long>(d1 * d2) - static_cast<long long>(sys.rank());
}

std::vector<Cyclotomic> central_with_traces(const CyclicGroup& group,
                                            const std::vector<SimpleModule>& simples,
                                            const std::vector<Cyclotomic>& targets) {
    const long long ell = group.order();
    const std::size_t r = simples.size();
    if (targets.size() != r) throw errors::dimension_mismatch("one target per simple required");

    // In DFT coordinates w_j (the scalar by which Z acts on V_j) the system is
    // integral: sum_j alpha_{ij} w_j = targets_i.
    Matrix<Cyclotomic> aug(r, static_cast<std::size_t>(ell) + 1, Cyclotomic(Rational(0), ell));
    for (std::size_t i = 0; i < r; ++i) {
        if (simples[i].ell != ell) throw errors::order_mismatch("simple module order differs from group");
        for (long long j = 0; j < ell; ++j)
            aug.at(i, static_cast<std::size_t>(j)) =
                Cyclotomic(Rational(simples[i].alpha[static_cast<std::size_t>(j)]), ell);
        aug.at(i, static_cast<std::size_t>(ell)) = targets[i].promoted(ell);
    }
    Matrix<Cyclotomic> coeff(r, static_cast<std::size_t>(ell), Cyclotomic(Rational(0), ell));
    for (std::size_t i = 0; i < r; ++i)
        for (long long j = 0; j < ell; ++j)
            coeff.at(i, static_cast<std::size_t>(j)) = aug.at(i, static_cast<std::size_t>(j));
    if (rank(coeff) < r)
        throw errors::singular_system("dimension vectors of the simples are linearly dependent");

    std::vector<std::size_t> pivots = rref(aug);
    // free modes zero: read pivot values straight off the RREF
    std::vector<Cyclotomic> w(static_cast<std::size_t>(ell), Cyclotomic(Rational(0), ell));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] >= static_cast<std::size_t>(ell))
            throw errors::singular_system("inconsistent trace requirements");
        w[pivots[i]] = aug.at(i, static_cast<std::size_t>(ell));
    }
    // u_a = (1/ell) sum_j w_j zeta^{-ja}
    std::vector<Cyclotomic> u;
    const Rational inv_ell(1, ell);
    for (long long a = 0; a < ell; ++a) {
        Cyclotomic acc(Rational(0), ell);
        for (long long j = 0; j < ell; ++j)
            acc += w[static_cast<std::size_t>(j)] * group.character(j, -a);
        u.push_back(Cyclotomic(inv_ell) * acc);
    }
    return u;
}

}  // namespace sra
