#include "sra/continuation.hpp"

#include <Eigen/Dense>

#include <numbers>
#include <sstream>

namespace sra {

namespace {

using CD = std::complex<double>;
using Mat = Eigen::MatrixXcd;

Mat embed(const CMatrix& m) {
    Mat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m.at(i, j).embed();
    return out;
}

struct System {
    // everything the residual/Jacobian needs, embedded once
    int n;
    std::size_t d;
    long long ell;
    std::vector<Mat> gammas;        // rho(gamma_q), q = 0..n-1
    std::vector<Mat> adj;           // adjacent transpositions
    std::vector<std::vector<Mat>> gamma_pow;  // [q][a] = rho(gamma_q^a)
    std::vector<Mat> r1_const;      // per i: I*0 later; sum_j sum_m rho(s_ij g_i^m g_j^-m)
    std::vector<std::vector<Mat>> r2_const;  // per unordered pair index: per (u,v) combo 0..3
    std::vector<std::pair<int, int>> pairs;
    CD zeta;

    std::size_t num_unknowns() const { return 2 * static_cast<std::size_t>(n) * d * d; }
    std::size_t xid(int p, std::size_t a, std::size_t b) const {
        return (static_cast<std::size_t>(p) * 2) * d * d + a * d + b;
    }
    std::size_t yid(int p, std::size_t a, std::size_t b) const {
        return (static_cast<std::size_t>(p) * 2 + 1) * d * d + a * d + b;
    }
};

System make_system(const InducedModule& m) {
    System s;
    s.n = m.num_slots();
    s.d = m.dim();
    s.ell = m.ell();
    s.zeta = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(s.ell));
    for (int q = 0; q < s.n; ++q) {
        std::vector<Mat> pows;
        for (long long a = 0; a < s.ell; ++a) pows.push_back(embed(m.rho_gamma(q, a)));
        s.gammas.push_back(pows[1]);
        s.gamma_pow.push_back(std::move(pows));
    }
    for (int t = 0; t + 1 < s.n; ++t) s.adj.push_back(embed(m.adjacent_transposition(t)));
    for (int i = 0; i < s.n; ++i) {
        Mat acc = Mat::Zero(static_cast<Eigen::Index>(s.d), static_cast<Eigen::Index>(s.d));
        for (int j = 0; j < s.n; ++j) {
            if (j == i) continue;
            Mat sij = embed(m.rho_perm(perm_transposition(s.n, i, j)));
            for (long long mm = 0; mm < s.ell; ++mm)
                acc += sij * s.gamma_pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(mm)] *
                       s.gamma_pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(
                           ((-mm % s.ell) + s.ell) % s.ell)];
        }
        s.r1_const.push_back(acc);
    }
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j) {
            s.pairs.emplace_back(i, j);
            Mat sij = embed(m.rho_perm(perm_transposition(s.n, i, j)));
            std::vector<Mat> combos;
            for (char u : {'x', 'y'})
                for (char v : {'x', 'y'}) {
                    Mat acc = Mat::Zero(static_cast<Eigen::Index>(s.d), static_cast<Eigen::Index>(s.d));
                    for (long long mm = 0; mm < s.ell; ++mm) {
                        CD w(0.0, 0.0);
                        if (u == 'x' && v == 'y') w = std::pow(s.zeta, static_cast<double>(mm));
                        else if (u == 'y' && v == 'x') w = -std::pow(s.zeta, static_cast<double>(-mm));
                        else continue;
                        acc += w * sij *
                               s.gamma_pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(mm)] *
                               s.gamma_pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(
                                   ((-mm % s.ell) + s.ell) % s.ell)];
                    }
                    combos.push_back(acc);
                }
            s.r2_const.push_back(std::move(combos));
        }
    return s;
}

// residual rows: Gamma-equivariance, S-equivariance, R1, R2(unordered)
void assemble(const System& s, const std::vector<Mat>& x, const std::vector<Mat>& y, CD k,
              const std::vector<CD>& c, Eigen::VectorXcd* f, Mat* jac) {
    const std::size_t d = s.d;
    const Eigen::Index dd = static_cast<Eigen::Index>(d);
    std::size_t rows = 0;
    std::size_t nequiv = static_cast<std::size_t>(s.n) * static_cast<std::size_t>(s.n) * 2 * d * d;
    std::size_t nsequiv = static_cast<std::size_t>(s.n < 2 ? 0 : (s.n - 1)) * static_cast<std::size_t>(s.n) * 2 * d * d;
    std::size_t nr1 = static_cast<std::size_t>(s.n) * d * d;
    std::size_t nr2 = s.pairs.size() * 4 * d * d;
    rows = nequiv + nsequiv + nr1 + nr2;
    f->setZero(static_cast<Eigen::Index>(rows));
    if (jac) jac->setZero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(s.num_unknowns()));

    std::size_t r = 0;
    auto put = [&](std::size_t row, std::size_t col, CD v) {
        if (jac) (*jac)(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += v;
    };

    // Gamma-equivariance: g_q Z_p g_q^{-1} - zeta^{±[p=q]} Z_p = 0 (g diagonal)
    for (int q = 0; q < s.n; ++q) {
        const Mat& g = s.gammas[static_cast<std::size_t>(q)];
        for (int p = 0; p < s.n; ++p)
            for (int which = 0; which < 2; ++which) {
                CD tw = (p == q) ? (which == 0 ? s.zeta : CD(1.0) / s.zeta) : CD(1.0);
                const Mat& z = which == 0 ? x[static_cast<std::size_t>(p)] : y[static_cast<std::size_t>(p)];
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        CD coef = g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) /
                                      g(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) -
                                  tw;
                        (*f)(static_cast<Eigen::Index>(r)) =
                            coef * z(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                        put(r, which == 0 ? s.xid(p, a, b) : s.yid(p, a, b), coef);
                        ++r;
                    }
            }
    }
    // S-equivariance: s Z_p s^{-1} - Z_{s(p)} = 0
    for (int t = 0; t + 1 < s.n; ++t) {
        const Mat& sm = s.adj[static_cast<std::size_t>(t)];
        for (int p = 0; p < s.n; ++p) {
            int sp = (p == t) ? t + 1 : (p == t + 1 ? t : p);
            for (int which = 0; which < 2; ++which) {
                const Mat& zp = which == 0 ? x[static_cast<std::size_t>(p)] : y[static_cast<std::size_t>(p)];
                const Mat& zsp = which == 0 ? x[static_cast<std::size_t>(sp)] : y[static_cast<std::size_t>(sp)];
                Mat res = sm * zp * sm - zsp;
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        (*f)(static_cast<Eigen::Index>(r)) =
                            res(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                        if (jac) {
                            for (std::size_t cc = 0; cc < d; ++cc)
                                for (std::size_t e = 0; e < d; ++e) {
                                    CD coef = sm(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(cc)) *
                                              sm(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(b));
                                    if (coef != CD(0.0))
                                        put(r, which == 0 ? s.xid(p, cc, e) : s.yid(p, cc, e), coef);
                                }
                            put(r, which == 0 ? s.xid(sp, a, b) : s.yid(sp, a, b), CD(-1.0));
                        }
                        ++r;
                    }
            }
        }
    }
    // R1: [x_i, y_i] - 1 - (k/2) S_i - sum_a c_a g_i^a = 0
    for (int i = 0; i < s.n; ++i) {
        Mat res = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)] -
                  y[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] -
                  Mat::Identity(dd, dd) - (k / 2.0) * s.r1_const[static_cast<std::size_t>(i)];
        for (long long a = 1; a < s.ell; ++a)
            res -= c[static_cast<std::size_t>(a - 1)] *
                   s.gamma_pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                (*f)(static_cast<Eigen::Index>(r)) =
                    res(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                if (jac) {
                    for (std::size_t cc = 0; cc < d; ++cc) {
                        put(r, s.yid(i, cc, b), x[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(cc)));
                        put(r, s.yid(i, a, cc), -x[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(cc), static_cast<Eigen::Index>(b)));
                        put(r, s.xid(i, a, cc), y[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(cc), static_cast<Eigen::Index>(b)));
                        put(r, s.xid(i, cc, b), -y[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(cc)));
                    }
                }
                ++r;
            }
    }
    // R2 (unordered pairs): [u_i, v_j] + (k/2) T_{uv} = 0
    for (std::size_t pi = 0; pi < s.pairs.size(); ++pi) {
        auto [i, j] = s.pairs[pi];
        int combo = 0;
        for (char u : {'x', 'y'})
            for (char v : {'x', 'y'}) {
                const Mat& ui = (u == 'x') ? x[static_cast<std::size_t>(i)] : y[static_cast<std::size_t>(i)];
                const Mat& vj = (v == 'x') ? x[static_cast<std::size_t>(j)] : y[static_cast<std::size_t>(j)];
                Mat res = ui * vj - vj * ui + (k / 2.0) * s.r2_const[pi][static_cast<std::size_t>(combo)];
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t b = 0; b < d; ++b) {
                        (*f)(static_cast<Eigen::Index>(r)) =
                            res(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                        if (jac) {
                            auto uidx = [&](std::size_t aa, std::size_t bb) {
                                return (u == 'x') ? s.xid(i, aa, bb) : s.yid(i, aa, bb);
                            };
                            auto vidx = [&](std::size_t aa, std::size_t bb) {
                                return (v == 'x') ? s.xid(j, aa, bb) : s.yid(j, aa, bb);
                            };
                            for (std::size_t cc = 0; cc < d; ++cc) {
                                put(r, vidx(cc, b), ui(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(cc)));
                                put(r, vidx(a, cc), -ui(static_cast<Eigen::Index>(cc), static_cast<Eigen::Index>(b)));
                                put(r, uidx(a, cc), vj(static_cast<Eigen::Index>(cc), static_cast<Eigen::Index>(b)));
                                put(r, uidx(cc, b), -vj(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(cc)));
                            }
                        }
                        ++r;
                    }
                ++combo;
            }
    }
}

std::vector<Mat> to_eigen(const std::vector<std::vector<CD>>& flat, std::size_t d) {
    std::vector<Mat> out;
    for (const auto& v : flat) {
        Mat m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v[a * d + b];
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<std::vector<CD>> from_eigen(const std::vector<Mat>& ms) {
    std::vector<std::vector<CD>> out;
    for (const Mat& m : ms) {
        std::vector<CD> v(static_cast<std::size_t>(m.rows() * m.cols()));
        for (Eigen::Index a = 0; a < m.rows(); ++a)
            for (Eigen::Index b = 0; b < m.cols(); ++b)
                v[static_cast<std::size_t>(a) * static_cast<std::size_t>(m.cols()) +
                  static_cast<std::size_t>(b)] = m(a, b);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

double relation_residual(const InducedModule& m, const std::vector<std::vector<CD>>& x,
                         const std::vector<std::vector<CD>>& y, CD k, const std::vector<CD>& c) {
    System s = make_system(m);
    std::vector<Mat> xe = to_eigen(x, s.d), ye = to_eigen(y, s.d);
    Eigen::VectorXcd f;
    assemble(s, xe, ye, k, c, &f, nullptr);
    return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
}

ContinuationResult newton_continue(const InducedModule& m, const std::vector<Cyclotomic>& direction,
                                   double step, double tolerance) {
    const long long ell = m.ell();
    if (direction.size() != static_cast<std::size_t>(ell))
        throw errors::dimension_mismatch("direction must have ell components (khat, chat_1..)");
    DeformationReport rep = first_order_deformation(m);

    // direction must lie in the computed tangent space
    std::vector<std::vector<Cyclotomic>> aug = rep.tangent_kc;
    aug.push_back(direction);
    if (row_space_canonical(aug, static_cast<std::size_t>(ell)).rows() != rep.tangent_kc.size())
        throw errors::precondition("direction does not lie in the first-order tangent space");

    // exact expansion of direction in the tangent basis -> combined correction
    Matrix<Cyclotomic> basis_mat(static_cast<std::size_t>(ell), rep.tangent_kc.size(),
                                 Cyclotomic(Rational(0), ell));
    for (std::size_t bi = 0; bi < rep.tangent_kc.size(); ++bi)
        for (long long j = 0; j < ell; ++j)
            basis_mat.at(static_cast<std::size_t>(j), bi) = rep.tangent_kc[bi][static_cast<std::size_t>(j)];
    Matrix<Cyclotomic> aug2(static_cast<std::size_t>(ell), rep.tangent_kc.size() + 1,
                            Cyclotomic(Rational(0), ell));
    for (long long j = 0; j < ell; ++j) {
        for (std::size_t bi = 0; bi < rep.tangent_kc.size(); ++bi)
            aug2.at(static_cast<std::size_t>(j), bi) = basis_mat.at(static_cast<std::size_t>(j), bi);
        aug2.at(static_cast<std::size_t>(j), rep.tangent_kc.size()) = direction[static_cast<std::size_t>(j)];
    }
    std::vector<std::size_t> piv = rref(aug2);
    std::vector<Cyclotomic> combo(rep.tangent_kc.size(), Cyclotomic(Rational(0), ell));
    for (std::size_t i = 0; i < piv.size(); ++i)
        if (piv[i] < rep.tangent_kc.size()) combo[piv[i]] = aug2.at(i, rep.tangent_kc.size());

    System s = make_system(m);
    const std::size_t d = s.d;
    std::vector<Mat> x0, y0, dx, dy;
    for (int p = 0; p < s.n; ++p) {
        x0.push_back(embed(m.x_op(p)));
        y0.push_back(embed(m.y_op(p)));
        CMatrix cx(d, d, Cyclotomic(Rational(0), ell)), cy(d, d, Cyclotomic(Rational(0), ell));
        for (std::size_t bi = 0; bi < rep.representatives.size(); ++bi) {
            cx = cx + rep.representatives[bi].x1[static_cast<std::size_t>(p)].scaled(combo[bi]);
            cy = cy + rep.representatives[bi].y1[static_cast<std::size_t>(p)].scaled(combo[bi]);
        }
        dx.push_back(embed(cx));
        dy.push_back(embed(cy));
    }

    std::vector<CD> c_base, c_dir;
    for (long long a = 1; a < ell; ++a) c_base.push_back(m.c0().at(a).embed());
    CD k_dir = direction[0].embed();
    for (long long a = 1; a < ell; ++a) c_dir.push_back(direction[static_cast<std::size_t>(a)].embed());

    ContinuationResult out;
    if (step == 0.0) {
        out.k = CD(0.0);
        out.c = c_base;
        out.x_ops = from_eigen(x0);
        out.y_ops = from_eigen(y0);
        Eigen::VectorXcd f;
        assemble(s, x0, y0, out.k, out.c, &f, nullptr);
        out.residual = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
        out.converged = out.residual < tolerance;
        return out;
    }

    const int max_iters = 40;
    for (int nsub = 1; nsub <= 16; nsub *= 2) {
        std::vector<Mat> x = x0, y = y0;
        bool ok = true;
        double cur = 0.0;
        int iters_total = 0;
        for (int ss = 1; ss <= nsub && ok; ++ss) {
            double target = step * static_cast<double>(ss) / static_cast<double>(nsub);
            double delta = step / static_cast<double>(nsub);
            // first-order predictor
            for (int p = 0; p < s.n; ++p) {
                x[static_cast<std::size_t>(p)] += delta * dx[static_cast<std::size_t>(p)];
                y[static_cast<std::size_t>(p)] += delta * dy[static_cast<std::size_t>(p)];
            }
            CD k = target * k_dir;
            std::vector<CD> c = c_base;
            for (std::size_t a = 0; a < c.size(); ++a) c[a] += target * c_dir[a];
            // Newton corrector
            bool conv = false;
            for (int it = 0; it < max_iters; ++it) {
                Eigen::VectorXcd f;
                Mat jac;
                assemble(s, x, y, k, c, &f, &jac);
                cur = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
                ++iters_total;
                if (cur < tolerance) {
                    conv = true;
                    break;
                }
                if (!std::isfinite(cur) || cur > 1e8) break;
                Eigen::VectorXcd deltau = jac.completeOrthogonalDecomposition().solve(-f);
                for (int p = 0; p < s.n; ++p)
                    for (std::size_t a = 0; a < d; ++a)
                        for (std::size_t b = 0; b < d; ++b) {
                            x[static_cast<std::size_t>(p)](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                                deltau(static_cast<Eigen::Index>(s.xid(p, a, b)));
                            y[static_cast<std::size_t>(p)](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                                deltau(static_cast<Eigen::Index>(s.yid(p, a, b)));
                        }
            }
            if (!conv) ok = false;
        }
        if (ok) {
            out.converged = true;
            out.residual = cur;
            out.iterations = iters_total;
            out.substeps = nsub;
            out.k = step * k_dir;
            out.c = c_base;
            for (std::size_t a = 0; a < out.c.size(); ++a) out.c[a] += step * c_dir[a];
            out.x_ops = from_eigen(x);
            out.y_ops = from_eigen(y);
            return out;
        }
    }
    out.converged = false;
    std::ostringstream os;
    os << "Newton iteration diverged: no solution found within " << max_iters
       << " iterations per substep (16 substeps tried) at step " << step;
    out.message = os.str();
    out.k = step * k_dir;
    out.c = c_base;
    for (std::size_t a = 0; a < out.c.size(); ++a) out.c[a] += step * c_dir[a];
    out.x_ops = from_eigen(x0);
    out.y_ops = from_eigen(y0);
    Eigen::VectorXcd f;
    std::vector<Mat> xe = x0, ye = y0;
    assemble(s, xe, ye, out.k, out.c, &f, nullptr);
    out.residual = f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
    return out;
}

}  // namespace sra
