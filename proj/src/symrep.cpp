#include "sra/symrep.hpp"

#include <algorithm>
#include <map>

namespace sra {

Perm perm_identity(int n) {
    Perm p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw errors::dimension_mismatch("permutation degree mismatch");
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

Perm perm_inverse(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return r;
}

Perm perm_transposition(int n, int i, int j) {
    Perm p = perm_identity(n);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
    return p;
}

int perm_sign(const Perm& a) {
    std::vector<bool> seen(a.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (seen[i]) continue;
        std::size_t j = i, len = 0;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(a[j]);
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

std::vector<int> adjacent_word(const Perm& a) {
    // bubble sort: each swap right-multiplies by s_k, so
    // a o s_{w_1} o ... o s_{w_m} = id and a = s_{w_m} o ... o s_{w_1}
    Perm cur = a;
    std::vector<int> swaps;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < cur.size(); ++k) {
            if (cur[k] > cur[k + 1]) {
                std::swap(cur[k], cur[k + 1]);
                swaps.push_back(static_cast<int>(k));
                changed = true;
            }
        }
    }
    std::reverse(swaps.begin(), swaps.end());
    return swaps;
}

std::vector<std::vector<std::pair<int, int>>> standard_tableaux(const Partition& mu) {
    const int n = static_cast<int>(mu.size());
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<int> filled(mu.parts.size(), 0);  // cells filled per row
    std::vector<std::pair<int, int>> pos(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int entry) -> void {
        if (entry == n) {
            out.push_back(pos);
            return;
        }
        for (std::size_t row = 0; row < mu.parts.size(); ++row) {
            if (filled[row] >= mu.parts[row]) continue;
            if (row > 0 && filled[row] >= filled[row - 1]) continue;  // must stay staircase
            pos[static_cast<std::size_t>(entry)] = {static_cast<int>(row), filled[row]};
            ++filled[row];
            self(self, entry + 1);
            --filled[row];
        }
    };
    rec(rec, 0);
    return out;
}

SeminormalRep::SeminormalRep(const Partition& mu) : shape_(mu), n_(static_cast<std::size_t>(mu.size())) {
    auto tabs = standard_tableaux(mu);
    dim_ = tabs.size();
    if (dim_ == 0) throw errors::consistency("no standard tableaux for shape " + mu.to_string());
    std::map<std::vector<std::pair<int, int>>, std::size_t> index;
    for (std::size_t t = 0; t < tabs.size(); ++t) index[tabs[t]] = t;

    for (std::size_t k = 0; k + 1 < n_; ++k) {
        Matrix<Rational> m(dim_, dim_, Rational(0));
        for (std::size_t t = 0; t < tabs.size(); ++t) {
            auto [r1, c1] = tabs[t][k];
            auto [r2, c2] = tabs[t][k + 1];
            if (r1 == r2) {
                m.at(t, t) = Rational(1);
                continue;
            }
            if (c1 == c2) {
                m.at(t, t) = Rational(-1);
                continue;
            }
            // axial distance from entry k to entry k+1
            long long d = (c2 - r2) - (c1 - r1);
            auto swapped = tabs[t];
            std::swap(swapped[k], swapped[k + 1]);
            std::size_t t2 = index.at(swapped);
            Rational inv_d = Rational(1) / Rational(d);
            m.at(t, t) = inv_d;
            // the member with negative axial distance carries coefficient 1
            if (d < 0) m.at(t2, t) = Rational(1);
            else m.at(t2, t) = Rational(1) - inv_d * inv_d;
        }
        adj_.push_back(std::move(m));
    }
}

Matrix<Rational> SeminormalRep::matrix(const Perm& sigma) const {
    if (sigma.size() != n_) throw errors::dimension_mismatch("permutation degree differs from rep degree");
    Matrix<Rational> m = Matrix<Rational>::identity(dim_);
    for (int k : adjacent_word(sigma)) m = m * adj_[static_cast<std::size_t>(k)];
    return m;
}

}  // namespace sra
