#include "sra/symcomb.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sra {

Partition::Partition(std::vector<long long> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw errors::precondition("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw errors::precondition("partition parts must be weakly decreasing");
    }
}

long long Partition::size() const {
    long long n = 0;
    for (long long p : parts) n += p;
    return n;
}

std::string Partition::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ',';
        os << parts[i];
    }
    os << ')';
    return os.str();
}

Int dim_irrep(const Partition& mu) {
    const long long n = mu.size();
    if (n == 0) return Int(1);
    // column lengths
    std::vector<long long> cols(static_cast<std::size_t>(mu.parts[0]), 0);
    for (long long p : mu.parts)
        for (long long j = 0; j < p; ++j) ++cols[static_cast<std::size_t>(j)];
    Int hooks(1);
    for (std::size_t i = 0; i < mu.parts.size(); ++i)
        for (long long j = 0; j < mu.parts[i]; ++j) {
            long long arm = mu.parts[i] - j - 1;
            long long leg = cols[static_cast<std::size_t>(j)] - static_cast<long long>(i) - 1;
            hooks *= Int(arm + leg + 1);
        }
    Int fact(1);
    for (long long k = 2; k <= n; ++k) fact *= Int(k);
    Int d = fact / hooks;
    if (d * hooks != fact) throw errors::consistency("hook length formula did not divide evenly");
    return d;
}

long long content(const Partition& mu) {
    long long c = 0;
    for (std::size_t i = 0; i < mu.parts.size(); ++i)
        for (long long j = 0; j < mu.parts[i]; ++j) c += j - static_cast<long long>(i);
    return c;
}

long long num_corners(const Partition& mu) {
    std::set<long long> values(mu.parts.begin(), mu.parts.end());
    return static_cast<long long>(values.size());
}

bool is_rectangle(const Partition& mu) { return num_corners(mu) == 1; }

Rational transposition_character(const Partition& mu) {
    const long long n = mu.size();
    if (n < 2) throw errors::precondition("transposition character needs N >= 2");
    return Rational(dim_irrep(mu) * Int(content(mu)), Int(n) * Int(n - 1) / 2);
}

namespace {

// Border strips of size k correspond to cells (i, j) with hook length k;
// removing the strip for cell (i, j) reshuffles rows i..i+leg.
Int mn_rec(std::vector<long long> shape, std::vector<long long> cycles) {
    while (!shape.empty() && shape.back() == 0) shape.pop_back();
    if (cycles.empty()) return shape.empty() ? Int(1) : Int(0);
    long long k = cycles.back();
    cycles.pop_back();
    Int total(0);
    std::vector<long long> cols(shape.empty() ? 0 : static_cast<std::size_t>(shape[0]), 0);
    for (long long p : shape)
        for (long long j = 0; j < p; ++j) ++cols[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < shape.size(); ++i) {
        for (long long j = 0; j < shape[i]; ++j) {
            long long arm = shape[i] - j - 1;
            long long leg = cols[static_cast<std::size_t>(j)] - static_cast<long long>(i) - 1;
            if (arm + leg + 1 != k) continue;
            // remove the border strip determined by this hook: rows i..i+leg
            std::vector<long long> s = shape;
            long long bottom = static_cast<long long>(i) + leg;
            // after removal, row r (i <= r < bottom) becomes old row r+1 minus 1... standard:
            for (long long r = static_cast<long long>(i); r < bottom; ++r)
                s[static_cast<std::size_t>(r)] = shape[static_cast<std::size_t>(r + 1)] - 1;
            s[static_cast<std::size_t>(bottom)] = j;
            // validity: s must be weakly decreasing and nonnegative
            bool ok = true;
            for (std::size_t r = 0; r < s.size(); ++r) {
                if (s[r] < 0) ok = false;
                if (r > 0 && s[r] > s[r - 1]) ok = false;
            }
            if (!ok) continue;
            Int sign = (leg % 2 == 0) ? Int(1) : Int(-1);
            total += sign * mn_rec(s, cycles);
        }
    }
    return total;
}

}  // namespace

Int mn_character(const Partition& mu, const Partition& cycle_type) {
    if (mu.size() != cycle_type.size())
        throw errors::dimension_mismatch("partition and cycle type must have equal size");
    std::vector<long long> cycles = cycle_type.parts;
    std::sort(cycles.begin(), cycles.end());  // process largest first (popped from back)
    return mn_rec(mu.parts, cycles);
}

std::vector<Partition> partitions_of(long long n) {
    std::vector<Partition> out;
    std::vector<long long> cur;
    auto rec = [&](auto&& self, long long remaining, long long maxpart) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (long long p = std::min(remaining, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

}  // namespace sra
