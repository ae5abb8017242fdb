#include "sra/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace sra {

Int parse_int(std::string_view s) {
    if (s.empty()) throw errors::parse("empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw errors::parse("bare sign is not an integer");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw errors::parse("invalid integer literal: " + std::string(s));
    return Int(std::string(s));
}

Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) throw errors::parse("zero denominator in rational literal: " + std::string(s));
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

long long euler_phi(long long n) {
    long long result = n, m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// Exact division of integer polynomials, remainder must vanish.
std::vector<Int> poly_divide_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    std::vector<Int> quot(num.size() - den.size() + 1, Int(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        Int c = rem[k + den.size() - 1] / den.back();
        quot[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
    }
    for (const Int& c : rem)
        if (c != 0) throw errors::consistency("inexact polynomial division");
    return quot;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(long long ell) {
    if (ell < 1) throw errors::precondition("cyclotomic order must be >= 1");
    if (ell == 1) return {Int(-1), Int(1)};
    std::vector<Int> p(static_cast<std::size_t>(ell) + 1, Int(0));
    p[0] = -1;
    p[static_cast<std::size_t>(ell)] = 1;
    for (long long d = 1; d < ell; ++d)
        if (ell % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
    return p;
}

namespace {

struct FieldTable {
    long long order = 1;
    long long phi = 1;
    std::vector<Int> poly;  // Phi_order
    // reduced[k] = coordinates of z^{phi+k} in the canonical basis, k = 0..phi-2
    std::vector<std::vector<Rational>> reduced;
};

const FieldTable& field_table(long long order) {
    static std::mutex mu;
    static std::map<long long, std::unique_ptr<FieldTable>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return *it->second;

    if (order < 1) throw errors::precondition("cyclotomic order must be >= 1");
    long long phi = euler_phi(order);
    if (phi > kMaxCyclotomicDegree)
        throw errors::order_limit("cyclotomic order " + std::to_string(order) +
                                  " has phi = " + std::to_string(phi) +
                                  " > " + std::to_string(kMaxCyclotomicDegree));
    auto t = std::make_unique<FieldTable>();
    t->order = order;
    t->phi = phi;
    t->poly = cyclotomic_polynomial(order);
    // z^phi = -sum_{j<phi} poly[j] z^j (Phi is monic); higher powers follow.
    std::vector<Rational> prev(static_cast<std::size_t>(phi));
    for (long long j = 0; j < phi; ++j) prev[static_cast<std::size_t>(j)] = Rational(-t->poly[static_cast<std::size_t>(j)]);
    t->reduced.push_back(prev);
    for (long long k = 1; k + phi <= 2 * phi - 2; ++k) {
        std::vector<Rational> next(static_cast<std::size_t>(phi), Rational(0));
        // multiply prev by z and fold the overflow through z^phi
        Rational top = prev[static_cast<std::size_t>(phi - 1)];
        for (long long j = phi - 1; j > 0; --j) next[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j - 1)];
        next[0] = Rational(0);
        for (long long j = 0; j < phi; ++j)
            next[static_cast<std::size_t>(j)] += top * t->reduced[0][static_cast<std::size_t>(j)];
        t->reduced.push_back(next);
        prev = std::move(next);
    }
    const FieldTable& ref = *t;
    cache.emplace(order, std::move(t));
    return ref;
}

}  // namespace

Cyclotomic::Cyclotomic() : order_(1), c_{Rational(0)} {}
Cyclotomic::Cyclotomic(long long v) : order_(1), c_{Rational(v)} {}
Cyclotomic::Cyclotomic(const Rational& v) : order_(1), c_{v} {}

Cyclotomic::Cyclotomic(const Rational& v, long long order) : order_(order) {
    const FieldTable& t = field_table(order);
    c_.assign(static_cast<std::size_t>(t.phi), Rational(0));
    c_[0] = v;
}

Cyclotomic Cyclotomic::from_coeffs(long long order, std::vector<Rational> coeffs) {
    const FieldTable& t = field_table(order);
    if (static_cast<long long>(coeffs.size()) != t.phi)
        throw errors::dimension_mismatch("cyclotomic coefficient vector must have length phi(order)");
    Cyclotomic r;
    r.order_ = order;
    r.c_ = std::move(coeffs);
    return r;
}

Cyclotomic Cyclotomic::zeta(long long order) { return zeta_power(order, 1); }

Cyclotomic Cyclotomic::zeta_power(long long order, long long k) {
    const FieldTable& t = field_table(order);
    long long e = ((k % order) + order) % order;
    Cyclotomic r;
    r.order_ = order;
    r.c_.assign(static_cast<std::size_t>(t.phi), Rational(0));
    if (e < t.phi) {
        r.c_[static_cast<std::size_t>(e)] = Rational(1);
        return r;
    }
    // z itself reduces to t.reduced[0] when phi = 1; multiply up from there
    Cyclotomic z;
    z.order_ = order;
    if (t.phi >= 2) {
        z.c_.assign(static_cast<std::size_t>(t.phi), Rational(0));
        z.c_[1] = Rational(1);
    } else {
        z.c_ = t.reduced[0];
    }
    Cyclotomic acc(Rational(1), order);
    for (long long i = 0; i < e; ++i) acc = acc * z;
    return acc;
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw errors::consistency("cyclotomic value is not rational: " + to_string());
    return c_[0];
}

bool Cyclotomic::is_integer() const {
    return is_rational() && denominator(c_[0]) == 1;
}

Cyclotomic Cyclotomic::promoted(long long order) const {
    if (order_ == order) return *this;
    if (is_rational()) {
        if (order == 1) return Cyclotomic(c_[0]);
        return Cyclotomic(c_[0], order);
    }
    throw errors::order_mismatch("cyclotomic orders " + std::to_string(order_) + " and " +
                                 std::to_string(order) + " are incompatible");
}

void Cyclotomic::check_compatible(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_ && a.order_ != 1 && b.order_ != 1)
        throw errors::order_mismatch("cyclotomic orders " + std::to_string(a.order_) + " and " +
                                     std::to_string(b.order_) + " differ");
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (Rational& v : r.c_) v = -v;
    return r;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    check_compatible(*this, o);
    long long ord = std::max(order_, o.order_);
    Cyclotomic a = promoted(ord), b = o.promoted(ord);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    check_compatible(*this, o);
    long long ord = std::max(order_, o.order_);
    Cyclotomic a = promoted(ord), b = o.promoted(ord);
    const FieldTable& t = field_table(ord);
    std::size_t phi = static_cast<std::size_t>(t.phi);
    std::vector<Rational> conv(2 * phi - 1, Rational(0));
    for (std::size_t i = 0; i < phi; ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < phi; ++j) {
            if (b.c_[j] == 0) continue;
            conv[i + j] += a.c_[i] * b.c_[j];
        }
    }
    Cyclotomic r;
    r.order_ = ord;
    r.c_.assign(phi, Rational(0));
    for (std::size_t i = 0; i < phi; ++i) r.c_[i] = conv[i];
    for (std::size_t k = phi; k < conv.size(); ++k) {
        if (conv[k] == 0) continue;
        const auto& row = t.reduced[k - phi];
        for (std::size_t j = 0; j < phi; ++j) r.c_[j] += conv[k] * row[j];
    }
    return r;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw errors::division_by_zero("inversion of zero cyclotomic value");
    if (order_ == 1 || is_rational()) {
        Cyclotomic r = *this;
        r.c_.assign(r.c_.size(), Rational(0));
        r.c_[0] = Rational(1) / rational_value();
        return r;
    }
    // extended Euclid in Q[x] against Phi_order: s * this + t * Phi = 1
    const FieldTable& tab = field_table(order_);
    using Poly = std::vector<Rational>;
    auto deg = [](const Poly& p) {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<long long>(i);
        return -1LL;
    };
    Poly r0(tab.poly.size());
    for (std::size_t i = 0; i < tab.poly.size(); ++i) r0[i] = Rational(tab.poly[i]);
    Poly r1 = c_;
    Poly s0{Rational(0)}, s1{Rational(1)};
    while (deg(r1) > 0) {
        long long d0 = deg(r0), d1 = deg(r1);
        Poly q(static_cast<std::size_t>(d0 - d1) + 1, Rational(0));
        Poly rem = r0;
        for (long long k = d0 - d1; k >= 0; --k) {
            Rational c = rem[static_cast<std::size_t>(k + d1)] / r1[static_cast<std::size_t>(d1)];
            q[static_cast<std::size_t>(k)] = c;
            for (long long j = 0; j <= d1; ++j)
                rem[static_cast<std::size_t>(k + j)] -= c * r1[static_cast<std::size_t>(j)];
        }
        // (r0, r1) <- (r1, rem);  (s0, s1) <- (s1, s0 - q*s1)
        Poly s2(std::max(s0.size(), q.size() + s1.size()), Rational(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (deg(r1) != 0)
        throw errors::consistency("gcd with cyclotomic polynomial is not constant");
    // deg(s1) < phi is guaranteed by the Euclid invariants; trailing storage is zero
    Rational lead = r1[0];
    std::vector<Rational> coeffs(static_cast<std::size_t>(tab.phi), Rational(0));
    for (std::size_t i = 0; i < s1.size(); ++i) {
        if (i < coeffs.size()) coeffs[i] = s1[i] / lead;
        else if (s1[i] != 0) throw errors::consistency("Bezout coefficient degree out of range");
    }
    return from_coeffs(order_, coeffs);
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

Cyclotomic Cyclotomic::conjugate() const {
    if (order_ == 1) return *this;
    Cyclotomic acc(Rational(0), order_);
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        Cyclotomic term = zeta_power(order_, -static_cast<long long>(k));
        acc += Cyclotomic(c_[k]) * term;
    }
    return acc;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    if (order_ == o.order_) return c_ == o.c_;
    if (is_rational() && o.is_rational()) return c_[0] == o.c_[0];
    return false;
}

std::complex<double> Cyclotomic::embed() const {
    std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(order_));
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = c_.size(); k-- > 0;)
        acc = acc * z + std::complex<double>(static_cast<double>(c_[k]), 0.0);
    return acc;
}

std::string Cyclotomic::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        if (!first) os << " + ";
        os << sra::to_string(c_[k]);
        if (k == 1) os << "*z";
        else if (k > 1) os << "*z^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace sra
