#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "sra/arith.hpp"

using namespace sra;

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rational random_rational(std::uint64_t& s) {
    long long num = static_cast<long long>(splitmix(s) % 41) - 20;
    long long den = 1 + static_cast<long long>(splitmix(s) % 7);
    return Rational(num) / Rational(den);
}

Cyclotomic random_cyclo(long long ell, std::uint64_t& s) {
    std::vector<Rational> coeffs;
    for (long long i = 0; i < euler_phi(ell); ++i) coeffs.push_back(random_rational(s));
    return Cyclotomic::from_coeffs(ell, std::move(coeffs));
}

}  // namespace

TEST_CASE("cyclotomic polynomials by divisor recursion") {
    CHECK(cyclotomic_polynomial(1) == std::vector<Int>{Int(-1), Int(1)});
    CHECK(cyclotomic_polynomial(2) == std::vector<Int>{Int(1), Int(1)});
    CHECK(cyclotomic_polynomial(4) == std::vector<Int>{Int(1), Int(0), Int(1)});
    CHECK(cyclotomic_polynomial(3) == std::vector<Int>{Int(1), Int(1), Int(1)});
    CHECK(cyclotomic_polynomial(6) == std::vector<Int>{Int(1), Int(-1), Int(1)});
    // phi(12) = 4: x^4 - x^2 + 1
    CHECK(cyclotomic_polynomial(12) == std::vector<Int>{Int(1), Int(0), Int(-1), Int(0), Int(1)});
}

TEST_CASE("rational parse and format") {
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(to_string(parse_rational("1/-2")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("a"), Error);
    // canonical invariants
    Rational r = parse_rational("-6/4");
    CHECK(denominator(r) == 2);
    CHECK(numerator(r) == -3);
}

TEST_CASE("field operations reduce canonically") {
    Cyclotomic z4 = Cyclotomic::zeta(4);
    CHECK(z4 * z4 == Cyclotomic(Rational(-1), 4));
    CHECK(z4.inverse() == -z4);
    CHECK(z4 * z4.inverse() == Cyclotomic(Rational(1), 4));

    std::uint64_t s = 7;
    for (int i = 0; i < 20; ++i) {
        Cyclotomic a = random_cyclo(5, s);
        CHECK(a * Cyclotomic(1) == a);
        CHECK(a + Cyclotomic(0) == a);
    }
    CHECK_THROWS_AS(Cyclotomic(Rational(0), 3).inverse(), Error);
    CHECK_THROWS_AS(Cyclotomic::zeta(3) + Cyclotomic::zeta(4), Error);
}

TEST_CASE("zeta powers wrap and reduce") {
    for (long long ell : {2, 3, 4, 5, 6, 8, 12}) {
        Cyclotomic z = Cyclotomic::zeta(ell);
        Cyclotomic acc(Rational(1), ell);
        for (long long k = 0; k < ell; ++k) {
            CHECK(acc == Cyclotomic::zeta_power(ell, k));
            acc = acc * z;
        }
        CHECK(acc == Cyclotomic(Rational(1), ell));
        // sum of all ell-th roots of unity vanishes
        Cyclotomic sum(Rational(0), ell);
        for (long long k = 0; k < ell; ++k) sum += Cyclotomic::zeta_power(ell, k);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("complex embedding") {
    CHECK(std::abs(Cyclotomic(1).embed() - std::complex<double>(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(Cyclotomic::zeta(4).embed() - std::complex<double>(0.0, 1.0)) < 1e-12);
    Cyclotomic w = Cyclotomic::zeta(3) + Cyclotomic::zeta_power(3, 2);
    CHECK(std::abs(w.embed() - std::complex<double>(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("embedding is multiplicative on random pairs") {
    std::uint64_t s = 99;
    for (int i = 0; i < 1000; ++i) {
        long long ell = 2 + static_cast<long long>(splitmix(s) % 5);
        Cyclotomic a = random_cyclo(ell, s), b = random_cyclo(ell, s);
        std::complex<double> lhs = (a * b).embed();
        std::complex<double> rhs = a.embed() * b.embed();
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("inversion is exact for random nonzero elements") {
    std::uint64_t s = 3;
    for (long long ell : {2, 3, 4, 5, 6}) {
        int done = 0;
        while (done < 100) {
            Cyclotomic a = random_cyclo(ell, s);
            if (a.is_zero()) continue;
            CHECK(a.inverse() * a == Cyclotomic(Rational(1), ell));
            ++done;
        }
    }
}

TEST_CASE("conjugation sends zeta to zeta^(l-1) and is multiplicative") {
    for (long long ell : {3, 4, 5, 8}) {
        Cyclotomic z = Cyclotomic::zeta(ell);
        CHECK(z.conjugate() == Cyclotomic::zeta_power(ell, ell - 1));
        std::uint64_t s = 11;
        for (int i = 0; i < 10; ++i) {
            Cyclotomic a = random_cyclo(ell, s), b = random_cyclo(ell, s);
            CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
            // a * conj(a) embeds to |a|^2, real and nonnegative
            std::complex<double> sq = (a * a.conjugate()).embed();
            CHECK(std::abs(sq.imag()) < 1e-9);
            CHECK(sq.real() > -1e-9);
        }
    }
}

TEST_CASE("rational arithmetic is associative and distributive") {
    std::uint64_t s = 500;
    for (int i = 0; i < 200; ++i) {
        Rational a = random_rational(s), b = random_rational(s), c = random_rational(s);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("orders with phi beyond the limit are rejected") {
    CHECK_THROWS_AS(Cyclotomic::zeta(101), Error);  // phi = 100
    try {
        Cyclotomic::zeta(101);
        FAIL("expected an order-limit error");
    } catch (const Error& e) {
        CHECK(e.kind() == "order_limit");
    }
    // phi(85) = 64 is the edge; it must work
    CHECK(Cyclotomic::zeta(85).order() == 85);
}

TEST_CASE("rational values promote across orders") {
    Cyclotomic half(Rational(1, 2));
    Cyclotomic z = Cyclotomic::zeta(6);
    CHECK((half * z).order() == 6);
    CHECK(half + Cyclotomic(Rational(1, 2)) == Cyclotomic(1));
}
