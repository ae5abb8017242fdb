#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sra/arith.hpp"
#include "sra/linalg.hpp"

using namespace sra;

namespace {

std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Matrix<Rational> random_matrix(std::size_t rows, std::size_t cols, std::uint64_t& s, int density) {
    Matrix<Rational> m(rows, cols, Rational(0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (static_cast<int>(splitmix(s) % 10) < density)
                m.at(i, j) = Rational(static_cast<long long>(splitmix(s) % 11) - 5);
    return m;
}

}  // namespace

TEST_CASE("rref and kernel on a known system") {
    // x + y + z = 0, x - z = 0  =>  kernel spanned by (1, -2, 1)
    Matrix<Rational> m(2, 3, Rational(0));
    m.at(0, 0) = Rational(1);
    m.at(0, 1) = Rational(1);
    m.at(0, 2) = Rational(1);
    m.at(1, 0) = Rational(1);
    m.at(1, 2) = Rational(-1);
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] == Rational(1));
    CHECK(ker[0][1] == Rational(-2));
    CHECK(ker[0][2] == Rational(1));
    CHECK(rank(m) == 2);
}

TEST_CASE("kernel vectors annihilate the matrix, randomly") {
    std::uint64_t s = 42;
    for (int t = 0; t < 40; ++t) {
        std::size_t rows = 1 + splitmix(s) % 6, cols = 1 + splitmix(s) % 7;
        Matrix<Rational> m = random_matrix(rows, cols, s, 5);
        auto ker = kernel_basis(m);
        CHECK(ker.size() + rank(m) == cols);
        for (const auto& v : ker)
            for (std::size_t i = 0; i < rows; ++i) {
                Rational acc(0);
                for (std::size_t j = 0; j < cols; ++j) acc += m.at(i, j) * v[j];
                CHECK(acc == 0);
            }
    }
}

TEST_CASE("sparse incremental system agrees with dense rank") {
    std::uint64_t s = 77;
    for (int t = 0; t < 40; ++t) {
        std::size_t rows = 1 + splitmix(s) % 8, cols = 1 + splitmix(s) % 8;
        Matrix<Rational> m = random_matrix(rows, cols, s, 4);
        LinearSystem<Rational> sys(cols);
        for (std::size_t i = 0; i < rows; ++i) {
            std::vector<Rational> row(cols);
            for (std::size_t j = 0; j < cols; ++j) row[j] = m.at(i, j);
            sys.add_dense_row(row);
        }
        CHECK(sys.rank() == rank(m));
        auto ker_sparse = sys.kernel();
        auto ker_dense = kernel_basis(m);
        CHECK(ker_sparse.size() == ker_dense.size());
        for (const auto& v : ker_sparse)
            for (std::size_t i = 0; i < rows; ++i) {
                Rational acc(0);
                for (std::size_t j = 0; j < cols; ++j) acc += m.at(i, j) * v[j];
                CHECK(acc == 0);
            }
    }
}

TEST_CASE("particular solutions respect fixed tails") {
    // unknowns (x0, x1 | p): x0 + p = 0 and x1 - 2 p = 0
    LinearSystem<Rational> sys(3);
    sys.add_row({{0, Rational(1)}, {2, Rational(1)}});
    sys.add_row({{1, Rational(1)}, {2, Rational(-2)}});
    auto sol = sys.particular_solution(2, {Rational(3)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rational(-3));
    CHECK((*sol)[1] == Rational(6));
    CHECK((*sol)[2] == Rational(3));

    // add a constraint purely on the tail: p = 0; now tail 3 is inconsistent
    sys.add_row({{2, Rational(1)}});
    CHECK_FALSE(sys.particular_solution(2, {Rational(3)}).has_value());
    CHECK(sys.particular_solution(2, {Rational(0)}).has_value());
}

TEST_CASE("row space canonical form identifies equal spans") {
    std::vector<std::vector<Rational>> a = {{Rational(1), Rational(2), Rational(0)},
                                            {Rational(0), Rational(1), Rational(1)}};
    std::vector<std::vector<Rational>> b = {{Rational(1), Rational(3), Rational(1)},
                                            {Rational(2), Rational(5), Rational(1)}};
    std::vector<std::vector<Rational>> c = {{Rational(1), Rational(0), Rational(0)},
                                            {Rational(0), Rational(1), Rational(1)}};
    CHECK(row_space_canonical(a, 3) == row_space_canonical(b, 3));
    CHECK_FALSE(row_space_canonical(a, 3) == row_space_canonical(c, 3));
}

TEST_CASE("matrix algebra over the cyclotomic field") {
    const long long ell = 4;
    Cyclotomic z = Cyclotomic::zeta(ell);
    Matrix<Cyclotomic> g(2, 2, Cyclotomic(Rational(0), ell));
    g.at(0, 0) = Cyclotomic(Rational(1), ell);
    g.at(1, 1) = z;
    Matrix<Cyclotomic> g4 = g * g * g * g;
    CHECK(g4 == Matrix<Cyclotomic>::identity(2));
    CHECK(g.trace() == Cyclotomic(Rational(1), ell) + z);
}
