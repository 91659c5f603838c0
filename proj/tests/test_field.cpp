#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace reslie;

TEST_CASE("field arithmetic agrees with integer arithmetic") {
    for (unsigned p : {2u, 3u, 5u, 7u, 101u}) {
        PrimeField f(p);
        for (long long a = -2 * static_cast<long long>(p); a < 2 * static_cast<long long>(p); ++a)
            for (long long b = 0; b < static_cast<long long>(p); ++b) {
                const residue ra = f.reduce(a), rb = f.reduce(b);
                CHECK(f.add(ra, rb) == f.reduce(a + b));
                CHECK(f.sub(ra, rb) == f.reduce(a - b));
                CHECK(f.mul(ra, rb) == f.reduce(a * b));
                if (rb) CHECK(f.mul(f.inv(rb), rb) == 1);
            }
        for (residue a = 0; a < p; ++a) CHECK(f.pow(a, p) == a);
    }
}

TEST_CASE("non-primes are rejected") {
    CHECK_THROWS(PrimeField(4));
    CHECK_THROWS(PrimeField(1));
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(9));
}

TEST_CASE("rank matches the number of kernel vectors found by enumeration") {
    std::mt19937_64 rng(11);
    for (unsigned p : {2u, 3u}) {
        PrimeField f(p);
        for (int trial = 0; trial < 30; ++trial) {
            const std::size_t r = 1 + rng() % 3, c = 1 + rng() % 4;
            FpMatrix m(f, r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m(i, j) = rng() % p;
            std::size_t zeros = 0;
            for_each_vector(f, c, [&](const FpVector& v) { zeros += (m * v).is_zero(); });
            std::size_t expect = 1;
            for (std::size_t k = 0; k < c - rank(m); ++k) expect *= p;
            CHECK(zeros == expect);
            auto K = kernel_basis(m);
            CHECK(K.size() == c - rank(m));
            for (const auto& k : K) CHECK((m * k).is_zero());
        }
    }
}

TEST_CASE("solve returns a preimage exactly when one exists") {
    std::mt19937_64 rng(5);
    PrimeField f(5);
    for (int trial = 0; trial < 50; ++trial) {
        FpMatrix m(f, 4, 3);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = rng() % 5;
        FpVector x = random_vector(f, 3, rng);
        auto s = solve(m, m * x);
        REQUIRE(s.has_value());
        REQUIRE(s->has_value());
        CHECK(m * **s == m * x);
        FpVector b = random_vector(f, 4, rng);
        auto t = solve(m, b);
        std::vector<FpVector> cols;
        for (std::size_t j = 0; j < 3; ++j) cols.push_back(m.column(j));
        CHECK(t->has_value() == in_span(cols, b));
    }
    CHECK_FALSE(solve(FpMatrix(f, 2, 2), FpVector(f, 3)).has_value());
}

TEST_CASE("quotient dimension of nested spans") {
    PrimeField f(3);
    std::vector<FpVector> z{FpVector(f, {1, 0, 0}), FpVector(f, {0, 1, 0})}, b{FpVector(f, {1, 1, 0})};
    CHECK(*quotient_dim(z, b, 3) == 1);
    CHECK_FALSE(quotient_dim(b, {FpVector(f, {0, 0, 1})}, 3).has_value());
    auto reps = *quotient_basis(z, b, 3);
    CHECK(reps.size() == 1);
    CHECK(rank_of({reps[0], b[0]}, 3) == 2);
}

TEST_CASE("matrix power and transpose") {
    PrimeField f(7);
    FpMatrix n(f, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    CHECK(n.pow(3).is_zero());
    CHECK_FALSE(n.pow(2).is_zero());
    CHECK(n.transpose().transpose() == n);
    CHECK(n.pow(0) == FpMatrix::identity(f, 3));
}
