#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace reslie;

namespace {

const std::vector<std::vector<long long>> kThetas{{0, 0, 0}, {1, 0, 0}, {0, 0, 1}};

FpMatrix random_matrix(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
    return matrix_from_cochain(CeCochain::from_coords(f, n, n, 1, random_vector(f, n * n, rng)));
}

}  // namespace

TEST_CASE("jet arithmetic") {
    PrimeField f(5);
    Jet a(f, 2, 3), b(f, 2, 3);
    a[0] = FpVector(f, {1, 2});
    a[2] = FpVector(f, {3, 0});
    b[1] = FpVector(f, {4, 4});
    Jet s = a + b;
    CHECK(s[1] == FpVector(f, {4, 4}));
    CHECK((s - b) == a);
    Jet t = a.shifted(1);
    CHECK(t[1] == a[0]);
    CHECK(t[0].is_zero());
    CHECK(t.precision() == 3);
    CHECK(a.scaled(2)[2] == FpVector(f, {1, 0}));
}

TEST_CASE("formal automorphism inverse") {
    std::mt19937_64 rng(1);
    PrimeField f(7);
    FormalAutomorphismJet g = FormalAutomorphismJet::identity(f, 3, 3);
    for (std::size_t k = 1; k <= 3; ++k) g.phi[k] = random_matrix(f, 3, rng);
    FormalAutomorphismJet h = g.inverse();
    for (int s = 0; s < 5; ++s) {
        Jet u(f, 3, 4);
        for (std::size_t k = 0; k < 4; ++k) u[k] = random_vector(f, 3, rng);
        CHECK(h.apply(g.apply(u)) == u);
    }
}

TEST_CASE("constant deformations pass the check") {
    for (unsigned p : {2u, 3u, 5u, 7u})
        for (const auto& e : catalog_algebras(p)) CHECK(check_deformation(TruncatedDeformation::constant(e.algebra, 3)).ok);
}

TEST_CASE("order-1 jets: check passes exactly on restricted 2-cocycles") {
    std::mt19937_64 rng(2);
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& th : kThetas) {
            const PMap P = heisenberg(p, th);
            const PrimeField& f = P.field();
            const FpMatrix d2 = restricted_d2_matrix(P);
            const auto Z = kernel_basis(d2);
            for (int s = 0; s < 10; ++s) {
                FpVector v = s % 2 ? random_vector(f, d2.cols(), rng) : testing::random_in_span(Z, d2.cols(), f, rng);
                auto D = TruncatedDeformation::infinitesimal(P, RC2::from_coords(f, 3, 3, v));
                CHECK(check_deformation(D).ok == (d2 * v).is_zero());
                CHECK(infinitesimal(D).cocycle == (d2 * v).is_zero());
            }
        }
}

TEST_CASE("coboundary jets are equivalent to the constant deformation") {
    std::mt19937_64 rng(3);
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& th : kThetas) {
            const PMap P = heisenberg(p, th);
            const PrimeField& f = P.field();
            const FpMatrix d1 = restricted_d1_matrix(P);
            for (int s = 0; s < 5; ++s) {
                FpVector psi = random_vector(f, 9, rng);
                auto D = TruncatedDeformation::infinitesimal(P, RC2::from_coords(f, 3, 3, d1 * psi));
                CHECK(infinitesimal(D).coboundary);
                auto eq = equivalence_solve(D, TruncatedDeformation::constant(P, 1), 1);
                REQUIRE(eq.jet.has_value());
                CHECK(eq.verified);
                CHECK((d1 * (cochain_from_matrix(eq.jet->phi[1]).coords() - psi)).is_zero());
            }
        }
}

TEST_CASE("twisting produces an equivalent deformation") {
    std::mt19937_64 rng(4);
    for (unsigned p : {2u, 3u, 5u}) {
        int done = 0;
        for (int s = 0; s < 60 && done < 4; ++s) {
            const PMap P = heisenberg(p, kThetas[s % 3]);
            const PrimeField& f = P.field();
            const FpMatrix d2 = restricted_d2_matrix(P);
            std::vector<FpVector> Z = kernel_basis(d2);
            Z.erase(Z.begin() + static_cast<long>(1 + s % Z.size()), Z.end());
            auto D = TruncatedDeformation::infinitesimal(P, RC2::from_coords(f, 3, 3, testing::random_in_span(Z, d2.cols(), f, rng)));
            auto ext = extend_order(D);
            if (!ext.extended) continue;
            ++done;
            FormalAutomorphismJet g = FormalAutomorphismJet::identity(f, 3, 2);
            g.phi[1] = random_matrix(f, 3, rng);
            g.phi[2] = random_matrix(f, 3, rng);
            auto T = twist(*ext.extended, g);
            CHECK(check_deformation(T).ok);
            CHECK(equivalence_residual(*ext.extended, T, g, 1).is_zero());
            CHECK(equivalence_residual(*ext.extended, T, g, 2).is_zero());
            auto eq = equivalence_solve(*ext.extended, T, 2);
            CHECK(eq.jet.has_value());
        }
        CHECK(done > 0);
    }
}

TEST_CASE("extension: d^2_* of the new term equals the obstruction") {
    std::mt19937_64 rng(5);
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& th : kThetas) {
            const PMap P = heisenberg(p, th);
            const PrimeField& f = P.field();
            const auto Z = kernel_basis(restricted_d2_matrix(P));
            for (int s = 0; s < 6; ++s) {
                auto D = TruncatedDeformation::infinitesimal(P, RC2::from_coords(f, 3, 3, testing::random_in_span(Z, Z[0].size(), f, rng)));
                auto ext = extend_order(D);
                if (!ext.extended) {
                    CHECK(ext.obstructed);
                    continue;
                }
                CHECK(ext.recheck.ok);
                CHECK(restricted_d2(P, ext.extended->coefficient(2)) == obstruction(D).coords());
            }
        }
}

TEST_CASE("an obstructed jet over the 2-dimensional abelian algebra") {
    // [a, b]_t = t a with zero 2-map: at t^2 the rule [a, b^[2]] = [[a, b], b] reads 0 = a
    PrimeField f(2);
    const PMap A = *abelian(2, 2, {FpVector(f, 2), FpVector(f, 2)});
    RC2 c = RC2::zero(f, 2, 2);
    c.phi.set({0, 1}, FpVector(f, {1, 0}));
    auto D = TruncatedDeformation::infinitesimal(A, c);
    CHECK(check_deformation(D).ok);
    auto ext = extend_order(D);
    CHECK(ext.obstructed);
    CHECK_FALSE(ext.extended.has_value());
    CHECK_FALSE(obstruction(D).coords().is_zero());
}

TEST_CASE("char-2 obstruction polarization") {
    std::mt19937_64 rng(6);
    for (const auto& th : {std::vector<long long>{0, 0, 0}, {0, 0, 1}}) {
        const PMap P = heisenberg(2, th);
        const PrimeField& f = P.field();
        const auto Z = kernel_basis(restricted_d2_matrix(P));
        for (int s = 0; s < 10; ++s) {
            auto D = TruncatedDeformation::infinitesimal(P, RC2::from_coords(f, 3, 3, testing::random_in_span(Z, Z[0].size(), f, rng)));
            FpVector x = random_vector(f, 3, rng), y = random_vector(f, 3, rng), z = random_vector(f, 3, rng);
            CHECK(obstruction2_eval(D, x + y, z) == obstruction2_eval(D, x, z) + obstruction2_eval(D, y, z) + obstruction1_eval(D, x, y, z));
        }
    }
}

TEST_CASE("char-2 example jet") {
    const auto D = char2_example_jet();
    CHECK(check_deformation(D).ok);
    auto inf = infinitesimal(D);
    CHECK(inf.cocycle);
    CHECK_FALSE(inf.coboundary);
    auto ext = extend_order(D);
    REQUIRE(ext.extended.has_value());
    CHECK(ext.extended->coefficient(2).coords().is_zero());
}

TEST_CASE("Nijenhuis operators give coboundaries that deform exactly") {
    std::mt19937_64 rng(7);
    for (unsigned p : {3u, 5u}) {
        const PMap P = heisenberg(p, {0, 0, 1});
        const PrimeField& f = P.field();
        int found = 0;
        for (int k = 0; k < 3000 && found < 10; ++k) {
            FpMatrix N(f, 3, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    if (rng() % 2) N(i, j) = rng() % p;
            if (!nijenhuis_check(N, P)->ok) continue;
            ++found;
            auto D = *nijenhuis_deformation(N, P);
            CHECK(infinitesimal(D).coboundary);
            D.append(RC2::zero(f, 3, 3));
            D.append(RC2::zero(f, 3, 3));
            CHECK(check_deformation(D).ok);
        }
        CHECK(found >= 5);
    }
    CHECK_FALSE(nijenhuis_check(FpMatrix::identity(PrimeField(2), 3), heisenberg(2)).has_value());
}

TEST_CASE("a broken jet is reported with the failing degree") {
    PrimeField f(5);
    const PMap P = heisenberg(5);
    RC2 c = RC2::zero(f, 3, 3);
    c.omega[0] = FpVector(f, {1, 0, 0});  // not a cocycle: [y, x^[p]] changes at t^1
    auto r = check_deformation(TruncatedDeformation::infinitesimal(P, c));
    CHECK_FALSE(r.ok);
    CHECK(r.degree == 1);
}
