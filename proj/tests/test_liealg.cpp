#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace reslie;

namespace {

// CE cochains on an abelian algebra with trivial coefficients: every cochain is a cocycle.
std::size_t abelian_betti(std::size_t n, std::size_t q) { return binomial(n, q); }

// Independent evaluation of the CE differential straight from the defining sum.
FpVector ce_oracle(const CeCochain& c, const LModule& M, const std::vector<FpVector>& xs) {
    const PrimeField& f = c.field();
    const LieAlgebra& L = M.algebra();
    const std::size_t q = xs.size() - 1;
    FpVector out(f, M.dim());
    for (std::size_t a = 0; a <= q; ++a) {
        for (std::size_t b = a + 1; b <= q; ++b) {
            std::vector<FpVector> args{L.bracket(xs[a], xs[b])};
            for (std::size_t k = 0; k <= q; ++k)
                if (k != a && k != b) args.push_back(xs[k]);
            out.axpy(f.sign(a + b), c.eval(args));
        }
        std::vector<FpVector> rest;
        for (std::size_t k = 0; k <= q; ++k)
            if (k != a) rest.push_back(xs[k]);
        out.axpy(f.sign(a), M.act(xs[a], c.eval(rest)));
    }
    return out;
}

}  // namespace

TEST_CASE("catalog brackets satisfy Jacobi and antisymmetry") {
    for (unsigned p : {2u, 3u, 5u, 7u})
        for (const auto& e : catalog_algebras(p)) {
            CAPTURE(e.name);
            CHECK(jacobi_check(e.algebra.algebra).ok);
            CHECK(antisymmetry_check(e.algebra.algebra));
        }
}

TEST_CASE("a bracket violating Jacobi is caught with a witness") {
    PrimeField f(5);
    LieAlgebra L(f, {"a", "b", "c"});
    L.set_bracket(0, 1, FpVector(f, {0, 0, 1}));
    L.set_bracket(1, 2, FpVector(f, {1, 0, 0}));
    L.set_bracket(0, 2, FpVector(f, {0, 0, 1}));
    auto r = jacobi_check(L);
    CHECK_FALSE(r.ok);
    CHECK(r.residual.has_value());
}

TEST_CASE("adjoint and trivial modules are representations") {
    for (const auto& e : catalog_algebras(5)) {
        CHECK(module_check(LModule::adjoint(e.algebra.algebra)).ok);
        CHECK(module_check(LModule::trivial(e.algebra.algebra, 2)).ok);
    }
}

TEST_CASE("CE differential agrees with the defining sum") {
    std::mt19937_64 rng(3);
    for (unsigned p : {2u, 3u, 5u}) {
        PrimeField f(p);
        for (const auto& e : catalog_algebras(p)) {
            const LModule M = LModule::adjoint(e.algebra.algebra);
            const std::size_t n = e.algebra.dim();
            for (std::size_t q = 0; q + 1 <= std::min<std::size_t>(n, 3); ++q) {
                CeCochain c = CeCochain::from_coords(f, n, n, q, random_vector(f, binomial(n, q) * n, rng));
                CeCochain dc = ce_differential(c, M);
                std::vector<FpVector> xs;
                for (std::size_t k = 0; k <= q; ++k) xs.push_back(random_vector(f, n, rng));
                CAPTURE(e.name);
                CAPTURE(q);
                CHECK(dc.eval(xs) == ce_oracle(c, M, xs));
            }
        }
    }
}

TEST_CASE("d o d = 0 for the CE complex in every degree") {
    for (unsigned p : {2u, 3u, 5u, 7u})
        for (const auto& e : catalog_algebras(p)) {
            const std::size_t n = e.algebra.dim();
            for (const LModule& M : {LModule::adjoint(e.algebra.algebra), LModule::trivial(e.algebra.algebra)})
                for (std::size_t q = 0; q + 2 <= n; ++q) {
                    CAPTURE(e.name);
                    CHECK((ce_differential_matrix(M, q + 1) * ce_differential_matrix(M, q)).is_zero());
                }
        }
}

TEST_CASE("CE cohomology of abelian and Heisenberg algebras") {
    for (unsigned p : {2u, 3u, 5u}) {
        PrimeField f(p);
        LieAlgebra A(f, {"a", "b", "c"});
        for (std::size_t q = 0; q <= 3; ++q) CHECK(ce_cohomology(LModule::trivial(A), q).dim == abelian_betti(3, q));
        // h with trivial coefficients: Betti numbers 1, 2, 2, 1
        const LModule T = LModule::trivial(heisenberg(p).algebra);
        const std::size_t betti[] = {1, 2, 2, 1};
        for (std::size_t q = 0; q <= 3; ++q) CHECK(ce_cohomology(T, q).dim == betti[q]);
    }
}

TEST_CASE("cochain evaluation is alternating") {
    PrimeField f(7);
    std::mt19937_64 rng(1);
    CeCochain c = CeCochain::from_coords(f, 4, 2, 3, random_vector(f, binomial(4, 3) * 2, rng));
    FpVector x = random_vector(f, 4, rng), y = random_vector(f, 4, rng), z = random_vector(f, 4, rng);
    CHECK(c.eval({x, y, z}) == -c.eval({y, x, z}));
    CHECK(c.eval({x, y, z}) == c.eval({y, z, x}));
    CHECK(c.eval({x, x, z}).is_zero());
    CHECK(c.eval_indices({2, 0, 1}) == c.eval_indices({0, 1, 2}));
}

TEST_CASE("degree-one cochains and matrices correspond") {
    PrimeField f(3);
    std::mt19937_64 rng(9);
    FpMatrix a(f, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = rng() % 3;
    CHECK(matrix_from_cochain(cochain_from_matrix(a)) == a);
}
