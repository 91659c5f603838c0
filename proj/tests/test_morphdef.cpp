#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace reslie;

namespace {

std::vector<std::pair<std::string, Morphism>> restricted_morphisms(unsigned p) {
    std::vector<std::pair<std::string, Morphism>> out;
    for (auto& [name, m] : catalog_morphisms(p))
        if (check_morphism(m).restricted_ok) out.push_back({name, m});
    return out;
}

RC2 source_part(const PrimeField& f, std::size_t n, const FpVector& v) {
    if (f.p() == 2) return RC2n::from_coords(f, n, n, 2, v).to_rc2();
    return RC2::from_coords(f, n, n, v);
}

// Order-1 morphism jet read off a degree-2 cochain of the morphism complex.
MorphismDeformation order1(const Morphism& phi, const FpVector& v) {
    const PrimeField& f = phi.source.field();
    MorphCochain c = split_morph_coords(phi, 2, MorphRegime::Restricted, v);
    MorphismDeformation MD = MorphismDeformation::constant(phi, 0);
    MD.source = TruncatedDeformation::infinitesimal(phi.source, source_part(f, phi.source.dim(), c.source));
    MD.target = TruncatedDeformation::infinitesimal(phi.target, source_part(f, phi.target.dim(), c.target));
    MD.phi.push_back(matrix_from_cochain(CeCochain::from_coords(f, phi.source.dim(), phi.target.dim(), 1, c.cross)));
    return MD;
}

}  // namespace

TEST_CASE("morphism complex squares to zero") {
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& [name, phi] : restricted_morphisms(p)) {
            CAPTURE(p);
            CAPTURE(name);
            for (std::size_t q = 1; q <= 2; ++q) {
                FpMatrix a = morph_ce_matrix(phi, q), b = morph_ce_matrix(phi, q + 1);
                CHECK((b * a).is_zero());
            }
            const std::size_t top = p == 2 ? 3 : 1;
            for (std::size_t q = 1; q <= top; ++q) {
                FpMatrix a = *morph_restricted_matrix(phi, q), b = *morph_restricted_matrix(phi, q + 1);
                CHECK((b * a).is_zero());
            }
        }
}

TEST_CASE("restricted morphism complex for p >= 3 stops at degree 3") {
    const Morphism phi = catalog_morphisms(5).back().second;
    CHECK(!morph_restricted_matrix(phi, 3));
    CHECK(morph_restricted_matrix(phi, 3).error().code == ErrorCode::DegreeOutOfRange);
    CHECK(morph_cohomology(phi, 3).error().code == ErrorCode::DegreeOutOfRange);
    CHECK(morph_cohomology(phi, 3, MorphRegime::CE));
}

TEST_CASE("degree-0 morphism cohomology vanishes") {
    for (unsigned p : {2u, 3u})
        for (const auto& [name, phi] : restricted_morphisms(p)) CHECK(morph_cohomology(phi, 0)->dim == 0);
}

TEST_CASE("order-1 morphism jets pass exactly on morphism 2-cocycles") {
    std::mt19937_64 rng(11);
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& [name, phi] : restricted_morphisms(p)) {
            CAPTURE(p);
            CAPTURE(name);
            const PrimeField f(p);
            const FpMatrix d2 = *morph_restricted_matrix(phi, 2);
            const auto Z = kernel_basis(d2);
            for (int s = 0; s < 8; ++s) {
                FpVector v = s % 2 ? random_vector(f, d2.cols(), rng) : testing::random_in_span(Z, d2.cols(), f, rng);
                const bool cocycle = (d2 * v).is_zero();
                const MorphismDeformation MD = order1(phi, v);
                const bool ok = check_deformation(MD.source).ok && check_deformation(MD.target).ok &&
                                check_morphism_deformation(MD).ok;
                CHECK(ok == cocycle);
            }
        }
}

TEST_CASE("alpha and beta carry the t^1 residual") {
    std::mt19937_64 rng(12);
    for (unsigned p : {3u, 5u}) {
        const PrimeField f(p);
        for (const auto& [name, phi] : restricted_morphisms(p)) {
            CAPTURE(name);
            const std::size_t nL = phi.source.dim(), nM = phi.target.dim();
            for (int s = 0; s < 4; ++s) {
                RC2 mo = RC2::from_coords(f, nL, nL, random_vector(f, RC2::zero(f, nL, nL).coords().size(), rng));
                RC2 ne = RC2::from_coords(f, nM, nM, random_vector(f, RC2::zero(f, nM, nM).coords().size(), rng));
                CeCochain th = CeCochain::from_coords(f, nL, nM, 1, random_vector(f, nL * nM, rng));
                MorphismDeformation MD = MorphismDeformation::constant(phi, 0);
                MD.source = TruncatedDeformation::infinitesimal(phi.source, mo);
                MD.target = TruncatedDeformation::infinitesimal(phi.target, ne);
                MD.phi.push_back(matrix_from_cochain(th));
                const FpVector r = morph_residual(MD, 1);
                const FpVector a = morph_alpha(phi, mo.phi, ne.phi, th).coords();
                CHECK(r.slice(0, a.size()) == a);
                for (std::size_t i = 0; i < nL; ++i)
                    CHECK(r.slice(a.size() + i * nM, nM) == morph_beta(phi, mo, ne, th)[i]);
            }
        }
    }
}

namespace {

// Order-1 cocycle jets whose source and target extend to order 2.
std::vector<MorphismDeformation> extendable_jets(const Morphism& phi, std::mt19937_64& rng, int tries) {
    const PrimeField f = phi.source.field();
    const FpMatrix d2 = *morph_restricted_matrix(phi, 2);
    const auto Z = kernel_basis(d2);
    std::vector<MorphismDeformation> out;
    for (int s = 0; s < tries; ++s) {
        MorphismDeformation MD = order1(phi, testing::random_in_span(Z, d2.cols(), f, rng));
        auto S = extend_order(MD.source), T = extend_order(MD.target);
        if (!S.extended || !T.extended) continue;
        MD.source = *S.extended;
        MD.target = *T.extended;
        out.push_back(std::move(MD));
    }
    return out;
}

}  // namespace

TEST_CASE("an extension solves alpha = Obs1 and beta = Obs2") {
    std::mt19937_64 rng(13);
    int extended = 0;
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& [name, phi] : restricted_morphisms(p))
            for (const auto& MD : extendable_jets(phi, rng, 10)) {
                CAPTURE(p);
                CAPTURE(name);
                const MorphObstruction ob = *morph_obstruction(MD);
                auto E = extend_morphism(MD);
                if (!E) continue;
                ++extended;
                const CeCochain th = cochain_from_matrix(E->phi[2]);
                CHECK(morph_alpha(phi, E->source.m[2], E->target.m[2], th).coords() == ob.obs1.coords());
                CHECK(morph_beta(phi, E->source.coefficient(2), E->target.coefficient(2), th) == ob.obs2);
                CHECK(check_morphism_deformation(*E).ok);
            }
    CHECK(extended > 20);
}

TEST_CASE("obstruction displays against the defining equations") {
    std::mt19937_64 rng(14);
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& [name, phi] : restricted_morphisms(p))
            for (const auto& MD : extendable_jets(phi, rng, 6)) {
                CAPTURE(p);
                CAPTURE(name);
                const PrimeField f(p);
                for (int s = 0; s < 5; ++s) {
                    const FpVector x = random_vector(f, phi.source.dim(), rng), y = random_vector(f, phi.source.dim(), rng);
                    CHECK(morph_obs1_display(MD, x, y) == morph_obstruction1_eval(MD, x, y));
                    if (p == 2) CHECK(*morph_obs2_corrected(MD, x) == morph_obstruction2_eval(MD, x));
                }
            }
    const MorphismDeformation c = MorphismDeformation::constant(catalog_morphisms(3).front().second, 2);
    CHECK(morph_obs2_display(c, c.base.source.algebra.basis(0)).error().code == ErrorCode::OrderUnsupported);
    CHECK(morph_obstruction(c).error().code == ErrorCode::OrderUnsupported);
    CHECK(morph_obs2_corrected(c.truncated(1), c.base.source.algebra.basis(0)).error().code ==
          ErrorCode::UnsupportedCharacteristic);
}

TEST_CASE("the uncorrected char-2 display misses the eps terms") {
    std::mt19937_64 rng(15);
    int differs = 0;
    for (const auto& [name, phi] : restricted_morphisms(2))
        for (const auto& MD : extendable_jets(phi, rng, 6))
            for (std::size_t i = 0; i < phi.source.dim(); ++i) {
                const FpVector x = phi.source.algebra.basis(i);
                if (*morph_obs2_display(MD, x) != morph_obstruction2_eval(MD, x)) ++differs;
            }
    CHECK(differs > 0);
}

TEST_CASE("twisting a morphism jet by formal automorphisms keeps it valid") {
    std::mt19937_64 rng(16);
    for (unsigned p : {2u, 3u, 5u})
        for (const auto& [name, phi] : restricted_morphisms(p))
            for (const auto& MD : extendable_jets(phi, rng, 4)) {
                auto E = extend_morphism(MD);
                if (!E) continue;
                CAPTURE(p);
                CAPTURE(name);
                const PrimeField f(p);
                auto random_jet = [&](std::size_t n) {
                    FormalAutomorphismJet g = FormalAutomorphismJet::identity(f, n, 2);
                    for (std::size_t k = 1; k <= 2; ++k)
                        g.phi[k] = matrix_from_cochain(CeCochain::from_coords(f, n, n, 1, random_vector(f, n * n, rng)));
                    return g;
                };
                const MorphismDeformation T = twist_morphism(*E, random_jet(phi.source.dim()), random_jet(phi.target.dim()));
                CHECK(check_deformation(T.source).ok);
                CHECK(check_deformation(T.target).ok);
                CHECK(check_morphism_deformation(T).ok);
            }
}

TEST_CASE("the Heisenberg morphism fixture") {
    for (unsigned p : {3u, 5u, 7u}) {
        CAPTURE(p);
        const MorphismFixture F = morphism_fixture(p);
        const MorphismReport rep = check_morphism(F.phi);
        CHECK(rep.lie_ok);
        CHECK_FALSE(rep.restricted_ok);
        const ThetaKernel K = morph_theta_kernel(F.phi, F.mu_omega, F.nu_eps);
        CHECK(K.linear.size() == 5);
        CHECK_FALSE(K.particular);
        CHECK_FALSE(in_span(K.linear, F.thetas[0]));
        CHECK(in_span(K.linear, F.thetas[1]));
        CHECK(in_span(K.linear, F.thetas[2]));
        const FpMatrix a = *morph_restricted_matrix(F.phi, 1), b = *morph_restricted_matrix(F.phi, 2);
        CHECK_FALSE((b * a).is_zero());
    }
}

TEST_CASE("theta kernel of a restricted morphism contains the coboundaries") {
    for (unsigned p : {3u, 5u})
        for (const auto& [name, phi] : restricted_morphisms(p)) {
            CAPTURE(name);
            const PrimeField f(p);
            const ThetaKernel K = morph_theta_kernel(phi, RC2::zero(f, phi.source.dim(), phi.source.dim()),
                                                     RC2::zero(f, phi.target.dim(), phi.target.dim()));
            REQUIRE(K.particular);
            CHECK(K.particular->is_zero());
            for (const auto& c : K.coboundaries) CHECK(in_span(K.linear, c));
        }
}
