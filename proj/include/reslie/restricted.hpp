#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reslie/lie.hpp"

namespace reslie {

/// A p-map stored by its values on the basis of `algebra` (p = characteristic of the field).
struct PMap {
    LieAlgebra algebra;
    std::vector<FpVector> images;

    const PrimeField& field() const { return algebra.field(); }
    std::size_t dim() const { return algebra.dim(); }
    unsigned p() const { return algebra.field().p(); }
    bool operator==(const PMap& o) const { return algebra == o.algebra && images == o.images; }
};

/// Sum over the bracket words defining s_1 + ... + s_{p-1}; for p = 2 this is [x, y].
/// `br` is the bracket; V needs copy, axpy(residue, V) and a zero-initialized copy via `zero`.
template <class V, class Bracket>
V s_terms_generic(const V& x, const V& y, const V& zero, const PrimeField& f, Bracket br) {
    const unsigned p = f.p();
    if (p == 2) return br(x, y);
    V acc = zero;
    // right-nested words [x_1,[x_2,...,[y, x]]], x_k in {x, y} for k <= p-2
    std::function<void(unsigned, const V&, unsigned)> rec = [&](unsigned level, const V& cur, unsigned nx) {
        if (level == 0) {
            acc.axpy(f.inv(nx % p), cur);
            return;
        }
        rec(level - 1, br(x, cur), nx + 1);
        rec(level - 1, br(y, cur), nx);
    };
    rec(p - 2, br(y, x), 1);
    return acc;
}

FpVector s_terms(const LieAlgebra& L, const FpVector& x, const FpVector& y);

/// Evaluates the p-map on an arbitrary element by folding basis terms in ascending index order.
FpVector pmap_eval(const PMap& P, const FpVector& v);
/// Same fold with a caller-chosen order of basis indices.
FpVector pmap_eval_ordered(const PMap& P, const FpVector& v, const std::vector<std::size_t>& order);

struct PMapReport {
    bool ok = true;
    int axiom = 0;  // 1: homogeneity, 2: ad-power rule, 3: additivity
    std::optional<FpVector> x, y;
    std::string detail;
};
PMapReport verify_pmap(const PMap& P, std::uint64_t seed = 0x5eed, int random_pairs = 50);

Expected<PMap> jacobson_build(const LieAlgebra& L, const std::vector<FpVector>& targets);
std::optional<std::vector<FpVector>> solve_pmap_targets(const LieAlgebra& L);

struct RestrictedModule {
    PMap algebra;
    LModule module;
};
/// Checks rho(e_i^[p]) = rho(e_i)^p on the basis.
Expected<RestrictedModule> make_restricted_module(const PMap& P, const LModule& M);
RestrictedModule adjoint_module(const PMap& P);
RestrictedModule trivial_module(const PMap& P, std::size_t m = 1);

struct Morphism {
    PMap source;
    PMap target;
    FpMatrix matrix;  // target.dim() x source.dim()
    FpVector apply(const FpVector& x) const { return matrix * x; }
};

struct MorphismReport {
    bool lie_ok = true;
    bool restricted_ok = true;
    std::optional<FpVector> witness;
    std::string detail;
    bool ok() const { return lie_ok && restricted_ok; }
};
MorphismReport check_morphism(const Morphism& phi, std::uint64_t seed = 0x5eed, int samples = 50);

/// L-module structure on the target induced by x.m = [phi(x), m].
LModule pullback_adjoint(const Morphism& phi);

Expected<PMap> semidirect_product_p2(const PMap& L, const PMap& g, const std::vector<FpMatrix>& pi);
/// g = L + F.c with [x,y] + phi(x,y)c and e_i^[2] + omega(e_i)c; phi is a scalar 2-cochain.
PMap central_extension_p2(const PMap& L, const CeCochain& phi, const FpVector& omega_basis);
/// Validates a fully tabulated quadratic part against the polarization rule (p = 2, exhaustive).
Expected<bool> check_quadratic_part_p2(const PMap& L, const CeCochain& phi,
                                       const std::function<residue(const FpVector&)>& omega);
/// Coefficients of (sum t^i x_i)^[2] modulo t^{N+1}, N + 1 = jet.size().
std::vector<FpVector> pmap_extend_formal_p2(const PMap& P, const std::vector<FpVector>& jet);

// helpers shared by tests and tools
FpVector random_vector(const PrimeField& f, std::size_t n, std::mt19937_64& rng);
void for_each_vector(const PrimeField& f, std::size_t n, const std::function<void(const FpVector&)>& fn);

}  // namespace reslie
