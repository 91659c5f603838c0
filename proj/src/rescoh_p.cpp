#include "reslie/rescoh_p.hpp"
#include "reslie/rescoh_2.hpp"

namespace reslie {

RC2 RC2::zero(const PrimeField& f, std::size_t n, std::size_t m) {
    return RC2{CeCochain(f, n, m, 2), std::vector<FpVector>(n, FpVector(f, m))};
}

RC2 RC2::from_coords(const PrimeField& f, std::size_t n, std::size_t m, const FpVector& coords) {
    RC2 c = zero(f, n, m);
    const std::size_t k = c.phi.coord_dim();
    if (coords.size() != k + n * m) throw std::invalid_argument("RC2::from_coords: wrong length");
    c.phi.coords() = coords.slice(0, k);
    for (std::size_t i = 0; i < n; ++i) c.omega[i] = coords.slice(k + i * m, m);
    return c;
}

FpVector RC2::coords() const {
    std::vector<FpVector> parts{phi.coords()};
    parts.insert(parts.end(), omega.begin(), omega.end());
    return FpVector::concat(parts);
}

FpVector RC3::coords() const {
    std::vector<FpVector> parts{alpha.coords()};
    parts.insert(parts.end(), beta.begin(), beta.end());
    return FpVector::concat(parts);
}

FpVector star_correction(const LModule& M, const CeCochain& phi, const FpVector& x, const FpVector& y) {
    const LieAlgebra& L = M.algebra();
    return star_correction_generic(
        x, y, M.zero(), L.field(), [&](const FpVector& a, const FpVector& b) { return phi.eval({a, b}); },
        [&](const FpVector& a, const FpVector& b) { return L.bracket(a, b); },
        [&](const FpVector& a, const FpVector& v) { return M.act(a, v); });
}

FpVector omega_eval(const RC2& c, const LModule& M, const FpVector& v) {
    const PrimeField& f = M.field();
    const LieAlgebra& L = M.algebra();
    FpVector acc = L.zero(), val = M.zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        FpVector term = L.basis(i).scaled(v[i]);
        val.axpy(f.pow(v[i], f.p()), c.omega[i]);
        if (!acc.is_zero()) val += star_correction(M, c.phi, acc, term);
        acc += term;
    }
    return val;
}

FpVector ind1_eval(const CeCochain& phi, const PMap& P, const LModule& M, const FpVector& x) {
    FpVector fx = phi.eval({x});
    FpVector r = -phi.eval({pmap_eval(P, x)});
    FpMatrix a = M.action(x);
    for (unsigned k = 1; k < P.p(); ++k) fx = a * fx;
    return r + fx;
}

std::vector<FpVector> ind1(const CeCochain& phi, const PMap& P, const LModule& M) {
    std::vector<FpVector> out;
    for (std::size_t i = 0; i < P.dim(); ++i) out.push_back(ind1_eval(phi, P, M, P.algebra.basis(i)));
    return out;
}

namespace {

FpVector ind2_core(const RC2& c, const PMap& P, const LModule& M, const FpVector& x, const FpVector& y,
                   const FpVector& y_p, const FpVector& omega_y) {
    const PrimeField& f = P.field();
    const LieAlgebra& L = P.algebra;
    const unsigned p = P.p();
    FpVector r = -c.phi.eval({x, y_p});
    FpMatrix ay = M.action(y);
    FpVector nest = x;  // [x, y, ..., y] with j copies
    for (unsigned j = 0; j < p; ++j) {
        unsigned i = p - 1 - j;
        FpVector v = c.phi.eval({nest, y});
        for (unsigned k = 0; k < i; ++k) v = ay * v;
        r.axpy(f.sign(i), v);
        nest = L.bracket(nest, y);
    }
    r -= M.act(x, omega_y);
    return r;
}

}  // namespace

FpVector ind2_eval(const RC2& c, const PMap& P, const LModule& M, const FpVector& x, const FpVector& y) {
    return ind2_core(c, P, M, x, y, pmap_eval(P, y), omega_eval(c, M, y));
}

std::vector<FpVector> ind2(const RC2& c, const PMap& P, const LModule& M) {
    const std::size_t n = P.dim();
    std::vector<FpVector> grid;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            grid.push_back(ind2_core(c, P, M, P.algebra.basis(a), P.algebra.basis(b), P.images[b], c.omega[b]));
    return grid;
}

RC2 d1_star(const CeCochain& phi, const PMap& P, const LModule& M) {
    return RC2{ce_differential(phi, M), ind1(phi, P, M)};
}

RC3 d2_star(const RC2& c, const PMap& P, const LModule& M) {
    return RC3{ce_differential(c.phi, M), ind2(c, P, M)};
}

FpMatrix d0_star_matrix(const LModule& M) { return ce_differential_matrix(M, 0); }

FpMatrix d1_star_matrix(const PMap& P, const LModule& M) {
    const PrimeField& f = P.field();
    const std::size_t n = P.dim(), m = M.dim();
    const std::size_t out = binomial(n, 2) * m + n * m;
    return matrix_of(f, n * m, out, [&](const FpVector& v) {
        return d1_star(CeCochain::from_coords(f, n, m, 1, v), P, M).coords();
    });
}

FpMatrix d2_star_matrix(const PMap& P, const LModule& M) {
    const PrimeField& f = P.field();
    const std::size_t n = P.dim(), m = M.dim();
    const std::size_t in = binomial(n, 2) * m + n * m;
    const std::size_t out = binomial(n, 3) * m + n * n * m;
    return matrix_of(f, in, out, [&](const FpVector& v) { return d2_star(RC2::from_coords(f, n, m, v), P, M).coords(); });
}

Expected<CohomologyResult> restricted_cohomology_p(const PMap& P, const LModule& M, std::size_t q) {
    if (P.p() < 3) return make_error(ErrorCode::UnsupportedCharacteristic, "restricted_cohomology_p needs p >= 3");
    if (q > 2) return make_error(ErrorCode::DegreeOutOfRange, "restricted cohomology for p >= 3 stops at degree 2");
    auto rm = make_restricted_module(P, M);
    if (!rm) return rm.error();
    switch (q) {
        case 0:
            return cohomology_from(nullptr, d0_star_matrix(M));
        case 1: {
            FpMatrix d0 = d0_star_matrix(M);
            return cohomology_from(&d0, d1_star_matrix(P, M));
        }
        default: {
            FpMatrix d1 = d1_star_matrix(P, M);
            return cohomology_from(&d1, d2_star_matrix(P, M));
        }
    }
}

Expected<CohomologyResult> h1_restricted_derivations(const PMap& P) {
    if (P.p() == 2) return restricted_cohomology_2(P, LModule::adjoint(P.algebra), 1);
    return restricted_cohomology_p(P, LModule::adjoint(P.algebra), 1);
}

}  // namespace reslie
