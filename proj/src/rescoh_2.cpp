#include "reslie/rescoh_2.hpp"

namespace reslie {

std::size_t rc2n_coord_dim(std::size_t n, std::size_t m, std::size_t q) {
    return binomial(n, q) * m + n * binomial(n, q - 2) * m;
}

std::size_t c_star2_dim(std::size_t n, std::size_t m, std::size_t q) {
    if (q < 2) return binomial(n, q) * m;
    return rc2n_coord_dim(n, m, q);
}

RC2n RC2n::zero(const PrimeField& f, std::size_t n, std::size_t m, std::size_t q) {
    if (q < 2) throw std::invalid_argument("RC2n: degree must be at least 2");
    return RC2n{CeCochain(f, n, m, q), std::vector<CeCochain>(n, CeCochain(f, n, m, q - 2))};
}

RC2n RC2n::from_coords(const PrimeField& f, std::size_t n, std::size_t m, std::size_t q, const FpVector& coords) {
    RC2n c = zero(f, n, m, q);
    if (coords.size() != rc2n_coord_dim(n, m, q)) throw std::invalid_argument("RC2n::from_coords: wrong length");
    std::size_t pos = c.phi.coord_dim();
    c.phi.coords() = coords.slice(0, pos);
    for (auto& w : c.omega) {
        w.coords() = coords.slice(pos, w.coord_dim());
        pos += w.coord_dim();
    }
    return c;
}

RC2n RC2n::from_rc2(const RC2& c) {
    const std::size_t n = c.phi.n(), m = c.phi.m();
    RC2n out = zero(c.phi.field(), n, m, 2);
    out.phi = c.phi;
    for (std::size_t i = 0; i < n; ++i) out.omega[i].set_value(0, c.omega[i]);
    return out;
}

RC2 RC2n::to_rc2() const {
    if (degree() != 2) throw std::logic_error("RC2n::to_rc2: degree is not 2");
    RC2 c{phi, {}};
    for (const auto& w : omega) c.omega.push_back(w.value(0));
    return c;
}

FpVector RC2n::coords() const {
    std::vector<FpVector> parts{phi.coords()};
    for (const auto& w : omega) parts.push_back(w.coords());
    return FpVector::concat(parts);
}

FpVector omega2_eval(const RC2n& c, const FpVector& x, const std::vector<FpVector>& z) {
    const PrimeField& f = c.phi.field();
    const std::size_t n = c.phi.n();
    FpVector acc(f, c.phi.m());
    std::vector<FpVector> args(2, FpVector(f, n));
    args.insert(args.end(), z.begin(), z.end());
    for (std::size_t k = 0; k < n; ++k) {
        if (!x[k]) continue;
        acc.axpy(f.mul(x[k], x[k]), c.omega[k].eval(z));
        for (std::size_t l = k + 1; l < n; ++l) {
            if (!x[l]) continue;
            args[0] = FpVector::unit(f, n, k);
            args[1] = FpVector::unit(f, n, l);
            acc.axpy(f.mul(x[k], x[l]), c.phi.eval(args));
        }
    }
    return acc;
}

namespace {

std::vector<FpVector> without(const std::vector<FpVector>& z, std::size_t i, std::size_t j = SIZE_MAX) {
    std::vector<FpVector> out;
    for (std::size_t k = 0; k < z.size(); ++k)
        if (k != i && k != j) out.push_back(z[k]);
    return out;
}

FpVector delta_core(const RC2n& c, const PMap& P, const LModule& M, const FpVector& x, const FpVector& x2,
                    const std::vector<FpVector>& z) {
    const LieAlgebra& L = P.algebra;
    std::vector<FpVector> args{x};
    args.insert(args.end(), z.begin(), z.end());
    FpVector r = M.act(x, c.phi.eval(args));
    args[0] = x2;
    r += c.phi.eval(args);
    for (std::size_t i = 0; i < z.size(); ++i) {
        std::vector<FpVector> rest = without(z, i);
        r += M.act(z[i], omega2_eval(c, x, rest));
        std::vector<FpVector> a2{L.bracket(x, z[i]), x};
        a2.insert(a2.end(), rest.begin(), rest.end());
        r += c.phi.eval(a2);
    }
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            std::vector<FpVector> a3{L.bracket(z[i], z[j])};
            auto rest = without(z, i, j);
            a3.insert(a3.end(), rest.begin(), rest.end());
            r += omega2_eval(c, x, a3);
        }
    return r;
}

}  // namespace

FpVector delta_n_eval(const RC2n& c, const PMap& P, const LModule& M, const FpVector& x,
                      const std::vector<FpVector>& z) {
    return delta_core(c, P, M, x, pmap_eval(P, x), z);
}

std::vector<CeCochain> delta_n(const RC2n& c, const PMap& P, const LModule& M) {
    const PrimeField& f = P.field();
    const std::size_t n = P.dim(), q = c.degree();
    std::vector<CeCochain> out(n, CeCochain(f, n, M.dim(), q - 1));
    for (std::size_t i = 0; i < n; ++i) {
        FpVector x = P.algebra.basis(i);
        const TupleIndex& T = out[i].tuples();
        for (std::size_t k = 0; k < T.size(); ++k) {
            std::vector<FpVector> z;
            for (std::size_t b : T.tuple(k)) z.push_back(P.algebra.basis(b));
            out[i].set_value(k, delta_core(c, P, M, x, P.images[i], z));
        }
    }
    return out;
}

RC2n d1_star2(const CeCochain& phi, const PMap& P, const LModule& M) {
    RC2n out = RC2n::zero(P.field(), P.dim(), M.dim(), 2);
    out.phi = ce_differential(phi, M);
    for (std::size_t i = 0; i < P.dim(); ++i)
        out.omega[i].set_value(0, phi.eval({P.images[i]}) + M.act_basis(i, phi.eval_indices({i})));
    return out;
}

RC2n d_star2(const RC2n& c, const PMap& P, const LModule& M) {
    return RC2n{ce_differential(c.phi, M), delta_n(c, P, M)};
}

FpMatrix d_star2_matrix(const PMap& P, const LModule& M, std::size_t q) {
    const PrimeField& f = P.field();
    const std::size_t n = P.dim(), m = M.dim();
    const std::size_t in = c_star2_dim(n, m, q), out = c_star2_dim(n, m, q + 1);
    if (q == 0) return ce_differential_matrix(M, 0);
    if (q == 1)
        return matrix_of(f, in, out, [&](const FpVector& v) {
            return d1_star2(CeCochain::from_coords(f, n, m, 1, v), P, M).coords();
        });
    return matrix_of(f, in, out,
                     [&](const FpVector& v) { return d_star2(RC2n::from_coords(f, n, m, q, v), P, M).coords(); });
}

Expected<CohomologyResult> restricted_cohomology_2(const PMap& P, const LModule& M, std::size_t q) {
    if (P.p() != 2) return make_error(ErrorCode::UnsupportedCharacteristic, "restricted_cohomology_2 needs p = 2");
    auto rm = make_restricted_module(P, M);
    if (!rm) return rm.error();
    FpMatrix next = d_star2_matrix(P, M, q);
    if (q == 0) return cohomology_from(nullptr, next);
    FpMatrix prev = d_star2_matrix(P, M, q - 1);
    return cohomology_from(&prev, next);
}

Expected<CohomologyResult> restricted_cohomology(const PMap& P, const LModule& M, std::size_t q) {
    if (P.p() == 2) return restricted_cohomology_2(P, M, q);
    return restricted_cohomology_p(P, M, q);
}

}  // namespace reslie
