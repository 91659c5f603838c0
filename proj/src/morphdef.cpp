#include "reslie/morphdef.hpp"

#include <random>
#include <stdexcept>

namespace reslie {

namespace {

struct Ctx {
    const Morphism& phi;
    PrimeField f;
    std::size_t nL, nM;
    LModule adL, adM, pb;

    explicit Ctx(const Morphism& m)
        : phi(m),
          f(m.source.field()),
          nL(m.source.dim()),
          nM(m.target.dim()),
          adL(LModule::adjoint(m.source.algebra)),
          adM(LModule::adjoint(m.target.algebra)),
          pb(pullback_adjoint(m)) {}
};

// A o c
CeCochain push(const FpMatrix& A, const CeCochain& c) {
    CeCochain out(c.field(), c.n(), A.rows(), c.degree());
    for (std::size_t k = 0; k < c.tuples().size(); ++k) out.set_value(k, A * c.value(k));
    return out;
}

// c o A^{(x)q}
CeCochain pull(const CeCochain& c, const FpMatrix& A) {
    CeCochain out(c.field(), A.cols(), c.m(), c.degree());
    const TupleIndex& T = out.tuples();
    for (std::size_t k = 0; k < T.size(); ++k) {
        std::vector<FpVector> args;
        for (std::size_t b : T.tuple(k)) args.push_back(A.column(b));
        out.set_value(k, c.eval(args));
    }
    return out;
}

CeCochain alpha_ctx(const Ctx& C, const CeCochain& mu, const CeCochain& nu, const CeCochain& theta) {
    CeCochain out = push(C.phi.matrix, mu);
    out.coords() -= pull(nu, C.phi.matrix).coords();
    out.coords() -= ce_differential(theta, C.pb).coords();
    return out;
}

FpVector beta_ctx(const Ctx& C, const RC2& mo, const RC2& ne, const CeCochain& theta, const FpVector& x) {
    const FpVector px = C.phi.apply(x);
    FpVector r = -ind1_eval(theta, C.phi.source, C.pb, x);
    r += C.phi.apply(omega_eval(mo, C.adL, x));
    r -= omega_eval(ne, C.adM, px);
    return r;
}

std::vector<FpVector> beta_basis(const Ctx& C, const RC2& mo, const RC2& ne, const CeCochain& theta) {
    std::vector<FpVector> out;
    for (std::size_t i = 0; i < C.nL; ++i) out.push_back(beta_ctx(C, mo, ne, theta, C.phi.source.algebra.basis(i)));
    return out;
}

std::vector<CeCochain> beta2_ctx(const Ctx& C, const RC2n& mo, const RC2n& ne, const FpVector& rho) {
    const std::size_t q = mo.degree();
    std::vector<CeCochain> drho;
    if (q == 2)
        drho = d1_star2(CeCochain::from_coords(C.f, C.nL, C.nM, 1, rho), C.phi.source, C.pb).omega;
    else
        drho = delta_n(RC2n::from_coords(C.f, C.nL, C.nM, q - 1, rho), C.phi.source, C.pb);
    std::vector<CeCochain> out;
    for (std::size_t i = 0; i < C.nL; ++i) {
        CeCochain w(C.f, C.nL, C.nM, q - 2);
        const TupleIndex& T = w.tuples();
        const FpVector px = C.phi.matrix.column(i);
        for (std::size_t k = 0; k < T.size(); ++k) {
            std::vector<FpVector> z;
            for (std::size_t b : T.tuple(k)) z.push_back(C.phi.matrix.column(b));
            FpVector v = C.phi.apply(mo.omega[i].value(k)) + omega2_eval(ne, px, z) + drho[i].value(k);
            w.set_value(k, v);
        }
        out.push_back(std::move(w));
    }
    return out;
}

FpVector concat_basis(const std::vector<FpVector>& vs) { return FpVector::concat(vs); }

bool restricted_p(const Morphism& phi) { return phi.source.p() != 2; }

std::optional<std::size_t> first_nonzero(const Jet& j) {
    for (std::size_t k = 0; k < j.precision(); ++k)
        if (!j[k].is_zero()) return k;
    return std::nullopt;
}

const CeCochain* bracket_jet(const TruncatedDeformation& D, std::size_t k) {
    return k <= D.order() ? &D.m[k] : nullptr;
}

FpVector eval_or_zero(const TruncatedDeformation& D, std::size_t k, const FpVector& a, const FpVector& b) {
    const CeCochain* c = bracket_jet(D, k);
    if (!c) return FpVector(D.field(), D.dim());
    return c->eval({a, b});
}

const FpMatrix* phi_at(const MorphismDeformation& MD, std::size_t k) { return k <= MD.order() ? &MD.phi[k] : nullptr; }

FpVector apply_k(const MorphismDeformation& MD, std::size_t k, const FpVector& x) {
    const FpMatrix* m = phi_at(MD, k);
    if (!m) return FpVector(MD.field(), MD.base.target.dim());
    return *m * x;
}

// Source/target truncated to n and phi_{n+1} = 0.
MorphismDeformation obstruction_frame(const MorphismDeformation& MD) {
    const std::size_t n = MD.order();
    MorphismDeformation E = MD;
    E.source = MD.source.truncated(n);
    E.target = MD.target.truncated(n);
    E.phi.emplace_back(MD.field(), MD.base.target.dim(), MD.base.source.dim());
    return E;
}

}  // namespace

// ------------------------------------------------------------- cochains

std::vector<std::size_t> morph_part_dims(const Morphism& phi, std::size_t q, MorphRegime r) {
    const std::size_t nL = phi.source.dim(), nM = phi.target.dim();
    if (q == 0) return {0, 0, 0};
    if (r == MorphRegime::CE) return {binomial(nL, q) * nL, binomial(nM, q) * nM, binomial(nL, q - 1) * nM};
    if (!restricted_p(phi))
        return {c_star2_dim(nL, nL, q), c_star2_dim(nM, nM, q), c_star2_dim(nL, nM, q - 1)};
    auto rc = [](std::size_t n, std::size_t m, std::size_t d) -> std::size_t {
        switch (d) {
            case 0: return m;
            case 1: return n * m;
            case 2: return binomial(n, 2) * m + n * m;
            case 3: return binomial(n, 3) * m + n * n * m;
            default: throw std::invalid_argument("restricted cochains for p >= 3 stop at degree 3");
        }
    };
    std::size_t cross = q == 3 ? binomial(nL, 2) * nM + nL * nM : rc(nL, nM, q - 1);
    return {rc(nL, nL, q), rc(nM, nM, q), cross};
}

std::size_t morph_cochain_dim(const Morphism& phi, std::size_t q, MorphRegime r) {
    auto d = morph_part_dims(phi, q, r);
    return d[0] + d[1] + d[2];
}

MorphCochain split_morph_coords(const Morphism& phi, std::size_t q, MorphRegime r, const FpVector& v) {
    auto d = morph_part_dims(phi, q, r);
    if (v.size() != d[0] + d[1] + d[2]) throw std::invalid_argument("split_morph_coords: wrong length");
    return MorphCochain{q, r, v.slice(0, d[0]), v.slice(d[0], d[1]), v.slice(d[0] + d[1], d[2])};
}

CeCochain morph_alpha(const Morphism& phi, const CeCochain& mu, const CeCochain& nu, const CeCochain& theta) {
    if (nu.degree() != mu.degree() || theta.degree() + 1 != mu.degree())
        throw std::invalid_argument("morph_alpha: inconsistent degrees");
    return alpha_ctx(Ctx(phi), mu, nu, theta);
}

std::vector<FpVector> morph_beta(const Morphism& phi, const RC2& mu_omega, const RC2& nu_eps, const CeCochain& theta) {
    return beta_basis(Ctx(phi), mu_omega, nu_eps, theta);
}

FpVector morph_beta_eval(const Morphism& phi, const RC2& mu_omega, const RC2& nu_eps, const CeCochain& theta,
                         const FpVector& x) {
    return beta_ctx(Ctx(phi), mu_omega, nu_eps, theta, x);
}

std::vector<CeCochain> morph_beta2(const Morphism& phi, const RC2n& mu_omega, const RC2n& nu_eps,
                                   const FpVector& rho_coords) {
    if (phi.source.p() != 2) throw std::invalid_argument("morph_beta2 needs p = 2");
    return beta2_ctx(Ctx(phi), mu_omega, nu_eps, rho_coords);
}

// ---------------------------------------------------------- differentials

FpMatrix morph_ce_matrix(const Morphism& phi, std::size_t q) {
    Ctx C(phi);
    const std::size_t in = morph_cochain_dim(phi, q, MorphRegime::CE);
    const std::size_t out = morph_cochain_dim(phi, q + 1, MorphRegime::CE);
    if (q == 0) return FpMatrix(C.f, out, 0);
    return matrix_of(C.f, in, out, [&](const FpVector& v) {
        MorphCochain c = split_morph_coords(phi, q, MorphRegime::CE, v);
        CeCochain mu = CeCochain::from_coords(C.f, C.nL, C.nL, q, c.source);
        CeCochain nu = CeCochain::from_coords(C.f, C.nM, C.nM, q, c.target);
        CeCochain th = CeCochain::from_coords(C.f, C.nL, C.nM, q - 1, c.cross);
        return FpVector::concat({ce_differential(mu, C.adL).coords(), ce_differential(nu, C.adM).coords(),
                                 alpha_ctx(C, mu, nu, th).coords()});
    });
}

namespace {

FpMatrix restricted_matrix_p(const Ctx& C, std::size_t q) {
    const Morphism& phi = C.phi;
    const std::size_t in = morph_cochain_dim(phi, q, MorphRegime::Restricted);
    const std::size_t out = morph_cochain_dim(phi, q + 1, MorphRegime::Restricted);
    const PrimeField& f = C.f;
    if (q == 0) return FpMatrix(f, out, 0);
    if (q == 1)
        return matrix_of(f, in, out, [&](const FpVector& v) {
            MorphCochain c = split_morph_coords(phi, 1, MorphRegime::Restricted, v);
            CeCochain g = CeCochain::from_coords(f, C.nL, C.nL, 1, c.source);
            CeCochain t = CeCochain::from_coords(f, C.nM, C.nM, 1, c.target);
            CeCochain m = CeCochain::from_coords(f, C.nL, C.nM, 0, c.cross);
            return FpVector::concat({d1_star(g, phi.source, C.adL).coords(), d1_star(t, phi.target, C.adM).coords(),
                                     alpha_ctx(C, g, t, m).coords()});
        });
    return matrix_of(f, in, out, [&](const FpVector& v) {
        MorphCochain c = split_morph_coords(phi, 2, MorphRegime::Restricted, v);
        RC2 mo = RC2::from_coords(f, C.nL, C.nL, c.source);
        RC2 ne = RC2::from_coords(f, C.nM, C.nM, c.target);
        CeCochain th = CeCochain::from_coords(f, C.nL, C.nM, 1, c.cross);
        return FpVector::concat({d2_star(mo, phi.source, C.adL).coords(), d2_star(ne, phi.target, C.adM).coords(),
                                 alpha_ctx(C, mo.phi, ne.phi, th).coords(), concat_basis(beta_basis(C, mo, ne, th))});
    });
}

FpMatrix restricted_matrix_2(const Ctx& C, std::size_t q) {
    const Morphism& phi = C.phi;
    const std::size_t in = morph_cochain_dim(phi, q, MorphRegime::Restricted);
    const std::size_t out = morph_cochain_dim(phi, q + 1, MorphRegime::Restricted);
    const PrimeField& f = C.f;
    if (q == 0) return FpMatrix(f, out, 0);
    if (q == 1)
        return matrix_of(f, in, out, [&](const FpVector& v) {
            MorphCochain c = split_morph_coords(phi, 1, MorphRegime::Restricted, v);
            CeCochain g = CeCochain::from_coords(f, C.nL, C.nL, 1, c.source);
            CeCochain t = CeCochain::from_coords(f, C.nM, C.nM, 1, c.target);
            CeCochain m = CeCochain::from_coords(f, C.nL, C.nM, 0, c.cross);
            return FpVector::concat({d1_star2(g, phi.source, C.adL).coords(), d1_star2(t, phi.target, C.adM).coords(),
                                     alpha_ctx(C, g, t, m).coords()});
        });
    return matrix_of(f, in, out, [&](const FpVector& v) {
        MorphCochain c = split_morph_coords(phi, q, MorphRegime::Restricted, v);
        RC2n mo = RC2n::from_coords(f, C.nL, C.nL, q, c.source);
        RC2n ne = RC2n::from_coords(f, C.nM, C.nM, q, c.target);
        CeCochain th = q == 2 ? CeCochain::from_coords(f, C.nL, C.nM, 1, c.cross)
                              : RC2n::from_coords(f, C.nL, C.nM, q - 1, c.cross).phi;
        RC2n cross{alpha_ctx(C, mo.phi, ne.phi, th), beta2_ctx(C, mo, ne, c.cross)};
        return FpVector::concat({d_star2(mo, phi.source, C.adL).coords(), d_star2(ne, phi.target, C.adM).coords(),
                                 cross.coords()});
    });
}

}  // namespace

Expected<FpMatrix> morph_restricted_matrix(const Morphism& phi, std::size_t q) {
    if (restricted_p(phi) && q > 2)
        return make_error(ErrorCode::DegreeOutOfRange, "restricted morphism complex for p >= 3 stops at degree 3");
    Ctx C(phi);
    return restricted_p(phi) ? restricted_matrix_p(C, q) : restricted_matrix_2(C, q);
}

Expected<FpMatrix> morph_matrix(const Morphism& phi, std::size_t q, MorphRegime r) {
    if (r == MorphRegime::CE) return morph_ce_matrix(phi, q);
    return morph_restricted_matrix(phi, q);
}

Expected<CohomologyResult> morph_cohomology(const Morphism& phi, std::size_t q, MorphRegime r) {
    if (phi.source.field() != phi.target.field())
        return make_error(ErrorCode::DimensionMismatch, "source and target over different fields");
    if (!check_morphism(phi).lie_ok) return make_error(ErrorCode::NotLieMorphism, "phi does not preserve brackets");
    if (r == MorphRegime::Restricted && restricted_p(phi) && q > 2)
        return make_error(ErrorCode::DegreeOutOfRange, "restricted morphism cohomology for p >= 3 needs q <= 2");
    auto next = morph_matrix(phi, q, r);
    if (!next) return next.error();
    if (q == 0) return cohomology_from(nullptr, *next);
    auto prev = morph_matrix(phi, q - 1, r);
    if (!prev) return prev.error();
    return cohomology_from(&*prev, *next);
}

ThetaKernel morph_theta_kernel(const Morphism& phi, const RC2& mu_omega, const RC2& nu_eps) {
    Ctx C(phi);
    const PrimeField& f = C.f;
    const std::size_t dim = C.nL * C.nM;
    const RC2 zl = RC2::zero(f, C.nL, C.nL), zm = RC2::zero(f, C.nM, C.nM);
    auto lin = [&](const FpVector& v) {
        CeCochain th = CeCochain::from_coords(f, C.nL, C.nM, 1, v);
        return FpVector::concat({alpha_ctx(C, zl.phi, zm.phi, th).coords(), concat_basis(beta_basis(C, zl, zm, th))});
    };
    const std::size_t out = binomial(C.nL, 2) * C.nM + C.nL * C.nM;
    FpMatrix A = matrix_of(f, dim, out, lin);
    ThetaKernel K;
    K.linear = kernel_basis(A);
    CeCochain zero(f, C.nL, C.nM, 1);
    FpVector b = -FpVector::concat(
        {alpha_ctx(C, mu_omega.phi, nu_eps.phi, zero).coords(), concat_basis(beta_basis(C, mu_omega, nu_eps, zero))});
    auto s = solve(A, b);
    if (s && s->has_value()) K.particular = **s;

    std::vector<FpVector> gens;
    for (const auto& g : kernel_basis(restricted_d1_matrix(phi.source)))
        gens.push_back(push(phi.matrix, CeCochain::from_coords(f, C.nL, C.nL, 1, g)).coords());
    for (const auto& t : kernel_basis(restricted_d1_matrix(phi.target)))
        gens.push_back(-pull(CeCochain::from_coords(f, C.nM, C.nM, 1, t), phi.matrix).coords());
    FpMatrix d0 = ce_differential_matrix(C.pb, 0);
    for (std::size_t j = 0; j < d0.cols(); ++j) gens.push_back(d0.column(j));
    K.coboundaries = column_space_basis(FpMatrix::from_columns(f, dim, gens));
    return K;
}

// ---------------------------------------------------------- deformations

MorphismDeformation MorphismDeformation::constant(const Morphism& base, std::size_t order) {
    MorphismDeformation MD{base, {base.matrix}, TruncatedDeformation::constant(base.source, order),
                           TruncatedDeformation::constant(base.target, order)};
    for (std::size_t k = 0; k < order; ++k) MD.phi.emplace_back(base.matrix.field(), base.target.dim(), base.source.dim());
    return MD;
}

MorphismDeformation MorphismDeformation::truncated(std::size_t N) const {
    MorphismDeformation out = *this;
    if (out.phi.size() > N + 1) out.phi.erase(out.phi.begin() + static_cast<std::ptrdiff_t>(N + 1), out.phi.end());
    out.source = source.truncated(N);
    out.target = target.truncated(N);
    return out;
}

Jet MorphismDeformation::apply(const Jet& u) const {
    Jet out(u.field(), base.target.dim(), u.precision());
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; i + j < u.precision(); ++j)
            if (!u[j].is_zero()) out[i + j] += phi[i] * u[j];
    return out;
}

namespace {

Jet bracket_side(const MorphismDeformation& MD, const Jet& x, const Jet& y) {
    return MD.apply(MD.source.bracket(x, y)) - MD.target.bracket(MD.apply(x), MD.apply(y));
}

Jet pmap_side(const MorphismDeformation& MD, const Jet& x) {
    return MD.apply(MD.source.pmap(x)) - MD.target.pmap(MD.apply(x));
}

}  // namespace

FpVector morph_residual(const MorphismDeformation& MD, std::size_t k) {
    const std::size_t nL = MD.base.source.dim(), prec = k + 1;
    const LieAlgebra& L = MD.base.source.algebra;
    std::vector<FpVector> parts;
    for (std::size_t a = 0; a < nL; ++a)
        for (std::size_t b = a + 1; b < nL; ++b)
            parts.push_back(bracket_side(MD, Jet::constant(L.basis(a), prec), Jet::constant(L.basis(b), prec))[k]);
    for (std::size_t a = 0; a < nL; ++a) parts.push_back(pmap_side(MD, Jet::constant(L.basis(a), prec))[k]);
    return FpVector::concat(parts);
}

DeformationReport check_morphism_deformation(const MorphismDeformation& MD, int samples, std::uint64_t seed) {
    const std::size_t nL = MD.base.source.dim(), prec = MD.order() + 1;
    const LieAlgebra& L = MD.base.source.algebra;
    DeformationReport rep;
    auto record = [&](const Jet& diff, const char* kind, std::vector<FpVector> args) {
        auto deg = first_nonzero(diff);
        if (!deg) return;
        if (rep.ok || *deg < rep.degree) {
            rep.ok = false;
            rep.degree = *deg;
            rep.kind = kind;
            rep.args = std::move(args);
            rep.residual = diff[*deg];
        }
    };
    auto cst = [&](const FpVector& v) { return Jet::constant(v, prec); };
    for (std::size_t a = 0; a < nL; ++a)
        for (std::size_t b = a + 1; b < nL; ++b)
            record(bracket_side(MD, cst(L.basis(a)), cst(L.basis(b))), "bracket", {L.basis(a), L.basis(b)});
    for (std::size_t a = 0; a < nL; ++a) record(pmap_side(MD, cst(L.basis(a))), "pmap", {L.basis(a)});
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        FpVector x = random_vector(MD.field(), nL, rng), y = random_vector(MD.field(), nL, rng);
        record(bracket_side(MD, cst(x), cst(y)), "bracket", {x, y});
        record(pmap_side(MD, cst(x)), "pmap", {x});
    }
    return rep;
}

// ----------------------------------------------------------- obstructions

FpVector morph_obstruction1_eval(const MorphismDeformation& MD, const FpVector& x, const FpVector& y) {
    const std::size_t n = MD.order();
    MorphismDeformation E = obstruction_frame(MD);
    return -bracket_side(E, Jet::constant(x, n + 2), Jet::constant(y, n + 2))[n + 1];
}

FpVector morph_obstruction2_eval(const MorphismDeformation& MD, const FpVector& x) {
    const std::size_t n = MD.order();
    MorphismDeformation E = obstruction_frame(MD);
    return -pmap_side(E, Jet::constant(x, n + 2))[n + 1];
}

Expected<MorphObstruction> morph_obstruction(const MorphismDeformation& MD) {
    const std::size_t n = MD.order();
    if (n == 0) return make_error(ErrorCode::OrderUnsupported, "obstructions start at order 1");
    if (restricted_p(MD.base) && n > 1)
        return make_error(ErrorCode::OrderUnsupported, "p >= 3 morphism obstructions are derived for order 1 only");
    const PrimeField& f = MD.field();
    const std::size_t nL = MD.base.source.dim(), nM = MD.base.target.dim();
    FpVector r = -morph_residual(obstruction_frame(MD), n + 1);
    MorphObstruction o{CeCochain(f, nL, nM, 2), {}};
    const std::size_t pairs = o.obs1.coord_dim();
    o.obs1.coords() = r.slice(0, pairs);
    for (std::size_t a = 0; a < nL; ++a) o.obs2.push_back(r.slice(pairs + a * nM, nM));
    return o;
}

FpVector morph_obs1_display(const MorphismDeformation& MD, const FpVector& x, const FpVector& y) {
    const std::size_t n = MD.order();
    const std::size_t nM = MD.base.target.dim();
    const TruncatedDeformation& S = MD.source;
    const TruncatedDeformation& T = MD.target;
    FpVector acc(MD.field(), nM);
    if (restricted_p(MD.base)) {
        const FpVector py = MD.base.apply(y);
        for (std::size_t i = 1; i <= n; ++i) {
            acc += eval_or_zero(T, i, apply_k(MD, n + 1 - i, x), py);
            acc -= apply_k(MD, i, eval_or_zero(S, n + 1 - i, x, y));
            for (std::size_t j = 0; j <= i; ++j)
                acc += eval_or_zero(T, j, apply_k(MD, i - j, x), apply_k(MD, n + 1 - i, y));
        }
        return acc;
    }
    for (std::size_t i = 1; i <= n; ++i) acc += apply_k(MD, i, eval_or_zero(S, n + 1 - i, x, y));
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            if (i + j <= n + 1 && n + 1 - i - j <= n)
                acc += eval_or_zero(T, n + 1 - i - j, apply_k(MD, i, x), apply_k(MD, j, y));
    return acc;
}

Expected<FpVector> morph_obs2_display(const MorphismDeformation& MD, const FpVector& x) {
    const std::size_t n = MD.order();
    const PrimeField& f = MD.field();
    const LieAlgebra& Mal = MD.base.target.algebra;
    const LModule adL = LModule::adjoint(MD.base.source.algebra);
    if (restricted_p(MD.base)) {
        if (n != 1) return make_error(ErrorCode::OrderUnsupported, "the p >= 3 display covers order 1 only");
        const unsigned p = f.p();
        const FpVector px = MD.base.apply(x), p1x = apply_k(MD, 1, x);
        auto adpow = [&](FpVector v, unsigned k) {
            for (unsigned r = 0; r < k; ++r) v = Mal.bracket(px, v);
            return v;
        };
        FpVector acc = adpow(p1x, p - 1) - MD.base.apply(omega_eval(MD.source.coefficient(1), adL, x));
        for (unsigned i = 0; i + 2 <= p; ++i) acc -= adpow(Mal.bracket(p1x, adpow(p1x, p - 2 - i)), i);
        return acc;
    }
    FpVector acc(f, MD.base.target.dim());
    for (std::size_t i = 1; i <= n; ++i)
        acc += apply_k(MD, i, omega_eval(MD.source.coefficient(n + 1 - i), adL, x));
    for (std::size_t j = 1; 2 * j < n + 1; ++j) acc += Mal.bracket(apply_k(MD, j, x), apply_k(MD, n + 1 - j, x));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 0; 2 * j < n + 1 - i; ++j)
            acc += eval_or_zero(MD.target, i, apply_k(MD, j, x), apply_k(MD, n + 1 - i - j, x));
    return acc;
}

Expected<FpVector> morph_obs2_corrected(const MorphismDeformation& MD, const FpVector& x) {
    if (restricted_p(MD.base)) return make_error(ErrorCode::UnsupportedCharacteristic, "corrected display is for p = 2");
    auto d = morph_obs2_display(MD, x);
    if (!d) return d;
    const std::size_t n = MD.order();
    const LModule adM = LModule::adjoint(MD.base.target.algebra);
    FpVector acc = *d;
    for (std::size_t j = 1; 2 * j <= n + 1; ++j) {
        const std::size_t l = n + 1 - 2 * j;
        const FpVector v = apply_k(MD, j, x);
        acc += l == 0 ? pmap_eval(MD.base.target, v) : omega_eval(MD.target.coefficient(l), adM, v);
    }
    return acc;
}

std::optional<MorphismDeformation> extend_morphism(const MorphismDeformation& MD) {
    const std::size_t n = MD.order();
    if (MD.source.order() < n + 1 || MD.target.order() < n + 1)
        throw std::invalid_argument("extend_morphism: source and target need order n + 1");
    const PrimeField& f = MD.field();
    const std::size_t nL = MD.base.source.dim(), nM = MD.base.target.dim();
    MorphismDeformation E = MD;
    E.phi.emplace_back(f, nM, nL);
    const FpVector r0 = morph_residual(E, n + 1);
    FpMatrix A(f, r0.size(), nL * nM);
    for (std::size_t c = 0; c < nL * nM; ++c) {
        MorphismDeformation T = E;
        T.phi[n + 1](c % nM, c / nM) = 1;
        FpVector col = morph_residual(T, n + 1) - r0;
        for (std::size_t i = 0; i < col.size(); ++i) A(i, c) = col[i];
    }
    auto s = solve(A, -r0);
    if (!s || !s->has_value()) return std::nullopt;
    const FpVector& v = **s;
    for (std::size_t c = 0; c < nL * nM; ++c) E.phi[n + 1](c % nM, c / nM) = v[c];
    return E;
}

MorphismDeformation twist_morphism(const MorphismDeformation& MD, const FormalAutomorphismJet& f,
                                   const FormalAutomorphismJet& g) {
    const std::size_t N = MD.order();
    const PrimeField& F = MD.field();
    const std::size_t nL = MD.base.source.dim(), nM = MD.base.target.dim();
    MorphismDeformation out = MD;
    out.source = twist(MD.source, f);
    out.target = twist(MD.target, g);
    FormalAutomorphismJet fi = f.inverse();
    auto at = [](const std::vector<FpMatrix>& v, std::size_t k, const FpMatrix& zero) {
        return k < v.size() ? v[k] : zero;
    };
    const FpMatrix zL(F, nL, nL), zM(F, nM, nM), zLM(F, nM, nL);
    for (std::size_t k = 0; k <= N; ++k) {
        FpMatrix acc(F, nM, nL);
        for (std::size_t a = 0; a <= k; ++a)
            for (std::size_t b = 0; a + b <= k; ++b)
                acc = acc + at(g.phi, a, zM) * at(MD.phi, b, zLM) * at(fi.phi, k - a - b, zL);
        out.phi[k] = acc;
    }
    return out;
}

}  // namespace reslie
