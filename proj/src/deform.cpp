#include "reslie/deform.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace reslie {

// ---------------------------------------------------------------- Jet

Jet Jet::constant(const FpVector& v, std::size_t prec) {
    Jet j(v.field(), v.size(), prec);
    if (prec) j.c_[0] = v;
    return j;
}

void Jet::axpy(residue a, const Jet& o) {
    for (std::size_t k = 0; k < c_.size() && k < o.c_.size(); ++k) c_[k].axpy(a, o.c_[k]);
}

Jet& Jet::operator+=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size() && k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    for (std::size_t k = 0; k < c_.size() && k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Jet Jet::operator+(const Jet& o) const {
    Jet r = *this;
    return r += o;
}

Jet Jet::operator-(const Jet& o) const {
    Jet r = *this;
    return r -= o;
}

Jet Jet::scaled(residue a) const {
    Jet r = *this;
    for (auto& v : r.c_) v = v.scaled(a);
    return r;
}

Jet Jet::shifted(std::size_t k) const {
    Jet r(field(), dim(), precision());
    for (std::size_t i = 0; i + k < c_.size(); ++i) r.c_[i + k] = c_[i];
    return r;
}

bool Jet::is_zero() const {
    for (const auto& v : c_)
        if (!v.is_zero()) return false;
    return true;
}

namespace {

std::optional<std::size_t> first_nonzero(const Jet& j) {
    for (std::size_t k = 0; k < j.precision(); ++k)
        if (!j[k].is_zero()) return k;
    return std::nullopt;
}

// Bilinear evaluation of a 2-cochain, skipping the generic multilinear machinery.
FpVector eval2(const CeCochain& c, const FpVector& a, const FpVector& b) {
    const PrimeField& f = c.field();
    const TupleIndex& T = c.tuples();
    const std::size_t m = c.m();
    FpVector out(f, m);
    const auto& raw = c.coords().raw();
    for (std::size_t k = 0; k < T.size(); ++k) {
        const auto& t = T.tuple(k);
        residue s = f.sub(f.mul(a[t[0]], b[t[1]]), f.mul(a[t[1]], b[t[0]]));
        if (!s) continue;
        for (std::size_t r = 0; r < m; ++r)
            if (raw[k * m + r]) out[r] = f.add(out[r], f.mul(s, raw[k * m + r]));
    }
    return out;
}

FpMatrix coord_matrix(const PrimeField& f, std::size_t n, std::size_t c) {
    FpMatrix a(f, n, n);
    a(c % n, c / n) = 1;
    return a;
}

}  // namespace

// ------------------------------------------------------- automorphisms

FormalAutomorphismJet FormalAutomorphismJet::identity(const PrimeField& f, std::size_t n, std::size_t order) {
    FormalAutomorphismJet j;
    j.phi.push_back(FpMatrix::identity(f, n));
    for (std::size_t k = 0; k < order; ++k) j.phi.emplace_back(f, n, n);
    return j;
}

Jet FormalAutomorphismJet::apply(const Jet& u) const {
    Jet out(u.field(), phi[0].rows(), u.precision());
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (std::size_t j = 0; i + j < u.precision(); ++j)
            if (!u[j].is_zero()) out[i + j] += phi[i] * u[j];
    return out;
}

FormalAutomorphismJet FormalAutomorphismJet::inverse() const {
    const PrimeField& f = phi[0].field();
    const std::size_t n = phi[0].rows();
    if (phi[0] != FpMatrix::identity(f, n)) throw std::invalid_argument("FormalAutomorphismJet: phi_0 must be the identity");
    FormalAutomorphismJet r;
    r.phi.push_back(phi[0]);
    for (std::size_t k = 1; k < phi.size(); ++k) {
        FpMatrix acc(f, n, n);
        for (std::size_t j = 1; j <= k; ++j) acc = acc - phi[j] * r.phi[k - j];
        r.phi.push_back(acc);
    }
    return r;
}

// -------------------------------------------------------- deformations

CeCochain bracket_cochain(const LieAlgebra& L) {
    CeCochain c(L.field(), L.dim(), L.dim(), 2);
    const TupleIndex& T = c.tuples();
    for (std::size_t k = 0; k < T.size(); ++k) c.set_value(k, L.structure(T.tuple(k)[0], T.tuple(k)[1]));
    return c;
}

TruncatedDeformation TruncatedDeformation::constant(const PMap& P, std::size_t order) {
    TruncatedDeformation D{P, {bracket_cochain(P.algebra)}, {P.images}};
    for (std::size_t k = 0; k < order; ++k) D.append(RC2::zero(P.field(), P.dim(), P.dim()));
    return D;
}

TruncatedDeformation TruncatedDeformation::infinitesimal(const PMap& P, const RC2& c) {
    TruncatedDeformation D = constant(P);
    D.append(c);
    return D;
}

RC2 TruncatedDeformation::coefficient(std::size_t k) const {
    if (k > order()) return RC2::zero(field(), dim(), dim());
    return RC2{m[k], omega[k]};
}

void TruncatedDeformation::append(const RC2& c) {
    if (c.phi.n() != dim() || c.phi.m() != dim()) throw std::invalid_argument("TruncatedDeformation::append: shape");
    m.push_back(c.phi);
    omega.push_back(c.omega);
}

TruncatedDeformation TruncatedDeformation::truncated(std::size_t N) const {
    TruncatedDeformation D = *this;
    D.m.resize(std::min(N + 1, m.size()), m[0]);
    D.omega.resize(D.m.size());
    return D;
}

Jet TruncatedDeformation::bracket(const Jet& a, const Jet& b, std::size_t max_order) const {
    const std::size_t prec = std::min(a.precision(), b.precision());
    Jet out(field(), dim(), prec);
    const std::size_t top = std::min(order(), max_order);
    for (std::size_t i = 0; i < prec; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < prec; ++j) {
            if (b[j].is_zero()) continue;
            for (std::size_t l = 0; l <= top && i + j + l < prec; ++l) out[i + j + l] += eval2(m[l], a[i], b[j]);
        }
    }
    return out;
}

Jet TruncatedDeformation::pmap_basis(std::size_t i, std::size_t prec) const {
    Jet out(field(), dim(), prec);
    for (std::size_t l = 0; l <= order() && l < prec; ++l) out[l] = omega[l][i];
    return out;
}

Jet TruncatedDeformation::pmap(const Jet& v) const {
    const PrimeField& f = field();
    const std::size_t prec = v.precision(), n = dim();
    const Jet zero(f, n, prec);
    Jet acc = zero, val = zero;
    auto br = [&](const Jet& a, const Jet& b) { return bracket(a, b); };
    for (std::size_t k = 0; k < prec; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const residue c = v[k][i];
            if (!c) continue;
            Jet term = zero;
            term[k][i] = c;
            // (c t^k e_i)^[p] = c^p t^{pk} omega_t(e_i)
            const std::size_t shift = static_cast<std::size_t>(f.p()) * k;
            if (shift < prec) val.axpy(f.pow(c, f.p()), pmap_basis(i, prec).shifted(shift));
            if (!acc.is_zero()) val += s_terms_generic(acc, term, zero, f, br);
            acc += term;
        }
    return val;
}

DeformationReport check_deformation(const TruncatedDeformation& D, int samples, std::uint64_t seed) {
    const PrimeField& f = D.field();
    const std::size_t n = D.dim(), prec = D.order() + 1;
    const unsigned p = D.p();
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
    auto nested = [&](const Jet& x, const Jet& y) {
        Jet r = x;
        for (unsigned k = 0; k < p; ++k) r = D.bracket(r, y);
        return r;
    };
    const LieAlgebra& L = D.base.algebra;

    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                Jet x = cst(L.basis(a)), y = cst(L.basis(b)), z = cst(L.basis(c));
                Jet j = D.bracket(x, D.bracket(y, z)) + D.bracket(y, D.bracket(z, x)) + D.bracket(z, D.bracket(x, y));
                record(j, "jacobi", {L.basis(a), L.basis(b), L.basis(c)});
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Jet x = cst(L.basis(a)), y = cst(L.basis(b));
            record(D.bracket(x, D.pmap_basis(b, prec)) - nested(x, y), "pmap", {L.basis(a), L.basis(b)});
        }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        FpVector xv = random_vector(f, n, rng), yv = random_vector(f, n, rng);
        Jet x = cst(xv), y = cst(yv);
        Jet wy = D.pmap(y);
        record(D.bracket(x, wy) - nested(x, y), "pmap", {xv, yv});
        Jet add = D.pmap(x + y) - D.pmap(x) - wy;
        if (p == 2)
            add -= D.bracket(x, y);
        else
            add -= s_terms_generic(x, y, Jet(f, n, prec), f, [&](const Jet& u, const Jet& v) { return D.bracket(u, v); });
        record(add, "polarization", {xv, yv});
    }
    return rep;
}

FpMatrix restricted_d1_matrix(const PMap& P) {
    LModule M = LModule::adjoint(P.algebra);
    return P.p() == 2 ? d_star2_matrix(P, M, 1) : d1_star_matrix(P, M);
}

FpMatrix restricted_d2_matrix(const PMap& P) {
    LModule M = LModule::adjoint(P.algebra);
    return P.p() == 2 ? d_star2_matrix(P, M, 2) : d2_star_matrix(P, M);
}

FpVector restricted_d2(const PMap& P, const RC2& c) {
    LModule M = LModule::adjoint(P.algebra);
    if (P.p() == 2) return d_star2(RC2n::from_rc2(c), P, M).coords();
    return d2_star(c, P, M).coords();
}

InfinitesimalReport infinitesimal(const TruncatedDeformation& D) {
    InfinitesimalReport r{D.coefficient(1)};
    r.cocycle = restricted_d2(D.base, r.cochain).is_zero();
    auto s = solve(restricted_d1_matrix(D.base), r.cochain.coords());
    r.coboundary = s && s->has_value();
    return r;
}

// ---------------------------------------------------------- equivalence

FpVector equivalence_residual(const TruncatedDeformation& D, const TruncatedDeformation& Dp,
                              const FormalAutomorphismJet& phi, std::size_t k) {
    const std::size_t n = D.dim(), prec = k + 1;
    const LieAlgebra& L = D.base.algebra;
    std::vector<FpVector> parts;
    auto image = [&](std::size_t a) { return phi.apply(Jet::constant(L.basis(a), prec)); };
    const TupleIndex& T = *tuple_index(n, 2);
    for (std::size_t t = 0; t < T.size(); ++t) {
        std::size_t a = T.tuple(t)[0], b = T.tuple(t)[1];
        Jet lhs = Dp.bracket(image(a), image(b));
        Jet rhs = phi.apply(D.bracket(Jet::constant(L.basis(a), prec), Jet::constant(L.basis(b), prec)));
        parts.push_back(lhs[k] - rhs[k]);
    }
    for (std::size_t a = 0; a < n; ++a) {
        Jet lhs = phi.apply(D.pmap_basis(a, prec));
        Jet rhs = Dp.pmap(image(a));
        parts.push_back(lhs[k] - rhs[k]);
    }
    return FpVector::concat(parts);
}

EquivalenceResult equivalence_solve(const TruncatedDeformation& D, const TruncatedDeformation& Dp, std::size_t N,
                                    std::size_t search_cap) {
    const PrimeField& f = D.field();
    const std::size_t n = D.dim();
    EquivalenceResult res;
    FormalAutomorphismJet phi = FormalAutomorphismJet::identity(f, n, 0);
    if (!equivalence_residual(D, Dp, phi, 0).is_zero()) return res;
    if (N == 0) {
        res.verified = true;
        res.jet = std::move(phi);
        return res;
    }

    // The part linear in phi_k only involves order-0 data, so one matrix serves every order.
    phi.phi.emplace_back(f, n, n);
    const FpVector base = equivalence_residual(D, Dp, phi, 1);
    std::vector<FpVector> cols;
    for (std::size_t c = 0; c < n * n; ++c) {
        phi.phi[1] = coord_matrix(f, n, c);
        cols.push_back(equivalence_residual(D, Dp, phi, 1) - base);
    }
    const FpMatrix A = FpMatrix::from_columns(f, base.size(), cols);
    const std::vector<FpVector> gauge = kernel_basis(A);
    phi.phi.pop_back();

    auto to_matrix = [&](const FpVector& v) { return matrix_from_cochain(CeCochain::from_coords(f, n, n, 1, v)); };
    auto residual_at = [&](std::size_t k) {
        phi.phi[k] = FpMatrix(f, n, n);
        return equivalence_residual(D, Dp, phi, k);
    };
    auto solve_order = [&](std::size_t k) -> std::optional<FpVector> {
        auto s = solve(A, -residual_at(k));
        if (!s || !s->has_value()) return std::nullopt;
        return **s;
    };
    // Solves A x + L s = -R for (x, s), where L s is the change of the order-k residual under
    // phi_{k-1} -> phi_{k-1} + s, s in the gauge space; exact when that change is affine in s.
    auto solve_shifted = [&](std::size_t k) -> bool {
        const FpMatrix pinned = phi.phi[k - 1];
        const FpVector r0 = residual_at(k);
        std::vector<FpVector> all = cols;
        for (const auto& g : gauge) {
            phi.phi[k - 1] = pinned + to_matrix(g);
            all.push_back(residual_at(k) - r0);
        }
        phi.phi[k - 1] = pinned;
        auto s = solve(FpMatrix::from_columns(f, r0.size(), all), -r0);
        if (!s || !s->has_value()) return false;
        FpVector shift(f, n * n);
        for (std::size_t g = 0; g < gauge.size(); ++g) shift.axpy((**s)[n * n + g], gauge[g]);
        phi.phi[k - 1] = pinned + to_matrix(shift);
        if (solve_order(k)) return true;
        phi.phi[k - 1] = pinned;
        return false;
    };

    // phi_1 runs through its gauge class when that has at most search_cap elements; deeper orders use the
    // particular solution plus the linear shift of the previous order.
    const double space = std::pow(static_cast<double>(f.p()), static_cast<double>(gauge.size()));
    const bool enumerate = !gauge.empty() && space <= static_cast<double>(search_cap);
    std::size_t budget = search_cap;
    std::mt19937_64 restart_rng(0x9a);
    std::function<bool(std::size_t)> descend = [&](std::size_t k) -> bool {
        if (k > N) return true;
        if (budget == 0) return false;
        --budget;
        if (phi.phi.size() <= k) phi.phi.emplace_back(f, n, n);
        auto x = solve_order(k);
        if (!x && k >= 2 && !gauge.empty() && solve_shifted(k)) x = solve_order(k);
        // order 2 sees phi_1 quadratically: linearize around random points of its gauge class
        if (!x && k == 2 && !enumerate) {
            const FpMatrix pinned = phi.phi[1];
            for (std::size_t attempt = 0; !x && attempt < search_cap / 16; ++attempt) {
                FpVector shift(f, n * n);
                for (const auto& g : gauge) shift.axpy(static_cast<residue>(restart_rng() % f.p()), g);
                phi.phi[1] = pinned + to_matrix(shift);
                if (solve_shifted(k)) x = solve_order(k);
                if (!x) phi.phi[1] = pinned;
            }
        }
        if (!x) {
            res.failed_order = std::max(res.failed_order, k);
            return false;
        }
        std::vector<residue> digits(gauge.size(), 0);
        while (true) {
            FpVector v = *x;
            for (std::size_t g = 0; g < gauge.size(); ++g) v.axpy(digits[g], gauge[g]);
            phi.phi[k] = to_matrix(v);
            if (descend(k + 1)) return true;
            if (k != 1 || !enumerate || budget == 0) return false;
            std::size_t pos = 0;
            while (pos < digits.size() && ++digits[pos] == f.p()) digits[pos++] = 0;
            if (pos == digits.size()) return false;
        }
    };
    for (std::size_t k = 1; k <= N; ++k) res.gauge_dims.push_back(gauge.size());
    if (!descend(1)) return res;
    res.failed_order = 0;

    // independent re-check on random elements
    std::mt19937_64 rng(0xe9);
    bool ok = true;
    const std::size_t prec = N + 1;
    for (int s = 0; s < 10 && ok; ++s) {
        Jet x = Jet::constant(random_vector(f, n, rng), prec), y = Jet::constant(random_vector(f, n, rng), prec);
        ok = (Dp.bracket(phi.apply(x), phi.apply(y)) - phi.apply(D.bracket(x, y))).is_zero() &&
             (phi.apply(D.pmap(x)) - Dp.pmap(phi.apply(x))).is_zero();
    }
    res.verified = ok;
    res.jet = std::move(phi);
    return res;
}

TruncatedDeformation twist(const TruncatedDeformation& D, const FormalAutomorphismJet& phi_in) {
    const PrimeField& f = D.field();
    const std::size_t n = D.dim(), N = D.order(), prec = N + 1;
    FormalAutomorphismJet phi = phi_in;
    phi.phi.resize(std::min(phi.phi.size(), prec), FpMatrix(f, n, n));
    FormalAutomorphismJet inv = phi.inverse();
    const LieAlgebra& L = D.base.algebra;
    std::vector<Jet> pre;
    for (std::size_t a = 0; a < n; ++a) pre.push_back(inv.apply(Jet::constant(L.basis(a), prec)));

    TruncatedDeformation out = TruncatedDeformation::constant(D.base, N);
    const TupleIndex& T = *tuple_index(n, 2);
    for (std::size_t t = 0; t < T.size(); ++t) {
        Jet w = phi.apply(D.bracket(pre[T.tuple(t)[0]], pre[T.tuple(t)[1]]));
        for (std::size_t k = 0; k <= N; ++k) out.m[k].set_value(t, w[k]);
    }
    for (std::size_t a = 0; a < n; ++a) {
        Jet w = phi.apply(D.pmap(pre[a]));
        for (std::size_t k = 0; k <= N; ++k) out.omega[k][a] = w[k];
    }
    return out;
}

// ---------------------------------------------------------- obstructions

FpVector ObstructionPair::coords() const {
    std::vector<FpVector> parts{obs1.coords()};
    parts.insert(parts.end(), obs2.begin(), obs2.end());
    return FpVector::concat(parts);
}

FpVector obstruction1_eval(const TruncatedDeformation& D, const FpVector& x, const FpVector& y, const FpVector& z) {
    const std::size_t n = D.order();
    FpVector acc(D.field(), D.dim());
    for (std::size_t i = 1; i <= n; ++i) {
        const CeCochain& a = D.m[i];
        const CeCochain& b = D.m[n + 1 - i];
        acc += eval2(a, x, eval2(b, y, z)) + eval2(a, y, eval2(b, z, x)) + eval2(a, z, eval2(b, x, y));
    }
    return -acc;
}

FpVector obstruction2_eval(const TruncatedDeformation& D, const FpVector& x, const FpVector& y) {
    const PrimeField& f = D.field();
    const std::size_t n = D.order(), prec = n + 2;
    FpVector acc(f, D.dim());
    if (D.p() == 2) {
        Jet wx = D.pmap(Jet::constant(x, n + 1));
        for (std::size_t i = 1; i <= n; ++i)
            acc += eval2(D.m[i], y, wx[n + 1 - i]) + eval2(D.m[i], eval2(D.m[n + 1 - i], y, x), x);
        return acc;
    }
    Jet wy = D.pmap(Jet::constant(y, n + 1));
    for (std::size_t i = 1; i <= n; ++i) acc += eval2(D.m[i], x, wy[n + 1 - i]);
    Jet r = Jet::constant(x, prec), yj = Jet::constant(y, prec);
    for (unsigned k = 0; k < D.p(); ++k) r = D.bracket(r, yj, n);
    return acc - r[n + 1];
}

ObstructionPair obstruction(const TruncatedDeformation& D) {
    const std::size_t n = D.dim();
    const LieAlgebra& L = D.base.algebra;
    ObstructionPair o{CeCochain(D.field(), n, n, 3), {}};
    const TupleIndex& T = o.obs1.tuples();
    for (std::size_t t = 0; t < T.size(); ++t) {
        const auto& tu = T.tuple(t);
        o.obs1.set_value(t, obstruction1_eval(D, L.basis(tu[0]), L.basis(tu[1]), L.basis(tu[2])));
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) o.obs2.push_back(obstruction2_eval(D, L.basis(a), L.basis(b)));
    return o;
}

ExtensionResult extend_order(const TruncatedDeformation& D) {
    ExtensionResult res;
    auto s = solve(restricted_d2_matrix(D.base), obstruction(D).coords());
    if (!s || !s->has_value()) {
        res.obstructed = true;
        return res;
    }
    TruncatedDeformation E = D;
    E.append(RC2::from_coords(D.field(), D.dim(), D.dim(), **s));
    res.recheck = check_deformation(E);
    res.extended = std::move(E);
    return res;
}

// -------------------------------------------------------------- Nijenhuis

Expected<NijenhuisReport> nijenhuis_check(const FpMatrix& N, const PMap& P, int samples, std::uint64_t seed) {
    if (P.p() < 3) return make_error(ErrorCode::UnsupportedCharacteristic, "Nijenhuis operators need p >= 3");
    const LieAlgebra& L = P.algebra;
    const std::size_t n = L.dim();
    NijenhuisReport rep;
    auto id1 = [&](const FpVector& x, const FpVector& y) {
        FpVector lhs = N * (L.bracket(N * x, y) + L.bracket(x, N * y) - N * L.bracket(x, y));
        return lhs == L.bracket(N * x, N * y);
    };
    auto id2 = [&](const FpVector& x) {
        FpVector ad = N * x;
        for (unsigned k = 1; k < P.p(); ++k) ad = L.bracket(x, ad);
        FpVector lhs = N * (N * pmap_eval(P, x) - ad);
        return lhs == pmap_eval(P, N * x);
    };
    auto fail = [&](int which, const FpVector& x, std::optional<FpVector> y) {
        rep.ok = false;
        rep.identity = which;
        rep.x = x;
        rep.y = std::move(y);
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!id1(L.basis(a), L.basis(b))) {
                fail(1, L.basis(a), L.basis(b));
                return rep;
            }
    for (std::size_t a = 0; a < n; ++a)
        if (!id2(L.basis(a))) {
            fail(2, L.basis(a), std::nullopt);
            return rep;
        }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        FpVector x = random_vector(L.field(), n, rng), y = random_vector(L.field(), n, rng);
        if (!id1(x, y)) {
            fail(1, x, y);
            return rep;
        }
        if (!id2(x)) {
            fail(2, x, std::nullopt);
            return rep;
        }
    }
    return rep;
}

Expected<TruncatedDeformation> nijenhuis_deformation(const FpMatrix& N, const PMap& P) {
    if (P.p() < 3) return make_error(ErrorCode::UnsupportedCharacteristic, "Nijenhuis operators need p >= 3");
    const LieAlgebra& L = P.algebra;
    const std::size_t n = L.dim();
    RC2 c = RC2::zero(L.field(), n, n);
    const TupleIndex& T = c.phi.tuples();
    for (std::size_t t = 0; t < T.size(); ++t) {
        FpVector x = L.basis(T.tuple(t)[0]), y = L.basis(T.tuple(t)[1]);
        c.phi.set_value(t, L.bracket(N * x, y) + L.bracket(x, N * y) - N * L.bracket(x, y));
    }
    for (std::size_t a = 0; a < n; ++a) {
        FpVector x = L.basis(a), ad = N * x;
        for (unsigned k = 1; k < P.p(); ++k) ad = L.bracket(x, ad);
        c.omega[a] = -(N * P.images[a]) + ad;
    }
    RC2 ref = d1_star(cochain_from_matrix(N), P, LModule::adjoint(L));
    if (ref.coords() != c.coords())
        return make_error(ErrorCode::CochainInvariantViolated, "Nijenhuis jet differs from d1_* N");
    return TruncatedDeformation::infinitesimal(P, c);
}

}  // namespace reslie
