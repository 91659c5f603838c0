#include "reslie/restricted.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace reslie {

FpVector random_vector(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
    FpVector v(f, n);
    std::uniform_int_distribution<std::uint32_t> d(0, f.p() - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

void for_each_vector(const PrimeField& f, std::size_t n, const std::function<void(const FpVector&)>& fn) {
    FpVector v(f, n);
    while (true) {
        fn(v);
        std::size_t i = 0;
        while (i < n && v[i] == f.p() - 1) v[i++] = 0;
        if (i == n) return;
        ++v[i];
    }
}

FpVector s_terms(const LieAlgebra& L, const FpVector& x, const FpVector& y) {
    return s_terms_generic(x, y, L.zero(), L.field(),
                           [&](const FpVector& a, const FpVector& b) { return L.bracket(a, b); });
}

FpVector pmap_eval_ordered(const PMap& P, const FpVector& v, const std::vector<std::size_t>& order) {
    const LieAlgebra& L = P.algebra;
    const PrimeField& f = L.field();
    FpVector acc = L.zero(), val = L.zero();
    for (std::size_t i : order) {
        if (!v[i]) continue;
        FpVector term = L.basis(i).scaled(v[i]);
        FpVector next = val;
        next.axpy(f.pow(v[i], f.p()), P.images[i]);
        if (!acc.is_zero()) next += s_terms(L, acc, term);
        val = std::move(next);
        acc += term;
    }
    return val;
}

FpVector pmap_eval(const PMap& P, const FpVector& v) {
    std::vector<std::size_t> order(P.dim());
    std::iota(order.begin(), order.end(), 0);
    return pmap_eval_ordered(P, v, order);
}

PMapReport verify_pmap(const PMap& P, std::uint64_t seed, int random_pairs) {
    const LieAlgebra& L = P.algebra;
    const PrimeField& f = L.field();
    const unsigned p = f.p();
    const std::size_t n = L.dim();
    PMapReport rep;
    auto fail = [&](int axiom, const FpVector& x, const FpVector& y, const std::string& d) {
        rep.ok = false;
        rep.axiom = axiom;
        rep.x = x;
        rep.y = y;
        rep.detail = d;
    };
    if (P.images.size() != n) {
        rep.ok = false;
        rep.detail = "wrong number of p-map images";
        return rep;
    }
    // (ii) on basis pairs: [x, y^[p]] = [x, y, ..., y] (p copies of y)
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            FpVector x = L.basis(i), y = L.basis(j);
            if (L.bracket(x, P.images[j]) != iterated_bracket(L, x, y, p)) {
                fail(2, x, y, "[x, y^[p]] differs from the p-fold bracket [x, y, ..., y]");
                return rep;
            }
        }
    std::vector<std::pair<FpVector, FpVector>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(L.basis(i), L.basis(j));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < random_pairs; ++k) {
        FpVector a = random_vector(f, n, rng);
        FpVector b = random_vector(f, n, rng);
        pairs.emplace_back(a, b);
    }
    for (const auto& [x, y] : pairs) {
        FpVector py = pmap_eval(P, y);
        if (L.bracket(x, py) != iterated_bracket(L, x, y, p)) {
            fail(2, x, y, "[x, y^[p]] differs from the p-fold bracket [x, y, ..., y]");
            return rep;
        }
        for (residue lam = 0; lam < p; ++lam) {
            if (pmap_eval(P, x.scaled(lam)) != pmap_eval(P, x).scaled(f.pow(lam, p))) {
                fail(1, x.scaled(lam), x, "(lambda x)^[p] differs from lambda^p x^[p]");
                return rep;
            }
        }
        FpVector lhs = pmap_eval(P, x + y);
        FpVector rhs = pmap_eval(P, x) + py + s_terms(L, x, y);
        if (lhs != rhs) {
            fail(3, x, y, "(x+y)^[p] differs from x^[p] + y^[p] + sum s_i(x,y)");
            return rep;
        }
    }
    return rep;
}

Expected<PMap> jacobson_build(const LieAlgebra& L, const std::vector<FpVector>& targets) {
    if (targets.size() != L.dim())
        return make_error(ErrorCode::DimensionMismatch, "jacobson_build: one target per basis element required");
    for (std::size_t j = 0; j < L.dim(); ++j) {
        if (L.ad_basis(j).pow(L.field().p()) != L.ad(targets[j]))
            return make_error(ErrorCode::AdMismatch,
                              "jacobson_build: (ad e_" + std::to_string(j) + ")^p is not ad of the target",
                              static_cast<int>(j));
    }
    return PMap{L, targets};
}

std::optional<std::vector<FpVector>> solve_pmap_targets(const LieAlgebra& L) {
    const std::size_t n = L.dim();
    const PrimeField& f = L.field();
    FpMatrix A(f, n * n, n);
    for (std::size_t k = 0; k < n; ++k) {
        FpMatrix ad = L.ad_basis(k);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) A(r * n + c, k) = ad(r, c);
    }
    std::vector<FpVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        FpMatrix adp = L.ad_basis(i).pow(f.p());
        FpVector b(f, n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) b[r * n + c] = adp(r, c);
        auto s = solve(A, b);
        if (!s->has_value()) return std::nullopt;
        out.push_back(**s);
    }
    return out;
}

Expected<RestrictedModule> make_restricted_module(const PMap& P, const LModule& M) {
    if (M.algebra() != P.algebra)
        return make_error(ErrorCode::NotRestrictedModule, "module is over a different algebra");
    auto mc = module_check(M);
    if (!mc.ok)
        return make_error(ErrorCode::NotRestrictedModule,
                          "not an L-module at basis pair (" + std::to_string(mc.i) + "," + std::to_string(mc.j) + ")",
                          static_cast<int>(mc.i));
    for (std::size_t i = 0; i < P.dim(); ++i)
        if (M.action(P.images[i]) != M.rho(i).pow(P.p()))
            return make_error(ErrorCode::NotRestrictedModule,
                              "e_" + std::to_string(i) + "^[p] does not act as the p-th power of e_" +
                                  std::to_string(i),
                              static_cast<int>(i));
    return RestrictedModule{P, M};
}

RestrictedModule adjoint_module(const PMap& P) { return RestrictedModule{P, LModule::adjoint(P.algebra)}; }

RestrictedModule trivial_module(const PMap& P, std::size_t m) {
    return RestrictedModule{P, LModule::trivial(P.algebra, m)};
}

MorphismReport check_morphism(const Morphism& phi, std::uint64_t seed, int samples) {
    MorphismReport rep;
    const LieAlgebra& A = phi.source.algebra;
    const LieAlgebra& B = phi.target.algebra;
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = i + 1; j < A.dim(); ++j) {
            FpVector lhs = phi.apply(A.structure(i, j));
            FpVector rhs = B.bracket(phi.apply(A.basis(i)), phi.apply(A.basis(j)));
            if (lhs != rhs) {
                rep.lie_ok = false;
                rep.witness = A.basis(i) + A.basis(j);
                rep.detail = "phi([e_" + std::to_string(i) + ",e_" + std::to_string(j) + "]) != [phi e_i, phi e_j]";
                return rep;
            }
        }
    std::vector<FpVector> pts;
    for (std::size_t i = 0; i < A.dim(); ++i) pts.push_back(A.basis(i));
    std::mt19937_64 rng(seed);
    for (int k = 0; k < samples; ++k) pts.push_back(random_vector(A.field(), A.dim(), rng));
    for (const auto& x : pts) {
        if (phi.apply(pmap_eval(phi.source, x)) != pmap_eval(phi.target, phi.apply(x))) {
            rep.restricted_ok = false;
            rep.witness = x;
            rep.detail = "phi(x^[p]) != phi(x)^[p]";
            return rep;
        }
    }
    return rep;
}

LModule pullback_adjoint(const Morphism& phi) {
    const LieAlgebra& A = phi.source.algebra;
    std::vector<FpMatrix> rho;
    for (std::size_t i = 0; i < A.dim(); ++i) rho.push_back(phi.target.algebra.ad(phi.apply(A.basis(i))));
    return LModule(A, std::move(rho));
}

Expected<PMap> semidirect_product_p2(const PMap& L, const PMap& g, const std::vector<FpMatrix>& pi) {
    const PrimeField& f = L.field();
    if (f.p() != 2 || g.field() != f)
        return make_error(ErrorCode::UnsupportedCharacteristic, "semidirect_product_p2 needs p = 2 on both factors");
    const std::size_t n = L.dim(), m = g.dim();
    if (pi.size() != n) return make_error(ErrorCode::DimensionMismatch, "one action matrix per basis element of L");
    const LieAlgebra& G = g.algebra;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                FpVector lhs = pi[i] * G.structure(a, b);
                FpVector rhs = G.bracket(pi[i] * G.basis(a), G.basis(b)) + G.bracket(G.basis(a), pi[i] * G.basis(b));
                if (lhs != rhs)
                    return make_error(ErrorCode::NotDerivation,
                                      "pi(e_" + std::to_string(i) + ") is not a derivation (basis pair " +
                                          std::to_string(a) + "," + std::to_string(b) + ")",
                                      static_cast<int>(i));
            }
    auto pi_of = [&](const FpVector& x) {
        FpMatrix r(f, m, m);
        for (std::size_t i = 0; i < n; ++i)
            if (x[i]) r = r + pi[i].scaled(x[i]);
        return r;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (pi_of(L.algebra.structure(i, j)) != pi[i] * pi[j] - pi[j] * pi[i])
                return make_error(ErrorCode::NotLieMorphism,
                                  "pi is not a Lie morphism at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                                  static_cast<int>(i));
    for (std::size_t i = 0; i < n; ++i) {
        if (pi_of(L.images[i]) != pi[i] * pi[i])
            return make_error(ErrorCode::NotRestrictedAction,
                              "pi(e_" + std::to_string(i) + "^[2]) != pi(e_" + std::to_string(i) + ")^2",
                              static_cast<int>(i));
        for (std::size_t a = 0; a < m; ++a) {
            FpVector lhs = pi[i] * g.images[a];
            FpVector rhs = G.bracket(pi[i] * G.basis(a), G.basis(a));
            if (lhs != rhs)
                return make_error(ErrorCode::NotRestrictedAction,
                                  "pi(e_" + std::to_string(i) + ")(g^[2]) != [pi(e_i) g, g] for g = basis " +
                                      std::to_string(a),
                                  static_cast<int>(i));
        }
    }
    std::vector<std::string> labels = L.algebra.labels();
    for (const auto& s : G.labels()) {
        std::string l = s;
        while (std::find(labels.begin(), labels.end(), l) != labels.end()) l += "'";
        labels.push_back(l);
    }
    LieAlgebra S(f, labels);
    auto embed = [&](const FpVector& x, const FpVector& y) {
        FpVector v(f, n + m);
        for (std::size_t i = 0; i < n; ++i) v[i] = x[i];
        for (std::size_t a = 0; a < m; ++a) v[n + a] = y[a];
        return v;
    };
    const FpVector zl = L.algebra.zero(), zg = G.zero();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) S.set_bracket(i, j, embed(L.algebra.structure(i, j), zg));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < m; ++a) S.set_bracket(i, n + a, embed(zl, pi[i] * G.basis(a)));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) S.set_bracket(n + a, n + b, embed(zl, G.structure(a, b)));
    std::vector<FpVector> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(embed(L.images[i], zg));
    for (std::size_t a = 0; a < m; ++a) images.push_back(embed(zl, g.images[a]));
    return PMap{S, images};
}

PMap central_extension_p2(const PMap& L, const CeCochain& phi, const FpVector& omega_basis) {
    const PrimeField& f = L.field();
    const std::size_t n = L.dim();
    if (phi.degree() != 2 || phi.m() != 1 || phi.n() != n || omega_basis.size() != n)
        throw std::invalid_argument("central_extension_p2: expects a scalar 2-cochain and n basis values");
    std::vector<std::string> labels = L.algebra.labels();
    labels.push_back("c");
    LieAlgebra G(f, labels);
    auto lift = [&](const FpVector& x, residue c) {
        FpVector v(f, n + 1);
        for (std::size_t i = 0; i < n; ++i) v[i] = x[i];
        v[n] = c;
        return v;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            G.set_bracket(i, j, lift(L.algebra.structure(i, j), phi.eval_indices({i, j})[0]));
    std::vector<FpVector> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(lift(L.images[i], omega_basis[i]));
    images.push_back(FpVector(f, n + 1));
    return PMap{G, images};
}

Expected<bool> check_quadratic_part_p2(const PMap& L, const CeCochain& phi,
                                       const std::function<residue(const FpVector&)>& omega) {
    const PrimeField& f = L.field();
    const std::size_t n = L.dim();
    if (omega(L.algebra.zero()) != 0)
        return make_error(ErrorCode::CochainInvariantViolated, "omega(0) != 0");
    Expected<bool> result = true;
    bool bad = false;
    for_each_vector(f, n, [&](const FpVector& x) {
        if (bad) return;
        for_each_vector(f, n, [&](const FpVector& y) {
            if (bad) return;
            residue lhs = omega(x + y);
            residue rhs = f.add(f.add(omega(x), omega(y)), phi.eval({x, y})[0]);
            if (lhs != rhs) {
                std::ostringstream os;
                os << "omega(x+y) != omega(x) + omega(y) + phi(x,y) at x=" << x << " y=" << y;
                result = make_error(ErrorCode::CochainInvariantViolated, os.str());
                bad = true;
            }
        });
    });
    return result;
}

std::vector<FpVector> pmap_extend_formal_p2(const PMap& P, const std::vector<FpVector>& jet) {
    if (P.p() != 2) throw std::invalid_argument("pmap_extend_formal_p2: p must be 2");
    const LieAlgebra& L = P.algebra;
    std::vector<FpVector> out;
    for (std::size_t k = 0; k < jet.size(); ++k) {
        FpVector c = L.zero();
        if (k % 2 == 0) c += pmap_eval(P, jet[k / 2]);
        for (std::size_t i = 0; 2 * i < k; ++i) c += L.bracket(jet[i], jet[k - i]);
        out.push_back(c);
    }
    return out;
}

}  // namespace reslie
