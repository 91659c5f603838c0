#include "reslie/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace reslie {

PMap heisenberg(unsigned p, const std::vector<long long>& theta) {
    if (theta.size() != 3) throw std::invalid_argument("heisenberg: theta needs three coefficients");
    PrimeField f(p);
    LieAlgebra L(f, {"x", "y", "z"});
    L.set_bracket(0, 1, FpVector::unit(f, 3, 2));
    std::vector<FpVector> images;
    for (long long t : theta) images.push_back(FpVector::unit(f, 3, 2).scaled(f.reduce(t)));
    return PMap{L, images};
}

Expected<PMap> witt(unsigned p) {
    if (p < 5) return make_error(ErrorCode::UnsupportedCharacteristic, "the Witt algebra fixture needs p >= 5");
    PrimeField f(p);
    std::vector<std::string> labels;
    for (unsigned i = 0; i < p; ++i) labels.push_back("e" + std::to_string(static_cast<int>(i) - 1));
    LieAlgebra L(f, labels);
    const long long top = static_cast<long long>(p) - 2;
    for (unsigned a = 0; a < p; ++a)
        for (unsigned b = a + 1; b < p; ++b) {
            const long long i = static_cast<long long>(a) - 1, j = static_cast<long long>(b) - 1;
            if (i + j < -1 || i + j > top) continue;
            L.set_bracket(a, b, FpVector::unit(f, p, static_cast<std::size_t>(i + j + 1)).scaled(f.reduce(j - i)));
        }
    std::vector<FpVector> targets(p, FpVector(f, p));
    targets[1] = FpVector::unit(f, p, 1);
    return jacobson_build(L, targets);
}

PMap sl2(unsigned p) {
    PrimeField f(p);
    LieAlgebra L(f, {"e", "h", "f"});
    L.set_bracket(1, 0, FpVector::unit(f, 3, 0).scaled(f.reduce(2)));
    L.set_bracket(1, 2, FpVector::unit(f, 3, 2).scaled(f.reduce(-2)));
    L.set_bracket(0, 2, FpVector::unit(f, 3, 1));
    return PMap{L, {FpVector(f, 3), FpVector::unit(f, 3, 1), FpVector(f, 3)}};
}

Expected<PMap> abelian(std::size_t n, unsigned p, const std::vector<FpVector>& images) {
    PrimeField f(p);
    if (images.size() != n) return make_error(ErrorCode::DimensionMismatch, "abelian: one image per basis element");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        if (images[i].size() != n || images[i].field() != f)
            return make_error(ErrorCode::DimensionMismatch, "abelian: image of wrong shape", static_cast<int>(i));
        labels.push_back("a" + std::to_string(i));
    }
    return PMap{LieAlgebra(f, labels), images};
}

MorphismFixture morphism_fixture(unsigned p) {
    PrimeField f(p);
    FpMatrix A(f, 3, 3);
    A(2, 0) = 1;
    A(0, 1) = 1;
    A(1, 1) = 1;
    MorphismFixture F{Morphism{heisenberg(p, {1, 0, 0}), heisenberg(p, {0, 0, 1}), A}, RC2::zero(f, 3, 3),
                      RC2::zero(f, 3, 3), {}};
    const FpVector x = FpVector::unit(f, 3, 0), y = FpVector::unit(f, 3, 1), z = FpVector::unit(f, 3, 2);
    F.mu_omega.phi.set({0, 2}, z);
    F.mu_omega.omega[1] = z;
    F.nu_eps.phi.set({0, 1}, x);
    F.nu_eps.omega[1] = z;
    CeCochain t1(f, 3, 3, 1), t2(f, 3, 3, 1), t3(f, 3, 3, 1);
    t1.set({1}, x);
    t1.set({2}, z);
    t2.set({1}, y);
    t3.set({1}, z);
    F.thetas = {t1.coords(), t2.coords(), t3.coords()};
    return F;
}

TruncatedDeformation char2_example_jet() {
    PMap P = heisenberg(2);
    PrimeField f(2);
    RC2 c = RC2::zero(f, 3, 3);
    c.phi.set({0, 2}, FpVector::unit(f, 3, 2));
    c.omega[0] = FpVector::unit(f, 3, 0);
    return TruncatedDeformation::infinitesimal(P, c);
}

FpMatrix heisenberg_automorphism(const PrimeField& F, long long a, long long b, long long c, long long d, long long e,
                                 long long f) {
    FpMatrix g(F, 3, 3);
    g(0, 0) = F.reduce(a);
    g(1, 0) = F.reduce(b);
    g(2, 0) = F.reduce(c);
    g(0, 1) = F.reduce(d);
    g(1, 1) = F.reduce(e);
    g(2, 1) = F.reduce(f);
    g(2, 2) = F.reduce(a * e - b * d);
    return g;
}

namespace {

using Form = std::vector<long long>;

struct GroupElement {
    FpMatrix g;
    FpMatrix gt_inv;  // (g^T)^{-1}
    FpVector s;       // z-coefficients of (g e_j)^[p] for theta = 0
    residue u;
};

FpMatrix inverse3(const FpMatrix& m) {
    const PrimeField& F = m.field();
    std::vector<FpVector> cols;
    for (std::size_t j = 0; j < 3; ++j) cols.push_back(**solve(m, FpVector::unit(F, 3, j)));
    return FpMatrix::from_columns(F, 3, cols);
}

GroupElement make_element(const PrimeField& F, const PMap& h0, const FpMatrix& g) {
    GroupElement el{g, inverse3(g.transpose()), FpVector(F, 3), g(2, 2)};
    for (std::size_t j = 0; j < 3; ++j) el.s[j] = pmap_eval(h0, g.column(j))[2];
    return el;
}

// theta' with g : (h, theta) -> (h, theta') restricted: g^T theta' = u theta - s.
FpVector transport(const GroupElement& el, const FpVector& theta) { return el.gt_inv * (theta.scaled(el.u) - el.s); }

Form to_form(const FpVector& v) { return {v[0], v[1], v[2]}; }

FpVector from_form(const PrimeField& F, const Form& t) {
    return FpVector(F, std::vector<std::int64_t>(t.begin(), t.end()));
}

// Fewest nonzero entries, earliest nonzero coordinate, smallest values.
bool prefer(const Form& a, const Form& b) {
    auto key = [](const Form& t) {
        int nz = 0, first = 3;
        for (int i = 0; i < 3; ++i)
            if (t[i]) {
                ++nz;
                first = std::min(first, i);
            }
        return std::make_tuple(nz, first, t);
    };
    return key(a) < key(b);
}

template <class Fn>
void for_each_automorphism(const PrimeField& F, Fn fn) {
    const long long p = F.p();
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b)
            for (long long d = 0; d < p; ++d)
                for (long long e = 0; e < p; ++e) {
                    if (F.reduce(a * e - b * d) == 0) continue;
                    for (long long c = 0; c < p; ++c)
                        for (long long f = 0; f < p; ++f)
                            if (!fn(heisenberg_automorphism(F, a, b, c, d, e, f))) return;
                }
}

}  // namespace

Expected<std::vector<HeisenbergClass>> classify_heisenberg_pstructures(unsigned p) {
    if (p > 7) return make_error(ErrorCode::UnsupportedCharacteristic, "exhaustive Heisenberg search is capped at p = 7");
    PrimeField F(p);
    const PMap h0 = heisenberg(p);
    std::vector<GroupElement> group;
    for_each_automorphism(F, [&](const FpMatrix& g) {
        group.push_back(make_element(F, h0, g));
        return true;
    });
    std::vector<Form> forms;
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b)
            for (long long c = 0; c < p; ++c) forms.push_back({a, b, c});
    std::sort(forms.begin(), forms.end(), prefer);
    std::map<Form, std::size_t> cls;
    std::vector<HeisenbergClass> out;
    for (const Form& rep : forms) {
        if (cls.count(rep)) continue;
        HeisenbergClass C{rep, {}, {}};
        const FpVector th = from_form(F, rep);
        for (const auto& el : group) {
            Form img = to_form(transport(el, th));
            if (cls.count(img)) continue;
            cls[img] = out.size();
            C.members.push_back(img);
            C.witnesses.push_back(el.g);
        }
        out.push_back(std::move(C));
    }
    return out;
}

std::optional<FpMatrix> heisenberg_isomorphism(unsigned p, const std::vector<long long>& theta,
                                               const std::vector<long long>& theta2) {
    PrimeField F(p);
    const PMap h0 = heisenberg(p);
    const FpVector a = from_form(F, theta), b = from_form(F, theta2);
    std::optional<FpMatrix> hit;
    for_each_automorphism(F, [&](const FpMatrix& g) {
        if (transport(make_element(F, h0, g), a) != b) return true;
        hit = g;
        return false;
    });
    return hit;
}

std::vector<CatalogEntry> catalog_algebras(unsigned p) {
    PrimeField f(p);
    std::vector<CatalogEntry> out{{"heisenberg_theta0", heisenberg(p)},
                                  {"heisenberg_xstar", heisenberg(p, {1, 0, 0})},
                                  {"heisenberg_zstar", heisenberg(p, {0, 0, 1})},
                                  {"sl2", sl2(p)}};
    out.push_back({"abelian2", *abelian(2, p, {FpVector(f, 2), FpVector(f, 2)})});
    out.push_back({"torus2", *abelian(2, p, {FpVector::unit(f, 2, 0), FpVector::unit(f, 2, 0) + FpVector::unit(f, 2, 1)})});
    if (auto w = witt(p)) out.push_back({"witt", *w});
    return out;
}

std::vector<std::pair<std::string, Morphism>> catalog_morphisms(unsigned p) {
    PrimeField f(p);
    std::vector<std::pair<std::string, Morphism>> out;
    for (const auto& e : catalog_algebras(p))
        if (e.algebra.dim() <= 3) out.push_back({"id_" + e.name, Morphism{e.algebra, e.algebra, FpMatrix::identity(f, e.algebra.dim())}});
    const PMap h0 = heisenberg(p);
    FpMatrix A(f, 3, 3);
    A(2, 0) = 1;
    A(1, 1) = 1;
    out.push_back({"heisenberg_x_to_z", Morphism{h0, h0, A}});
    out.push_back({"heisenberg_zero", Morphism{h0, h0, FpMatrix(f, 3, 3)}});
    FpMatrix c(f, 3, 1);
    c(2, 0) = 1;
    out.push_back({"center_inclusion", Morphism{*abelian(1, p, {FpVector(f, 1)}), h0, c}});
    return out;
}

}  // namespace reslie
