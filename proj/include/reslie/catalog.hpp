#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reslie/morphdef.hpp"

namespace reslie {

/// Heisenberg algebra on x, y, z with [x,y] = z and e_j^[p] = theta_j z.
PMap heisenberg(unsigned p, const std::vector<long long>& theta = {0, 0, 0});
/// Witt algebra on e_{-1}, ..., e_{p-2}: [e_i, e_j] = (j - i) e_{i+j}, e_0^[p] = e_0, other basis powers 0.
Expected<PMap> witt(unsigned p);
/// sl2 on e, h, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h; e^[p] = f^[p] = 0, h^[p] = h.
PMap sl2(unsigned p);
Expected<PMap> abelian(std::size_t n, unsigned p, const std::vector<FpVector>& images);

/// L = (h, x*), M = (h, z*), phi(x) = z, phi(y) = x + y, phi(z) = 0 with the printed cochains
/// mu(x,z) = z, omega(y) = z on L and nu(x,y) = x, eps(y) = z on M.
struct MorphismFixture {
    Morphism phi;
    RC2 mu_omega;
    RC2 nu_eps;
    std::vector<FpVector> thetas;  // theta_1, theta_2, theta_3 as degree-1 cochain coordinates
};
MorphismFixture morphism_fixture(unsigned p);

/// (h, 0) over F_2 with [x,z]_t = tz and x^[2]_t = tx.
TruncatedDeformation char2_example_jet();

struct HeisenbergClass {
    std::vector<long long> representative;
    std::vector<std::vector<long long>> members;
    std::vector<FpMatrix> witnesses;  // witnesses[k] maps (h, representative) onto (h, members[k])
};
/// Orbits of the p^3 linear forms under Aut(h); p <= 7.
Expected<std::vector<HeisenbergClass>> classify_heisenberg_pstructures(unsigned p);
/// Matrix of phi(x) = a x + b y + c z, phi(y) = d x + e y + f z, phi(z) = (ae - bd) z.
FpMatrix heisenberg_automorphism(const PrimeField& F, long long a, long long b, long long c, long long d, long long e,
                                 long long f);
/// First restricted isomorphism (h, theta) -> (h, theta') in lexicographic (a, ..., f) order.
std::optional<FpMatrix> heisenberg_isomorphism(unsigned p, const std::vector<long long>& theta,
                                               const std::vector<long long>& theta2);

struct CatalogEntry {
    std::string name;
    PMap algebra;
};
/// Every built-in algebra available at p (Witt only for p >= 5).
std::vector<CatalogEntry> catalog_algebras(unsigned p);
/// Restricted morphisms used to exercise the morphism complexes at p.
std::vector<std::pair<std::string, Morphism>> catalog_morphisms(unsigned p);

}  // namespace reslie
