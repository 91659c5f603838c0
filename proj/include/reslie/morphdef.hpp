#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reslie/deform.hpp"

namespace reslie {

/// Which complex of a morphism: plain Chevalley-Eilenberg triples or the restricted one of the characteristic.
enum class MorphRegime { CE, Restricted };

/// Cochain of the morphism complex in concatenated coordinates (source part, target part, L -> M part).
struct MorphCochain {
    std::size_t degree = 0;
    MorphRegime regime = MorphRegime::Restricted;
    FpVector source, target, cross;

    FpVector coords() const { return FpVector::concat({source, target, cross}); }
};

/// Sizes of the three parts in degree q; p >= 3 restricted degree 3 uses the (cochain, basis values) slot.
std::vector<std::size_t> morph_part_dims(const Morphism& phi, std::size_t q, MorphRegime r);
std::size_t morph_cochain_dim(const Morphism& phi, std::size_t q, MorphRegime r);
MorphCochain split_morph_coords(const Morphism& phi, std::size_t q, MorphRegime r, const FpVector& v);

/// phi o mu - nu o phi^{(x)q} - d theta, theta of degree q - 1, module structure x.m = [phi x, m].
CeCochain morph_alpha(const Morphism& phi, const CeCochain& mu, const CeCochain& nu, const CeCochain& theta);
/// theta(x^[p]) + phi(omega x) - eps(phi x) - x^{p-1}.theta(x) on the basis of the source.
std::vector<FpVector> morph_beta(const Morphism& phi, const RC2& mu_omega, const RC2& nu_eps, const CeCochain& theta);
FpVector morph_beta_eval(const Morphism& phi, const RC2& mu_omega, const RC2& nu_eps, const CeCochain& theta,
                         const FpVector& x);
/// Char 2, q >= 2: omega part phi o omega + eps o phi + delta rho of the L -> M slot of degree q.
/// `rho` has degree q - 1 (RC2n for q >= 3, plain cochain for q = 2).
std::vector<CeCochain> morph_beta2(const Morphism& phi, const RC2n& mu_omega, const RC2n& nu_eps,
                                   const FpVector& rho_coords);

/// Matrix of the differential from degree q to q + 1.
FpMatrix morph_ce_matrix(const Morphism& phi, std::size_t q);
/// p >= 3: q <= 2 (DegreeOutOfRange beyond); p = 2: any q.
Expected<FpMatrix> morph_restricted_matrix(const Morphism& phi, std::size_t q);
Expected<FpMatrix> morph_matrix(const Morphism& phi, std::size_t q, MorphRegime r);
/// Degree-0 space is zero in both regimes.
Expected<CohomologyResult> morph_cohomology(const Morphism& phi, std::size_t q, MorphRegime r = MorphRegime::Restricted);

/// Solutions theta of alpha_{mu,nu}(theta) = 0, beta_{omega,eps}(theta) = 0 (p >= 3 formulas, any p).
/// The set is affine: `linear` spans the solutions with (mu,omega) = (nu,eps) = 0, `particular` is one solution if any.
struct ThetaKernel {
    std::vector<FpVector> linear;
    std::optional<FpVector> particular;
    std::vector<FpVector> coboundaries;  // phi f - g phi - d m with f, g restricted derivations
};
ThetaKernel morph_theta_kernel(const Morphism& phi, const RC2& mu_omega, const RC2& nu_eps);

struct MorphismDeformation {
    Morphism base;
    std::vector<FpMatrix> phi;  // phi[0] = base.matrix
    TruncatedDeformation source, target;

    static MorphismDeformation constant(const Morphism& base, std::size_t order = 0);
    std::size_t order() const { return phi.size() - 1; }
    const PrimeField& field() const { return base.source.field(); }
    /// Drops phi_k, source and target data above order N.
    MorphismDeformation truncated(std::size_t N) const;
    Jet apply(const Jet& u) const;
};

/// Bracket and p-map compatibility of phi_t per t-degree, on basis elements and random samples.
DeformationReport check_morphism_deformation(const MorphismDeformation& MD, int samples = 10,
                                             std::uint64_t seed = 0x5eed);
/// Residual of both compatibility equations at t^k: pairs a < b first, then basis elements.
FpVector morph_residual(const MorphismDeformation& MD, std::size_t k);

/// Obstruction to order n + 1 (n = MD.order()), computed from the defining equations with every
/// order-(n+1) unknown set to 0. An extension exists iff alpha(phi_{n+1}) = obs1 and beta(phi_{n+1}) = obs2.
struct MorphObstruction {
    CeCochain obs1;
    std::vector<FpVector> obs2;  // basis values
};
Expected<MorphObstruction> morph_obstruction(const MorphismDeformation& MD);
FpVector morph_obstruction1_eval(const MorphismDeformation& MD, const FpVector& x, const FpVector& y);
FpVector morph_obstruction2_eval(const MorphismDeformation& MD, const FpVector& x);

/// The printed sums. p >= 3: Obs1 for any n and the n = 1 quadratic display; p = 2: both displays.
FpVector morph_obs1_display(const MorphismDeformation& MD, const FpVector& x, const FpVector& y);
Expected<FpVector> morph_obs2_display(const MorphismDeformation& MD, const FpVector& x);
/// p = 2 display plus the terms eps_l(phi_j x), l + 2j = n + 1, j >= 1.
Expected<FpVector> morph_obs2_corrected(const MorphismDeformation& MD, const FpVector& x);

/// Solves for phi_{n+1} once source and target carry order n + 1 data.
std::optional<MorphismDeformation> extend_morphism(const MorphismDeformation& MD);

/// Transport along formal automorphisms of source and target: phi'_t = psi_t phi_t f_t^-1.
MorphismDeformation twist_morphism(const MorphismDeformation& MD, const FormalAutomorphismJet& f,
                                   const FormalAutomorphismJet& g);

}  // namespace reslie
