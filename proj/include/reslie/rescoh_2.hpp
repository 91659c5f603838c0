#pragma once

#include <vector>

#include "reslie/rescoh_p.hpp"

namespace reslie {

/// Char-2 restricted q-cochain (q >= 2): phi of degree q and omega(e_i, z_2, ..., z_{q-1}).
/// omega[i] is the alternating (q-2)-cochain z -> omega(e_i, z).
struct RC2n {
    CeCochain phi;
    std::vector<CeCochain> omega;

    static RC2n zero(const PrimeField& f, std::size_t n, std::size_t m, std::size_t q);
    static RC2n from_coords(const PrimeField& f, std::size_t n, std::size_t m, std::size_t q, const FpVector& coords);
    static RC2n from_rc2(const RC2& c);
    RC2 to_rc2() const;
    std::size_t degree() const { return phi.degree(); }
    FpVector coords() const;
};

std::size_t rc2n_coord_dim(std::size_t n, std::size_t m, std::size_t q);

/// omega(x, z) on arbitrary elements through the polarization rule.
FpVector omega2_eval(const RC2n& c, const FpVector& x, const std::vector<FpVector>& z);

/// omega part of d^q_{*2}(phi, omega), degree q + 1.
std::vector<CeCochain> delta_n(const RC2n& c, const PMap& P, const LModule& M);
/// delta^q omega evaluated on arbitrary elements (x; z_2, ..., z_q).
FpVector delta_n_eval(const RC2n& c, const PMap& P, const LModule& M, const FpVector& x,
                      const std::vector<FpVector>& z);

/// d^1_{*2}: phi -> (d_CE phi, x -> phi(x^[2]) + x.phi(x)).
RC2n d1_star2(const CeCochain& phi, const PMap& P, const LModule& M);
RC2n d_star2(const RC2n& c, const PMap& P, const LModule& M);

/// Matrix of d^q_{*2} : C^q_{*2} -> C^{q+1}_{*2} in cochain coordinates.
FpMatrix d_star2_matrix(const PMap& P, const LModule& M, std::size_t q);
std::size_t c_star2_dim(std::size_t n, std::size_t m, std::size_t q);

Expected<CohomologyResult> restricted_cohomology_2(const PMap& P, const LModule& M, std::size_t q);

/// Restricted cohomology in the regime of the characteristic.
Expected<CohomologyResult> restricted_cohomology(const PMap& P, const LModule& M, std::size_t q);

}  // namespace reslie
