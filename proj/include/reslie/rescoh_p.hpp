#pragma once

#include <functional>
#include <vector>

#include "reslie/restricted.hpp"

namespace reslie {

/// Restricted 2-cochain (phi, omega) with omega stored on the basis.
struct RC2 {
    CeCochain phi;
    std::vector<FpVector> omega;

    static RC2 zero(const PrimeField& f, std::size_t n, std::size_t m);
    static RC2 from_coords(const PrimeField& f, std::size_t n, std::size_t m, const FpVector& coords);
    FpVector coords() const;
    std::size_t coord_dim() const { return phi.coord_dim() + omega.size() * phi.m(); }
};

/// Restricted 3-cochain; beta(e_i, e_j) is stored at beta[i * n + j].
struct RC3 {
    CeCochain alpha;
    std::vector<FpVector> beta;

    FpVector coords() const;
    const FpVector& at(std::size_t i, std::size_t j) const { return beta[i * alpha.n() + j]; }
};

/// Correction term of the (*)-property: omega(x+y) - omega(x) - omega(y).
/// `phi2` evaluates the 2-cochain, `br` the bracket, `act` the module action.
template <class V, class M, class Phi, class Br, class Act>
M star_correction_generic(const V& x, const V& y, const M& mzero, const PrimeField& f, Phi phi2, Br br, Act act) {
    const unsigned p = f.p();
    M acc = mzero;
    // word w[0..p-1] with w[0] = x, w[1] = y
    std::vector<const V*> w(p);
    w[0] = &x;
    w[1] = &y;
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned nx) {
        if (pos == p) {
            residue weight = f.inv(nx % p);
            for (unsigned k = 0; k + 2 <= p; ++k) {
                // [w_0, ..., w_{p-k-2}] left nested, paired with w_{p-k-1}
                V inner = *w[0];
                for (unsigned r = 1; r + k + 1 < p; ++r) inner = br(inner, *w[r]);
                M val = phi2(inner, *w[p - k - 1]);
                for (unsigned r = p - k; r < p; ++r) val = act(*w[r], val);
                acc.axpy(f.mul(weight, f.sign(k)), val);
            }
            return;
        }
        w[pos] = &x;
        rec(pos + 1, nx + 1);
        w[pos] = &y;
        rec(pos + 1, nx);
    };
    rec(2, 1);
    return acc;
}

FpVector star_correction(const LModule& M, const CeCochain& phi, const FpVector& x, const FpVector& y);

/// omega on an arbitrary element, folding basis terms in ascending order with the (*)-correction.
FpVector omega_eval(const RC2& c, const LModule& M, const FpVector& v);

/// Basis values of ind^1(phi): -phi(x^[p]) + x^{p-1}.phi(x).
std::vector<FpVector> ind1(const CeCochain& phi, const PMap& P, const LModule& M);
FpVector ind1_eval(const CeCochain& phi, const PMap& P, const LModule& M, const FpVector& x);

/// Grid of ind^2(phi, omega)(e_a, e_b).
std::vector<FpVector> ind2(const RC2& c, const PMap& P, const LModule& M);
FpVector ind2_eval(const RC2& c, const PMap& P, const LModule& M, const FpVector& x, const FpVector& y);

RC2 d1_star(const CeCochain& phi, const PMap& P, const LModule& M);
RC3 d2_star(const RC2& c, const PMap& P, const LModule& M);

/// Matrices of the restricted differentials in cochain coordinates (p >= 3).
FpMatrix d0_star_matrix(const LModule& M);
FpMatrix d1_star_matrix(const PMap& P, const LModule& M);
FpMatrix d2_star_matrix(const PMap& P, const LModule& M);

/// H^q_* for q in {0, 1, 2}. Coordinates of C^2_*: phi on increasing pairs, then omega on the basis.
Expected<CohomologyResult> restricted_cohomology_p(const PMap& P, const LModule& M, std::size_t q);
Expected<CohomologyResult> h1_restricted_derivations(const PMap& P);

}  // namespace reslie
