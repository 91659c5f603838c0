#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reslie/rescoh_2.hpp"
#include "reslie/rescoh_p.hpp"

namespace reslie {

/// Element of V[t]/(t^prec): coefficient of t^k at index k.
class Jet {
public:
    Jet(PrimeField f, std::size_t dim, std::size_t prec) : c_(prec, FpVector(f, dim)) {}
    static Jet constant(const FpVector& v, std::size_t prec);

    std::size_t precision() const { return c_.size(); }
    std::size_t dim() const { return c_.empty() ? 0 : c_[0].size(); }
    const PrimeField& field() const { return c_.at(0).field(); }
    const FpVector& operator[](std::size_t k) const { return c_[k]; }
    FpVector& operator[](std::size_t k) { return c_[k]; }

    void axpy(residue a, const Jet& o);
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet scaled(residue a) const;
    /// Multiplication by t^k.
    Jet shifted(std::size_t k) const;
    bool is_zero() const;
    bool operator==(const Jet& o) const { return c_ == o.c_; }

private:
    std::vector<FpVector> c_;
};

/// Formal linear map sum t^i phi_i truncated at order(); phi_0 is the identity for automorphisms.
struct FormalAutomorphismJet {
    std::vector<FpMatrix> phi;

    static FormalAutomorphismJet identity(const PrimeField& f, std::size_t n, std::size_t order);
    std::size_t order() const { return phi.size() - 1; }
    Jet apply(const Jet& u) const;
    FormalAutomorphismJet inverse() const;
};

/// Bracket jets m_0..m_N and p-map jets omega_0..omega_N (basis values).
struct TruncatedDeformation {
    PMap base;
    std::vector<CeCochain> m;
    std::vector<std::vector<FpVector>> omega;

    static TruncatedDeformation constant(const PMap& P, std::size_t order = 0);
    static TruncatedDeformation infinitesimal(const PMap& P, const RC2& c);

    std::size_t order() const { return m.size() - 1; }
    std::size_t dim() const { return base.dim(); }
    const PrimeField& field() const { return base.field(); }
    unsigned p() const { return base.p(); }

    RC2 coefficient(std::size_t k) const;
    void append(const RC2& c);
    TruncatedDeformation truncated(std::size_t order) const;

    /// m_t on jets, with m_k = 0 for k > max_order (default: order()).
    Jet bracket(const Jet& a, const Jet& b, std::size_t max_order = SIZE_MAX) const;
    /// omega_t extended to jets by the additivity rule with corrector built from m_t.
    Jet pmap(const Jet& v) const;
    Jet pmap_basis(std::size_t i, std::size_t prec) const;
};

/// Structure constants of L as a 2-cochain with values in L.
CeCochain bracket_cochain(const LieAlgebra& L);

struct DeformationReport {
    bool ok = true;
    std::size_t degree = 0;  // first failing power of t
    std::string kind;        // jacobi | pmap | polarization
    std::vector<FpVector> args;
    std::optional<FpVector> residual;
};
/// Jacobi and p-map rules in every t-degree up to the order, on basis tuples and random elements.
DeformationReport check_deformation(const TruncatedDeformation& D, int samples = 10, std::uint64_t seed = 0x5eed);

/// Differentials C^1 -> C^2 and C^2 -> C^3 of the restricted complex of the characteristic (adjoint coefficients).
FpMatrix restricted_d1_matrix(const PMap& P);
FpMatrix restricted_d2_matrix(const PMap& P);
/// d^2 of the regime applied to an RC2, in RC3 coordinates.
FpVector restricted_d2(const PMap& P, const RC2& c);

struct InfinitesimalReport {
    RC2 cochain;
    bool cocycle = false;
    bool coboundary = false;
};
InfinitesimalReport infinitesimal(const TruncatedDeformation& D);

struct EquivalenceResult {
    std::optional<FormalAutomorphismJet> jet;
    std::size_t failed_order = 0;
    std::vector<std::size_t> gauge_dims;  // kernel dimension of the linear system per order
    bool verified = false;
};
/// Finds phi_t with m'_t(phi x, phi y) = phi(m_t(x, y)) and phi(omega_t x) = omega'_t(phi x) up to order N.
/// Orders are solved one at a time. When order k is inconsistent, phi_{k-1} is first shifted through its gauge
/// space by a linear solve (exact for k >= 3). phi_1 then runs through its whole gauge class when that has at
/// most search_cap elements; otherwise order 2 is linearized at random points of the class.
EquivalenceResult equivalence_solve(const TruncatedDeformation& D, const TruncatedDeformation& Dp, std::size_t N,
                                    std::size_t search_cap = 4096);
/// The deformation transported along phi: m'_t = phi m_t (phi^-1, phi^-1), omega'_t = phi omega_t phi^-1.
TruncatedDeformation twist(const TruncatedDeformation& D, const FormalAutomorphismJet& phi);

/// Residual vector of the equivalence equations at order k, laid out like RC2 coordinates.
FpVector equivalence_residual(const TruncatedDeformation& D, const TruncatedDeformation& Dp,
                              const FormalAutomorphismJet& phi, std::size_t k);

struct ObstructionPair {
    CeCochain obs1;
    std::vector<FpVector> obs2;  // grid, entry a * n + b
    FpVector coords() const;
};
ObstructionPair obstruction(const TruncatedDeformation& D);
FpVector obstruction1_eval(const TruncatedDeformation& D, const FpVector& x, const FpVector& y, const FpVector& z);
/// For p = 2 the first argument carries the quadratic slot; for p >= 3 the second one does.
FpVector obstruction2_eval(const TruncatedDeformation& D, const FpVector& x, const FpVector& y);

struct ExtensionResult {
    std::optional<TruncatedDeformation> extended;
    bool obstructed = false;
    DeformationReport recheck;
};
ExtensionResult extend_order(const TruncatedDeformation& D);

struct NijenhuisReport {
    bool ok = true;
    int identity = 0;  // 1: bracket identity, 2: p-map identity
    std::optional<FpVector> x, y;
};
Expected<NijenhuisReport> nijenhuis_check(const FpMatrix& N, const PMap& P, int samples = 20,
                                          std::uint64_t seed = 0x5eed);
/// Order-1 jet ([.,.] + t[.,.]_N, (.)^[p] + t(.)^[p]_N).
Expected<TruncatedDeformation> nijenhuis_deformation(const FpMatrix& N, const PMap& P);

}  // namespace reslie
