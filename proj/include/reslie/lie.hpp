#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reslie/field.hpp"

namespace reslie {

/// Strictly increasing q-tuples of {0..n-1} in lexicographic order.
class TupleIndex {
public:
    TupleIndex(std::size_t n, std::size_t q);

    std::size_t n() const { return n_; }
    std::size_t q() const { return q_; }
    std::size_t size() const { return tuples_.size(); }
    const std::vector<std::size_t>& tuple(std::size_t k) const { return tuples_[k]; }
    /// Position of a strictly increasing tuple.
    std::size_t index(const std::vector<std::size_t>& sorted) const;

private:
    std::size_t n_, q_;
    std::vector<std::vector<std::size_t>> tuples_;
};

std::shared_ptr<const TupleIndex> tuple_index(std::size_t n, std::size_t q);
std::size_t binomial(std::size_t n, std::size_t k);

/// Sorts idx in place; returns 0 if an index repeats, else the sign (+1/-1) of the sorting permutation.
int sort_with_sign(std::vector<std::size_t>& idx);

class LieAlgebra {
public:
    LieAlgebra(PrimeField f, std::vector<std::string> labels);

    const PrimeField& field() const { return f_; }
    std::size_t dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
    void set_bracket(std::size_t i, std::size_t j, const FpVector& v);
    residue structure_constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
    FpVector structure(std::size_t i, std::size_t j) const;

    FpVector zero() const { return FpVector(f_, n_); }
    FpVector basis(std::size_t i) const { return FpVector::unit(f_, n_, i); }
    /// Throws std::invalid_argument for elements that do not belong to this algebra.
    FpVector bracket(const FpVector& a, const FpVector& b) const;
    FpMatrix ad(const FpVector& a) const;
    FpMatrix ad_basis(std::size_t i) const;

    bool operator==(const LieAlgebra& o) const { return f_ == o.f_ && labels_ == o.labels_ && c_ == o.c_; }
    bool operator!=(const LieAlgebra& o) const { return !(*this == o); }

private:
    void check_member(const FpVector& a) const;
    PrimeField f_;
    std::size_t n_;
    std::vector<std::string> labels_;
    std::vector<residue> c_;
};

/// Left-nested [x, y, ..., y] with k copies of y.
FpVector iterated_bracket(const LieAlgebra& L, const FpVector& x, const FpVector& y, unsigned k);

struct JacobiReport {
    bool ok = true;
    std::size_t i = 0, j = 0, k = 0;
    std::optional<FpVector> residual;
};
JacobiReport jacobi_check(const LieAlgebra& L);
/// Antisymmetry including zero diagonal.
bool antisymmetry_check(const LieAlgebra& L);

class LModule {
public:
    LModule(LieAlgebra L, std::vector<FpMatrix> action);
    static LModule adjoint(const LieAlgebra& L);
    static LModule trivial(const LieAlgebra& L, std::size_t m = 1);

    const LieAlgebra& algebra() const { return L_; }
    const PrimeField& field() const { return L_.field(); }
    std::size_t dim() const { return m_; }
    const FpMatrix& rho(std::size_t i) const { return rho_[i]; }
    const std::vector<FpMatrix>& actions() const { return rho_; }
    FpMatrix action(const FpVector& x) const;
    FpVector act(const FpVector& x, const FpVector& v) const;
    FpVector act_basis(std::size_t i, const FpVector& v) const { return rho_[i] * v; }
    FpVector zero() const { return FpVector(field(), m_); }

private:
    LieAlgebra L_;
    std::size_t m_;
    std::vector<FpMatrix> rho_;
};

struct ModuleReport {
    bool ok = true;
    std::size_t i = 0, j = 0;
};
/// rho([e_i,e_j]) = rho_i rho_j - rho_j rho_i on all basis pairs.
ModuleReport module_check(const LModule& M);

/// Alternating q-linear map L^q -> M, stored on strictly increasing index tuples.
class CeCochain {
public:
    CeCochain(PrimeField f, std::size_t n, std::size_t m, std::size_t q);
    static CeCochain from_coords(PrimeField f, std::size_t n, std::size_t m, std::size_t q, const FpVector& coords);

    const PrimeField& field() const { return f_; }
    std::size_t degree() const { return q_; }
    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    const TupleIndex& tuples() const { return *idx_; }
    std::size_t coord_dim() const { return idx_->size() * m_; }

    FpVector value(std::size_t k) const;
    void set_value(std::size_t k, const FpVector& v);
    /// Sets the value on an arbitrary tuple of distinct indices (sign adjusted).
    void set(std::vector<std::size_t> idx, const FpVector& v);
    /// Evaluation on basis indices in any order; repeated index gives 0.
    FpVector eval_indices(std::vector<std::size_t> idx) const;
    /// Multilinear evaluation on arbitrary algebra elements.
    FpVector eval(const std::vector<FpVector>& args) const;
    /// Evaluation where args[k] is either a basis index or an element.
    FpVector eval_mixed(const FpVector& first, const std::vector<std::size_t>& rest) const;

    const FpVector& coords() const { return vals_; }
    FpVector& coords() { return vals_; }

    CeCochain& operator+=(const CeCochain& o);
    bool operator==(const CeCochain& o) const { return q_ == o.q_ && n_ == o.n_ && m_ == o.m_ && vals_ == o.vals_; }

private:
    PrimeField f_;
    std::size_t n_, m_, q_;
    std::shared_ptr<const TupleIndex> idx_;
    FpVector vals_;
};

/// Degree-1 cochains and linear maps are the same data.
CeCochain cochain_from_matrix(const FpMatrix& a);
FpMatrix matrix_from_cochain(const CeCochain& c);

CeCochain ce_differential(const CeCochain& c, const LModule& M);
FpMatrix ce_differential_matrix(const LModule& M, std::size_t q);

/// Matrix of a linear map given as a function on coordinate vectors (built column by column).
FpMatrix matrix_of(PrimeField f, std::size_t in_dim, std::size_t out_dim,
                   const std::function<FpVector(const FpVector&)>& map);

struct CohomologyResult {
    std::size_t dim = 0;
    std::size_t cochain_dim = 0;
    std::vector<FpVector> cocycles;         // basis of Z
    std::vector<FpVector> coboundaries;     // basis of B
    std::vector<FpVector> representatives;  // complement of B in Z
};

/// Z = ker(d_next), B = column space of d_prev (nullptr for B = 0).
Expected<CohomologyResult> cohomology_from(const FpMatrix* d_prev, const FpMatrix& d_next);
std::vector<FpVector> column_space_basis(const FpMatrix& m);

CohomologyResult ce_cohomology(const LModule& M, std::size_t q);

}  // namespace reslie
