#include "reslie/lie.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace reslie {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

static void gen_tuples(std::size_t n, std::size_t q, std::size_t start, std::vector<std::size_t>& cur,
                       std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == q) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        gen_tuples(n, q, i + 1, cur, out);
        cur.pop_back();
    }
}

TupleIndex::TupleIndex(std::size_t n, std::size_t q) : n_(n), q_(q) {
    std::vector<std::size_t> cur;
    if (q <= n) gen_tuples(n, q, 0, cur, tuples_);
}

std::size_t TupleIndex::index(const std::vector<std::size_t>& sorted) const {
    auto it = std::lower_bound(tuples_.begin(), tuples_.end(), sorted);
    if (it == tuples_.end() || *it != sorted) throw std::out_of_range("TupleIndex: tuple not found");
    return static_cast<std::size_t>(it - tuples_.begin());
}

std::shared_ptr<const TupleIndex> tuple_index(std::size_t n, std::size_t q) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const TupleIndex>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, q}];
    if (!slot) slot = std::make_shared<const TupleIndex>(n, q);
    return slot;
}

int sort_with_sign(std::vector<std::size_t>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i]) return 0;
    return sign;
}

// ---------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(PrimeField f, std::vector<std::string> labels)
    : f_(f), n_(labels.size()), labels_(std::move(labels)), c_(n_ * n_ * n_, 0) {}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const FpVector& v) {
    if (i >= n_ || j >= n_ || v.size() != n_ || v.field() != f_)
        throw std::invalid_argument("LieAlgebra::set_bracket: bad arguments");
    if (i == j) {
        if (!v.is_zero()) throw std::invalid_argument("LieAlgebra::set_bracket: [e_i, e_i] must vanish");
        return;
    }
    for (std::size_t k = 0; k < n_; ++k) {
        c_[(i * n_ + j) * n_ + k] = v[k];
        c_[(j * n_ + i) * n_ + k] = f_.neg(v[k]);
    }
}

FpVector LieAlgebra::structure(std::size_t i, std::size_t j) const {
    FpVector v(f_, n_);
    for (std::size_t k = 0; k < n_; ++k) v[k] = c_[(i * n_ + j) * n_ + k];
    return v;
}

void LieAlgebra::check_member(const FpVector& a) const {
    if (a.size() != n_ || a.field() != f_)
        throw std::invalid_argument("LieAlgebra: element does not belong to this algebra");
}

FpVector LieAlgebra::bracket(const FpVector& a, const FpVector& b) const {
    check_member(a);
    check_member(b);
    std::vector<std::uint64_t> acc(n_, 0);
    const std::uint64_t p = f_.p();
    for (std::size_t i = 0; i < n_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (!b[j] || i == j) continue;
            std::uint64_t ab = static_cast<std::uint64_t>(a[i]) * b[j] % p;
            const residue* c = &c_[(i * n_ + j) * n_];
            for (std::size_t k = 0; k < n_; ++k)
                if (c[k]) acc[k] += ab * c[k];
        }
    }
    FpVector r(f_, n_);
    for (std::size_t k = 0; k < n_; ++k) r[k] = static_cast<residue>(acc[k] % p);
    return r;
}

FpMatrix LieAlgebra::ad(const FpVector& a) const {
    check_member(a);
    FpMatrix m(f_, n_, n_);
    for (std::size_t j = 0; j < n_; ++j) {
        FpVector col = bracket(a, basis(j));
        for (std::size_t k = 0; k < n_; ++k) m(k, j) = col[k];
    }
    return m;
}

FpMatrix LieAlgebra::ad_basis(std::size_t i) const {
    FpMatrix m(f_, n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) m(k, j) = structure_constant(i, j, k);
    return m;
}

FpVector iterated_bracket(const LieAlgebra& L, const FpVector& x, const FpVector& y, unsigned k) {
    FpVector r = x;
    for (unsigned i = 0; i < k; ++i) r = L.bracket(r, y);
    return r;
}

JacobiReport jacobi_check(const LieAlgebra& L) {
    const std::size_t n = L.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                FpVector x = L.basis(i), y = L.basis(j), z = L.basis(k);
                FpVector r = L.bracket(x, L.bracket(y, z)) + L.bracket(y, L.bracket(z, x)) +
                             L.bracket(z, L.bracket(x, y));
                if (!r.is_zero()) return JacobiReport{false, i, j, k, r};
            }
    return {};
}

bool antisymmetry_check(const LieAlgebra& L) {
    const PrimeField& f = L.field();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = 0; j < L.dim(); ++j)
            for (std::size_t k = 0; k < L.dim(); ++k)
                if (L.structure_constant(i, j, k) != f.neg(L.structure_constant(j, i, k))) return false;
    for (std::size_t i = 0; i < L.dim(); ++i)
        if (!L.structure(i, i).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------- LModule

LModule::LModule(LieAlgebra L, std::vector<FpMatrix> action) : L_(std::move(L)), rho_(std::move(action)) {
    if (rho_.size() != L_.dim()) throw std::invalid_argument("LModule: one action matrix per basis element");
    m_ = rho_.empty() ? 0 : rho_.front().rows();
    for (const auto& r : rho_)
        if (r.rows() != m_ || r.cols() != m_ || r.field() != L_.field())
            throw std::invalid_argument("LModule: action matrices must be square of common size");
}

LModule LModule::adjoint(const LieAlgebra& L) {
    std::vector<FpMatrix> rho;
    for (std::size_t i = 0; i < L.dim(); ++i) rho.push_back(L.ad_basis(i));
    return LModule(L, std::move(rho));
}

LModule LModule::trivial(const LieAlgebra& L, std::size_t m) {
    std::vector<FpMatrix> rho(L.dim(), FpMatrix(L.field(), m, m));
    LModule M(L, std::move(rho));
    M.m_ = m;
    return M;
}

FpMatrix LModule::action(const FpVector& x) const {
    FpMatrix r(field(), m_, m_);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) r = r + rho_[i].scaled(x[i]);
    return r;
}

FpVector LModule::act(const FpVector& x, const FpVector& v) const {
    if (x.size() != L_.dim()) throw std::invalid_argument("LModule::act: element of wrong algebra");
    FpVector r(field(), m_);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) r.axpy(x[i], rho_[i] * v);
    return r;
}

ModuleReport module_check(const LModule& M) {
    const LieAlgebra& L = M.algebra();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = 0; j < L.dim(); ++j) {
            FpMatrix lhs = M.action(L.structure(i, j));
            FpMatrix rhs = M.rho(i) * M.rho(j) - M.rho(j) * M.rho(i);
            if (lhs != rhs) return ModuleReport{false, i, j};
        }
    return {};
}

// ---------------------------------------------------------------- CeCochain

CeCochain::CeCochain(PrimeField f, std::size_t n, std::size_t m, std::size_t q)
    : f_(f), n_(n), m_(m), q_(q), idx_(tuple_index(n, q)), vals_(f, idx_->size() * m) {}

CeCochain CeCochain::from_coords(PrimeField f, std::size_t n, std::size_t m, std::size_t q, const FpVector& coords) {
    CeCochain c(f, n, m, q);
    if (coords.size() != c.coord_dim()) throw std::invalid_argument("CeCochain::from_coords: wrong length");
    c.vals_ = coords;
    return c;
}

FpVector CeCochain::value(std::size_t k) const { return vals_.slice(k * m_, m_); }

void CeCochain::set_value(std::size_t k, const FpVector& v) {
    if (v.size() != m_) throw std::invalid_argument("CeCochain::set_value: wrong module dimension");
    for (std::size_t a = 0; a < m_; ++a) vals_[k * m_ + a] = v[a];
}

void CeCochain::set(std::vector<std::size_t> idx, const FpVector& v) {
    int s = sort_with_sign(idx);
    if (s == 0) throw std::invalid_argument("CeCochain::set: repeated index");
    set_value(idx_->index(idx), s > 0 ? v : -v);
}

FpVector CeCochain::eval_indices(std::vector<std::size_t> idx) const {
    if (idx.size() != q_) throw std::invalid_argument("CeCochain::eval_indices: wrong arity");
    int s = sort_with_sign(idx);
    if (s == 0) return FpVector(f_, m_);
    FpVector v = value(idx_->index(idx));
    return s > 0 ? v : -v;
}

namespace {

void eval_rec(const CeCochain& c, const std::vector<FpVector>& args, std::size_t pos, residue coef,
              std::vector<std::size_t>& idx, FpVector& acc) {
    const PrimeField& f = c.field();
    if (pos == args.size()) {
        std::vector<std::size_t> sorted = idx;
        int s = sort_with_sign(sorted);
        if (s == 0) return;
        std::size_t k = c.tuples().index(sorted);
        const auto& raw = c.coords().raw();
        residue cc = s > 0 ? coef : f.neg(coef);
        for (std::size_t a = 0; a < c.m(); ++a)
            if (raw[k * c.m() + a]) acc[a] = f.add(acc[a], f.mul(cc, raw[k * c.m() + a]));
        return;
    }
    const FpVector& v = args[pos];
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i]) continue;
        bool dup = false;
        for (auto j : idx)
            if (j == i) dup = true;
        if (dup) continue;
        idx.push_back(i);
        eval_rec(c, args, pos + 1, f.mul(coef, v[i]), idx, acc);
        idx.pop_back();
    }
}

}  // namespace

FpVector CeCochain::eval(const std::vector<FpVector>& args) const {
    if (args.size() != q_) throw std::invalid_argument("CeCochain::eval: wrong arity");
    FpVector acc(f_, m_);
    std::vector<std::size_t> idx;
    eval_rec(*this, args, 0, 1, idx, acc);
    return acc;
}

FpVector CeCochain::eval_mixed(const FpVector& first, const std::vector<std::size_t>& rest) const {
    FpVector acc(f_, m_);
    std::vector<std::size_t> idx(1 + rest.size());
    std::copy(rest.begin(), rest.end(), idx.begin() + 1);
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (!first[i]) continue;
        idx[0] = i;
        acc.axpy(first[i], eval_indices(idx));
    }
    return acc;
}

CeCochain& CeCochain::operator+=(const CeCochain& o) {
    vals_ += o.vals_;
    return *this;
}

CeCochain cochain_from_matrix(const FpMatrix& a) {
    CeCochain c(a.field(), a.cols(), a.rows(), 1);
    for (std::size_t k = 0; k < a.cols(); ++k) c.set_value(k, a.column(k));
    return c;
}

FpMatrix matrix_from_cochain(const CeCochain& c) {
    if (c.degree() != 1) throw std::invalid_argument("matrix_from_cochain: degree must be 1");
    std::vector<FpVector> cols;
    for (std::size_t k = 0; k < c.n(); ++k) cols.push_back(c.value(k));
    return FpMatrix::from_columns(c.field(), c.m(), cols);
}

CeCochain ce_differential(const CeCochain& c, const LModule& M) {
    const LieAlgebra& L = M.algebra();
    const PrimeField& f = L.field();
    const std::size_t q = c.degree();
    CeCochain out(f, L.dim(), M.dim(), q + 1);
    const TupleIndex& T = out.tuples();
    for (std::size_t t = 0; t < T.size(); ++t) {
        const auto& tu = T.tuple(t);
        FpVector acc(f, M.dim());
        for (std::size_t a = 0; a < tu.size(); ++a)
            for (std::size_t b = a + 1; b < tu.size(); ++b) {
                FpVector br = L.structure(tu[a], tu[b]);
                if (br.is_zero()) continue;
                std::vector<std::size_t> rest;
                for (std::size_t k = 0; k < tu.size(); ++k)
                    if (k != a && k != b) rest.push_back(tu[k]);
                acc.axpy(f.sign(static_cast<long long>(a + b)), c.eval_mixed(br, rest));
            }
        for (std::size_t a = 0; a < tu.size(); ++a) {
            std::vector<std::size_t> rest;
            for (std::size_t k = 0; k < tu.size(); ++k)
                if (k != a) rest.push_back(tu[k]);
            acc.axpy(f.sign(static_cast<long long>(a)), M.act_basis(tu[a], c.eval_indices(rest)));
        }
        out.set_value(t, acc);
    }
    return out;
}

FpMatrix matrix_of(PrimeField f, std::size_t in_dim, std::size_t out_dim,
                   const std::function<FpVector(const FpVector&)>& map) {
    FpMatrix m(f, out_dim, in_dim);
    for (std::size_t j = 0; j < in_dim; ++j) {
        FpVector col = map(FpVector::unit(f, in_dim, j));
        if (col.size() != out_dim) throw std::logic_error("matrix_of: map returned wrong length");
        for (std::size_t i = 0; i < out_dim; ++i) m(i, j) = col[i];
    }
    return m;
}

FpMatrix ce_differential_matrix(const LModule& M, std::size_t q) {
    const PrimeField& f = M.field();
    const std::size_t n = M.algebra().dim(), m = M.dim();
    const std::size_t in = binomial(n, q) * m, out = binomial(n, q + 1) * m;
    return matrix_of(f, in, out, [&](const FpVector& v) {
        return ce_differential(CeCochain::from_coords(f, n, m, q, v), M).coords();
    });
}

std::vector<FpVector> column_space_basis(const FpMatrix& m) {
    auto [r, piv] = rref(m.transpose());
    std::vector<FpVector> out;
    for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(r.row(i));
    return out;
}

Expected<CohomologyResult> cohomology_from(const FpMatrix* d_prev, const FpMatrix& d_next) {
    CohomologyResult res;
    res.cochain_dim = d_next.cols();
    res.cocycles = kernel_basis(d_next);
    if (d_prev) {
        if (d_prev->rows() != d_next.cols())
            return make_error(ErrorCode::DimensionMismatch, "cohomology_from: incompatible differentials");
        res.coboundaries = column_space_basis(*d_prev);
    }
    auto reps = quotient_basis(res.cocycles, res.coboundaries, res.cochain_dim);
    if (!reps) return reps.error();
    res.representatives = std::move(*reps);
    res.dim = res.representatives.size();
    return res;
}

CohomologyResult ce_cohomology(const LModule& M, std::size_t q) {
    FpMatrix dn = ce_differential_matrix(M, q);
    if (q == 0) return cohomology_from(nullptr, dn).value();
    FpMatrix dp = ce_differential_matrix(M, q - 1);
    return cohomology_from(&dp, dn).value();
}

}  // namespace reslie
