#include "reslie/field.hpp"

#include <stdexcept>

namespace reslie {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InclusionViolated: return "InclusionViolated";
    case ErrorCode::AdMismatch: return "AdMismatch";
    case ErrorCode::NotDerivation: return "NotDerivation";
    case ErrorCode::NotLieMorphism: return "NotLieMorphism";
    case ErrorCode::NotRestrictedAction: return "NotRestrictedAction";
    case ErrorCode::NotRestrictedModule: return "NotRestrictedModule";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::OrderUnsupported: return "OrderUnsupported";
    case ErrorCode::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case ErrorCode::CochainInvariantViolated: return "CochainInvariantViolated";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
}

residue PrimeField::pow(residue a, std::uint64_t e) const {
    residue r = 1 % p_;
    residue b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

residue PrimeField::inv(residue a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return pow(a, p_ - 2);
}

static void require_same(const PrimeField& a, const PrimeField& b, std::size_t n, std::size_t m) {
    if (a != b || n != m) throw std::invalid_argument("FpVector: mismatched field or dimension");
}

FpVector::FpVector(PrimeField f, std::initializer_list<std::int64_t> vals) : f_(f) {
    e_.reserve(vals.size());
    for (auto v : vals) e_.push_back(f.reduce(v));
}

FpVector::FpVector(PrimeField f, const std::vector<std::int64_t>& vals) : f_(f) {
    e_.reserve(vals.size());
    for (auto v : vals) e_.push_back(f.reduce(v));
}

bool FpVector::is_zero() const {
    for (auto x : e_)
        if (x) return false;
    return true;
}

void FpVector::axpy(residue c, const FpVector& v) {
    require_same(f_, v.f_, e_.size(), v.e_.size());
    if (c == 0) return;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (v.e_[i]) e_[i] = f_.add(e_[i], f_.mul(c, v.e_[i]));
}

FpVector& FpVector::operator+=(const FpVector& v) {
    require_same(f_, v.f_, e_.size(), v.e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = f_.add(e_[i], v.e_[i]);
    return *this;
}

FpVector& FpVector::operator-=(const FpVector& v) {
    require_same(f_, v.f_, e_.size(), v.e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] = f_.sub(e_[i], v.e_[i]);
    return *this;
}

FpVector FpVector::operator+(const FpVector& v) const {
    FpVector r = *this;
    r += v;
    return r;
}

FpVector FpVector::operator-(const FpVector& v) const {
    FpVector r = *this;
    r -= v;
    return r;
}

FpVector FpVector::operator-() const {
    FpVector r = *this;
    for (auto& x : r.e_) x = f_.neg(x);
    return r;
}

FpVector FpVector::scaled(residue c) const {
    FpVector r = *this;
    for (auto& x : r.e_) x = f_.mul(x, c);
    return r;
}

FpVector FpVector::concat(const std::vector<FpVector>& parts) {
    if (parts.empty()) throw std::invalid_argument("FpVector::concat: no parts");
    FpVector r(parts.front().field(), 0);
    for (const auto& p : parts) {
        if (p.field() != r.field()) throw std::invalid_argument("FpVector::concat: mixed fields");
        r.e_.insert(r.e_.end(), p.e_.begin(), p.e_.end());
    }
    return r;
}

FpVector FpVector::slice(std::size_t start, std::size_t len) const {
    if (start + len > e_.size()) throw std::out_of_range("FpVector::slice");
    FpVector r(f_, len);
    for (std::size_t i = 0; i < len; ++i) r.e_[i] = e_[start + i];
    return r;
}

std::ostream& operator<<(std::ostream& os, const FpVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os << ')';
}

FpMatrix::FpMatrix(PrimeField f, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : f_(f), r_(rows.size()), c_(rows.size() ? rows.begin()->size() : 0) {
    d_.reserve(r_ * c_);
    for (const auto& row : rows) {
        if (row.size() != c_) throw std::invalid_argument("FpMatrix: ragged rows");
        for (auto v : row) d_.push_back(f.reduce(v));
    }
}

FpMatrix FpMatrix::identity(PrimeField f, std::size_t n) {
    FpMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_columns(PrimeField f, std::size_t rows, const std::vector<FpVector>& cols) {
    FpMatrix m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("FpMatrix::from_columns: bad column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

FpMatrix FpMatrix::from_rows(PrimeField f, std::size_t cols, const std::vector<FpVector>& rows) {
    FpMatrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("FpMatrix::from_rows: bad row length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

FpVector FpMatrix::column(std::size_t j) const {
    FpVector v(f_, r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

FpVector FpMatrix::row(std::size_t i) const {
    FpVector v(f_, c_);
    for (std::size_t j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

FpVector FpMatrix::operator*(const FpVector& v) const {
    if (v.size() != c_ || v.field() != f_) throw std::invalid_argument("FpMatrix * FpVector: mismatch");
    FpVector r(f_, r_);
    const std::uint64_t p = f_.p();
    for (std::size_t i = 0; i < r_; ++i) {
        std::uint64_t acc = 0;
        const residue* row = &d_[i * c_];
        for (std::size_t j = 0; j < c_; ++j) {
            acc += static_cast<std::uint64_t>(row[j]) * v[j];
            if (acc >= (1ull << 62)) acc %= p;
        }
        r[i] = static_cast<residue>(acc % p);
    }
    return r;
}

FpMatrix FpMatrix::operator*(const FpMatrix& m) const {
    if (c_ != m.r_ || f_ != m.f_) throw std::invalid_argument("FpMatrix * FpMatrix: mismatch");
    FpMatrix r(f_, r_, m.c_);
    const std::uint64_t p = f_.p();
    std::vector<std::uint64_t> acc(m.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < c_; ++k) {
            residue a = (*this)(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < m.c_; ++j) acc[j] += static_cast<std::uint64_t>(a) * m(k, j);
        }
        for (std::size_t j = 0; j < m.c_; ++j) r(i, j) = static_cast<residue>(acc[j] % p);
    }
    return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& m) const {
    if (r_ != m.r_ || c_ != m.c_ || f_ != m.f_) throw std::invalid_argument("FpMatrix + FpMatrix: mismatch");
    FpMatrix r = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] = f_.add(d_[i], m.d_[i]);
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& m) const {
    if (r_ != m.r_ || c_ != m.c_ || f_ != m.f_) throw std::invalid_argument("FpMatrix - FpMatrix: mismatch");
    FpMatrix r = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] = f_.sub(d_[i], m.d_[i]);
    return r;
}

FpMatrix FpMatrix::scaled(residue c) const {
    FpMatrix r = *this;
    for (auto& x : r.d_) x = f_.mul(x, c);
    return r;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

FpMatrix FpMatrix::pow(unsigned k) const {
    if (r_ != c_) throw std::invalid_argument("FpMatrix::pow: not square");
    FpMatrix r = identity(f_, r_);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

bool FpMatrix::is_zero() const {
    for (auto x : d_)
        if (x) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "," : "") << '[';
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    return os << ']';
}

RrefResult rref(const FpMatrix& m) {
    const PrimeField& f = m.field();
    FpMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t piv = row;
        while (piv < a.rows() && a(piv, col) == 0) ++piv;
        if (piv == a.rows()) continue;
        if (piv != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
        residue s = f.inv(a(row, col));
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = f.mul(a(row, j), s);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            residue c = f.neg(a(i, col));
            for (std::size_t j = col; j < a.cols(); ++j)
                if (a(row, j)) a(i, j) = f.add(a(i, j), f.mul(c, a(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return rref(m).pivots.size(); }

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
    const PrimeField& f = m.field();
    auto [a, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        FpVector v(f, m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(a(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

Expected<std::optional<FpVector>> solve(const FpMatrix& m, const FpVector& b) {
    if (b.size() != m.rows() || b.field() != m.field())
        return make_error(ErrorCode::DimensionMismatch, "solve: right-hand side has length " +
                                                            std::to_string(b.size()) + ", expected " +
                                                            std::to_string(m.rows()));
    const PrimeField& f = m.field();
    FpMatrix aug(f, m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto [a, pivots] = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::optional<FpVector>{};
    FpVector x(f, m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a(r, m.cols());
    return std::optional<FpVector>{std::move(x)};
}

std::size_t rank_of(const std::vector<FpVector>& vs, std::size_t dim) {
    if (vs.empty()) return 0;
    return rank(FpMatrix::from_rows(vs.front().field(), dim, vs));
}

bool in_span(const std::vector<FpVector>& span, const FpVector& v) {
    if (v.is_zero()) return true;
    if (span.empty()) return false;
    auto s = solve(FpMatrix::from_columns(v.field(), v.size(), span), v);
    return s.has_value() && s->has_value();
}

bool span_contains(const std::vector<FpVector>& span, const std::vector<FpVector>& vs) {
    for (const auto& v : vs)
        if (!in_span(span, v)) return false;
    return true;
}

Expected<std::size_t> quotient_dim(const std::vector<FpVector>& z, const std::vector<FpVector>& b, std::size_t dim) {
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!in_span(z, b[i]))
            return make_error(ErrorCode::InclusionViolated,
                              "quotient_dim: vector " + std::to_string(i) + " of B is not in span(Z)",
                              static_cast<int>(i));
    return rank_of(z, dim) - rank_of(b, dim);
}

Expected<std::vector<FpVector>> quotient_basis(const std::vector<FpVector>& z, const std::vector<FpVector>& b,
                                               std::size_t dim) {
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!in_span(z, b[i]))
            return make_error(ErrorCode::InclusionViolated,
                              "quotient_basis: vector " + std::to_string(i) + " of B is not in span(Z)",
                              static_cast<int>(i));
    std::vector<FpVector> acc;
    for (const auto& v : b)
        if (!in_span(acc, v)) acc.push_back(v);
    std::vector<FpVector> reps;
    for (const auto& v : z) {
        if (in_span(acc, v)) continue;
        acc.push_back(v);
        reps.push_back(v);
    }
    (void)dim;
    return reps;
}

std::optional<FpVector> quotient_coordinates(const std::vector<FpVector>& reps, const std::vector<FpVector>& b,
                                             const FpVector& v) {
    std::vector<FpVector> cols = reps;
    cols.insert(cols.end(), b.begin(), b.end());
    if (cols.empty()) {
        if (v.is_zero()) return FpVector(v.field(), 0);
        return std::nullopt;
    }
    auto s = solve(FpMatrix::from_columns(v.field(), v.size(), cols), v);
    if (!s.has_value() || !s->has_value()) return std::nullopt;
    return (*s)->slice(0, reps.size());
}

}  // namespace reslie
