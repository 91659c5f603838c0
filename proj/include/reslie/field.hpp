#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "reslie/expected.hpp"

namespace reslie {

using residue = std::uint32_t;

/// The prime field F_p. Cheap to copy; primality is checked at construction.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    residue reduce(std::int64_t a) const {
        std::int64_t r = a % static_cast<std::int64_t>(p_);
        return static_cast<residue>(r < 0 ? r + p_ : r);
    }
    residue add(residue a, residue b) const {
        residue s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    residue sub(residue a, residue b) const { return a >= b ? a - b : a + p_ - b; }
    residue neg(residue a) const { return a == 0 ? 0 : p_ - a; }
    residue mul(residue a, residue b) const {
        return static_cast<residue>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    residue pow(residue a, std::uint64_t e) const;
    residue inv(residue a) const;  // a != 0
    /// (-1)^k as a residue.
    residue sign(long long k) const { return (k % 2 == 0) ? 1 : neg(1); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

class FpElement {
public:
    FpElement(PrimeField f, std::int64_t v) : f_(f), v_(f.reduce(v)) {}

    residue value() const { return v_; }
    const PrimeField& field() const { return f_; }

    FpElement operator+(const FpElement& o) const { return {f_, f_.add(v_, o.v_), raw_tag{}}; }
    FpElement operator-(const FpElement& o) const { return {f_, f_.sub(v_, o.v_), raw_tag{}}; }
    FpElement operator*(const FpElement& o) const { return {f_, f_.mul(v_, o.v_), raw_tag{}}; }
    FpElement operator/(const FpElement& o) const { return {f_, f_.mul(v_, f_.inv(o.v_)), raw_tag{}}; }
    FpElement operator-() const { return {f_, f_.neg(v_), raw_tag{}}; }
    FpElement pow(std::uint64_t e) const { return {f_, f_.pow(v_, e), raw_tag{}}; }
    bool operator==(const FpElement& o) const { return f_ == o.f_ && v_ == o.v_; }
    bool operator!=(const FpElement& o) const { return !(*this == o); }

private:
    struct raw_tag {};
    FpElement(PrimeField f, residue v, raw_tag) : f_(f), v_(v) {}
    PrimeField f_;
    residue v_;
};

class FpVector {
public:
    FpVector(PrimeField f, std::size_t n) : f_(f), e_(n, 0) {}
    FpVector(PrimeField f, std::initializer_list<std::int64_t> vals);
    FpVector(PrimeField f, const std::vector<std::int64_t>& vals);

    static FpVector unit(PrimeField f, std::size_t n, std::size_t i) {
        FpVector v(f, n);
        v.e_[i] = 1;
        return v;
    }

    const PrimeField& field() const { return f_; }
    std::size_t size() const { return e_.size(); }
    residue operator[](std::size_t i) const { return e_[i]; }
    residue& operator[](std::size_t i) { return e_[i]; }
    FpElement at(std::size_t i) const { return FpElement(f_, e_[i]); }
    const std::vector<residue>& raw() const { return e_; }
    std::vector<residue>& raw() { return e_; }

    bool is_zero() const;
    /// this += c * v
    void axpy(residue c, const FpVector& v);
    FpVector& operator+=(const FpVector& v);
    FpVector& operator-=(const FpVector& v);
    FpVector operator+(const FpVector& v) const;
    FpVector operator-(const FpVector& v) const;
    FpVector operator-() const;
    FpVector scaled(residue c) const;
    bool operator==(const FpVector& o) const { return f_ == o.f_ && e_ == o.e_; }
    bool operator!=(const FpVector& o) const { return !(*this == o); }

    /// Concatenation, used to assemble coordinates of product spaces.
    static FpVector concat(const std::vector<FpVector>& parts);
    FpVector slice(std::size_t start, std::size_t len) const;

private:
    PrimeField f_;
    std::vector<residue> e_;
};

std::ostream& operator<<(std::ostream& os, const FpVector& v);

class FpMatrix {
public:
    FpMatrix(PrimeField f, std::size_t rows, std::size_t cols) : f_(f), r_(rows), c_(cols), d_(rows * cols, 0) {}
    FpMatrix(PrimeField f, std::initializer_list<std::initializer_list<std::int64_t>> rows);

    static FpMatrix identity(PrimeField f, std::size_t n);
    static FpMatrix from_columns(PrimeField f, std::size_t rows, const std::vector<FpVector>& cols);
    static FpMatrix from_rows(PrimeField f, std::size_t cols, const std::vector<FpVector>& rows);

    const PrimeField& field() const { return f_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    residue operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
    residue& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
    FpElement at(std::size_t i, std::size_t j) const { return FpElement(f_, (*this)(i, j)); }

    FpVector column(std::size_t j) const;
    FpVector row(std::size_t i) const;
    FpVector operator*(const FpVector& v) const;
    FpMatrix operator*(const FpMatrix& m) const;
    FpMatrix operator+(const FpMatrix& m) const;
    FpMatrix operator-(const FpMatrix& m) const;
    FpMatrix scaled(residue c) const;
    FpMatrix transpose() const;
    FpMatrix pow(unsigned k) const;
    bool is_zero() const;
    bool operator==(const FpMatrix& o) const { return f_ == o.f_ && r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

private:
    PrimeField f_;
    std::size_t r_, c_;
    std::vector<residue> d_;
};

std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

struct RrefResult {
    FpMatrix reduced;
    std::vector<std::size_t> pivots;
};

RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);
std::vector<FpVector> kernel_basis(const FpMatrix& m);
/// Some x with m x = b (free variables pinned to 0), nullopt if b is not in the column space.
Expected<std::optional<FpVector>> solve(const FpMatrix& m, const FpVector& b);

std::size_t rank_of(const std::vector<FpVector>& vs, std::size_t dim);
bool in_span(const std::vector<FpVector>& span, const FpVector& v);
bool span_contains(const std::vector<FpVector>& span, const std::vector<FpVector>& vs);

/// rank(Z) - rank(B); checks B inside span(Z).
Expected<std::size_t> quotient_dim(const std::vector<FpVector>& z, const std::vector<FpVector>& b, std::size_t dim);
/// Vectors of Z completing a basis of span(B) to a basis of span(Z).
Expected<std::vector<FpVector>> quotient_basis(const std::vector<FpVector>& z, const std::vector<FpVector>& b,
                                               std::size_t dim);
/// Coordinates of v in the quotient span(Z)/span(B) w.r.t. the representatives from quotient_basis.
std::optional<FpVector> quotient_coordinates(const std::vector<FpVector>& reps, const std::vector<FpVector>& b,
                                             const FpVector& v);

}  // namespace reslie
