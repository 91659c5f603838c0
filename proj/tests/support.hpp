#pragma once

#include <random>
#include <vector>

#include "reslie/io.hpp"

namespace testing {

using namespace reslie;

inline FpVector vec(unsigned p, std::vector<std::int64_t> v) { return FpVector(PrimeField(p), v); }

inline FpVector random_in_span(const std::vector<FpVector>& basis, std::size_t dim, const PrimeField& f,
                               std::mt19937_64& rng) {
    FpVector v(f, dim);
    for (const auto& b : basis) v.axpy(static_cast<residue>(rng() % f.p()), b);
    return v;
}

// Element of a centerless algebra whose adjoint is ad(x)^p; the oracle for x^[p].
inline std::optional<FpVector> pmap_by_adjoint(const LieAlgebra& L, const FpVector& x) {
    const PrimeField& f = L.field();
    const std::size_t n = L.dim();
    FpMatrix target = L.ad(x).pow(f.p());
    std::vector<FpVector> cols;
    for (std::size_t i = 0; i < n; ++i) {
        FpMatrix a = L.ad_basis(i);
        FpVector flat(f, n * n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) flat[r * n + c] = a(r, c);
        cols.push_back(flat);
    }
    FpVector rhs(f, n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) rhs[r * n + c] = target(r, c);
    auto s = solve(FpMatrix::from_columns(f, n * n, cols), rhs);
    if (!s || !*s) return std::nullopt;
    return **s;
}

// RC2 built from (tuple -> value) and (basis -> value) lists over the Heisenberg basis.
struct Entry {
    std::size_t i, j;
    std::vector<std::int64_t> v;
};
struct WEntry {
    std::size_t i;
    std::vector<std::int64_t> v;
};
inline RC2 rc2(unsigned p, std::size_t n, const std::vector<Entry>& phi, const std::vector<WEntry>& omega) {
    PrimeField f(p);
    RC2 c = RC2::zero(f, n, n);
    for (const auto& e : phi) c.phi.set({e.i, e.j}, FpVector(f, e.v));
    for (const auto& w : omega) c.omega[w.i] = FpVector(f, w.v);
    return c;
}

}  // namespace testing
