// Exact arithmetic aliases and small helpers shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dp {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown when a mathematical precondition is violated (CLI exit code 1).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown on malformed user input at the interface layer (CLI exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int int_gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int div_exact(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Integer vectors and matrices used by the lattice/cone layer.
using IVec = std::vector<Int>;
using IMat = std::vector<IVec>;

inline IVec ivec_add(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IVec ivec_scale(const Int& s, const IVec& a) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline bool ivec_is_zero(const IVec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

// Divides by the gcd of the entries, keeping direction. Zero vector stays zero.
inline IVec ivec_primitive(IVec v) {
    Int g = 0;
    for (const auto& x : v) g = int_gcd(g, x);
    if (g > 1)
        for (auto& x : v) x = div_exact(x, g);
    return v;
}

inline IMat imat_identity(size_t n) {
    IMat m(n, IVec(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IVec imat_apply(const IMat& m, const IVec& v) {
    IVec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

inline IMat imat_mul(const IMat& a, const IMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IMat r(n, IVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    return r;
}

inline IMat imat_pow(IMat base, unsigned long long e) {
    IMat result = imat_identity(base.size());
    while (e > 0) {
        if (e & 1ULL) result = imat_mul(result, base);
        e >>= 1ULL;
        if (e) base = imat_mul(base, base);
    }
    return result;
}

inline IMat imat_transpose(const IMat& a) {
    if (a.empty()) return {};
    IMat r(a[0].size(), IVec(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

// Fraction-free determinant (Bareiss).
inline Int imat_det(IMat a) {
    size_t n = a.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = div_exact(a[i][j], prev);
            }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

}  // namespace dp
