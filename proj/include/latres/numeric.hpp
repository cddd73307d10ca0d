// Exact scalar types and small integer-vector helpers used across the library.
// Everything is arbitrary-precision (GMP); there is no floating point anywhere.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace latres {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int int_from_string(const std::string& s) { return Int(s); }

// ---- vector helpers -------------------------------------------------------

inline Vec zero_vec(std::size_t n) { return Vec(n, 0); }

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec negate(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(const Vec& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

// componentwise a <= b
inline bool leq(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline bool geq_zero(const Vec& a) {
    for (const auto& x : a)
        if (x < 0) return false;
    return true;
}

// componentwise max
inline Vec join(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] >= b[i] ? a[i] : b[i];
    return r;
}

inline int lex_cmp(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

inline bool lex_less(const Vec& a, const Vec& b) { return lex_cmp(a, b) < 0; }

std::string vec_to_string(const Vec& v);

// ---- primes ---------------------------------------------------------------

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Prime factors (without multiplicity) of |n|; n must be nonzero.
std::vector<Int> prime_factors(const Int& n);

}  // namespace latres
