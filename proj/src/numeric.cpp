#include "latres/numeric.hpp"

#include "latres/fields.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace latres {

std::string vec_to_string(const Vec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].get_str();
    }
    os << ')';
    return os.str();
}

// ---- primes ---------------------------------------------------------------

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // This base set is deterministic for every 64-bit integer.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace {

// Pollard's rho with Brent cycling; n odd composite, not a small prime power
// caught by trial division.
Int rho_factor(const Int& n) {
    if (n % 2 == 0) return 2;
    gmp_randstate_t st;
    gmp_randinit_mt(st);
    gmp_randseed_ui(st, 0x6c617472);  // fixed seed: determinism matters more than speed
    Int d = n;
    while (d == n) {
        Int x, c;
        mpz_urandomm(x.get_mpz_t(), st, n.get_mpz_t());
        mpz_urandomm(c.get_mpz_t(), st, n.get_mpz_t());
        if (c == 0) c = 1;
        Int y = x;
        d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(x >= y ? x - y : y - x, n);
        }
    }
    gmp_randclear(st);
    return d;
}

void factor_into(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) {
        out.push_back(n);
        return;
    }
    Int d = rho_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<Int> prime_factors(const Int& n) {
    if (n == 0) throw std::invalid_argument("prime_factors: zero has no factorization");
    Int m = abs(n);
    std::vector<Int> out;
    for (unsigned long q : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        if (m % q == 0) {
            out.push_back(q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) {
        std::vector<Int> rest;
        factor_into(m, rest);
        std::sort(rest.begin(), rest.end());
        rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
        out.insert(out.end(), rest.begin(), rest.end());
    }
    return out;
}

// ---- FieldSpec / Fp64Field ------------------------------------------------

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field modulus is not prime: " + std::to_string(p));
    if (p >= (1ull << 62)) throw std::invalid_argument("field modulus must be < 2^62");
    return FieldSpec{Kind::PrimeField, p};
}

FieldSpec FieldSpec::parse(const std::string& s) {
    if (s == "q") return rationals();
    if (s.rfind("fp:", 0) == 0) {
        const std::string body = s.substr(3);
        if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad field spec: " + s);
        return prime(std::stoull(body));
    }
    throw std::invalid_argument("bad field spec (want q or fp:<p>): " + s);
}

std::string FieldSpec::to_string() const {
    return kind == Kind::Rationals ? "q" : "fp:" + std::to_string(p);
}

Fp64Field::Fp64Field(std::uint64_t prime) : p(prime) {
    FieldSpec::prime(prime);  // validates
}

Fp64Field::Elem Fp64Field::inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("division by zero in F_p");
    return powmod_u64(a, p - 2, p);
}

}  // namespace latres
