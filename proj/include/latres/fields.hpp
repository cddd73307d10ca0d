// Coefficient fields: the rationals and prime fields with a machine-word
// modulus.  Field objects carry their own state (the modulus) and expose a
// uniform value interface so linear algebra can be written once.
#pragma once

#include "latres/numeric.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latres {

struct FieldSpec {
    enum class Kind { Rationals, PrimeField };
    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;  // modulus when PrimeField

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
    static FieldSpec prime(std::uint64_t p);

    // "q" or "fp:<p>"
    static FieldSpec parse(const std::string& s);
    std::string to_string() const;

    bool operator==(const FieldSpec&) const = default;
};

struct QField {
    using Elem = Rat;
    static FieldSpec spec() { return FieldSpec::rationals(); }
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }
    Elem inv(const Elem& a) const { return Rat(1) / a; }
    Elem from_int(long v) const { return Rat(v); }
    Elem from_integer(const Int& v) const { return Rat(v); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string to_string(const Elem& a) const { return a.get_str(); }
};

// Z/p for prime p < 2^62.  Values live in [0,p); products go through a
// 128-bit intermediate, so no operation can overflow.
struct Fp64Field {
    std::uint64_t p;

    explicit Fp64Field(std::uint64_t prime);

    using Elem = std::uint64_t;
    FieldSpec spec() const { return FieldSpec::prime(p); }
    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem add(const Elem& a, const Elem& b) const {
        Elem s = a + b;  // a,b < 2^62 so the sum fits in 63 bits
        return s >= p ? s - p : s;
    }
    Elem sub(const Elem& a, const Elem& b) const { return b <= a ? a - b : a + (p - b); }
    Elem neg(const Elem& a) const { return a == 0 ? 0 : p - a; }
    Elem mul(const Elem& a, const Elem& b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p);
    }
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem from_int(long v) const {
        long r = v % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return static_cast<Elem>(r);
    }
    Elem from_integer(const Int& v) const {
        Int m = v % Int(static_cast<unsigned long>(p));
        if (m < 0) m += Int(static_cast<unsigned long>(p));
        return m.get_ui();
    }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    std::string to_string(const Elem& a) const { return std::to_string(a); }
};

}  // namespace latres
