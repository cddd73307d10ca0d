// Descent of an equivariant resolution modulo the lattice action, and the
// certification battery over the result: square-zero, minimality, exactness
// through a degree bound, and the Betti cross-check.
#pragma once

#include "latres/resolution.hpp"

#include <string>

namespace latres {

// Exponents are in N^n; terms are sorted by exponent lex, coefficients
// nonzero, exponents distinct.
template <class F>
struct Poly {
    std::vector<std::pair<Vec, typename F::Elem>> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Poly&) const = default;
};

template <class F>
Poly<F> poly_add(const F& f, const Poly<F>& a, const Poly<F>& b);
template <class F>
Poly<F> poly_mul(const F& f, const Poly<F>& a, const Poly<F>& b);
template <class F>
Poly<F> poly_neg(const F& f, const Poly<F>& a);

// "x1*x3 - x2^2"; "0" for the zero polynomial.  Coefficients print only
// when they are not +-1, signs fold into the separators.
template <class F>
std::string poly_to_string(const F& f, const Poly<F>& p);

// One free module per coset representative and ordinal; mats[i] is the
// matrix of the i-th differential with polynomial entries (rows = level
// i-1, columns = level i).  mats[0] is an empty placeholder.
template <class F>
struct DescendedResolution {
    F field;
    MonomialModule module;
    std::vector<std::vector<ResBasis>> basis;
    std::vector<Mat<Poly<F>>> mats;
    bool enumeration_stable = true;
    Int support_radius = 0;

    DescendedResolution(F f, MonomialModule m)
        : field(std::move(f)), module(std::move(m)) {}

    std::size_t length() const { return basis.empty() ? 0 : basis.size() - 1; }
};

// Collapses every translate to its monomial: the term c * x^(b(u)-b(v)-l)
// of u against the translate l of v lands in entry (v, u).
template <class F>
DescendedResolution<F> descend(const EquivariantResolution<F>& res);

// The entries of the single row of the first descended matrix; for a
// lattice module these generate the lattice ideal.  Lattice modules only.
template <class F>
std::vector<Poly<F>> minimal_generators(const DescendedResolution<F>& desc);

template <class F>
bool verify_square_zero(const DescendedResolution<F>& desc, std::string* witness = nullptr);

// No entry of any differential may have a constant term.
template <class F>
bool verify_minimal(const DescendedResolution<F>& desc, std::string* witness = nullptr);

// Slice diagnostics at one quotient-degree class.
struct ExactnessDegree {
    Vec cls;   // class coordinates in the grading group (the degree itself
               // for a generated module)
    Vec lift;  // the representative degree the slice was built at
    Int dval = 0;
    std::vector<std::size_t> dims;      // slice dimension of each F_i
    std::vector<std::size_t> homology;  // h_0 .. h_len at this class
    std::size_t expected_h0 = 0;        // 1 iff x^lift lies in the module
    bool pass = false;
};

// Checks every quotient-degree class of d-value <= dmax: homology vanishes
// in positive degrees and h_0 matches the quotient module.  Classes are
// processed independently, optionally across jobs threads; the returned
// order is deterministic (d-value, then class lex).
template <class F>
std::vector<ExactnessDegree> verify_exact_up_to(const DescendedResolution<F>& desc,
                                                const Int& dmax, std::size_t jobs = 1);

// max d-degree of a basis element plus max d-degree of a first-differential
// entry: past this bound no new syzygy phenomena appear for the stored
// generators, so it is the default certification horizon.
template <class F>
Int default_exactness_bound(const DescendedResolution<F>& desc);

// Ranks per (i, coset) against a freshly recomputed Betti support.
template <class F>
bool betti_crosscheck(const DescendedResolution<F>& desc, std::string* witness = nullptr);

struct VerificationReport {
    bool square_zero = false;
    bool minimal = false;
    bool exact = false;
    bool betti_ok = false;
    bool certified = true;  // false when the support enumeration hit its cap
    Int bound = 0;          // the dmax actually used
    std::vector<ExactnessDegree> degrees;
    std::vector<std::string> witnesses;

    bool pass() const { return square_zero && minimal && exact && betti_ok; }
};

struct VerifyOptions {
    std::optional<Int> dmax;
    std::size_t jobs = 1;
};

template <class F>
VerificationReport verify(const DescendedResolution<F>& desc, const VerifyOptions& opt = {});

}  // namespace latres
