// Fourier-Motzkin elimination over the rationals with multiplier tracking.
// Internal to the lattice module: it powers grading search and the
// infeasibility witness.  Row counts here are tiny (a handful of equalities
// plus one bound per variable), so the doubly-exponential worst case is moot.
#pragma once

#include "latres/numeric.hpp"

#include <optional>
#include <vector>

namespace latres::fm {

// One inequality  a . y >= beta, remembering how it was derived: mult holds
// nonnegative multipliers over the rows of the *original* system.
struct Row {
    std::vector<Rat> a;
    Rat beta;
    std::vector<Rat> mult;
};

struct System {
    std::size_t nvars = 0;
    std::vector<Row> rows;

    void add(std::vector<Rat> a, Rat beta);
    // a . y >= beta and a . y <= beta
    void add_eq(const std::vector<Rat>& a, const Rat& beta);
};

struct Outcome {
    bool feasible = false;
    // On infeasibility: lambda >= 0 over original rows with lambda^T A = 0
    // and lambda^T beta > 0.
    std::vector<Rat> certificate;
    // On feasibility: one solution point.
    std::vector<Rat> point;
};

Outcome solve(const System& sys);

// Minimum of c . y over the feasible set, which the caller must know to be
// nonempty and bounded below in the direction c.
Rat minimize(const System& sys, const std::vector<Rat>& c);

}  // namespace latres::fm
