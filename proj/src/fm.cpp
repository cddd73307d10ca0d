#include "fm.hpp"

#include <map>
#include <stdexcept>

namespace latres::fm {

void System::add(std::vector<Rat> a, Rat beta) {
    if (a.size() != nvars) throw std::invalid_argument("fm: row arity mismatch");
    rows.push_back(Row{std::move(a), std::move(beta), {}});
}

void System::add_eq(const std::vector<Rat>& a, const Rat& beta) {
    add(a, beta);
    std::vector<Rat> na(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) na[i] = -a[i];
    add(std::move(na), -beta);
}

namespace {

// Scale each row so its first nonzero coefficient has absolute value one,
// then keep only the strongest bound per direction.  Plain Fourier-Motzkin
// squares the row count per variable; this keeps the desk-scale systems
// here from exploding.
void compress(std::vector<Row>& rows) {
    std::vector<Row> out;
    std::map<std::vector<Rat>, std::size_t> seen;
    for (auto& r : rows) {
        Rat scale;
        bool found = false;
        for (const auto& x : r.a)
            if (x != 0) {
                scale = abs(x);
                found = true;
                break;
            }
        if (found && scale != 1) {
            for (auto& x : r.a) x /= scale;
            r.beta /= scale;
            for (auto& x : r.mult) x /= scale;
        }
        auto it = seen.find(r.a);
        if (it == seen.end()) {
            seen.emplace(r.a, out.size());
            out.push_back(std::move(r));
        } else if (r.beta > out[it->second].beta) {
            out[it->second] = std::move(r);
        }
    }
    rows = std::move(out);
}

// Eliminate variable j; rows keep their multiplier provenance.  Returns
// nullopt normally, or the certificate row when a contradiction 0 >= beta>0
// appears.
std::optional<Row> eliminate(std::vector<Row>& rows, std::size_t j) {
    std::vector<Row> keep, lower, upper;
    for (auto& r : rows) {
        if (r.a[j] > 0)
            lower.push_back(std::move(r));
        else if (r.a[j] < 0)
            upper.push_back(std::move(r));
        else
            keep.push_back(std::move(r));
    }
    for (const auto& p : lower)
        for (const auto& q : upper) {
            const Rat wp = 1 / p.a[j];
            const Rat wq = 1 / -q.a[j];
            Row r;
            r.a.resize(p.a.size());
            for (std::size_t t = 0; t < p.a.size(); ++t) r.a[t] = wp * p.a[t] + wq * q.a[t];
            r.a[j] = 0;  // exact by construction
            r.beta = wp * p.beta + wq * q.beta;
            r.mult.resize(p.mult.size());
            for (std::size_t t = 0; t < p.mult.size(); ++t)
                r.mult[t] = wp * p.mult[t] + wq * q.mult[t];
            keep.push_back(std::move(r));
        }
    // Constant rows are either vacuous or a contradiction.
    std::vector<Row> out;
    for (auto& r : keep) {
        bool constant = true;
        for (const auto& x : r.a)
            if (x != 0) {
                constant = false;
                break;
            }
        if (!constant) {
            out.push_back(std::move(r));
        } else if (r.beta > 0) {
            return r;
        }
    }
    compress(out);
    rows = std::move(out);
    return std::nullopt;
}

std::vector<Row> seeded_rows(const System& sys) {
    std::vector<Row> rows = sys.rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].mult.assign(rows.size(), Rat(0));
        rows[i].mult[i] = 1;
    }
    return rows;
}

}  // namespace

Outcome solve(const System& sys) {
    Outcome out;
    std::vector<Row> rows = seeded_rows(sys);
    // Reject immediate contradictions among constant rows.
    for (const auto& r : rows) {
        bool constant = true;
        for (const auto& x : r.a)
            if (x != 0) constant = false;
        if (constant && r.beta > 0) {
            out.feasible = false;
            out.certificate = r.mult;
            return out;
        }
    }
    std::vector<std::vector<Row>> stages;  // stages[t]: vars t.. still present
    stages.push_back(rows);
    for (std::size_t j = 0; j < sys.nvars; ++j) {
        if (auto bad = eliminate(rows, j)) {
            out.feasible = false;
            out.certificate = bad->mult;
            return out;
        }
        stages.push_back(rows);
    }
    out.feasible = true;
    // Back-substitute a point, tight against the lower bounds.
    std::vector<Rat> y(sys.nvars, Rat(0));
    for (std::size_t t = sys.nvars; t-- > 0;) {
        bool has_lo = false, has_hi = false;
        Rat lo, hi;
        for (const auto& r : stages[t]) {
            if (r.a[t] == 0) continue;
            Rat rest = r.beta;
            for (std::size_t s = t + 1; s < sys.nvars; ++s) rest -= r.a[s] * y[s];
            Rat bound = rest / r.a[t];
            if (r.a[t] > 0) {
                if (!has_lo || bound > lo) lo = bound, has_lo = true;
            } else {
                if (!has_hi || bound < hi) hi = bound, has_hi = true;
            }
        }
        if (has_lo)
            y[t] = lo;
        else if (has_hi)
            y[t] = hi < 0 ? hi : Rat(0);
        else
            y[t] = 0;
    }
    out.point = std::move(y);
    return out;
}

Rat minimize(const System& sys, const std::vector<Rat>& c) {
    System ext;
    ext.nvars = sys.nvars + 1;
    for (const auto& r : sys.rows) {
        std::vector<Rat> a = r.a;
        a.push_back(Rat(0));
        ext.add(std::move(a), r.beta);
    }
    {
        std::vector<Rat> a(ext.nvars, Rat(0));  // t - c.y >= 0
        for (std::size_t i = 0; i < sys.nvars; ++i) a[i] = -c[i];
        a[sys.nvars] = 1;
        ext.add(a, Rat(0));
        for (auto& x : a) x = -x;  // c.y - t >= 0
        ext.add(std::move(a), Rat(0));
    }
    std::vector<Row> rows = seeded_rows(ext);
    for (std::size_t j = 0; j < sys.nvars; ++j)
        if (eliminate(rows, j)) throw std::logic_error("fm::minimize on infeasible system");
    bool has_lo = false;
    Rat lo;
    for (const auto& r : rows) {
        if (r.a[sys.nvars] > 0) {
            Rat bound = r.beta / r.a[sys.nvars];
            if (!has_lo || bound > lo) lo = bound, has_lo = true;
        }
    }
    if (!has_lo) throw std::logic_error("fm::minimize unbounded below");
    return lo;
}

}  // namespace latres::fm
