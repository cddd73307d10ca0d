// Internal JSON builders/parsers shared by the serialization API and the job
// engine.  Field order is fixed by insertion order (nlohmann ordered_json),
// which is what makes command output byte-stable.
#pragma once

#include "json.hpp"
#include "latres/descent.hpp"

#include <string>

namespace latres::detail {

using ojson = nlohmann::ordered_json;

struct JsonError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A lattice input whose span meets the positive orthant; carries the witness.
struct NotCoArtinian : std::invalid_argument {
    Vec witness;
    explicit NotCoArtinian(Vec w)
        : std::invalid_argument("lattice is not co-artinian: witness " + vec_to_string(w)),
          witness(std::move(w)) {}
};

inline long long jint(const Int& v) {
    if (!v.fits_slong_p()) throw JsonError("integer too large for JSON output");
    return v.get_si();
}

inline ojson jvec(const Vec& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(jint(x));
    return a;
}

inline ojson jvecs(const std::vector<Vec>& vs) {
    ojson a = ojson::array();
    for (const auto& v : vs) a.push_back(jvec(v));
    return a;
}

// ---- validated field access ----------------------------------------------

inline const ojson& need(const ojson& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw JsonError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw JsonError(path + "." + key + ": missing");
    return *it;
}

inline long long int_at(const ojson& v, const std::string& path) {
    if (!v.is_number_integer()) throw JsonError(path + ": expected an integer");
    return v.get<long long>();
}

inline std::size_t uint_at(const ojson& v, const std::string& path) {
    const long long x = int_at(v, path);
    if (x < 0) throw JsonError(path + ": expected a nonnegative integer");
    return static_cast<std::size_t>(x);
}

inline Vec vec_at(const ojson& v, const std::string& path,
                  std::optional<std::size_t> want = {}) {
    if (!v.is_array()) throw JsonError(path + ": expected an array of integers");
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(Int(static_cast<long>(int_at(v[i], path + "[" + std::to_string(i) + "]"))));
    if (want && out.size() != *want)
        throw JsonError(path + ": expected length " + std::to_string(*want));
    return out;
}

inline std::vector<Vec> vecs_at(const ojson& v, const std::string& path,
                                std::optional<std::size_t> want = {}) {
    if (!v.is_array()) throw JsonError(path + ": expected an array of integer vectors");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(vec_at(v[i], path + "[" + std::to_string(i) + "]", want));
    return out;
}

// ---- modules and complexes ------------------------------------------------

inline ojson module_json(const MonomialModule& m) {
    ojson out;
    out["n"] = m.n();
    if (m.is_lattice())
        out["basis"] = jvecs(m.lattice().basis());
    else
        out["gens"] = jvecs(m.gens());
    return out;
}

inline MonomialModule module_parse(const ojson& j, const std::string& path) {
    const std::size_t n = uint_at(need(j, "n", path), path + ".n");
    if (j.contains("basis")) {
        auto basis = vecs_at(j["basis"], path + ".basis", n);
        auto r = certify_lattice(basis, n);
        if (auto* w = std::get_if<Witness>(&r)) throw NotCoArtinian(w->v);
        return MonomialModule::lattice_module(std::get<Lattice>(std::move(r)));
    }
    if (j.contains("gens")) {
        auto gens = vecs_at(j["gens"], path + ".gens", n);
        return MonomialModule::generated_module(n, std::move(gens));
    }
    throw JsonError(path + ": expected \"basis\" (lattice) or \"gens\" (generated module)");
}

inline ojson face_json(FaceMask f) {
    ojson a = ojson::array();
    for (int v : face_vertices(f)) a.push_back(v);
    return a;
}

inline ojson complex_json(const SimplicialComplex& k) {
    // facets: faces not strictly contained in another face
    std::vector<FaceMask> all = k.all_faces();
    ojson facets = ojson::array();
    for (int d = -1; d <= k.dim(); ++d)
        for (FaceMask f : k.faces(d)) {
            bool maximal = true;
            for (FaceMask g : all)
                if (g != f && (g & f) == f) {
                    maximal = false;
                    break;
                }
            if (maximal) facets.push_back(face_json(f));
        }
    ojson out;
    out["n"] = k.n();
    out["facets"] = facets;
    return out;
}

inline SimplicialComplex complex_parse(const ojson& j, const std::string& path) {
    const std::size_t n = uint_at(need(j, "n", path), path + ".n");
    auto face_list = [&](const ojson& v, const std::string& p) {
        if (!v.is_array()) throw JsonError(p + ": expected an array of faces");
        std::vector<std::vector<int>> faces;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string fp = p + "[" + std::to_string(i) + "]";
            if (!v[i].is_array()) throw JsonError(fp + ": expected a vertex list");
            std::vector<int> face;
            for (std::size_t t = 0; t < v[i].size(); ++t)
                face.push_back(
                    static_cast<int>(int_at(v[i][t], fp + "[" + std::to_string(t) + "]")));
            faces.push_back(std::move(face));
        }
        return faces;
    };
    if (j.contains("facets")) {
        return SimplicialComplex::from_facets(n, face_list(j["facets"], path + ".facets"));
    }
    if (j.contains("faces")) {
        // explicit face list: must already be subset-closed
        auto faces = face_list(j["faces"], path + ".faces");
        std::vector<FaceMask> masks;
        for (const auto& f : faces) {
            FaceMask m = 0;
            for (int v : f) {
                if (v < 1 || static_cast<std::size_t>(v) > n)
                    throw JsonError(path + ".faces: vertex " + std::to_string(v) +
                                    " out of range");
                m |= FaceMask(1) << (v - 1);
            }
            masks.push_back(m);
        }
        return SimplicialComplex::from_masks(n, masks);
    }
    throw JsonError(path + ": expected \"facets\" or \"faces\"");
}

// ---- coefficients ---------------------------------------------------------

inline std::string coeff_string(const QField& f, const Rat& c) { return f.to_string(c); }
inline std::string coeff_string(const Fp64Field& f, std::uint64_t c) { return f.to_string(c); }

inline Rat coeff_parse(const QField&, const std::string& s, const std::string& path) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw JsonError(path + ": bad rational \"" + s + "\"");
    }
}

inline std::uint64_t coeff_parse(const Fp64Field& f, const std::string& s,
                                 const std::string& path) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw JsonError(path + ": bad residue \"" + s + "\"");
    Int v(s);
    if (v >= Int(static_cast<unsigned long>(f.p)))
        throw JsonError(path + ": residue \"" + s + "\" not reduced mod " + std::to_string(f.p));
    return f.from_integer(v);
}

// ---- resolutions ----------------------------------------------------------

inline Vec class_coords(const MonomialModule& m, const Vec& rep) {
    return m.is_lattice() ? m.lattice().quotient().project(rep) : rep;
}

template <class F>
ojson basis_json(const MonomialModule& m, const std::vector<std::vector<ResBasis>>& basis) {
    ojson levels = ojson::array();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        ojson level = ojson::array();
        for (const auto& e : basis[i]) {
            ojson b;
            b["i"] = i;
            b["coset"] = jvec(class_coords(m, e.rep));
            b["lift"] = jvec(e.rep);
            b["ordinal"] = e.ordinal;
            level.push_back(std::move(b));
        }
        levels.push_back(std::move(level));
    }
    return levels;
}

template <class F>
std::vector<std::vector<ResBasis>> basis_parse(const MonomialModule& m, const ojson& j,
                                               const std::string& path) {
    if (!j.is_array()) throw JsonError(path + ": expected an array of levels");
    std::vector<std::vector<ResBasis>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string lp = path + "[" + std::to_string(i) + "]";
        if (!j[i].is_array()) throw JsonError(lp + ": expected an array of basis elements");
        std::vector<ResBasis> level;
        for (std::size_t k = 0; k < j[i].size(); ++k) {
            const std::string ep = lp + "[" + std::to_string(k) + "]";
            const ojson& e = j[i][k];
            if (uint_at(need(e, "i", ep), ep + ".i") != i)
                throw JsonError(ep + ".i: does not match its level");
            ResBasis b;
            b.rep = vec_at(need(e, "lift", ep), ep + ".lift", m.n());
            if (m.degree_normal_form(b.rep) != b.rep)
                throw JsonError(ep + ".lift: not a coset normal form");
            b.ordinal = uint_at(need(e, "ordinal", ep), ep + ".ordinal");
            level.push_back(std::move(b));
        }
        out.push_back(std::move(level));
    }
    return out;
}

template <class F>
ojson resolution_json(const EquivariantResolution<F>& res) {
    const F& f = res.field;
    const MonomialModule& m = res.module;
    ojson out;
    out["field"] = f.spec().to_string();
    out["mode"] = res.options.mode == BasisMode::Community ? "community" : "canonical-basis";
    out["certified"] = res.enumeration_stable;
    out["radius"] = jint(res.support_radius);
    out["module"] = module_json(m);
    ojson ranks = ojson::array();
    for (const auto& level : res.basis) ranks.push_back(level.size());
    out["ranks"] = std::move(ranks);
    out["basis"] = basis_json<F>(m, res.basis);

    ojson diffs = ojson::array();
    diffs.push_back(ojson::array());
    for (std::size_t i = 1; i < res.basis.size(); ++i) {
        ojson level = ojson::array();
        for (std::size_t u = 0; u < res.basis[i].size(); ++u) {
            ojson terms = ojson::array();
            for (const auto& t : res.diff[i][u]) {
                ojson term;
                term["coeff"] = coeff_string(f, t.coeff);
                term["exp"] =
                    jvec(sub(sub(res.basis[i][u].rep, res.basis[i - 1][t.target].rep), t.ell));
                term["target"] = t.target;
                term["translate"] = jvec(t.ell);
                terms.push_back(std::move(term));
            }
            level.push_back(std::move(terms));
        }
        diffs.push_back(std::move(level));
    }
    out["differentials"] = std::move(diffs);

    // descended matrices rendered as polynomial text, row-by-row
    const auto desc = descend(res);
    ojson mats = ojson::array();
    mats.push_back(ojson::array());
    for (std::size_t i = 1; i < desc.mats.size(); ++i) {
        ojson rows = ojson::array();
        for (std::size_t r = 0; r < desc.mats[i].rows(); ++r) {
            ojson row = ojson::array();
            for (std::size_t c = 0; c < desc.mats[i].cols(); ++c)
                row.push_back(poly_to_string(f, desc.mats[i](r, c)));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    out["matrices"] = std::move(mats);
    return out;
}

template <class F>
EquivariantResolution<F> resolution_parse(const F& f, const ojson& j, const std::string& path) {
    MonomialModule m = module_parse(need(j, "module", path), path + ".module");
    ResolveOptions opt;
    const std::string mode = need(j, "mode", path).is_string()
                                 ? need(j, "mode", path).get<std::string>()
                                 : throw JsonError(path + ".mode: expected a string");
    if (mode == "community")
        opt.mode = BasisMode::Community;
    else if (mode != "canonical-basis")
        throw JsonError(path + ".mode: unknown mode \"" + mode + "\"");

    EquivariantResolution<F> res(f, std::move(m), opt);
    res.basis = basis_parse<F>(res.module, need(j, "basis", path), path + ".basis");
    const ojson& dj = need(j, "differentials", path);
    if (!dj.is_array() || dj.size() != res.basis.size())
        throw JsonError(path + ".differentials: expected one entry per level");
    res.diff.assign(res.basis.size(), {});
    for (std::size_t i = 0; i < res.basis.size(); ++i) {
        const std::string lp = path + ".differentials[" + std::to_string(i) + "]";
        if (i == 0) {
            res.diff[0].assign(res.basis[0].size(), {});
            continue;
        }
        if (!dj[i].is_array() || dj[i].size() != res.basis[i].size())
            throw JsonError(lp + ": expected one term list per basis element");
        for (std::size_t u = 0; u < res.basis[i].size(); ++u) {
            const std::string up = lp + "[" + std::to_string(u) + "]";
            if (!dj[i][u].is_array()) throw JsonError(up + ": expected a term array");
            std::vector<ResTerm<F>> terms;
            for (std::size_t t = 0; t < dj[i][u].size(); ++t) {
                const std::string tp = up + "[" + std::to_string(t) + "]";
                const ojson& te = dj[i][u][t];
                ResTerm<F> term;
                term.target = uint_at(need(te, "target", tp), tp + ".target");
                if (term.target >= res.basis[i - 1].size())
                    throw JsonError(tp + ".target: out of range");
                term.ell = vec_at(need(te, "translate", tp), tp + ".translate", res.module.n());
                const ojson& cj = need(te, "coeff", tp);
                if (!cj.is_string()) throw JsonError(tp + ".coeff: expected a decimal string");
                term.coeff = coeff_parse(f, cj.get<std::string>(), tp + ".coeff");
                if (f.is_zero(term.coeff)) throw JsonError(tp + ".coeff: zero coefficient");
                const Vec expo = sub(
                    sub(res.basis[i][u].rep, res.basis[i - 1][term.target].rep), term.ell);
                if (!geq_zero(expo) || is_zero(expo))
                    throw JsonError(tp + ": degree bookkeeping violated (exponent " +
                                    vec_to_string(expo) + ")");
                if (te.contains("exp") &&
                    vec_at(te["exp"], tp + ".exp", res.module.n()) != expo)
                    throw JsonError(tp + ".exp: inconsistent with degrees");
                terms.push_back(std::move(term));
            }
            res.diff[i].push_back(std::move(terms));
        }
    }
    if (j.contains("certified")) {
        if (!j["certified"].is_boolean()) throw JsonError(path + ".certified: expected a bool");
        res.enumeration_stable = j["certified"].get<bool>();
    }
    if (j.contains("radius")) res.support_radius = Int(static_cast<long>(int_at(j["radius"], path + ".radius")));
    try {
        rebuild_homology(res);
    } catch (const RankMismatchError& e) {
        throw JsonError(path + ": " + e.what());
    }
    return res;
}

template <class F>
ojson descended_json(const DescendedResolution<F>& desc) {
    const F& f = desc.field;
    ojson out;
    out["field"] = f.spec().to_string();
    out["certified"] = desc.enumeration_stable;
    out["radius"] = jint(desc.support_radius);
    out["module"] = module_json(desc.module);
    ojson ranks = ojson::array();
    for (const auto& level : desc.basis) ranks.push_back(level.size());
    out["ranks"] = std::move(ranks);
    out["basis"] = basis_json<F>(desc.module, desc.basis);

    ojson mats = ojson::array();
    ojson text = ojson::array();
    mats.push_back(ojson::array());
    text.push_back(ojson::array());
    for (std::size_t i = 1; i < desc.mats.size(); ++i) {
        ojson rows = ojson::array(), trows = ojson::array();
        for (std::size_t r = 0; r < desc.mats[i].rows(); ++r) {
            ojson row = ojson::array(), trow = ojson::array();
            for (std::size_t c = 0; c < desc.mats[i].cols(); ++c) {
                const Poly<F>& p = desc.mats[i](r, c);
                ojson terms = ojson::array();
                for (const auto& [e, cf] : p.terms) {
                    ojson term;
                    term["coeff"] = coeff_string(f, cf);
                    term["exp"] = jvec(e);
                    terms.push_back(std::move(term));
                }
                row.push_back(std::move(terms));
                trow.push_back(poly_to_string(f, p));
            }
            rows.push_back(std::move(row));
            trows.push_back(std::move(trow));
        }
        mats.push_back(std::move(rows));
        text.push_back(std::move(trows));
    }
    out["matrices"] = std::move(mats);
    out["matrices_text"] = std::move(text);
    if (desc.module.is_lattice() && desc.mats.size() > 1) {
        ojson gens = ojson::array();
        for (std::size_t u = 0; u < desc.mats[1].cols(); ++u)
            gens.push_back(poly_to_string(f, desc.mats[1](0, u)));
        out["generators"] = std::move(gens);
    }
    return out;
}

template <class F>
DescendedResolution<F> descended_parse(const F& f, const ojson& j, const std::string& path) {
    DescendedResolution<F> out(f, module_parse(need(j, "module", path), path + ".module"));
    out.basis = basis_parse<F>(out.module, need(j, "basis", path), path + ".basis");
    const ojson& mj = need(j, "matrices", path);
    if (!mj.is_array() || mj.size() != out.basis.size())
        throw JsonError(path + ".matrices: expected one matrix per level");
    out.mats.emplace_back(0, out.basis.empty() ? 0 : out.basis[0].size());
    for (std::size_t i = 1; i < out.basis.size(); ++i) {
        const std::string lp = path + ".matrices[" + std::to_string(i) + "]";
        const std::size_t rows = out.basis[i - 1].size(), cols = out.basis[i].size();
        if (!mj[i].is_array() || mj[i].size() != rows)
            throw JsonError(lp + ": expected " + std::to_string(rows) + " rows");
        Mat<Poly<F>> m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const std::string rp = lp + "[" + std::to_string(r) + "]";
            if (!mj[i][r].is_array() || mj[i][r].size() != cols)
                throw JsonError(rp + ": expected " + std::to_string(cols) + " entries");
            for (std::size_t c = 0; c < cols; ++c) {
                const std::string cp = rp + "[" + std::to_string(c) + "]";
                if (!mj[i][r][c].is_array()) throw JsonError(cp + ": expected a term array");
                Poly<F> p;
                for (std::size_t t = 0; t < mj[i][r][c].size(); ++t) {
                    const std::string tp = cp + "[" + std::to_string(t) + "]";
                    const ojson& te = mj[i][r][c][t];
                    const ojson& cj = need(te, "coeff", tp);
                    if (!cj.is_string()) throw JsonError(tp + ".coeff: expected a decimal string");
                    auto coeff = coeff_parse(f, cj.get<std::string>(), tp + ".coeff");
                    if (f.is_zero(coeff)) throw JsonError(tp + ".coeff: zero coefficient");
                    Vec e = vec_at(need(te, "exp", tp), tp + ".exp", out.module.n());
                    if (!geq_zero(e)) throw JsonError(tp + ".exp: negative exponent");
                    if (!p.terms.empty() && !lex_less(p.terms.back().first, e))
                        throw JsonError(tp + ".exp: terms out of order");
                    p.terms.emplace_back(std::move(e), coeff);
                }
                m(r, c) = std::move(p);
            }
        }
        out.mats.push_back(std::move(m));
    }
    if (j.contains("certified")) {
        if (!j["certified"].is_boolean()) throw JsonError(path + ".certified: expected a bool");
        out.enumeration_stable = j["certified"].get<bool>();
    }
    if (j.contains("radius")) out.support_radius = Int(static_cast<long>(int_at(j["radius"], path + ".radius")));
    return out;
}

// ---- reports --------------------------------------------------------------

inline ojson exactness_json(const std::vector<ExactnessDegree>& degrees) {
    ojson out = ojson::array();
    for (const auto& e : degrees) {
        ojson d;
        d["class"] = jvec(e.cls);
        d["lift"] = jvec(e.lift);
        d["d"] = jint(e.dval);
        d["dims"] = e.dims;
        d["homology"] = e.homology;
        d["expected_h0"] = e.expected_h0;
        d["pass"] = e.pass;
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace latres::detail
