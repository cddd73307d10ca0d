#include "latres/engine.hpp"

#include "latres/forestry.hpp"
#include "json_detail.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace latres {

namespace {

using detail::JsonError;
using detail::jint;
using detail::jvec;
using detail::jvecs;
using detail::need;
using detail::ojson;
using detail::uint_at;
using detail::vec_at;
using detail::vecs_at;

ojson parse_input(const std::string& text) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw JsonError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string istr(const Int& v) { return v.get_str(); }

JobResult finish(const JobConfig& cfg, const ojson& j, const std::string& text,
                 int status = 0, std::string err = {}) {
    JobResult r;
    r.status = status;
    r.error = std::move(err);
    r.output = cfg.format == "text" ? text : dump(j);
    return r;
}

std::string face_str(FaceMask f) {
    std::string s = "{";
    bool first = true;
    for (int v : face_vertices(f)) {
        if (!first) s += ", ";
        s += std::to_string(v);
        first = false;
    }
    return s + "}";
}

std::string primes_str(const std::set<Int>& ps) {
    std::string s = "{";
    bool first = true;
    for (const auto& p : ps) {
        if (!first) s += ", ";
        s += istr(p);
        first = false;
    }
    return s + "}";
}

ojson primes_json(const std::set<Int>& ps) {
    ojson a = ojson::array();
    for (const auto& p : ps) a.push_back(istr(p));
    return a;
}

std::string facets_str(const SimplicialComplex& k) {
    const ojson facets = detail::complex_json(k)["facets"];
    std::string s;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        if (i) s += ", ";
        std::string one = "{";
        for (std::size_t t = 0; t < facets[i].size(); ++t) {
            if (t) one += ", ";
            one += std::to_string(facets[i][t].get<long long>());
        }
        s += one + "}";
    }
    return s;
}

// ---- shared option handling ----------------------------------------------

ResolveOptions resolve_options(const JobConfig& cfg) {
    ResolveOptions opt;
    if (cfg.mode == "community")
        opt.mode = BasisMode::Community;
    else if (cfg.mode != "canonical-basis")
        throw JsonError("unknown --mode \"" + cfg.mode + "\"");
    if (cfg.radius_cap) {
        if (*cfg.radius_cap < 1) throw JsonError("--radius-cap must be >= 1");
        opt.support.cap_multiplier = *cfg.radius_cap;
    }
    return opt;
}

void check_degree_lengths(const JobConfig& cfg, std::size_t n) {
    for (const auto& d : cfg.degrees)
        if (d.size() != n)
            throw JsonError("--degree " + vec_to_string(d) + ": expected " +
                            std::to_string(n) + " coordinates");
}

template <class Fn>
JobResult with_field(const std::string& spec_text, Fn&& fn) {
    const FieldSpec s = FieldSpec::parse(spec_text);
    if (s.kind == FieldSpec::Kind::Rationals) return fn(QField{});
    return fn(Fp64Field(s.p));
}

// The degree window a module-valued forest/primes job reports on: the
// explicit --degree list, or every distinct Betti support representative.
std::vector<Vec> module_window(const MonomialModule& m, const JobConfig& cfg,
                               bool& certified) {
    if (!cfg.degrees.empty()) {
        check_degree_lengths(cfg, m.n());
        return cfg.degrees;
    }
    BettiSupportOptions opt;
    if (cfg.radius_cap) {
        if (*cfg.radius_cap < 1) throw JsonError("--radius-cap must be >= 1");
        opt.cap_multiplier = *cfg.radius_cap;
    }
    const auto sup = betti_support(m, FieldSpec::rationals(), opt);
    certified = sup.enumeration_stable;
    std::vector<Vec> window;
    for (const auto& e : sup.entries)
        if (std::find(window.begin(), window.end(), e.rep) == window.end())
            window.push_back(e.rep);
    std::sort(window.begin(), window.end(), lex_less);
    return window;
}

// ---- lattice ---------------------------------------------------------------

JobResult cmd_lattice(const JobConfig& cfg, const ojson& input) {
    if (!input.contains("basis"))
        throw JsonError("input: lattice command expects a lattice file with \"basis\"");
    const std::size_t n = uint_at(need(input, "n", "input"), "input.n");
    const auto basis = vecs_at(input["basis"], "input.basis", n);

    ojson out;
    out["command"] = "lattice";
    out["n"] = n;
    out["basis"] = jvecs(basis);
    std::ostringstream text;
    text << "lattice: n=" << n << "\n";
    for (const auto& b : basis) text << "basis: " << vec_to_string(b) << "\n";

    std::optional<CertifyResult> r;
    try {
        r = certify_lattice(basis, n);
    } catch (const DependentBasisError& e) {
        out["co_artinian"] = false;
        out["error"] = "dependent basis";
        out["dependency"] = jvec(e.dependency);
        text << "co-artinian: no\ndependent basis, relation " << vec_to_string(e.dependency)
             << "\n";
        return finish(cfg, out, text.str(), 2, e.what());
    }
    if (const auto* w = std::get_if<Witness>(&*r)) {
        out["co_artinian"] = false;
        out["witness"] = jvec(w->v);
        text << "co-artinian: no\nwitness: " << vec_to_string(w->v) << "\n";
        return finish(cfg, out, text.str(), 2,
                      "lattice is not co-artinian: witness " + vec_to_string(w->v));
    }
    const Lattice& l = std::get<Lattice>(*r);
    out["co_artinian"] = true;
    out["grading"] = jvec(l.grading());
    ojson q;
    q["free_rank"] = l.quotient().free_rank;
    ojson tors = ojson::array();
    for (const auto& t : l.quotient().torsion_factors) tors.push_back(istr(t));
    q["torsion"] = std::move(tors);
    out["quotient"] = std::move(q);

    text << "co-artinian: yes\ngrading: " << vec_to_string(l.grading()) << "\nquotient: ";
    std::string qs;
    for (const auto& t : l.quotient().torsion_factors) {
        if (!qs.empty()) qs += " (+) ";
        qs += "Z/" + istr(t);
    }
    if (l.quotient().free_rank > 0) {
        if (!qs.empty()) qs += " (+) ";
        qs += l.quotient().free_rank == 1
                  ? "Z"
                  : "Z^" + std::to_string(l.quotient().free_rank);
    }
    text << (qs.empty() ? "0" : qs) << "\n";
    return finish(cfg, out, text.str());
}

// ---- koszul ----------------------------------------------------------------

JobResult cmd_koszul(const JobConfig& cfg, const ojson& input) {
    const MonomialModule m = detail::module_parse(input, "input");
    if (cfg.degrees.empty()) throw JsonError("koszul requires at least one --degree");
    check_degree_lengths(cfg, m.n());

    std::ostringstream text;
    auto one = [&](const Vec& b) {
        const SimplicialComplex k = koszul_complex(m, b);
        ojson e = detail::complex_json(k);
        ojson entry;
        entry["degree"] = jvec(b);
        entry["n"] = e["n"];
        entry["facets"] = e["facets"];
        text << "koszul complex at degree " << vec_to_string(b) << "\n"
             << "n: " << k.n() << "\nfacets: " << facets_str(k) << "\n";
        return entry;
    };

    if (cfg.degrees.size() == 1) {
        ojson out;
        out["command"] = "koszul";
        out.update(one(cfg.degrees[0]));
        return finish(cfg, out, text.str());
    }
    ojson out;
    out["command"] = "koszul";
    ojson list = ojson::array();
    for (const auto& b : cfg.degrees) list.push_back(one(b));
    out["complexes"] = std::move(list);
    return finish(cfg, out, text.str());
}

// ---- betti -----------------------------------------------------------------

JobResult cmd_betti(const JobConfig& cfg, const ojson& input) {
    const MonomialModule m = detail::module_parse(input, "input");
    const FieldSpec fs = FieldSpec::parse(cfg.field);
    BettiSupportOptions opt;
    if (cfg.radius_cap) {
        if (*cfg.radius_cap < 1) throw JsonError("--radius-cap must be >= 1");
        opt.cap_multiplier = *cfg.radius_cap;
    }
    const BettiSupport sup = betti_support(m, fs, opt);

    ojson out;
    out["command"] = "betti";
    out["field"] = fs.to_string();
    out["certified"] = sup.enumeration_stable;
    out["radius"] = jint(sup.final_radius);
    ojson table = ojson::array();
    std::vector<std::size_t> ranks;
    for (const auto& e : sup.entries) {
        ojson row;
        row["i"] = e.i;
        row["class"] = jvec(e.coset);
        row["lift"] = jvec(e.rep);
        row["beta"] = e.rank;
        table.push_back(std::move(row));
        if (ranks.size() <= e.i) ranks.resize(e.i + 1, 0);
        ranks[e.i] += e.rank;
    }
    out["table"] = std::move(table);
    out["ranks"] = ranks;

    std::ostringstream text;
    text << "field: " << fs.to_string() << "\ncertified: "
         << (sup.enumeration_stable ? "yes" : "NO (radius cap exceeded)")
         << " (radius " << istr(sup.final_radius) << ")\n";
    text << "i class lift beta\n";
    for (const auto& e : sup.entries)
        text << e.i << " " << vec_to_string(e.coset) << " " << vec_to_string(e.rep) << " "
             << e.rank << "\n";
    text << "ranks:";
    for (auto r : ranks) text << " " << r;
    text << "\n";
    const bool ok = sup.enumeration_stable;
    return finish(cfg, out, text.str(), ok ? 0 : 1,
                  ok ? "" : "UNCERTIFIED: support enumeration hit the radius cap");
}

// ---- forest / primes -------------------------------------------------------

struct ForestItem {
    std::optional<Vec> degree;
    SimplicialComplex complex;
};

std::vector<ForestItem> forest_items(const JobConfig& cfg, const ojson& input,
                                     bool& certified) {
    std::vector<ForestItem> items;
    if (input.contains("facets") || input.contains("faces")) {
        items.push_back({std::nullopt, detail::complex_parse(input, "input")});
        return items;
    }
    const MonomialModule m = detail::module_parse(input, "input");
    for (const auto& b : module_window(m, cfg, certified))
        items.push_back({b, koszul_complex(m, b)});
    return items;
}

JobResult cmd_forest(const JobConfig& cfg, const ojson& input) {
    bool certified = true;
    const auto items = forest_items(cfg, input, certified);

    ojson out;
    out["command"] = "forest";
    ojson entries = ojson::array();
    std::set<Int> all_bad;
    std::ostringstream text;
    for (const auto& item : items) {
        const SimplicialComplex& k = item.complex;
        const ForestInvariants inv = forest_invariants(k);
        all_bad.insert(inv.bad_primes.begin(), inv.bad_primes.end());

        ojson e;
        if (item.degree) e["degree"] = jvec(*item.degree);
        e["n"] = k.n();
        e["facets"] = detail::complex_json(k)["facets"];
        ojson levels = ojson::array();
        for (int i = 0; i <= k.dim(); ++i) {
            ojson lv;
            lv["i"] = i;
            lv["tau"] = istr(inv.tau[i]);
            lv["sigma"] = istr(inv.sigma[i]);
            lv["shrubberies"] = shrubberies(k, i).size();
            lv["stakes"] = stake_sets(k, i).size();
            levels.push_back(std::move(lv));
        }
        e["levels"] = std::move(levels);
        ojson tors = ojson::array();
        for (const auto& t : inv.torsion_orders) tors.push_back(istr(t));
        e["torsion"] = std::move(tors);
        e["bad_primes"] = primes_json(inv.bad_primes);
        entries.push_back(std::move(e));

        if (item.degree) text << "degree " << vec_to_string(*item.degree) << ": ";
        text << "n=" << k.n() << " facets " << facets_str(k) << "\n";
        for (int i = 0; i <= k.dim(); ++i)
            text << "  i=" << i << ": tau=" << istr(inv.tau[i])
                 << " sigma=" << istr(inv.sigma[i])
                 << " shrubberies=" << shrubberies(k, i).size()
                 << " stakes=" << stake_sets(k, i).size() << "\n";
        text << "  torsion:";
        for (const auto& t : inv.torsion_orders) text << " " << istr(t);
        text << "\n  bad primes: " << primes_str(inv.bad_primes) << "\n";
    }
    out["entries"] = std::move(entries);
    out["bad_primes"] = primes_json(all_bad);
    text << "bad primes: " << primes_str(all_bad) << "\n";
    return finish(cfg, out, text.str(), certified ? 0 : 1,
                  certified ? "" : "UNCERTIFIED: support enumeration hit the radius cap");
}

JobResult cmd_primes(const JobConfig& cfg, const ojson& input) {
    bool certified = true;
    const auto items = forest_items(cfg, input, certified);

    ojson out;
    out["command"] = "primes";
    ojson prov = ojson::array();
    std::set<Int> all_bad;
    std::ostringstream body;
    auto record = [&](const std::optional<Vec>& deg, const char* source, int i,
                      const Int& value) {
        if (value == 0 || value == 1) return;
        const std::vector<Int> factors = prime_factors(value);
        ojson p;
        if (deg) p["degree"] = jvec(*deg);
        p["source"] = source;
        p["i"] = i;
        p["value"] = istr(value);
        ojson fs = ojson::array();
        for (const auto& q : factors) fs.push_back(istr(q));
        p["primes"] = std::move(fs);
        prov.push_back(std::move(p));
        body << "  " << source << " at i=" << i;
        if (deg) body << " degree " << vec_to_string(*deg);
        body << " = " << istr(value) << ": primes "
             << primes_str(std::set<Int>(factors.begin(), factors.end())) << "\n";
    };
    for (const auto& item : items) {
        const ForestInvariants inv = forest_invariants(item.complex);
        all_bad.insert(inv.bad_primes.begin(), inv.bad_primes.end());
        for (std::size_t i = 0; i < inv.tau.size(); ++i)
            record(item.degree, "tau", static_cast<int>(i), inv.tau[i]);
        for (std::size_t i = 0; i < inv.sigma.size(); ++i)
            record(item.degree, "sigma", static_cast<int>(i), inv.sigma[i]);
        for (std::size_t j = 0; j < inv.torsion_orders.size(); ++j)
            record(item.degree, "torsion", static_cast<int>(j) - 1, inv.torsion_orders[j]);
    }
    out["bad_primes"] = primes_json(all_bad);
    out["provenance"] = std::move(prov);
    std::ostringstream text;
    text << "bad primes: " << primes_str(all_bad) << "\n" << body.str();
    return finish(cfg, out, text.str(), certified ? 0 : 1,
                  certified ? "" : "UNCERTIFIED: support enumeration hit the radius cap");
}

// ---- paths -----------------------------------------------------------------

JobResult cmd_paths(const JobConfig& cfg, const ojson& input) {
    const Vec a = vec_at(need(input, "a", "input"), "input.a");
    const Vec b = vec_at(need(input, "b", "input"), "input.b", a.size());
    if (!leq(a, b))
        throw JsonError("input: a must be componentwise <= b (a = " + vec_to_string(a) +
                        ", b = " + vec_to_string(b) + ")");
    const Int count = saturated_path_count(a, b);

    ojson out;
    out["command"] = "paths";
    out["a"] = jvec(a);
    out["b"] = jvec(b);
    out["count"] = istr(count);
    std::ostringstream text;
    text << "saturated paths from " << vec_to_string(b) << " down to " << vec_to_string(a)
         << ": " << istr(count) << "\n";
    if (count <= 1000) {
        ojson steps = ojson::array();
        for_each_saturated_path(a, b, [&](const std::vector<std::size_t>& s) {
            ojson one = ojson::array();
            text << " ";
            for (std::size_t j : s) {
                one.push_back(j + 1);  // 1-based coordinates, matching x1..xn
                text << " x" << (j + 1);
            }
            text << "\n";
            steps.push_back(std::move(one));
        });
        out["steps"] = std::move(steps);
    } else {
        out["steps_omitted"] = true;
        text << "  (step lists omitted: more than 1000 paths)\n";
    }
    return finish(cfg, out, text.str());
}

// ---- resolve / descend / verify -------------------------------------------

template <class F>
std::string resolution_text(const EquivariantResolution<F>& res,
                            const DescendedResolution<F>& desc) {
    const F& f = res.field;
    const MonomialModule& m = res.module;
    std::ostringstream text;
    text << "module: " << (m.is_lattice() ? "lattice" : "generated") << " n=" << m.n()
         << "\n";
    text << "field: " << f.spec().to_string() << "\n";
    text << "mode: "
         << (res.options.mode == BasisMode::Community ? "community" : "canonical-basis")
         << "\n";
    text << "certified: " << (res.enumeration_stable ? "yes" : "NO") << " (radius "
         << istr(res.support_radius) << ")\n";
    text << "ranks:";
    for (const auto& level : res.basis) text << " " << level.size();
    text << "\n";
    for (std::size_t i = 0; i < res.basis.size(); ++i) {
        text << "F_" << i << ":\n";
        for (std::size_t u = 0; u < res.basis[i].size(); ++u)
            text << "  [" << u << "] class "
                 << vec_to_string(detail::class_coords(m, res.basis[i][u].rep)) << " lift "
                 << vec_to_string(res.basis[i][u].rep) << "\n";
    }
    for (std::size_t i = 1; i < desc.mats.size(); ++i) {
        text << "d_" << i << ":\n";
        for (std::size_t r = 0; r < desc.mats[i].rows(); ++r)
            for (std::size_t c = 0; c < desc.mats[i].cols(); ++c)
                if (!desc.mats[i](r, c).is_zero())
                    text << "  [" << r << " <- " << c << "] "
                         << poly_to_string(f, desc.mats[i](r, c)) << "\n";
    }
    if (m.is_lattice() && desc.mats.size() > 1) {
        text << "generators:\n";
        for (std::size_t u = 0; u < desc.mats[1].cols(); ++u)
            text << "  " << poly_to_string(f, desc.mats[1](0, u)) << "\n";
    }
    return text.str();
}

template <class F>
JobResult do_resolve(const JobConfig& cfg, const F& f, MonomialModule m, bool descended) {
    const auto res = resolve_equivariant(std::move(m), f, resolve_options(cfg));
    const auto desc = descend(res);
    ojson out;
    out["command"] = descended ? "descend" : "resolve";
    out.update(descended ? detail::descended_json(desc) : detail::resolution_json(res));
    const bool ok = res.enumeration_stable;
    return finish(cfg, out, resolution_text(res, desc), ok ? 0 : 1,
                  ok ? "" : "UNCERTIFIED: support enumeration hit the radius cap");
}

template <class F>
JobResult do_verify(const JobConfig& cfg, const EquivariantResolution<F>& res) {
    const F& f = res.field;
    const auto desc = descend(res);
    VerifyOptions vopt;
    vopt.dmax = cfg.bound;
    vopt.jobs = cfg.jobs;
    const VerificationReport rep = verify(desc, vopt);
    const EquivarianceReport eq = check_equivariance(res, 4, cfg.seed);
    const bool pass = rep.pass() && eq.pass;

    ojson out;
    out["command"] = "verify";
    out["field"] = f.spec().to_string();
    out["mode"] =
        res.options.mode == BasisMode::Community ? "community" : "canonical-basis";
    out["certified"] = rep.certified;
    out["radius"] = jint(res.support_radius);
    ojson ranks = ojson::array();
    for (const auto& level : res.basis) ranks.push_back(level.size());
    out["ranks"] = std::move(ranks);
    out["square_zero"] = rep.square_zero;
    out["minimal"] = rep.minimal;
    out["exact"] = rep.exact;
    out["betti_ok"] = rep.betti_ok;
    out["equivariant"] = eq.pass;
    out["bound"] = jint(rep.bound);
    out["classes_checked"] = rep.degrees.size();
    out["equivariance_samples"] = eq.samples;
    out["pass"] = pass;
    ojson wit = ojson::array();
    for (const auto& w : rep.witnesses) wit.push_back(w);
    for (const auto& w : eq.failures) wit.push_back(w);
    out["witnesses"] = std::move(wit);
    out["degrees"] = detail::exactness_json(rep.degrees);

    std::ostringstream text;
    auto line = [&](const char* name, bool ok) {
        text << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    };
    text << "verification: " << (pass ? "PASS" : "FAIL") << "\n";
    line("square-zero", rep.square_zero);
    line("minimality", rep.minimal);
    text << "exactness: " << (rep.exact ? "PASS" : "FAIL") << " (" << rep.degrees.size()
         << " classes up to d-degree " << istr(rep.bound) << ")\n";
    line("betti cross-check", rep.betti_ok);
    text << "equivariance: " << (eq.pass ? "PASS" : "FAIL") << " (" << eq.samples
         << " samples)\n";
    text << "certified: " << (rep.certified ? "yes" : "NO (radius cap exceeded)")
         << "\n";
    for (const auto& w : rep.witnesses) text << "  witness: " << w << "\n";
    for (const auto& w : eq.failures) text << "  witness: " << w << "\n";

    const int status = (pass && rep.certified) ? 0 : 1;
    std::string err;
    if (!pass)
        err = "verification FAIL";
    else if (!rep.certified)
        err = "UNCERTIFIED: support enumeration hit the radius cap";
    return finish(cfg, out, text.str(), status, err);
}

JobResult cmd_verify(const JobConfig& cfg, const ojson& input) {
    if (input.contains("differentials")) {
        // a stored resolution: verify it exactly as loaded
        const ojson& fj = need(input, "field", "input");
        if (!fj.is_string()) throw JsonError("input.field: expected a string");
        return with_field(fj.get<std::string>(), [&](const auto& f) {
            const auto res = detail::resolution_parse(f, input, "input");
            return do_verify(cfg, res);
        });
    }
    MonomialModule m = detail::module_parse(input, "input");
    return with_field(cfg.field, [&](const auto& f) {
        const auto res = resolve_equivariant(std::move(m), f, resolve_options(cfg));
        return do_verify(cfg, res);
    });
}

// ---- dispatch --------------------------------------------------------------

JobResult dispatch(const JobConfig& cfg) {
    if (cfg.format != "json" && cfg.format != "text")
        throw JsonError("unknown --format \"" + cfg.format + "\"");
    if (cfg.jobs < 1) throw JsonError("--jobs must be >= 1");
    const ojson input = parse_input(cfg.input_json);

    if (cfg.command == "lattice") return cmd_lattice(cfg, input);
    if (cfg.command == "koszul") return cmd_koszul(cfg, input);
    if (cfg.command == "betti") return cmd_betti(cfg, input);
    if (cfg.command == "forest") return cmd_forest(cfg, input);
    if (cfg.command == "primes") return cmd_primes(cfg, input);
    if (cfg.command == "paths") return cmd_paths(cfg, input);
    if (cfg.command == "resolve" || cfg.command == "descend") {
        MonomialModule m = detail::module_parse(input, "input");
        return with_field(cfg.field, [&](const auto& f) {
            return do_resolve(cfg, f, std::move(m), cfg.command == "descend");
        });
    }
    if (cfg.command == "verify") return cmd_verify(cfg, input);
    throw JsonError("unknown command \"" + cfg.command + "\"");
}

}  // namespace

JobResult run_job(const JobConfig& cfg) {
    try {
        return dispatch(cfg);
    } catch (const detail::NotCoArtinian& e) {
        return {2, "", e.what()};
    } catch (const DependentBasisError& e) {
        return {2, "", e.what()};
    } catch (const JsonError& e) {
        return {2, "", e.what()};
    } catch (const RankMismatchError& e) {
        return {3, "", e.what()};
    } catch (const std::invalid_argument& e) {
        return {2, "", e.what()};
    } catch (const std::exception& e) {
        return {3, "", e.what()};
    }
}

}  // namespace latres
