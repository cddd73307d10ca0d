#include "latres/json_io.hpp"

#include "json_detail.hpp"

namespace latres {

using detail::ojson;

namespace {

ojson parse_text(const std::string& text) {
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw detail::JsonError(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string module_to_json(const MonomialModule& m) { return dump(detail::module_json(m)); }

MonomialModule module_from_json(const std::string& text) {
    return detail::module_parse(parse_text(text), "input");
}

std::string complex_to_json(const SimplicialComplex& k) {
    return dump(detail::complex_json(k));
}

SimplicialComplex complex_from_json(const std::string& text) {
    return detail::complex_parse(parse_text(text), "input");
}

template <class F>
std::string resolution_to_json(const EquivariantResolution<F>& res) {
    return dump(detail::resolution_json(res));
}

template <class F>
EquivariantResolution<F> resolution_from_json(const F& f, const std::string& text) {
    return detail::resolution_parse(f, parse_text(text), "input");
}

template <class F>
std::string descended_to_json(const DescendedResolution<F>& desc) {
    return dump(detail::descended_json(desc));
}

template <class F>
DescendedResolution<F> descended_from_json(const F& f, const std::string& text) {
    return detail::descended_parse(f, parse_text(text), "input");
}

#define LATRES_JSON_INSTANCES(F)                                                      \
    template std::string resolution_to_json<F>(const EquivariantResolution<F>&);      \
    template EquivariantResolution<F> resolution_from_json<F>(const F&,               \
                                                              const std::string&);    \
    template std::string descended_to_json<F>(const DescendedResolution<F>&);         \
    template DescendedResolution<F> descended_from_json<F>(const F&, const std::string&);

LATRES_JSON_INSTANCES(QField)
LATRES_JSON_INSTANCES(Fp64Field)

}  // namespace latres
