// JSON text serialization for the public value types.  Output is
// deterministic (fixed key order, two-space indent) so identical inputs
// produce byte-identical files.  Parsers validate shape and bookkeeping and
// throw std::invalid_argument with a path witness on bad data.
#pragma once

#include "latres/descent.hpp"

#include <string>

namespace latres {

std::string module_to_json(const MonomialModule& m);
MonomialModule module_from_json(const std::string& text);

std::string complex_to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const std::string& text);

template <class F>
std::string resolution_to_json(const EquivariantResolution<F>& res);
template <class F>
EquivariantResolution<F> resolution_from_json(const F& f, const std::string& text);

template <class F>
std::string descended_to_json(const DescendedResolution<F>& desc);
template <class F>
DescendedResolution<F> descended_from_json(const F& f, const std::string& text);

}  // namespace latres
