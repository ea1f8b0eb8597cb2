#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "hemilab/homology.hpp"
#include "hemilab/metric.hpp"

namespace hemilab {

using Json = nlohmann::json;             // sorted keys; canonical for hashing
using OrderedJson = nlohmann::ordered_json;  // insertion order; for reports

/// Complex file format: typeset, vertices, facets, all sorted ascending.
OrderedJson complex_to_json(const SimplicialComplex& x);
SimplicialComplex complex_from_json(const Json& j);

/// The same with the exact realization vectors of a Coxeter model attached.
OrderedJson coxeter_to_json(const CoxeterComplex& cx);

/// Building specs: {"family":"A","n":..,"q":..}, {"thin":{"family":"A","n":..}},
/// or {"join":[spec, ...]}.
Building building_from_spec(const Json& spec);
std::string spec_cache_key(const Json& spec);

/// Pole specs: {"vertex": id}, {"barycenter": [ids]}, or
/// {"frame": [[row]..], "carrier": [[1-based positions]..], "weights": ["1/2"..]}.
Pole pole_from_spec(const Building& b, const Json& spec);
OrderedJson pole_to_json(const Pole& x);

/// Parse the CLI forms "vertex:ID", "barycenter:ID,ID,..." or a JSON file path.
Pole pole_from_cli(const Building& b, const std::string& arg);

OrderedJson classification_to_json(const Building& b, const VertexClassification& cls);
OrderedJson homology_to_json(const HomologyProfile& hp);

std::filesystem::path cache_directory(const std::string& override_dir = "");

/// Writes the generated complex to the cache keyed by the spec hash; returns
/// the file path. An existing entry is left untouched.
std::filesystem::path write_cached_complex(const Json& spec, const Building& b,
                                           const std::string& cache_override = "");

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hemilab
