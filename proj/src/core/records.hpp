#pragma once

// Machine-readable records and file formats. Machine output is
// line-delimited JSON, every record carrying a "schema" version field;
// serialization is deterministic so identical inputs produce identical
// bytes.

#include <optional>
#include <string>

#include "json.hpp"

#include "core/construction.hpp"
#include "core/exact.hpp"
#include "core/lll.hpp"
#include "core/visibility.hpp"

namespace qmv {

using ojson = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

// {schema, n, g, q, seed, classes[2^n]} indexed by vertex bit-word.
ojson coloring_to_json(const CubeColoring& c, std::optional<std::uint64_t> seed);
CubeColoring coloring_from_json(const ojson& j, std::optional<std::uint64_t>* seed_out = nullptr);

// {schema, n, k, q, colors[C(n,k)]} in colex member order.
ojson layer_coloring_to_json(const LayerColoring& c, std::optional<std::uint64_t> seed);
LayerColoring layer_coloring_from_json(const ojson& j);

ojson lll_report_to_json(const LllReport& r);
ojson layer_build_report_to_json(const LayerBuildReport& r);
ojson visibility_certificate_to_json(const VisibilityCertificate& c);
ojson set_check_to_json(unsigned n, std::uint64_t size, const SetCheck& chk);
ojson three_layer_witness_to_json(const ThreeLayerWitness& w);
ojson verify_report_to_json(const CubeColoring& c, const ColoringCheck& chk);
ojson mu_result_to_json(const MuResult& r);
ojson chi_result_to_json(const ChiMuResult& r);
ojson ramsey_witness_to_json(const RamseyWitness& w);
ojson mono_layer_subcube_to_json(const MonoLayerSubcube& m);

// Set files: one vertex per line, hex word or sorted element list; '#' lines
// are comments. n_hint = 0 infers the dimension from the largest element.
struct ParsedSet {
  unsigned n = 0;
  std::vector<word> members;
};
ParsedSet parse_set_file(const std::string& text, unsigned n_hint);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qmv
