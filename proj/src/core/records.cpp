#include "core/records.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace qmv {

namespace {

ojson words_to_hex(const std::vector<word>& ws) {
  ojson arr = ojson::array();
  for (word w : ws) arr.push_back(vertex_hex(w));
  return arr;
}

ojson subcube_to_json(const Subcube& s) {
  return ojson{{"base", vertex_hex(s.base)}, {"free", vertex_hex(s.free)}, {"dim", s.dim()}};
}

void expect_schema(const ojson& j, const std::string& want) {
  require(j.is_object() && j.contains("schema") && j["schema"].is_string(),
          ErrorCode::Io, "record has no schema field");
  require(j["schema"] == want, ErrorCode::Io,
          "unexpected schema '" + j["schema"].get<std::string>() + "', want '" + want + "'");
}

}  // namespace

ojson coloring_to_json(const CubeColoring& c, std::optional<std::uint64_t> seed) {
  ojson j;
  j["schema"] = "qmv.coloring/1";
  j["n"] = c.n;
  j["g"] = c.g;
  j["q"] = c.q;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["classes"] = c.classes;
  return j;
}

CubeColoring coloring_from_json(const ojson& j, std::optional<std::uint64_t>* seed_out) {
  expect_schema(j, "qmv.coloring/1");
  try {
    unsigned n = j.at("n").get<unsigned>();
    unsigned g = j.at("g").get<unsigned>();
    unsigned q = j.at("q").get<unsigned>();
    auto classes = j.at("classes").get<std::vector<std::uint16_t>>();
    if (seed_out) {
      if (j.contains("seed") && !j["seed"].is_null())
        *seed_out = j["seed"].get<std::uint64_t>();
      else
        *seed_out = std::nullopt;
    }
    return make_cube_coloring(n, g, q, std::move(classes));
  } catch (const ojson::exception& e) {
    fail(ErrorCode::Io, std::string("malformed coloring record: ") + e.what());
  }
}

ojson layer_coloring_to_json(const LayerColoring& c, std::optional<std::uint64_t> seed) {
  ojson j;
  j["schema"] = "qmv.layer_coloring/1";
  j["n"] = c.n;
  j["k"] = c.k;
  j["q"] = c.q;
  if (seed)
    j["seed"] = *seed;
  else
    j["seed"] = nullptr;
  j["colors"] = c.colors;
  return j;
}

LayerColoring layer_coloring_from_json(const ojson& j) {
  expect_schema(j, "qmv.layer_coloring/1");
  try {
    unsigned n = j.at("n").get<unsigned>();
    unsigned k = j.at("k").get<unsigned>();
    unsigned q = j.at("q").get<unsigned>();
    auto colors = j.at("colors").get<std::vector<std::uint8_t>>();
    return make_layer_coloring(n, k, q, std::move(colors));
  } catch (const ojson::exception& e) {
    fail(ErrorCode::Io, std::string("malformed layer coloring record: ") + e.what());
  }
}

ojson lll_report_to_json(const LllReport& r) {
  ojson j;
  j["schema"] = "qmv.lll_report/1";
  j["n"] = r.n;
  j["k"] = r.k;
  j["g"] = r.g;
  j["p_log2"] = r.p_log2;
  j["p"] = r.p;
  j["d"] = r.d;
  j["criterion"] = r.criterion;
  j["satisfied"] = r.satisfied;
  j["blocks"] = r.block_count;
  return j;
}

ojson layer_build_report_to_json(const LayerBuildReport& r) {
  ojson j;
  j["schema"] = "qmv.layer_report/1";
  j["k"] = r.k;
  j["boundary"] = r.boundary;
  if (!r.boundary) {
    j["blocks"] = r.blocks;
    j["p_log2"] = r.p_log2;
    j["p"] = r.p;
    j["d"] = r.d;
    j["criterion"] = r.criterion;
    j["satisfied"] = r.satisfied;
    j["rounds"] = r.rounds;
    j["resamples"] = r.resamples;
  }
  return j;
}

ojson visibility_certificate_to_json(const VisibilityCertificate& c) {
  ojson j;
  j["schema"] = "qmv.visibility/1";
  j["u"] = vertex_hex(c.u);
  j["v"] = vertex_hex(c.v);
  j["visible"] = c.visible;
  j["obstacles"] = c.obstacle_count;
  j["interior_obstacles"] = c.interior_obstacles;
  if (c.visible) j["path"] = words_to_hex(c.path);
  return j;
}

ojson set_check_to_json(unsigned n, std::uint64_t size, const SetCheck& chk) {
  ojson j;
  j["schema"] = "qmv.set_check/1";
  j["n"] = n;
  j["size"] = size;
  j["is_mutual_visibility"] = chk.is_mutual_visibility;
  j["pairs_checked"] = chk.pairs_checked;
  if (chk.witness) {
    j["witness"] = ojson{{"u", vertex_hex(chk.witness->u)},
                         {"v", vertex_hex(chk.witness->v)},
                         {"blocked", true}};
  }
  return j;
}

ojson three_layer_witness_to_json(const ThreeLayerWitness& w) {
  ojson j;
  j["schema"] = "qmv.obstruction/1";
  j["subcube"] = subcube_to_json(w.subcube);
  j["layers"] = w.layers;
  if (w.class_id >= 0) j["class"] = w.class_id;
  return j;
}

ojson verify_report_to_json(const CubeColoring& c, const ColoringCheck& chk) {
  ojson j;
  j["schema"] = "qmv.verify/1";
  j["n"] = c.n;
  j["g"] = c.g;
  j["q"] = c.q;
  j["classes_used"] = c.class_ids_used().size();
  j["ok"] = chk.ok;
  ojson per = ojson::array();
  for (const auto& v : chk.classes) {
    ojson e;
    e["class"] = v.class_id;
    e["size"] = v.size;
    e["ok"] = v.ok;
    if (v.witness)
      e["witness"] = ojson{{"u", vertex_hex(v.witness->u)},
                           {"v", vertex_hex(v.witness->v)},
                           {"blocked", true}};
    per.push_back(std::move(e));
  }
  j["per_class"] = std::move(per);
  return j;
}

ojson mu_result_to_json(const MuResult& r) {
  ojson j;
  j["schema"] = "qmv.mu/1";
  j["tool_version"] = kToolVersion;
  j["n"] = r.n;
  j["mu"] = r.mu;
  j["certified"] = r.certified;
  j["witness"] = words_to_hex(r.witness);
  j["nodes"] = r.nodes;
  j["trace_hash"] = vertex_hex(r.trace_hash);
  j["deterministic_witness"] = true;  // single-worker search
  return j;
}

ojson chi_result_to_json(const ChiMuResult& r) {
  ojson j;
  j["schema"] = "qmv.chi/1";
  j["tool_version"] = kToolVersion;
  j["n"] = r.n;
  j["chi"] = r.chi;
  j["certified"] = r.certified;
  j["lower_bound"] = r.lower_bound;
  j["partition"] = coloring_to_json(r.partition, std::nullopt);
  j["nodes"] = r.nodes;
  j["trace_hash"] = vertex_hex(r.trace_hash);
  j["deterministic_witness"] = true;
  return j;
}

ojson ramsey_witness_to_json(const RamseyWitness& w) {
  ojson j;
  j["schema"] = "qmv.ramsey_witness/1";
  j["m"] = w.m;
  j["k"] = w.k;
  j["q"] = w.q;
  j["s"] = w.s;
  j["mono_set"] = vertex_hex(w.mono_set);
  j["elements"] = vertex_elements(w.mono_set);
  j["color"] = w.color;
  // the dimension threshold this machinery feeds is tower-sized; report it
  // symbolically, never evaluated
  j["n0_expression"] = lower_bound_tower_expression(w.q);
  return j;
}

ojson mono_layer_subcube_to_json(const MonoLayerSubcube& m) {
  ojson j;
  j["schema"] = "qmv.mono_subcube/1";
  j["subcube"] = subcube_to_json(m.sub);
  j["layer_classes"] = m.layer_classes;
  return j;
}

ParsedSet parse_set_file(const std::string& text, unsigned n_hint) {
  ParsedSet out;
  std::istringstream in(text);
  std::string line;
  std::vector<word> members;
  word seen = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(a, b - a + 1);
    if (tok[0] == '#') continue;
    try {
      word v = parse_vertex(tok);
      members.push_back(v);
      seen |= v;
    } catch (const Error& e) {
      fail(ErrorCode::Io, "set file line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  unsigned inferred = seen == 0 ? 1 : 64 - static_cast<unsigned>(__builtin_clzll(seen));
  out.n = n_hint ? n_hint : inferred;
  require(out.n >= 1 && out.n <= budgets::kWordDim, ErrorCode::Io, "set file dimension invalid");
  for (word v : members)
    require(subset_of(v, full_mask(out.n)), ErrorCode::Io,
            "vertex " + vertex_hex(v) + " exceeds dimension " + std::to_string(out.n));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  out.members = std::move(members);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), ErrorCode::Io, "read failure on '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  require(out.good(), ErrorCode::Io, "write failure on '" + path + "'");
}

}  // namespace qmv
