// extern-C surface over the core. Exceptions stop here: every entry point
// catches, stashes the message in thread-local storage, and returns a code.

#include "qmv/qmv.h"

#include <cstring>
#include <string>

#include "core/construction.hpp"
#include "core/exact.hpp"
#include "core/hypercube.hpp"
#include "core/lll.hpp"
#include "core/records.hpp"
#include "core/visibility.hpp"

struct qmv_coloring {
  qmv::CubeColoring impl;
  std::optional<std::uint64_t> seed;
};

namespace {

thread_local std::string g_last_error;

qmv_rc map_code(qmv::ErrorCode c) {
  switch (c) {
    case qmv::ErrorCode::InvalidArgument: return QMV_ERR_ARG;
    case qmv::ErrorCode::Budget: return QMV_ERR_BUDGET;
    case qmv::ErrorCode::Convergence: return QMV_ERR_CONVERGENCE;
    case qmv::ErrorCode::Io: return QMV_ERR_IO;
    case qmv::ErrorCode::Internal: return QMV_ERR_INTERNAL;
  }
  return QMV_ERR_INTERNAL;
}

template <typename F>
qmv_rc guarded(F&& f) noexcept {
  try {
    f();
    return QMV_OK;
  } catch (const qmv::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QMV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QMV_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

std::vector<qmv::word> to_vector(const uint64_t* data, uint64_t count) {
  qmv::require(data != nullptr || count == 0, qmv::ErrorCode::InvalidArgument,
               "null vertex array with nonzero count");
  return std::vector<qmv::word>(data, data + count);
}

}  // namespace

extern "C" {

const char* qmv_version(void) { return qmv::kToolVersion; }

const char* qmv_last_error(void) { return g_last_error.c_str(); }

void qmv_string_free(char* s) { delete[] s; }

void qmv_words_free(uint64_t* words) { delete[] words; }

qmv_rc qmv_distance(uint32_t n, uint64_t a, uint64_t b, uint32_t* out) {
  return guarded([&] {
    qmv::require(out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    *out = qmv::distance(qmv::make_vertex(a, n), qmv::make_vertex(b, n));
  });
}

qmv_rc qmv_enumerate_layer(uint32_t n, uint32_t k, int unsafe, uint64_t** words_out,
                           uint64_t* count_out) {
  return guarded([&] {
    qmv::require(words_out != nullptr && count_out != nullptr, qmv::ErrorCode::InvalidArgument,
                 "null out-parameter");
    qmv::LayerFamily fam = qmv::enumerate_layer(n, k, unsafe != 0);
    auto* arr = new uint64_t[fam.members.size()];
    std::memcpy(arr, fam.members.data(), fam.members.size() * sizeof(uint64_t));
    *words_out = arr;
    *count_out = fam.members.size();
  });
}

qmv_rc qmv_visible(uint32_t n, uint64_t a, uint64_t b, const uint64_t* obstacles,
                   uint64_t obstacle_count, int unsafe, int* visible_out, char** record_out) {
  return guarded([&] {
    qmv::require(visible_out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    qmv::ObstacleSet obst = qmv::make_obstacle_set(n, to_vector(obstacles, obstacle_count));
    qmv::VisibilityCertificate cert = qmv::visible_with_certificate(
        qmv::make_vertex(a, n), qmv::make_vertex(b, n), obst, unsafe != 0);
    *visible_out = cert.visible ? 1 : 0;
    emit(record_out, qmv::visibility_certificate_to_json(cert).dump());
  });
}

qmv_rc qmv_check_set(uint32_t n, const uint64_t* vertices, uint64_t count, uint32_t jobs,
                     int unsafe, int* is_mv_out, char** record_out) {
  return guarded([&] {
    qmv::require(is_mv_out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    std::vector<qmv::word> verts = to_vector(vertices, count);
    qmv::SetCheck chk = qmv::is_mutual_visibility_set(n, verts, jobs ? jobs : 1, unsafe != 0);
    *is_mv_out = chk.is_mutual_visibility ? 1 : 0;
    emit(record_out, qmv::set_check_to_json(n, count, chk).dump());
  });
}

qmv_rc qmv_find_obstruction(uint32_t n, const uint64_t* vertices, uint64_t count,
                            uint32_t max_dim, int unsafe, int* found_out, char** record_out) {
  return guarded([&] {
    qmv::require(found_out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    std::vector<qmv::word> verts = to_vector(vertices, count);
    auto witness = qmv::find_three_layer_obstruction(n, verts, max_dim, unsafe != 0);
    *found_out = witness ? 1 : 0;
    if (witness) emit(record_out, qmv::three_layer_witness_to_json(*witness).dump());
    else emit(record_out, std::string("{\"schema\":\"qmv.obstruction/1\",\"found\":false}"));
  });
}

void qmv_coloring_free(qmv_coloring* c) { delete c; }

qmv_rc qmv_color_cube(uint32_t n, uint32_t g, uint32_t q, uint64_t seed, uint64_t max_rounds,
                      uint32_t jobs, int unsafe, qmv_coloring** out, char** reports_out) {
  return guarded([&] {
    qmv::require(out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    std::optional<std::uint64_t> rounds;
    if (max_rounds != 0) rounds = max_rounds;
    qmv::CubeBuild build =
        qmv::build_cube_coloring(n, g, q, seed, rounds, jobs ? jobs : 1, unsafe != 0);
    if (reports_out) {
      std::string lines;
      for (const auto& rep : build.layers) {
        lines += qmv::layer_build_report_to_json(rep).dump();
        lines += '\n';
      }
      emit(reports_out, lines);
    }
    *out = new qmv_coloring{std::move(build.coloring), seed};
  });
}

uint32_t qmv_coloring_n(const qmv_coloring* c) { return c ? c->impl.n : 0; }

uint32_t qmv_coloring_class_count(const qmv_coloring* c) {
  return c ? static_cast<uint32_t>(c->impl.class_ids_used().size()) : 0;
}

uint32_t qmv_coloring_class_of(const qmv_coloring* c, uint64_t vertex) {
  if (!c || vertex >= c->impl.classes.size()) return 0;
  return c->impl.classes[vertex];
}

qmv_rc qmv_coloring_to_json(const qmv_coloring* c, char** json_out) {
  return guarded([&] {
    qmv::require(c != nullptr && json_out != nullptr, qmv::ErrorCode::InvalidArgument,
                 "null argument");
    emit(json_out, qmv::coloring_to_json(c->impl, c->seed).dump());
  });
}

qmv_rc qmv_coloring_from_json(const char* json, qmv_coloring** out) {
  return guarded([&] {
    qmv::require(json != nullptr && out != nullptr, qmv::ErrorCode::InvalidArgument,
                 "null argument");
    qmv::ojson j = qmv::ojson::parse(json, nullptr, false);
    qmv::require(!j.is_discarded(), qmv::ErrorCode::Io, "coloring record is not valid JSON");
    std::optional<std::uint64_t> seed;
    qmv::CubeColoring c = qmv::coloring_from_json(j, &seed);
    *out = new qmv_coloring{std::move(c), seed};
  });
}

qmv_rc qmv_coloring_read_file(const char* path, qmv_coloring** out) {
  return guarded([&] {
    qmv::require(path != nullptr && out != nullptr, qmv::ErrorCode::InvalidArgument,
                 "null argument");
    std::string text = qmv::read_file(path);
    qmv::ojson j = qmv::ojson::parse(text, nullptr, false);
    qmv::require(!j.is_discarded(), qmv::ErrorCode::Io,
                 std::string("'") + path + "' is not valid JSON");
    std::optional<std::uint64_t> seed;
    qmv::CubeColoring c = qmv::coloring_from_json(j, &seed);
    *out = new qmv_coloring{std::move(c), seed};
  });
}

qmv_rc qmv_coloring_write_file(const qmv_coloring* c, const char* path) {
  return guarded([&] {
    qmv::require(c != nullptr && path != nullptr, qmv::ErrorCode::InvalidArgument,
                 "null argument");
    qmv::write_file(path, qmv::coloring_to_json(c->impl, c->seed).dump() + "\n");
  });
}

qmv_rc qmv_verify_coloring(const qmv_coloring* c, uint32_t jobs, int unsafe, int* ok_out,
                           char** record_out) {
  return guarded([&] {
    qmv::require(c != nullptr && ok_out != nullptr, qmv::ErrorCode::InvalidArgument,
                 "null argument");
    qmv::ColoringCheck chk = qmv::verify_cube_coloring(c->impl, jobs ? jobs : 1, unsafe != 0);
    *ok_out = chk.ok ? 1 : 0;
    emit(record_out, qmv::verify_report_to_json(c->impl, chk).dump());
  });
}

qmv_rc qmv_lll_report(uint32_t n, uint32_t k, uint32_t g, char** record_out) {
  return guarded([&] {
    qmv::require(record_out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    emit(record_out, qmv::lll_report_to_json(qmv::lll_parameters(n, k, g)).dump());
  });
}

qmv_rc qmv_layer_coloring(uint32_t n, uint32_t k, uint32_t g, uint64_t seed,
                          uint64_t max_rounds, int unsafe, char** record_out) {
  return guarded([&] {
    qmv::require(record_out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    std::optional<std::uint64_t> rounds;
    if (max_rounds != 0) rounds = max_rounds;
    qmv::MtResult mt = qmv::moser_tardos_layer_coloring(n, k, g, seed, rounds, unsafe != 0);
    emit(record_out, qmv::layer_coloring_to_json(mt.coloring, seed).dump());
  });
}

qmv_rc qmv_exact_mu(uint32_t n, int unsafe, char** record_out) {
  return guarded([&] {
    qmv::require(record_out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    emit(record_out, qmv::mu_result_to_json(qmv::max_mutual_visibility(n, 0, unsafe != 0)).dump());
  });
}

qmv_rc qmv_exact_chi(uint32_t n, int unsafe, char** record_out) {
  return guarded([&] {
    qmv::require(record_out != nullptr, qmv::ErrorCode::InvalidArgument, "null out-parameter");
    emit(record_out, qmv::chi_result_to_json(qmv::exact_chi_mu(n, unsafe != 0)).dump());
  });
}

qmv_rc qmv_read_set_file(const char* path, uint32_t n_hint, uint32_t* n_out,
                         uint64_t** words_out, uint64_t* count_out) {
  return guarded([&] {
    qmv::require(path != nullptr && n_out != nullptr && words_out != nullptr &&
                     count_out != nullptr,
                 qmv::ErrorCode::InvalidArgument, "null argument");
    qmv::ParsedSet set = qmv::parse_set_file(qmv::read_file(path), n_hint);
    auto* arr = new uint64_t[set.members.size()];
    std::memcpy(arr, set.members.data(), set.members.size() * sizeof(uint64_t));
    *n_out = set.n;
    *words_out = arr;
    *count_out = set.members.size();
  });
}

}  // extern "C"
