// qmv command-line tool. All computation goes through the C API in
// qmv/qmv.h; this file only parses arguments, renders human output from the
// machine records, and maps result codes to exit codes:
//   0 success / verified
//   1 verification failure (certificate printed)
//   2 usage error or malformed input
//   3 budget, convergence, or internal failure

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qmv/qmv.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

int exit_code_for(qmv_rc rc) {
  switch (rc) {
    case QMV_OK: return kExitOk;
    case QMV_ERR_ARG: return kExitUsage;
    case QMV_ERR_IO: return kExitUsage;
    case QMV_ERR_BUDGET: return kExitBudget;
    case QMV_ERR_CONVERGENCE: return kExitBudget;
    case QMV_ERR_INTERNAL: return kExitBudget;
  }
  return kExitBudget;
}

int report_error(qmv_rc rc) {
  std::fprintf(stderr, "qmv: error: %s\n", qmv_last_error());
  return exit_code_for(rc);
}

struct CString {
  char* ptr = nullptr;
  ~CString() { qmv_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct CWords {
  uint64_t* ptr = nullptr;
  uint64_t count = 0;
  ~CWords() { qmv_words_free(ptr); }
};

struct ColoringHandle {
  qmv_coloring* ptr = nullptr;
  ~ColoringHandle() { qmv_coloring_free(ptr); }
};

bool machine_format(const std::string& format) { return format == "machine"; }

void print_record(const std::string& record) { std::printf("%s\n", record.c_str()); }

std::string elements_of(const std::string& hex) {
  uint64_t v = std::stoull(hex, nullptr, 16);
  std::string out = "{";
  for (unsigned i = 0; i < 64; ++i)
    if (v & (uint64_t{1} << i)) {
      if (out.size() > 1) out += ',';
      out += std::to_string(i + 1);
    }
  return out + "}";
}

std::string pair_text(const json& witness) {
  return elements_of(witness.at("u").get<std::string>()) + " , " +
         elements_of(witness.at("v").get<std::string>());
}

// ---- color ----

struct ColorArgs {
  uint32_t n = 0, g = 3, q = 2, jobs = 1;
  int k = -1;
  uint64_t seed = 0, max_rounds = 0;
  std::string out, format = "human";
  bool unsafe = false;
};

int run_color_layer(const ColorArgs& a) {
  CString record;
  qmv_rc rc = qmv_layer_coloring(a.n, static_cast<uint32_t>(a.k), a.g, a.seed, a.max_rounds,
                                 a.unsafe, &record.ptr);
  if (rc != QMV_OK) return report_error(rc);
  if (!a.out.empty()) {
    std::FILE* f = std::fopen(a.out.c_str(), "wb");
    if (!f) {
      std::fprintf(stderr, "qmv: error: cannot write '%s'\n", a.out.c_str());
      return kExitUsage;
    }
    std::fprintf(f, "%s\n", record.ptr);
    std::fclose(f);
  }
  if (machine_format(a.format)) {
    print_record(record.str());
  } else {
    json j = json::parse(record.str());
    std::printf("layer coloring: n=%u k=%d q=%u seed=%" PRIu64 "\n", a.n, a.k, a.q, a.seed);
    std::vector<int> colors = j.at("colors").get<std::vector<int>>();
    std::vector<size_t> hist(3, 0);
    for (int c : colors) hist[static_cast<size_t>(c)]++;
    std::printf("  members: %zu  color 1: %zu  color 2: %zu\n", colors.size(), hist[1], hist[2]);
    if (!a.out.empty()) std::printf("  written to %s\n", a.out.c_str());
  }
  return kExitOk;
}

int run_color(const ColorArgs& a) {
  if (a.k >= 0) return run_color_layer(a);
  ColoringHandle coloring;
  CString reports;
  qmv_rc rc = qmv_color_cube(a.n, a.g, a.q, a.seed, a.max_rounds, a.jobs, a.unsafe,
                             &coloring.ptr, &reports.ptr);
  if (rc != QMV_OK) return report_error(rc);

  std::string out_path = a.out;
  if (out_path.empty())
    out_path = "qmv-coloring-n" + std::to_string(a.n) + "-g" + std::to_string(a.g) + "-seed" +
               std::to_string(a.seed) + ".json";
  rc = qmv_coloring_write_file(coloring.ptr, out_path.c_str());
  if (rc != QMV_OK) return report_error(rc);

  uint32_t classes = qmv_coloring_class_count(coloring.ptr);
  if (machine_format(a.format)) {
    std::printf("%s", reports.ptr);
    json run;
    run["schema"] = "qmv.color_run/1";
    run["n"] = a.n;
    run["g"] = a.g;
    run["q"] = a.q;
    run["seed"] = a.seed;
    run["classes_used"] = classes;
    run["out"] = out_path;
    print_record(run.dump());
  } else {
    std::printf("colored V(Q_%u) with g=%u, q=%u, seed=%" PRIu64 ": %u classes (cap %u)\n", a.n,
                a.g, a.q, a.seed, classes, a.g * a.q);
    std::printf("  %-4s %-9s %-8s %-12s %-10s %-9s %s\n", "k", "kind", "blocks", "criterion",
                "satisfied", "rounds", "resamples");
    std::istringstream lines(reports.str());
    std::string line;
    while (std::getline(lines, line)) {
      json j = json::parse(line);
      unsigned k = j.at("k").get<unsigned>();
      if (j.at("boundary").get<bool>()) {
        std::printf("  %-4u %-9s %-8s %-12s %-10s %-9s %s\n", k, "boundary", "-", "-", "-", "-",
                    "-");
      } else {
        std::printf("  %-4u %-9s %-8" PRIu64 " %-12.6g %-10s %-9" PRIu64 " %" PRIu64 "\n", k,
                    "middle", j.at("blocks").get<uint64_t>(), j.at("criterion").get<double>(),
                    j.at("satisfied").get<bool>() ? "yes" : "no", j.at("rounds").get<uint64_t>(),
                    j.at("resamples").get<uint64_t>());
      }
    }
    std::printf("  coloring written to %s\n", out_path.c_str());
  }
  return kExitOk;
}

// ---- verify ----

int run_verify(const std::string& file, uint32_t jobs, const std::string& format, bool unsafe) {
  ColoringHandle coloring;
  qmv_rc rc = qmv_coloring_read_file(file.c_str(), &coloring.ptr);
  if (rc != QMV_OK) return report_error(rc);
  int ok = 0;
  CString record;
  rc = qmv_verify_coloring(coloring.ptr, jobs, unsafe, &ok, &record.ptr);
  if (rc != QMV_OK) return report_error(rc);
  if (machine_format(format)) {
    print_record(record.str());
  } else {
    json j = json::parse(record.str());
    std::printf("verify %s: n=%u classes=%zu\n", file.c_str(), j.at("n").get<unsigned>(),
                j.at("classes_used").get<size_t>());
    for (const auto& cls : j.at("per_class")) {
      if (cls.at("ok").get<bool>()) {
        std::printf("  class %-4u size %-6zu mutual-visibility: yes\n",
                    cls.at("class").get<unsigned>(), cls.at("size").get<size_t>());
      } else {
        std::printf("  class %-4u size %-6zu mutual-visibility: NO  blocked pair %s\n",
                    cls.at("class").get<unsigned>(), cls.at("size").get<size_t>(),
                    pair_text(cls.at("witness")).c_str());
      }
    }
    std::printf("verdict: %s\n", ok ? "properly colored" : "NOT properly colored");
  }
  return ok ? kExitOk : kExitVerificationFailure;
}

// ---- exact ----

int run_exact(const std::string& kind, uint32_t n, const std::string& results_dir,
              const std::string& format, bool unsafe) {
  namespace fs = std::filesystem;
  std::string cache = results_dir + "/" + kind + "-n" + std::to_string(n) + ".json";
  std::string record;
  bool cached = false;
  if (fs::exists(cache)) {
    std::FILE* f = std::fopen(cache.c_str(), "rb");
    if (f) {
      std::string text;
      char buf[4096];
      size_t got;
      while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
      std::fclose(f);
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      json j = json::parse(text, nullptr, false);
      if (!j.is_discarded() && j.contains("schema")) {
        record = text;
        cached = true;
      }
    }
  }
  if (!cached) {
    CString fresh;
    qmv_rc rc = kind == "mu" ? qmv_exact_mu(n, unsafe, &fresh.ptr)
                             : qmv_exact_chi(n, unsafe, &fresh.ptr);
    if (rc != QMV_OK) return report_error(rc);
    record = fresh.str();
    std::error_code ec;
    fs::create_directories(results_dir, ec);
    std::FILE* f = std::fopen(cache.c_str(), "wb");
    if (f) {
      std::fprintf(f, "%s\n", record.c_str());
      std::fclose(f);
    }
  }
  if (machine_format(format)) {
    print_record(record);
  } else {
    json j = json::parse(record);
    if (kind == "mu") {
      std::printf("mu(Q_%u) = %u%s\n", n, j.at("mu").get<unsigned>(),
                  j.at("certified").get<bool>() ? "" : " (best found, not certified)");
      std::string wit;
      for (const auto& w : j.at("witness"))
        wit += (wit.empty() ? "" : " ") + elements_of(w.get<std::string>());
      std::printf("  witness: %s\n", wit.c_str());
    } else {
      std::printf("chi_mu(Q_%u) = %u (counting lower bound %u)\n", n, j.at("chi").get<unsigned>(),
                  j.at("lower_bound").get<unsigned>());
    }
    std::printf("  nodes: %" PRIu64 "  trace: %s%s\n", j.at("nodes").get<uint64_t>(),
                j.at("trace_hash").get<std::string>().c_str(),
                cached ? "  (cached result)" : "");
  }
  return kExitOk;
}

// ---- lll-report ----

int run_lll_report(uint32_t n, uint32_t g, int k, const std::string& format) {
  std::vector<std::string> rows;
  if (k >= 0) {
    CString rec;
    qmv_rc rc = qmv_lll_report(n, static_cast<uint32_t>(k), g, &rec.ptr);
    if (rc != QMV_OK) return report_error(rc);
    rows.push_back(rec.str());
  } else {
    for (uint32_t kk = g; kk + g <= n; ++kk) {
      CString rec;
      qmv_rc rc = qmv_lll_report(n, kk, g, &rec.ptr);
      if (rc != QMV_OK) return report_error(rc);
      rows.push_back(rec.str());
    }
  }
  if (machine_format(format)) {
    for (const auto& r : rows) print_record(r);
    return kExitOk;
  }
  if (rows.empty()) {
    std::printf("no middle layers: n=%u has no k with %u <= k <= %u\n", n, g, n - g);
    return kExitOk;
  }
  std::printf("%-4s %-4s %-4s %-10s %-10s %-12s %-12s %s\n", "n", "k", "g", "blocks", "p_log2",
              "d", "criterion", "satisfied");
  for (const auto& r : rows) {
    json j = json::parse(r);
    std::printf("%-4u %-4u %-4u %-10" PRIu64 " %-10lld %-12" PRIu64 " %-12.6g %s\n",
                j.at("n").get<unsigned>(), j.at("k").get<unsigned>(), j.at("g").get<unsigned>(),
                j.at("blocks").get<uint64_t>(), j.at("p_log2").get<long long>(),
                j.at("d").get<uint64_t>(), j.at("criterion").get<double>(),
                j.at("satisfied").get<bool>() ? "yes" : "NO");
  }
  return kExitOk;
}

// ---- obstruct ----

int run_obstruct(const std::string& file, uint32_t n_hint, uint32_t max_dim,
                 const std::string& format, bool unsafe) {
  CWords set;
  uint32_t n = 0;
  qmv_rc rc = qmv_read_set_file(file.c_str(), n_hint, &n, &set.ptr, &set.count);
  if (rc != QMV_OK) return report_error(rc);
  if (max_dim == 0) max_dim = n < 6 ? n : 6;
  int found = 0;
  CString record;
  rc = qmv_find_obstruction(n, set.ptr, set.count, max_dim, unsafe, &found, &record.ptr);
  if (rc != QMV_OK) return report_error(rc);
  if (!found) {
    if (machine_format(format)) print_record(record.str());
    else
      std::printf("no three-layer obstruction in subcubes of dimension 2..%u (n=%u, %" PRIu64
                  " vertices)\n",
                  max_dim, n, set.count);
    return kExitOk;
  }
  // A witness proves the set is not mutually visible; confirm with the
  // full checker and fail loudly if the two ever disagree.
  int is_mv = 0;
  CString check;
  rc = qmv_check_set(n, set.ptr, set.count, 1, unsafe, &is_mv, &check.ptr);
  if (rc != QMV_OK) return report_error(rc);
  if (is_mv) {
    std::fprintf(stderr, "qmv: internal error: obstruction witness found but the set "
                         "verified as mutually visible\n");
    return kExitBudget;
  }
  if (machine_format(format)) {
    print_record(record.str());
    print_record(check.str());
  } else {
    json j = json::parse(record.str());
    const auto& sub = j.at("subcube");
    std::printf("three-layer obstruction found: base=%s free=%s (dim %u), layers %u,%u,%u\n",
                elements_of(sub.at("base").get<std::string>()).c_str(),
                elements_of(sub.at("free").get<std::string>()).c_str(),
                sub.at("dim").get<unsigned>(), j.at("layers")[0].get<unsigned>(),
                j.at("layers")[1].get<unsigned>(), j.at("layers")[2].get<unsigned>());
    json jc = json::parse(check.str());
    std::printf("set is NOT a mutual-visibility set; blocked pair %s\n",
                pair_text(jc.at("witness")).c_str());
  }
  return kExitVerificationFailure;
}

// ---- layers ----

int run_layers(uint32_t n, int k, const std::string& format, bool unsafe) {
  if (k >= 0) {
    CWords words;
    qmv_rc rc = qmv_enumerate_layer(n, static_cast<uint32_t>(k), unsafe, &words.ptr,
                                    &words.count);
    if (rc != QMV_OK) return report_error(rc);
    if (machine_format(format)) {
      json j;
      j["schema"] = "qmv.layer/1";
      j["n"] = n;
      j["k"] = k;
      json arr = json::array();
      for (uint64_t i = 0; i < words.count; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "0x%" PRIx64, words.ptr[i]);
        arr.push_back(buf);
      }
      j["members"] = std::move(arr);
      print_record(j.dump());
    } else {
      std::printf("layer k=%d of Q_%u: %" PRIu64 " members\n", k, n, words.count);
      for (uint64_t i = 0; i < words.count; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "0x%" PRIx64, words.ptr[i]);
        std::printf("  %-20s %s\n", elements_of(buf).c_str(), buf);
      }
    }
    return kExitOk;
  }
  // counts only
  std::vector<uint64_t> counts;
  for (uint32_t kk = 0; kk <= n; ++kk) {
    CWords words;
    qmv_rc rc = qmv_enumerate_layer(n, kk, unsafe, &words.ptr, &words.count);
    if (rc != QMV_OK) return report_error(rc);
    counts.push_back(words.count);
  }
  if (machine_format(format)) {
    json j;
    j["schema"] = "qmv.layers/1";
    j["n"] = n;
    j["counts"] = counts;
    print_record(j.dump());
  } else {
    std::printf("layers of Q_%u\n", n);
    for (uint32_t kk = 0; kk <= n; ++kk)
      std::printf("  k=%-3u %" PRIu64 "\n", kk, counts[kk]);
  }
  return kExitOk;
}

// ---- check-set ----

int run_check_set(const std::string& file, uint32_t n_hint, uint32_t jobs,
                  const std::string& format, bool unsafe) {
  CWords set;
  uint32_t n = 0;
  qmv_rc rc = qmv_read_set_file(file.c_str(), n_hint, &n, &set.ptr, &set.count);
  if (rc != QMV_OK) return report_error(rc);
  int is_mv = 0;
  CString record;
  rc = qmv_check_set(n, set.ptr, set.count, jobs, unsafe, &is_mv, &record.ptr);
  if (rc != QMV_OK) return report_error(rc);
  if (machine_format(format)) {
    print_record(record.str());
  } else {
    json j = json::parse(record.str());
    std::printf("%s: %" PRIu64 " vertices in Q_%u, %" PRIu64 " pairs checked\n", file.c_str(),
                set.count, n, j.at("pairs_checked").get<uint64_t>());
    if (is_mv) {
      std::printf("mutual-visibility set: yes\n");
    } else {
      std::printf("mutual-visibility set: NO  blocked pair %s\n",
                  pair_text(j.at("witness")).c_str());
    }
  }
  return is_mv ? kExitOk : kExitVerificationFailure;
}

void add_format_flag(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format: human or machine (JSONL records)")
      ->check(CLI::IsMember({"human", "machine"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mutual-visibility colorings, checkers and exact solvers on hypercubes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qmv_version()));

  ColorArgs color_args;
  auto* color = app.add_subcommand("color", "Construct a proper coloring of V(Q_n)");
  color->add_option("--n", color_args.n, "Cube dimension")->required();
  color->add_option("--g", color_args.g, "Gap parameter (>= 3)");
  color->add_option("--q", color_args.q, "Colors per layer (construction supports 2)");
  color->add_option("--k", color_args.k, "Color a single layer instead of the whole cube");
  color->add_option("--seed", color_args.seed, "Master seed (per-layer streams derive from it)");
  color->add_option("--max-rounds", color_args.max_rounds,
                    "Resampling round cap per layer (0 = default)");
  color->add_option("--jobs", color_args.jobs, "Worker count")->check(CLI::PositiveNumber);
  color->add_option("--out", color_args.out, "Output file for the coloring");
  color->add_flag("--unsafe-budgets", color_args.unsafe, "Lift desk-scale budget caps");
  add_format_flag(color, color_args.format);

  std::string verify_file, verify_format = "human";
  uint32_t verify_jobs = 1;
  bool verify_unsafe = false;
  auto* verify = app.add_subcommand("verify", "Verify that every class of a coloring file is a "
                                              "mutual-visibility set");
  verify->add_option("file", verify_file, "Coloring file (qmv.coloring/1)")->required();
  verify->add_option("--jobs", verify_jobs, "Worker count")->check(CLI::PositiveNumber);
  verify->add_flag("--unsafe-budgets", verify_unsafe, "Lift desk-scale budget caps");
  add_format_flag(verify, verify_format);

  uint32_t exact_n = 0;
  std::string exact_out = "qmv-results", exact_format = "human";
  bool exact_unsafe = false;
  auto* exact = app.add_subcommand("exact", "Exact small-n solvers (results cached on disk)");
  exact->require_subcommand(1);
  auto* exact_mu = exact->add_subcommand("mu", "Largest mutual-visibility set size");
  auto* exact_chi = exact->add_subcommand("chi", "Minimum class count of a proper coloring");
  for (auto* sub : {exact_mu, exact_chi}) {
    sub->add_option("--n", exact_n, "Cube dimension")->required();
    sub->add_option("--out", exact_out, "Results directory (cache)");
    sub->add_flag("--unsafe-budgets", exact_unsafe, "Lift desk-scale budget caps");
    add_format_flag(sub, exact_format);
  }

  uint32_t lll_n = 0, lll_g = 3;
  int lll_k = -1;
  std::string lll_format = "human";
  auto* lll = app.add_subcommand("lll-report", "Local-lemma arithmetic per middle layer");
  lll->add_option("--n", lll_n, "Cube dimension")->required();
  lll->add_option("--g", lll_g, "Gap parameter (>= 3)");
  lll->add_option("--k", lll_k, "Single layer (default: all k in [g, n-g])");
  add_format_flag(lll, lll_format);

  std::string obstruct_file, obstruct_format = "human";
  uint32_t obstruct_n = 0, obstruct_dim = 0;
  bool obstruct_unsafe = false;
  auto* obstruct = app.add_subcommand("obstruct", "Search a vertex set for three fully "
                                                  "contained subcube layers");
  obstruct->add_option("file", obstruct_file, "Set file, one vertex per line")->required();
  obstruct->add_option("--n", obstruct_n, "Cube dimension (default: inferred)");
  obstruct->add_option("--max-dim", obstruct_dim, "Largest subcube dimension to scan");
  obstruct->add_flag("--unsafe-budgets", obstruct_unsafe, "Lift desk-scale budget caps");
  add_format_flag(obstruct, obstruct_format);

  uint32_t layers_n = 0;
  int layers_k = -1;
  std::string layers_format = "human";
  bool layers_unsafe = false;
  auto* layers = app.add_subcommand("layers", "Enumerate layers of Q_n");
  layers->add_option("--n", layers_n, "Cube dimension")->required();
  layers->add_option("--k", layers_k, "List one layer's members");
  layers->add_flag("--unsafe-budgets", layers_unsafe, "Lift desk-scale budget caps");
  add_format_flag(layers, layers_format);

  std::string check_file, check_format = "human";
  uint32_t check_n = 0, check_jobs = 1;
  bool check_unsafe = false;
  auto* check = app.add_subcommand("check-set", "Mutual-visibility verdict for a set file");
  check->add_option("file", check_file, "Set file, one vertex per line")->required();
  check->add_option("--n", check_n, "Cube dimension (default: inferred)");
  check->add_option("--jobs", check_jobs, "Worker count")->check(CLI::PositiveNumber);
  check->add_flag("--unsafe-budgets", check_unsafe, "Lift desk-scale budget caps");
  add_format_flag(check, check_format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  if (color->parsed()) return run_color(color_args);
  if (verify->parsed()) return run_verify(verify_file, verify_jobs, verify_format, verify_unsafe);
  if (exact->parsed())
    return run_exact(exact_mu->parsed() ? "mu" : "chi", exact_n, exact_out, exact_format,
                     exact_unsafe);
  if (lll->parsed()) return run_lll_report(lll_n, lll_g, lll_k, lll_format);
  if (obstruct->parsed())
    return run_obstruct(obstruct_file, obstruct_n, obstruct_dim, obstruct_format,
                        obstruct_unsafe);
  if (layers->parsed()) return run_layers(layers_n, layers_k, layers_format, layers_unsafe);
  if (check->parsed())
    return run_check_set(check_file, check_n, check_jobs, check_format, check_unsafe);
  return kExitUsage;
}
