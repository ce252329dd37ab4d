// Copyright 2026 The nfst-overlay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// nfst: compile rulesets onto the PE overlay, run streams, check the overlay
// against the reference interpreter and emit resource sweeps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nfst/nfst.h"

namespace {

constexpr const char* kExitCodes = R"(Exit codes:
  0  success                      10 checksum mismatch
  1  usage error                  11 truncated image
  2  file I/O error               12 malformed image
  3  ruleset parse error          13 activation vector overflow
  4  invalid machine              14 FIFO overflow
  5  not length-preserving        15 no accepting path (internal)
  6  epsilon input present        16 unused tram entry
  7  capacity exceeded            17 epsilon input with byte output
  8  adjacency unsatisfiable      18 verification failed
  9  image version mismatch       19 internal error)";

struct Globals {
  std::uint64_t seed = 1;
  std::string format = "text";
  bool quiet = false;
};

struct FstDeleter {
  void operator()(nfst_fst* p) const { nfst_fst_free(p); }
};
struct ImageDeleter {
  void operator()(nfst_image* p) const { nfst_image_free(p); }
};
struct RunDeleter {
  void operator()(nfst_run_report* p) const { nfst_run_report_free(p); }
};
struct VerifyDeleter {
  void operator()(nfst_verify_report* p) const { nfst_verify_report_free(p); }
};
struct DiagDeleter {
  void operator()(nfst_diagnostics* p) const { nfst_diagnostics_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { nfst_string_free(p); }
};

using FstPtr = std::unique_ptr<nfst_fst, FstDeleter>;
using ImagePtr = std::unique_ptr<nfst_image, ImageDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int fail(nfst_status status) {
  std::cerr << "nfst: " << nfst_status_name(status) << ": " << nfst_last_error() << "\n";
  return static_cast<int>(status);
}

int usage(const std::string& message) {
  std::cerr << "nfst: " << message << "\n";
  return NFST_E_USAGE;
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  os << text;
  return static_cast<bool>(os);
}

std::string hex_escape(const std::uint8_t* data, std::size_t len) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint8_t b = data[i];
    if (b >= 0x21 && b <= 0x7e && b != '\\') {
      out += static_cast<char>(b);
    } else {
      out += "\\x";
      out += kHex[b >> 4];
      out += kHex[b & 0xf];
    }
  }
  return out;
}

// Loads and validates a ruleset; warnings go to stderr unless quiet.
nfst_status load_machine(const std::string& path, bool quiet, FstPtr& out) {
  nfst_fst* raw = nullptr;
  if (auto st = nfst_fst_load(path.c_str(), &raw); st != NFST_OK) return st;
  out.reset(raw);
  nfst_diagnostics* diag_raw = nullptr;
  if (auto st = nfst_fst_validate(out.get(), &diag_raw); st != NFST_OK) return st;
  std::unique_ptr<nfst_diagnostics, DiagDeleter> diag(diag_raw);
  for (std::size_t i = 0; i < nfst_diagnostics_count(diag.get()); ++i) {
    const bool error = nfst_diagnostics_severity(diag.get(), i) == 1;
    if (error || !quiet) {
      std::cerr << path << ": " << (error ? "error: " : "warning: ")
                << nfst_diagnostics_message(diag.get(), i) << "\n";
    }
  }
  if (nfst_diagnostics_has_errors(diag.get())) return NFST_E_INVALID_FST;
  return NFST_OK;
}

struct CompileArgs {
  std::string ruleset;
  std::string out;
  std::string json_dump;
  std::uint16_t rows = 4;
  std::uint16_t cols = 4;
  std::string neighborhood = "moore8";
  bool eliminate_epsilon = false;
};

nfst_neighborhood to_neighborhood(const std::string& name) {
  return name == "vonneumann4" ? NFST_VONNEUMANN4 : NFST_MOORE8;
}

int cmd_compile(const Globals& g, const CompileArgs& a) {
  FstPtr fst;
  if (auto st = load_machine(a.ruleset, g.quiet, fst); st != NFST_OK) return fail(st);
  if (a.eliminate_epsilon) {
    nfst_fst* raw = nullptr;
    if (auto st = nfst_fst_eliminate_epsilon(fst.get(), &raw); st != NFST_OK) return fail(st);
    fst.reset(raw);
  }
  nfst_image* raw = nullptr;
  if (auto st = nfst_compile(fst.get(), a.rows, a.cols, to_neighborhood(a.neighborhood), &raw);
      st != NFST_OK) {
    return fail(st);
  }
  ImagePtr image(raw);
  if (auto st = nfst_image_save_file(image.get(), a.out.c_str()); st != NFST_OK) return fail(st);
  if (!a.json_dump.empty()) {
    char* json = nullptr;
    if (auto st = nfst_image_to_json(image.get(), &json); st != NFST_OK) return fail(st);
    StringPtr owned(json);
    if (!write_text(a.json_dump, json)) {
      std::cerr << "nfst: cannot write " << a.json_dump << "\n";
      return NFST_E_IO;
    }
  }
  const std::size_t occupied = nfst_image_occupied(image.get());
  const std::size_t replications = nfst_image_replications(image.get());
  if (g.format == "json") {
    nlohmann::ordered_json j;
    j["pe_count"] = nfst_image_pe_count(image.get());
    j["occupied"] = occupied;
    j["replications"] = replications;
    j["image"] = a.out;
    std::cout << j.dump() << "\n";
  } else if (!g.quiet) {
    std::cout << occupied << " PEs occupied, " << replications << " replications\n";
  }
  return 0;
}

struct RunArgs {
  std::string image;
  std::string input;
  std::size_t n = 0;
  std::string policy = "all";
  unsigned threads = 1;
  std::string trace;
};

int cmd_run(const Globals& g, const RunArgs& a) {
  nfst_image* raw = nullptr;
  if (auto st = nfst_image_load_file(a.image.c_str(), &raw); st != NFST_OK) return fail(st);
  ImagePtr image(raw);

  std::ifstream in(a.input, std::ios::binary);
  if (!in) {
    std::cerr << "nfst: Io: cannot open " << a.input << "\n";
    return NFST_E_IO;
  }
  const std::vector<std::uint8_t> input((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  const auto policy = a.policy == "first" ? NFST_POLICY_FIRST : NFST_POLICY_ALL;

  if (!a.trace.empty()) {
    char* text = nullptr;
    if (auto st = nfst_trace(image.get(), input.data(), input.size(), a.n, &text); st != NFST_OK) {
      return fail(st);
    }
    StringPtr owned(text);
    if (!write_text(a.trace, text)) {
      std::cerr << "nfst: Io: cannot write " << a.trace << "\n";
      return NFST_E_IO;
    }
  }

  nfst_run_report* rr = nullptr;
  if (auto st = nfst_run(image.get(), input.data(), input.size(), a.n, policy, a.threads, &rr);
      st != NFST_OK) {
    return fail(st);
  }
  std::unique_ptr<nfst_run_report, RunDeleter> report(rr);
  const std::size_t windows = nfst_run_report_window_count(report.get());

  auto outputs_of = [&](std::size_t w) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < nfst_run_report_output_count(report.get(), w); ++k) {
      std::size_t len = 0;
      const std::uint8_t* data = nfst_run_report_output(report.get(), w, k, &len);
      out.push_back(hex_escape(data, len));
    }
    return out;
  };

  if (g.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = a.n;
    j["m"] = nfst_run_report_pe_count(report.get());
    j["policy"] = a.policy;
    j["total_cycles"] = nfst_run_report_total_cycles(report.get());
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t w = 0; w < windows; ++w) {
      nlohmann::ordered_json row;
      row["index"] = w;
      row["outcome"] = nfst_run_report_matched(report.get(), w) == 1 ? "matched" : "discarded";
      row["outputs"] = outputs_of(w);
      row["cycles"] = nfst_run_report_cycles(report.get(), w);
      arr.push_back(std::move(row));
    }
    j["windows"] = std::move(arr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (!g.quiet) std::cout << "window  outcome    cycles  outputs\n";
  for (std::size_t w = 0; w < windows; ++w) {
    const bool matched = nfst_run_report_matched(report.get(), w) == 1;
    char head[64];
    std::snprintf(head, sizeof head, "%-7zu %-10s %-7llu", w, matched ? "matched" : "discarded",
                  static_cast<unsigned long long>(nfst_run_report_cycles(report.get(), w)));
    std::string line = head;
    for (const auto& o : outputs_of(w)) line += " \"" + o + "\"";
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  }
  std::cout << "total_cycles " << nfst_run_report_total_cycles(report.get()) << " (n="
            << a.n << ", m=" << nfst_run_report_pe_count(report.get()) << ")\n";
  return 0;
}

struct VerifyArgs {
  std::string ruleset;
  std::string image;
  bool random = false;
  std::size_t cases = 100;
  std::uint16_t rows = 16;
  std::uint16_t cols = 16;
  std::string neighborhood = "moore8";
  unsigned threads = 1;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  if (a.random == !a.ruleset.empty()) {
    return usage("verify needs exactly one of a ruleset path or --random");
  }
  if (!a.image.empty() && a.random) return usage("--image needs a ruleset");
  FstPtr fst;
  if (!a.random) {
    if (auto st = load_machine(a.ruleset, g.quiet, fst); st != NFST_OK) return fail(st);
  }
  ImagePtr image;
  if (!a.image.empty()) {
    nfst_image* raw = nullptr;
    if (auto st = nfst_image_load_file(a.image.c_str(), &raw); st != NFST_OK) return fail(st);
    image.reset(raw);
  }
  if (a.cases == 0) std::cerr << "nfst: warning: --cases 0, nothing to verify\n";

  nfst_verify_options options{};
  options.seed = g.seed;
  options.cases = a.cases;
  options.rows = a.rows;
  options.cols = a.cols;
  options.neighborhood = to_neighborhood(a.neighborhood);
  options.threads = a.threads;
  nfst_verify_report* raw = nullptr;
  if (auto st = nfst_verify(fst.get(), image.get(), &options, &raw); st != NFST_OK) {
    return fail(st);
  }
  std::unique_ptr<nfst_verify_report, VerifyDeleter> report(raw);
  const bool ok = nfst_verify_report_failed(report.get()) == 0;
  if (g.format == "json") {
    nlohmann::ordered_json j;
    j["seed"] = g.seed;
    j["cases"] = nfst_verify_report_cases(report.get());
    j["passed"] = nfst_verify_report_passed(report.get());
    j["failed"] = nfst_verify_report_failed(report.get());
    j["skipped"] = nfst_verify_report_skipped(report.get());
    j["report"] = nfst_verify_report_text(report.get());
    std::cout << j.dump(2) << "\n";
  } else if (!g.quiet || !ok) {
    std::cout << nfst_verify_report_text(report.get());
  }
  return ok ? 0 : NFST_E_VERIFY_FAILED;
}

struct SweepArgs {
  std::string sizes;
  std::uint64_t fifo = 4;
  std::string out;
};

int cmd_sweep(const Globals&, const SweepArgs& a) {
  std::vector<std::uint16_t> rows;
  std::vector<std::uint16_t> cols;
  std::stringstream list(a.sizes);
  for (std::string item; std::getline(list, item, ',');) {
    unsigned r = 0;
    unsigned c = 0;
    char x = 0;
    char extra = 0;
    if (std::sscanf(item.c_str(), " %u%c%u %c", &r, &x, &c, &extra) != 3 || (x != 'x' && x != 'X') ||
        r == 0 || c == 0 || r > 0xffff || c > 0xffff) {
      return usage("bad grid size '" + item + "', expected RxC");
    }
    rows.push_back(static_cast<std::uint16_t>(r));
    cols.push_back(static_cast<std::uint16_t>(c));
  }
  if (rows.empty()) return usage("--sizes needs at least one RxC entry");
  char* csv = nullptr;
  if (auto st = nfst_sweep_csv(rows.data(), cols.data(), rows.size(), a.fifo, &csv); st != NFST_OK) {
    return fail(st);
  }
  StringPtr owned(csv);
  if (a.out.empty()) {
    std::cout << csv;
  } else if (!write_text(a.out, csv)) {
    std::cerr << "nfst: Io: cannot write " << a.out << "\n";
    return NFST_E_IO;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile finite state transducers onto a simulated PE-array overlay and run them."};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--seed", globals.seed, "RNG seed for verify");
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--quiet,-q", globals.quiet, "Suppress summaries and warnings");

  CompileArgs compile_args;
  auto* compile = app.add_subcommand("compile", "Compile a ruleset into an overlay image");
  compile->add_option("ruleset", compile_args.ruleset, "Ruleset file")->required();
  compile->add_option("-o,--out", compile_args.out, "Output image path")->required();
  compile->add_option("--rows", compile_args.rows, "Grid rows")->check(CLI::Range(1, 65535));
  compile->add_option("--cols", compile_args.cols, "Grid columns")->check(CLI::Range(1, 65535));
  compile->add_option("--neighborhood", compile_args.neighborhood, "PE interconnect")
      ->check(CLI::IsMember({"moore8", "vonneumann4"}));
  compile->add_flag("--eliminate-epsilon", compile_args.eliminate_epsilon,
                    "Remove epsilon-input transitions before compiling");
  compile->add_option("--json-dump", compile_args.json_dump, "Also write a JSON dump of the image");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Stream an input file through an overlay image");
  run->add_option("image", run_args.image, "Overlay image")->required();
  run->add_option("input", run_args.input, "Raw input bytes")->required();
  run->add_option("-n,--window", run_args.n, "Sub-sequence length")
      ->required()
      ->check(CLI::PositiveNumber);
  run->add_option("--policy", run_args.policy, "Outputs kept per matched window")
      ->check(CLI::IsMember({"all", "first"}));
  run->add_option("--threads", run_args.threads, "Worker threads (0 = all cores)");
  run->add_option("--trace", run_args.trace, "Write a per-step trace to this file");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check overlay output against the reference interpreter");
  verify->add_option("ruleset", verify_args.ruleset, "Ruleset file");
  verify->add_flag("--random", verify_args.random, "Draw a random machine per case");
  verify->add_option("--image", verify_args.image, "Check this image instead of compiling the ruleset");
  verify->add_option("--cases", verify_args.cases, "Number of random cases");
  verify->add_option("--rows", verify_args.rows, "Grid rows")->check(CLI::Range(1, 65535));
  verify->add_option("--cols", verify_args.cols, "Grid columns")->check(CLI::Range(1, 65535));
  verify->add_option("--neighborhood", verify_args.neighborhood, "PE interconnect")
      ->check(CLI::IsMember({"moore8", "vonneumann4"}));
  verify->add_option("--threads", verify_args.threads, "Worker threads (0 = all cores)");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Emit resource bit counts for a list of grid sizes");
  sweep->add_option("--sizes", sweep_args.sizes, "Comma-separated RxC list")->required();
  sweep->add_option("--fifo", sweep_args.fifo, "FIFO depth in activation vectors");
  sweep->add_option("-o,--out", sweep_args.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return NFST_E_USAGE;
  }

  if (*compile) return cmd_compile(globals, compile_args);
  if (*run) return cmd_run(globals, run_args);
  if (*verify) return cmd_verify(globals, verify_args);
  if (*sweep) return cmd_sweep(globals, sweep_args);
  return NFST_E_USAGE;
}
