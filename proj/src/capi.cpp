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

#include "nfst/nfst.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "nfst/epsilon.hpp"
#include "nfst/error.hpp"
#include "nfst/image_io.hpp"
#include "nfst/overlay.hpp"
#include "nfst/resource.hpp"
#include "nfst/ruleset.hpp"
#include "nfst/sim.hpp"
#include "nfst/validate.hpp"
#include "nfst/verify.hpp"

struct nfst_fst {
  nfst::Fst fst;
};

struct nfst_diagnostics {
  std::vector<nfst::Diagnostic> items;
};

struct nfst_image {
  nfst::CompiledOverlay compiled;
};

struct nfst_run_report {
  nfst::StreamResult result;
  std::size_t pe_count = 0;
  std::size_t n = 0;
};

struct nfst_verify_report {
  nfst::VerifyReport report;
  std::string text;
};

namespace {

thread_local std::string last_error;

template <typename F>
nfst_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return NFST_OK;
  } catch (const nfst::Error& e) {
    last_error = e.what();
    return static_cast<nfst_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return NFST_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NFST_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw nfst::Error(nfst::ErrorCode::kUsage, std::string(what) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nfst::Error(nfst::ErrorCode::kIo, std::string("cannot open ") + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw nfst::Error(nfst::ErrorCode::kIo, std::string("cannot read ") + path);
  return data;
}

const nfst::SubSequenceResult& window_at(const nfst_run_report* r, std::size_t i) {
  return r->result.windows.at(i);
}

}  // namespace

extern "C" {

const char* nfst_last_error(void) { return last_error.c_str(); }

const char* nfst_status_name(nfst_status status) {
  return nfst::error_code_name(static_cast<nfst::ErrorCode>(status));
}

void nfst_string_free(char* s) { std::free(s); }
void nfst_buffer_free(uint8_t* buf) { std::free(buf); }

nfst_status nfst_fst_parse(const char* text, size_t len, nfst_fst** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new nfst_fst{nfst::parse_ruleset(std::string_view(text, len))};
  });
}

nfst_status nfst_fst_load(const char* path, nfst_fst** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    const std::string text = read_file(path);
    try {
      *out = new nfst_fst{nfst::parse_ruleset(text)};
    } catch (const nfst::ParseError& e) {
      throw nfst::Error(e.code(), std::string(path) + ":" + e.what());
    }
  });
}

void nfst_fst_free(nfst_fst* fst) { delete fst; }

size_t nfst_fst_state_count(const nfst_fst* fst) { return fst ? fst->fst.state_count : 0; }

size_t nfst_fst_transition_count(const nfst_fst* fst) {
  return fst ? fst->fst.transitions.size() : 0;
}

int nfst_fst_is_length_preserving(const nfst_fst* fst) {
  return fst && nfst::is_length_preserving(fst->fst) ? 1 : 0;
}

nfst_status nfst_fst_eliminate_epsilon(const nfst_fst* fst, nfst_fst** out) {
  return guard([&] {
    require(fst, "fst");
    require(out, "out");
    *out = new nfst_fst{nfst::eliminate_epsilon(fst->fst)};
  });
}

nfst_status nfst_fst_to_text(const nfst_fst* fst, char** out) {
  return guard([&] {
    require(fst, "fst");
    require(out, "out");
    *out = dup_string(nfst::format_ruleset(fst->fst));
  });
}

nfst_status nfst_fst_validate(const nfst_fst* fst, nfst_diagnostics** out) {
  return guard([&] {
    require(fst, "fst");
    require(out, "out");
    *out = new nfst_diagnostics{nfst::validate(fst->fst)};
  });
}

void nfst_diagnostics_free(nfst_diagnostics* d) { delete d; }

size_t nfst_diagnostics_count(const nfst_diagnostics* d) { return d ? d->items.size() : 0; }

int nfst_diagnostics_severity(const nfst_diagnostics* d, size_t i) {
  if (!d || i >= d->items.size()) return -1;
  return d->items[i].severity == nfst::Severity::kError ? 1 : 0;
}

const char* nfst_diagnostics_message(const nfst_diagnostics* d, size_t i) {
  if (!d || i >= d->items.size()) return nullptr;
  return d->items[i].message.c_str();
}

int nfst_diagnostics_has_errors(const nfst_diagnostics* d) {
  return d && nfst::has_errors(d->items) ? 1 : 0;
}

nfst_status nfst_compile(const nfst_fst* fst, uint16_t rows, uint16_t cols,
                         nfst_neighborhood neighborhood, nfst_image** out) {
  return guard([&] {
    require(fst, "fst");
    require(out, "out");
    const nfst::GridSpec grid{rows, cols, static_cast<nfst::Neighborhood>(neighborhood)};
    *out = new nfst_image{nfst::compile(fst->fst, grid)};
  });
}

void nfst_image_free(nfst_image* image) { delete image; }

size_t nfst_image_pe_count(const nfst_image* image) {
  return image ? image->compiled.image.pe_count() : 0;
}

size_t nfst_image_occupied(const nfst_image* image) {
  return image ? image->compiled.image.occupied_count() : 0;
}

size_t nfst_image_replications(const nfst_image* image) {
  return image ? image->compiled.replications() : 0;
}

nfst_status nfst_image_save(const nfst_image* image, uint8_t** buf, size_t* len) {
  return guard([&] {
    require(image, "image");
    require(buf, "buf");
    require(len, "len");
    const auto bytes = nfst::save_image(image->compiled.image);
    auto* out = static_cast<uint8_t*>(std::malloc(bytes.size()));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, bytes.data(), bytes.size());
    *buf = out;
    *len = bytes.size();
  });
}

nfst_status nfst_image_load(const uint8_t* buf, size_t len, nfst_image** out) {
  return guard([&] {
    require(buf, "buf");
    require(out, "out");
    nfst::CompiledOverlay compiled;
    compiled.image = nfst::load_image(std::span(buf, len));
    *out = new nfst_image{std::move(compiled)};
  });
}

nfst_status nfst_image_save_file(const nfst_image* image, const char* path) {
  return guard([&] {
    require(image, "image");
    require(path, "path");
    const auto bytes = nfst::save_image(image->compiled.image);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw nfst::Error(nfst::ErrorCode::kIo, std::string("cannot open ") + path);
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw nfst::Error(nfst::ErrorCode::kIo, std::string("cannot write ") + path);
  });
}

nfst_status nfst_image_load_file(const char* path, nfst_image** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    const std::string data = read_file(path);
    nfst::CompiledOverlay compiled;
    compiled.image = nfst::load_image(
        std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
    *out = new nfst_image{std::move(compiled)};
  });
}

nfst_status nfst_image_to_json(const nfst_image* image, char** out) {
  return guard([&] {
    require(image, "image");
    require(out, "out");
    const auto& c = image->compiled;
    *out = dup_string(c.edge_map.empty() ? nfst::image_to_json(c.image) : nfst::image_to_json(c));
  });
}

nfst_status nfst_run(const nfst_image* image, const uint8_t* input, size_t len, size_t n,
                     nfst_policy policy, unsigned threads, nfst_run_report** out) {
  return guard([&] {
    require(image, "image");
    require(out, "out");
    if (len > 0) require(input, "input");
    nfst::StreamOptions options;
    options.policy = policy == NFST_POLICY_FIRST ? nfst::Policy::kFirst : nfst::Policy::kAll;
    options.threads = threads;
    auto report = std::make_unique<nfst_run_report>();
    report->result = nfst::run_stream(image->compiled.image, std::span(input, len), n, options);
    report->pe_count = image->compiled.image.pe_count();
    report->n = n;
    *out = report.release();
  });
}

nfst_status nfst_trace(const nfst_image* image, const uint8_t* input, size_t len, size_t n,
                       char** out) {
  return guard([&] {
    require(image, "image");
    require(out, "out");
    if (len > 0) require(input, "input");
    std::ostringstream os;
    nfst::StreamOptions options;
    options.trace = &os;
    nfst::run_stream(image->compiled.image, std::span(input, len), n, options);
    *out = dup_string(os.str());
  });
}

void nfst_run_report_free(nfst_run_report* r) { delete r; }

size_t nfst_run_report_window_count(const nfst_run_report* r) {
  return r ? r->result.windows.size() : 0;
}

uint64_t nfst_run_report_total_cycles(const nfst_run_report* r) {
  return r ? r->result.total_cycles : 0;
}

size_t nfst_run_report_pe_count(const nfst_run_report* r) { return r ? r->pe_count : 0; }

size_t nfst_run_report_window_length(const nfst_run_report* r) { return r ? r->n : 0; }

int nfst_run_report_matched(const nfst_run_report* r, size_t window) {
  if (!r || window >= r->result.windows.size()) return -1;
  return window_at(r, window).matched() ? 1 : 0;
}

uint64_t nfst_run_report_cycles(const nfst_run_report* r, size_t window) {
  if (!r || window >= r->result.windows.size()) return 0;
  return window_at(r, window).cycles;
}

size_t nfst_run_report_output_count(const nfst_run_report* r, size_t window) {
  if (!r || window >= r->result.windows.size()) return 0;
  return window_at(r, window).outputs.size();
}

const uint8_t* nfst_run_report_output(const nfst_run_report* r, size_t window, size_t k,
                                      size_t* len) {
  if (!r || window >= r->result.windows.size()) return nullptr;
  const auto& outputs = window_at(r, window).outputs;
  if (k >= outputs.size()) return nullptr;
  if (len) *len = outputs[k].size();
  return outputs[k].data();
}

nfst_status nfst_verify(const nfst_fst* fst, const nfst_image* image,
                        const nfst_verify_options* options, nfst_verify_report** out) {
  return guard([&] {
    require(options, "options");
    require(out, "out");
    nfst::VerifyOptions opts;
    opts.seed = options->seed;
    opts.cases = options->cases;
    opts.grid = {options->rows, options->cols,
                 static_cast<nfst::Neighborhood>(options->neighborhood)};
    nfst::check_grid(opts.grid);
    opts.threads = options->threads;
    auto report = std::make_unique<nfst_verify_report>();
    report->report = nfst::verify(fst ? &fst->fst : nullptr,
                                  image ? &image->compiled.image : nullptr, opts);
    report->text = nfst::format_report(report->report);
    *out = report.release();
  });
}

void nfst_verify_report_free(nfst_verify_report* r) { delete r; }

size_t nfst_verify_report_cases(const nfst_verify_report* r) { return r ? r->report.cases : 0; }

size_t nfst_verify_report_passed(const nfst_verify_report* r) {
  return r ? r->report.passed : 0;
}

size_t nfst_verify_report_failed(const nfst_verify_report* r) {
  return r ? r->report.failed : 0;
}

size_t nfst_verify_report_skipped(const nfst_verify_report* r) {
  return r ? r->report.skipped : 0;
}

const char* nfst_verify_report_text(const nfst_verify_report* r) {
  return r ? r->text.c_str() : "";
}

nfst_status nfst_estimate(const nfst_image* image, uint64_t fifo_capacity,
                          nfst_resource_report* out) {
  return guard([&] {
    require(image, "image");
    require(out, "out");
    const auto r = nfst::estimate(image->compiled.image, fifo_capacity);
    *out = {r.m, r.occupied, r.match_ram_bits, r.tram_bits, r.vector_bits, r.fifo_bits,
            r.total_bits};
  });
}

nfst_status nfst_sweep_csv(const uint16_t* rows, const uint16_t* cols, size_t count,
                           uint64_t fifo_capacity, char** out) {
  return guard([&] {
    require(out, "out");
    if (count > 0) {
      require(rows, "rows");
      require(cols, "cols");
    }
    std::vector<nfst::GridSpec> sizes;
    for (size_t i = 0; i < count; ++i) sizes.push_back({rows[i], cols[i], nfst::Neighborhood::kMoore8});
    const auto table = nfst::scaling_sweep(sizes, fifo_capacity);
    *out = dup_string(nfst::to_csv(table));
  });
}

}  // extern "C"
