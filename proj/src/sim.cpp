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

#include "nfst/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>
#include <utility>

#include "nfst/error.hpp"

namespace nfst {

Fifo::Fifo(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw Error(ErrorCode::kUsage, "FIFO capacity must be positive");
}

void Fifo::push(ActivationVector vector) {
  if (contents_.size() >= capacity_) {
    throw Error(ErrorCode::kFifoOverflow,
                "FIFO full (" + std::to_string(capacity_) + " vectors)");
  }
  contents_.push_back(std::move(vector));
}

ActivationVector Fifo::pop() {
  if (contents_.empty()) throw Error(ErrorCode::kInternal, "pop from empty FIFO");
  ActivationVector v = std::move(contents_.front());
  contents_.pop_front();
  return v;
}

Engine::Engine(const OverlayImage& image)
    : image_(&image),
      activation_capacity_(image.pe_count() * image.pe_count()),
      start_(image.pe_count()),
      report_(image.pe_count()),
      fanout_(image.pe_count()) {
  check_image(image);
  const GridSpec& grid = image.grid;
  for (PeId pe = 0; pe < image.pe_count(); ++pe) {
    const PeConfig& cfg = image.pes[pe];
    if (!cfg.occupied) continue;
    if (cfg.is_start) start_.set(pe);
    if (cfg.is_report) report_.set(pe);
    for (Direction d : directions(grid.neighborhood)) {
      if (cfg.listens(d)) fanout_[*neighbor(grid, pe, d)].push_back(pe);
    }
  }
  for (auto& f : fanout_) std::sort(f.begin(), f.end());
}

bool Engine::linked(PeId from, PeId to) const {
  const auto& f = fanout_[from];
  return std::binary_search(f.begin(), f.end(), to);
}

std::uint64_t cycle_model(std::size_t n, std::size_t m, bool matched) {
  const std::uint64_t flush_in = n;
  const std::uint64_t transitions = 2 * std::uint64_t{n};
  if (!matched) return flush_in + transitions + 1;
  const std::uint64_t flush_vector = 1;
  const std::uint64_t transduction = m;
  const std::uint64_t flush_output = n;
  return flush_in + transitions + flush_vector + transduction + flush_output;
}

EngineState reset(const Engine& engine) {
  EngineState s;
  s.engine = &engine;
  s.enabled = engine.start_pes();
  s.active.resize(engine.pe_count());
  return s;
}

void step(EngineState& state, Symbol symbol) {
  const Engine& engine = *state.engine;
  const OverlayImage& image = engine.image();
  boost::dynamic_bitset<> active(engine.pe_count());
  for (auto pe = state.enabled.find_first(); pe != boost::dynamic_bitset<>::npos;
       pe = state.enabled.find_next(pe)) {
    if (!image.pes[pe].match.contains(symbol)) continue;
    if (state.activation_vector.size() >= engine.activation_capacity()) {
      throw Error(ErrorCode::kActivationOverflow,
                  "activation vector exceeds " +
                      std::to_string(engine.activation_capacity()) + " entries at position " +
                      std::to_string(state.position));
    }
    active.set(pe);
    state.activation_vector.push_back({state.position, static_cast<PeId>(pe)});
  }
  boost::dynamic_bitset<> enabled(engine.pe_count());
  for (auto pe = active.find_first(); pe != boost::dynamic_bitset<>::npos;
       pe = active.find_next(pe)) {
    for (PeId next : engine.fanout(static_cast<PeId>(pe))) enabled.set(next);
  }
  state.active = std::move(active);
  state.enabled = std::move(enabled);
  ++state.position;
  state.cycles += 2;
}

namespace {

void walk_back(const Engine& engine, const std::vector<std::vector<PeId>>& logged,
               std::size_t pos, PePath& suffix, std::vector<PePath>& out) {
  const PeId here = suffix.back();
  if (pos == 0) {
    if (engine.start_pes().test(here)) out.emplace_back(suffix.rbegin(), suffix.rend());
    return;
  }
  for (PeId prev : logged[pos - 1]) {
    if (!engine.linked(prev, here)) continue;
    suffix.push_back(prev);
    walk_back(engine, logged, pos - 1, suffix, out);
    suffix.pop_back();
  }
}

void write_pe_list(std::ostream& os, const boost::dynamic_bitset<>& bits) {
  os << '[';
  bool first = true;
  for (auto pe = bits.find_first(); pe != boost::dynamic_bitset<>::npos;
       pe = bits.find_next(pe)) {
    if (!first) os << ',';
    os << pe;
    first = false;
  }
  os << ']';
}

}  // namespace

std::vector<PePath> reconstruct_paths(const ActivationVector& vector,
                                      const OverlayImage& image,
                                      std::size_t window_len) {
  const Engine engine(image);
  std::vector<PePath> paths;
  if (window_len > 0) {
    std::vector<std::vector<PeId>> logged(window_len);
    for (const auto& a : vector) {
      if (a.position < window_len) logged[a.position].push_back(a.pe);
    }
    for (auto& l : logged) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    for (PeId end : logged[window_len - 1]) {
      if (!engine.report_pes().test(end)) continue;
      PePath suffix{end};
      walk_back(engine, logged, window_len - 1, suffix, paths);
    }
  }
  if (paths.empty()) {
    throw Error(ErrorCode::kNoAcceptingPath,
                "activation vector has no accepting path of length " +
                    std::to_string(window_len));
  }
  std::vector<std::pair<Bytes, PePath>> keyed;
  keyed.reserve(paths.size());
  for (auto& p : paths) keyed.emplace_back(transduce(p, image.tram), std::move(p));
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
  paths.clear();
  for (auto& [_, p] : keyed) paths.push_back(std::move(p));
  return paths;
}

Bytes transduce(std::span<const PeId> path, const TransductionRam& tram) {
  Bytes out;
  out.reserve(path.size());
  for (PeId pe : path) {
    if (pe >= tram.entries.size() || !tram.entries[pe]) {
      throw Error(ErrorCode::kUnusedTramEntry,
                  "PE " + std::to_string(pe) + " has no transduction RAM entry");
    }
    out.push_back(*tram.entries[pe]);
  }
  return out;
}

SubSequenceResult run_subsequence(EngineState& state, std::span<const Symbol> window,
                                  Fifo& fifo, Policy policy, std::ostream* trace,
                                  std::uint64_t cycle_base) {
  const Engine& engine = *state.engine;
  const std::size_t n = window.size();
  const std::size_t m = engine.pe_count();
  SubSequenceResult result;

  state.cycles += n;  // flush the sub-sequence into the array
  for (Symbol sym : window) {
    const std::size_t pos = state.position;
    step(state, sym);
    if (trace) {
      char head[64];
      std::snprintf(head, sizeof head, "cyc=%llu pos=%zu sym=0x%02x active=",
                    static_cast<unsigned long long>(cycle_base + state.cycles), pos,
                    static_cast<unsigned>(sym));
      *trace << head;
      write_pe_list(*trace, state.active);
      *trace << " enabled=";
      write_pe_list(*trace, state.enabled);
      *trace << '\n';
    }
  }

  const bool matched = n > 0 && (state.active & engine.report_pes()).any();
  if (matched) {
    fifo.push(std::move(state.activation_vector));
    state.cycles += 1;  // vector to FIFO
    const ActivationVector vector = fifo.pop();
    auto paths = reconstruct_paths(vector, engine.image(), n);
    state.cycles += m;  // transduction RAM pass
    for (const auto& p : paths) {
      Bytes out = transduce(p, engine.image().tram);
      if (result.outputs.empty() || result.outputs.back() != out) {
        result.outputs.push_back(std::move(out));
      }
    }
    if (policy == Policy::kFirst) {
      result.outputs.resize(1);
      std::erase_if(paths, [&](const PePath& p) {
        return transduce(p, engine.image().tram) != result.outputs.front();
      });
    }
    result.paths = std::move(paths);
    state.cycles += n;  // flush output
    result.outcome = Outcome::kMatched;
  } else {
    state.cycles += 1;  // discard the vector
  }
  result.cycles = state.cycles;
  state = reset(engine);
  return result;
}

StreamResult run_stream(const OverlayImage& image, std::span<const Symbol> input,
                        std::size_t n, const StreamOptions& options) {
  const auto windows = split_windows(input, n);
  const Engine engine(image);
  StreamResult out;
  out.windows.resize(windows.size());

  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                          : options.threads;
  if (options.trace) threads = 1;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, windows.size())));

  auto wrap = [](std::size_t index, const Error& e) {
    return Error(e.code(), "window " + std::to_string(index) + ": " + e.what());
  };

  if (threads == 1) {
    EngineState state = reset(engine);
    Fifo fifo(options.fifo_capacity);
    for (std::size_t i = 0; i < windows.size(); ++i) {
      try {
        out.windows[i] = run_subsequence(state, windows[i], fifo, options.policy,
                                         options.trace, out.total_cycles);
      } catch (const Error& e) {
        throw wrap(i, e);
      }
      out.windows[i].window_index = i;
      out.total_cycles += out.windows[i].cycles;
    }
    return out;
  }

  // One EngineState and FIFO per worker; results land by window index.
  std::vector<std::exception_ptr> errors(windows.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    EngineState state = reset(engine);
    Fifo fifo(options.fifo_capacity);
    for (std::size_t i = next++; i < windows.size(); i = next++) {
      try {
        out.windows[i] = run_subsequence(state, windows[i], fifo, options.policy);
        out.windows[i].window_index = i;
      } catch (const Error& e) {
        errors[i] = std::make_exception_ptr(wrap(i, e));
        state = reset(engine);
      } catch (...) {
        errors[i] = std::current_exception();
        state = reset(engine);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& w : out.windows) out.total_cycles += w.cycles;
  return out;
}

}  // namespace nfst
