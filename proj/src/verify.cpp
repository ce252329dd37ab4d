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

#include "nfst/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "nfst/error.hpp"
#include "nfst/oracle.hpp"
#include "nfst/ruleset.hpp"
#include "nfst/sim.hpp"

namespace nfst {

Fst random_fst(Rng& rng, const RandomFstOptions& options) {
  Fst fst;
  fst.state_count = rng.between(options.min_states, options.max_states);
  fst.start = 0;
  const std::size_t edges = rng.between(options.min_edges, options.max_edges);

  auto pick = [&](const std::vector<Symbol>& from) { return from[rng.below(from.size())]; };
  std::vector<StateId> reached{0};
  std::set<StateId> entered;
  for (std::size_t i = 0; i < edges; ++i) {
    Transition t;
    t.src = reached[rng.below(reached.size())];
    t.dst = static_cast<StateId>(rng.below(fst.state_count));
    if (options.epsilon_edges && rng.chance(0.2)) {
      t.input = std::nullopt;
      t.output = OutputLabel::epsilon();
    } else {
      SymbolClass cls = SymbolClass::single(pick(options.inputs));
      if (rng.chance(options.class_probability)) cls.add(pick(options.inputs));
      t.input = cls;
      if (!options.length_preserving && rng.chance(0.3)) {
        t.output = OutputLabel::epsilon();
      } else {
        t.output = OutputLabel::byte(pick(options.outputs));
      }
    }
    if (std::find(reached.begin(), reached.end(), t.dst) == reached.end()) {
      reached.push_back(t.dst);
    }
    entered.insert(t.dst);
    fst.transitions.push_back(t);
  }
  // Prefer states entered by some edge so windows of length >= 1 can match.
  std::vector<StateId> targets(entered.begin(), entered.end());
  if (targets.empty()) targets = reached;
  fst.accepting.insert(targets[rng.below(targets.size())]);
  if (rng.chance(0.3)) fst.accepting.insert(reached[rng.below(reached.size())]);
  return fst;
}

Bytes random_input(Rng& rng, const Fst& fst, std::size_t n, std::size_t max_len) {
  std::vector<Symbol> alphabet;
  for (const auto& t : fst.transitions) {
    if (!t.input) continue;
    for (Symbol s : t.input->members()) alphabet.push_back(s);
  }
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  // One byte no edge matches.
  for (unsigned s = 0; s < 256; ++s) {
    if (!std::binary_search(alphabet.begin(), alphabet.end(), static_cast<Symbol>(s))) {
      alphabet.push_back(static_cast<Symbol>(s));
      break;
    }
  }
  const std::size_t len = rng.below(max_len + 1);
  Bytes out;
  out.reserve(len);
  while (out.size() < len) {
    const std::size_t window = std::min(n, len - out.size());
    const bool walk = rng.chance(0.7);
    StateId state = fst.start;
    for (std::size_t i = 0; i < window; ++i) {
      std::vector<const Transition*> options;
      for (const auto& t : fst.transitions) {
        if (t.src == state && t.input) options.push_back(&t);
      }
      if (walk && !options.empty() && !rng.chance(0.05)) {
        const Transition* t = options[rng.below(options.size())];
        const auto members = t->input->members();
        out.push_back(members[rng.below(members.size())]);
        state = t->dst;
      } else {
        out.push_back(alphabet[rng.below(alphabet.size())]);
      }
    }
  }
  return out;
}

std::string hex_escape(const Bytes& bytes) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (Symbol b : bytes) {
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

namespace {

std::string outputs_text(bool matched, const std::vector<Bytes>& outputs) {
  if (!matched) return "discarded";
  std::string s = "{";
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (i) s += ",";
    s += "\"" + hex_escape(outputs[i]) + "\"";
  }
  return s + "}";
}

enum class CaseStatus { kPassed, kFailed, kSkipped };

struct CaseResult {
  CaseStatus status = CaseStatus::kPassed;
  std::optional<Counterexample> counterexample;
};

CaseResult run_case(const Fst* machine, const OverlayImage* image, const VerifyOptions& options,
                    std::size_t index) {
  Rng rng(options.seed, index);
  CaseResult result;
  Fst fst;
  CompiledOverlay compiled;
  const OverlayImage* target = image;
  if (machine) {
    fst = *machine;
    if (!target) {
      compiled = compile(fst, options.grid);
      target = &compiled.image;
    }
  } else {
    bool placed = false;
    for (int attempt = 0; attempt < 8 && !placed; ++attempt) {
      fst = random_fst(rng, options.machines);
      try {
        compiled = compile(fst, options.grid);
        placed = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kAdjacencyUnsatisfiable &&
            e.code() != ErrorCode::kCapacityExceeded) {
          throw;
        }
      }
    }
    if (!placed) {
      result.status = CaseStatus::kSkipped;
      return result;
    }
    target = &compiled.image;
  }

  const std::size_t n = rng.between(1, options.max_n);
  const Bytes input = random_input(rng, fst, n, options.max_input);
  const auto expected = oracle_stream(fst, input, n);

  std::ostringstream detail;
  try {
    const auto actual = run_stream(*target, input, n, {});
    for (std::size_t w = 0; w < expected.size(); ++w) {
      const auto& e = expected[w];
      const auto& a = actual.windows[w];
      if (e.matched() != a.matched() || e.outputs != a.outputs) {
        detail << "window " << w << ": oracle " << outputs_text(e.matched(), e.outputs)
               << " overlay " << outputs_text(a.matched(), a.outputs);
        break;
      }
    }
  } catch (const Error& e) {
    detail << "overlay error: " << e.what();
  }
  if (!detail.str().empty()) {
    result.status = CaseStatus::kFailed;
    result.counterexample = Counterexample{index, fst, input, n, detail.str()};
  }
  return result;
}

}  // namespace

VerifyReport verify(const Fst* machine, const OverlayImage* image, const VerifyOptions& options) {
  if (image && !machine) {
    throw Error(ErrorCode::kUsage, "verifying an image needs its source machine");
  }
  VerifyReport report;
  report.seed = options.seed;
  report.cases = options.cases;
  std::vector<CaseResult> results(options.cases);

  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, options.cases)));
  std::vector<std::exception_ptr> errors(options.cases);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < options.cases; i = next++) {
      try {
        results[i] = run_case(machine, image, options, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (auto& r : results) {
    switch (r.status) {
      case CaseStatus::kPassed: ++report.passed; break;
      case CaseStatus::kSkipped: ++report.skipped; break;
      case CaseStatus::kFailed:
        ++report.failed;
        if (!report.first_failure) report.first_failure = std::move(r.counterexample);
        break;
    }
  }
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream os;
  const std::size_t run = report.cases - report.skipped;
  os << run - report.failed << "/" << run << " pass (seed " << report.seed << ")";
  if (report.skipped) os << ", " << report.skipped << " unplaceable machines skipped";
  os << "\n";
  if (report.first_failure) {
    const auto& c = *report.first_failure;
    os << "counterexample: case " << c.case_index << "\n"
       << "  n: " << c.n << "\n"
       << "  input: \"" << hex_escape(c.input) << "\"\n"
       << "  " << c.detail << "\n"
       << "  machine:\n";
    std::istringstream lines(format_ruleset(c.machine));
    for (std::string line; std::getline(lines, line);) os << "    " << line << "\n";
  }
  return os.str();
}

}  // namespace nfst
