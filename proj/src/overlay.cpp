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

#include "nfst/overlay.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <tuple>

#include "nfst/epsilon.hpp"
#include "nfst/error.hpp"
#include "nfst/rng.hpp"
#include "nfst/ruleset.hpp"
#include "nfst/validate.hpp"

namespace nfst {

std::size_t OverlayImage::occupied_count() const {
  return static_cast<std::size_t>(
      std::count_if(pes.begin(), pes.end(), [](const PeConfig& p) { return p.occupied; }));
}

OverlayImage OverlayImage::empty(const GridSpec& grid) {
  OverlayImage image;
  image.grid = grid;
  image.pes.resize(grid.pe_count());
  for (std::size_t i = 0; i < image.pes.size(); ++i) {
    image.pes[i].pe_id = static_cast<PeId>(i);
  }
  image.tram.entries.assign(grid.pe_count(), std::nullopt);
  return image;
}

std::size_t CompiledOverlay::replications() const {
  std::size_t n = 0;
  for (const auto& e : edge_map) n += e.pes.size() - 1;
  return n;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Placement works on a labeling of grid cells with edge indices. A labeling
// is complete when every start edge has an instance and every instance has,
// for each successor edge, a neighbor hosting that successor. The first pass
// is a breadth-first greedy walk; if it leaves unmet adjacencies, a seeded
// min-conflicts search repairs the labeling. Instances not reachable from a
// start instance are dropped at the end.
class Placer {
 public:
  static constexpr std::size_t kRepairIterations = 4000;

  Placer(const Fst& fst, const GridSpec& grid, const PlaceOptions& options)
      : fst_(fst), grid_(grid), options_(options) {
    const auto live = reachable_states(fst_);
    std::vector<bool> is_live(fst_.state_count, false);
    for (StateId s : live) is_live[s] = true;
    for (std::size_t e = 0; e < fst_.transitions.size(); ++e) {
      if (is_live[fst_.transitions[e].src]) edges_.push_back(e);
    }
    if (edges_.size() > grid_.pe_count()) {
      throw Error(ErrorCode::kCapacityExceeded,
                  std::to_string(edges_.size()) + " reachable edges exceed " +
                      std::to_string(grid_.pe_count()) + " PEs");
    }
    successors_.resize(fst_.transitions.size());
    for (std::size_t a : edges_) {
      for (std::size_t b : edges_) {
        if (follows(a, b)) successors_[a].push_back(b);
      }
    }
    neighbors_.resize(grid_.pe_count());
    for (PeId pe = 0; pe < grid_.pe_count(); ++pe) {
      for (Direction d : directions(grid_.neighborhood)) {
        if (auto n = neighbor(grid_, pe, d)) neighbors_[pe].push_back(*n);
      }
    }
    label_.assign(grid_.pe_count(), kNone);
    count_.assign(fst_.transitions.size(), 0);
  }

  EdgeMap run() {
    greedy();
    full_ = std::find(label_.begin(), label_.end(), kNone) == label_.end();
    bool complete = violations().empty();
    if (!complete) complete = repair();
    if (!complete) fail();
    prune();

    EdgeMap map;
    for (std::size_t e : edges_) {
      const auto& t = fst_.transitions[e];
      PlacedEdge placed{e, t.src, t.dst, {}};
      for (PeId pe = 0; pe < grid_.pe_count(); ++pe) {
        if (label_[pe] == e) placed.pes.push_back(pe);
      }
      map.push_back(std::move(placed));
    }
    return map;
  }

 private:
  using Violation = std::pair<PeId, std::size_t>;  // cell, missing successor

  // Edge b may directly follow edge a along a path.
  bool follows(std::size_t a, std::size_t b) const {
    return fst_.transitions[a].dst == fst_.transitions[b].src;
  }

  bool is_start_edge(std::size_t e) const { return fst_.transitions[e].src == fst_.start; }

  bool adjacent_to(PeId pe, std::size_t edge) const {
    return std::any_of(neighbors_[pe].begin(), neighbors_[pe].end(),
                       [&](PeId nb) { return label_[nb] == edge; });
  }

  void set_label(PeId pe, std::size_t edge) {
    if (label_[pe] != kNone) --count_[label_[pe]];
    label_[pe] = edge;
    if (edge != kNone) ++count_[edge];
  }

  // --- greedy pass -------------------------------------------------------

  // Links the cell would form, whether the new edge would feed a neighbor or
  // be fed by one.
  std::size_t links(PeId cell, std::size_t edge) const {
    std::size_t n = 0;
    for (PeId nb : neighbors_[cell]) {
      const std::size_t other = label_[nb];
      if (other == kNone) continue;
      if (follows(other, edge)) ++n;
      if (follows(edge, other)) ++n;
    }
    return n;
  }

  // Enough free neighbors remain for successors not already adjacent.
  bool has_room(PeId cell, std::size_t edge) const {
    std::size_t free = 0;
    for (PeId nb : neighbors_[cell]) free += label_[nb] == kNone;
    std::size_t needed = 0;
    for (std::size_t s : successors_[edge]) needed += !adjacent_to(cell, s);
    return free >= needed;
  }

  // Most links, then room for successors, then earliest along the snake.
  PeId best_cell(const std::vector<PeId>& candidates, std::size_t edge) const {
    PeId best = candidates.front();
    auto key = [&](PeId c) {
      return std::make_tuple(links(c, edge), has_room(c, edge),
                             grid_.pe_count() - snake_index(grid_, c));
    };
    auto best_key = key(best);
    for (PeId c : candidates) {
      auto k = key(c);
      if (k > best_key) {
        best = c;
        best_key = k;
      }
    }
    return best;
  }

  void greedy() {
    std::deque<PeId> queue;
    auto put = [&](std::size_t edge, PeId cell) {
      set_label(cell, edge);
      queue.push_back(cell);
    };
    for (std::size_t e : edges_) {
      if (!is_start_edge(e) || count_[e] != 0) continue;
      std::vector<PeId> free;
      for (PeId c = 0; c < grid_.pe_count(); ++c) {
        if (label_[c] == kNone) free.push_back(c);
      }
      put(e, best_cell(free, e));
      while (!queue.empty()) {
        const PeId pe = queue.front();
        queue.pop_front();
        for (std::size_t s : successors_[label_[pe]]) {
          if (adjacent_to(pe, s) || count_[s] >= options_.max_instances_per_edge) continue;
          std::vector<PeId> cells;
          for (PeId nb : neighbors_[pe]) {
            if (label_[nb] == kNone) cells.push_back(nb);
          }
          if (!cells.empty()) put(s, best_cell(cells, s));
        }
      }
    }
  }

  // --- repair pass -------------------------------------------------------

  std::size_t missing(PeId pe) const {
    if (label_[pe] == kNone) return 0;
    std::size_t n = 0;
    for (std::size_t s : successors_[label_[pe]]) n += !adjacent_to(pe, s);
    return n;
  }

  std::vector<Violation> violations() const {
    std::vector<Violation> out;
    for (PeId pe = 0; pe < grid_.pe_count(); ++pe) {
      if (label_[pe] == kNone) continue;
      for (std::size_t s : successors_[label_[pe]]) {
        if (!adjacent_to(pe, s)) out.emplace_back(pe, s);
      }
    }
    return out;
  }

  static constexpr std::size_t kBudgetWeight = 2;
  static constexpr std::size_t kStartWeight = 8;

  std::size_t edge_penalty(std::size_t e) const {
    std::size_t p = 0;
    if (count_[e] > options_.max_instances_per_edge) {
      p += kBudgetWeight * (count_[e] - options_.max_instances_per_edge);
    }
    if (is_start_edge(e) && count_[e] == 0) p += kStartWeight;
    return p;
  }

  std::size_t total_cost() const {
    std::size_t c = violations().size();
    for (std::size_t e : edges_) c += edge_penalty(e);
    return c;
  }

  // Cost of the cells a relabel of `pe` can affect, plus the edge penalties
  // of the labels involved.
  std::size_t local_cost(PeId pe, std::size_t a, std::size_t b) const {
    std::size_t c = missing(pe);
    for (PeId nb : neighbors_[pe]) c += missing(nb);
    if (a != kNone) c += edge_penalty(a);
    if (b != kNone && b != a) c += edge_penalty(b);
    return c;
  }

  long delta(PeId pe, std::size_t edge) {
    const std::size_t old = label_[pe];
    const std::size_t before = local_cost(pe, old, edge);
    set_label(pe, edge);
    const std::size_t after = local_cost(pe, old, edge);
    set_label(pe, old);
    return static_cast<long>(after) - static_cast<long>(before);
  }

  // Cells with at least one missing successor, kept in sync with label_.
  void mark(PeId pe) {
    const bool bad = missing(pe) > 0;
    if (bad && slot_[pe] == kNone) {
      slot_[pe] = bad_.size();
      bad_.push_back(pe);
    } else if (!bad && slot_[pe] != kNone) {
      const PeId last = bad_.back();
      bad_[slot_[pe]] = last;
      slot_[last] = slot_[pe];
      bad_.pop_back();
      slot_[pe] = kNone;
    }
  }

  void relabel(PeId pe, std::size_t edge) {
    set_label(pe, edge);
    mark(pe);
    for (PeId nb : neighbors_[pe]) mark(nb);
  }

  bool repair() {
    // Any instance needs one distinct neighbor per successor.
    const std::size_t degree = directions(grid_.neighborhood).size();
    for (std::size_t e : edges_) {
      if (successors_[e].size() > degree) return false;
    }

    Rng rng(fst_digest(fst_), grid_.pe_count());
    slot_.assign(grid_.pe_count(), kNone);
    bad_.clear();
    for (PeId pe = 0; pe < grid_.pe_count(); ++pe) mark(pe);
    std::size_t cost = total_cost();
    std::vector<std::size_t> best = label_;
    std::size_t best_cost = cost;

    std::vector<std::pair<PeId, std::size_t>> moves;
    for (std::size_t iter = 0; iter < kRepairIterations && cost > 0; ++iter) {
      moves.clear();
      if (!bad_.empty()) {
        const PeId pe = bad_[rng.below(bad_.size())];
        std::vector<std::size_t> lacking;
        for (std::size_t s : successors_[label_[pe]]) {
          if (!adjacent_to(pe, s)) lacking.push_back(s);
        }
        const std::size_t succ = lacking[rng.below(lacking.size())];
        for (PeId nb : neighbors_[pe]) moves.emplace_back(nb, succ);
        moves.emplace_back(pe, kNone);
      } else {
        // Only edge penalties remain: over-budget edges.
        for (PeId pe = 0; pe < grid_.pe_count(); ++pe) {
          if (label_[pe] != kNone && count_[label_[pe]] > options_.max_instances_per_edge) {
            moves.emplace_back(pe, kNone);
          }
        }
        if (moves.empty()) break;
      }

      std::size_t pick = 0;
      if (rng.chance(0.1)) {
        pick = rng.below(moves.size());
      } else {
        long best_delta = 0;
        std::size_t ties = 0;
        for (std::size_t i = 0; i < moves.size(); ++i) {
          const long d = delta(moves[i].first, moves[i].second);
          if (i == 0 || d < best_delta) {
            best_delta = d;
            pick = i;
            ties = 1;
          } else if (d == best_delta && rng.below(++ties) == 0) {
            pick = i;
          }
        }
      }
      const auto [pe, edge] = moves[pick];
      const long d = delta(pe, edge);
      relabel(pe, edge);
      cost = static_cast<std::size_t>(static_cast<long>(cost) + d);
      if (cost < best_cost) {
        best_cost = cost;
        best = label_;
      }
    }
    label_.assign(grid_.pe_count(), kNone);
    std::fill(count_.begin(), count_.end(), 0);
    for (PeId pe = 0; pe < grid_.pe_count(); ++pe) set_label(pe, best[pe]);
    return best_cost == 0;
  }

  // Drops instances that no walk from a start instance can reach.
  void prune() {
    std::vector<bool> seen(grid_.pe_count(), false);
    std::deque<PeId> queue;
    for (PeId pe = 0; pe < grid_.pe_count(); ++pe) {
      if (label_[pe] != kNone && is_start_edge(label_[pe])) {
        seen[pe] = true;
        queue.push_back(pe);
      }
    }
    while (!queue.empty()) {
      const PeId pe = queue.front();
      queue.pop_front();
      for (PeId nb : neighbors_[pe]) {
        if (!seen[nb] && label_[nb] != kNone && follows(label_[pe], label_[nb])) {
          seen[nb] = true;
          queue.push_back(nb);
        }
      }
    }
    for (PeId pe = 0; pe < grid_.pe_count(); ++pe) {
      if (!seen[pe]) set_label(pe, kNone);
    }
  }

  [[noreturn]] void fail() const {
    if (full_) {
      throw Error(ErrorCode::kCapacityExceeded,
                  "grid full after replication (" + std::to_string(grid_.pe_count()) + " PEs)");
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [pe, succ] : violations()) {
      const std::pair<std::size_t, std::size_t> p{label_[pe], succ};
      if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
    }
    std::sort(pairs.begin(), pairs.end());
    std::ostringstream msg;
    msg << "cannot make edges grid-adjacent within " << options_.max_instances_per_edge
        << " instances per edge:";
    for (const auto& [a, b] : pairs) msg << " (" << a << "->" << b << ")";
    throw AdjacencyError(pairs, msg.str());
  }

  const Fst& fst_;
  GridSpec grid_;
  PlaceOptions options_;
  std::vector<std::size_t> edges_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<std::vector<PeId>> neighbors_;
  std::vector<std::size_t> label_;
  std::vector<std::size_t> count_;
  std::vector<PeId> bad_;
  std::vector<std::size_t> slot_;
  bool full_ = false;  // the greedy pass used every cell
};

}  // namespace

EdgeMap place(const Fst& fst, const GridSpec& grid, const PlaceOptions& options) {
  check_grid(grid);
  if (options.max_instances_per_edge == 0) {
    throw Error(ErrorCode::kUsage, "replication budget must be >= 1");
  }
  return Placer(fst, grid, options).run();
}

CompiledOverlay compile(const Fst& fst, const GridSpec& grid, const PlaceOptions& options) {
  check_grid(grid);
  const auto diagnostics = validate(fst);
  if (has_errors(diagnostics)) {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::kError) throw Error(ErrorCode::kInvalidFst, d.message);
    }
  }
  for (std::size_t i = 0; i < fst.transitions.size(); ++i) {
    if (fst.transitions[i].is_epsilon_input()) {
      throw Error(ErrorCode::kEpsilonPresent,
                  "transition " + std::to_string(i) +
                      " has an epsilon input; eliminate epsilons first");
    }
  }
  for (std::size_t i = 0; i < fst.transitions.size(); ++i) {
    if (fst.transitions[i].output.is_epsilon()) {
      throw Error(ErrorCode::kNotLengthPreserving,
                  "transition " + std::to_string(i) +
                      " has an epsilon output; the overlay needs one output byte per input byte");
    }
  }

  CompiledOverlay out;
  out.edge_map = place(fst, grid, options);
  out.start = fst.start;
  out.start_accepting = fst.is_accepting(fst.start);
  out.source_fst_digest = fst_digest(fst);

  std::vector<std::size_t> cell_edge(grid.pe_count(), kNone);
  for (const auto& placed : out.edge_map) {
    for (PeId pe : placed.pes) cell_edge[pe] = placed.edge;
  }
  OverlayImage& image = out.image;
  image = OverlayImage::empty(grid);
  for (const auto& placed : out.edge_map) {
    const Transition& t = fst.transitions[placed.edge];
    for (PeId pe : placed.pes) {
      PeConfig& cfg = image.pes[pe];
      cfg.occupied = true;
      cfg.match = *t.input;
      cfg.is_start = t.src == fst.start;
      cfg.is_report = fst.is_accepting(t.dst);
      for (Direction d : directions(grid.neighborhood)) {
        auto nb = neighbor(grid, pe, d);
        if (!nb || cell_edge[*nb] == kNone) continue;
        if (fst.transitions[cell_edge[*nb]].dst == t.src) {
          cfg.in_switch = static_cast<std::uint8_t>(cfg.in_switch | (1U << static_cast<unsigned>(d)));
        }
      }
      image.tram.entries[pe] = t.output.value();
    }
  }
  return out;
}

void check_image(const OverlayImage& image) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kMalformedImage, msg); };
  try {
    check_grid(image.grid);
  } catch (const Error& e) {
    fail(e.what());
  }
  const std::size_t m = image.pe_count();
  if (image.pes.size() != m) fail("PE table size does not match grid");
  if (image.tram.entries.size() != m) fail("tram size does not match grid");
  const std::uint8_t legal = direction_mask(image.grid.neighborhood);
  for (std::size_t i = 0; i < m; ++i) {
    const PeConfig& pe = image.pes[i];
    const std::string where = "PE " + std::to_string(i);
    if (pe.pe_id != i) fail(where + " has pe_id " + std::to_string(pe.pe_id));
    if (!pe.occupied) {
      if (!pe.match.empty() || pe.is_start || pe.is_report || pe.in_switch != 0 ||
          image.tram.entries[i]) {
        fail(where + " is unoccupied but configured");
      }
      continue;
    }
    if (pe.match.empty()) fail(where + " has an empty match RAM");
    if (!image.tram.entries[i]) fail(where + " has no tram entry");
    if (pe.in_switch & ~legal) fail(where + " uses a direction outside the neighborhood");
    for (Direction d : directions(image.grid.neighborhood)) {
      if (!pe.listens(d)) continue;
      auto nb = neighbor(image.grid, static_cast<PeId>(i), d);
      if (!nb) fail(where + " listens off the grid edge");
      if (!image.pes[*nb].occupied) {
        fail(where + " listens to unoccupied PE " + std::to_string(*nb));
      }
    }
  }
}

Fst decompile(const CompiledOverlay& compiled) {
  const OverlayImage& image = compiled.image;
  check_image(image);
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kMalformedImage, msg); };

  const std::size_t m = image.pe_count();
  std::vector<const PlacedEdge*> owner(m, nullptr);
  for (const auto& placed : compiled.edge_map) {
    if (placed.pes.empty()) fail("edge " + std::to_string(placed.edge) + " has no PE");
    for (PeId pe : placed.pes) {
      if (pe >= m || !image.pes[pe].occupied) {
        fail("edge " + std::to_string(placed.edge) + " maps to unoccupied PE");
      }
      if (owner[pe]) fail("PE " + std::to_string(pe) + " hosts two edge instances");
      owner[pe] = &placed;
    }
  }
  for (std::size_t pe = 0; pe < m; ++pe) {
    if (image.pes[pe].occupied && !owner[pe]) {
      fail("occupied PE " + std::to_string(pe) + " is not in the edge map");
    }
  }

  std::map<StateId, bool> report_of;
  for (const auto& placed : compiled.edge_map) {
    const PeConfig& first = image.pes[placed.pes.front()];
    for (PeId pe : placed.pes) {
      const PeConfig& cfg = image.pes[pe];
      if (cfg.match != first.match || image.tram.entries[pe] != image.tram.entries[placed.pes.front()] ||
          cfg.is_report != first.is_report) {
        fail("replicas of edge " + std::to_string(placed.edge) + " disagree");
      }
      if (cfg.is_start != (placed.src == compiled.start)) {
        fail("PE " + std::to_string(pe) + " has a wrong start flag");
      }
    }
    auto [it, inserted] = report_of.emplace(placed.dst, first.is_report);
    if (!inserted && it->second != first.is_report) {
      fail("edges into state " + std::to_string(placed.dst) + " disagree on report");
    }
  }

  // Every switch link joins consecutive edges, and every instance can reach
  // an instance of each successor edge.
  for (std::size_t pe = 0; pe < m; ++pe) {
    if (!owner[pe]) continue;
    for (Direction d : directions(image.grid.neighborhood)) {
      if (!image.pes[pe].listens(d)) continue;
      PeId from = *neighbor(image.grid, static_cast<PeId>(pe), d);
      if (owner[from]->dst != owner[pe]->src) {
        fail("PE " + std::to_string(pe) + " listens to non-predecessor PE " +
             std::to_string(from));
      }
    }
  }
  for (std::size_t pe = 0; pe < m; ++pe) {
    if (!owner[pe]) continue;
    for (const auto& succ : compiled.edge_map) {
      if (succ.src != owner[pe]->dst) continue;
      bool linked = false;
      for (PeId target : succ.pes) {
        for (Direction d : directions(image.grid.neighborhood)) {
          if (image.pes[target].listens(d) &&
              neighbor(image.grid, target, d) == static_cast<PeId>(pe)) {
            linked = true;
          }
        }
      }
      if (!linked) {
        fail("PE " + std::to_string(pe) + " cannot enable any instance of edge " +
             std::to_string(succ.edge));
      }
    }
  }

  // Breadth-first state numbering from the start state.
  std::map<StateId, StateId> number;
  std::deque<StateId> queue{compiled.start};
  number[compiled.start] = 0;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const auto& placed : compiled.edge_map) {
      if (placed.src == s && !number.count(placed.dst)) {
        number.emplace(placed.dst, static_cast<StateId>(number.size()));
        queue.push_back(placed.dst);
      }
    }
  }

  Fst fst;
  fst.state_count = number.size();
  fst.start = 0;
  if (compiled.start_accepting) fst.accepting.insert(0);
  for (const auto& placed : compiled.edge_map) {
    if (!number.count(placed.src)) {
      fail("edge " + std::to_string(placed.edge) + " is unreachable from start");
    }
    const PeConfig& cfg = image.pes[placed.pes.front()];
    Transition t;
    t.src = number.at(placed.src);
    t.dst = number.at(placed.dst);
    t.input = cfg.match;
    t.output = OutputLabel::byte(*image.tram.entries[placed.pes.front()]);
    fst.transitions.push_back(t);
    if (cfg.is_report) fst.accepting.insert(t.dst);
  }
  return fst;
}

}  // namespace nfst
