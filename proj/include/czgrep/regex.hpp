#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "czgrep/error.hpp"
#include "czgrep/selection.hpp"
#include "czgrep/stats.hpp"
#include "czgrep/tnfa.hpp"
#include "czgrep/zl78.hpp"

namespace czgrep {

inline constexpr std::uint32_t kNoMatch = 0xffffffffu;

// Per-element record: phrase position and length, the automaton state set
// after the phrase, and per state the deepest ancestor whose phrase drives
// that state into acceptance (kNoMatch when there is none).
struct RegexDescription {
  std::size_t start = 1;   // u_i
  std::size_t length = 0;  // l_i
  StateSet state_set;      // after reading Q[1 .. u_i + l_i - 1]
  std::vector<std::uint32_t> lastmatch;
};

struct RegexDescriptionSet {
  std::vector<RegexDescription> elements;  // index 0 is the sentinel
  std::vector<std::vector<std::uint32_t>> node_rows;
  std::vector<std::uint32_t> node_depths;
};

namespace detail {

inline std::vector<std::uint32_t> node_depths(const ParseView& view) {
  std::vector<std::uint32_t> depths(view.node_count(), 0);
  for (std::uint32_t v = 1; v < depths.size(); ++v)
    depths[v] = depths[view.parent(v)] + 1;
  return depths;
}

}  // namespace detail

// Computes all descriptions in one left-to-right pass. State sets advance
// through the cached per-member transition sets plus a per-character tail
// walk; the lastmatch rows come from a reverse-reachability sweep over the
// same tails. Everything is retained, so this mode is linear-space in n by
// design.
inline RegexDescriptionSet build_regex_descriptions(
    const ParseView& view, const SelectedSet& selected, const Tnfa& a,
    StatsRecord* stats = nullptr) {
  const std::size_t n = view.block_count();
  const std::size_t nodes = view.node_count();
  const std::size_t states = a.state_count();
  RegexDescriptionSet out;
  out.node_depths = detail::node_depths(view);
  TnfaSimulator sim(a);

  out.node_rows.assign(nodes, {});
  out.node_rows[kRoot].assign(states, kNoMatch);
  const StateSet accept_sources =
      sim.reverse_closure(StateSet::single(a.accept));
  std::vector<std::uint8_t> mark(states, 0);
  for (std::uint32_t v = 1; v < nodes; ++v) {
    auto [y, path] = nearest_member(view, selected, v);
    // States from which the tail path still reaches acceptance, computed
    // right to left over reversed edges; plus one forward sweep telling
    // whether a match can begin inside the tail regardless of entry state.
    StateSet pre = accept_sources;
    for (std::size_t idx = 0; idx + 1 < path.size(); ++idx)
      pre = sim.reverse_step(pre, view.label(path[idx]));
    StateSet inside;
    bool tail_hit = false;
    if (path.size() > 1) {
      for (std::size_t idx = path.size() - 1; idx-- > 0;)
        inside = sim.step_with_start(inside, view.label(path[idx]));
      tail_hit = inside.contains(a.accept);
    }
    for (std::uint32_t s : pre.states()) mark[s] = 1;
    const std::vector<StateSet>& cached =
        selected.payload(y).transition_sets;
    const std::vector<std::uint32_t>& parent_row =
        out.node_rows[view.parent(v)];
    auto& row = out.node_rows[v];
    row.resize(states);
    for (std::uint32_t s = 0; s < states; ++s) {
      bool accepts = tail_hit;
      if (!accepts)
        for (std::uint32_t t : cached[s].states())
          if (mark[t]) {
            accepts = true;
            break;
          }
      row[s] = accepts ? v : parent_row[s];
    }
    for (std::uint32_t s : pre.states()) mark[s] = 0;
  }

  out.elements.resize(n + 1);
  out.elements[0].start = 1;
  out.elements[0].length = 0;
  out.elements[0].state_set = sim.closure(StateSet::single(a.start));
  out.elements[0].lastmatch = out.node_rows[kRoot];
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint32_t v = view.node_of_block(i);
    const RegexDescription& prev = out.elements[i - 1];
    RegexDescription& d = out.elements[i];
    d.start = prev.start + prev.length;
    d.length = out.node_depths[v];
    auto [y, path] = nearest_member(view, selected, v);
    const std::vector<StateSet>& cached =
        selected.payload(y).transition_sets;
    std::vector<std::uint32_t> merged;
    for (std::uint32_t s : prev.state_set.states())
      merged.insert(merged.end(), cached[s].states().begin(),
                    cached[s].states().end());
    // The start state rides along unconditionally: a match may begin
    // anywhere inside the phrase, even when no earlier run survived.
    merged.insert(merged.end(), cached[a.start].states().begin(),
                  cached[a.start].states().end());
    StateSet set{std::move(merged)};
    for (std::size_t idx = path.size() - 1; idx-- > 0;)
      set = sim.step_with_start(set, view.label(path[idx]));
    d.state_set = std::move(set);
    d.lastmatch = out.node_rows[v];
  }
  if (stats) {
    stats->peak_live_descriptions = n + 1;
    stats->selected_count = selected.size();
  }
  return out;
}

// Walks the lastmatch chains of every surviving state (the start state
// included), merging them through a max-depth priority queue so each
// position is reported once. Output is sorted and duplicate-free.
inline std::vector<std::size_t> report_regex_matches(
    const ParseView& view, const RegexDescriptionSet& descs, const Tnfa& a) {
  std::vector<std::size_t> out;
  struct Entry {
    std::uint32_t depth, node, state;
    bool operator<(const Entry& other) const { return depth < other.depth; }
  };
  std::priority_queue<Entry> queue;
  std::vector<std::size_t> batch;
  for (std::size_t i = 1; i < descs.elements.size(); ++i) {
    const RegexDescription& d = descs.elements[i];
    const StateSet& survivors = descs.elements[i - 1].state_set;
    auto seed = [&](std::uint32_t s) {
      const std::uint32_t x = d.lastmatch[s];
      if (x != kNoMatch) queue.push({descs.node_depths[x], x, s});
    };
    for (std::uint32_t s : survivors.states()) seed(s);
    if (!survivors.contains(a.start)) seed(a.start);
    batch.clear();
    std::uint32_t last_depth = kNoMatch;
    while (!queue.empty()) {
      const Entry e = queue.top();
      queue.pop();
      const std::uint32_t up = view.parent(e.node);
      const std::uint32_t next = descs.node_rows[up][e.state];
      if (next != kNoMatch)
        queue.push({descs.node_depths[next], next, e.state});
      if (e.depth == last_depth) continue;
      last_depth = e.depth;
      batch.push_back(d.start + e.depth - 1);
    }
    out.insert(out.end(), batch.rbegin(), batch.rend());
  }
  return out;
}

struct RegexOptions {
  const DictionaryTrie* trie = nullptr;
  StatsRecord* stats = nullptr;
};

// All end positions of substrings of the decompressed text matching the
// pattern, 1-based, sorted, duplicate-free; independent of tau. A pattern
// accepting the empty string degenerately matches at every position. ZLW
// input gets an explicit trie built on the fly when none is supplied.
inline std::vector<std::size_t> search_regex(const CompressedString& z,
                                             std::string_view pattern,
                                             std::size_t tau,
                                             const RegexOptions& options = {}) {
  const Regex regex = parse_regex(pattern);
  const Tnfa a = build_tnfa(regex);
  StatsRecord* stats = options.stats;
  if (stats) {
    stats->element_count = z.size();
    stats->pattern_size = regex.size();
    stats->max_errors.reset();
  }
  DictionaryTrie local;
  const DictionaryTrie* trie = options.trie;
  if (z.scheme == Scheme::zlw && trie == nullptr) {
    local = build_trie(z);
    trie = &local;
  }
  ParseView view = trie ? ParseView(z, *trie) : ParseView(z);
  const auto depths = detail::node_depths(view);
  std::size_t u = 0;
  for (std::size_t i = 1; i <= z.size(); ++i)
    u += depths[view.node_of_block(i)];
  if (stats) {
    stats->text_length = u;
    stats->tau = std::max<std::size_t>(tau, 1);
  }
  std::vector<std::size_t> out;
  if (z.empty()) {
    if (stats) stats->selected_count = 1;
    return out;
  }
  if (accepts_empty(a)) {
    out.resize(u);
    std::iota(out.begin(), out.end(), std::size_t(1));
    if (stats) {
      stats->selected_count = 1;
      stats->match_count = out.size();
    }
    return out;
  }
  SelectedSet selected = build_selected_set(view, tau, a);
  RegexDescriptionSet descs =
      build_regex_descriptions(view, selected, a, stats);
  out = report_regex_matches(view, descs, a);
  if (stats) {
    stats->tau = selected.tau();
    stats->match_count = out.size();
  }
  return out;
}

}  // namespace czgrep
