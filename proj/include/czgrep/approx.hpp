#pragma once

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "czgrep/error.hpp"
#include "czgrep/selection.hpp"
#include "czgrep/stats.hpp"
#include "czgrep/zl78.hpp"

namespace czgrep {

// Two adjacent character ranges presented as one text. Lets the boundary
// window rsuf(z_{i-1})·rpre(z_i) be matched without concatenating.
class SplitView {
 public:
  SplitView() = default;
  SplitView(std::string_view first, std::string_view second)
      : first_(first), second_(second) {}
  explicit SplitView(std::string_view only) : first_(only) {}

  std::size_t size() const noexcept { return first_.size() + second_.size(); }

  char operator[](std::size_t i) const {
    return i < first_.size() ? first_[i] : second_[i - first_.size()];
  }

 private:
  std::string_view first_;
  std::string_view second_;
};

namespace detail {

// Column-rolling edit-distance scan with a free start: row zero stays zero,
// so every text position may begin a match. Emits 1-based end positions.
template <class TextView>
std::vector<std::size_t> sellers_matches(std::string_view pattern,
                                         const TextView& text,
                                         std::size_t k) {
  const std::size_t m = pattern.size();
  std::vector<std::size_t> out;
  if (m == 0) return out;
  std::vector<std::size_t> col(m + 1), next(m + 1);
  for (std::size_t i = 0; i <= m; ++i) col[i] = i;
  for (std::size_t j = 1; j <= text.size(); ++j) {
    const char c = text[j - 1];
    next[0] = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      std::size_t best = col[i - 1] + (pattern[i - 1] == c ? 0 : 1);
      best = std::min(best, col[i] + 1);
      best = std::min(best, next[i - 1] + 1);
      next[i] = best;
    }
    if (next[m] <= k) out.push_back(j);
    col.swap(next);
  }
  return out;
}

}  // namespace detail

// All 1-based end positions j in `text` with a substring ending at j within
// edit distance k of `pattern`; sorted by construction.
inline std::vector<std::size_t> edit_distance_matches(std::string_view pattern,
                                                      std::string_view text,
                                                      std::size_t k) {
  return detail::sellers_matches(pattern, SplitView(text), k);
}

// End position j of a match of a length-m pattern with at most k errors
// pins the start into this interval.
inline std::pair<std::size_t, std::size_t> match_start_interval(
    std::size_t end_pos, std::size_t pattern_len, std::size_t k,
    std::size_t text_len) {
  if (end_pos < 1 || end_pos > text_len)
    throw parameter_error("position out of range");
  const long long j = static_cast<long long>(end_pos);
  const long long lo = j - static_cast<long long>(pattern_len) + 1 -
                       static_cast<long long>(k);
  const long long hi = j - static_cast<long long>(pattern_len) + 1 +
                       static_cast<long long>(k);
  const long long len = static_cast<long long>(text_len);
  return {static_cast<std::size_t>(std::max(1LL, lo)),
          static_cast<std::size_t>(std::min(len, hi))};
}

// Anything that finds approximate matches in a short uncompressed window.
// The default is the Sellers scan; a faster matcher can be swapped in
// without touching the pipeline. Output must be sorted and duplicate-free.
template <class M>
concept UncompressedMatcher =
    requires(const M& m, std::string_view p, SplitView s, std::size_t k) {
      { m(p, s, k) } -> std::same_as<std::vector<std::size_t>>;
    };

struct SellersMatcher {
  std::vector<std::size_t> operator()(std::string_view pattern,
                                      SplitView text, std::size_t k) const {
    return detail::sellers_matches(pattern, text, k);
  }
};

struct ApproxQuery {
  std::string pattern;
  std::size_t max_errors = 0;
};

// Per-element record carrying everything the next step needs: position and
// length of the phrase, the boundary windows, and the two match sets
// (1-based offsets; internal ones within the phrase, overlapping ones within
// rsuf(z_{i-1})·rpre(z_i)).
struct ApproxDescription {
  std::size_t start = 1;   // u_i
  std::size_t length = 0;  // l_i
  std::string rel_prefix;
  std::string rel_suffix;
  std::vector<std::size_t> internal_matches;
  std::vector<std::size_t> overlap_matches;
};

// Matches inside [u_i, u_i + l_i - 1]: internal offsets shift by the phrase
// start, overlapping offsets additionally by the previous relevant suffix,
// and only those landing inside the phrase interval survive. A position can
// arrive by both routes; the output is deduplicated.
inline std::vector<std::size_t> assemble_matches(const ApproxDescription& d,
                                                 std::size_t prev_rsuf_len) {
  std::vector<std::size_t> out;
  if (d.length == 0) return out;
  const std::size_t lo = d.start, hi = d.start + d.length - 1;
  for (std::size_t j : d.internal_matches) out.push_back(j + d.start - 1);
  std::vector<std::size_t> over;
  for (std::size_t j : d.overlap_matches) {
    const std::size_t shifted = j + d.start - 1;
    if (shifted < prev_rsuf_len + lo) continue;
    const std::size_t pos = shifted - prev_rsuf_len;
    if (pos <= hi) over.push_back(pos);
  }
  std::vector<std::size_t> merged;
  merged.resize(out.size() + over.size());
  std::merge(out.begin(), out.end(), over.begin(), over.end(), merged.begin());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

// Left-to-right description pipeline. Holds the selected set, the persistent
// internal-match chains and the scratch the per-element computation needs;
// descriptions themselves are yours to keep or drop.
template <UncompressedMatcher M = SellersMatcher>
class ApproxEngine {
 public:
  ApproxEngine(const ParseView& view, const SelectedSet& selected,
               ApproxQuery query, M matcher = {},
               StatsRecord* stats = nullptr)
      : view_(view),
        selected_(selected),
        query_(std::move(query)),
        matcher_(std::move(matcher)),
        stats_(stats) {
    if (query_.pattern.empty())
      throw parameter_error("pattern must not be empty");
    if (query_.max_errors >= query_.pattern.size())
      throw parameter_error("error threshold must be smaller than the pattern");
    window_ = query_.pattern.size() + query_.max_errors;
  }

  // Sentinel for z_0.
  ApproxDescription initial() const {
    ApproxDescription d;
    d.start = 1;
    d.length = 0;
    return d;
  }

  // prev must be the description of element i-1.
  ApproxDescription compute_description(const ApproxDescription& prev,
                                        std::size_t i) {
    if (i < 1 || i > view_.block_count())
      throw parameter_error("element index " + std::to_string(i) +
                            " out of range");
    ApproxDescription d;
    const std::uint32_t v = view_.node_of_block(i);
    auto [y, path] = nearest_member(view_, selected_, v);
    d.length = selected_.payload(y).phrase_length + path.size() - 1;
    d.start = prev.start + prev.length;
    d.rel_prefix = relevant_prefix(v, d.length, y, path);
    d.rel_suffix = relevant_suffix(i, d.start, d.length);
    d.overlap_matches = matcher_(
        query_.pattern, SplitView(prev.rel_suffix, d.rel_prefix),
        query_.max_errors);
    ensure_internal(v, d.length);
    d.internal_matches = materialize_internal(v);
    if (stats_) {
      stats_->peak_live_descriptions =
          std::max(stats_->peak_live_descriptions, std::size_t(2));
      stats_->peak_live_chars = std::max(
          stats_->peak_live_chars, prev.rel_suffix.size() +
                                       d.rel_prefix.size() +
                                       d.rel_suffix.size());
    }
    return d;
  }

 private:
  // First min(window, l_i) characters of the phrase. Short phrases are
  // decoded whole; long ones through the ancestor of depth exactly window,
  // found either on the walked path or via the member's stored shortcut.
  std::string relevant_prefix(std::uint32_t v, std::size_t len,
                              std::uint32_t y,
                              const std::vector<std::uint32_t>& path) {
    if (len <= window_) return detail::decode_tail(view_, v, len);
    const SelectionPayload& ypay = selected_.payload(y);
    std::uint32_t anchor;
    if (ypay.phrase_length == window_) {
      anchor = y;
    } else if (ypay.phrase_length > window_) {
      anchor = *ypay.shortcut;
    } else {
      // depth(path[idx]) = len - idx.
      anchor = path[len - window_];
    }
    return detail::decode_tail(view_, anchor, window_);
  }

  // Decodes the window ending at u_i + l_i - 1, walking backwards through
  // as many phrases as needed.
  std::string relevant_suffix(std::size_t i, std::size_t start,
                              std::size_t length) {
    std::size_t want = std::min(window_, start + length - 1);
    std::string buf;
    buf.resize(want);
    std::size_t at = want;
    std::size_t t = i;
    while (at > 0) {
      assert(t >= 1);
      std::uint32_t v = view_.node_of_block(t);
      while (v != kRoot && at > 0) {
        buf[--at] = view_.label(v);
        v = view_.parent(v);
      }
      --t;
    }
    return buf;
  }

  bool internal_done(std::uint32_t v) const {
    if (view_.has_trie()) return internal_done_.count(v) != 0;
    return v <= last_internal_node_;
  }

  // Internal-match sets are shared along the trie: a node's set is its
  // parent's set plus at most one new offset (the full phrase length, when a
  // match ends exactly there). Stored as chains so the total footprint stays
  // proportional to the number of matches.
  void ensure_internal(std::uint32_t v, std::size_t depth_hint) {
    if (v == kRoot || internal_done(v)) return;
    std::vector<std::uint32_t> pending;
    std::uint32_t w = v;
    while (w != kRoot && !internal_done(w)) {
      pending.push_back(w);
      w = view_.parent(w);
    }
    assert(view_.has_trie() || pending.size() == 1);
    for (auto it = pending.rbegin(); it != pending.rend(); ++it) {
      const std::size_t depth = view_.has_trie() ? view_.trie()->depth(*it)
                                                 : depth_hint;
      compute_internal_node(*it, depth);
    }
  }

  void compute_internal_node(std::uint32_t v, std::size_t depth) {
    const std::size_t len = std::min(window_, depth);
    const std::string tail = detail::decode_tail(view_, v, len);
    const auto hits =
        matcher_(query_.pattern, SplitView(tail), query_.max_errors);
    const bool ends_here =
        std::binary_search(hits.begin(), hits.end(), len);
    const std::uint32_t parent = view_.parent(v);
    std::uint32_t parent_head = 0;
    if (parent != kRoot) {
      auto it = heads_.find(parent);
      if (it != heads_.end()) parent_head = it->second;
    }
    if (ends_here) {
      tails_.emplace(v, Tail{depth, parent_head});
      heads_.emplace(v, v);
    } else if (parent_head != 0) {
      heads_.emplace(v, parent_head);
    }
    if (view_.has_trie())
      internal_done_.insert(v);
    else
      last_internal_node_ = std::max(last_internal_node_, v);
  }

  std::vector<std::size_t> materialize_internal(std::uint32_t v) const {
    std::vector<std::size_t> out;
    auto it = heads_.find(v);
    std::uint32_t h = it == heads_.end() ? 0 : it->second;
    while (h != 0) {
      const Tail& t = tails_.at(h);
      out.push_back(t.value);
      h = t.prev;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  struct Tail {
    std::size_t value;
    std::uint32_t prev;  // next tail-bearing ancestor, 0 when none
  };

  const ParseView& view_;
  const SelectedSet& selected_;
  ApproxQuery query_;
  M matcher_;
  StatsRecord* stats_;
  std::size_t window_ = 0;

  std::unordered_map<std::uint32_t, std::uint32_t> heads_;
  std::unordered_map<std::uint32_t, Tail> tails_;
  std::unordered_set<std::uint32_t> internal_done_;
  std::uint32_t last_internal_node_ = 0;
};

struct ApproxOptions {
  const DictionaryTrie* trie = nullptr;
  StatsRecord* stats = nullptr;
};

// All end positions of substrings within edit distance k of the pattern,
// 1-based in the decompressed text, sorted and duplicate-free. The result is
// independent of tau; only the resource profile changes. ZLW input requires
// an explicit trie in the options.
template <UncompressedMatcher M = SellersMatcher>
std::vector<std::size_t> search_approx(const CompressedString& z,
                                       std::string_view pattern,
                                       std::size_t k, std::size_t tau,
                                       const ApproxOptions& options = {},
                                       M matcher = {}) {
  if (pattern.empty()) throw parameter_error("pattern must not be empty");
  if (k >= pattern.size())
    throw parameter_error("error threshold must be smaller than the pattern");
  if (z.scheme == Scheme::zlw && options.trie == nullptr)
    throw config_error(
        "ZLW stores no labels with its elements; approximate search needs "
        "the explicit dictionary trie");
  std::vector<std::size_t> out;
  StatsRecord* stats = options.stats;
  if (stats) {
    stats->element_count = z.size();
    stats->pattern_size = pattern.size();
    stats->max_errors = k;
  }
  if (z.empty()) {
    if (stats) {
      stats->tau = std::max<std::size_t>(tau, 1);
      stats->selected_count = 1;
    }
    return out;
  }
  ParseView view = options.trie ? ParseView(z, *options.trie) : ParseView(z);
  ApproxQuery query{std::string(pattern), k};
  SelectedSet selected = build_selected_set(
      view, tau, ApproxPayloadSpec{pattern.size(), k});
  ApproxEngine<M> engine(view, selected, query, std::move(matcher), stats);
  ApproxDescription prev = engine.initial();
  for (std::size_t i = 1; i <= view.block_count(); ++i) {
    ApproxDescription cur = engine.compute_description(prev, i);
    auto found = assemble_matches(cur, prev.rel_suffix.size());
    out.insert(out.end(), found.begin(), found.end());
    prev = std::move(cur);
  }
  if (stats) {
    stats->tau = selected.tau();
    stats->selected_count = selected.size();
    stats->text_length = prev.start + prev.length - 1;
    stats->match_count = out.size();
  }
  return out;
}

}  // namespace czgrep
