#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "czgrep/error.hpp"

namespace czgrep {

enum class Scheme : std::uint8_t { zl78 = 0, zlw = 1 };

inline constexpr std::uint32_t kRoot = 0;

// ZLW dictionary node ids: 0 is the root, 1..256 the preloaded single-byte
// nodes, 257 onward the nodes added while parsing.
inline constexpr std::uint32_t kZlwPreload = 256;

// A parsed text. Element i (1-based) is a (reference, label) pair for ZL78,
// or a bare dictionary code for ZLW. Immutable once built; safe to share
// across threads.
struct CompressedString {
  Scheme scheme = Scheme::zl78;
  // ZL78: parent element index, 0 = root. ZLW: dictionary code.
  std::vector<std::uint32_t> refs;
  // ZL78 only, one byte per element. The final byte is meaningful only when
  // final_has_label is set.
  std::string labels;
  // ZL78: when false the input ended while still matching a known phrase and
  // the final element repeats phrase(reference) verbatim.
  bool final_has_label = true;

  std::size_t size() const noexcept { return refs.size(); }
  bool empty() const noexcept { return refs.empty(); }

  // i is 1-based.
  bool has_label(std::size_t i) const noexcept {
    return i < refs.size() || final_has_label;
  }
};

namespace detail {

inline std::uint64_t child_key(std::uint32_t node, char c) {
  return (std::uint64_t(node) << 8) | std::uint8_t(c);
}

}  // namespace detail

// Explicit dictionary trie. Nodes are numbered in creation order; for ZL78
// node i is element i, for ZLW ids follow the preload convention above.
// block_nodes maps each element to the node whose phrase it emits.
struct DictionaryTrie {
  std::vector<std::uint32_t> parents;
  std::string labels;  // edge label towards the parent; labels[0] unused
  std::vector<std::uint32_t> depths;
  std::vector<std::uint32_t> block_nodes;  // 1-based; block_nodes[0] = root
  std::unordered_map<std::uint64_t, std::uint32_t> children;

  std::uint32_t root() const noexcept { return kRoot; }
  std::size_t node_count() const noexcept { return parents.size(); }

  std::uint32_t parent(std::uint32_t v) const { return parents[v]; }
  char label(std::uint32_t v) const { return labels[v]; }
  std::uint32_t depth(std::uint32_t v) const { return depths[v]; }

  // 0 when absent.
  std::uint32_t child(std::uint32_t v, char c) const {
    auto it = children.find(detail::child_key(v, c));
    return it == children.end() ? kRoot : it->second;
  }
};

inline CompressedString compress_zl78(std::string_view text) {
  CompressedString z;
  z.scheme = Scheme::zl78;
  std::unordered_map<std::uint64_t, std::uint32_t> children;
  children.reserve(64);
  std::uint32_t cur = kRoot;
  for (char c : text) {
    auto it = children.find(detail::child_key(cur, c));
    if (it != children.end()) {
      cur = it->second;
      continue;
    }
    z.refs.push_back(cur);
    z.labels.push_back(c);
    children.emplace(detail::child_key(cur, c),
                     static_cast<std::uint32_t>(z.refs.size()));
    cur = kRoot;
  }
  if (cur != kRoot) {
    z.refs.push_back(cur);
    z.labels.push_back('\0');
    z.final_has_label = false;
  }
  return z;
}

inline CompressedString compress_zlw(std::string_view text) {
  CompressedString z;
  z.scheme = Scheme::zlw;
  std::unordered_map<std::uint64_t, std::uint32_t> children;
  children.reserve(64);
  std::uint32_t next_id = kZlwPreload + 1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::uint32_t cur = 1 + std::uint8_t(text[pos]);
    ++pos;
    while (pos < text.size()) {
      auto it = children.find(detail::child_key(cur, text[pos]));
      if (it == children.end()) break;
      cur = it->second;
      ++pos;
    }
    z.refs.push_back(cur);
    if (pos < text.size()) {
      children.emplace(detail::child_key(cur, text[pos]), next_id++);
    }
  }
  return z;
}

// Greedy left-to-right parse. Any byte sequence is accepted.
inline CompressedString compress(std::string_view text, Scheme scheme) {
  return scheme == Scheme::zl78 ? compress_zl78(text) : compress_zlw(text);
}

// Checks reference ranges; throws format_error on the first bad element.
inline void validate(const CompressedString& z) {
  const std::size_t n = z.size();
  if (z.scheme == Scheme::zl78) {
    if (z.labels.size() != n)
      throw format_error("label table does not match the element count");
    if (!z.final_has_label && n == 0)
      throw format_error("label-less final element in an empty stream");
    for (std::size_t i = 1; i <= n; ++i) {
      if (z.refs[i - 1] >= i)
        throw format_error("reference " + std::to_string(z.refs[i - 1]) +
                               " of element " + std::to_string(i) +
                               " is not smaller than the element index",
                           format_error::npos, i);
    }
  } else {
    for (std::size_t i = 1; i <= n; ++i) {
      const std::uint32_t code = z.refs[i - 1];
      const std::uint32_t hi =
          kZlwPreload + static_cast<std::uint32_t>(i > 1 ? i - 1 : 0);
      if (code == kRoot || code > hi)
        throw format_error("code " + std::to_string(code) + " of element " +
                               std::to_string(i) + " is outside [1, " +
                               std::to_string(hi) + "]",
                           format_error::npos, i);
    }
  }
}

namespace detail {

inline std::string decompress_zl78(const CompressedString& z) {
  validate(z);
  const std::size_t n = z.size();
  std::vector<std::size_t> start(n + 1, 0), len(n + 1, 0);
  std::size_t total = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    len[i] = len[z.refs[i - 1]] + (z.has_label(i) ? 1 : 0);
    total += len[i];
  }
  std::string out;
  out.resize(total);
  std::size_t at = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint32_t r = z.refs[i - 1];
    start[i] = at;
    std::memcpy(out.data() + at, out.data() + start[r], len[r]);
    at += len[r];
    if (z.has_label(i)) out[at++] = z.labels[i - 1];
  }
  return out;
}

// Replays a ZLW code stream into the dictionary trie without materialising
// the text. first_chars[v] is the first character of phrase(v), which is all
// that is needed to resolve a code referencing the entry still under
// construction.
inline DictionaryTrie zlw_replay(const CompressedString& z) {
  validate(z);
  const std::size_t n = z.size();
  DictionaryTrie t;
  const std::size_t reserve = 1 + kZlwPreload + (n > 0 ? n - 1 : 0);
  t.parents.reserve(reserve);
  t.labels.reserve(reserve);
  t.depths.reserve(reserve);
  std::string first_chars;
  first_chars.reserve(reserve);
  t.parents.push_back(kRoot);
  t.labels.push_back('\0');
  t.depths.push_back(0);
  first_chars.push_back('\0');
  for (unsigned b = 0; b < 256; ++b) {
    t.parents.push_back(kRoot);
    t.labels.push_back(static_cast<char>(b));
    t.depths.push_back(1);
    first_chars.push_back(static_cast<char>(b));
    t.children.emplace(child_key(kRoot, static_cast<char>(b)),
                       static_cast<std::uint32_t>(b + 1));
  }
  t.block_nodes.assign(1, kRoot);
  std::uint32_t next_id = kZlwPreload + 1;
  std::uint32_t prev = kRoot;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint32_t code = z.refs[i - 1];
    if (code > next_id || (code == next_id && i == 1))
      throw format_error("code " + std::to_string(code) + " of element " +
                             std::to_string(i) + " references a phrase that "
                             "does not exist yet",
                         format_error::npos, i);
    const char first =
        code == next_id ? first_chars[prev] : first_chars[code];
    if (i > 1) {
      // Entry pending since the previous block: phrase(prev) extended by the
      // first character of this block.
      t.parents.push_back(prev);
      t.labels.push_back(first);
      t.depths.push_back(t.depths[prev] + 1);
      first_chars.push_back(prev == kRoot ? first : first_chars[prev]);
      auto inserted =
          t.children.emplace(child_key(prev, first), next_id);
      if (!inserted.second)
        throw format_error("duplicate dictionary entry while decoding element " +
                               std::to_string(i),
                           format_error::npos, i);
      ++next_id;
    }
    t.block_nodes.push_back(code);
    prev = code;
  }
  return t;
}

inline std::string decompress_zlw(const CompressedString& z) {
  DictionaryTrie t = zlw_replay(z);
  std::size_t total = 0;
  for (std::size_t i = 1; i <= z.size(); ++i)
    total += t.depths[t.block_nodes[i]];
  std::string out;
  out.resize(total);
  std::size_t at = 0;
  for (std::size_t i = 1; i <= z.size(); ++i) {
    std::uint32_t v = t.block_nodes[i];
    std::size_t end = at + t.depths[v];
    at = end;
    while (v != kRoot) {
      out[--end] = t.labels[v];
      v = t.parents[v];
    }
  }
  return out;
}

}  // namespace detail

// Inverse of compress; O(u) total work.
inline std::string decompress(const CompressedString& z) {
  return z.scheme == Scheme::zl78 ? detail::decompress_zl78(z)
                                  : detail::decompress_zlw(z);
}

// Builds the explicit dictionary trie. Mandatory for any phrase navigation
// over ZLW data; optional for ZL78.
inline DictionaryTrie build_trie(const CompressedString& z) {
  if (z.scheme == Scheme::zlw) return detail::zlw_replay(z);
  validate(z);
  const std::size_t n = z.size();
  const std::size_t nodes = n + (n > 0 && !z.final_has_label ? 0 : 1);
  DictionaryTrie t;
  t.parents.reserve(nodes);
  t.labels.reserve(nodes);
  t.depths.reserve(nodes);
  t.parents.push_back(kRoot);
  t.labels.push_back('\0');
  t.depths.push_back(0);
  t.block_nodes.assign(1, kRoot);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint32_t r = z.refs[i - 1];
    if (!z.has_label(i)) {
      t.block_nodes.push_back(r);
      continue;
    }
    t.parents.push_back(r);
    t.labels.push_back(z.labels[i - 1]);
    t.depths.push_back(t.depths[r] + 1);
    t.children.emplace(detail::child_key(r, z.labels[i - 1]),
                       static_cast<std::uint32_t>(i));
    t.block_nodes.push_back(static_cast<std::uint32_t>(i));
  }
  return t;
}

// Uniform phrase navigation over either scheme. ZL78 can be walked straight
// off the element stream; ZLW (and the explicit-trie mode of ZL78) goes
// through a DictionaryTrie. Node ids follow the backing representation.
class ParseView {
 public:
  explicit ParseView(const CompressedString& z) : z_(&z), trie_(nullptr) {
    if (z.scheme == Scheme::zlw)
      throw config_error(
          "ZLW stores no labels with its elements; phrase navigation "
          "requires the explicit dictionary trie");
  }

  ParseView(const CompressedString& z, const DictionaryTrie& trie)
      : z_(&z), trie_(&trie) {}

  const CompressedString& compressed() const noexcept { return *z_; }
  const DictionaryTrie* trie() const noexcept { return trie_; }
  bool has_trie() const noexcept { return trie_ != nullptr; }

  std::size_t block_count() const noexcept { return z_->size(); }

  // Total nodes including the root.
  std::size_t node_count() const noexcept {
    if (trie_) return trie_->node_count();
    const std::size_t n = z_->size();
    return n + (n > 0 && !z_->final_has_label ? 0 : 1);
  }

  // i is 1-based.
  std::uint32_t node_of_block(std::size_t i) const {
    if (trie_) return trie_->block_nodes[i];
    if (!z_->has_label(i)) return z_->refs[i - 1];
    return static_cast<std::uint32_t>(i);
  }

  std::uint32_t parent(std::uint32_t v) const {
    return trie_ ? trie_->parents[v] : z_->refs[v - 1];
  }

  char label(std::uint32_t v) const {
    return trie_ ? trie_->labels[v] : z_->labels[v - 1];
  }

 private:
  const CompressedString* z_;
  const DictionaryTrie* trie_;
};

namespace detail {

inline std::uint32_t node_of_element(const CompressedString& z,
                                     std::size_t i) {
  if (i > z.size())
    throw parameter_error("element index " + std::to_string(i) +
                          " out of range");
  if (i == 0) return kRoot;
  if (!z.has_label(i)) return z.refs[i - 1];
  return static_cast<std::uint32_t>(i);
}

}  // namespace detail

// |phrase(z_i)|, i in [0, n]. Walks references, O(depth).
inline std::size_t phrase_length(const CompressedString& z, std::size_t i) {
  ParseView view(z);  // rejects ZLW
  std::uint32_t v = detail::node_of_element(z, i);
  std::size_t d = 0;
  while (v != kRoot) {
    v = view.parent(v);
    ++d;
  }
  return d;
}

// O(1) via the explicit trie; works for both schemes.
inline std::size_t phrase_length(const CompressedString& z,
                                 const DictionaryTrie& trie, std::size_t i) {
  if (i > z.size())
    throw parameter_error("element index " + std::to_string(i) +
                          " out of range");
  return trie.depths[trie.block_nodes[i]];
}

namespace detail {

inline std::string decode_tail(const ParseView& view, std::uint32_t v,
                               std::size_t count) {
  std::string out;
  out.resize(count);
  std::size_t at = count;
  while (at > 0) {
    if (v == kRoot)
      throw parameter_error("count exceeds the phrase depth");
    out[--at] = view.label(v);
    v = view.parent(v);
  }
  return out;
}

}  // namespace detail

// Last `count` characters of phrase(z_i), in text order. O(count).
inline std::string decode_path_label(const CompressedString& z, std::size_t i,
                                     std::size_t count) {
  ParseView view(z);
  return detail::decode_tail(view, detail::node_of_element(z, i), count);
}

inline std::string decode_path_label(const CompressedString& z,
                                     const DictionaryTrie& trie, std::size_t i,
                                     std::size_t count) {
  if (i > z.size())
    throw parameter_error("element index " + std::to_string(i) +
                          " out of range");
  ParseView view(z, trie);
  return detail::decode_tail(view, trie.block_nodes[i], count);
}

// "(r,a)" pairs for ZL78 ("(r)" when the final label is absent), "(r)" codes
// for ZLW.
inline std::string to_debug_string(const CompressedString& z) {
  std::string out;
  for (std::size_t i = 1; i <= z.size(); ++i) {
    out.push_back('(');
    out += std::to_string(z.refs[i - 1]);
    if (z.scheme == Scheme::zl78 && z.has_label(i)) {
      out.push_back(',');
      out.push_back(z.labels[i - 1]);
    }
    out.push_back(')');
  }
  return out;
}

}  // namespace czgrep
