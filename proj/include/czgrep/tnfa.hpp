#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "czgrep/error.hpp"

namespace czgrep {

// Syntax tree over literals, concatenation, alternation and star. Size m is
// the length of the source string, the unit all automaton bounds refer to.
class Regex {
 public:
  enum class Kind : std::uint8_t { literal, concat, alternation, star };

  struct Node {
    Kind kind;
    char ch = '\0';           // literal only
    std::uint32_t left = 0;   // child / left child
    std::uint32_t right = 0;  // right child
  };

  std::vector<Node> nodes;
  std::uint32_t root = 0;
  std::string source;

  std::size_t size() const noexcept { return source.size(); }
};

namespace detail {

class RegexParser {
 public:
  explicit RegexParser(std::string_view src) : src_(src) {}

  Regex parse() {
    if (src_.empty()) throw syntax_error("empty pattern", 1);
    Regex r;
    r.source.assign(src_);
    r.root = alternation(r, 0);
    if (at_ < src_.size()) {
      // The only way to stop early is an unmatched ')'.
      throw syntax_error("unmatched ')'", at_ + 1);
    }
    return r;
  }

 private:
  std::uint32_t alternation(Regex& r, std::size_t depth) {
    std::uint32_t left = concat(r, depth);
    while (at_ < src_.size() && src_[at_] == '|') {
      ++at_;
      std::uint32_t right = concat(r, depth);
      r.nodes.push_back({Regex::Kind::alternation, '\0', left, right});
      left = static_cast<std::uint32_t>(r.nodes.size() - 1);
    }
    return left;
  }

  std::uint32_t concat(Regex& r, std::size_t depth) {
    std::uint32_t left = repeat(r, depth);
    while (at_ < src_.size() && src_[at_] != '|' && src_[at_] != ')') {
      std::uint32_t right = repeat(r, depth);
      r.nodes.push_back({Regex::Kind::concat, '\0', left, right});
      left = static_cast<std::uint32_t>(r.nodes.size() - 1);
    }
    return left;
  }

  std::uint32_t repeat(Regex& r, std::size_t depth) {
    std::uint32_t child = atom(r, depth);
    while (at_ < src_.size() && src_[at_] == '*') {
      ++at_;
      r.nodes.push_back({Regex::Kind::star, '\0', child, 0});
      child = static_cast<std::uint32_t>(r.nodes.size() - 1);
    }
    return child;
  }

  std::uint32_t atom(Regex& r, std::size_t depth) {
    if (at_ >= src_.size())
      throw syntax_error("expected an expression", at_ + 1);
    const char c = src_[at_];
    if (c == '(') {
      if (depth > 1000) throw syntax_error("too deeply nested", at_ + 1);
      const std::size_t open = at_++;
      std::uint32_t inner = alternation(r, depth + 1);
      if (at_ >= src_.size() || src_[at_] != ')')
        throw syntax_error("unmatched '('", open + 1);
      ++at_;
      return inner;
    }
    if (c == ')' || c == '|' || c == '*')
      throw syntax_error(std::string("dangling '") + c + "'", at_ + 1);
    if (c == '\\') {
      if (at_ + 1 >= src_.size())
        throw syntax_error("trailing escape", at_ + 1);
      at_ += 2;
      r.nodes.push_back({Regex::Kind::literal, src_[at_ - 1], 0, 0});
      return static_cast<std::uint32_t>(r.nodes.size() - 1);
    }
    ++at_;
    r.nodes.push_back({Regex::Kind::literal, c, 0, 0});
    return static_cast<std::uint32_t>(r.nodes.size() - 1);
  }

  std::string_view src_;
  std::size_t at_ = 0;
};

}  // namespace detail

// Star binds tightest, then concatenation, then alternation. Backslash
// escapes make any metacharacter literal. Errors carry a 1-based position.
inline Regex parse_regex(std::string_view source) {
  return detail::RegexParser(source).parse();
}

// Thompson automaton: at most 2m states and 4m transitions for a pattern of
// length m, single start and single accepting state.
struct Tnfa {
  static constexpr std::int16_t kEpsilon = -1;

  struct Edge {
    std::uint32_t to;
    std::int16_t label;  // kEpsilon or a byte value 0..255
  };

  std::vector<std::vector<Edge>> out;
  std::vector<std::vector<Edge>> in;  // reversed edges
  std::uint32_t start = 0;
  std::uint32_t accept = 0;

  std::size_t state_count() const noexcept { return out.size(); }

  std::size_t transition_count() const noexcept {
    std::size_t total = 0;
    for (const auto& edges : out) total += edges.size();
    return total;
  }
};

namespace detail {

struct TnfaBuilder {
  Tnfa a;

  std::uint32_t add_state() {
    a.out.emplace_back();
    return static_cast<std::uint32_t>(a.out.size() - 1);
  }

  void add_edge(std::uint32_t from, std::uint32_t to, std::int16_t label) {
    a.out[from].push_back({to, label});
  }

  struct Fragment {
    std::uint32_t start, accept;
  };

  Fragment build(const Regex& r, std::uint32_t node) {
    const Regex::Node& nd = r.nodes[node];
    switch (nd.kind) {
      case Regex::Kind::literal: {
        std::uint32_t s = add_state(), t = add_state();
        add_edge(s, t, static_cast<std::int16_t>(std::uint8_t(nd.ch)));
        return {s, t};
      }
      case Regex::Kind::concat: {
        Fragment lhs = build(r, nd.left);
        Fragment rhs = build(r, nd.right);
        add_edge(lhs.accept, rhs.start, Tnfa::kEpsilon);
        return {lhs.start, rhs.accept};
      }
      case Regex::Kind::alternation: {
        Fragment lhs = build(r, nd.left);
        Fragment rhs = build(r, nd.right);
        std::uint32_t s = add_state(), t = add_state();
        add_edge(s, lhs.start, Tnfa::kEpsilon);
        add_edge(s, rhs.start, Tnfa::kEpsilon);
        add_edge(lhs.accept, t, Tnfa::kEpsilon);
        add_edge(rhs.accept, t, Tnfa::kEpsilon);
        return {s, t};
      }
      case Regex::Kind::star: {
        Fragment sub = build(r, nd.left);
        std::uint32_t s = add_state(), t = add_state();
        add_edge(s, sub.start, Tnfa::kEpsilon);
        add_edge(s, t, Tnfa::kEpsilon);
        add_edge(sub.accept, sub.start, Tnfa::kEpsilon);
        add_edge(sub.accept, t, Tnfa::kEpsilon);
        return {s, t};
      }
    }
    throw error("corrupt regex node");
  }
};

}  // namespace detail

inline Tnfa build_tnfa(const Regex& r) {
  detail::TnfaBuilder b;
  auto frag = b.build(r, r.root);
  b.a.start = frag.start;
  b.a.accept = frag.accept;
  b.a.in.resize(b.a.out.size());
  for (std::uint32_t s = 0; s < b.a.out.size(); ++s)
    for (const auto& e : b.a.out[s]) b.a.in[e.to].push_back({s, e.label});
  return b.a;
}

// A set of automaton states, kept sorted. Representation is an
// implementation detail; equality and iteration are what the engines use.
class StateSet {
 public:
  StateSet() = default;

  explicit StateSet(std::vector<std::uint32_t> states)
      : states_(std::move(states)) {
    std::sort(states_.begin(), states_.end());
    states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
  }

  static StateSet single(std::uint32_t s) { return StateSet({s}); }

  bool contains(std::uint32_t s) const {
    return std::binary_search(states_.begin(), states_.end(), s);
  }

  bool empty() const noexcept { return states_.empty(); }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<std::uint32_t>& states() const noexcept { return states_; }

  bool operator==(const StateSet&) const = default;

 private:
  std::vector<std::uint32_t> states_;
};

// Breadth-first state-set operations with reusable scratch space.
class TnfaSimulator {
 public:
  explicit TnfaSimulator(const Tnfa& a)
      : a_(&a), mark_(a.state_count(), 0) {}

  const Tnfa& automaton() const noexcept { return *a_; }

  StateSet closure(const StateSet& s) { return expand(s.states(), nullptr); }

  // One character move followed by epsilon closure; the input is closed
  // first, so callers need not maintain closedness themselves.
  StateSet step(const StateSet& s, char c) {
    StateSet closed = expand(s.states(), nullptr);
    std::vector<std::uint32_t> moved;
    for (std::uint32_t st : closed.states())
      for (const auto& e : a_->out[st])
        if (e.label == std::int16_t(std::uint8_t(c))) moved.push_back(e.to);
    return expand(moved, nullptr);
  }

  // As step, but with the start state injected first: the move that finds
  // matches beginning at the current position.
  StateSet step_with_start(const StateSet& s, char c) {
    StateSet withStart = s;
    if (!withStart.contains(a_->start)) {
      auto states = withStart.states();
      states.push_back(a_->start);
      withStart = StateSet(std::move(states));
    }
    return step(withStart, c);
  }

  // Reverse-direction analogues, used to answer "from which states does a
  // string reach the accepting state".
  StateSet reverse_closure(const StateSet& s) {
    return expand(s.states(), &Tnfa::in);
  }

  StateSet reverse_step(const StateSet& s, char c) {
    std::vector<std::uint32_t> moved;
    for (std::uint32_t st : s.states())
      for (const auto& e : a_->in[st])
        if (e.label == std::int16_t(std::uint8_t(c))) moved.push_back(e.to);
    return expand(moved, &Tnfa::in);
  }

 private:
  using AdjMember = std::vector<std::vector<Tnfa::Edge>> Tnfa::*;

  StateSet expand(const std::vector<std::uint32_t>& seeds, AdjMember reversed) {
    const auto& adj = reversed ? a_->*reversed : a_->out;
    std::vector<std::uint32_t> result;
    for (std::uint32_t s : seeds) {
      if (mark_[s]) continue;
      mark_[s] = 1;
      result.push_back(s);
    }
    for (std::size_t head = 0; head < result.size(); ++head) {
      for (const auto& e : adj[result[head]]) {
        if (e.label != Tnfa::kEpsilon || mark_[e.to]) continue;
        mark_[e.to] = 1;
        result.push_back(e.to);
      }
    }
    for (std::uint32_t s : result) mark_[s] = 0;
    std::sort(result.begin(), result.end());
    StateSet out;
    out = StateSet(std::move(result));
    return out;
  }

  const Tnfa* a_;
  std::vector<std::uint8_t> mark_;
};

// delta: epsilon closure of the one-character moves out of S.
inline StateSet state_set_transition(const Tnfa& a, const StateSet& s,
                                     char c) {
  TnfaSimulator sim(a);
  return sim.step(s, c);
}

// delta-bar: as delta but with the start state re-injected, so runs may
// begin at any position.
inline StateSet prefix_match_transition(const Tnfa& a, const StateSet& s,
                                        char c) {
  TnfaSimulator sim(a);
  return sim.step_with_start(s, c);
}

inline bool accepts_empty(const Tnfa& a) {
  TnfaSimulator sim(a);
  return sim.closure(StateSet::single(a.start)).contains(a.accept);
}

}  // namespace czgrep
