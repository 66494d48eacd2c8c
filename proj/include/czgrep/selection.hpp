#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "czgrep/error.hpp"
#include "czgrep/tnfa.hpp"
#include "czgrep/zl78.hpp"

namespace czgrep {

// Data attached to a selected element. phrase_length is always present;
// shortcut points at the ancestor of depth exactly window (approximate-search
// mode, stored iff the phrase is longer than the window); transition_sets[s]
// caches where the automaton can be after reading the member's phrase from
// state s (regex mode).
struct SelectionPayload {
  std::uint32_t phrase_length = 0;
  std::optional<std::uint32_t> shortcut;
  std::vector<StateSet> transition_sets;
};

// The sampled subset of trie nodes. Every node reaches a member within
// 2*tau reference steps (both endpoints counted), and the member count stays
// within 1 + nodes/tau. The dictionary is an ordinary hash map: expected
// constant time per operation is all the construction needs.
class SelectedSet {
 public:
  std::size_t tau() const noexcept { return tau_; }
  std::size_t size() const noexcept { return members_.size(); }

  bool contains(std::uint32_t v) const { return members_.count(v) != 0; }

  const SelectionPayload& payload(std::uint32_t v) const {
    return members_.at(v);
  }

 private:
  friend class SelectionBuilder;
  std::size_t tau_ = 1;
  std::unordered_map<std::uint32_t, SelectionPayload> members_;
};

// Walk the reference path from v (inclusive) to the first member. Returns
// that member and the traversed nodes; the path never exceeds 2*tau nodes.
inline std::pair<std::uint32_t, std::vector<std::uint32_t>> nearest_member(
    const ParseView& view, const SelectedSet& c, std::uint32_t v) {
  std::vector<std::uint32_t> path;
  path.push_back(v);
  while (!c.contains(v)) {
    v = view.parent(v);
    path.push_back(v);
  }
  return {v, std::move(path)};
}

struct ApproxPayloadSpec {
  std::size_t pattern_length;  // m
  std::size_t max_errors;      // k, must stay below m
};

class SelectionBuilder {
 public:
  enum class Mode { none, approx, regex };

  SelectionBuilder(const ParseView& view, std::size_t tau)
      : view_(view), mode_(Mode::none) {
    init_tau(tau);
  }

  SelectionBuilder(const ParseView& view, std::size_t tau,
                   ApproxPayloadSpec spec)
      : view_(view), mode_(Mode::approx), window_(0) {
    if (spec.max_errors >= spec.pattern_length)
      throw parameter_error("error threshold must be smaller than the pattern");
    window_ = spec.pattern_length + spec.max_errors;
    init_tau(tau);
  }

  SelectionBuilder(const ParseView& view, std::size_t tau, const Tnfa& a)
      : view_(view), mode_(Mode::regex), sim_(a) {
    init_tau(tau);
  }

  SelectedSet build() {
    SelectedSet c;
    c.tau_ = tau_;
    c.members_.emplace(kRoot, root_payload());
    const std::size_t nodes = view_.node_count();
    std::vector<std::uint32_t> path;
    for (std::uint32_t v = 1; v < nodes; ++v) {
      path.clear();
      std::uint32_t w = v;
      path.push_back(w);
      while (!c.members_.count(w)) {
        w = view_.parent(w);
        path.push_back(w);
      }
      assert(path.size() <= 2 * tau_);
      if (path.size() >= 2 * tau_) insert_member(c, path);
    }
    return c;
  }

 private:
  void init_tau(std::size_t tau) {
    if (tau < 1) throw parameter_error("tau must be at least 1");
    const std::size_t n = view_.node_count() > 1 ? view_.node_count() - 1 : 1;
    tau_ = tau > n ? n : tau;
  }

  SelectionPayload root_payload() const {
    SelectionPayload p;
    p.phrase_length = 0;
    if (mode_ == Mode::regex) {
      const std::size_t states = sim_->automaton().state_count();
      p.transition_sets.reserve(states);
      for (std::uint32_t s = 0; s < states; ++s)
        p.transition_sets.push_back(StateSet::single(s));
    }
    return p;
  }

  // path runs from the processed node down at index 0 up to the nearest
  // member y at the back. The new member is the tau-th node on the path.
  void insert_member(SelectedSet& c, const std::vector<std::uint32_t>& path) {
    const std::uint32_t y = path.back();
    const SelectionPayload& ypay = c.members_.at(y);
    const std::uint32_t member = path[tau_ - 1];
    SelectionPayload p;
    p.phrase_length = ypay.phrase_length +
                      static_cast<std::uint32_t>(path.size() - tau_);
    if (mode_ == Mode::approx) fill_shortcut(c, path, ypay, p);
    if (mode_ == Mode::regex) fill_transition_sets(path, ypay, p);
    c.members_.emplace(member, std::move(p));
  }

  void fill_shortcut(const SelectedSet& c,
                     const std::vector<std::uint32_t>& path,
                     const SelectionPayload& ypay, SelectionPayload& p) {
    if (p.phrase_length <= window_) return;
    const std::uint32_t ydepth = ypay.phrase_length;
    if (ydepth == window_) {
      p.shortcut = path.back();
      return;
    }
    if (ydepth > window_) {
      // The member's own shortcut already names the right ancestor.
      p.shortcut = ypay.shortcut;
      assert(p.shortcut.has_value());
      return;
    }
    // The ancestor sits on the walked path: path[0] has depth
    // ydepth + path.size() - 1, each step towards the back loses one.
    const std::size_t head_depth = ydepth + path.size() - 1;
    p.shortcut = path[head_depth - window_];
  }

  void fill_transition_sets(const std::vector<std::uint32_t>& path,
                            const SelectionPayload& ypay,
                            SelectionPayload& p) {
    const std::size_t states = sim_->automaton().state_count();
    p.transition_sets.reserve(states);
    for (std::uint32_t s = 0; s < states; ++s) {
      StateSet set = ypay.transition_sets[s];
      // Descend from y to the new member, one labelled edge at a time.
      for (std::size_t idx = path.size() - 1; idx-- > tau_ - 1;)
        set = sim_->step_with_start(set, view_.label(path[idx]));
      p.transition_sets.push_back(std::move(set));
    }
  }

  const ParseView& view_;
  Mode mode_;
  std::size_t tau_ = 1;
  std::size_t window_ = 0;  // m + k, approx mode
  std::optional<TnfaSimulator> sim_;
};

inline SelectedSet build_selected_set(const ParseView& view, std::size_t tau) {
  return SelectionBuilder(view, tau).build();
}

inline SelectedSet build_selected_set(const ParseView& view, std::size_t tau,
                                      ApproxPayloadSpec spec) {
  return SelectionBuilder(view, tau, spec).build();
}

inline SelectedSet build_selected_set(const ParseView& view, std::size_t tau,
                                      const Tnfa& a) {
  return SelectionBuilder(view, tau, a).build();
}

}  // namespace czgrep
