#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "czgrep/tnfa.hpp"

namespace czgrep {

// Reference implementations for the two search problems, written against the
// definitions rather than the engine code so the two sides cannot share a
// bug, plus a deterministic generator of randomized test cases.

enum class CaseProfile { binary, dna, english_like, pathological_unary };

struct OracleCase {
  std::uint64_t seed = 0;
  CaseProfile profile = CaseProfile::binary;
  std::string text;
  std::string pattern;
  std::size_t max_errors = 0;
  std::string regex_source;
  std::size_t tau = 1;
};

struct CaseLimits {
  std::size_t max_text = 2000;
  std::size_t max_pattern = 20;
  std::size_t max_errors = 5;
  std::size_t max_regex = 12;
  std::size_t max_nesting = 3;
};

// Full dynamic-programming table, no pruning, no sharing with the engine's
// column-rolling matcher.
inline std::vector<std::size_t> oracle_approx(std::string_view text,
                                              std::string_view pattern,
                                              std::size_t k) {
  const std::size_t m = pattern.size();
  const std::size_t u = text.size();
  std::vector<std::size_t> out;
  if (m == 0) return out;
  std::vector<std::vector<std::size_t>> d(
      m + 1, std::vector<std::size_t>(u + 1, 0));
  for (std::size_t i = 1; i <= m; ++i) d[i][0] = i;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= u; ++j) {
      std::size_t best = d[i - 1][j] + 1;
      if (d[i][j - 1] + 1 < best) best = d[i][j - 1] + 1;
      const std::size_t diag =
          d[i - 1][j - 1] + (pattern[i - 1] == text[j - 1] ? 0 : 1);
      if (diag < best) best = diag;
      d[i][j] = best;
    }
  }
  for (std::size_t j = 1; j <= u; ++j)
    if (d[m][j] <= k) out.push_back(j);
  return out;
}

namespace detail {

inline void oracle_close(const Tnfa& a, std::set<std::uint32_t>& s) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::uint32_t st : std::vector<std::uint32_t>(s.begin(), s.end()))
      for (const auto& e : a.out[st])
        if (e.label == Tnfa::kEpsilon && s.insert(e.to).second) grew = true;
  }
}

}  // namespace detail

// Character-by-character scan of the uncompressed text, re-injecting the
// start state before every step. A pattern accepting the empty string
// matches at every position, mirroring the engine's convention.
inline std::vector<std::size_t> oracle_regex(std::string_view text,
                                             const Regex& r) {
  const Tnfa a = build_tnfa(r);
  std::vector<std::size_t> out;
  std::set<std::uint32_t> cur{a.start};
  detail::oracle_close(a, cur);
  if (cur.count(a.accept)) {
    for (std::size_t j = 1; j <= text.size(); ++j) out.push_back(j);
    return out;
  }
  for (std::size_t j = 1; j <= text.size(); ++j) {
    cur.insert(a.start);
    detail::oracle_close(a, cur);
    std::set<std::uint32_t> next;
    for (std::uint32_t st : cur)
      for (const auto& e : a.out[st])
        if (e.label == std::int16_t(std::uint8_t(text[j - 1])))
          next.insert(e.to);
    detail::oracle_close(a, next);
    cur = std::move(next);
    if (cur.count(a.accept)) out.push_back(j);
  }
  return out;
}

namespace detail {

inline std::string_view profile_pool(CaseProfile p) {
  switch (p) {
    case CaseProfile::binary:
      return "ab";
    case CaseProfile::dna:
      return "acgt";
    case CaseProfile::english_like:
      // Rough letter frequencies plus spaces.
      return "aaaaaabbcccddddeeeeeeeeeeffggghhhhhiiiiiiijkllllmmmnnnnnnn"
             "ooooooopppqrrrrrrssssssttttttttuuuvwwxyyz    ";
    case CaseProfile::pathological_unary:
      return "a";
  }
  return "ab";
}

class RegexSourceGen {
 public:
  RegexSourceGen(std::mt19937_64& rng, std::string_view alphabet,
                 std::size_t max_nesting)
      : rng_(rng), alphabet_(alphabet), max_nesting_(max_nesting) {}

  std::string gen(std::size_t budget, std::size_t depth, bool allow_union) {
    if (budget <= 1) return literal();
    switch (rng_() % 4) {
      case 0: {  // star
        if (budget < 2) return literal();
        std::string child = depth < max_nesting_ && budget >= 4 && coin()
                                ? gen(budget - 3, depth + 1, true)
                                : literal();
        if (child.size() == 1) return child + "*";
        if (depth >= max_nesting_) return child;
        return "(" + child + ")*";
      }
      case 1: {  // union
        if (!allow_union) {
          if (depth < max_nesting_ && budget >= 5) {
            std::string left = gen((budget - 3) / 2, depth + 1, true);
            std::string right =
                gen(budget - 3 - left.size(), depth + 1, true);
            return "(" + left + "|" + right + ")";
          }
          return literal();
        }
        if (budget < 3) return literal();
        std::string left = gen((budget - 1) / 2, depth, true);
        std::string right = gen(budget - 1 - left.size(), depth, true);
        return left + "|" + right;
      }
      case 2: {  // concatenation
        if (budget < 2) return literal();
        std::string left = gen(budget / 2, depth, false);
        std::string right = gen(budget - left.size(), depth, false);
        return left + right;
      }
      default:
        return literal();
    }
  }

 private:
  bool coin() { return rng_() % 2 == 0; }

  std::string literal() {
    return std::string(1, alphabet_[rng_() % alphabet_.size()]);
  }

  std::mt19937_64& rng_;
  std::string_view alphabet_;
  std::size_t max_nesting_;
};

}  // namespace detail

// Deterministic in (seed, profile, limits).
inline OracleCase random_case(std::uint64_t seed, CaseProfile profile,
                              const CaseLimits& limits = {}) {
  std::mt19937_64 rng(seed * 1099511628211ULL +
                      (static_cast<std::uint64_t>(profile) + 1) *
                          0x9e3779b97f4a7c15ULL);
  OracleCase c;
  c.seed = seed;
  c.profile = profile;
  const std::string_view pool = detail::profile_pool(profile);
  const std::size_t u = 1 + rng() % limits.max_text;
  c.text.reserve(u);
  for (std::size_t i = 0; i < u; ++i)
    c.text.push_back(pool[rng() % pool.size()]);

  const std::size_t max_m = std::max<std::size_t>(1, limits.max_pattern);
  if (rng() % 2 == 0 || c.text.empty()) {
    const std::size_t m = 1 + rng() % max_m;
    for (std::size_t i = 0; i < m; ++i)
      c.pattern.push_back(pool[rng() % pool.size()]);
  } else {
    // Substring of the text with a few random edits; keeps the match rate
    // of the generated corpus away from zero.
    const std::size_t len = 1 + rng() % std::min(max_m, c.text.size());
    const std::size_t at = rng() % (c.text.size() - len + 1);
    c.pattern = c.text.substr(at, len);
    const std::size_t edits = rng() % 3;
    for (std::size_t e = 0; e < edits && !c.pattern.empty(); ++e) {
      const std::size_t pos = rng() % c.pattern.size();
      switch (rng() % 3) {
        case 0:
          c.pattern[pos] = pool[rng() % pool.size()];
          break;
        case 1:
          if (c.pattern.size() > 1) c.pattern.erase(pos, 1);
          break;
        default:
          if (c.pattern.size() < max_m)
            c.pattern.insert(pos, 1, pool[rng() % pool.size()]);
          break;
      }
    }
  }
  const std::size_t k_cap =
      std::min(limits.max_errors, c.pattern.size() - 1);
  c.max_errors = k_cap == 0 ? 0 : rng() % (k_cap + 1);

  detail::RegexSourceGen gen(rng, pool, limits.max_nesting);
  c.regex_source = gen.gen(std::max<std::size_t>(1, limits.max_regex), 0, true);
  c.tau = 1 + rng() % 64;
  return c;
}

}  // namespace czgrep
