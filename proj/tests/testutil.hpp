#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace testutil {

inline std::string random_text(std::mt19937_64& rng, std::string_view alphabet,
                               std::size_t max_len, std::size_t min_len = 0) {
  const std::size_t len =
      min_len + (max_len > min_len ? rng() % (max_len - min_len + 1) : 0);
  std::string out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(alphabet[rng() % alphabet.size()]);
  return out;
}

inline std::string random_bytes(std::mt19937_64& rng, std::size_t max_len) {
  const std::size_t len = rng() % (max_len + 1);
  std::string out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(static_cast<char>(rng() % 256));
  return out;
}

// Textbook LZW decoder over a plain string dictionary, used as an
// independent reference for the ZLW codec. Codes: 1..256 are single bytes,
// 257 onward the entries added during decoding. Returns the block sequence.
inline std::vector<std::string> reference_zlw_blocks(
    const std::vector<std::uint32_t>& codes) {
  std::vector<std::string> dict(257);
  for (unsigned b = 0; b < 256; ++b) dict[b + 1] = std::string(1, char(b));
  std::vector<std::string> blocks;
  std::string prev;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const std::uint32_t c = codes[i];
    std::string w;
    if (c >= 1 && c < dict.size()) {
      w = dict[c];
    } else if (c == dict.size() && !prev.empty()) {
      w = prev + prev[0];
    } else {
      throw std::runtime_error("reference decoder: bad code");
    }
    if (!prev.empty()) dict.push_back(prev + w[0]);
    blocks.push_back(w);
    prev = w;
  }
  return blocks;
}

}  // namespace testutil
