#pragma once

#include <cstddef>
#include <optional>

namespace czgrep {

// Resource counters filled in by the search engines. The live-character and
// live-description peaks are the quantities the tau trade-off moves around.
struct StatsRecord {
  std::size_t element_count = 0;  // n
  std::size_t text_length = 0;    // u
  std::size_t pattern_size = 0;   // m
  std::optional<std::size_t> max_errors;  // k, approximate search only
  std::size_t tau = 0;            // effective (clamped) value
  std::size_t selected_count = 0;  // members of the selected set, root included
  std::size_t peak_live_descriptions = 0;
  std::size_t peak_live_chars = 0;
  std::size_t match_count = 0;
  double wall_time_ms = 0.0;
};

}  // namespace czgrep
