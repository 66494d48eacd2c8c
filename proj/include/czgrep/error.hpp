#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace czgrep {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to a library operation (bad tau, k >= m, index out of
// range, count past the phrase depth, ...).
class parameter_error : public error {
 public:
  using error::error;
};

// Malformed compressed data. Carries the byte offset in the input and,
// when known, the index of the element being decoded.
class format_error : public error {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  explicit format_error(const std::string& msg, std::size_t byte_offset = npos,
                        std::size_t element = npos)
      : error(msg), byte_offset_(byte_offset), element_(element) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }
  std::size_t element() const noexcept { return element_; }

 private:
  std::size_t byte_offset_;
  std::size_t element_;
};

// Regular expression syntax error; position is 1-based in the source.
class syntax_error : public error {
 public:
  syntax_error(const std::string& msg, std::size_t position)
      : error(msg), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Operation requested in a mode that cannot support it (e.g. phrase
// navigation on ZLW data without the explicit dictionary trie).
class config_error : public error {
 public:
  using error::error;
};

}  // namespace czgrep
