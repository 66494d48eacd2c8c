#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "czgrep/error.hpp"
#include "czgrep/zl78.hpp"

namespace czgrep {

inline constexpr char kMagicZl78[4] = {'C', 'Z', '7', '8'};
inline constexpr char kMagicZlw[4] = {'C', 'Z', 'L', 'W'};
inline constexpr std::uint8_t kFormatVersion = 1;

namespace detail {

inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(value) | 0x80);
    value >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(value));
}

class ByteReader {
 public:
  ByteReader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  std::size_t offset() const noexcept { return at_; }
  bool done() const noexcept { return at_ == size_; }

  std::uint8_t byte(std::size_t element = format_error::npos) {
    if (at_ >= size_)
      throw format_error("unexpected end of data", at_, element);
    return data_[at_++];
  }

  std::uint64_t varint(std::size_t element = format_error::npos) {
    std::uint64_t value = 0;
    unsigned shift = 0;
    while (true) {
      if (shift > 63)
        throw format_error("varint too long", at_, element);
      const std::uint8_t b = byte(element);
      value |= std::uint64_t(b & 0x7f) << shift;
      if (!(b & 0x80)) return value;
      shift += 7;
    }
  }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t at_ = 0;
};

}  // namespace detail

inline std::vector<std::uint8_t> encode_compressed(const CompressedString& z) {
  validate(z);
  std::vector<std::uint8_t> out;
  out.reserve(8 + 2 * z.size());
  const char* magic = z.scheme == Scheme::zl78 ? kMagicZl78 : kMagicZlw;
  out.insert(out.end(), magic, magic + 4);
  out.push_back(kFormatVersion);
  detail::put_varint(out, z.size());
  for (std::size_t i = 1; i <= z.size(); ++i) {
    detail::put_varint(out, z.refs[i - 1]);
    if (z.scheme == Scheme::zl78) {
      out.push_back(z.has_label(i) ? 1 : 0);
      if (z.has_label(i)) out.push_back(std::uint8_t(z.labels[i - 1]));
    }
  }
  if (z.scheme == Scheme::zlw) out.push_back(1);  // final phrase complete
  return out;
}

inline CompressedString decode_compressed(const std::uint8_t* data,
                                          std::size_t size) {
  detail::ByteReader in(data, size);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(in.byte());
  Scheme scheme;
  if (std::string_view(magic, 4) == std::string_view(kMagicZl78, 4))
    scheme = Scheme::zl78;
  else if (std::string_view(magic, 4) == std::string_view(kMagicZlw, 4))
    scheme = Scheme::zlw;
  else
    throw format_error("bad magic bytes", 0);
  const std::uint8_t version = in.byte();
  if (version != kFormatVersion)
    throw format_error("unsupported format version " + std::to_string(version),
                       4);
  const std::uint64_t n = in.varint();
  if (n > (std::size_t(1) << 32))
    throw format_error("element count " + std::to_string(n) +
                           " is implausibly large",
                       5);
  CompressedString z;
  z.scheme = scheme;
  z.refs.reserve(n);
  if (scheme == Scheme::zl78) z.labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::uint64_t ref = in.varint(i);
    if (scheme == Scheme::zl78) {
      if (ref >= i)
        throw format_error("reference " + std::to_string(ref) +
                               " of element " + std::to_string(i) +
                               " is not smaller than the element index",
                           in.offset(), i);
      const std::uint8_t flag = in.byte(i);
      if (flag > 1)
        throw format_error("bad label-present flag", in.offset() - 1, i);
      if (flag == 0 && i != n)
        throw format_error("label absent on a non-final element",
                           in.offset() - 1, i);
      z.refs.push_back(static_cast<std::uint32_t>(ref));
      if (flag) {
        z.labels.push_back(static_cast<char>(in.byte(i)));
      } else {
        z.labels.push_back('\0');
        z.final_has_label = false;
      }
    } else {
      const std::uint64_t hi = kZlwPreload + (i > 1 ? i - 1 : 0);
      if (ref == 0 || ref > hi)
        throw format_error("code " + std::to_string(ref) + " of element " +
                               std::to_string(i) + " is outside [1, " +
                               std::to_string(hi) + "]",
                           in.offset(), i);
      z.refs.push_back(static_cast<std::uint32_t>(ref));
    }
  }
  if (scheme == Scheme::zlw) {
    const std::uint8_t flag = in.byte();
    if (flag != 1)
      throw format_error("unsupported final-phrase flag " +
                             std::to_string(flag),
                         in.offset() - 1);
  }
  if (!in.done())
    throw format_error("trailing bytes after the element stream", in.offset());
  return z;
}

inline CompressedString decode_compressed(
    const std::vector<std::uint8_t>& data) {
  return decode_compressed(data.data(), data.size());
}

inline void write_compressed_file(const std::string& path,
                                  const CompressedString& z) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cannot open " + path + " for writing");
  const auto bytes = encode_compressed(z);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw error("write to " + path + " failed");
}

inline CompressedString read_compressed_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_compressed(bytes);
}

}  // namespace czgrep
