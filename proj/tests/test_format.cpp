#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "czgrep/format.hpp"
#include "czgrep/zl78.hpp"
#include "testutil.hpp"

using namespace czgrep;

TEST(Format, BananaGoldenBytes) {
  const CompressedString z = compress("ananasbananer", Scheme::zl78);
  const std::vector<std::uint8_t> expected = {
      'C', 'Z',  '7', '8', 0x01, 0x08,          // header, n = 8
      0,   1,    'a', 0,   1,    'n',           // (0,a)(0,n)
      1,   1,    'n', 1,   1,    's',           // (1,n)(1,s)
      0,   1,    'b', 3,   1,    'a',           // (0,b)(3,a)
      2,   1,    'e', 0,   1,    'r',           // (2,e)(0,r)
  };
  EXPECT_EQ(encode_compressed(z), expected);
}

TEST(Format, ZlwGoldenBytes) {
  const CompressedString z = compress("aaaa", Scheme::zlw);
  // Codes 98, 257, 98; 257 needs two varint bytes; trailing complete flag.
  const std::vector<std::uint8_t> expected = {'C', 'Z',  'L',  'W', 0x01,
                                              0x03, 98,  0x81, 0x02, 98,
                                              0x01};
  EXPECT_EQ(encode_compressed(z), expected);
}

TEST(Format, IncompleteFinalLabelFlag) {
  const CompressedString z = compress("aaaa", Scheme::zl78);
  const auto bytes = encode_compressed(z);
  const CompressedString back = decode_compressed(bytes);
  EXPECT_FALSE(back.final_has_label);
  EXPECT_EQ(back.refs, z.refs);
  EXPECT_EQ(decompress(back), "aaaa");
}

TEST(Format, RoundtripsBothSchemes) {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 100; ++round) {
    const std::string q = testutil::random_bytes(rng, 1500);
    for (Scheme s : {Scheme::zl78, Scheme::zlw}) {
      const CompressedString z = compress(q, s);
      const auto bytes = encode_compressed(z);
      const CompressedString back = decode_compressed(bytes);
      EXPECT_EQ(back.scheme, z.scheme);
      EXPECT_EQ(back.refs, z.refs);
      EXPECT_EQ(decompress(back), q);
      // Re-encoding is byte-identical.
      EXPECT_EQ(encode_compressed(back), bytes);
    }
  }
}

TEST(Format, BadMagicAndVersion) {
  auto bytes = encode_compressed(compress("abc", Scheme::zl78));
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(decode_compressed(bad), format_error);
  bad = bytes;
  bad[4] = 9;
  EXPECT_THROW(decode_compressed(bad), format_error);
}

TEST(Format, TruncationNamesElement) {
  const auto bytes = encode_compressed(compress("ananasbananer", Scheme::zl78));
  // Cut inside element 3's encoding (header is 6 bytes, elements 3 each).
  const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 6 + 7);
  try {
    decode_compressed(cut);
    FAIL() << "expected format_error";
  } catch (const format_error& e) {
    EXPECT_EQ(e.element(), 3u);
  }
}

TEST(Format, TrailingBytesRejected) {
  auto bytes = encode_compressed(compress("abc", Scheme::zl78));
  bytes.push_back(0);
  EXPECT_THROW(decode_compressed(bytes), format_error);
}

TEST(Format, MidStreamMissingLabelRejected) {
  // (0,a)(0,-): label absent on a non-final... the flag only parses on the
  // final element.
  std::vector<std::uint8_t> bytes = {'C', 'Z', '7', '8', 0x01, 0x02,
                                     0,   0,   0,   1,   'b'};
  EXPECT_THROW(decode_compressed(bytes), format_error);
}

TEST(Format, ZlwFinalFlagValidated) {
  auto bytes = encode_compressed(compress("abcabc", Scheme::zlw));
  bytes.back() = 0;
  EXPECT_THROW(decode_compressed(bytes), format_error);
}

TEST(Format, FuzzedInputsNeverCrash) {
  std::mt19937_64 rng(4242);
  const auto base78 = encode_compressed(compress("ananasbananer", Scheme::zl78));
  const auto baseW = encode_compressed(compress("ananasbananer", Scheme::zlw));
  for (int round = 0; round < 3000; ++round) {
    std::vector<std::uint8_t> bytes = rng() % 2 ? base78 : baseW;
    switch (rng() % 3) {
      case 0:  // flip bytes
        for (int f = 0; f < 3; ++f)
          bytes[rng() % bytes.size()] = std::uint8_t(rng());
        break;
      case 1:  // truncate
        bytes.resize(rng() % (bytes.size() + 1));
        break;
      default: {  // random soup
        bytes.clear();
        const std::size_t len = rng() % 64;
        for (std::size_t i = 0; i < len; ++i)
          bytes.push_back(std::uint8_t(rng()));
        break;
      }
    }
    try {
      const CompressedString z = decode_compressed(bytes);
      (void)decompress(z);  // decoding whatever parsed must also be safe
    } catch (const error&) {
      // rejected gracefully
    }
  }
}
