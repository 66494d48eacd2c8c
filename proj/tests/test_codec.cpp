#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>
#include <string>

#include "czgrep/format.hpp"
#include "czgrep/zl78.hpp"
#include "testutil.hpp"

using namespace czgrep;

namespace {

const std::string kBananaText = "ananasbananer";

CompressedString banana78() { return compress(kBananaText, Scheme::zl78); }

}  // namespace

TEST(Zl78Parse, BananaGolden) {
  const CompressedString z = banana78();
  const std::vector<std::uint32_t> refs = {0, 0, 1, 1, 0, 3, 2, 0};
  EXPECT_EQ(z.refs, refs);
  EXPECT_EQ(z.labels, "annsbaer");
  EXPECT_TRUE(z.final_has_label);
  EXPECT_EQ(to_debug_string(z), "(0,a)(0,n)(1,n)(1,s)(0,b)(3,a)(2,e)(0,r)");
}

TEST(Zl78Parse, EmptyInput) {
  const CompressedString z = compress("", Scheme::zl78);
  EXPECT_EQ(z.size(), 0u);
  EXPECT_EQ(decompress(z), "");
}

TEST(Zl78Parse, IncompleteFinalPhrase) {
  // "aaaa" ends while still matching the phrase "a".
  const CompressedString z = compress("aaaa", Scheme::zl78);
  const std::vector<std::uint32_t> refs = {0, 1, 1};
  EXPECT_EQ(z.refs, refs);
  EXPECT_FALSE(z.final_has_label);
  EXPECT_EQ(to_debug_string(z), "(0,a)(1,a)(1)");
  EXPECT_EQ(decompress(z), "aaaa");
}

TEST(Zl78Parse, GreedyPrefixInvariant) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    const std::string q = testutil::random_text(rng, "ab", 400);
    const CompressedString z = compress(q, Scheme::zl78);
    // Every phrase extends an existing phrase by one character, and all
    // complete phrases are distinct.
    std::set<std::string> phrases = {""};
    std::string rebuilt;
    for (std::size_t i = 1; i <= z.size(); ++i) {
      const std::size_t len = phrase_length(z, i);
      const std::string phrase = decode_path_label(z, i, len);
      if (z.has_label(i)) {
        EXPECT_TRUE(phrases.count(phrase.substr(0, phrase.size() - 1)));
        EXPECT_TRUE(phrases.insert(phrase).second);
      } else {
        EXPECT_TRUE(phrases.count(phrase));
        EXPECT_EQ(i, z.size());
      }
      rebuilt += phrase;
    }
    EXPECT_EQ(rebuilt, q);
  }
}

TEST(Zl78Roundtrip, RandomTexts) {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 200; ++round) {
    const std::string q = testutil::random_bytes(rng, 2000);
    EXPECT_EQ(decompress(compress(q, Scheme::zl78)), q);
  }
  // A couple of long structured ones.
  std::string unary(10000, 'a');
  EXPECT_EQ(decompress(compress(unary, Scheme::zl78)), unary);
}

TEST(Zl78PhraseLength, Golden) {
  const CompressedString z = banana78();
  EXPECT_EQ(phrase_length(z, 0), 0u);
  const std::size_t expected[] = {1, 1, 2, 2, 1, 3, 2, 1};
  for (std::size_t i = 1; i <= 8; ++i)
    EXPECT_EQ(phrase_length(z, i), expected[i - 1]) << "element " << i;
  // Sum of phrase lengths covers the text.
  std::size_t total = 0;
  for (std::size_t i = 1; i <= 8; ++i) total += phrase_length(z, i);
  EXPECT_EQ(total, kBananaText.size());
  EXPECT_THROW(phrase_length(z, 9), parameter_error);
}

TEST(Zl78DecodePathLabel, Golden) {
  const CompressedString z = banana78();
  EXPECT_EQ(decode_path_label(z, 7, 2), "ne");
  EXPECT_EQ(decode_path_label(z, 6, 3), "ana");
  EXPECT_EQ(decode_path_label(z, 6, 2), "na");
  EXPECT_EQ(decode_path_label(z, 5, 0), "");
  EXPECT_THROW(decode_path_label(z, 5, 2), parameter_error);
}

TEST(Zl78DecodePathLabel, MatchesDecompressedSlices) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 30; ++round) {
    const std::string q = testutil::random_text(rng, "acgt", 500);
    const CompressedString z = compress(q, Scheme::zl78);
    const std::string back = decompress(z);
    std::size_t at = 0;
    for (std::size_t i = 1; i <= z.size(); ++i) {
      const std::size_t len = phrase_length(z, i);
      EXPECT_EQ(decode_path_label(z, i, len), back.substr(at, len));
      at += len;
    }
  }
}

TEST(Zl78Trie, BananaShape) {
  const CompressedString z = banana78();
  const DictionaryTrie t = build_trie(z);
  EXPECT_EQ(t.node_count(), 9u);  // eight elements plus the root
  std::set<char> root_labels;
  for (std::uint32_t v = 1; v < t.node_count(); ++v)
    if (t.parent(v) == kRoot) root_labels.insert(t.label(v));
  EXPECT_EQ(root_labels, (std::set<char>{'a', 'n', 'b', 'r'}));
  EXPECT_EQ(t.child(kRoot, 'a'), 1u);
  EXPECT_EQ(t.child(1, 'n'), 3u);
  EXPECT_EQ(t.child(3, 'a'), 6u);
  EXPECT_EQ(t.depth(6), 3u);
}

TEST(Zl78Trie, EmptyAndNodeCount) {
  EXPECT_EQ(build_trie(compress("", Scheme::zl78)).node_count(), 1u);
  std::mt19937_64 rng(3);
  for (int round = 0; round < 30; ++round) {
    const std::string q = testutil::random_text(rng, "ab", 300);
    const CompressedString z = compress(q, Scheme::zl78);
    const DictionaryTrie t = build_trie(z);
    const std::size_t aliases = !q.empty() && !z.final_has_label ? 1 : 0;
    EXPECT_EQ(t.node_count(), z.size() + 1 - aliases);
  }
}

TEST(Zl78Trie, TrieBackedNavigationAgrees) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    const std::string q = testutil::random_text(rng, "ab", 300);
    const CompressedString z = compress(q, Scheme::zl78);
    const DictionaryTrie t = build_trie(z);
    for (std::size_t i = 0; i <= z.size(); ++i) {
      EXPECT_EQ(phrase_length(z, i), phrase_length(z, t, i));
      const std::size_t len = phrase_length(z, i);
      EXPECT_EQ(decode_path_label(z, i, len), decode_path_label(z, t, i, len));
    }
  }
}

TEST(Zl78Errors, BadReferenceRejected) {
  CompressedString z;
  z.scheme = Scheme::zl78;
  z.refs = {0, 2};  // element 2 referencing itself
  z.labels = "ab";
  EXPECT_THROW(decompress(z), format_error);
  z.refs = {0, 5};
  EXPECT_THROW(decompress(z), format_error);
}

TEST(ZlwParse, BananaCodes) {
  const CompressedString z = compress(kBananaText, Scheme::zlw);
  // Preloaded byte nodes are 1 + byte value.
  const std::vector<std::uint32_t> codes = {98, 111, 257, 98,  116,
                                            99, 259, 111, 102, 115};
  EXPECT_EQ(z.refs, codes);
  EXPECT_EQ(decompress(z), kBananaText);
}

TEST(ZlwParse, SelfReferencingCode) {
  // "aaaa" emits a code for the dictionary entry created by the previous
  // block, the classic special case.
  const CompressedString z = compress("aaaa", Scheme::zlw);
  const std::vector<std::uint32_t> codes = {98, 257, 98};
  EXPECT_EQ(z.refs, codes);
  EXPECT_EQ(decompress(z), "aaaa");
}

TEST(ZlwParse, BlocksMatchReferenceDecoder) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 60; ++round) {
    const std::string q = round == 0
                              ? kBananaText
                              : testutil::random_text(rng, "ab", 500);
    const CompressedString z = compress(q, Scheme::zlw);
    const auto blocks = testutil::reference_zlw_blocks(z.refs);
    std::string joined;
    for (const auto& b : blocks) joined += b;
    EXPECT_EQ(joined, q);
    // The trie agrees with the reference decoder block by block.
    const DictionaryTrie t = build_trie(z);
    ASSERT_EQ(blocks.size(), z.size());
    for (std::size_t i = 1; i <= z.size(); ++i) {
      EXPECT_EQ(decode_path_label(z, t, i, phrase_length(z, t, i)),
                blocks[i - 1]);
    }
  }
}

TEST(ZlwRoundtrip, RandomBytes) {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 200; ++round) {
    const std::string q = testutil::random_bytes(rng, 2000);
    EXPECT_EQ(decompress(compress(q, Scheme::zlw)), q);
  }
  std::string unary(10000, 'a');
  EXPECT_EQ(decompress(compress(unary, Scheme::zlw)), unary);
}

TEST(ZlwErrors, NavigationNeedsTrie) {
  const CompressedString z = compress("abcabc", Scheme::zlw);
  EXPECT_THROW(phrase_length(z, 1), config_error);
  EXPECT_THROW(decode_path_label(z, 1, 1), config_error);
  EXPECT_THROW(ParseView{z}, config_error);
}

TEST(ZlwErrors, BadCodesRejected) {
  CompressedString z;
  z.scheme = Scheme::zlw;
  z.refs = {0};
  EXPECT_THROW(decompress(z), format_error);
  z.refs = {257};  // references the first added entry before it can exist
  EXPECT_THROW(decompress(z), format_error);
  z.refs = {98, 300};
  EXPECT_THROW(decompress(z), format_error);
}

TEST(ParseView, BlockNodesAndLabels) {
  const CompressedString z = banana78();
  const ParseView view(z);
  EXPECT_EQ(view.block_count(), 8u);
  EXPECT_EQ(view.node_count(), 9u);
  EXPECT_EQ(view.node_of_block(6), 6u);
  EXPECT_EQ(view.parent(6), 3u);
  EXPECT_EQ(view.label(6), 'a');

  const CompressedString incomplete = compress("aaaa", Scheme::zl78);
  const ParseView v2(incomplete);
  EXPECT_EQ(v2.block_count(), 3u);
  EXPECT_EQ(v2.node_count(), 3u);  // final element repeats node 1
  EXPECT_EQ(v2.node_of_block(3), 1u);
}
