// czgrep: search ZL78/ZLW-compressed files without decompressing them.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "czgrep/czgrep.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw czgrep::error("cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw czgrep::error("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw czgrep::error("write to " + path + " failed");
}

czgrep::Scheme parse_scheme(const std::string& name) {
  if (name == "zl78") return czgrep::Scheme::zl78;
  if (name == "zlw") return czgrep::Scheme::zlw;
  throw CLI::ValidationError("scheme", "expected zl78 or zlw");
}

std::size_t auto_tau(std::size_t n) {
  std::size_t t = 1;
  while ((t + 1) * (t + 1) <= n) ++t;
  return t;
}

void print_format_error(const czgrep::format_error& e) {
  std::cerr << "error: " << e.what();
  if (e.byte_offset() != czgrep::format_error::npos)
    std::cerr << " (byte offset " << e.byte_offset() << ")";
  else if (e.element() != czgrep::format_error::npos)
    std::cerr << " (element " << e.element() << ")";
  std::cerr << "\n";
}

void print_syntax_error(const czgrep::syntax_error& e,
                        const std::string& pattern) {
  std::cerr << "error: " << e.what() << " at position " << e.position()
            << "\n  " << pattern << "\n  "
            << std::string(e.position() - 1, ' ') << "^\n";
}

void emit_stats(const czgrep::StatsRecord& s, bool with_errors) {
  nlohmann::json j;
  j["n"] = s.element_count;
  j["u"] = s.text_length;
  j["m"] = s.pattern_size;
  if (with_errors && s.max_errors) j["k"] = *s.max_errors;
  j["tau"] = s.tau;
  j["selected"] = s.selected_count;
  j["peak_live_descriptions"] = s.peak_live_descriptions;
  j["peak_live_chars"] = s.peak_live_chars;
  j["match_count"] = s.match_count;
  j["wall_time_ms"] = s.wall_time_ms;
  std::cerr << j.dump() << "\n";
}

struct SearchArgs {
  std::string file;
  std::string pattern;
  std::size_t errors = 0;
  std::size_t tau = 0;  // 0 = pick sqrt(n)
  bool stats = false;
  bool explicit_trie = false;
  std::string scheme_override;
};

czgrep::CompressedString load_for_search(const SearchArgs& args) {
  czgrep::CompressedString z = czgrep::read_compressed_file(args.file);
  if (!args.scheme_override.empty()) {
    z.scheme = parse_scheme(args.scheme_override);
    czgrep::validate(z);
  }
  return z;
}

int run_approx(const SearchArgs& args) {
  czgrep::CompressedString z = load_for_search(args);
  if (args.pattern.empty() || args.errors >= args.pattern.size()) {
    std::cerr << "usage error: --errors must be smaller than the pattern "
                 "length\n";
    return kExitUsage;
  }
  if (z.scheme == czgrep::Scheme::zlw && !args.explicit_trie) {
    std::cerr << "error: ZLW files store no phrase labels, so approximate "
                 "search cannot navigate the dictionary in sublinear space; "
                 "re-run with --explicit-trie to build the full trie\n";
    return kExitError;
  }
  czgrep::DictionaryTrie trie;
  czgrep::ApproxOptions options;
  czgrep::StatsRecord stats;
  options.stats = &stats;
  if (args.explicit_trie) {
    trie = czgrep::build_trie(z);
    options.trie = &trie;
  }
  const std::size_t tau = args.tau ? args.tau : auto_tau(std::max<std::size_t>(
                                                    z.size(), 1));
  const auto t0 = std::chrono::steady_clock::now();
  const auto matches =
      czgrep::search_approx(z, args.pattern, args.errors, tau, options);
  const auto t1 = std::chrono::steady_clock::now();
  stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  for (std::size_t pos : matches) std::cout << pos << "\n";
  if (args.stats) emit_stats(stats, true);
  return 0;
}

int run_regex(const SearchArgs& args) {
  czgrep::CompressedString z = load_for_search(args);
  czgrep::DictionaryTrie trie;
  czgrep::RegexOptions options;
  czgrep::StatsRecord stats;
  options.stats = &stats;
  if (args.explicit_trie) {
    trie = czgrep::build_trie(z);
    options.trie = &trie;
  }
  const czgrep::Regex parsed = czgrep::parse_regex(args.pattern);
  if (czgrep::accepts_empty(czgrep::build_tnfa(parsed)))
    std::cerr << "warning: pattern matches the empty string; every position "
                 "is reported\n";
  const std::size_t tau = args.tau ? args.tau : auto_tau(std::max<std::size_t>(
                                                    z.size(), 1));
  const auto t0 = std::chrono::steady_clock::now();
  const auto matches = czgrep::search_regex(z, args.pattern, tau, options);
  const auto t1 = std::chrono::steady_clock::now();
  stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  for (std::size_t pos : matches) std::cout << pos << "\n";
  if (args.stats) emit_stats(stats, false);
  return 0;
}

int run_selftest(std::size_t cases, std::uint64_t seed) {
  using namespace czgrep;
  const CaseProfile profiles[] = {CaseProfile::binary, CaseProfile::dna,
                                  CaseProfile::english_like,
                                  CaseProfile::pathological_unary};
  CaseLimits limits;
  limits.max_text = 600;
  std::size_t failures = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const OracleCase tc =
        random_case(seed + c, profiles[c % 4], limits);
    const CompressedString z78 = compress(tc.text, Scheme::zl78);
    const CompressedString zlw = compress(tc.text, Scheme::zlw);
    const DictionaryTrie trie78 = build_trie(z78);
    const DictionaryTrie trieW = build_trie(zlw);
    const std::size_t taus[] = {1, tc.tau, std::max<std::size_t>(z78.size(), 1)};

    const auto want_approx = oracle_approx(tc.text, tc.pattern, tc.max_errors);
    const Regex re = parse_regex(tc.regex_source);
    const auto want_regex = oracle_regex(tc.text, re);
    bool ok = true;
    for (std::size_t tau : taus) {
      ApproxOptions with_trie{&trie78, nullptr};
      ApproxOptions zlw_opts{&trieW, nullptr};
      ok = ok &&
           search_approx(z78, tc.pattern, tc.max_errors, tau) == want_approx;
      ok = ok && search_approx(z78, tc.pattern, tc.max_errors, tau,
                               with_trie) == want_approx;
      ok = ok && search_approx(zlw, tc.pattern, tc.max_errors, tau,
                               zlw_opts) == want_approx;
      ok = ok && search_regex(z78, tc.regex_source, tau) == want_regex;
      ok = ok && search_regex(zlw, tc.regex_source, tau) == want_regex;
    }
    ok = ok && decompress(z78) == tc.text && decompress(zlw) == tc.text;
    if (!ok) {
      ++failures;
      std::cerr << "selftest failure: seed=" << tc.seed << " profile="
                << static_cast<int>(tc.profile) << " pattern=\"" << tc.pattern
                << "\" k=" << tc.max_errors << " regex=\"" << tc.regex_source
                << "\"\n";
    }
  }
  std::cout << "selftest: " << cases << " cases, " << failures
            << " failures (seed " << seed << ")\n";
  return failures == 0 ? 0 : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern matching on ZL78/ZLW-compressed files"};
  app.require_subcommand(1);

  // compress
  auto* cmd_compress = app.add_subcommand("compress", "Compress a file");
  std::string in_path, out_path, scheme_name = "zl78";
  cmd_compress->add_option("input", in_path, "input file")->required();
  cmd_compress->add_option("-o,--output", out_path, "output file")->required();
  cmd_compress->add_option("--scheme", scheme_name, "zl78 or zlw")
      ->check(CLI::IsMember({"zl78", "zlw"}));

  // decompress
  auto* cmd_decompress =
      app.add_subcommand("decompress", "Restore the original file");
  std::string din_path, dout_path;
  cmd_decompress->add_option("input", din_path, "compressed file")->required();
  cmd_decompress->add_option("-o,--output", dout_path, "output file")
      ->required();

  auto add_search_options = [](CLI::App* cmd, SearchArgs& args,
                               bool with_errors) {
    cmd->add_option("file", args.file, "compressed file")->required();
    cmd->add_option("-p,--pattern", args.pattern, "pattern")->required();
    if (with_errors)
      cmd->add_option("-k,--errors", args.errors, "error threshold")
          ->required();
    cmd->add_option("-t,--tau", args.tau,
                    "trade-off parameter (default: sqrt of element count)");
    cmd->add_flag("--stats", args.stats, "emit a JSON stats line on stderr");
    cmd->add_flag("--explicit-trie", args.explicit_trie,
                  "build the full dictionary trie");
    cmd->add_option("--scheme-override", args.scheme_override,
                    "reinterpret the element stream under another scheme")
        ->check(CLI::IsMember({"zl78", "zlw"}));
  };

  auto* cmd_approx =
      app.add_subcommand("approx", "Approximate (edit distance) search");
  SearchArgs approx_args;
  add_search_options(cmd_approx, approx_args, true);

  auto* cmd_regex = app.add_subcommand("regex", "Regular expression search");
  SearchArgs regex_args;
  add_search_options(cmd_regex, regex_args, false);

  auto* cmd_selftest =
      app.add_subcommand("selftest", "Randomized engine-vs-oracle check");
  std::size_t st_cases = 200;
  std::uint64_t st_seed = 1;
  cmd_selftest->add_option("--cases", st_cases, "number of cases");
  cmd_selftest->add_option("--seed", st_seed, "base seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_compress->parsed()) {
      const std::string text = read_file(in_path);
      const auto z = czgrep::compress(text, parse_scheme(scheme_name));
      czgrep::write_compressed_file(out_path, z);
      const auto bytes = czgrep::encode_compressed(z);
      const double ratio =
          text.empty() ? 0.0
                       : static_cast<double>(bytes.size()) /
                             static_cast<double>(text.size());
      std::cout << "n=" << z.size() << " bytes_in=" << text.size()
                << " bytes_out=" << bytes.size() << " ratio=" << ratio << "\n";
      return 0;
    }
    if (cmd_decompress->parsed()) {
      const auto z = czgrep::read_compressed_file(din_path);
      write_file(dout_path, czgrep::decompress(z));
      return 0;
    }
    if (cmd_approx->parsed()) return run_approx(approx_args);
    if (cmd_regex->parsed()) {
      try {
        return run_regex(regex_args);
      } catch (const czgrep::syntax_error& e) {
        print_syntax_error(e, regex_args.pattern);
        return kExitError;
      }
    }
    if (cmd_selftest->parsed()) {
      if (const char* env = std::getenv("CZGREP_SEED"))
        st_seed = std::strtoull(env, nullptr, 10);
      return run_selftest(st_cases, st_seed);
    }
  } catch (const czgrep::format_error& e) {
    print_format_error(e);
    return kExitError;
  } catch (const czgrep::parameter_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
