// Command-line front end: build, query, verify, and benchmark approximate
// full-text indexes (every substring within one edit of a query pattern).
//
// Exit codes: 0 success; 2 usage or input errors (bad flags, oversize
// pattern, unreadable input, capacity bound); 3 integrity failures (corrupt
// index file, engine disagreement, failed verification).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ed1x/container.hpp"
#include "ed1x/oracle.hpp"

using namespace ed1x;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kIntegrity = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (!in.good() && !in.eof()) throw std::runtime_error("cannot read " + path);
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out.good()) throw std::runtime_error("cannot write " + path);
}

Ed1xIndex load_index(const std::string& path) { return deserialize_index(read_file(path)); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> spans(const std::vector<Occurrence>& occ) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(occ.size());
  for (const auto& o : occ) out.emplace_back(o.start, o.len);
  return out;
}

std::string engines_of(const Ed1xIndex& ix) {
  if (ix.opts.small_engine && ix.centroid) return "both";
  return ix.centroid ? "large" : "small";
}

/// Resolves the requested engine against what the index contains.
/// "auto" prefers cross-checking both when available.
std::string resolve_engine(const Ed1xIndex& ix, const std::string& requested) {
  std::string have = engines_of(ix);
  if (requested == "auto") return have;
  if (requested != "both" && (have == "both" || have == requested)) return requested;
  if (requested == "both" && have == "both") return "both";
  throw std::runtime_error("index provides only the " + have + " engine, but --engine " +
                           requested + " was requested");
}

void print_occurrence_line(std::ostream& os, const Ed1xIndex& ix, const std::string& pattern,
                           const Occurrence& o) {
  using K = EditDescriptor::Kind;
  os << o.start << '\t' << o.len << '\t';
  switch (o.edit.kind) {
    case K::Exact: os << "exact\t\t"; break;
    case K::Deletion:
      os << "del\t" << o.edit.pos << '\t' << pattern[o.edit.pos - 1];
      break;
    case K::Substitution:
      os << "sub\t" << o.edit.pos << '\t' << static_cast<char>(ix.text.decode(o.edit.ch));
      break;
    case K::Insertion:
      os << "ins\t" << o.edit.pos << '\t' << static_cast<char>(ix.text.decode(o.edit.ch));
      break;
  }
  os << '\n';
}

void print_stats_line(std::ostream& os, const std::string& pattern, const QueryStats& st,
                      std::size_t occ) {
  os << "stats\t" << pattern << "\thash=" << st.hash_probes << "\tarray=" << st.array_probes
     << "\tcolor=" << st.color_probes << "\tprep=" << st.prep_probes
     << "\tdownstream=" << st.downstream_total() << "\twps_calls=" << st.wps_calls
     << "\twps_max=" << st.wps_max_probes << "\tocc=" << occ << '\n';
}

struct BuildArgs {
  std::string text_path, out_path, engine = "both";
  std::uint32_t b = 64;
  std::uint64_t seed = 20250614;
};

int run_build(const BuildArgs& a) {
  std::string text = read_file(a.text_path);
  if (text.empty()) {
    std::cerr << "error: " << a.text_path << " is empty; nothing to index\n";
    return kUsage;
  }
  BuildOptions opts;
  opts.b = a.b;
  opts.seed = a.seed;
  opts.small_engine = a.engine != "large";
  opts.large_engine = a.engine != "small";
  Ed1xIndex ix = Ed1xIndex::build(std::move(text), opts);
  std::string blob = serialize_index(ix);
  write_file(a.out_path, blob);
  std::cout << "index written: " << a.out_path << " (" << blob.size() << " bytes, n=" << ix.text.size()
            << ", sigma=" << ix.text.sigma() << ", b=" << ix.opts.b
            << ", engines=" << engines_of(ix) << ", seed attempts=" << ix.seed_attempts << ")\n";
  return kOk;
}

struct QueryArgs {
  std::string index_path, engine = "auto";
  std::vector<std::string> patterns;
  bool stats = false;
};

int run_query(const QueryArgs& a) {
  Ed1xIndex ix = load_index(a.index_path);
  std::string engine = resolve_engine(ix, a.engine);
  std::vector<std::string> patterns = a.patterns;
  if (patterns.empty()) {
    std::string line;
    while (std::getline(std::cin, line)) patterns.push_back(line);
  }
  bool first = true;
  for (const std::string& pattern : patterns) {
    if (!first) std::cout << '\n';
    first = false;
    QueryStats st;
    std::vector<Occurrence> occ;
    if (engine == "small") {
      occ = ix.query_small(pattern, &st);
    } else if (engine == "large") {
      occ = ix.query_large(pattern, &st);
    } else {
      occ = ix.query_large(pattern, &st);
      std::vector<Occurrence> small = ix.query_small(pattern);
      if (spans(small) != spans(occ)) {
        std::cerr << "error: engines disagree on pattern \"" << pattern << "\" (small: "
                  << small.size() << " matches, large: " << occ.size() << ")\n";
        return kIntegrity;
      }
    }
    for (const Occurrence& o : occ) print_occurrence_line(std::cout, ix, pattern, o);
    if (a.stats) print_stats_line(std::cerr, pattern, st, occ.size());
  }
  return kOk;
}

struct VerifyArgs {
  std::string text_path;  // optional: verify this text instead of random ones
  std::uint32_t cases = 200, mmax = 16, b = 24, nmax = 300, per_case = 6;
  std::vector<unsigned> sigmas{2, 4, 26};
  std::uint64_t seed = 1;
  bool inject_fault = false;
};

struct VerifyFailure {
  std::string text, pattern;
};

std::string random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
  std::string s(n, ' ');
  for (auto& ch : s) ch = static_cast<char>('a' + rng() % std::max(1u, sigma));
  return s;
}

/// Checks one (text, pattern) pair on a prebuilt index; nullopt means both
/// engines matched the oracle.
std::optional<std::string> check_one(const Ed1xIndex& ix, const std::string& text,
                                     const std::string& pattern) {
  auto expect = oracle_query(text, pattern);
  if (spans(ix.query_small(pattern)) != expect) return "small";
  if (spans(ix.query_large(pattern)) != expect) return "large";
  return std::nullopt;
}

bool pair_fails(const std::string& text, const std::string& pattern, std::uint32_t b) {
  if (pattern.size() > b) return false;
  Ed1xIndex ix = Ed1xIndex::build(text, {.b = b});
  return check_one(ix, text, pattern).has_value();
}

/// Greedy single-character shrinking of a failing (text, pattern) pair.
VerifyFailure shrink_failure(std::string text, std::string pattern, std::uint32_t b) {
  int budget = 2000;
  bool shrunk = true;
  while (shrunk && budget > 0) {
    shrunk = false;
    for (std::size_t i = 0; i < text.size() && budget > 0 && text.size() > 1; ++i) {
      std::string t = text.substr(0, i) + text.substr(i + 1);
      --budget;
      if (pair_fails(t, pattern, b)) {
        text = std::move(t);
        shrunk = true;
      }
    }
    for (std::size_t i = 0; i < pattern.size() && budget > 0 && pattern.size() > 1; ++i) {
      std::string p = pattern.substr(0, i) + pattern.substr(i + 1);
      --budget;
      if (pair_fails(text, p, b)) {
        pattern = std::move(p);
        shrunk = true;
      }
    }
  }
  return {text, pattern};
}

int run_verify(const VerifyArgs& a) {
  std::mt19937_64 rng(a.seed);
  std::string fixed_text;
  if (!a.text_path.empty()) {
    fixed_text = read_file(a.text_path);
    if (fixed_text.empty()) {
      std::cerr << "error: " << a.text_path << " is empty; nothing to verify\n";
      return kUsage;
    }
  }
  std::uint32_t mmax = std::min(a.mmax, a.b);
  std::uint64_t patterns_checked = 0;
  for (std::uint32_t c = 0; c < a.cases; ++c) {
    unsigned sigma = a.sigmas[c % a.sigmas.size()];
    std::string text = fixed_text;
    if (text.empty()) {
      std::size_t lo = a.inject_fault ? 2 : 1;
      text = random_text(rng, lo + rng() % std::max<std::size_t>(1, a.nmax - lo + 1), sigma);
    }
    Ed1xIndex ix = Ed1xIndex::build(text, {.b = a.b, .seed = rng()});
    if (a.inject_fault) {
      if (ix.text.size() < 2) {
        std::cerr << "error: --inject-fault needs a text of length at least 2\n";
        return kUsage;
      }
      std::swap(ix.core.sa[1], ix.core.sa[ix.text.size()]);
    }
    for (std::uint32_t p = 0; p < a.per_case; ++p) {
      std::size_t m = 1 + rng() % mmax;
      std::string pattern;
      if (p % 2 == 0 && text.size() > m) {
        pattern = text.substr(rng() % (text.size() - m), m);
        if (p % 4 == 0)
          pattern[rng() % pattern.size()] = static_cast<char>('a' + rng() % (sigma + 1));
      } else {
        pattern = random_text(rng, m, sigma + 1);
      }
      ++patterns_checked;
      std::optional<std::string> bad = check_one(ix, text, pattern);
      if (!bad) continue;
      VerifyFailure fail{text, pattern};
      if (!a.inject_fault && fixed_text.empty()) fail = shrink_failure(text, pattern, a.b);
      std::cerr << "verify: FAIL (" << *bad << " engine disagrees with the oracle)\n"
                << "text: " << fail.text << "\npattern: " << fail.pattern << "\n";
      return kIntegrity;
    }
  }
  std::cout << "verify: PASS (" << a.cases << " cases, " << patterns_checked
            << " patterns, both engines match the oracle)\n";
  return kOk;
}

struct BenchArgs {
  std::vector<std::string> index_paths;
  std::string pattern_file, engine = "large";
  std::uint32_t repeat = 5;
};

int run_bench(const BenchArgs& a) {
  std::vector<std::string> patterns;
  {
    std::string content = read_file(a.pattern_file);
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty()) patterns.push_back(line);
  }
  std::vector<Ed1xIndex> indexes;
  indexes.reserve(a.index_paths.size());
  for (const std::string& path : a.index_paths) {
    indexes.push_back(load_index(path));
    resolve_engine(indexes.back(), a.engine);  // fail fast if the engine is missing
  }
  std::cout << "index\tn\tpattern\tm\twall_us\thash\tarray\tcolor\tdownstream\tocc\n";
  std::vector<std::vector<std::uint64_t>> downstream(patterns.size());
  for (std::size_t xi = 0; xi < indexes.size(); ++xi) {
    const Ed1xIndex& ix = indexes[xi];
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
      const std::string& pattern = patterns[pi];
      QueryStats st;
      std::size_t occ = 0;
      double best_us = 0;
      for (std::uint32_t rep = 0; rep < std::max(1u, a.repeat); ++rep) {
        QueryStats run_st;
        auto t0 = std::chrono::steady_clock::now();
        std::vector<Occurrence> res = a.engine == "small" ? ix.query_small(pattern, &run_st)
                                                          : ix.query_large(pattern, &run_st);
        auto t1 = std::chrono::steady_clock::now();
        double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
        if (rep == 0 || us < best_us) best_us = us;
        st = run_st;
        occ = res.size();
      }
      downstream[pi].push_back(st.downstream_total());
      std::cout << a.index_paths[xi] << '\t' << ix.text.size() << '\t' << pattern << '\t'
                << pattern.size() << '\t' << static_cast<std::uint64_t>(best_us * 100) / 100.0
                << '\t' << st.hash_probes << '\t' << st.array_probes << '\t' << st.color_probes
                << '\t' << st.downstream_total() << '\t' << occ << '\n';
    }
  }
  if (indexes.size() > 1 && !patterns.empty()) {
    std::cout << "\nscaling across " << indexes.size() << " indexes (downstream probes)\n"
              << "pattern\tmin\tmax\tratio\n";
    double worst = 0;
    for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
      std::uint64_t lo = downstream[pi][0], hi = downstream[pi][0];
      for (std::uint64_t v : downstream[pi]) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      double ratio = lo == 0 ? (hi == 0 ? 1.0 : 0.0) : static_cast<double>(hi) / lo;
      worst = std::max(worst, ratio);
      std::cout << patterns[pi] << '\t' << lo << '\t' << hi << '\t' << ratio << '\n';
    }
    std::cout << "max ratio: " << worst << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate full-text index: report every substring of a text within one edit of a query pattern"};
  app.require_subcommand(1);

  BuildArgs build_args;
  CLI::App* cmd_build = app.add_subcommand("build", "Build an index file from a text file");
  cmd_build->add_option("text", build_args.text_path, "input text file (raw bytes)")->required();
  cmd_build->add_option("out", build_args.out_path, "output index file")->required();
  cmd_build->add_option("--b", build_args.b, "maximum query pattern length")
      ->default_val(64)
      ->check(CLI::Range(1u, 1u << 20));
  cmd_build->add_option("--engine", build_args.engine, "which query engines to materialize")
      ->default_val("both")
      ->check(CLI::IsMember({"small", "large", "both"}));
  cmd_build->add_option("--seed", build_args.seed, "seed for the injective-hash search")
      ->default_val(20250614);

  QueryArgs query_args;
  CLI::App* cmd_query = app.add_subcommand("query", "Query an index; TSV matches on stdout");
  cmd_query->add_option("index", query_args.index_path, "index file")->required();
  cmd_query->add_option("--pattern", query_args.patterns,
                        "pattern to query (repeatable; default reads one per stdin line)");
  cmd_query->add_option("--engine", query_args.engine, "engine to answer with")
      ->default_val("auto")
      ->check(CLI::IsMember({"small", "large", "both", "auto"}));
  cmd_query->add_flag("--stats", query_args.stats, "print per-pattern probe counters on stderr");

  VerifyArgs verify_args;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "Cross-check both engines against a brute-force oracle");
  cmd_verify->add_option("text", verify_args.text_path,
                         "optional text file to verify (default: random texts)");
  cmd_verify->add_option("--cases", verify_args.cases, "number of verification cases")
      ->default_val(200);
  cmd_verify->add_option("--sigma", verify_args.sigmas, "alphabet sizes for random texts");
  cmd_verify->add_option("--mmax", verify_args.mmax, "maximum pattern length")->default_val(16);
  cmd_verify->add_option("--b", verify_args.b, "index pattern-length bound")
      ->default_val(24)
      ->check(CLI::Range(1u, 1u << 20));
  cmd_verify->add_option("--nmax", verify_args.nmax, "maximum random text length")
      ->default_val(300)
      ->check(CLI::Range(1u, 1u << 20));
  cmd_verify->add_option("--seed", verify_args.seed, "rng seed")->default_val(1);
  cmd_verify
      ->add_flag("--inject-fault", verify_args.inject_fault,
                 "corrupt each index before checking (the run must then fail)")
      ->group("");

  BenchArgs bench_args;
  CLI::App* cmd_bench =
      app.add_subcommand("bench", "Time queries and report probe counters per index");
  cmd_bench->add_option("indexes", bench_args.index_paths, "index files to compare")
      ->required()
      ->expected(-1);
  cmd_bench->add_option("--pattern-file", bench_args.pattern_file, "file with one pattern per line")
      ->required();
  cmd_bench->add_option("--repeat", bench_args.repeat, "runs per pattern (fastest wins)")
      ->default_val(5);
  cmd_bench->add_option("--engine", bench_args.engine, "engine to benchmark")
      ->default_val("large")
      ->check(CLI::IsMember({"small", "large"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cmd_build) return run_build(build_args);
    if (*cmd_query) return run_query(query_args);
    if (*cmd_verify) return run_verify(verify_args);
    return run_bench(bench_args);
  } catch (const CorruptContainer& e) {
    std::cerr << "error: corrupt index: " << e.what() << '\n';
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
