#pragma once
// Command-line front end: pd/nd arrays, exact search, pairwise distance,
// windowed search and a naive-vs-structured benchmark, all over plain
// numeric series files.  Exit codes: 0 ok, 1 input error, 2 contract
// violation.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "approx.hpp"
#include "series_io.hpp"

namespace ctmatch {

struct BenchReport {
  struct Row {
    std::size_t n = 0, m = 0;
    int k = 0;
    std::string path;
    double wall_ms = 0;
    std::uint64_t checksum = 0;
  };
  std::vector<Row> rows;
  bool checksums_agree = true;
};

namespace detail {

inline std::uint64_t profile_checksum(const std::vector<int>& profile) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    for (int b = 0; b < 8; ++b) {
      h ^= (x >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(profile.size());
  for (int v : profile) mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)));
  return h;
}

inline SearchPath parse_path(const std::string& name) {
  if (name == "auto") return SearchPath::Auto;
  if (name == "naive") return SearchPath::Naive;
  if (name == "aperiodic") return SearchPath::Aperiodic;
  if (name == "periodic") return SearchPath::Periodic;
  throw input_error("unknown path '" + name + "' (want auto|naive|aperiodic|periodic)");
}

inline int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CTMATCH_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

inline void print_ranks_line(std::ostream& out, const std::vector<Pos>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) out << (i ? " " : "") << a[i];
  out << '\n';
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Cartesian-tree pattern matching under Hamming distance"};
  app.require_subcommand(1);

  std::string fa, fb, fpattern, ftext, fseries, path_name = "auto";
  int k = 0, repeat = 3, threads = 0, constant = 128;
  std::size_t delta = 0;

  auto* pd_cmd = app.add_subcommand("pd", "print the previous-distance array");
  pd_cmd->add_option("file", fseries, "numeric series file")->required();
  auto* nd_cmd = app.add_subcommand("nd", "print the next-distance array");
  nd_cmd->add_option("file", fseries, "numeric series file")->required();

  auto* exact_cmd = app.add_subcommand("exact", "exact CT-occurrences, 1-based");
  exact_cmd->add_option("--pattern", fpattern, "pattern series file")->required();
  exact_cmd->add_option("--text", ftext, "text series file")->required();

  auto* chd_cmd =
      app.add_subcommand("chd", "substitution distance of two equal-length series");
  chd_cmd->add_option("--a", fa, "series edited towards --b")->required();
  chd_cmd->add_option("--b", fb, "target series")->required();
  chd_cmd->add_option("-k", k, "distance cap")->required()->check(CLI::NonNegativeNumber);

  auto* search_cmd =
      app.add_subcommand("search", "distance of every window, TSV position\\tdistance");
  search_cmd->add_option("--pattern", fpattern, "pattern series file")->required();
  search_cmd->add_option("--text", ftext, "text series file")->required();
  search_cmd->add_option("-k", k, "distance cap")->required()->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--path", path_name, "auto|naive|aperiodic|periodic");
  search_cmd->add_option("--constant", constant, "dispatch scale constant");
  search_cmd->add_option("--delta", delta, "override the analysis arity");
  search_cmd->add_option("--threads", threads, "worker threads (or CTMATCH_THREADS)");

  auto* bench_cmd = app.add_subcommand("bench", "time naive vs structured search");
  bench_cmd->add_option("--pattern", fpattern, "pattern series file")->required();
  bench_cmd->add_option("--text", ftext, "text series file")->required();
  bench_cmd->add_option("-k", k, "distance cap")->required()->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--repeat", repeat, "runs per configuration")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--path", path_name, "structured side: auto|aperiodic|periodic");
  bench_cmd->add_option("--constant", constant, "dispatch scale constant");
  bench_cmd->add_option("--delta", delta, "override the analysis arity");
  bench_cmd->add_option("--threads", threads, "worker threads (or CTMATCH_THREADS)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ctmatch");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (pd_cmd->parsed() || nd_cmd->parsed()) {
      const auto values = read_series_file(fseries);
      require_input(!values.empty(), "series is empty");
      const auto ranks = rank_compress(values);
      detail::print_ranks_line(out, pd_cmd->parsed() ? pd_array(ranks) : nd_array(ranks));
      return 0;
    }
    if (exact_cmd->parsed()) {
      const auto pat = rank_compress(read_series_file(fpattern));
      const auto txt = rank_compress(read_series_file(ftext));
      for (std::size_t o : find_ct_occurrences(pat, txt)) out << o + 1 << '\n';
      return 0;
    }
    if (chd_cmd->parsed()) {
      const auto a = read_series_file(fa);
      const auto b = read_series_file(fb);
      out << chd_k(a, b, k) << '\n';
      return 0;
    }

    const auto pattern = read_series_file(fpattern);
    const auto text = read_series_file(ftext);
    Parameters params;
    params.constant = constant;
    params.delta_override = delta;
    params.threads = detail::resolve_threads(threads);

    if (search_cmd->parsed()) {
      params.forced_path = detail::parse_path(path_name);
      if (params.forced_path != SearchPath::Auto)
        err << "warning: --path " << path_name
            << " asserts the structural preconditions instead of choosing a "
               "path that satisfies them\n";
      const auto profile = solve(text, pattern, k, params);
      for (std::size_t i = 0; i < profile.size(); ++i)
        out << i + 1 << '\t' << profile[i] << '\n';
      return 0;
    }

    // bench
    const SearchPath structured = detail::parse_path(path_name);
    require_input(structured != SearchPath::Naive,
                  "bench: --path must name the structured side");
    BenchReport report;
    std::vector<int> first_profile;
    auto measure = [&](const std::string& name, SearchPath forced) {
      Parameters ps = params;
      ps.forced_path = forced;
      double best = 0;
      std::vector<int> profile;
      for (int r = 0; r < repeat; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        profile = solve(text, pattern, k, ps);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (r == 0 || ms < best) best = ms;
      }
      if (first_profile.empty())
        first_profile = profile;
      else if (profile != first_profile)
        report.checksums_agree = false;
      report.rows.push_back({text.size(), pattern.size(), k, name, best,
                             detail::profile_checksum(profile)});
    };
    measure("naive", SearchPath::Naive);
    measure(path_name, structured);
    for (const auto& row : report.rows) {
      std::ostringstream line;
      line << row.n << '\t' << row.m << '\t' << row.k << '\t' << row.path << '\t'
           << std::fixed << std::setprecision(3) << row.wall_ms << '\t' << std::hex
           << std::setw(16) << std::setfill('0') << row.checksum;
      out << line.str() << '\n';
    }
    if (!report.checksums_agree) {
      err << "contract violation: paths disagree on the profile\n";
      return 2;
    }
    return 0;
  } catch (const contract_error& e) {
    err << "contract violation: " << e.what() << '\n';
    return 2;
  } catch (const input_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ctmatch
