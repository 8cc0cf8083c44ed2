// nashrand: generate family games, solve and verify equilibria, scan families,
// print recurrence tables, sample distributions and evaluate complexity bounds.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nashrand/nashrand.hpp"

namespace {

using namespace nashrand;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorKind::kParse, out + ": cannot write file");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fmt6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::vector<long long> parse_index_list(const std::string& s, const std::string& flag) {
  std::vector<long long> out;
  std::string tok;
  std::string cleaned = s;
  for (char& ch : cleaned)
    if (ch == ',') ch = ' ';
  std::istringstream cs(cleaned);
  while (cs >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, flag + ": '" + tok + "' is not an integer");
    }
  }
  return out;
}

std::size_t resolve_max_n(std::size_t flag_value, bool flag_given) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("NASHRAND_MAX_N"); env && *env) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, std::string("NASHRAND_MAX_N='") + env +
                                         "' is not a positive integer");
    }
  }
  return kDefaultMaxN;
}

std::size_t need_n(const std::optional<std::size_t>& n, const std::string& family) {
  if (!n) throw Error(ErrorKind::kUnsupportedDimension, "family '" + family + "' needs --n");
  return *n;
}

// ------------------------------------------------------------------- gen

Game generate(const std::string& family, const std::optional<std::size_t>& n,
              const std::string& pi_text, const std::string& tau_text) {
  if (family == "example1") return example1_game();
  if (family == "example2") return example2_game();
  if (family == "beta") {
    const std::size_t k = need_n(n, family);
    if (k < 2) throw Error(ErrorKind::kUnsupportedDimension, "beta needs n >= 2");
    return beta_game(k);
  }
  if (family == "constsum-beta") {
    const std::size_t k = need_n(n, family);
    if (k < kBetaMinN) throw Error(ErrorKind::kUnsupportedDimension, "constsum-beta needs n >= 8");
    return constsum_beta_game(k);
  }
  if (family == "primeblock" || family == "constsum-primeblock") {
    const std::size_t k = need_n(n, family);
    if (k < 1) throw Error(ErrorKind::kUnsupportedDimension, family + " needs n >= 1 primes");
    return family == "primeblock" ? prime_block_game(k) : constsum_prime_block_game(k);
  }
  if (family == "permutation") {
    Permutation pi, tau;
    if (!pi_text.empty()) pi = Permutation::from_one_based(parse_index_list(pi_text, "--pi"));
    if (!tau_text.empty()) tau = Permutation::from_one_based(parse_index_list(tau_text, "--tau"));
    if (pi_text.empty() || tau_text.empty()) {
      const std::size_t k = n ? *n : (pi_text.empty() ? tau.size() : pi.size());
      if (k < 1) throw Error(ErrorKind::kUnsupportedDimension, "permutation needs --n or --pi/--tau");
      if (pi_text.empty()) pi = Permutation::identity(k);
      if (tau_text.empty()) tau = Permutation::cycle(k);
    }
    if (n && (pi.size() != *n || tau.size() != *n)) {
      throw Error(ErrorKind::kDimensionMismatch, "--pi/--tau length differs from --n");
    }
    return permutation_game(pi, tau).game;
  }
  throw Error(ErrorKind::kUnknownFamily, "unknown family '" + family + "'");
}

// ------------------------------------------------------------------ scan

struct ScanRow {
  std::size_t n = 0;
  std::size_t dim = 0;
  BigInteger c1, c2, g, abs_det, abs_k;
  double log2c1_over_n = 0.0;
  double wallclock_ms = 0.0;
};

ScanRow scan_row(const std::string& family, std::size_t n, const RecurrenceTable& table) {
  const auto start = std::chrono::steady_clock::now();
  ScanRow row;
  row.n = n;
  if (family == "beta" || family == "constsum-beta") {
    if (n < kBetaMinN) {
      throw Error(ErrorKind::kUnsupportedDimension, family + " scan needs n >= 8");
    }
    const BetaNe ne = beta_ne(n, table);
    row.dim = n;
    row.c1 = ne.c1;
    row.c2 = family == "beta" ? BigInteger(static_cast<unsigned long>(n)) : ne.c1;
    row.g = ne.g;
    row.abs_det = ne.abs_det;
    row.abs_k = ne.abs_k;
  } else if (family == "primeblock" || family == "constsum-primeblock") {
    if (n < 1) throw Error(ErrorKind::kUnsupportedDimension, family + " scan needs n >= 1");
    const ClosedFormNe ne = prime_block_ne(n);
    const IntMatrix b = prime_block_matrix(n);
    row.dim = b.size();
    row.c1 = ne.c1;
    row.c2 = family == "primeblock" ? BigInteger(static_cast<unsigned long>(row.dim)) : ne.c1;
    row.abs_det = abs(det(b));
    row.abs_k = abs(cofactor_sum_fast(b));
    row.g = row.abs_k / row.c1;
  } else {
    throw Error(ErrorKind::kUnknownFamily, "no closed form for family '" + family + "'");
  }
  row.log2c1_over_n = log2_big(row.c1) / static_cast<double>(row.dim);
  row.wallclock_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string scan_output(const std::vector<ScanRow>& rows, const std::string& format) {
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"n", r.n},
                         {"dim", r.dim},
                         {"C1", r.c1.get_str()},
                         {"C2", r.c2.get_str()},
                         {"log2C1_over_n", r.log2c1_over_n},
                         {"g_n", r.g.get_str()},
                         {"abs_det", r.abs_det.get_str()},
                         {"abs_K", r.abs_k.get_str()},
                         {"wallclock_ms", r.wallclock_ms}});
    }
    return dump(arr);
  }
  std::ostringstream os;
  os << "n,dim,C1,C2,log2C1_over_n,g_n,abs_det,abs_K,wallclock_ms\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.dim << ',' << r.c1.get_str() << ',' << r.c2.get_str() << ','
       << fmt6(r.log2c1_over_n) << ',' << r.g.get_str() << ',' << r.abs_det.get_str() << ','
       << r.abs_k.get_str() << ',' << fmt6(r.wallclock_ms) << '\n';
  }
  return os.str();
}

// ------------------------------------------------------------ recurrence

std::string recurrence_output(std::size_t to, const std::string& format) {
  const RecurrenceTable t(to);
  Json arr = Json::array();
  std::ostringstream os;
  os << "n,a_n,b_n,detB_n,g_n,ratio,a_minus_b_sum\n";
  for (std::size_t k = 1; k <= to; ++k) {
    const BigInteger check = t.a(k) - t.b(k) - t.b(k + 1);
    std::string ratio;
    Json ratio_json = nullptr;
    if (t.b(k) != 0) {
      const double r = ratio_of(t.b(k + 1), t.b(k));
      ratio = fmt6(r);
      ratio_json = r;
    }
    os << k << ',' << t.a(k).get_str() << ',' << t.b(k).get_str() << ',' << t.det_b(k).get_str()
       << ',' << t.g(k).get_str() << ',' << ratio << ',' << check.get_str() << '\n';
    arr.push_back(Json{{"n", k},
                       {"a_n", t.a(k).get_str()},
                       {"b_n", t.b(k).get_str()},
                       {"detB_n", t.det_b(k).get_str()},
                       {"g_n", t.g(k).get_str()},
                       {"ratio", ratio_json},
                       {"a_minus_b_sum", check.get_str()}});
  }
  return format == "json" ? dump(arr) : os.str();
}

std::string rational_text(const BigRational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact equilibria, randomness complexity and sampling for bimatrix games"};
  app.require_subcommand(1);

  std::string out;
  std::string format = "json";
  std::optional<std::size_t> n_opt;
  std::size_t max_n = kDefaultMaxN;
  std::string pi_text, tau_text;

  // gen
  std::string family;
  auto* gen = app.add_subcommand("gen", "Write a game from a family as JSON");
  gen->add_option("family", family,
                  "beta | primeblock | permutation | constsum-beta | constsum-primeblock | "
                  "example1 | example2")
      ->required();
  gen->add_option("--n", n_opt, "Dimension (number of primes for prime-block families)");
  gen->add_option("--pi", pi_text, "Row permutation for 'permutation', 1-based image list");
  gen->add_option("--tau", tau_text, "Column permutation for 'permutation', 1-based image list");
  gen->add_option("--out", out, "Output file (default stdout)");

  // solve
  std::string in_path;
  auto* solve = app.add_subcommand("solve", "Enumerate equilibria and minimal complexities");
  solve->add_option("in", in_path, "Game JSON file")->required();
  auto* solve_max = solve->add_option("--max-n", max_n, "Largest n for enumeration");
  solve->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  solve->add_option("--out", out, "Output file (default stdout)");

  // verify
  std::string profile_path;
  std::optional<std::string> c1_text, c2_text;
  auto* verify = app.add_subcommand("verify", "Check a profile against a game");
  verify->add_option("in", in_path, "Game JSON file")->required();
  verify->add_option("profile", profile_path, "Profile JSON file")->required();
  verify->add_option("--c1", c1_text, "Capability of player 1");
  verify->add_option("--c2", c2_text, "Capability of player 2");
  verify->add_option("--out", out, "Output file (default stdout)");

  // scan
  std::size_t from = 0, to = 0;
  auto* scan = app.add_subcommand("scan", "Closed-form complexities across a family");
  scan->add_option("family", family, "beta | primeblock | constsum-beta | constsum-primeblock")
      ->required();
  scan->add_option("--from", from, "First n")->required();
  scan->add_option("--to", to, "Last n")->required();
  scan->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--out", out, "Output file (default stdout)");

  // recurrence
  std::size_t rec_to = 0;
  auto* rec = app.add_subcommand("recurrence", "Print a_n, b_n, det B_n, g_n");
  rec->add_option("--to", rec_to, "Last index (>= 8)")->required();
  rec->add_option("--format", format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  rec->add_option("--out", out, "Output file (default stdout)");

  // sample
  std::string dist_path;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::string bits_text;
  auto* sample = app.add_subcommand("sample", "Draw exact samples from a distribution");
  sample->add_option("dist", dist_path, "Distribution JSON file")->required();
  sample->add_option("--count", count, "Number of samples");
  sample->add_option("--seed", seed, "Seed of the bit source");
  sample->add_option("--bits", bits_text, "Draw one sample from this fixed bit string");
  sample->add_option("--out", out, "Output file (default stdout)");

  // analyze
  std::size_t depth = 64;
  auto* analyze = app.add_subcommand("analyze", "Leaf mass resolved within a tree depth");
  analyze->add_option("dist", dist_path, "Distribution JSON file")->required();
  analyze->add_option("--depth", depth, "Tree depth (>= 1)")->check(CLI::PositiveNumber);
  analyze->add_option("--out", out, "Output file (default stdout)");

  // bound
  auto* bound = app.add_subcommand("bound", "Explicit upper bounds on C_1 and C_2");
  bound->add_option("in", in_path, "Game JSON file")->required();
  auto* bound_max = bound->add_option("--max-n", max_n, "Largest n for the measured values");
  bound->add_option("--out", out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      emit(game_to_json(generate(family, n_opt, pi_text, tau_text)), out);
    } else if (solve->parsed()) {
      const Game g = game_from_json(read_file(in_path), in_path);
      const SolveReport r =
          support_enumeration(g, resolve_max_n(max_n, solve_max->count() > 0));
      emit(format == "csv" ? solve_report_to_csv(r) : dump(solve_report_to_json(g, r)), out);
    } else if (verify->parsed()) {
      const Game g = game_from_json(read_file(in_path), in_path);
      const Profile p = profile_from_json(read_file(profile_path), profile_path);
      check_dimensions(g, p);
      const auto [u1, u2] = expected_payoffs(g, p);
      Json j{{"nash", is_nash(g, p)},
             {"C_x", complexity(p.x).get_str()},
             {"C_y", complexity(p.y).get_str()},
             {"payoff_1", rational_text(u1)},
             {"payoff_2", rational_text(u2)}};
      bool admissible = true;
      auto capability = [&](const std::optional<std::string>& text, const MixedStrategy& s,
                            const char* key) {
        if (!text) return;
        BigInteger c;
        if (c.set_str(*text, 10) != 0 || c < 1) {
          throw Error(ErrorKind::kParse, std::string("--") + key + " must be a positive integer");
        }
        const bool ok = capability_admissible(s, c);
        admissible = admissible && ok;
        j[std::string("capability_") + key] = Json{{"limit", c.get_str()}, {"admissible", ok}};
      };
      capability(c1_text, p.x, "c1");
      capability(c2_text, p.y, "c2");
      if (c1_text || c2_text) j["bounded_nash"] = admissible && j["nash"].get<bool>();
      emit(dump(j), out);
    } else if (scan->parsed()) {
      if (from > to) throw Error(ErrorKind::kParse, "--from exceeds --to");
      if (!scan->get_option("--format")->count()) format = "csv";
      const RecurrenceTable table(std::max<std::size_t>(to, 4));
      std::vector<ScanRow> rows;
      for (std::size_t k = from; k <= to; ++k) rows.push_back(scan_row(family, k, table));
      emit(scan_output(rows, format), out);
    } else if (rec->parsed()) {
      if (rec_to < 8) throw Error(ErrorKind::kUnsupportedDimension, "--to must be >= 8");
      if (!rec->get_option("--format")->count()) format = "csv";
      emit(recurrence_output(rec_to, format), out);
    } else if (sample->parsed()) {
      const MixedStrategy x = distribution_from_json(read_file(dist_path), dist_path);
      const DdgSampler s(x);
      if (!bits_text.empty()) {
        std::vector<int> bits;
        for (char ch : bits_text) {
          if (ch != '0' && ch != '1') throw Error(ErrorKind::kParse, "--bits takes 0/1 digits");
          bits.push_back(ch - '0');
        }
        ScriptedBits src(std::move(bits));
        const SampleResult r = s.sample(src);
        emit(dump(Json{{"outcome", r.index + 1}, {"bits", r.bits}}), out);
      } else {
        BitSource src(seed);
        std::vector<std::uint64_t> freq(x.size(), 0);
        std::uint64_t max_bits = 0;
        for (std::size_t k = 0; k < count; ++k) {
          const SampleResult r = s.sample(src);
          ++freq[r.index];
          max_bits = std::max(max_bits, r.bits);
        }
        Json table = Json::array();
        for (std::size_t i = 0; i < x.size(); ++i) {
          const double expected = static_cast<double>(count) * to_double(x.probability(i));
          table.push_back(Json{{"outcome", i + 1}, {"count", freq[i]}, {"expected", expected}});
        }
        emit(dump(Json{{"count", count},
                       {"seed", seed},
                       {"frequencies", table},
                       {"bits_total", src.consumed()},
                       {"bits_mean", count ? static_cast<double>(src.consumed()) / count : 0.0},
                       {"bits_max", max_bits},
                       {"entropy", entropy(x)}}),
             out);
      }
    } else if (analyze->parsed()) {
      const MixedStrategy x = distribution_from_json(read_file(dist_path), dist_path);
      const SamplerAnalysis a = DdgSampler(x).analyze(depth);
      Json resolved = Json::array();
      for (const auto& r : a.resolved) resolved.push_back(rational_text(r));
      emit(dump(Json{{"depth", a.depth},
                     {"resolved", resolved},
                     {"tail", rational_text(a.tail)},
                     {"tail_float", to_double(a.tail)},
                     {"max_error_float", to_double(a.max_error)},
                     {"error_within_tail", a.error_within_tail},
                     {"tail_within_n_2_pow_minus_depth", a.tail_within_bound},
                     {"partial_expected_bits", to_double(a.partial_expected_bits)},
                     {"entropy", entropy(x)},
                     {"storage_bits", storage_bits(x)}}),
           out);
    } else if (bound->parsed()) {
      const Game g = game_from_json(read_file(in_path), in_path);
      const auto [b1, b2] = complexity_upper_bound(g);
      Json j{{"n", g.size()}, {"bound_C1", b1.get_str()}, {"bound_C2", b2.get_str()}};
      const std::size_t limit = resolve_max_n(max_n, bound_max->count() > 0);
      if (g.size() <= limit) {
        const SolveReport r = support_enumeration(g, limit);
        if (r.c1_min) {
          j["measured_C1"] = r.c1_min->get_str();
          j["measured_C2"] = r.c2_min->get_str();
          j["dominates"] = b1 >= *r.c1_min && b2 >= *r.c2_min;
        }
      } else {
        j["measured"] = "skipped: n exceeds the enumeration limit";
      }
      emit(dump(j), out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 4;
  }
  return 0;
}
