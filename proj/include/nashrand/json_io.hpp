#pragma once

// JSON and CSV formats. Payoff matrices are written as plain numbers; every
// other integer that can grow (numerators, denominators, complexities) is a
// decimal string. Indices in files are 1-based.

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nashrand/equilibria.hpp"
#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"
#include "nashrand/game.hpp"
#include "nashrand/strategy.hpp"

namespace nashrand {

using Json = nlohmann::ordered_json;

namespace detail {

inline Error parse_error(const std::string& where, const std::string& what) {
  return Error(ErrorKind::kParse, where + ": " + what);
}

inline std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

inline Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(source + " line " + std::to_string(line_of(text, e.byte)),
                      "malformed JSON");
  }
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw parse_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw parse_error(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

// Accepts a decimal string or a JSON integer.
inline BigInteger big_from(const Json& v, const std::string& path) {
  BigInteger out;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.empty() || out.set_str(s, 10) != 0) throw parse_error(path, "not a decimal integer");
    return out;
  }
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return BigInteger(static_cast<unsigned long>(v.get<std::uint64_t>()));
    return BigInteger(static_cast<long>(v.get<std::int64_t>()));
  }
  throw parse_error(path, "expected an integer");
}

inline IntMatrix matrix_from(const Json& v, std::size_t n, const std::string& path) {
  if (!v.is_array() || v.size() != n) {
    throw parse_error(path, "expected " + std::to_string(n) + " rows");
  }
  IntMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r + 1) + "]";
    if (!v[r].is_array() || v[r].size() != n) {
      throw parse_error(rp, "expected " + std::to_string(n) + " entries");
    }
    for (std::size_t c = 0; c < n; ++c) {
      const Json& e = v[r][c];
      const std::string ep = rp + "[" + std::to_string(c + 1) + "]";
      if (!e.is_number_integer() || (e.is_number_unsigned() && e.get<std::uint64_t>() > INT64_MAX)) {
        throw parse_error(ep, "expected a 64-bit integer");
      }
      m(r, c) = static_cast<long>(e.get<std::int64_t>());
    }
  }
  return m;
}

inline std::string matrix_text(const IntMatrix& m, const std::string& indent) {
  std::ostringstream os;
  os << "[\n";
  for (std::size_t r = 0; r < m.size(); ++r) {
    os << indent << "  [";
    for (std::size_t c = 0; c < m.size(); ++c) os << (c ? ", " : "") << m(r, c).get_str();
    os << "]" << (r + 1 < m.size() ? "," : "") << "\n";
  }
  os << indent << "]";
  return os.str();
}

}  // namespace detail

// ------------------------------------------------------------------ games

/// Deterministic layout: one matrix row per line.
inline std::string game_to_json(const Game& g) {
  std::ostringstream os;
  os << "{\n  \"n\": " << g.size() << ",\n";
  if (g.family_tag()) os << "  \"family_tag\": " << Json(*g.family_tag()).dump() << ",\n";
  if (g.constant_sum()) os << "  \"constant_sum\": " << g.constant_sum()->get_str() << ",\n";
  os << "  \"A\": " << detail::matrix_text(g.a(), "  ") << ",\n";
  os << "  \"B\": " << detail::matrix_text(g.b(), "  ") << "\n}\n";
  return os.str();
}

inline Game game_from_json(const std::string& text, const std::string& source = "game") {
  const Json j = detail::parse_text(text, source);
  const Json& nj = detail::field(j, "n", "");
  if (!nj.is_number_integer() || nj.get<std::int64_t>() < 1) {
    throw detail::parse_error("n", "expected a positive integer");
  }
  const auto n = static_cast<std::size_t>(nj.get<std::int64_t>());
  IntMatrix a = detail::matrix_from(detail::field(j, "A", ""), n, "A");
  IntMatrix b = detail::matrix_from(detail::field(j, "B", ""), n, "B");
  std::optional<std::string> tag;
  if (auto it = j.find("family_tag"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw detail::parse_error("family_tag", "expected a string");
    tag = it->get<std::string>();
  }
  std::optional<BigInteger> u;
  if (auto it = j.find("constant_sum"); it != j.end() && !it->is_null()) {
    u = detail::big_from(*it, "constant_sum");
  }
  try {
    return Game(std::move(a), std::move(b), std::move(tag), std::move(u));
  } catch (const Error& e) {
    throw detail::parse_error("constant_sum", e.what());
  }
}

// ------------------------------------------------------------- strategies

inline Json strategy_to_json(const MixedStrategy& x) {
  Json nums = Json::array();
  for (const auto& p : x.numerators()) nums.push_back(p.get_str());
  return Json{{"numerators", nums}, {"denominator", x.denominator().get_str()}};
}

inline MixedStrategy strategy_from_json(const Json& j, const std::string& path) {
  const Json& nums = detail::field(j, "numerators", path);
  const std::string np = path.empty() ? "numerators" : path + ".numerators";
  if (!nums.is_array() || nums.empty()) throw detail::parse_error(np, "expected a nonempty array");
  std::vector<BigInteger> p;
  for (std::size_t i = 0; i < nums.size(); ++i)
    p.push_back(detail::big_from(nums[i], np + "[" + std::to_string(i + 1) + "]"));
  const BigInteger q =
      detail::big_from(detail::field(j, "denominator", path),
                       path.empty() ? "denominator" : path + ".denominator");
  try {
    return MixedStrategy::from_fraction(std::move(p), q);
  } catch (const Error& e) {
    throw detail::parse_error(path.empty() ? "distribution" : path, e.what());
  }
}

inline MixedStrategy distribution_from_json(const std::string& text,
                                            const std::string& source = "distribution") {
  return strategy_from_json(detail::parse_text(text, source), "");
}

inline Json profile_to_json(const Profile& p) {
  return Json{{"x", strategy_to_json(p.x)}, {"y", strategy_to_json(p.y)}};
}

inline Profile profile_from_json(const std::string& text, const std::string& source = "profile") {
  const Json j = detail::parse_text(text, source);
  MixedStrategy x = strategy_from_json(detail::field(j, "x", ""), "x");
  MixedStrategy y = strategy_from_json(detail::field(j, "y", ""), "y");
  return Profile(std::move(x), std::move(y));
}

// ---------------------------------------------------------------- reports

inline Json support_to_json(const std::vector<std::size_t>& s) {
  Json a = Json::array();
  for (std::size_t i : s) a.push_back(i + 1);
  return a;
}

inline Json solve_report_to_json(const Game& g, const SolveReport& r) {
  Json eqs = Json::array();
  for (std::size_t k = 0; k < r.equilibria.size(); ++k) {
    const Profile& p = r.equilibria[k];
    Json e = profile_to_json(p);
    e["support_x"] = support_to_json(r.supports[k].rows);
    e["support_y"] = support_to_json(r.supports[k].cols);
    e["C_x"] = complexity(p.x).get_str();
    e["C_y"] = complexity(p.y).get_str();
    eqs.push_back(std::move(e));
  }
  Json out{{"n", g.size()}};
  if (g.family_tag()) out["family_tag"] = *g.family_tag();
  out["equilibria"] = std::move(eqs);
  out["C1"] = r.c1_min ? Json(r.c1_min->get_str()) : Json(nullptr);
  out["C2"] = r.c2_min ? Json(r.c2_min->get_str()) : Json(nullptr);
  out["degenerate"] = r.degenerate_flag;
  out["enumerated_supports"] = r.enumerated_supports;
  if (r.degenerate_flag) {
    out["note"] =
        "degenerate game: minima are over extreme equilibria with equal-size supports only";
  }
  return out;
}

inline std::string join_big(const std::vector<BigInteger>& v, char sep = ' ') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i].get_str();
  }
  return s;
}

inline std::string join_support(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v[i] + 1);
  }
  return s;
}

inline std::string solve_report_to_csv(const SolveReport& r) {
  std::ostringstream os;
  os << "index,support_x,support_y,x_numerators,x_denominator,y_numerators,y_denominator,C_x,C_y,"
        "degenerate\n";
  for (std::size_t k = 0; k < r.equilibria.size(); ++k) {
    const Profile& p = r.equilibria[k];
    os << k + 1 << ',' << join_support(r.supports[k].rows) << ','
       << join_support(r.supports[k].cols) << ',' << join_big(p.x.numerators()) << ','
       << p.x.denominator().get_str() << ',' << join_big(p.y.numerators()) << ','
       << p.y.denominator().get_str() << ',' << complexity(p.x).get_str() << ','
       << complexity(p.y).get_str() << ',' << (r.degenerate_flag ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace nashrand
