#pragma once

// Report assembly and rendering behind the command-line tool. Every command
// produces one table plus a pass flag; the exit code is 0 when the checks
// pass, 1 when a mathematical check fails and 2 for usage errors.

#include <sobolev/certificates.hpp>
#include <sobolev/closed_form.hpp>
#include <sobolev/invariance.hpp>
#include <sobolev/profiles.hpp>
#include <sobolev/radial_norm.hpp>
#include <sobolev/verify.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sobolev::cli {

inline constexpr const char* kSchema = "sobolev-sharp/report-v1";
inline constexpr int kDefaultDigits = 12;
inline constexpr std::uint64_t kDefaultSeed = 20240601;
inline constexpr const char* kDigitsEnv = "SOBOLEV_DIGITS";

enum class Format { text, csv, json };

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigError("unknown format '" + s + "' (expected json, csv or text)");
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"ell",         "kn",        "check-operator", "check-weak",
                                              "check-invariance", "extremal", "check-inequality"};
  return names;
}

struct RunConfig {
  std::string command;
  std::size_t n = 2;
  std::optional<std::size_t> m;
  std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  std::optional<double> tol;
  Format format = Format::text;
  std::uint64_t seed = kDefaultSeed;
  int digits = kDefaultDigits;

  double tolerance() const { return tol.value_or(default_tolerance(n)); }
};

/// Default digits, overridden by SOBOLEV_DIGITS when set.
inline int default_digits() {
  const char* env = std::getenv(kDigitsEnv);
  if (env == nullptr || *env == '\0') {
    return kDefaultDigits;
  }
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 40) {
    throw ConfigError(std::string(kDigitsEnv) + " must be an integer in [1, 40]");
  }
  return static_cast<int>(v);
}

inline void validate(const RunConfig& c) {
  if (std::find(commands().begin(), commands().end(), c.command) == commands().end()) {
    throw ConfigError("unknown command '" + c.command + "'");
  }
  if (c.n < 1 || c.n > 6) {
    throw ConfigError("--n must be in [1, 6]");
  }
  if (c.m && (*c.m < 1 || *c.m > 6)) {
    throw ConfigError("--m must be in [1, 6]");
  }
  if (c.command == "ell" && c.m && *c.m > c.n) {
    throw ConfigError("ell: need m <= n");
  }
  if (c.command == "check-weak" && c.n < 2) {
    throw ConfigError("check-weak: need n >= 2");
  }
  if (c.eps.empty()) {
    throw ConfigError("--eps needs at least one value");
  }
  for (double e : c.eps) {
    if (!(e > 0.0 && e < 0.25)) {
      throw ConfigError("--eps values must lie in (0, 1/4)");
    }
  }
  if (c.tol && !(*c.tol >= 1e-12 && *c.tol <= 1e-4)) {
    throw ConfigError("--tol must be in [1e-12, 1e-4]");
  }
  if (c.digits < 1 || c.digits > 40) {
    throw ConfigError("--digits must be in [1, 40]");
  }
}

using Cell = std::variant<std::string, Rational, double, HighPrecision, long long, bool>;

inline Cell integer_cell(std::size_t v) { return static_cast<long long>(v); }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline bool is_numeric(const Cell& c) {
  return std::holds_alternative<double>(c) || std::holds_alternative<HighPrecision>(c) ||
         std::holds_alternative<long long>(c);
}

inline std::string format_number(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

/// Plain rendering: rationals as p/q, floats at `digits` significant digits.
inline std::string format_cell(const Cell& c, int digits) {
  return std::visit(
      [digits](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<V, Rational>) {
          return to_string(v);
        } else if constexpr (std::is_same_v<V, double>) {
          return format_number(v, digits);
        } else if constexpr (std::is_same_v<V, HighPrecision>) {
          std::ostringstream os;
          os << std::setprecision(digits) << v;
          return os.str();
        } else if constexpr (std::is_same_v<V, long long>) {
          return std::to_string(v);
        } else {
          return v ? "true" : "false";
        }
      },
      c);
}

inline std::string json_cell(const Cell& c, int digits) {
  if (const auto* s = std::get_if<std::string>(&c)) {
    return nlohmann::json(*s).dump();
  }
  if (const auto* q = std::get_if<Rational>(&c)) {
    return nlohmann::json(to_string(*q)).dump();
  }
  if (const auto* d = std::get_if<double>(&c); d != nullptr && !std::isfinite(*d)) {
    return "null";
  }
  return format_cell(c, digits);
}

inline std::string csv_field(const std::string& s) {
  bool quote = s.find_first_of(",\"\r\n") != std::string::npos ||
               (!s.empty() && (s.front() == ' ' || s.back() == ' '));
  if (!quote) {
    return s;
  }
  std::string out = "\"";
  for (char ch : s) {
    out += ch;
    if (ch == '"') {
      out += '"';
    }
  }
  return out + "\"";
}

inline std::string json_rows(const Table& t, int digits) {
  std::string out = "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",{" : "{";
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
      out += (k ? "," : "") + nlohmann::json(t.columns[k]).dump() + ":" + json_cell(t.rows[r][k], digits);
    }
    out += "}";
  }
  return out + "]";
}

/// Header plus rows in the requested format; JSON renders an array of objects.
inline std::string emit_table(const Table& t, Format f, int digits) {
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size()) {
      throw std::invalid_argument("emit_table: row width differs from header");
    }
  }
  std::ostringstream os;
  if (f == Format::json) {
    return json_rows(t, digits);
  }
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : t.rows) {
    std::vector<std::string> line;
    for (const auto& c : row) {
      line.push_back(format_cell(c, digits));
    }
    cells.push_back(std::move(line));
  }
  if (f == Format::csv) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
      os << (k ? "," : "") << csv_field(t.columns[k]);
    }
    os << "\n";
    for (const auto& line : cells) {
      for (std::size_t k = 0; k < line.size(); ++k) {
        os << (k ? "," : "") << csv_field(line[k]);
      }
      os << "\n";
    }
    return os.str();
  }
  std::vector<std::size_t> width;
  for (const auto& c : t.columns) {
    width.push_back(c.size());
  }
  for (const auto& line : cells) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      width[k] = std::max(width[k], line[k].size());
    }
  }
  auto put = [&](const std::vector<std::string>& line, const std::vector<Cell>* kinds) {
    std::string s;
    for (std::size_t k = 0; k < line.size(); ++k) {
      bool right = kinds != nullptr && is_numeric((*kinds)[k]);
      std::string pad(width[k] - line[k].size(), ' ');
      s += (k ? "  " : "") + (right ? pad + line[k] : line[k] + (k + 1 < line.size() ? pad : ""));
    }
    os << s << "\n";
  };
  put(t.columns, t.rows.empty() ? nullptr : &t.rows.front());
  for (std::size_t r = 0; r < cells.size(); ++r) {
    put(cells[r], &t.rows[r]);
  }
  return os.str();
}

struct Report {
  Table table;
  bool pass = true;
  std::vector<std::string> notes;
};

inline Report ell_report(const RunConfig& c) {
  Report rep;
  rep.table.columns = {"N", "m", "closed_form", "symbolic", "agree"};
  auto add = [&](std::size_t n, std::size_t m) {
    Rational closed = ell_closed_form(n, m).value;
    Rational symbolic = ell_oracle(n, m).value;
    bool agree = closed == symbolic;
    rep.pass = rep.pass && agree;
    rep.table.rows.push_back({integer_cell(n), integer_cell(m), closed, symbolic, agree});
  };
  if (c.m) {
    add(c.n, *c.m);
  } else {
    for (std::size_t n = 1; n <= c.n; ++n) {
      for (std::size_t m = 1; m <= n; ++m) {
        add(n, m);
      }
    }
  }
  return rep;
}

inline Report kn_report(const RunConfig& c) {
  Report rep;
  rep.table.columns = {"N", "ell", "omega", "K_N", "exact"};
  for (std::size_t n = 1; n <= c.n; ++n) {
    BestConstant b = best_constant(n);
    rep.table.rows.push_back({integer_cell(n), b.ell, b.omega.exact_form(), b.kn, b.description()});
  }
  return rep;
}

inline Report operator_report(const RunConfig& c) {
  Report rep;
  rep.table.columns = {"N", "F_is_zero", "F"};
  RadialExpr f = operator_L_apply(c.n);
  rep.pass = f.is_zero();
  rep.table.rows.push_back({integer_cell(c.n), f.is_zero(), f.to_string()});
  return rep;
}

inline std::vector<RadialProfile> weak_corpus() {
  using namespace profiles;
  return {make_profile(Bump(1.0)),
          make_profile(GaussianCutoff(1.0, 4.0)),
          make_profile(LorentzianCutoff(3.0)),
          make_profile(Plateau(1.5)),
          make_profile(MollifiedExp(0.5, 6.0)),
          make_profile(Dilated(make_profile(GaussianCutoff(1.0, 2.0)), 3.0)),
          make_profile(AnnulusBump(1.0, 0.5))};
}

inline constexpr double kWeakIdentityTolerance = 1e-6;

inline Report weak_report(const RunConfig& c) {
  Report rep;
  rep.table.columns = {"N", "profile", "lhs", "rhs", "relative_error", "pass"};
  for (const auto& v : weak_corpus()) {
    WeakIdentityReport w = weak_identity_check(c.n, v, c.tolerance());
    bool ok = w.relative_error <= kWeakIdentityTolerance;
    rep.pass = rep.pass && ok;
    rep.table.rows.push_back({integer_cell(c.n), w.profile, w.lhs, w.rhs, w.relative_error, ok});
  }
  rep.notes.push_back("relative_error is absolute where rhs = 0");
  return rep;
}

inline Report invariance_report(const RunConfig& c) {
  Report rep;
  rep.table.columns = {"kind", "N", "m", "trials", "max_relative_error", "pass"};
  std::mt19937_64 rng(c.seed);
  const std::size_t max_order = c.m.value_or(c.n);
  auto push = [&](const InvarianceRow& r) {
    rep.pass = rep.pass && r.pass;
    rep.table.rows.push_back({r.kind, integer_cell(r.dim), integer_cell(r.order), integer_cell(r.trials),
                              r.max_relative_error, r.pass});
  };
  for (std::size_t n = 1; n <= std::min<std::size_t>(c.n, 3); ++n) {
    for (std::size_t m = 1; m <= std::min<std::size_t>(max_order, 3); ++m) {
      push(exact_invariance(n, m, 10, rng));
    }
  }
  for (std::size_t n = 1; n <= c.n; ++n) {
    for (std::size_t m = 1; m <= max_order; ++m) {
      push(numeric_invariance(n, m, 100, rng));
    }
  }
  return rep;
}

inline Report extremal_report(const RunConfig& c) {
  Report rep;
  rep.table.columns = {"N", "eps", "numerator", "denominator", "ratio", "ratio_error", "sharp_value"};
  std::vector<double> eps = c.eps;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  double sharp = static_cast<double>(1 / best_constant(c.n).kn);
  double prev = INFINITY;
  for (double e : eps) {
    ExtremalRatio r = extremal_ratio(c.n, e, c.tolerance());
    // the sharp inequality forces ratio >= 1/K_N; the family should decrease toward it
    rep.pass = rep.pass && r.ratio + r.ratio_error >= sharp && r.ratio < prev;
    prev = r.ratio;
    rep.table.rows.push_back({integer_cell(c.n), e, r.numerator, r.denominator, r.ratio, r.ratio_error, sharp});
  }
  return rep;
}

inline Report inequality_report(const RunConfig& c) {
  Report rep;
  rep.table.columns = {"N", "profile", "lhs", "rhs", "slack", "margin", "strict"};
  for (const auto& v : peaked_corpus()) {
    InequalityReport r = embedding_inequality_check(c.n, v, c.tolerance());
    // in one dimension monotone profiles are equality cases
    if (c.n >= 2) {
      rep.pass = rep.pass && r.strict();
    }
    rep.table.rows.push_back({integer_cell(c.n), r.profile, r.lhs, r.rhs, r.slack, r.margin, r.strict()});
  }
  return rep;
}

inline Report build_report(const RunConfig& c) {
  validate(c);
  if (c.command == "ell") return ell_report(c);
  if (c.command == "kn") return kn_report(c);
  if (c.command == "check-operator") return operator_report(c);
  if (c.command == "check-weak") return weak_report(c);
  if (c.command == "check-invariance") return invariance_report(c);
  if (c.command == "extremal") return extremal_report(c);
  return inequality_report(c);
}

inline void render(const RunConfig& c, const Report& rep, std::ostream& out) {
  if (c.format == Format::csv) {
    out << emit_table(rep.table, Format::csv, c.digits);
    return;
  }
  if (c.format == Format::text) {
    out << "# " << c.command << "  N=" << c.n << "  seed=" << c.seed << "\n";
    out << emit_table(rep.table, Format::text, c.digits);
    for (const auto& note : rep.notes) {
      out << "# " << note << "\n";
    }
    out << "result: " << (rep.pass ? "PASS" : "FAIL") << "\n";
    return;
  }
  std::string doc = "{\"schema\":" + nlohmann::json(kSchema).dump() +
                    ",\"command\":" + nlohmann::json(c.command).dump() +
                    ",\"N\":" + std::to_string(c.n) + ",\"seed\":" + std::to_string(c.seed) +
                    ",\"digits\":" + std::to_string(c.digits) + ",\"pass\":" + (rep.pass ? "true" : "false");
  // a single-row report also exposes its fields at the top level
  if (rep.table.rows.size() == 1) {
    for (std::size_t k = 0; k < rep.table.columns.size(); ++k) {
      const auto& name = rep.table.columns[k];
      if (name == "N") {
        continue;
      }
      doc += "," + nlohmann::json(name).dump() + ":" + json_cell(rep.table.rows[0][k], c.digits);
    }
  }
  doc += ",\"rows\":" + emit_table(rep.table, Format::json, c.digits) + "}\n";
  out << doc;
}

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Report rep;
  try {
    rep = build_report(c);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // quadrature failure, oracle mismatch, inequality violation
    err << "check failed: " << e.what() << "\n";
    return 1;
  }
  render(c, rep, out);
  if (!rep.pass) {
    err << c.command << ": check failed\n";
  }
  return rep.pass ? 0 : 1;
}

}  // namespace sobolev::cli
