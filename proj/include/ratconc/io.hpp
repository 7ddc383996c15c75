#pragma once

// JSON knot documents (schema "ratconc.knot/1") and report rendering
// (schema "ratconc.report/1"). Rationals travel as "p/q" strings.

#include "ratconc/obstruction.hpp"

#include <json.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ratconc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kKnotSchema = "ratconc.knot/1";
inline constexpr const char* kReportSchema = "ratconc.report/1";

/// A malformed or inconsistent document; `field` is a JSON pointer.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses the output of LaurentPoly::to_string, e.g. "2s^2 - (1/2)s + 1" or "s^-1".
inline LaurentPoly parse_polynomial(std::string_view text, Var v) {
  std::string src;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) src += ch;
  if (src.empty()) throw std::invalid_argument("empty polynomial");
  const char x = var_name(v);
  LaurentPoly out(v);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("malformed polynomial '" + std::string(text) + "': " + why);
  };
  auto read_rational = [&](std::size_t& k) {
    std::size_t start = k;
    while (k < src.size() && (std::isdigit(static_cast<unsigned char>(src[k])) || src[k] == '/')) ++k;
    if (start == k) fail("expected a number");
    return parse_rational(src.substr(start, k - start));
  };
  while (i < src.size()) {
    int sign = 1;
    if (src[i] == '+' || src[i] == '-') {
      sign = src[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-'");
    }
    Rational coeff = 1;
    bool have_coeff = false;
    if (i < src.size() && src[i] == '(') {
      ++i;
      bool neg = i < src.size() && src[i] == '-';
      if (neg) ++i;
      coeff = read_rational(i);
      if (neg) coeff = -coeff;
      if (i >= src.size() || src[i] != ')') fail("unbalanced parenthesis");
      ++i;
      have_coeff = true;
    } else if (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
      coeff = read_rational(i);
      have_coeff = true;
    }
    if (i < src.size() && src[i] == '*') ++i;
    int exponent = 0;
    if (i < src.size() && src[i] == x) {
      ++i;
      exponent = 1;
      if (i < src.size() && src[i] == '^') {
        ++i;
        std::size_t start = i;
        if (i < src.size() && (src[i] == '-' || src[i] == '+')) ++i;
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        if (start == i) fail("missing exponent");
        try {
          exponent = std::stoi(src.substr(start, i - start));
        } catch (const std::exception&) {
          fail("bad exponent");
        }
      }
    } else if (!have_coeff) {
      fail(std::string("expected a coefficient or '") + x + "'");
    }
    out += LaurentPoly::monomial(coeff * sign, exponent, v);
  }
  return out;
}

struct FamilyEntry {
  std::string knot;
  int multiplicity = 1;
  friend bool operator==(const FamilyEntry&, const FamilyEntry&) = default;
};

/// Either a plain Seifert matrix, or a satellite (pattern + companions),
/// optionally with further named satellites and a family over them.
struct KnotDocument {
  std::string name = "K";
  std::optional<SeifertMatrix> seifert;
  std::optional<InfectedKnot> knot;
  std::vector<InfectedKnot> knots;
  std::vector<FamilyEntry> family;

  friend bool operator==(const KnotDocument&, const KnotDocument&) = default;

  const SeifertMatrix& seifert_matrix() const { return seifert ? *seifert : knot->pattern.seifert; }

  const InfectedKnot& resolve(const std::string& ref) const {
    if (knot && knot->name == ref) return *knot;
    for (const auto& k : knots)
      if (k.name == ref) return k;
    throw DocumentError("/family", "unknown knot '" + ref + "'");
  }

  FamilySpec family_spec() const {
    if (!knot) throw DocumentError("/pattern", "obstruct needs a pattern with companions");
    FamilySpec f;
    if (family.empty()) f.members.push_back(FamilyMember{*knot, 1});
    for (const auto& e : family) f.members.push_back(FamilyMember{resolve(e.knot), e.multiplicity});
    return f;
  }
};

namespace io_detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

inline const Json& require(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw DocumentError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(child(path, key), "missing field");
  return *it;
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw DocumentError(path, "expected a string");
  return j.get<std::string>();
}

inline Rational as_rational(const Json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(path, e.what());
  }
  throw DocumentError(path, "expected a rational as a \"p/q\" string");
}

inline SeifertMatrix as_seifert(const Json& j, const std::string& path, const std::string& label) {
  if (!j.is_array()) throw DocumentError(path, "expected a square integer matrix");
  IntMatrix m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != j.size())
      throw DocumentError(child(path, r), "expected a row of length " + std::to_string(j.size()));
    std::vector<long> out;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_number_integer()) throw DocumentError(child(child(path, r), c), "expected an integer");
      out.push_back(row[c].get<long>());
    }
    m.push_back(std::move(out));
  }
  try {
    return SeifertMatrix(std::move(m), label);
  } catch (const SeifertInvariantError& e) {
    throw DocumentError(path, e.what());
  }
}

inline LaurentPoly as_polynomial(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return LaurentPoly::constant(Rational(j.get<long long>()), Var::s);
  if (!j.is_string()) throw DocumentError(path, "expected a polynomial in s as a string");
  try {
    return parse_polynomial(j.get<std::string>(), Var::s);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(path, e.what());
  }
}

inline Companion as_companion(const Json& j, const std::string& path, const std::string& fallback) {
  if (!j.is_object()) throw DocumentError(path, "expected a companion object");
  std::string name = j.contains("name") ? as_string(j["name"], child(path, "name")) : fallback;
  int kinds = 0;
  for (const char* k : {"symbol", "rho0", "rho0_interval", "seifert", "trivial"}) kinds += j.contains(k);
  if (kinds != 1)
    throw DocumentError(path, "give exactly one of symbol, rho0, rho0_interval, seifert, trivial");
  if (j.contains("symbol")) {
    std::string s = as_string(j["symbol"], child(path, "symbol"));
    if (s.empty()) throw DocumentError(child(path, "symbol"), "symbol names must be nonempty");
    return Companion::symbol(name, s);
  }
  if (j.contains("rho0")) return Companion::value(name, Rho0Value::exact(as_rational(j["rho0"], child(path, "rho0"))));
  if (j.contains("rho0_interval")) {
    const Json& iv = j["rho0_interval"];
    const std::string p = child(path, "rho0_interval");
    if (!iv.is_array() || iv.size() != 2) throw DocumentError(p, "expected [lower, upper]");
    Rational lo = as_rational(iv[0], child(p, 0)), hi = as_rational(iv[1], child(p, 1));
    if (lo > hi) throw DocumentError(p, "lower bound exceeds upper bound");
    return Companion::value(name, Rho0Value::interval(lo, hi));
  }
  if (j.contains("seifert")) return Companion::from_seifert(name, as_seifert(j["seifert"], child(path, "seifert"), name));
  if (!j["trivial"].is_boolean() || !j["trivial"].get<bool>())
    throw DocumentError(child(path, "trivial"), "expected true");
  return Companion::trivial(name);
}

inline PatternKnot as_pattern(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "R") return knots::pattern_R();
    throw DocumentError(path, "unknown built-in pattern '" + j.get<std::string>() + "'");
  }
  SeifertMatrix v = as_seifert(require(j, "seifert", path), child(path, "seifert"), "pattern");
  std::vector<Curve> curves;
  if (j.contains("curves")) {
    const Json& cs = j["curves"];
    const std::string cp = child(path, "curves");
    if (!cs.is_array()) throw DocumentError(cp, "expected an array");
    for (std::size_t k = 0; k < cs.size(); ++k) {
      const std::string p = child(cp, k);
      Curve c{as_string(require(cs[k], "name", p), child(p, "name")), {}};
      const Json& cls = require(cs[k], "class", p);
      if (!cls.is_array()) throw DocumentError(child(p, "class"), "expected a coordinate vector");
      for (std::size_t i = 0; i < cls.size(); ++i) c.coords.push_back(as_polynomial(cls[i], child(child(p, "class"), i)));
      curves.push_back(std::move(c));
    }
  }
  try {
    return PatternKnot(std::move(v), std::move(curves));
  } catch (const std::invalid_argument& e) {
    throw DocumentError(child(path, "curves"), e.what());
  }
}

inline InfectedKnot as_infected(const Json& j, const std::string& path, const std::string& name) {
  InfectedKnot k{name, as_pattern(require(j, "pattern", path), child(path, "pattern")), {}};
  if (j.contains("companions")) {
    const Json& cs = j["companions"];
    if (!cs.is_object()) throw DocumentError(child(path, "companions"), "expected an object");
    for (auto it = cs.begin(); it != cs.end(); ++it)
      k.infections.emplace(it.key(), as_companion(it.value(), child(child(path, "companions"), it.key()), "J_" + it.key()));
  }
  try {
    k.validate();
  } catch (const std::invalid_argument& e) {
    throw DocumentError(child(path, "companions"), e.what());
  }
  return k;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; }
    else ++col;
  }
  return {line, col};
}

inline Json render_matrix(const SeifertMatrix& v) {
  Json m = Json::array();
  for (const auto& row : v.entries()) m.push_back(row);
  return m;
}

inline Json render_companion(const Companion& c) {
  Json j = Json::object();
  j["name"] = c.name();
  switch (c.kind()) {
    case Companion::Kind::trivial: j["trivial"] = true; break;
    case Companion::Kind::symbol: j["symbol"] = c.stated_value()->name(); break;
    case Companion::Kind::value:
      if (c.stated_value()->is_exact()) j["rho0"] = to_string(c.stated_value()->value());
      else j["rho0_interval"] = {to_string(c.stated_value()->lower()), to_string(c.stated_value()->upper())};
      break;
    case Companion::Kind::seifert: j["seifert"] = render_matrix(*c.seifert()); break;
  }
  return j;
}

inline Json render_infected(const InfectedKnot& k) {
  Json curves = Json::array();
  for (const auto& c : k.pattern.curves) {
    Json cls = Json::array();
    for (const auto& p : c.coords) cls.push_back(p.to_string());
    curves.push_back(Json{{"name", c.name}, {"class", cls}});
  }
  Json j = Json::object();
  j["name"] = k.name;
  j["pattern"] = Json{{"seifert", render_matrix(k.pattern.seifert)}, {"curves", curves}};
  Json comps = Json::object();
  for (const auto& c : k.pattern.curves) comps[c.name] = render_companion(k.infections.at(c.name));
  j["companions"] = comps;
  return j;
}

}  // namespace io_detail

inline KnotDocument parse_document(std::string_view text) {
  using namespace io_detail;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw DocumentError("", "parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) throw DocumentError("", "document must be a JSON object");
  if (as_string(require(j, "schema", ""), "/schema") != kKnotSchema)
    throw DocumentError("/schema", std::string("expected \"") + kKnotSchema + "\"");
  KnotDocument d;
  if (j.contains("name")) d.name = as_string(j["name"], "/name");
  const bool plain = j.contains("seifert"), satellite = j.contains("pattern");
  if (plain == satellite) throw DocumentError("", "give exactly one of seifert or pattern");
  if (plain) {
    d.seifert = as_seifert(j["seifert"], "/seifert", d.name);
    if (j.contains("companions")) throw DocumentError("/companions", "companions need a pattern");
  } else {
    d.knot = as_infected(j, "", d.name);
  }
  if (j.contains("knots")) {
    const Json& ks = j["knots"];
    if (!ks.is_array()) throw DocumentError("/knots", "expected an array");
    for (std::size_t k = 0; k < ks.size(); ++k) {
      const std::string p = child("/knots", k);
      std::string name = as_string(require(ks[k], "name", p), child(p, "name"));
      if (name == d.name) throw DocumentError(child(p, "name"), "duplicate knot name '" + name + "'");
      for (const auto& o : d.knots)
        if (o.name == name) throw DocumentError(child(p, "name"), "duplicate knot name '" + name + "'");
      d.knots.push_back(as_infected(ks[k], p, name));
    }
  }
  if (j.contains("family")) {
    const Json& fs = j["family"];
    if (!fs.is_array() || fs.empty()) throw DocumentError("/family", "expected a nonempty array");
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const std::string p = child("/family", k);
      FamilyEntry e{as_string(require(fs[k], "knot", p), child(p, "knot")), 0};
      const Json& n = require(fs[k], "multiplicity", p);
      if (!n.is_number_integer() || n.get<long long>() == 0)
        throw DocumentError(child(p, "multiplicity"), "expected a nonzero integer");
      e.multiplicity = n.get<int>();
      if (!(d.knot && d.knot->name == e.knot) &&
          std::none_of(d.knots.begin(), d.knots.end(), [&](const InfectedKnot& x) { return x.name == e.knot; }))
        throw DocumentError(child(p, "knot"), "unknown knot '" + e.knot + "'");
      d.family.push_back(std::move(e));
    }
  }
  return d;
}

inline Json render_document(const KnotDocument& d) {
  using namespace io_detail;
  Json j = Json::object();
  j["schema"] = kKnotSchema;
  j["name"] = d.name;
  if (d.seifert) {
    j["seifert"] = render_matrix(*d.seifert);
  } else {
    Json k = render_infected(*d.knot);
    j["pattern"] = k["pattern"];
    j["companions"] = k["companions"];
  }
  if (!d.knots.empty()) {
    Json ks = Json::array();
    for (const auto& k : d.knots) ks.push_back(render_infected(k));
    j["knots"] = ks;
  }
  if (!d.family.empty()) {
    Json fs = Json::array();
    for (const auto& e : d.family) fs.push_back(Json{{"knot", e.knot}, {"multiplicity", e.multiplicity}});
    j["family"] = fs;
  }
  return j;
}

inline Json render_rho(const RhoExpr& e) {
  Json coeffs = Json::object();
  for (const auto& [k, c] : e.coefficients()) coeffs[k] = to_string(c);
  Json j = Json::object();
  j["value"] = e.to_string();
  j["coefficients"] = coeffs;
  if (e.exact_constant()) j["constant"] = to_string(e.lower());
  else j["constant"] = {to_string(e.lower()), to_string(e.upper())};
  j["nonvanishing"] = e.nonvanishing();
  return j;
}

inline Json render_report(const ObstructionReport& r, const std::string& knot) {
  Json j = Json::object();
  j["schema"] = kReportSchema;
  j["command"] = "obstruct";
  j["knot"] = knot;
  j["complexity_range"] = {1, r.c_max};
  j["mode"] = to_string(r.mode);
  j["interval_width"] = to_string(r.interval_width);
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  if (r.witness) {
    const auto& w = r.rows[*r.witness];
    j["witness"] = Json{{"c", w.complexity}, {"prime", w.pattern.prime.to_string()}, {"pattern", w.pattern.labels},
                        {"value", w.value.to_string()}};
  } else {
    j["witness"] = nullptr;
  }
  j["uniform_in_c"] = Json{{"uniform", r.certificate.uniform},
                           {"checked", {r.certificate.c_first, r.certificate.c_last}},
                           {"patterns_per_c", r.certificate.patterns_per_c}};
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json x = Json::object();
    x["c"] = row.complexity;
    x["prime"] = row.pattern.prime.to_string();
    x["source_prime"] = row.pattern.source_prime.to_string();
    x["pattern"] = row.pattern.labels;
    Json value = render_rho(row.value);
    for (auto it = value.begin(); it != value.end(); ++it) x[it.key()] = *it;
    rows.push_back(std::move(x));
  }
  j["rows"] = rows;
  j["audit"] = r.audit;
  return j;
}

}  // namespace ratconc
