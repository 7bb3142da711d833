#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "chordlab/boundary.hpp"
#include "chordlab/cutjoin.hpp"
#include "chordlab/enumerator.hpp"
#include "chordlab/series.hpp"

namespace chordlab {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

inline std::string to_string(Spectrum s) {
  switch (s) {
    case Spectrum::None:
      return "none";
    case Spectrum::Point:
      return "point";
    case Spectrum::Length:
      return "length";
    case Spectrum::LengthAndPoint:
      return "lp";
  }
  return "?";
}

namespace detail {

inline Json int_map(const std::map<int, int>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

inline std::map<int, int> read_int_map(const Json& j) {
  std::map<int, int> m;
  if (j.is_null()) return m;
  for (const auto& [k, v] : j.items()) m[std::stoi(k)] = v.get<int>();
  return m;
}

inline void check_version(const Json& doc, const std::string& kind) {
  if (!doc.is_object() || !doc.contains("version")) throw std::invalid_argument("document has no version field");
  if (doc.at("version").get<int>() != kFormatVersion) throw std::invalid_argument("unsupported document version");
  if (doc.value("kind", std::string()) != kind) throw std::invalid_argument("expected a " + kind + " document");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Census documents.

inline Json type_to_json(const DiagramType& t, const BigInt& count) {
  const bool oriented = t.mode == Orientation::Oriented;
  Json j;
  j["genus"] = oriented ? Json(t.euler_genus) : Json(nullptr);
  j["crosscaps"] = oriented ? Json(nullptr) : Json(t.euler_genus);
  j["k"] = t.k;
  j["l"] = t.l;
  j["n"] = t.n;
  j["b"] = detail::int_map(t.backbone_spectrum);
  j["n_point"] = detail::int_map(t.point_spectrum);
  j["p_length"] = detail::int_map(t.length_spectrum);
  Json lp = Json::array();
  for (const auto& [tuple, c] : t.lp_spectrum) lp.push_back({{"tuple", tuple.entries()}, {"count", c}});
  j["n_lp"] = lp;
  j["count"] = to_string(count);
  return j;
}

inline std::pair<DiagramType, BigInt> type_from_json(const Json& j, Orientation mode) {
  DiagramType t;
  t.mode = mode;
  const char* key = mode == Orientation::Oriented ? "genus" : "crosscaps";
  if (!j.contains(key) || j.at(key).is_null()) throw std::invalid_argument(std::string("census entry lacks ") + key);
  t.euler_genus = j.at(key).get<int>();
  t.k = j.at("k").get<int>();
  t.l = j.at("l").get<int>();
  t.n = j.value("n", 0);
  t.backbone_spectrum = detail::read_int_map(j.at("b"));
  t.point_spectrum = detail::read_int_map(j.value("n_point", Json()));
  t.length_spectrum = detail::read_int_map(j.value("p_length", Json()));
  for (const auto& e : j.value("n_lp", Json::array())) {
    t.lp_spectrum[CyclicTuple(e.at("tuple").get<std::vector<int>>(), symmetry_for(mode))] = e.at("count").get<int>();
  }
  return {t, parse_bigint(j.at("count").get<std::string>())};
}

/// A set of censuses sharing mode, spectrum and connectivity filter. When it
/// was produced by a sweep, `truncation` records the block bounds.
struct CensusBundle {
  Orientation mode = Orientation::Oriented;
  Spectrum spectrum = Spectrum::LengthAndPoint;
  bool connected_only = false;
  std::optional<Truncation> truncation;
  std::vector<Census> blocks;
};

inline Json census_bundle_to_json(const CensusBundle& b) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["kind"] = "census";
  doc["mode"] = to_string(b.mode);
  doc["spectrum"] = to_string(b.spectrum);
  doc["connected"] = b.connected_only;
  if (b.truncation) {
    doc["truncation"] = {{"b_max", b.truncation->b_max}, {"site_max", *b.truncation->site_max}};
  }
  Json blocks = Json::array();
  for (const auto& c : b.blocks) {
    Json block;
    block["backbones"] = c.spec.backbone_lengths;
    block["chords"] = c.spec.chords ? Json(*c.spec.chords) : Json("all");
    Json entries = Json::array();
    for (const auto& [t, n] : c.marginal(b.spectrum).entries) entries.push_back(type_to_json(t, n));
    block["entries"] = entries;
    block["total"] = to_string(c.total());
    blocks.push_back(block);
  }
  doc["blocks"] = blocks;
  return doc;
}

inline CensusBundle census_bundle_from_json(const Json& doc) {
  detail::check_version(doc, "census");
  CensusBundle b;
  b.mode = parse_orientation(doc.at("mode").get<std::string>());
  b.spectrum = parse_spectrum(doc.at("spectrum").get<std::string>());
  b.connected_only = doc.value("connected", false);
  if (doc.contains("truncation")) {
    const auto& t = doc.at("truncation");
    const int b_max = t.at("b_max").get<int>(), site_max = t.at("site_max").get<int>();
    b.truncation = Truncation{site_max / 2, b_max, site_max};
  }
  for (const auto& block : doc.at("blocks")) {
    Census c;
    c.spec.backbone_lengths = block.at("backbones").get<std::vector<int>>();
    if (block.at("chords").is_number()) c.spec.chords = block.at("chords").get<int>();
    c.spec.mode = b.mode;
    c.spec.connected_only = b.connected_only;
    for (const auto& e : block.at("entries")) {
      auto [t, n] = type_from_json(e, b.mode);
      c.entries[t] += n;
    }
    b.blocks.push_back(std::move(c));
  }
  return b;
}

// ---------------------------------------------------------------------------
// Series documents.

inline Json var_to_json(const VarKey& v, int power) {
  Json j;
  switch (v.kind) {
    case VarKind::U:
      j["u"] = v.entries;
      break;
    case VarKind::T:
      j["t"] = v.index();
      break;
    case VarKind::Q:
      j["q"] = v.index();
      break;
  }
  j["pow"] = power;
  return j;
}

inline std::pair<VarKey, int> var_from_json(const Json& j, Symmetry sym) {
  const int power = j.at("pow").get<int>();
  if (power < 1) throw std::invalid_argument("variable exponent must be positive");
  if (j.contains("u")) return {VarKey::u(j.at("u").get<std::vector<int>>(), sym), power};
  if (j.contains("t")) return {VarKey::t(j.at("t").get<int>()), power};
  if (j.contains("q")) return {VarKey::q(j.at("q").get<int>()), power};
  throw std::invalid_argument("unknown variable in series document");
}

/// Series document; the uniform backbone variable s is keyed "*".
struct SeriesDocument {
  Model model = Model::LengthAndPoint;
  Orientation mode = Orientation::Oriented;
  GradedSeries series;
};

inline Json series_to_json(const SeriesDocument& d) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["kind"] = "series";
  doc["model"] = to_string(d.model);
  doc["mode"] = to_string(d.mode);
  const Truncation& t = d.series.truncation();
  doc["truncation"] = {{"y_max", t.y_max}, {"b_max", t.b_max}};
  if (t.site_max) doc["truncation"]["site_max"] = *t.site_max;
  Json terms = Json::array();
  for (const auto& [m, c] : d.series.terms()) {
    Json term;
    term["y"] = m.y;
    Json s = Json::object();
    for (const auto& [i, e] : m.s) s[i == kUniformS ? std::string("*") : std::to_string(i)] = e;
    term["s"] = s;
    Json vars = Json::array();
    for (const auto& [v, e] : m.vars) vars.push_back(var_to_json(v, e));
    term["vars"] = vars;
    Json coeff = Json::object();
    for (const auto& [p, v] : c.terms()) coeff[std::to_string(p)] = to_string(v);
    term["coeff"] = coeff;
    terms.push_back(term);
  }
  doc["terms"] = terms;
  return doc;
}

inline SeriesDocument series_from_json(const Json& doc) {
  detail::check_version(doc, "series");
  SeriesDocument d;
  d.model = parse_model(doc.at("model").get<std::string>());
  d.mode = parse_orientation(doc.at("mode").get<std::string>());
  const auto& tj = doc.at("truncation");
  Truncation t{tj.at("y_max").get<int>(), tj.at("b_max").get<int>(), std::nullopt};
  if (tj.contains("site_max")) t.site_max = tj.at("site_max").get<int>();
  d.series = GradedSeries(t);
  const Symmetry sym = symmetry_for(d.mode);
  for (const auto& term : doc.at("terms")) {
    Monomial m;
    m.y = term.at("y").get<int>();
    for (const auto& [k, e] : term.at("s").items()) m.s[k == "*" ? kUniformS : std::stoi(k)] = e.get<int>();
    for (const auto& v : term.at("vars")) {
      auto [key, power] = var_from_json(v, sym);
      m.vars[key] += power;
    }
    LaurentCoeff c;
    for (const auto& [p, v] : term.at("coeff").items()) c.add(std::stoi(p), parse_rational(v.get<std::string>()));
    d.series.add_term(m, c);
  }
  return d;
}

}  // namespace chordlab
