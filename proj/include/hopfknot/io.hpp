#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "hopfknot/double.hpp"
#include "hopfknot/heegaard.hpp"
#include "hopfknot/link.hpp"
#include "json.hpp"

namespace hopfknot::io {

using nlohmann::json;

[[noreturn]] inline void parse_error(const std::string& where, const std::string& why) {
  throw Error(ErrorCode::ParseError, where + ": " + why);
}

// ---- scalars and fields ----

inline json to_json(const Scalar& s) {
  if (s.field()->kind() != Field::Kind::Cyclotomic) return s.coefficients()[0].get_str();
  json a = json::array();
  for (const auto& c : s.coefficients()) a.push_back(c.get_str());
  return a;
}

inline mpq_class parse_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) parse_error(where, "expected a rational written as a string");
  mpq_class q;
  const std::string s = j.get<std::string>();
  if (s.empty() || q.set_str(s, 10) != 0) parse_error(where, "bad rational \"" + s + "\"");
  if (q.get_den() == 0) parse_error(where, "zero denominator");
  q.canonicalize();
  return q;
}

inline Scalar scalar_from_json(const json& j, const Field* f, const std::string& where) {
  if (j.is_array()) {
    if (f->kind() != Field::Kind::Cyclotomic) parse_error(where, "coefficient list outside a cyclotomic field");
    std::vector<mpq_class> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(parse_rational(j[i], where + "[" + std::to_string(i) + "]"));
    return Scalar::from_coefficients(f, c);
  }
  return Scalar(f, parse_rational(j, where));
}

inline void field_to_json(const Field* f, json& j) {
  switch (f->kind()) {
    case Field::Kind::Rational:
      j["field"] = "Q";
      break;
    case Field::Kind::Prime:
      j["field"] = "Fp";
      j["p"] = f->modulus();
      break;
    case Field::Kind::Cyclotomic:
      j["field"] = "cyclotomic";
      j["m"] = f->order();
      break;
  }
}

inline const Field* field_from_json(const json& j) {
  if (!j.contains("field") || !j["field"].is_string()) parse_error("field", "missing field descriptor");
  const std::string k = j["field"].get<std::string>();
  if (k == "Q") return Field::rationals();
  if (k == "Fp") {
    if (!j.contains("p") || !j["p"].is_number_unsigned()) parse_error("p", "prime modulus required");
    return Field::prime(j["p"].get<std::uint64_t>());
  }
  if (k == "cyclotomic") {
    if (!j.contains("m") || !j["m"].is_number_integer()) parse_error("m", "cyclotomic order required");
    return Field::cyclotomic(j["m"].get<int>());
  }
  parse_error("field", "unknown field \"" + k + "\"");
}

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

inline Vector vector_from_json(const json& j, const Field* f, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.size() != dim) parse_error(where, "expected " + std::to_string(dim) + " scalars");
  Vector v;
  for (std::size_t i = 0; i < dim; ++i) v.push_back(scalar_from_json(j[i], f, where + "[" + std::to_string(i) + "]"));
  return v;
}

// ---- algebras ----

inline json algebra_to_json(const HopfData& d) {
  json j;
  field_to_json(d.field, j);
  j["dim"] = d.dim;
  j["labels"] = d.labels;
  auto entries = [](const std::vector<StructureEntry>& es) {
    json a = json::array();
    for (const auto& e : es) a.push_back({e.i, e.j, e.k, to_json(e.coef)});
    return a;
  };
  j["mult"] = entries(d.mult);
  j["unit"] = to_json(d.unit);
  j["comult"] = entries(d.comult);
  j["counit"] = to_json(d.counit);
  json S = json::array();
  for (const auto& row : d.antipode) S.push_back(to_json(row));
  j["antipode"] = S;
  if (d.pivot) j["pivot"] = to_json(*d.pivot);
  return j;
}

inline HopfData algebra_from_json(const json& j) {
  if (!j.is_object()) parse_error("algebra", "expected an object");
  HopfData d;
  d.field = field_from_json(j);
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
    parse_error("dim", "positive dimension required");
  d.dim = j["dim"].get<std::size_t>();
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != d.dim) parse_error("labels", "one label per basis vector");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) parse_error("labels", "labels are strings");
      d.labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < d.dim; ++i) d.labels.push_back("e" + std::to_string(i));
  }
  auto entries = [&](const char* key) {
    std::vector<StructureEntry> out;
    if (!j.contains(key) || !j[key].is_array()) parse_error(key, "list of [i,j,k,coef] required");
    for (std::size_t n = 0; n < j[key].size(); ++n) {
      const json& e = j[key][n];
      const std::string where = std::string(key) + "[" + std::to_string(n) + "]";
      if (!e.is_array() || e.size() != 4) parse_error(where, "expected [i,j,k,coef]");
      Index idx[3];
      for (int t = 0; t < 3; ++t) {
        if (!e[t].is_number_unsigned() || e[t].get<std::size_t>() >= d.dim) parse_error(where, "basis index out of range");
        idx[t] = e[t].get<Index>();
      }
      out.push_back({idx[0], idx[1], idx[2], scalar_from_json(e[3], d.field, where)});
    }
    return out;
  };
  d.mult = entries("mult");
  d.comult = entries("comult");
  auto vec = [&](const char* key) {
    if (!j.contains(key)) parse_error(key, "missing");
    return vector_from_json(j[key], d.field, d.dim, key);
  };
  d.unit = vec("unit");
  d.counit = vec("counit");
  if (!j.contains("antipode") || !j["antipode"].is_array() || j["antipode"].size() != d.dim)
    parse_error("antipode", "dim x dim matrix required");
  for (std::size_t r = 0; r < d.dim; ++r)
    d.antipode.push_back(vector_from_json(j["antipode"][r], d.field, d.dim, "antipode[" + std::to_string(r) + "]"));
  if (j.contains("pivot")) d.pivot = vec("pivot");
  return d;
}

// ---- doubles ----

inline json to_json(const RMatrix& R, std::size_t dim) {
  std::vector<std::pair<std::uint64_t, Scalar>> terms(R.begin(), R.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  json a = json::array();
  for (const auto& [key, c] : terms)
    if (!c.is_zero()) a.push_back({key / dim, key % dim, to_json(c)});
  return a;
}

inline RMatrix rmatrix_from_json(const json& j, const Field* f, std::size_t dim) {
  if (!j.is_array()) parse_error("R", "list of [j,k,coef] required");
  RMatrix R;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const json& e = j[n];
    const std::string where = "R[" + std::to_string(n) + "]";
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() ||
        e[0].get<std::size_t>() >= dim || e[1].get<std::size_t>() >= dim)
      parse_error(where, "expected [j,k,coef] with indices below dim");
    detail::add_to(R, e[0].get<std::uint64_t>() * dim + e[1].get<std::uint64_t>(), scalar_from_json(e[2], f, where));
  }
  return R;
}

/// Algebra JSON of D(H) with an "extension" block holding R, theta, gD and muD.
inline json double_to_json(const DrinfeldDouble& D) {
  const HopfAlgebra& DH = *D.algebra;
  json j = algebra_to_json(DH.data());
  j["extension"] = {{"R", to_json(D.R, DH.dim())},
                    {"theta", to_json(D.theta)},
                    {"gD", to_json(D.gD)},
                    {"muD", to_json(D.muD)}};
  return j;
}

/// Ribbon data from an algebra JSON carrying an extension block.
inline RibbonData ribbon_from_json(const json& j) {
  if (!j.contains("extension") || !j["extension"].contains("R") || !j["extension"].contains("muD"))
    parse_error("extension", "R and muD are needed to evaluate HKR on this algebra");
  AlgebraPtr H = make_algebra(algebra_from_json(j));
  const json& x = j["extension"];
  RMatrix R = rmatrix_from_json(x["R"], H->field(), H->dim());
  Vector mu = vector_from_json(x["muD"], H->field(), H->dim(), "muD");
  return ribbon_data(H, std::move(R), std::move(mu));
}

// ---- links ----

inline json link_to_json(const MorseLink& L) {
  json ev = json::array();
  for (const auto& e : L.events) {
    json x;
    switch (e.type) {
      case EventType::Cup:
        x = {{"t", "cup"}, {"at", e.at}, {"orient", *e.orient == Turn::Ccw ? "ccw" : "cw"}};
        break;
      case EventType::Cap:
        x = {{"t", "cap"}, {"at", e.at}};
        if (e.orient) x["orient"] = *e.orient == Turn::Ccw ? "ccw" : "cw";
        break;
      case EventType::Cross:
        x = {{"t", "cross"}, {"at", e.at}, {"kind", e.kind == CrossKind::L ? "L" : "R"}};
        break;
    }
    ev.push_back(x);
  }
  json bp = json::array();
  for (const auto& b : L.basepoints) {
    json x = {{"event", b.event}, {"slot", b.slot}};
    if (b.component) x["component"] = *b.component;
    bp.push_back(x);
  }
  return {{"events", ev}, {"basepoints", bp}};
}

namespace detail {

inline std::size_t index_field(const json& x, const char* key, const std::string& where) {
  if (!x.contains(key) || !x[key].is_number_integer() || x[key].get<long long>() < 0)
    parse_error(where, std::string("non-negative \"") + key + "\" required");
  return x[key].get<std::size_t>();
}

inline std::string string_field(const json& x, const char* key, const std::string& where) {
  if (!x.contains(key) || !x[key].is_string()) parse_error(where, std::string("string \"") + key + "\" required");
  return x[key].get<std::string>();
}

inline Turn turn_from(const std::string& s, const std::string& where) {
  if (s == "ccw") return Turn::Ccw;
  if (s == "cw") return Turn::Cw;
  parse_error(where, "orientation must be ccw or cw");
}

inline std::vector<Basepoint> basepoints_from(const json& j) {
  std::vector<Basepoint> out;
  if (!j.contains("basepoints")) return out;
  if (!j["basepoints"].is_array()) parse_error("basepoints", "expected a list");
  for (std::size_t n = 0; n < j["basepoints"].size(); ++n) {
    const json& b = j["basepoints"][n];
    const std::string where = "basepoints[" + std::to_string(n) + "]";
    if (!b.is_object()) parse_error(where, "expected {event, slot}");
    Basepoint bp{index_field(b, "event", where), index_field(b, "slot", where), std::nullopt};
    if (b.contains("component")) bp.component = index_field(b, "component", where);
    out.push_back(bp);
  }
  return out;
}

}  // namespace detail

inline MorseLink link_from_json(const json& j) {
  if (!j.is_object() || !j.contains("events") || !j["events"].is_array()) parse_error("link", "\"events\" list required");
  MorseLink L;
  for (std::size_t n = 0; n < j["events"].size(); ++n) {
    const json& x = j["events"][n];
    const std::string where = "events[" + std::to_string(n) + "]";
    const std::string t = detail::string_field(x, "t", where);
    const std::size_t at = detail::index_field(x, "at", where);
    if (t == "cup") {
      L.events.push_back(cup(at, detail::turn_from(detail::string_field(x, "orient", where), where)));
    } else if (t == "cap") {
      std::optional<Turn> o;
      if (x.contains("orient")) o = detail::turn_from(detail::string_field(x, "orient", where), where);
      L.events.push_back(cap(at, o));
    } else if (t == "cross") {
      const std::string k = detail::string_field(x, "kind", where);
      if (k != "L" && k != "R") parse_error(where, "crossing kind must be L or R");
      L.events.push_back(cross(at, k == "L" ? CrossKind::L : CrossKind::R));
    } else {
      parse_error(where, "unknown event \"" + t + "\"");
    }
  }
  L.basepoints = detail::basepoints_from(j);
  return L;
}

// ---- Heegaard diagrams ----

inline json heegaard_to_json(const FlatHeegaardDiagram& D) {
  json beta = json::array();
  for (const auto& w : D.beta) {
    json a = json::array();
    for (const auto& e : w) {
      switch (e.kind) {
        case FlatKind::CrossAlpha:
          a.push_back({{"t", "cross"}, {"alpha", e.curve}, {"slot", e.slot}, {"d", e.d}});
          break;
        case FlatKind::Max:
        case FlatKind::Min:
          a.push_back({{"t", e.kind == FlatKind::Max ? "max" : "min"}, {"orient", e.left_to_right ? "r" : "l"}});
          break;
        case FlatKind::CrossGamma:
          a.push_back({{"t", "gamma"}, {"gamma", e.curve}, {"order", e.slot}});
          break;
      }
    }
    beta.push_back(a);
  }
  return {{"genus", D.genus}, {"beta", beta}, {"basepoints", D.basepoints}};
}

inline json planar_to_json(const PlanarHeegaard& P) {
  json ev = json::array();
  for (const auto& e : P.events) {
    switch (e.kind) {
      case PlanarKind::Cup:
        ev.push_back({{"t", "cup"}, {"at", e.at}, {"orient", e.orient.value_or(Turn::Ccw) == Turn::Ccw ? "ccw" : "cw"}});
        break;
      case PlanarKind::Cap:
        ev.push_back({{"t", "cap"}, {"at", e.at}});
        break;
      case PlanarKind::Cross:
        ev.push_back({{"t", "virtual"}, {"at", e.at}});
        break;
      case PlanarKind::Alpha:
        ev.push_back({{"t", "alpha"}, {"alpha", e.alpha}, {"at", e.at}, {"n", e.n}, {"dir", e.rightward ? "r" : "l"}});
        break;
    }
  }
  json bp = json::array();
  for (const auto& b : P.basepoints) {
    json x = {{"event", b.event}, {"slot", b.slot}};
    if (b.component) x["component"] = *b.component;
    bp.push_back(x);
  }
  return {{"genus", P.genus}, {"planar", ev}, {"basepoints", bp}};
}

inline PlanarHeegaard planar_from_json(const json& j) {
  PlanarHeegaard P;
  P.genus = detail::index_field(j, "genus", "heegaard");
  if (!j["planar"].is_array()) parse_error("planar", "expected a list of events");
  for (std::size_t n = 0; n < j["planar"].size(); ++n) {
    const json& x = j["planar"][n];
    const std::string where = "planar[" + std::to_string(n) + "]";
    const std::string t = detail::string_field(x, "t", where);
    const std::size_t at = detail::index_field(x, "at", where);
    if (t == "cup") {
      P.events.push_back(planar_cup(at, detail::turn_from(detail::string_field(x, "orient", where), where)));
    } else if (t == "cap") {
      P.events.push_back(planar_cap(at));
    } else if (t == "virtual") {
      P.events.push_back(planar_virtual(at));
    } else if (t == "alpha") {
      const std::string dir = x.contains("dir") ? detail::string_field(x, "dir", where) : "r";
      if (dir != "r" && dir != "l") parse_error(where, "dir must be r or l");
      P.events.push_back(
          planar_alpha(detail::index_field(x, "alpha", where), at, detail::index_field(x, "n", where), dir == "r"));
    } else {
      parse_error(where, "unknown event \"" + t + "\"");
    }
  }
  P.basepoints = detail::basepoints_from(j);
  return P;
}

inline FlatHeegaardDiagram flat_from_json(const json& j) {
  FlatHeegaardDiagram D;
  D.genus = detail::index_field(j, "genus", "heegaard");
  if (!j.contains("beta") || !j["beta"].is_array()) parse_error("beta", "list of beta words required");
  for (std::size_t c = 0; c < j["beta"].size(); ++c) {
    const json& w = j["beta"][c];
    if (!w.is_array()) parse_error("beta[" + std::to_string(c) + "]", "expected a list of events");
    std::vector<FlatEvent> word;
    for (std::size_t n = 0; n < w.size(); ++n) {
      const json& x = w[n];
      const std::string where = "beta[" + std::to_string(c) + "][" + std::to_string(n) + "]";
      const std::string t = detail::string_field(x, "t", where);
      if (t == "cross") {
        std::size_t d = detail::index_field(x, "d", where);
        word.push_back(cross_alpha(detail::index_field(x, "alpha", where), detail::index_field(x, "slot", where),
                                   static_cast<int>(d)));
      } else if (t == "max" || t == "min") {
        const std::string o = detail::string_field(x, "orient", where);
        if (o != "l" && o != "r") parse_error(where, "orient must be l or r");
        word.push_back(t == "max" ? max_event(o == "r") : min_event(o == "r"));
      } else if (t == "gamma") {
        word.push_back(cross_gamma(detail::index_field(x, "gamma", where), detail::index_field(x, "order", where)));
      } else {
        parse_error(where, "unknown event \"" + t + "\"");
      }
    }
    D.beta.push_back(std::move(word));
  }
  if (j.contains("basepoints")) {
    if (!j["basepoints"].is_array()) parse_error("basepoints", "expected a list of event indices");
    for (const auto& b : j["basepoints"]) {
      if (!b.is_number_unsigned()) parse_error("basepoints", "event indices are non-negative integers");
      D.basepoints.push_back(b.get<std::size_t>());
    }
  } else {
    D.basepoints.assign(D.beta.size(), 0);
  }
  return D;
}

/// A Heegaard file holds either flat beta words ("beta") or a planar picture ("planar").
using HeegaardInput = std::variant<FlatHeegaardDiagram, PlanarHeegaard>;

inline HeegaardInput heegaard_from_json(const json& j) {
  if (!j.is_object()) parse_error("heegaard", "expected an object");
  if (j.contains("planar")) return planar_from_json(j);
  return flat_from_json(j);
}

inline FlatHeegaardDiagram flat_of(const HeegaardInput& in) {
  if (const auto* P = std::get_if<PlanarHeegaard>(&in)) return to_flat_diagram(*P);
  return std::get<FlatHeegaardDiagram>(in);
}

// ---- files ----

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error(path, "cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    parse_error(path, e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error(path, "cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// 64-bit FNV-1a, used to fingerprint input files in run reports.
inline std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace hopfknot::io
