#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "charfactor/arrangement.hpp"
#include "charfactor/free_arrangements.hpp"
#include "charfactor/multipoly.hpp"
#include "charfactor/point_counting.hpp"
#include "charfactor/polynomial.hpp"
#include "charfactor/poset.hpp"
#include "charfactor/signed_graph.hpp"

namespace charfactor::json {

using Json = nlohmann::ordered_json;

/// Integers that fit in int64 are JSON numbers; larger ones are decimal strings.
inline Json big(const BigInt& v) {
  if (fits_int64(v)) return v.convert_to<long long>();
  return v.str();
}

inline Json rational(const Rational& q) {
  if (is_integral(q)) return big(numerator_of(q));
  return to_string(q);
}

inline BigInt parse_big(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long long>());
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    if (!is_integral(q)) fail(ErrorCode::ParseError, "expected an integer, got " + j.get<std::string>());
    return numerator_of(q);
  }
  fail(ErrorCode::ParseError, "expected an integer");
}

/// Integer, integer string, or "p/q".
inline Rational parse_rational_value(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  fail(ErrorCode::ParseError, "expected a rational number");
}

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline std::size_t parse_count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(ErrorCode::ParseError, std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

// --- polynomials ---------------------------------------------------------

inline Json to_json(const UniPoly& p) {
  Json c = Json::array();
  for (const auto& v : p.coeffs()) c.push_back(big(v));
  if (p.is_zero()) c.push_back(0);
  return Json{{"coeffs", c}};
}

inline UniPoly unipoly_from_json(const Json& j) {
  std::vector<BigInt> c;
  for (const auto& v : field(j, "coeffs")) c.push_back(parse_big(v));
  return UniPoly(std::move(c));
}

/// Terms in descending grlex order.
inline Json to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    terms.push_back(Json{{"exp", it->first}, {"num", big(numerator_of(it->second))}, {"den", big(denominator_of(it->second))}});
  return Json{{"nvars", p.nvars()}, {"terms", terms}};
}

inline MultiPoly multipoly_from_json(const Json& j) {
  const std::size_t n = parse_count(field(j, "nvars"), "nvars");
  MultiPoly p(n);
  for (const auto& t : field(j, "terms")) {
    Exponent e;
    for (const auto& v : field(t, "exp")) e.push_back(static_cast<unsigned>(parse_count(v, "exponent")));
    if (e.size() != n) fail(ErrorCode::ParseError, "exponent vector length differs from nvars");
    const BigInt den = t.contains("den") ? parse_big(t.at("den")) : BigInt(1);
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator");
    p += MultiPoly::monomial(std::move(e), Rational(parse_big(field(t, "num")), den));
  }
  return p;
}

inline Json to_json(const Derivation& d) {
  Json a = Json::array();
  for (const auto& c : d.components()) a.push_back(to_json(c));
  return a;
}

inline Derivation derivation_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "a derivation is an array of polynomials");
  std::vector<MultiPoly> c;
  for (const auto& v : j) c.push_back(multipoly_from_json(v));
  return Derivation(std::move(c));
}

inline Json to_json(const DerivationMatrix& m) {
  Json a = Json::array();
  for (const auto& d : m) a.push_back(to_json(d));
  return a;
}

inline DerivationMatrix derivation_matrix_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "a derivation matrix is an array of derivations");
  DerivationMatrix m;
  for (const auto& v : j) m.push_back(derivation_from_json(v));
  return m;
}

inline Json to_json(const FactorizationReport& r) {
  Json roots = Json::array();
  for (const auto& v : r.roots) roots.push_back(big(v));
  return Json{{"roots", roots}, {"cofactor", to_json(r.cofactor)}, {"complete", r.complete}};
}

inline Json to_json(const FallingFactorialExpansion& f) {
  Json o = Json::object();
  for (const auto& [j, c] : f.coeffs) o[std::to_string(j)] = big(c);
  return o;
}

// --- posets ----------------------------------------------------------------

inline Json to_json(const Poset& p) {
  Json covers = Json::array();
  for (const auto& c : p.covers()) covers.push_back(Json::array({c.child, c.parent}));
  Json out{{"size", p.size()}, {"covers", covers}};
  if (p.has_labels()) out["labels"] = p.labels();
  return out;
}

inline Poset poset_from_json(const Json& j) {
  const std::size_t m = parse_count(field(j, "size"), "size");
  std::vector<Cover> covers;
  for (const auto& c : field(j, "covers")) {
    if (!c.is_array() || c.size() != 2) fail(ErrorCode::ParseError, "a cover is a [child, parent] pair");
    covers.push_back({parse_count(c[0], "cover index"), parse_count(c[1], "cover index")});
  }
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  return Poset::from_covers(m, covers, std::move(labels));
}

// --- arrangements ----------------------------------------------------------

/// Hyperplane members as {"normal", "offset"}; other members as equation rows
/// under "subspaces".
inline Json to_json(const Arrangement& a) {
  Json planes = Json::array();
  Json subspaces = Json::array();
  for (const auto& f : a.members()) {
    const auto eqs = f.integer_equations();
    if (f.is_hyperplane()) {
      Json normal = Json::array();
      for (std::size_t i = 0; i < a.ambient_dim(); ++i) normal.push_back(big(eqs[0][i]));
      planes.push_back(Json{{"normal", normal}, {"offset", big(eqs[0].back())}});
    } else {
      Json rows = Json::array();
      for (const auto& r : eqs) {
        Json row = Json::array();
        for (std::size_t i = 0; i < a.ambient_dim(); ++i) row.push_back(big(r[i]));
        rows.push_back(row);
      }
      subspaces.push_back(rows);
    }
  }
  Json out{{"ambient_dim", a.ambient_dim()}, {"hyperplanes", planes}};
  if (!subspaces.empty()) out["subspaces"] = subspaces;
  return out;
}

struct FamilySpec {
  std::string family;
  unsigned n = 0;
  unsigned k = 0;
};

inline bool is_arrangement_family(const std::string& f) {
  return f == "weyl_a" || f == "weyl_b" || f == "weyl_d" || f == "shi" || f == "k_equal" || f == "db";
}

inline bool is_poset_family(const std::string& f) {
  return f == "chain" || f == "boolean" || f == "divisor" || f == "partition";
}

inline Arrangement named_family(const FamilySpec& s) {
  if (s.family == "weyl_a") return weyl_arrangement(WeylKind::A, s.n);
  if (s.family == "weyl_b") return weyl_arrangement(WeylKind::B, s.n);
  if (s.family == "weyl_d") return weyl_arrangement(WeylKind::D, s.n);
  if (s.family == "shi") return shi_arrangement(s.n);
  if (s.family == "k_equal") return k_equal_arrangement(s.n, s.k);
  if (s.family == "db") return db_arrangement(s.n, s.k);
  fail(ErrorCode::InvalidArgument, "unknown arrangement family \"" + s.family + "\"");
}

inline Poset named_poset(const FamilySpec& s) {
  if (s.family == "chain") return standard_poset(StandardKind::chain, s.n);
  if (s.family == "boolean") return standard_poset(StandardKind::boolean, s.n);
  if (s.family == "divisor") return standard_poset(StandardKind::divisor, s.n);
  if (s.family == "partition") return standard_poset(StandardKind::partition, s.n);
  fail(ErrorCode::InvalidArgument, "unknown poset family \"" + s.family + "\"");
}

inline Arrangement arrangement_from_json(const Json& j) {
  if (j.is_object() && j.contains("family")) {
    FamilySpec s;
    s.family = field(j, "family").get<std::string>();
    s.n = static_cast<unsigned>(parse_count(field(j, "n"), "n"));
    if (j.contains("k")) s.k = static_cast<unsigned>(parse_count(j.at("k"), "k"));
    return named_family(s);
  }
  const std::size_t n = parse_count(field(j, "ambient_dim"), "ambient_dim");
  std::vector<Flat> members;
  if (j.contains("hyperplanes"))
    for (const auto& h : j.at("hyperplanes")) {
      RationalRow normal;
      for (const auto& v : field(h, "normal")) normal.push_back(parse_rational_value(v));
      if (normal.size() != n) fail(ErrorCode::ParseError, "normal length differs from ambient_dim");
      const Rational offset = h.contains("offset") ? parse_rational_value(h.at("offset")) : Rational(0);
      members.push_back(Flat::hyperplane(normal, offset));
    }
  if (j.contains("subspaces"))
    for (const auto& s : j.at("subspaces")) {
      RationalMatrix rows;
      for (const auto& r : s) {
        RationalRow row;
        for (const auto& v : r) row.push_back(parse_rational_value(v));
        if (row.size() != n) fail(ErrorCode::ParseError, "equation row length differs from ambient_dim");
        rows.push_back(std::move(row));
      }
      members.push_back(Flat::linear(n, rows));
    }
  return Arrangement(n, std::move(members));
}

// --- signed graphs -----------------------------------------------------------

inline Json to_json(const SignedGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    Json o{{"kind", std::string(to_string(e.kind))}, {"i", e.i}};
    if (e.kind != EdgeKind::half) o["j"] = e.j;
    edges.push_back(o);
  }
  return Json{{"n", g.vertex_count()}, {"edges", edges}};
}

inline SignedGraph graph_from_json(const Json& j) {
  SignedGraph g(static_cast<unsigned>(parse_count(field(j, "n"), "n")));
  for (const auto& e : field(j, "edges")) {
    const std::string kind = field(e, "kind").get<std::string>();
    const auto i = static_cast<unsigned>(parse_count(field(e, "i"), "i"));
    if (kind == "half") g.add(SignedGraph::half(i));
    else if (kind == "pos") g.add(SignedGraph::pos(i, static_cast<unsigned>(parse_count(field(e, "j"), "j"))));
    else if (kind == "neg") g.add(SignedGraph::neg(i, static_cast<unsigned>(parse_count(field(e, "j"), "j"))));
    else fail(ErrorCode::ParseError, "edge kind must be pos, neg or half");
  }
  return g;
}

// --- reports -----------------------------------------------------------------

inline Json count_json(const BigInt& t, const BigInt& count) { return Json{{"t", big(t)}, {"count", big(count)}}; }

inline Json to_json(const FreeBasisReport& r) {
  Json out{{"is_basis", r.is_basis}};
  if (r.is_basis) {
    out["c"] = rational(r.c);
    out["degrees"] = r.degrees;
    out["exponents"] = r.exponents;
    out["chi"] = to_json(r.chi);
  } else {
    out["reason"] = r.reason;
  }
  out["determinant"] = r.determinant.to_string();
  return out;
}

}  // namespace charfactor::json
