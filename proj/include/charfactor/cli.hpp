#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "charfactor/arrangement.hpp"
#include "charfactor/free_arrangements.hpp"
#include "charfactor/json_io.hpp"
#include "charfactor/lattice_factorization.hpp"
#include "charfactor/point_counting.hpp"
#include "charfactor/signed_graph.hpp"

namespace charfactor::cli {

using json::Json;

inline constexpr const char* kSchema = "charfactor/1";

enum ExitCode : int { kAgree = 0, kDisagree = 1, kUsage = 2 };

struct Options {
  std::string family;
  unsigned n = 0;
  unsigned k = 0;
  std::string input;
  std::string basis;
  std::string format = "json";
  std::string methods = "lattice,coloring,cube,ffield,saito,stanley,nbc,nbb";
  std::string method = "cube";
  std::string emit;
  long long s = 1;
  std::uint64_t p = 5;
  std::size_t hyperplane = 0;
  std::size_t max_flats = kDefaultMaxFlats;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t max_prime = 13;
  std::size_t budget = kDefaultInductiveBudget;
  std::size_t chain_nodes = kDefaultChainSearchNodes;
  bool timings = false;
};

/// Thrown for bad invocations; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Subject {
  std::string description;
  std::optional<Arrangement> arrangement{};
  std::optional<Poset> poset{};
  std::optional<SignedGraph> graph{};
};

namespace detail {

inline Json read_json(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

inline Subject load_subject(const Options& o, std::istream& in) {
  Subject s;
  if (!o.family.empty() && !o.input.empty()) throw UsageError("give either --family or --input, not both");
  if (!o.family.empty()) {
    const json::FamilySpec spec{o.family, o.n, o.k};
    s.description = o.family + " n=" + std::to_string(o.n);
    if (o.family == "k_equal" || o.family == "db") s.description += " k=" + std::to_string(o.k);
    if (json::is_arrangement_family(o.family)) s.arrangement = json::named_family(spec);
    else if (json::is_poset_family(o.family)) s.poset = json::named_poset(spec);
    else throw UsageError("unknown family \"" + o.family + "\"");
    return s;
  }
  if (o.input.empty()) throw UsageError("an object is required: use --family or --input");
  const Json j = read_json(o.input, in);
  s.description = o.input == "-" ? "stdin" : o.input;
  if (j.is_object() && j.contains("covers")) s.poset = json::poset_from_json(j);
  else if (j.is_object() && j.contains("edges")) {
    s.graph = json::graph_from_json(j);
    s.arrangement = arrangement_of(*s.graph);
  } else {
    s.arrangement = json::arrangement_from_json(j);
  }
  return s;
}

inline const Arrangement& need_arrangement(const Subject& s) {
  if (!s.arrangement) throw UsageError("this command needs an arrangement");
  return *s.arrangement;
}

inline Lattice lattice_of(const Subject& s, const Options& o) {
  if (s.poset) return Lattice(*s.poset);
  return Lattice(intersection_poset(need_arrangement(s), o.max_flats).poset);
}

/// sum mu(x) t^{rank(top) - rank(x)}, shifted by t^{n - rank(top)} for arrangements.
inline UniPoly chi_from_mobius(const Lattice& l, const std::vector<BigInt>& mu, std::optional<std::size_t> ambient) {
  const unsigned top = l.rank(l.one());
  std::vector<BigInt> c(top + 1, BigInt(0));
  for (ElementId x = 0; x < l.size(); ++x) c[top - l.rank(x)] += mu[x];
  UniPoly chi(std::move(c));
  if (ambient) chi *= UniPoly::monomial(static_cast<unsigned>(*ambient - top));
  return chi;
}

inline std::vector<std::string> split_methods(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline Json envelope(const std::string& command, const Subject& s) {
  return Json{{"schema", kSchema}, {"command", command}, {"object", s.description}};
}

inline std::string roots_text(const FactorizationReport& f) {
  std::string out;
  for (const auto& r : f.roots) out += (out.empty() ? "" : ", ") + r.str();
  return "{" + out + "}" + (f.complete ? "" : " cofactor " + f.cofactor.to_string());
}

inline std::string mask_text(const Lattice& l, const std::vector<ElementId>& atoms, AtomMask m) {
  std::string out;
  for (ElementId a : atoms_of(atoms, m)) out += (out.empty() ? "" : ",") + l.label(a);
  return "{" + out + "}";
}

inline Json mask_json(const Lattice& l, const std::vector<ElementId>& atoms, AtomMask m) {
  Json a = Json::array();
  for (ElementId x : atoms_of(atoms, m)) a.push_back(l.label(x));
  return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands. Each fills a JSON report and a text rendering and returns an exit code.

struct Output {
  Json json;
  std::string text{};
  int code = kAgree;
};

inline Output cmd_build(const Options& o, const Subject& s) {
  Output r{detail::envelope("build", s)};
  std::string emit = o.emit;
  if (emit.empty()) emit = s.poset ? "poset" : "arrangement";
  if (emit == "poset") {
    const Poset p = s.poset ? *s.poset : intersection_poset(detail::need_arrangement(s), o.max_flats).poset;
    r.json["poset"] = json::to_json(p);
    r.text = "poset with " + std::to_string(p.size()) + " elements\n";
  } else if (emit == "arrangement") {
    const Arrangement& a = detail::need_arrangement(s);
    r.json["arrangement"] = json::to_json(a);
    r.text = "arrangement in R^" + std::to_string(a.ambient_dim()) + "\n";
    for (const auto& f : a.members()) r.text += "  " + f.to_string() + "\n";
  } else if (emit == "graph") {
    const SignedGraph g = s.graph ? *s.graph : graph_of(detail::need_arrangement(s));
    r.json["graph"] = json::to_json(g);
    r.text = "signed graph on " + std::to_string(g.vertex_count()) + " vertices\n";
    for (const auto& e : g.edges())
      r.text += "  " + std::string(to_string(e.kind)) + " " + std::to_string(e.i) +
                (e.kind == EdgeKind::half ? "" : " " + std::to_string(e.j)) + "\n";
  } else if (emit == "defining_form") {
    const MultiPoly q = defining_form(detail::need_arrangement(s));
    r.json["defining_form"] = json::to_json(q);
    r.text = q.to_string() + "\n";
  } else if (emit == "basis") {
    auto b = discover_basis(detail::need_arrangement(s));
    if (!b) fail(ErrorCode::InsufficientCertificates, "no known basis for this arrangement");
    r.json["basis"] = json::to_json(*b);
    for (const auto& d : *b) {
      r.text += "(";
      for (std::size_t i = 0; i < d.nvars(); ++i) r.text += (i ? ", " : "") + d[i].to_string();
      r.text += ")\n";
    }
  } else {
    throw UsageError("--emit must be poset, arrangement, graph, defining_form or basis");
  }
  return r;
}

inline Output cmd_charpoly(const Options& o, const Subject& s) {
  Output r{detail::envelope("charpoly", s)};
  const UniPoly chi = s.poset ? characteristic_polynomial(*s.poset) : charpoly_arrangement(detail::need_arrangement(s), o.max_flats);
  const auto f = nonneg_integer_roots(chi);
  r.json["chi"] = json::to_json(chi);
  r.json["factorization"] = json::to_json(f);
  r.text = "chi(t) = " + chi.to_string() + "\nroots " + detail::roots_text(f) + "\n";
  return r;
}

inline Output cmd_verify(const Options& o, const Subject& s) {
  Output r{detail::envelope("verify", s)};
  const auto methods = detail::split_methods(o.methods);
  if (methods.empty()) throw UsageError("--methods is empty");
  struct Run {
    std::string method, status, message;
    std::optional<UniPoly> chi{};
    double ms = 0;
  };
  std::vector<Run> runs;
  const std::optional<std::size_t> ambient = s.arrangement ? std::optional(s.arrangement->ambient_dim()) : std::nullopt;
  std::optional<Lattice> lattice;
  auto get_lattice = [&]() -> const Lattice& {
    if (!lattice) lattice.emplace(detail::lattice_of(s, o));
    return *lattice;
  };
  const bool combinatorial = s.poset || (s.arrangement->is_hyperplane_arrangement() && s.arrangement->is_central());
  auto skip = [](Run& run, const std::string& why) {
    run.status = "skipped";
    run.message = why;
  };
  for (const auto& m : methods) {
    Run run{m, "ok", "", std::nullopt};
    const auto start = std::chrono::steady_clock::now();
    const bool arrangement_only = m == "coloring" || m == "cube" || m == "ffield" || m == "saito";
    const bool lattice_based = m == "stanley" || m == "nbc" || m == "nbb";
    try {
      if (m != "lattice" && !arrangement_only && !lattice_based) throw UsageError("unknown method \"" + m + "\"");
      if (arrangement_only && !s.arrangement) {
        skip(run, "needs an arrangement");
      } else if (lattice_based && !combinatorial) {
        skip(run, "needs a poset or a central hyperplane arrangement");
      } else if (m == "lattice") {
        run.chi = s.poset ? characteristic_polynomial(*s.poset) : charpoly_arrangement(*s.arrangement, o.max_flats);
      } else if (m == "coloring") {
        run.chi = chromatic_polynomial(s.graph ? *s.graph : graph_of(*s.arrangement), o.cap);
      } else if (m == "cube" || m == "ffield") {
        CountOptions co{o.cap, o.max_prime, o.max_flats, false};
        run.chi = charpoly_via_counts(*s.arrangement, m == "cube" ? CountMethod::cube : CountMethod::ffield, co).chi;
      } else if (m == "saito") {
        const Arrangement& a = *s.arrangement;
        std::optional<DerivationMatrix> basis;
        if (!o.basis.empty()) {
          std::istringstream none;
          basis = json::derivation_matrix_from_json(detail::read_json(o.basis, none));
        } else {
          basis = discover_basis(a);
        }
        if (!basis) {
          skip(run, "no derivation basis supplied or known");
        } else {
          const FreeBasisReport fr = saito_check(*basis, a);
          if (!fr.is_basis) fail(ErrorCode::InvalidArgument, "not a basis: " + fr.reason);
          run.chi = fr.chi;
        }
      } else if (m == "stanley") {
        const Lattice& l = get_lattice();
        UniPoly chi = stanley_factorization(l, o.chain_nodes).product;
        if (ambient) chi *= UniPoly::monomial(static_cast<unsigned>(*ambient - l.rank(l.one())));
        run.chi = chi;
      } else if (m == "nbc") {
        const Lattice& l = get_lattice();
        run.chi = detail::chi_from_mobius(l, mobius_via_nbc(l, AtomOrder::total(l, l.atoms())), ambient);
      } else {
        const Lattice& l = get_lattice();
        if (!l.ranked()) fail(ErrorCode::InvalidArgument, "lattice is not ranked");
        run.chi = detail::chi_from_mobius(l, nbb_machinery(l, AtomOrder::antichain(l)).mobius, ambient);
      }
    } catch (const Error& e) {
      const bool inapplicable = e.code() == ErrorCode::NotSubBn || e.code() == ErrorCode::NotEmbedded;
      run.status = inapplicable ? "skipped" : "error";
      run.message = e.what();
    }
    run.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    runs.push_back(std::move(run));
  }
  std::vector<const Run*> done;
  for (const auto& run : runs)
    if (run.chi) done.push_back(&run);
  bool all_agree = done.size() >= 2;
  Json arr = Json::array();
  for (const auto& run : runs) {
    Json e{{"method", run.method}, {"status", run.status}};
    if (run.chi) {
      bool agrees = true;
      for (const Run* other : done) agrees = agrees && *other->chi == *run.chi;
      all_agree = all_agree && agrees;
      e["chi"] = json::to_json(*run.chi);
      e["agrees"] = agrees;
    }
    if (!run.message.empty()) e["message"] = run.message;
    if (o.timings) e["ms"] = run.ms;
    arr.push_back(e);
    r.text += run.method + ": " + run.status;
    if (run.chi) r.text += "  " + run.chi->to_string();
    if (!run.message.empty()) r.text += "  (" + run.message + ")";
    if (o.timings) r.text += "  " + std::to_string(run.ms) + " ms";
    r.text += "\n";
  }
  r.json["methods"] = arr;
  r.json["completed"] = done.size();
  r.json["all_agree"] = all_agree;
  if (!done.empty()) {
    r.json["chi"] = json::to_json(*done.front()->chi);
    r.json["factorization"] = json::to_json(nonneg_integer_roots(*done.front()->chi));
  }
  r.text += all_agree ? "agreement across " + std::to_string(done.size()) + " methods\n"
                      : (done.size() < 2 ? "fewer than two methods completed\n" : "methods disagree\n");
  r.code = all_agree ? kAgree : kDisagree;
  return r;
}

inline Output cmd_regions(const Options& o, const Subject& s) {
  Output r{detail::envelope("regions", s)};
  const RegionCounts rc = region_counts(detail::need_arrangement(s), o.max_flats);
  r.json["r"] = json::big(rc.regions);
  r.json["b"] = json::big(rc.bounded);
  r.text = "regions " + rc.regions.str() + "\nbounded " + rc.bounded.str() + "\n";
  return r;
}

inline Output cmd_kequal(const Options& o) {
  Subject s{"k_equal n=" + std::to_string(o.n) + " k=" + std::to_string(o.k)};
  Output r{detail::envelope("kequal", s)};
  const KEqualReport k = k_equal_charpoly(o.n, o.k);
  r.json["chi"] = json::to_json(k.chi);
  r.json["falling_factorial"] = json::to_json(k.expansion);
  r.json["divisor_order"] = k.divisor_order;
  r.json["divisible"] = k.divisible;
  r.text = "chi(t) = " + k.chi.to_string() + "\n";
  for (const auto& [j, c] : k.expansion.coeffs) r.text += "  " + c.str() + " (t)_" + std::to_string(j) + "\n";
  r.text += std::string(k.divisible ? "divisible" : "not divisible") + " by (t)_" + std::to_string(k.divisor_order) + "\n";
  return r;
}

inline Output cmd_shi(const Options& o) {
  Subject s{"shi n=" + std::to_string(o.n)};
  Output r{detail::envelope("shi", s)};
  const UniPoly closed = shi_charpoly(o.n);
  r.json["chi"] = json::to_json(closed);
  r.json["r"] = json::big(big_abs(closed.eval(BigInt(-1))));
  r.text = "chi(t) = " + closed.to_string() + "\n";
  bool agree = true;
  if (o.n >= 1) {
    const Arrangement a = shi_arrangement(o.n);
    const UniPoly lattice = charpoly_arrangement(a, o.max_flats);
    r.json["lattice_chi"] = json::to_json(lattice);
    agree = lattice == closed;
    r.text += "lattice " + lattice.to_string() + "\n";
    try {
      const auto ff = charpoly_via_counts(a, CountMethod::ffield, CountOptions{o.cap, o.max_prime, o.max_flats, false});
      r.json["ffield_chi"] = json::to_json(ff.chi);
      Json samples = Json::array();
      for (const auto& [t, c] : ff.samples) samples.push_back(json::count_json(t, c));
      r.json["ffield_samples"] = samples;
      agree = agree && ff.chi == closed;
      r.text += "finite field " + ff.chi.to_string() + "\n";
    } catch (const Error& e) {
      r.json["ffield_error"] = e.what();
      r.text += std::string("finite field: ") + e.what() + "\n";
    }
  }
  r.json["agrees"] = agree;
  r.code = agree ? kAgree : kDisagree;
  return r;
}

inline Output cmd_saito(const Options& o, const Subject& s, std::istream& in) {
  Output r{detail::envelope("saito", s)};
  const Arrangement& a = detail::need_arrangement(s);
  std::optional<DerivationMatrix> basis;
  if (!o.basis.empty()) basis = json::derivation_matrix_from_json(detail::read_json(o.basis, in));
  else basis = discover_basis(a);
  if (!basis) fail(ErrorCode::InsufficientCertificates, "no derivation basis supplied or known");
  const FreeBasisReport fr = saito_check(*basis, a);
  r.json["basis"] = json::to_json(*basis);
  r.json["report"] = json::to_json(fr);
  r.json["defining_form"] = defining_form(a).to_string();
  if (fr.is_basis) {
    r.text = "basis, c = " + to_string(fr.c) + "\nexponents";
    for (int e : fr.exponents) r.text += " " + std::to_string(e);
    r.text += "\nchi(t) = " + fr.chi.to_string() + "\n";
  } else {
    r.text = "not a basis: " + fr.reason + "\n";
    r.code = kDisagree;
  }
  return r;
}

inline Output cmd_nbc(const Options& o, const Subject& s) {
  Output r{detail::envelope("nbc", s)};
  const Lattice l = detail::lattice_of(s, o);
  const NbcResult nbc = circuits_and_nbc(l, AtomOrder::total(l, l.atoms()));
  const auto mu = mobius_via_nbc(l, AtomOrder::total(l, l.atoms()));
  Json circuits = Json::array(), broken = Json::array(), elements = Json::array();
  r.text = "circuits:";
  for (AtomMask c : nbc.circuits) {
    circuits.push_back(detail::mask_json(l, nbc.atoms, c));
    r.text += " " + detail::mask_text(l, nbc.atoms, c);
  }
  r.text += "\nbroken circuits:";
  for (AtomMask c : nbc.broken_circuits) {
    broken.push_back(detail::mask_json(l, nbc.atoms, c));
    r.text += " " + detail::mask_text(l, nbc.atoms, c);
  }
  r.text += "\n";
  for (ElementId x = 0; x < l.size(); ++x) {
    Json bases = Json::array();
    r.text += l.label(x) + "  mu " + mu[x].str() + "  bases";
    for (AtomMask b : nbc.bases[x]) {
      bases.push_back(detail::mask_json(l, nbc.atoms, b));
      r.text += " " + detail::mask_text(l, nbc.atoms, b);
    }
    r.text += "\n";
    elements.push_back(Json{{"element", l.label(x)}, {"mu", json::big(mu[x])}, {"bases", bases}});
  }
  r.json["circuits"] = circuits;
  r.json["broken_circuits"] = broken;
  r.json["elements"] = elements;
  return r;
}

inline Output cmd_nbb(const Options& o, const Subject& s) {
  Output r{detail::envelope("nbb", s)};
  const Lattice l = detail::lattice_of(s, o);
  const NbbResult nbb = nbb_machinery(l, AtomOrder::total(l, l.atoms()));
  const auto& recursive = l.poset().mobius_from_zero();
  bool agree = true;
  Json elements = Json::array();
  for (ElementId x = 0; x < l.size(); ++x) {
    Json bases = Json::array();
    r.text += l.label(x) + "  mu " + nbb.mobius[x].str() + "  bases";
    for (AtomMask b : nbb.bases[x]) {
      bases.push_back(detail::mask_json(l, nbb.atoms, b));
      r.text += " " + detail::mask_text(l, nbb.atoms, b);
    }
    r.text += "\n";
    agree = agree && nbb.mobius[x] == recursive[x];
    elements.push_back(Json{{"element", l.label(x)}, {"mu", json::big(nbb.mobius[x])}, {"bases", bases}});
  }
  r.json["bounded_below_count"] = nbb.bounded_below.size();
  r.json["elements"] = elements;
  r.json["matches_recursive_mobius"] = agree;
  r.code = agree ? kAgree : kDisagree;
  return r;
}

inline Json levels_json(const Lattice& l, const Levels& lv) {
  Json chain = Json::array(), blocks = Json::array();
  for (ElementId x : lv.chain) chain.push_back(l.label(x));
  for (const auto& b : lv.blocks) {
    Json blk = Json::array();
    for (ElementId a : b) blk.push_back(l.label(a));
    blocks.push_back(blk);
  }
  return Json{{"chain", chain}, {"levels", blocks}};
}

inline std::string levels_text(const Lattice& l, const Levels& lv) {
  std::string t = "chain";
  for (ElementId x : lv.chain) t += " " + l.label(x);
  t += "\nlevel sizes";
  for (const auto& b : lv.blocks) t += " " + std::to_string(b.size());
  return t + "\n";
}

inline Output cmd_stanley(const Options& o, const Subject& s) {
  Output r{detail::envelope("stanley", s)};
  const Lattice l = detail::lattice_of(s, o);
  const StanleyReport st = stanley_factorization(l, o.chain_nodes);
  r.json["chain"] = levels_json(l, st.levels);
  r.json["chi"] = json::to_json(st.chi);
  r.json["product"] = json::to_json(st.product);
  r.json["factorization"] = json::to_json(st.factorization);
  r.json["agrees"] = st.agrees;
  r.json["nbc_are_level_transversals"] = st.nbc_are_level_transversals;
  r.text = levels_text(l, st.levels) + "chi(t) = " + st.chi.to_string() + "\nproduct " + st.product.to_string() + "\n";
  r.code = st.agrees && st.nbc_are_level_transversals ? kAgree : kDisagree;
  return r;
}

inline Output cmd_ll(const Options& o, const Subject& s) {
  Output r{detail::envelope("ll", s)};
  const Lattice l = detail::lattice_of(s, o);
  const LLReport ll = ll_factorization(l, o.chain_nodes);
  r.json["chain"] = levels_json(l, ll.levels);
  r.json["rho_consistent"] = ll.rho_consistent;
  if (ll.rho_consistent) r.json["chi"] = json::to_json(ll.chi);
  r.json["product"] = json::to_json(ll.product);
  r.json["holds"] = ll.holds;
  r.json["empty_levels"] = ll.empty_levels;
  r.json["nbb_are_level_transversals"] = ll.nbb_are_level_transversals;
  r.text = levels_text(l, ll.levels) + (ll.rho_consistent ? "chi(t) = " + ll.chi.to_string() + "\n" : "NBB base sizes disagree\n") +
           "product " + ll.product.to_string() + "\n";
  r.code = ll.holds ? kAgree : kDisagree;
  return r;
}

inline Output cmd_count(const Options& o, const Subject& s) {
  Output r{detail::envelope("count", s)};
  const Arrangement& a = detail::need_arrangement(s);
  BigInt t, c;
  if (o.method == "cube") {
    t = 2 * o.s + 1;
    c = cube_count(a, o.s, o.cap);
  } else if (o.method == "ffield") {
    t = o.p;
    c = finite_field_count(a, o.p, o.cap, o.max_flats);
  } else {
    throw UsageError("--method must be cube or ffield");
  }
  r.json["count"] = json::count_json(t, c);
  r.text = "t = " + t.str() + "  count = " + c.str() + "\n";
  return r;
}

inline Output cmd_triple(const Options& o, const Subject& s) {
  Output r{detail::envelope("triple", s)};
  const TripleDecomposition t = triple(detail::need_arrangement(s), o.hyperplane);
  const UniPoly c0 = charpoly_arrangement(t.original, o.max_flats), c1 = charpoly_arrangement(t.deleted, o.max_flats),
                c2 = charpoly_arrangement(t.restricted, o.max_flats);
  r.json["hyperplane"] = t.original.member(t.pivot).to_string();
  r.json["chi"] = json::to_json(c0);
  r.json["deleted_chi"] = json::to_json(c1);
  r.json["restricted_chi"] = json::to_json(c2);
  r.json["restricted"] = json::to_json(t.restricted);
  const bool ok = c0 == c1 - c2;
  r.json["identity_holds"] = ok;
  r.text = "chi " + c0.to_string() + "\ndeleted " + c1.to_string() + "\nrestricted " + c2.to_string() + "\n" +
           (ok ? "identity holds\n" : "identity fails\n");
  r.code = ok ? kAgree : kDisagree;
  return r;
}

inline Output cmd_inductive(const Options& o, const Subject& s) {
  Output r{detail::envelope("inductive", s)};
  const InductiveFreenessResult res = is_inductively_free(detail::need_arrangement(s), o.budget);
  r.json["inductively_free"] = res.free;
  r.json["nodes"] = res.nodes;
  if (res.free) {
    r.json["exponents"] = res.exponents;
    Json chain = Json::array();
    for (const auto& h : res.deletion_chain) chain.push_back(h.to_string());
    r.json["deletion_chain"] = chain;
    r.text = "inductively free, exponents";
    for (int e : res.exponents) r.text += " " + std::to_string(e);
    r.text += "\n";
  } else {
    r.text = "not inductively free\n";
  }
  return r;
}

// ---------------------------------------------------------------------------

inline int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::ParameterOutOfRange:
    case ErrorCode::IndexOutOfRange:
      return kUsage;
    default:
      return kDisagree;
  }
}

/// Entry point; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Characteristic polynomials of posets and arrangements, computed and cross-checked exactly."};
  app.name("charfactor");
  app.require_subcommand(1, 1);
  Options o;

  auto add_object = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "weyl_a, weyl_b, weyl_d, shi, k_equal, db, chain, boolean, divisor, partition");
    sub->add_option("--n", o.n, "family size parameter");
    sub->add_option("--k", o.k, "second family parameter (k_equal, db)");
    sub->add_option("--input", o.input, "object JSON file, or - for standard input");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--max-flats", o.max_flats, "intersection poset size cap")->capture_default_str();
    sub->add_option("--cap", o.cap, "point enumeration cap")->capture_default_str();
    sub->add_option("--max-prime", o.max_prime, "largest prime tried by the finite-field method")->capture_default_str();
    sub->add_option("--chain-nodes", o.chain_nodes, "node budget for modular chain search")->capture_default_str();
  };

  struct Entry {
    CLI::App* app;
    std::function<Output()> action;
  };
  std::vector<Entry> entries;
  Subject subject;
  auto with_subject = [&](auto fn) { return [&, fn] { subject = detail::load_subject(o, in); return fn(o, subject); }; };

  auto* build = app.add_subcommand("build", "emit an object as JSON");
  add_object(build), add_common(build);
  build->add_option("--emit", o.emit, "poset, arrangement, graph, defining_form or basis");
  entries.push_back({build, with_subject(cmd_build)});

  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial by the Mobius sum");
  add_object(charpoly), add_common(charpoly);
  entries.push_back({charpoly, with_subject(cmd_charpoly)});

  auto* verify = app.add_subcommand("verify", "cross-check several methods");
  add_object(verify), add_common(verify);
  verify->add_option("--methods", o.methods, "comma list of lattice,coloring,cube,ffield,saito,stanley,nbc,nbb")->capture_default_str();
  verify->add_option("--basis", o.basis, "derivation matrix JSON for the saito method");
  verify->add_flag("--timings", o.timings, "include per-method timings");
  entries.push_back({verify, with_subject(cmd_verify)});

  auto* regions = app.add_subcommand("regions", "region and bounded-region counts");
  add_object(regions), add_common(regions);
  entries.push_back({regions, with_subject(cmd_regions)});

  auto* kequal = app.add_subcommand("kequal", "k-equal characteristic polynomial in the falling factorial basis");
  add_common(kequal);
  kequal->add_option("--n", o.n)->required();
  kequal->add_option("--k", o.k)->required();
  entries.push_back({kequal, [&] { return cmd_kequal(o); }});

  auto* shi = app.add_subcommand("shi", "Shi arrangement closed form checked against the lattice and finite fields");
  add_common(shi);
  shi->add_option("--n", o.n)->required();
  entries.push_back({shi, [&] { return cmd_shi(o); }});

  auto* saito = app.add_subcommand("saito", "certify a derivation basis");
  add_object(saito), add_common(saito);
  saito->add_option("--basis", o.basis, "derivation matrix JSON; a known basis is used otherwise");
  entries.push_back({saito, [&] {
                       subject = detail::load_subject(o, in);
                       return cmd_saito(o, subject, in);
                     }});

  auto* nbc = app.add_subcommand("nbc", "circuits, broken circuits and NBC bases");
  add_object(nbc), add_common(nbc);
  entries.push_back({nbc, with_subject(cmd_nbc)});

  auto* nbb = app.add_subcommand("nbb", "NBB bases and Mobius values");
  add_object(nbb), add_common(nbb);
  entries.push_back({nbb, with_subject(cmd_nbb)});

  auto* stanley = app.add_subcommand("stanley", "factorization along a modular chain");
  add_object(stanley), add_common(stanley);
  entries.push_back({stanley, with_subject(cmd_stanley)});

  auto* ll = app.add_subcommand("ll", "factorization along a left-modular chain");
  add_object(ll), add_common(ll);
  entries.push_back({ll, with_subject(cmd_ll)});

  auto* count = app.add_subcommand("count", "points off the arrangement in a cube or over F_p");
  add_object(count), add_common(count);
  count->add_option("--method", o.method, "cube or ffield")->capture_default_str();
  count->add_option("--s", o.s, "cube radius")->capture_default_str();
  count->add_option("--p", o.p, "prime")->capture_default_str();
  entries.push_back({count, with_subject(cmd_count)});

  auto* trip = app.add_subcommand("triple", "deletion and restriction at one hyperplane");
  add_object(trip), add_common(trip);
  trip->add_option("--hyperplane", o.hyperplane, "0-based member index")->capture_default_str();
  entries.push_back({trip, with_subject(cmd_triple)});

  auto* ind = app.add_subcommand("inductive", "bounded search for inductive freeness");
  add_object(ind), add_common(ind);
  ind->add_option("--budget", o.budget, "recursion node budget")->capture_default_str();
  entries.push_back({ind, with_subject(cmd_inductive)});

  std::vector<std::string> storage{"charfactor"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }
  try {
    for (auto& e : entries) {
      if (!e.app->parsed()) continue;
      Output r = e.action();
      if (o.format == "json") out << r.json.dump(2) << "\n";
      else out << r.text;
      return r.code;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.code());
  }
  return kUsage;
}

}  // namespace charfactor::cli
