#pragma once

// JSON export/import for kernels, tree sets, ledgers and diff reports.
// Object keys keep insertion order and rationals are "p/q" strings, so equal
// inputs serialize to identical bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "bnf/enumeration.hpp"
#include "bnf/evaluator.hpp"
#include "bnf/oracle.hpp"

namespace bnf {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get_field(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

inline Json modes_to_json(const ModeLattice& lat, const std::vector<int>& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(lat.mode(i));
  return out;
}

inline std::vector<int> modes_from_json(const ModeLattice& lat, const Json& j) {
  if (!j.is_array()) throw ConfigError("mode list must be an array");
  std::vector<int> out;
  for (const auto& m : j) {
    Mode k;
    try {
      k = m.get<Mode>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("mode must be an integer array");
    }
    const auto idx = lat.index(k);
    if (!idx) throw ConfigError("mode outside the lattice");
    out.push_back(*idx);
  }
  return out;
}

}  // namespace detail

inline Json kernel_to_json(const Kernel& a) {
  Json terms = Json::array();
  for (const auto& [m, c] : a) {
    terms.push_back({{"u", detail::modes_to_json(a.lattice(), m.u)},
                     {"ubar", detail::modes_to_json(a.lattice(), m.ubar)},
                     {"re", to_string(c.re())},
                     {"im", to_string(c.im())}});
  }
  return {{"dim", a.lattice().dim()},
          {"radius", a.lattice().radius()},
          {"max_degree", a.max_degree()},
          {"terms", std::move(terms)}};
}

inline Kernel kernel_from_json(const Json& j) {
  const ModeLattice lat(detail::get_field<int>(j, "dim"), detail::get_field<int>(j, "radius"));
  const int cutoff = detail::get_field<int>(j, "max_degree");
  const Json& terms = detail::field(j, "terms");
  if (!terms.is_array()) throw ConfigError("'terms' must be an array");
  std::vector<RawTerm> raw;
  for (const auto& t : terms) {
    Monomial m{detail::modes_from_json(lat, detail::field(t, "u")),
               detail::modes_from_json(lat, detail::field(t, "ubar"))};
    raw.emplace_back(std::move(m), Coefficient(parse_rational(detail::get_field<std::string>(t, "re")),
                                               parse_rational(detail::get_field<std::string>(t, "im"))));
  }
  return canonicalize(lat, cutoff, raw);
}

inline Json query_to_json(const TreeClassQuery& q) {
  Json out{{"kind", class_name(q.kind)}, {"m", q.m}};
  if (q.kind == TreeClass::circ_range) out["ell"] = q.ell;
  return out;
}

inline Json tree_set_to_json(const TreeSet& s, AssumptionMode mode = AssumptionMode::at_most) {
  Json trees = Json::array();
  Json degrees = Json::array();
  Json factors = Json::array();
  for (const auto& t : s.trees) {
    trees.push_back(canonical(t));
    degrees.push_back(degree(t));
    factors.push_back(symmetry_factor(t, 0, mode));
  }
  return {{"query", query_to_json(s.query)},
          {"trees", std::move(trees)},
          {"degrees", std::move(degrees)},
          {"symmetry_factors", std::move(factors)}};
}

/// What a ledger expands: the normal form H_m^l, or the generator F_i (m = i).
struct LedgerInfo {
  std::string kind = "normal_form";  // or "f_transform"
  int m = 1;
  int ell = 2;
  EvalConfig config{};
};

inline Json config_to_json(const EvalConfig& c) {
  return {{"dim", c.lattice.dim()},
          {"radius", c.lattice.radius()},
          {"threshold", c.resonance.threshold},
          {"cutoff", c.cutoff},
          {"assumption_mode", mode_name(c.mode)}};
}

inline EvalConfig config_from_json(const Json& j) {
  EvalConfig c{ModeLattice(detail::get_field<int>(j, "dim"), detail::get_field<int>(j, "radius")),
               ResonanceConfig{detail::get_field<long>(j, "threshold")}, detail::get_field<int>(j, "cutoff")};
  const auto mode = mode_from_name(detail::get_field<std::string>(j, "assumption_mode"));
  if (!mode) throw ConfigError("unknown assumption mode");
  c.mode = *mode;
  c.validate();
  return c;
}

inline Json ledger_to_json(const ExpansionLedger& l, const LedgerInfo& info) {
  Json entries = Json::array();
  for (const auto& e : l.entries) {
    entries.push_back({{"tree", canonical(e.tree)}, {"S", e.symmetry}, {"kernel", kernel_to_json(e.kernel)}});
  }
  return {{"m", info.m},
          {"ell", info.ell},
          {"kind", info.kind},
          {"config", config_to_json(info.config)},
          {"entries", std::move(entries)},
          {"total", kernel_to_json(l.total)}};
}

struct LoadedLedger {
  LedgerInfo info;
  ExpansionLedger ledger;
};

/// Parses a ledger and checks that it is internally consistent: every tree
/// is valid with the recorded S, and total = sum kernel / S.
inline LoadedLedger ledger_from_json(const Json& j) {
  LedgerInfo info;
  info.m = detail::get_field<int>(j, "m");
  info.ell = detail::get_field<int>(j, "ell");
  info.kind = detail::get_field<std::string>(j, "kind");
  if (info.kind != "normal_form" && info.kind != "f_transform") throw ConfigError("unknown ledger kind");
  info.config = config_from_json(detail::field(j, "config"));
  const EvalConfig& cfg = info.config;
  LoadedLedger out{info, {{}, kernel_from_json(detail::field(j, "total"))}};
  Kernel sum(cfg.lattice, cfg.cutoff);
  const Json& entries = detail::field(j, "entries");
  if (!entries.is_array()) throw ConfigError("'entries' must be an array");
  for (const auto& e : entries) {
    DecoratedTree t = [&] {
      try {
        return parse_tree(detail::get_field<std::string>(e, "tree"));
      } catch (const ParseError& err) {
        throw ConfigError(std::string("ledger tree: ") + err.what());
      }
    }();
    const auto s = detail::get_field<std::uint64_t>(e, "S");
    if (!is_valid(t, cfg.mode) || s != symmetry_factor(t, 0, cfg.mode)) {
      throw ConfigError("ledger entry " + canonical(t) + " has an invalid tree or wrong S");
    }
    Kernel k = kernel_from_json(detail::field(e, "kernel"));
    k.require_compatible(sum);
    sum += k * Coefficient(Rational(1, static_cast<long long>(s)));
    out.ledger.entries.push_back({std::move(t), s, std::move(k)});
  }
  if (!(out.ledger.total.lattice() == cfg.lattice) || out.ledger.total.max_degree() != cfg.cutoff ||
      !(sum == out.ledger.total)) {
    throw ConfigError("ledger total does not match its entries");
  }
  return out;
}

inline Json diff_to_json(const DiffReport& d) {
  const ModeLattice& lat = d.residual.lattice();
  Json worst = Json::array();
  for (const auto& w : d.worst) {
    worst.push_back({{"u", detail::modes_to_json(lat, w.monomial.u)},
                     {"ubar", detail::modes_to_json(lat, w.monomial.ubar)},
                     {"lhs", {to_string(w.lhs.re()), to_string(w.lhs.im())}},
                     {"rhs", {to_string(w.rhs.re()), to_string(w.rhs.im())}}});
  }
  return {{"equal", d.equal}, {"residual", kernel_to_json(d.residual)}, {"worst_monomials", std::move(worst)}};
}

}  // namespace bnf
