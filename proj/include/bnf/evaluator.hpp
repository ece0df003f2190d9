#pragma once

// Interpretation of decorated trees as iterated Poisson brackets, and the
// tree expansions of the generators F_i and the truncated normal form.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "bnf/enumeration.hpp"
#include "bnf/hamiltonian.hpp"
#include "bnf/trees.hpp"

namespace bnf {

/// The normal form after m generators uses the classes T_r^{<m+2},
/// T_o^{m+2} and T_o^{m+2,l}.
inline constexpr int kNormalFormIndexOffset = 2;

struct EvalConfig {
  ModeLattice lattice{1, 2};
  ResonanceConfig resonance{};
  int cutoff = 8;  // 2l
  AssumptionMode mode = AssumptionMode::at_most;
  std::size_t cap = 1'000'000;

  void validate() const {
    if (cutoff < 4 || cutoff % 2 != 0) throw ConfigError("cutoff must be an even integer >= 4");
    if (resonance.threshold < 0) throw ConfigError("resonance threshold must be non-negative");
  }
};

struct LedgerEntry {
  DecoratedTree tree;
  std::uint64_t symmetry = 1;  // S(T); the entry contributes kernel / S(T)
  Kernel kernel;
};

struct ExpansionLedger {
  std::vector<LedgerEntry> entries;
  Kernel total;
};

/// Evaluates Pi with a per-instance cache keyed by canonical subtree string.
/// An instance is not safe to share between threads; use one per task.
class Evaluator {
 public:
  explicit Evaluator(EvalConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

  const EvalConfig& config() const { return cfg_; }

  Kernel h0() const { return bnf::h0(cfg_.lattice, cfg_.cutoff); }
  Kernel h1() const { return bnf::h1(cfg_.lattice, cfg_.cutoff); }

  /// Pi: k -> H0, o -> H1, r -> H1^res, n -> H_{1,Phi}^nonres at the leaves;
  /// o-, r- and n-nodes give the bracket of the children, its resonant part,
  /// and its phase generator respectively.
  const Kernel& pi(const DecoratedTree& t) {
    if (degree(t) > cfg_.cutoff) {
      throw ConfigError("cutoff " + std::to_string(cfg_.cutoff) + " is below tree degree " +
                        std::to_string(degree(t)));
    }
    if (!is_valid(t, cfg_.mode)) throw InvalidTreeError("cannot evaluate invalid tree " + canonical(t));
    return eval(t);
  }

  /// F_i = sum over T in T_n^{i+1} of Pi(T) / S(T).
  ExpansionLedger f_transform(int i) {
    if (i < 1) throw ConfigError("generator index must be positive");
    if (cfg_.cutoff < 2 * (i + 1)) throw ConfigError("cutoff too small for F_" + std::to_string(i));
    return ledger_for(tree_class(TreeClassQuery::n_exact(i + 1), options()).trees);
  }

  /// H0 + sum over T_r^{<m+2}, T_o^{m+2}, T_o^{m+2,l} of Pi(T)/S(T), where the
  /// configured cutoff must be 2l. The H0 term is the k-leaf entry.
  ExpansionLedger normal_form(int m, int ell) {
    if (m < 1 || !(m < ell)) throw ConfigError("normal form requires 1 <= m < ell");
    if (cfg_.cutoff != 2 * ell) throw ConfigError("cutoff must equal 2 * ell");
    const int idx = m + kNormalFormIndexOffset;
    std::vector<DecoratedTree> trees{DecoratedTree::leaf(Decoration::k)};
    auto append = [&](const TreeClassQuery& q) {
      for (auto& t : tree_class(q, options()).trees) {
        if (degree(t) <= cfg_.cutoff) trees.push_back(std::move(t));
      }
    };
    append(TreeClassQuery::res_below(idx));
    append(TreeClassQuery::circ_exact(idx));
    if (idx < ell) append(TreeClassQuery::circ_range(idx, ell));
    return ledger_for(trees);
  }

  /// {H0, F_i} + sum over T in T_o^{i+1} of Pi(T)^nonres / S(T); empty when
  /// the generator cancels the non-resonant block it targets.
  Kernel cancellation_check(int i) {
    const ExpansionLedger f = f_transform(i);
    Kernel residual = poisson_bracket(h0(), f.total);
    for (const auto& t : tree_class(TreeClassQuery::circ_exact(i + 1), options()).trees) {
      residual += split_resonant(eval(t), cfg_.resonance).nonres *
                  Coefficient(Rational(1, static_cast<long long>(symmetry_factor(t, 0, cfg_.mode))));
    }
    return residual;
  }

 private:
  EnumerationOptions options() const { return {cfg_.mode, cfg_.cap}; }

  ExpansionLedger ledger_for(const std::vector<DecoratedTree>& trees) {
    ExpansionLedger out{{}, Kernel(cfg_.lattice, cfg_.cutoff)};
    for (const auto& t : trees) {
      const std::uint64_t s = symmetry_factor(t, 0, cfg_.mode);
      const Kernel& k = pi(t);
      out.total += k * Coefficient(Rational(1, static_cast<long long>(s)));
      out.entries.push_back({t, s, k});
    }
    return out;
  }

  const Kernel& eval(const DecoratedTree& t) {
    std::string key = canonical(t);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Kernel value = t.is_leaf() ? leaf_value(t.decoration()) : node_value(t);
    return cache_.emplace(std::move(key), std::move(value)).first->second;
  }

  Kernel leaf_value(Decoration d) const {
    switch (d) {
      case Decoration::k: return h0();
      case Decoration::circ: return h1();
      case Decoration::r: return split_resonant(h1(), cfg_.resonance).res;
      case Decoration::n: return phase_generator(h1(), cfg_.resonance);
    }
    return h1();
  }

  Kernel node_value(const DecoratedTree& t) {
    // unordered_map references survive rehashing
    const Kernel& left = eval(t.left());
    const Kernel& right = eval(t.right());
    Kernel bracket = poisson_bracket(left, right);
    switch (t.decoration()) {
      case Decoration::circ: return bracket;
      case Decoration::r: return split_resonant(bracket, cfg_.resonance).res;
      case Decoration::n: return phase_generator(bracket, cfg_.resonance);
      case Decoration::k: break;
    }
    throw InvalidTreeError("k-decorated internal node");
  }

  EvalConfig cfg_;
  std::unordered_map<std::string, Kernel> cache_;
};

}  // namespace bnf
