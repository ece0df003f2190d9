#pragma once

// Exhaustive generation of valid decorated trees and the tree classes
// T_r^{<m}, T_o^m, T_n^m, T_o^{m,l}.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnf/errors.hpp"
#include "bnf/trees.hpp"

namespace bnf {

enum class TreeClass { res_below, circ_exact, n_exact, circ_range };

inline std::string_view class_name(TreeClass c) {
  switch (c) {
    case TreeClass::res_below: return "res_below";
    case TreeClass::circ_exact: return "circ_exact";
    case TreeClass::n_exact: return "n_exact";
    case TreeClass::circ_range: return "circ_range";
  }
  return "?";
}

struct TreeClassQuery {
  TreeClass kind = TreeClass::circ_exact;
  int m = 1;
  int ell = 0;  // circ_range only

  static TreeClassQuery res_below(int m) { return {TreeClass::res_below, m, 0}; }
  static TreeClassQuery circ_exact(int m) { return {TreeClass::circ_exact, m, 0}; }
  static TreeClassQuery n_exact(int m) { return {TreeClass::n_exact, m, 0}; }
  static TreeClassQuery circ_range(int m, int ell) { return {TreeClass::circ_range, m, ell}; }

  void validate() const {
    if (m < 1) throw ConfigError("tree class index m must be positive");
    if (kind == TreeClass::circ_range && !(m < ell)) throw ConfigError("circ_range requires m < ell");
  }

  /// Largest degree a member can have.
  int max_degree() const {
    switch (kind) {
      case TreeClass::res_below: return 2 * m - 2;
      case TreeClass::circ_exact:
      case TreeClass::n_exact: return 2 * m;
      case TreeClass::circ_range: return 2 * ell;
    }
    return 0;
  }
};

struct TreeSet {
  TreeClassQuery query;
  std::vector<DecoratedTree> trees;  // sorted by canonical string, no duplicates
};

struct EnumerationOptions {
  AssumptionMode mode = AssumptionMode::at_most;
  std::size_t cap = 1'000'000;
};

namespace detail {

inline void sort_canonical(std::vector<DecoratedTree>& trees) {
  std::vector<std::pair<std::string, DecoratedTree>> keyed;
  keyed.reserve(trees.size());
  for (auto& t : trees) keyed.emplace_back(canonical(t), std::move(t));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  trees.clear();
  for (auto& [key, t] : keyed) trees.push_back(std::move(t));
}

inline bool k_leaf(const DecoratedTree& t) { return t.is_leaf() && t.decoration() == Decoration::k; }

}  // namespace detail

/// Every tree of degree <= max_degree that is valid as a subtree of some
/// larger tree, indexed by degree (index d holds degree-d trees). These differ
/// from valid trees only in allowing a k-leaf child at the root.
inline std::vector<std::vector<DecoratedTree>> enumerate_components(int max_degree,
                                                                    const EnumerationOptions& opts = {}) {
  std::vector<std::vector<DecoratedTree>> by_degree(static_cast<std::size_t>(std::max(max_degree, 0) + 1));
  std::size_t total = 0;
  auto push = [&](int d, DecoratedTree t) {
    if (++total > opts.cap) throw ResourceLimitError("tree enumeration exceeded cap of " + std::to_string(opts.cap));
    by_degree[static_cast<std::size_t>(d)].push_back(std::move(t));
  };
  if (max_degree >= 2) push(2, DecoratedTree::leaf(Decoration::k));
  if (max_degree >= 4) {
    for (Decoration d : {Decoration::circ, Decoration::n, Decoration::r}) push(4, DecoratedTree::leaf(d));
  }
  constexpr Decoration kInternal[] = {Decoration::circ, Decoration::n, Decoration::r};
  for (int d = 4; d <= max_degree; d += 2) {
    // Left child of degree >= 4: the right child then has degree <= d - 2, already complete.
    for (int d1 = 4; d1 <= d - 2; d1 += 2) {
      const int d2 = d - d1 + 2;
      for (const auto& left : by_degree[static_cast<std::size_t>(d1)]) {
        if (left.decoration() == Decoration::n) continue;
        for (const auto& right : by_degree[static_cast<std::size_t>(d2)]) {
          if (right.decoration() != Decoration::n) continue;
          for (Decoration dec : kInternal) {
            if (local_violations(dec, left, right, opts.mode).empty()) {
              push(d, DecoratedTree::node(dec, left, right));
            }
          }
        }
      }
    }
    // (o; k, T2) with |T2| = d. n-rooted trees never have a k child, so the
    // degree-d n-rooted trees are all present by now.
    const DecoratedTree k = DecoratedTree::leaf(Decoration::k);
    const std::size_t existing = by_degree[static_cast<std::size_t>(d)].size();
    for (std::size_t idx = 0; idx < existing; ++idx) {
      const DecoratedTree right = by_degree[static_cast<std::size_t>(d)][idx];
      if (right.decoration() != Decoration::n) continue;
      if (local_violations(Decoration::circ, k, right, opts.mode).empty()) {
        push(d, DecoratedTree::node(Decoration::circ, k, right));
      }
    }
  }
  return by_degree;
}

/// All valid trees with degree <= max_degree, sorted by canonical string.
inline std::vector<DecoratedTree> enumerate_valid(int max_degree, const EnumerationOptions& opts = {}) {
  if (max_degree < 2) throw ConfigError("max_degree must be at least 2");
  std::vector<DecoratedTree> out;
  for (auto& level : enumerate_components(max_degree, opts)) {
    for (auto& t : level) {
      if (!t.is_leaf() && detail::k_leaf(t.left())) continue;  // k-leaf child of the root
      out.push_back(std::move(t));
    }
  }
  detail::sort_canonical(out);
  return out;
}

/// True when some internal n-node of `t` has degree >= bound.
inline bool has_n_node_of_degree_at_least(const DecoratedTree& t, int bound) {
  if (t.is_leaf()) return false;
  if (t.decoration() == Decoration::n && degree(t) >= bound) return true;
  return has_n_node_of_degree_at_least(t.left(), bound) || has_n_node_of_degree_at_least(t.right(), bound);
}

inline bool in_class(const DecoratedTree& t, const TreeClassQuery& q) {
  const int d = degree(t);
  switch (q.kind) {
    case TreeClass::res_below: return t.decoration() == Decoration::r && d < 2 * q.m;
    case TreeClass::circ_exact: return t.decoration() == Decoration::circ && d == 2 * q.m;
    case TreeClass::n_exact: return t.decoration() == Decoration::n && d == 2 * q.m;
    case TreeClass::circ_range:
      return t.decoration() == Decoration::circ && 2 * q.m < d && d <= 2 * q.ell &&
             !has_n_node_of_degree_at_least(t, 2 * q.m);
  }
  return false;
}

inline TreeSet tree_class(const TreeClassQuery& q, const EnumerationOptions& opts = {}) {
  q.validate();
  TreeSet out{q, {}};
  const int max_deg = q.max_degree();
  if (max_deg < 2) return out;
  for (auto& t : enumerate_valid(max_deg, opts)) {
    if (in_class(t, q)) out.trees.push_back(std::move(t));
  }
  return out;
}

/// Left comb: base and tail[0] meet at the innermost node, each further tail
/// element hangs on the right of the next node up. Inner nodes are o-nodes
/// (they are left children), the outermost carries `root`.
inline DecoratedTree graft_comb(const DecoratedTree& base, std::span<const DecoratedTree> tail, Decoration root) {
  if (tail.empty()) throw InvalidTreeError("graft_comb needs a non-empty tail");
  if (root == Decoration::k) throw InvalidTreeError("comb nodes cannot be decorated k");
  if (base.decoration() == Decoration::n) throw InvalidTreeError("comb base must be rooted r, o or k (rule b)");
  for (const auto& t : tail) {
    if (t.decoration() != Decoration::n) throw InvalidTreeError("comb tail trees must be rooted n (rule a)");
  }
  DecoratedTree acc = base;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    const Decoration dec = i + 1 == tail.size() ? root : Decoration::circ;
    acc = DecoratedTree::node(dec, acc, tail[i]);
  }
  return acc;
}

}  // namespace bnf
