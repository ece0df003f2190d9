#pragma once

// Decorated planar binary trees: structure, constraint checking, degree,
// symmetry factors and the textual formats (canonical, LaTeX, DOT).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bnf/errors.hpp"

namespace bnf {

/// Node decorations. Enumerator order is the fixed total order circ < k < n < r.
enum class Decoration : std::uint8_t { circ, k, n, r };

inline char letter(Decoration d) {
  switch (d) {
    case Decoration::circ: return 'o';
    case Decoration::k: return 'k';
    case Decoration::n: return 'n';
    case Decoration::r: return 'r';
  }
  return '?';
}

inline std::optional<Decoration> decoration_from_letter(char c) {
  switch (c) {
    case 'o': return Decoration::circ;
    case 'k': return Decoration::k;
    case 'n': return Decoration::n;
    case 'r': return Decoration::r;
    default: return std::nullopt;
  }
}

/// Immutable planar binary tree with a decoration on every node. Copies share
/// structure; left and right children are distinguished.
class DecoratedTree {
 public:
  static DecoratedTree leaf(Decoration d) {
    auto node = std::make_shared<Node>();
    node->decoration = d;
    (d == Decoration::k ? node->k_leaves : node->other_leaves) = 1;
    return DecoratedTree(std::move(node));
  }

  static DecoratedTree node(Decoration d, DecoratedTree left, DecoratedTree right) {
    auto node = std::make_shared<Node>();
    node->decoration = d;
    node->k_leaves = left.root_->k_leaves + right.root_->k_leaves;
    node->other_leaves = left.root_->other_leaves + right.root_->other_leaves;
    node->edges = left.root_->edges + right.root_->edges + 2;
    node->left = std::move(left.root_);
    node->right = std::move(right.root_);
    return DecoratedTree(std::move(node));
  }

  Decoration decoration() const { return root_->decoration; }
  bool is_leaf() const { return root_->left == nullptr; }

  /// Children; only meaningful for internal nodes.
  DecoratedTree left() const { return DecoratedTree(root_->left); }
  DecoratedTree right() const { return DecoratedTree(root_->right); }

  int k_leaves() const { return root_->k_leaves; }
  int other_leaves() const { return root_->other_leaves; }
  int edges() const { return root_->edges; }

  /// Same shape with the root decoration replaced.
  DecoratedTree with_root(Decoration d) const {
    if (is_leaf()) return leaf(d);
    return node(d, left(), right());
  }

  friend bool operator==(const DecoratedTree& a, const DecoratedTree& b) {
    return equal_nodes(a.root_.get(), b.root_.get());
  }

 private:
  struct Node {
    Decoration decoration = Decoration::circ;
    int k_leaves = 0;
    int other_leaves = 0;
    int edges = 0;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit DecoratedTree(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  static bool equal_nodes(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->decoration != b->decoration || (a->left == nullptr) != (b->left == nullptr)) return false;
    if (a->left == nullptr) return true;
    return equal_nodes(a->left.get(), b->left.get()) && equal_nodes(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> root_;
};

/// |T| = 2 (#k-leaves) + 4 (#other leaves) - #edges: the polynomial degree of
/// the bracket the tree encodes.
inline int degree(const DecoratedTree& t) {
  return 2 * t.k_leaves() + 4 * t.other_leaves() - t.edges();
}

// ---------------------------------------------------------------------------
// Validation

enum class Rule { a, b, c, i, ii, binary };

inline std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::a: return "a";
    case Rule::b: return "b";
    case Rule::c: return "c";
    case Rule::i: return "i";
    case Rule::ii: return "ii";
    case Rule::binary: return "binary";
  }
  return "?";
}

/// Reading of the nested clause of size rule (i): for a node (v; T1, T2) whose
/// left child T1 = (o; T4, T3) is an internal o-node, `at_most` requires
/// |T3| <= |T2| and `at_least` requires |T3| >= |T2|. `at_most` is the reading
/// under which the tree expansion matches the direct Birkhoff iteration.
enum class AssumptionMode { at_most, at_least };

inline std::string_view mode_name(AssumptionMode m) {
  return m == AssumptionMode::at_most ? "le" : "ge";
}

inline std::optional<AssumptionMode> mode_from_name(std::string_view s) {
  if (s == "le") return AssumptionMode::at_most;
  if (s == "ge") return AssumptionMode::at_least;
  return std::nullopt;
}

struct Violation {
  std::string path;  // "" is the root, then 'L'/'R' steps
  Rule rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Rules that involve only the node and its two children (everything except
/// the "k-leaf parent is not the root" part of rule (c)).
inline std::vector<Rule> local_violations(Decoration d, const DecoratedTree& left,
                                          const DecoratedTree& right, AssumptionMode mode) {
  std::vector<Rule> out;
  if (d == Decoration::k) out.push_back(Rule::c);
  if (right.decoration() != Decoration::n) out.push_back(Rule::a);
  if (left.decoration() == Decoration::n) out.push_back(Rule::b);
  // a k-leaf anywhere must hang off an o-node
  if (d != Decoration::circ &&
      ((left.is_leaf() && left.decoration() == Decoration::k) ||
       (right.is_leaf() && right.decoration() == Decoration::k))) {
    out.push_back(Rule::c);
  }
  const int d1 = degree(left);
  const int d2 = degree(right);
  if (left.decoration() == Decoration::circ) {
    bool ok = d1 >= d2;
    if (!left.is_leaf()) {
      const int d3 = degree(left.right());
      ok = ok && (mode == AssumptionMode::at_most ? d3 <= d2 : d3 >= d2);
    }
    if (!ok) out.push_back(Rule::i);
  } else if (left.decoration() == Decoration::r) {
    if (!(d1 < d2)) out.push_back(Rule::ii);
  }
  return out;
}

namespace detail {

inline void collect_violations(const DecoratedTree& t, std::string& path, AssumptionMode mode,
                               std::vector<Violation>& out) {
  if (t.is_leaf()) return;
  const DecoratedTree left = t.left();
  const DecoratedTree right = t.right();
  for (Rule r : local_violations(t.decoration(), left, right, mode)) out.push_back({path, r});
  path.push_back('L');
  collect_violations(left, path, mode, out);
  path.back() = 'R';
  collect_violations(right, path, mode, out);
  path.pop_back();
}

}  // namespace detail

/// Checks constraints (a), (b), (c) and the size rules (i), (ii) at every node.
inline ValidationReport validate_tree(const DecoratedTree& t,
                                      AssumptionMode mode = AssumptionMode::at_most) {
  ValidationReport report;
  std::string path;
  detail::collect_violations(t, path, mode, report.violations);
  // a k-leaf may not hang directly off the root
  if (!t.is_leaf()) {
    const Violation at_root{"", Rule::c};
    const bool k_child = (t.left().is_leaf() && t.left().decoration() == Decoration::k) ||
                         (t.right().is_leaf() && t.right().decoration() == Decoration::k);
    if (k_child && std::find(report.violations.begin(), report.violations.end(), at_root) ==
                       report.violations.end()) {
      report.violations.push_back(at_root);
    }
  }
  report.valid = report.violations.empty();
  return report;
}

inline bool is_valid(const DecoratedTree& t, AssumptionMode mode = AssumptionMode::at_most) {
  return validate_tree(t, mode).valid;
}

// ---------------------------------------------------------------------------
// Symmetry factors

namespace detail {

inline std::uint64_t symmetry_recursion(const DecoratedTree& t, std::uint64_t j) {
  if (t.is_leaf()) return j + 1;
  const DecoratedTree left = t.left();
  const DecoratedTree right = t.right();
  // A left o-node whose right subtree matches ours in degree continues the
  // same left comb of repeated generators: the counter j is carried along it.
  if (!left.is_leaf() && left.decoration() == Decoration::circ &&
      degree(left.right()) == degree(right)) {
    return (j + 1) * symmetry_recursion(left, j + 1) * symmetry_recursion(right, 0);
  }
  return (j + 1) * symmetry_recursion(left, 0) * symmetry_recursion(right, 0);
}

}  // namespace detail

/// S^j(T). The comb rule applies at o-, n- and r-nodes alike. Rejects trees
/// that fail validation under `mode`.
inline std::uint64_t symmetry_factor(const DecoratedTree& t, std::uint64_t j = 0,
                                     AssumptionMode mode = AssumptionMode::at_most) {
  if (!is_valid(t, mode)) throw InvalidTreeError("symmetry factor is only defined on valid trees");
  return detail::symmetry_recursion(t, j);
}

// ---------------------------------------------------------------------------
// Text formats

enum class TreeFormat { canonical, latex, dot };

namespace detail {

inline void write_canonical(const DecoratedTree& t, std::string& out) {
  out.push_back('(');
  out.push_back(letter(t.decoration()));
  if (!t.is_leaf()) {
    out.push_back(' ');
    write_canonical(t.left(), out);
    out.push_back(' ');
    write_canonical(t.right(), out);
  }
  out.push_back(')');
}

inline std::string_view latex_symbol(Decoration d) {
  switch (d) {
    case Decoration::circ: return "\\circ";
    case Decoration::k: return "k";
    case Decoration::n: return "n";
    case Decoration::r: return "r";
  }
  return "?";
}

inline void write_forest(const DecoratedTree& t, std::string& out) {
  out += "[$";
  out += latex_symbol(t.decoration());
  out += "$";
  if (!t.is_leaf()) {
    out += " ";
    write_forest(t.left(), out);
    out += " ";
    write_forest(t.right(), out);
  }
  out += "]";
}

inline std::string_view dot_label(Decoration d) {
  switch (d) {
    case Decoration::circ: return "\xe2\x88\x98";  // U+2218 RING OPERATOR
    case Decoration::k: return "k";
    case Decoration::n: return "n";
    case Decoration::r: return "r";
  }
  return "?";
}

inline int write_dot(const DecoratedTree& t, int& next_id, std::string& out) {
  const int id = next_id++;
  out += "  v" + std::to_string(id) + " [label=\"" + std::string(dot_label(t.decoration())) + "\"];\n";
  if (!t.is_leaf()) {
    const int l = write_dot(t.left(), next_id, out);
    const int r = write_dot(t.right(), next_id, out);
    out += "  v" + std::to_string(id) + " -> v" + std::to_string(l) + " [taillabel=\"L\"];\n";
    out += "  v" + std::to_string(id) + " -> v" + std::to_string(r) + " [taillabel=\"R\"];\n";
  }
  return id;
}

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  DecoratedTree parse_all() {
    DecoratedTree t = parse_tree();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  DecoratedTree parse_tree() {
    expect('(');
    if (pos_ >= text_.size()) fail("expected decoration");
    const auto dec = decoration_from_letter(text_[pos_]);
    if (!dec) fail("unknown decoration");
    ++pos_;
    if (pos_ < text_.size() && text_[pos_] == ')') {
      ++pos_;
      return DecoratedTree::leaf(*dec);
    }
    expect(' ');
    DecoratedTree left = parse_tree();
    if (pos_ < text_.size() && text_[pos_] == ')') fail("internal node needs two children");
    expect(' ');
    DecoratedTree right = parse_tree();
    if (pos_ < text_.size() && text_[pos_] == ' ') fail("internal node needs exactly two children");
    expect(')');
    return DecoratedTree::node(*dec, std::move(left), std::move(right));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string canonical(const DecoratedTree& t) {
  std::string out;
  detail::write_canonical(t, out);
  return out;
}

/// canonical: "(o (o) (n))"; latex: a forest picture growing upwards with the
/// left child on the left; dot: a Graphviz digraph with ordered children.
inline std::string render(const DecoratedTree& t, TreeFormat format) {
  switch (format) {
    case TreeFormat::canonical: return canonical(t);
    case TreeFormat::latex: {
      std::string out =
          "\\begin{forest}\n"
          "  for tree={circle, draw, inner sep=1pt, minimum size=14pt, grow'=north, "
          "edge={brown!70!black, thick}}\n  ";
      detail::write_forest(t, out);
      out += "\n\\end{forest}\n";
      return out;
    }
    case TreeFormat::dot: {
      std::string out = "digraph tree {\n  ordering=out;\n  node [shape=circle];\n";
      int next_id = 0;
      detail::write_dot(t, next_id, out);
      out += "}\n";
      return out;
    }
  }
  return {};
}

inline DecoratedTree parse_tree(std::string_view text) {
  return detail::TreeParser(text).parse_all();
}

}  // namespace bnf
