#pragma once

// Sparse polynomial Hamiltonians in Fourier coordinates (u_k, ubar_k) on a
// truncated mode lattice, with exact Gaussian-rational coefficients.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bnf/coefficient.hpp"
#include "bnf/errors.hpp"

namespace bnf {

using Mode = std::vector<int>;

/// Integer modes k in [-radius, radius]^dim, addressed by a dense index.
class ModeLattice {
 public:
  ModeLattice(int dim, int radius) : dim_(dim), radius_(radius) {
    if (dim < 1) throw ConfigError("lattice dimension must be positive");
    if (radius < 0) throw ConfigError("lattice radius must be non-negative");
    size_ = 1;
    for (int i = 0; i < dim; ++i) size_ *= side();
  }

  int dim() const { return dim_; }
  int radius() const { return radius_; }
  int size() const { return size_; }

  Mode mode(int index) const {
    Mode k(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      k[static_cast<std::size_t>(i)] = index % side() - radius_;
      index /= side();
    }
    return k;
  }

  std::optional<int> index(const Mode& k) const {
    if (static_cast<int>(k.size()) != dim_) return std::nullopt;
    int index = 0;
    for (int i = dim_ - 1; i >= 0; --i) {
      const int c = k[static_cast<std::size_t>(i)];
      if (c < -radius_ || c > radius_) return std::nullopt;
      index = index * side() + (c + radius_);
    }
    return index;
  }

  /// Squared Euclidean norm |k|^2.
  long norm2(int index) const {
    long s = 0;
    for (int i = 0; i < dim_; ++i) {
      const long c = index % side() - radius_;
      s += c * c;
      index /= side();
    }
    return s;
  }

  friend bool operator==(const ModeLattice&, const ModeLattice&) = default;

 private:
  int side() const { return 2 * radius_ + 1; }

  int dim_;
  int radius_;
  int size_;
};

/// prod u_{k} over `u` times prod ubar_{k} over `ubar`; both are sorted
/// multisets of lattice indices of equal size.
struct Monomial {
  std::vector<int> u;
  std::vector<int> ubar;

  int degree() const { return static_cast<int>(u.size() + ubar.size()); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.u <=> b.u; c != 0) return c;
    return a.ubar <=> b.ubar;
  }
};

inline Monomial make_monomial(std::vector<int> u, std::vector<int> ubar) {
  std::sort(u.begin(), u.end());
  std::sort(ubar.begin(), ubar.end());
  return {std::move(u), std::move(ubar)};
}

/// Phi = sum over u-indices of |k|^2 minus sum over ubar-indices of |k|^2.
inline long phase(const ModeLattice& lat, const Monomial& m) {
  long p = 0;
  for (int k : m.u) p += lat.norm2(k);
  for (int k : m.ubar) p -= lat.norm2(k);
  return p;
}

/// sum u-indices - sum ubar-indices, as a mode vector.
inline Mode momentum(const ModeLattice& lat, const Monomial& m) {
  Mode total(static_cast<std::size_t>(lat.dim()), 0);
  for (int k : m.u) {
    const Mode v = lat.mode(k);
    for (std::size_t i = 0; i < v.size(); ++i) total[i] += v[i];
  }
  for (int k : m.ubar) {
    const Mode v = lat.mode(k);
    for (std::size_t i = 0; i < v.size(); ++i) total[i] -= v[i];
  }
  return total;
}

/// A polynomial Hamiltonian: exact coefficients keyed by monomial, truncated at
/// `max_degree`. Never stores zero coefficients or monomials above the cutoff.
class Kernel {
 public:
  using Terms = std::map<Monomial, Coefficient>;

  Kernel(ModeLattice lattice, int max_degree) : lattice_(lattice), max_degree_(max_degree) {
    if (max_degree < 0 || max_degree % 2 != 0) throw ConfigError("cutoff must be a non-negative even integer");
  }

  const ModeLattice& lattice() const { return lattice_; }
  int max_degree() const { return max_degree_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Terms::const_iterator begin() const { return terms_.begin(); }
  Terms::const_iterator end() const { return terms_.end(); }

  /// Largest monomial degree present (0 when empty).
  int degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.degree(); }

  Coefficient coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? Coefficient{} : it->second;
  }

  /// Adds c * m; merges with an existing term, drops zeros and anything above the cutoff.
  void add(const Monomial& m, const Coefficient& c) {
    if (m.degree() > max_degree_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add(Monomial&& m, const Coefficient& c) {
    if (m.degree() > max_degree_ || c.is_zero()) return;
    auto it = terms_.lower_bound(m);
    if (it != terms_.end() && it->first == m) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      terms_.emplace_hint(it, std::move(m), c);
    }
  }

  Kernel& operator+=(const Kernel& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Kernel& operator-=(const Kernel& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  Kernel& operator*=(const Coefficient& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Kernel operator+(Kernel a, const Kernel& b) { return a += b; }
  friend Kernel operator-(Kernel a, const Kernel& b) { return a -= b; }
  friend Kernel operator*(Kernel a, const Coefficient& s) { return a *= s; }
  friend Kernel operator*(const Coefficient& s, Kernel a) { return a *= s; }
  friend Kernel operator-(Kernel a) { return a *= Coefficient(Rational(-1)); }

  friend bool operator==(const Kernel& a, const Kernel& b) {
    return a.lattice_ == b.lattice_ && a.max_degree_ == b.max_degree_ && a.terms_ == b.terms_;
  }

  void require_compatible(const Kernel& o) const {
    if (!(lattice_ == o.lattice_) || max_degree_ != o.max_degree_) {
      throw ConfigError("kernels live on different lattices or cutoffs");
    }
  }

 private:
  ModeLattice lattice_;
  int max_degree_;
  Terms terms_;
};

/// An unmerged term list, e.g. straight from an ordered-tuple sum.
using RawTerm = std::pair<Monomial, Coefficient>;

/// Builds a kernel from raw terms: multisets are sorted, equal monomials merged,
/// zeros and above-cutoff terms dropped. Result is independent of input order.
inline Kernel canonicalize(const ModeLattice& lat, int cutoff, std::span<const RawTerm> raw) {
  Kernel out(lat, cutoff);
  for (const auto& [m, c] : raw) {
    if (m.u.size() != m.ubar.size() || m.u.empty()) throw ConfigError("monomial must have n u- and n ubar-factors, n >= 1");
    for (const auto* part : {&m.u, &m.ubar}) {
      for (int k : *part) {
        if (k < 0 || k >= lat.size()) throw ConfigError("mode index outside the lattice");
      }
    }
    out.add(make_monomial(m.u, m.ubar), c);
  }
  return out;
}

/// Kernels are stored canonically, so this is the identity.
inline Kernel canonicalize(const Kernel& a) { return a; }

/// Homogeneous part of degree exactly `deg`.
inline Kernel slice(const Kernel& a, int deg) {
  Kernel out(a.lattice(), a.max_degree());
  for (const auto& [m, c] : a) {
    if (m.degree() == deg) out.add(m, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The cubic NLS generators

/// H0 = (i/2) sum_k |k|^2 u_k ubar_k (the k = 0 term vanishes).
inline Kernel h0(const ModeLattice& lat, int cutoff) {
  Kernel out(lat, cutoff);
  for (int k = 0; k < lat.size(); ++k) {
    out.add(Monomial{{k}, {k}}, Coefficient(Rational(0), Rational(lat.norm2(k), 2)));
  }
  return out;
}

/// H1 = (i/4) sum over ordered (k1,k2,k3,k4) with k1 - k2 + k3 - k4 = 0 of
/// u_{k1} ubar_{k2} u_{k3} ubar_{k4}, folded into multiset monomials.
inline Kernel h1(const ModeLattice& lat, int cutoff) {
  Kernel out(lat, cutoff);
  if (cutoff < 4) return out;
  const int n = lat.size();
  std::vector<Mode> modes;
  modes.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) modes.push_back(lat.mode(k));
  const Coefficient quarter_i(Rational(0), Rational(1, 4));
  std::map<Monomial, long> counts;
  Mode k4(static_cast<std::size_t>(lat.dim()));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < k4.size(); ++i) k4[i] = modes[a][i] - modes[b][i] + modes[c][i];
        const auto d = lat.index(k4);
        if (!d) continue;
        ++counts[make_monomial({a, c}, {b, *d})];
      }
    }
  }
  for (const auto& [m, count] : counts) out.add(m, quarter_i * Rational(count));
  return out;
}

// ---------------------------------------------------------------------------
// Poisson bracket

namespace detail {

// Removes one occurrence of `k` from sorted `from` and merges the rest with sorted `other`.
inline std::vector<int> merge_without(const std::vector<int>& from, int k, const std::vector<int>& other) {
  std::vector<int> out;
  out.reserve(from.size() + other.size() - 1);
  bool removed = false;
  auto a = from.begin();
  auto b = other.begin();
  while (a != from.end() || b != other.end()) {
    if (a != from.end() && !removed && *a == k) {
      removed = true;
      ++a;
      continue;
    }
    if (b == other.end() || (a != from.end() && *a <= *b)) {
      out.push_back(*a++);
    } else {
      out.push_back(*b++);
    }
  }
  return out;
}

// Distinct values shared by two sorted multisets with their multiplicities.
template <class F>
void for_each_common(const std::vector<int>& x, const std::vector<int>& y, F&& f) {
  auto a = x.begin();
  auto b = y.begin();
  while (a != x.end() && b != y.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      const int k = *a;
      long ma = 0;
      long mb = 0;
      while (a != x.end() && *a == k) ++a, ++ma;
      while (b != y.end() && *b == k) ++b, ++mb;
      f(k, ma * mb);
    }
  }
}

}  // namespace detail

/// {A, B} = i sum_k (d_{u_k} A d_{ubar_k} B - d_{u_k} B d_{ubar_k} A), with
/// terms above the shared cutoff never formed.
inline Kernel poisson_bracket(const Kernel& a, const Kernel& b) {
  a.require_compatible(b);
  Kernel out(a.lattice(), a.max_degree());
  const Coefficient i = Coefficient::imaginary_unit();
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (ma.degree() + mb.degree() - 2 > out.max_degree()) continue;
      const Coefficient base = i * ca * cb;
      // d_{u_k} A * d_{ubar_k} B
      detail::for_each_common(ma.u, mb.ubar, [&](int k, long mult) {
        out.add(Monomial{detail::merge_without(ma.u, k, mb.u), detail::merge_without(mb.ubar, k, ma.ubar)},
                base * Rational(mult));
      });
      // - d_{u_k} B * d_{ubar_k} A
      detail::for_each_common(mb.u, ma.ubar, [&](int k, long mult) {
        out.add(Monomial{detail::merge_without(mb.u, k, ma.u), detail::merge_without(ma.ubar, k, mb.ubar)},
                base * Rational(-mult));
      });
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resonances

struct ResonanceConfig {
  long threshold = 0;  // N: |Phi| <= N is resonant

  friend bool operator==(const ResonanceConfig&, const ResonanceConfig&) = default;
};

inline bool is_resonant(const ModeLattice& lat, const Monomial& m, const ResonanceConfig& cfg) {
  return std::labs(phase(lat, m)) <= cfg.threshold;
}

struct ResonantSplit {
  Kernel res;
  Kernel nonres;
};

inline ResonantSplit split_resonant(const Kernel& a, const ResonanceConfig& cfg) {
  if (cfg.threshold < 0) throw ConfigError("resonance threshold must be non-negative");
  ResonantSplit out{Kernel(a.lattice(), a.max_degree()), Kernel(a.lattice(), a.max_degree())};
  for (const auto& [m, c] : a) {
    (is_resonant(a.lattice(), m, cfg) ? out.res : out.nonres).add(m, c);
  }
  return out;
}

/// Multiplies each non-resonant coefficient by 1/(2 Phi) and drops resonant monomials.
inline Kernel apply_phase_filter(const Kernel& a, const ResonanceConfig& cfg) {
  if (cfg.threshold < 0) throw ConfigError("resonance threshold must be non-negative");
  Kernel out(a.lattice(), a.max_degree());
  for (const auto& [m, c] : a) {
    const long p = phase(a.lattice(), m);
    if (std::labs(p) > cfg.threshold) out.add(m, c / Rational(2 * p));
  }
  return out;
}

/// {h0, apply_phase_filter(A)} = kFilterBracketFactor * A^nonres for any A:
/// {h0, c M} = (Phi/2) c M, against the filter's 1/(2 Phi).
inline const Rational kFilterBracketFactor{1, 4};

/// Generators are kGeneratorScale * apply_phase_filter(.), which makes
/// {h0, phase_generator(A)} = -A^nonres (the homological equation).
inline constexpr int kGeneratorScale = -4;

/// The "subscript Phi, non-resonant" operation: solves {h0, F} = -A^nonres.
inline Kernel phase_generator(const Kernel& a, const ResonanceConfig& cfg) {
  return apply_phase_filter(a, cfg) * Coefficient(Rational(kGeneratorScale));
}

}  // namespace bnf
