#pragma once

// Brute-force Birkhoff iteration: Taylor composition along generator flows,
// the truncation terms R_n^m, and coefficient-wise comparison. Nothing here
// touches decorated trees.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "bnf/hamiltonian.hpp"

namespace bnf {

struct Sequence {
  std::vector<int> z;     // non-decreasing, entries in [1, n], sum m
  std::uint64_t c = 1;    // product over distinct values of (multiplicity)!
  int q = 0;              // length of z
};

struct SequenceFamily {
  int n = 0;
  int m = 0;
  std::vector<Sequence> sequences;  // lexicographic order of z
};

namespace detail {

inline void extend_sequences(int n, int remaining, int min_value, std::vector<int>& prefix,
                             std::vector<Sequence>& out) {
  if (remaining == 0) {
    Sequence s{prefix, 1, static_cast<int>(prefix.size())};
    std::uint64_t run = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      run = (i > 0 && prefix[i] == prefix[i - 1]) ? run + 1 : 1;
      s.c *= run;
    }
    out.push_back(std::move(s));
    return;
  }
  for (int v = min_value; v <= std::min(n, remaining); ++v) {
    prefix.push_back(v);
    extend_sequences(n, remaining - v, v, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// s_n^m with c_z and q(z). m = 0 gives the single empty sequence.
inline SequenceFamily sequences(int n, int m) {
  if (n < 0 || m < 0) throw ConfigError("sequence parameters must be non-negative");
  SequenceFamily out{n, m, {}};
  std::vector<int> prefix;
  detail::extend_sequences(n, m, 1, prefix, out.sequences);
  return out;
}

/// R_n^m(g) = sum over z in s_n^m of {...{g, F_{z_1}}, ..., F_{z_q}} / c_z,
/// with generators[i - 1] = F_i.
inline Kernel truncation_term(const Kernel& g, int n, int m, std::span<const Kernel> generators) {
  if (static_cast<int>(generators.size()) < n) throw ConfigError("truncation term needs F_1..F_n");
  Kernel out(g.lattice(), g.max_degree());
  for (const auto& s : sequences(n, m).sequences) {
    Kernel term = g;
    for (int idx : s.z) term = poisson_bracket(term, generators[static_cast<std::size_t>(idx - 1)]);
    out += term * Coefficient(Rational(1, static_cast<long long>(s.c)));
  }
  return out;
}

/// g o F = g + sum_{n >= 1} {g, F}^n / n!, which terminates at the cutoff
/// because F has degree >= 4.
inline Kernel taylor_compose(const Kernel& g, const Kernel& f) {
  g.require_compatible(f);
  for (const auto& [m, c] : f) {
    if (m.degree() <= 2) throw ConfigError("taylor_compose needs a generator of degree >= 4");
  }
  Kernel out = g;
  Kernel term = g;
  for (long n = 1; !term.empty(); ++n) {
    term = poisson_bracket(term, f) * Coefficient(Rational(1, n));
    out += term;
  }
  return out;
}

struct BirkhoffResult {
  Kernel normal_form;               // (H o F_1 o ... o F_m) truncated at 2l
  std::vector<Kernel> generators;   // F_1..F_m
  bool recursion_consistent = true; // every block also matched R_{i-1}^i(H0) + R_{i-1}^{i-1}(H1)
};

/// Starting from H0 + H1, step i takes the degree-(2i+2) block of the current
/// Hamiltonian, sets F_i = phase_generator(block), and composes. The block is
/// cross-checked against the truncation-term formula at every step.
inline BirkhoffResult birkhoff_iterate(int m, int ell, const ModeLattice& lat, const ResonanceConfig& res) {
  if (m < 1 || !(m < ell)) throw ConfigError("Birkhoff iteration requires 1 <= m < ell");
  const int cutoff = 2 * ell;
  const Kernel kinetic = h0(lat, cutoff);
  const Kernel quartic = h1(lat, cutoff);
  BirkhoffResult out{kinetic + quartic, {}, true};
  for (int i = 1; i <= m; ++i) {
    const Kernel block = slice(out.normal_form, 2 * i + 2);
    const Kernel by_formula = truncation_term(kinetic, i - 1, i, out.generators) +
                              truncation_term(quartic, i - 1, i - 1, out.generators);
    if (!(block == by_formula)) out.recursion_consistent = false;
    out.generators.push_back(phase_generator(block, res));
    out.normal_form = taylor_compose(out.normal_form, out.generators.back());
  }
  return out;
}

struct MonomialDiff {
  Monomial monomial;
  Coefficient lhs;
  Coefficient rhs;
};

struct DiffReport {
  bool equal = true;
  Kernel residual;                  // lhs - rhs
  std::vector<MonomialDiff> worst;  // largest |re| + |im| of the difference first
};

inline DiffReport compare(const Kernel& lhs, const Kernel& rhs, std::size_t worst_limit = 10) {
  lhs.require_compatible(rhs);
  DiffReport out{true, lhs - rhs, {}};
  out.equal = out.residual.empty();
  std::vector<std::pair<Rational, const Monomial*>> ranked;
  ranked.reserve(out.residual.size());
  for (const auto& [mono, c] : out.residual) {
    ranked.emplace_back(boost::multiprecision::abs(c.re()) + boost::multiprecision::abs(c.im()), &mono);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < ranked.size() && i < worst_limit; ++i) {
    const Monomial& mono = *ranked[i].second;
    out.worst.push_back({mono, lhs.coefficient(mono), rhs.coefficient(mono)});
  }
  return out;
}

}  // namespace bnf
