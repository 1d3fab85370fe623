#pragma once

// The shift semidirect product H x| Z, with H the finitely supported maps
// Z -> Z/q and the shift alpha(h)(i) = h(i + 1).  V is the subgroup of maps
// supported on the nonnegative integers, so alpha(V) > V.

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "treescale/scale.hpp"

namespace treescale {

struct HnnElement {
  std::map<long, int> coeffs;  // nonzero residues mod q
  long n = 0;
  int q = 2;

  friend bool operator==(const HnnElement&, const HnnElement&) = default;
};

enum class HnnMembership { SPlus, SMinus, Both };

inline std::string to_string(HnnMembership m) {
  switch (m) {
    case HnnMembership::SPlus: return "SPlus";
    case HnnMembership::SMinus: return "SMinus";
    case HnnMembership::Both: return "Both";
  }
  return "";
}

inline HnnElement hnn_normalize(HnnElement x) {
  if (x.q < 2) throw representation_error("HNN coefficient modulus must be >= 2");
  std::map<long, int> clean;
  for (auto [i, c] : x.coeffs) {
    int r = ((c % x.q) + x.q) % x.q;
    if (r) clean[i] = r;
  }
  x.coeffs = std::move(clean);
  return x;
}

inline HnnElement hnn_identity(int q) { return hnn_normalize({{}, 0, q}); }

/// alpha^m(h)(i) = h(i + m)
inline std::map<long, int> hnn_shift(const std::map<long, int>& h, long m) {
  std::map<long, int> out;
  for (auto [i, c] : h) out[i - m] = c;
  return out;
}

/// (g, m)(h, n) = (g + alpha^m(h), m + n)
inline HnnElement hnn_multiply(const HnnElement& a, const HnnElement& b) {
  if (a.q != b.q) throw representation_error("HNN elements over different moduli");
  HnnElement out{a.coeffs, a.n + b.n, a.q};
  for (auto [i, c] : hnn_shift(b.coeffs, a.n)) out.coeffs[i] += c;
  return hnn_normalize(std::move(out));
}

inline HnnElement hnn_inverse(const HnnElement& a) {
  HnnElement out{{}, -a.n, a.q};
  for (auto [i, c] : hnn_shift(a.coeffs, -a.n)) out.coeffs[i] = -c;
  return hnn_normalize(std::move(out));
}

inline BigInt hnn_scale(const HnnElement& x) {
  if (x.n < 0) return 1;
  BigInt s = 1;
  for (long i = 0; i < x.n; ++i) s *= x.q;
  return s;
}

inline HnnMembership hnn_maximal_membership(const HnnElement& x) {
  if (x.n == 0) return HnnMembership::Both;
  return x.n > 0 ? HnnMembership::SPlus : HnnMembership::SMinus;
}

/// [alpha^n(V) : alpha^n(V) n V] by enumeration: elements of alpha^n(V) are
/// listed on the window [-w, w) and counted modulo V.
inline BigInt hnn_index_by_cosets(long n, int q, long window) {
  if (q < 2) throw representation_error("HNN coefficient modulus must be >= 2");
  if (window < 1 || std::abs(n) > window) throw oracle_budget_error("HNN window must cover the shift");
  const long lo = -window, hi = window, len = hi - lo;
  double states = std::pow(static_cast<double>(q), static_cast<double>(len));
  if (states > 4e6) throw oracle_budget_error("HNN enumeration window too large");
  std::set<std::vector<int>> cosets;
  std::vector<int> digits(static_cast<std::size_t>(len), 0);
  for (;;) {
    // alpha^n(V) = maps supported on [-n, inf)
    bool member = true;
    for (long i = lo; i < hi && member; ++i)
      if (digits[static_cast<std::size_t>(i - lo)] && i < -n) member = false;
    if (member) cosets.insert(std::vector<int>(digits.begin(), digits.begin() + (0 - lo)));  // mod V
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == q) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return cosets.size();
}

inline Automorphism hnn_to_tree(const HnnElement& x) {
  HnnElement y = hnn_normalize(x);
  return Automorphism::primitive(TreeParams{y.q, y.q, 1}, HorocyclicRep{y.coeffs, y.n});
}

/// Horocyclic coordinates of a vertex (for the CLI).
inline detail::HoroPoint horocyclic_coords(const Tree& t, const Vertex& v) {
  return detail::HorocyclicKernel::coords(t, v);
}

}  // namespace treescale
