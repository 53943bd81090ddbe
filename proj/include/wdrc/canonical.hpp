#pragma once

// Canonical certificates for circulant digraphs and isomorphism testing.
//
// Multiplier maps x -> m*x (m a unit) are isomorphisms, but multiplier
// equivalence of connection sets is not a complete invariant, so equality
// of certificates is decided by canonical labeling: iterative in/out color
// refinement followed by backtracking over discrete refinements, taking the
// minimum row-major adjacency bit string.
//
// Lexicographic blowups make naive backtracking explode: every K|_l fiber
// is a class of mutually interchangeable twin vertices. Twin classes of a
// circulant are exactly the cosets of rad(S) (open twins, edgeless fibers)
// or of rad(S u {0}) (closed twins, complete fibers), and collapsing them
// is an isomorphism-invariant reduction, so the certificate is the twin
// tower plus the minimized bit string of the twin-free core.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wdrc/circulant.hpp"
#include "wdrc/residues.hpp"

namespace wdrc {

namespace canonical_detail {

struct Dense {
  int n = 0;
  std::vector<std::bitset<kMaxModulus>> out;
  std::vector<std::bitset<kMaxModulus>> in;

  bool arc(int u, int v) const { return out[u].test(v); }
};

inline Dense densify(const Circulant& c) {
  Dense g;
  g.n = c.n;
  g.out.assign(c.n, {});
  g.in.assign(c.n, {});
  for (int u = 0; u < c.n; ++u)
    for (int s : c.connection.members()) {
      int v = (u + s) % c.n;
      g.out[u].set(v);
      g.in[v].set(u);
    }
  return g;
}

// Refine colors to the coarsest stable partition: a vertex signature is
// its color plus the sorted color multisets of its out- and in-neighbors.
inline void refine(const Dense& g, std::vector<int>& col) {
  const int n = g.n;
  std::vector<std::vector<int>> sig(n);
  for (int round = 0; round < n; ++round) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(col[v]);
      size_t out_begin = s.size();
      for (int u = 0; u < n; ++u)
        if (g.out[v].test(u)) s.push_back(col[u]);
      std::sort(s.begin() + out_begin, s.end());
      s.push_back(-1);
      size_t in_begin = s.size();
      for (int u = 0; u < n; ++u)
        if (g.in[v].test(u)) s.push_back(col[u]);
      std::sort(s.begin() + in_begin, s.end());
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(n);
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++c;
      next[order[i]] = c;
    }
    if (next == col) break;
    col.swap(next);
  }
}

// Row-major adjacency bits of g under the labeling "vertex v gets position
// col[v]", packed MSB-first into bytes.
inline std::vector<std::uint8_t> matrix_bytes(const Dense& g,
                                              const std::vector<int>& col) {
  const int n = g.n;
  std::vector<int> vertex_at(n);
  for (int v = 0; v < n; ++v) vertex_at[col[v]] = v;
  std::vector<std::uint8_t> bytes((n * n + 7) / 8, 0);
  int bit = 0;
  for (int i = 0; i < n; ++i) {
    const auto& row = g.out[vertex_at[i]];
    for (int j = 0; j < n; ++j, ++bit)
      if (row.test(vertex_at[j]))
        bytes[bit >> 3] |= static_cast<std::uint8_t>(0x80u >> (bit & 7));
  }
  return bytes;
}

struct CanonSearch {
  const Dense& g;
  std::vector<std::uint8_t> best;
  bool have_best = false;
  long long leaves = 0;

  explicit CanonSearch(const Dense& graph) : g(graph) {}

  void visit(std::vector<int> col) {
    refine(g, col);
    // cells are contiguous color ids; find the first non-singleton
    const int n = g.n;
    std::vector<int> cell_size(n, 0);
    for (int v = 0; v < n; ++v) ++cell_size[col[v]];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      auto bytes = matrix_bytes(g, col);
      ++leaves;
      if (!have_best || bytes < best) {
        best = std::move(bytes);
        have_best = true;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (col[v] != target) continue;
      std::vector<int> next(n);
      for (int u = 0; u < n; ++u)
        next[u] = 2 * col[u] + (col[u] == target && u != v ? 1 : 0);
      visit(std::move(next));
    }
  }
};

inline std::vector<std::uint8_t> core_certificate(const Circulant& c) {
  Dense g = densify(c);
  CanonSearch search(g);
  search.visit(std::vector<int>(g.n, 0));
  return search.best;
}

// One step of the twin tower. Open twins (edgeless fibers) are cosets of
// rad(S); closed twins (complete fibers) are cosets of rad(S u {0}).
struct TwinStep {
  bool closed = false;
  int fiber = 1;  // fiber size > 1
};

inline Circulant quotient_by(const Circulant& c, const Subgroup& l) {
  const int d = l.generator;  // subgroup = dZ_n, quotient = Z_d
  // Open fibers contribute no multiple of d; closed fibers contribute
  // exactly l \ {0}, the in-fiber arcs, which the quotient drops.
  ResidueSet s(d);
  for (int x : c.connection.members())
    if (x % d != 0) s.insert(x % d);
  return Circulant(d, s);
}

}  // namespace canonical_detail

/// Canonical certificate: equal strings iff the digraphs are isomorphic.
/// Layout: n, twin-tower length, (kind, fiber) pairs, core order, then the
/// minimized row-major adjacency bit string of the twin-free core.
inline std::vector<std::uint8_t> canonical_certificate(const Circulant& c) {
  using namespace canonical_detail;
  Circulant core = c;
  std::vector<TwinStep> tower;
  for (;;) {
    Subgroup open = set_radical(core.connection);
    if (!open.is_trivial()) {
      tower.push_back({false, open.order()});
      core = quotient_by(core, open);
      continue;
    }
    ResidueSet with_zero = core.connection;
    with_zero.insert(0);
    Subgroup closed = set_radical(with_zero);
    if (!closed.is_trivial()) {
      tower.push_back({true, closed.order()});
      core = quotient_by(core, closed);
      continue;
    }
    break;
  }
  std::vector<std::uint8_t> cert;
  cert.push_back(static_cast<std::uint8_t>(c.n));
  cert.push_back(static_cast<std::uint8_t>(tower.size()));
  for (const auto& step : tower) {
    cert.push_back(step.closed ? 1 : 0);
    cert.push_back(static_cast<std::uint8_t>(step.fiber));
  }
  cert.push_back(static_cast<std::uint8_t>(core.n));
  auto bits = core_certificate(core);
  cert.insert(cert.end(), bits.begin(), bits.end());
  return cert;
}

inline std::string canonical_form_hex(const Circulant& c) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : canonical_certificate(c)) {
    out += digits[b >> 4];
    out += digits[b & 15];
  }
  return out;
}

/// Unit m with m*S1 = S2, if one exists (sufficient for isomorphism).
inline std::optional<int> multiplier_equivalence(const Circulant& a,
                                                 const Circulant& b) {
  if (a.n != b.n || a.connection.size() != b.connection.size())
    return std::nullopt;
  for (int m : units_of(a.n))
    if (multiplier_image(a.connection, m) == b.connection) return m;
  return std::nullopt;
}

inline bool is_isomorphic(const Circulant& a, const Circulant& b) {
  if (a.n != b.n || a.connection.size() != b.connection.size()) return false;
  if (multiplier_equivalence(a, b)) return true;
  return canonical_certificate(a) == canonical_certificate(b);
}

}  // namespace wdrc
