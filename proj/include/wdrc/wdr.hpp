#pragma once

// Weakly distance-regular verification and the derived structures: the
// arc-type set T, the closed subsets F_q generated by the (1,q-1) class,
// and the subdigraphs Delta_q they span.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wdrc/canonical.hpp"
#include "wdrc/circulant.hpp"
#include "wdrc/constructions.hpp"
#include "wdrc/residues.hpp"
#include "wdrc/scheme.hpp"
#include "wdrc/sring.hpp"

namespace wdrc {

/// A circulant verified weakly distance-regular: its two-way distance
/// partition is an association scheme. one_type means every arc has the
/// same type (1,q-1), necessarily with q >= 3 for a digraph that is not
/// undirected.
struct WdrCertificate {
  Circulant circulant;
  TranslationPartition partition;
  SchemeData scheme;
  std::vector<int> types;  // T, sorted
  bool one_type = false;
};

struct WdrOutcome {
  std::optional<WdrCertificate> certificate;
  std::optional<SchemeFailure> failure;
  bool ok() const { return certificate.has_value(); }
};

inline WdrOutcome is_wdr(const Circulant& c) {
  WdrOutcome out;
  TranslationPartition p = two_way_partition(c);  // throws if disconnected
  SchemeOutcome scheme = verify_scheme(p);
  if (!scheme.ok()) {
    out.failure = scheme.failure;
    return out;
  }
  WdrCertificate cert;
  cert.circulant = c;
  cert.partition = std::move(p);
  cert.scheme = std::move(*scheme.scheme);
  cert.types = arc_type_set(c);
  cert.one_type = cert.types.size() == 1 && cert.types[0] != 2;
  out.certificate = std::move(cert);
  return out;
}

/// The smallest closed subset F_q containing the (1,q-1) class, and the
/// subgroup F_q(0) its classes cover.
struct ClosedFq {
  ClassSet classes;
  Subgroup fixed;  // F_q(0) as a subgroup of Z_n
};

inline int arc_class_index(const WdrCertificate& cert, int q) {
  auto idx = cert.scheme.class_with_label({1, q - 1});
  if (!idx)
    throw std::invalid_argument("q = " + std::to_string(q) +
                                " is not an arc type of this digraph");
  return *idx;
}

inline ClosedFq closed_Fq(const WdrCertificate& cert, int q) {
  ClosedFq out;
  out.classes = closed_subset_generated(cert.scheme, {arc_class_index(cert, q)});
  ResidueSet vertices(cert.circulant.n);
  for (int cls : out.classes)
    for (int m : cert.scheme.classes[cls].members()) vertices.insert(m);
  Subgroup span = generated_subgroup(vertices);
  // closed subsets of a translation scheme correspond to subgroups
  if (vertices.size() != span.order())
    throw std::logic_error("closed_Fq: class union is not a subgroup");
  out.fixed = span;
  return out;
}

/// Delta_q: the digraph on F_q(0) with the (1,q-1) arcs, returned as a
/// circulant on Z_{n/d} (F_q(0) = dZ_n is itself cyclic).
inline Circulant delta_q(const WdrCertificate& cert, int q) {
  ClosedFq f = closed_Fq(cert, q);
  const int d = f.fixed.generator;
  const ResidueSet& arcs = cert.scheme.classes[arc_class_index(cert, q)];
  ResidueSet conn(f.fixed.order());
  for (int m : arcs.members()) {
    if (m % d != 0)
      throw std::logic_error("delta_q: arc class leaves F_q(0)");
    conn.insert(m / d);
  }
  return Circulant(f.fixed.order(), conn);
}

/// Shortest circuit length of a circulant (its girth, all arcs one class).
inline int shortest_circuit(const Circulant& c) {
  TwoWayTable t = distances_from_zero(c);
  int best = -1;
  for (int s : c.connection.members()) {
    int len = 1 + t.d_in[s];
    if (best < 0 || len < best) best = len;
  }
  return best;
}

/// When p_{(1,q-1),(1,q-1)}^{(2,q-2)} equals the valency k_{1,q-1}, the
/// powers of the arc class stay single classes and Delta_q is a cycle
/// blowup C_q[K|_m] with m = k_{1,q-1}.
struct PureReport {
  bool applicable = false;
  int p_value = 0;       // p_{(1,q-1),(1,q-1)}^{(2,q-2)}
  int valency = 0;       // k_{1,q-1}
  int fiber = 0;         // m in C_q[K|_m]
  bool powers_single_class = false;
  bool isomorphism_confirmed = false;
  bool delta_is_wdr = false;  // recorded, not asserted
  bool passed() const {
    return !applicable || (powers_single_class && isomorphism_confirmed);
  }
};

inline PureReport check_pure(const WdrCertificate& cert, int q) {
  PureReport rep;
  const int r1 = arc_class_index(cert, q);
  rep.valency = cert.scheme.valency[r1];
  auto mid = cert.scheme.class_with_label({2, q - 2});
  rep.p_value = mid ? cert.scheme.p(r1, r1, *mid) : 0;
  rep.applicable = (rep.p_value == rep.valency);
  if (!rep.applicable) return rep;

  rep.powers_single_class = true;
  ClassSet power = {r1};
  for (int l = 2; l <= q - 1; ++l) {
    power = complex_product(cert.scheme, power, {r1});
    auto want = cert.scheme.class_with_label({l, q - l});
    if (!want || power != ClassSet{*want}) rep.powers_single_class = false;
  }

  rep.fiber = rep.valency;
  Circulant delta = delta_q(cert, q);
  rep.isomorphism_confirmed =
      is_isomorphic(delta, lex_product(cycle(q), empty_graph(rep.fiber)));
  rep.delta_is_wdr = is_wdr(delta).ok();
  return rep;
}

/// For q > 3 with p_{(1,q-1),(1,q-1)}^{(2,q-2)} > 0 or a single-class
/// square, Delta_q is a cycle blowup C_m[K|_l] with m the shortest circuit
/// length and l = k_{1,q-1}; a positive p forces p = k and single-class
/// powers.
struct PropQgt3Report {
  bool applicable = false;
  int circuit_length = 0;  // m
  int fiber = 0;           // l
  bool isomorphism_confirmed = false;
  bool p_equals_valency = true;   // only checked when p > 0
  bool powers_single_class = true;  // only checked when p > 0
  bool passed() const {
    return !applicable ||
           (isomorphism_confirmed && p_equals_valency && powers_single_class);
  }
};

inline PropQgt3Report check_prop_q_gt_3(const WdrCertificate& cert, int q) {
  PropQgt3Report rep;
  if (q <= 3) return rep;
  const int r1 = arc_class_index(cert, q);
  auto mid = cert.scheme.class_with_label({2, q - 2});
  const int p_val = mid ? cert.scheme.p(r1, r1, *mid) : 0;
  ClassSet square = complex_product(cert.scheme, {r1}, {r1});
  if (p_val <= 0 && square.size() != 1) return rep;
  rep.applicable = true;

  Circulant delta = delta_q(cert, q);
  rep.circuit_length = shortest_circuit(delta);
  rep.fiber = cert.scheme.valency[r1];
  rep.isomorphism_confirmed = is_isomorphic(
      delta, lex_product(cycle(rep.circuit_length), empty_graph(rep.fiber)));

  if (p_val > 0) {
    rep.p_equals_valency = (p_val == cert.scheme.valency[r1]);
    ClassSet power = {r1};
    for (int h = 2; h <= q - 1; ++h) {
      power = complex_product(cert.scheme, power, {r1});
      auto want = cert.scheme.class_with_label({h, q - h});
      if (!want || power != ClassSet{*want}) rep.powers_single_class = false;
    }
  }
  return rep;
}

/// With min T = 3, Delta_3 must land in the classified list: P(p)[K|_l],
/// (C_3 x K_h)[K|_l], Cay(Z_13,{1,3,9})[K|_l] or C_3[K|_l]. C3xKh tags
/// with l > 1 are reported through the lex wrapper flag.
struct PropQ3Report {
  bool applicable = false;
  std::optional<FamilyTag> match;
  int lex_fiber = 1;  // l when the match is (C_3 x K_h)[K|_l]
  bool matched() const { return match.has_value(); }
};

inline PropQ3Report check_prop_q3(const WdrCertificate& cert) {
  PropQ3Report rep;
  if (cert.types.empty() || cert.types.front() != 3) return rep;
  rep.applicable = true;
  Circulant delta = delta_q(cert, 3);
  const int n = delta.n;

  // C_3[K|_l]
  if (n % 3 == 0) {
    Circulant cand = lex_product(cycle(3), empty_graph(n / 3));
    if (is_isomorphic(delta, cand)) {
      rep.match = n == 3 ? FamilyTag::make_cycle(3)
                         : FamilyTag::make_cycle_lex(3, n / 3);
      return rep;
    }
  }
  // P(p)[K|_l]
  for (int p = 7; p <= n; ++p) {
    if (n % p != 0 || !is_prime(p) || p % 4 != 3) continue;
    Circulant cand = lex_product(paley(p), empty_graph(n / p));
    if (is_isomorphic(delta, cand)) {
      rep.match = FamilyTag::make_paley_lex(p, n / p);
      return rep;
    }
  }
  // Cay(Z_13,{1,3,9})[K|_l]
  if (n % 13 == 0) {
    Circulant cand = lex_product(z13_139(), empty_graph(n / 13));
    if (is_isomorphic(delta, cand)) {
      rep.match = FamilyTag::make_z13_lex(n / 13);
      return rep;
    }
  }
  // (C_3 x K_h)[K|_l]
  for (int h = 4; 3 * h <= n; ++h) {
    if (h % 3 == 0 || n % (3 * h) != 0) continue;
    Circulant base = direct_product(cycle(3), complete(h));
    Circulant cand = lex_product(base, empty_graph(n / (3 * h)));
    if (is_isomorphic(delta, cand)) {
      rep.match = FamilyTag::make_c3xkh(h);
      rep.lex_fiber = n / (3 * h);
      return rep;
    }
  }
  return rep;
}

/// Certificate text: circulant literal, partition, T, flags, family tag.
inline std::string format_certificate(const WdrCertificate& cert,
                                      const std::optional<FamilyTag>& family) {
  std::ostringstream os;
  os << "circulant " << format_circulant(cert.circulant) << "\n";
  os << "partition " << format_partition(cert.partition) << "\n";
  os << "T {";
  for (size_t i = 0; i < cert.types.size(); ++i)
    os << (i ? "," : "") << cert.types[i];
  os << "}\n";
  os << "one_type " << (cert.one_type ? 1 : 0) << "\n";
  os << "commutative " << (cert.scheme.commutative ? 1 : 0) << "\n";
  os << "primitive " << (is_primitive(cert.scheme) ? 1 : 0) << "\n";
  os << "family " << (family ? family->to_string() : std::string("-")) << "\n";
  return os.str();
}

}  // namespace wdrc
