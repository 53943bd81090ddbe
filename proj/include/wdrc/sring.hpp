#pragma once

// Schur rings over Z_n, identified with their Schur partitions: validity,
// A-subgroups, radicals, quotients, orbit S-rings, multiplier closure and
// tensor decomposition of free S-rings.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wdrc/circulant.hpp"
#include "wdrc/residues.hpp"
#include "wdrc/scheme.hpp"

namespace wdrc {

class NotApplicableError : public std::runtime_error {
 public:
  explicit NotApplicableError(const std::string& what)
      : std::runtime_error(what) {}
};

/// A partition of Z_n validated as a Schur partition, together with the
/// scheme of its translation relations. Classes of the partition are the
/// basic sets of the S-ring.
struct SchurPartition {
  TranslationPartition partition;
  SchemeData scheme;

  int modulus() const { return partition.modulus; }
  int rank() const { return static_cast<int>(partition.classes.size()); }
  const std::vector<ResidueSet>& basic_sets() const {
    return partition.classes;
  }
};

struct SchurOutcome {
  std::optional<SchurPartition> sring;
  std::optional<SchemeFailure> failure;
  bool ok() const { return sring.has_value(); }
};

/// A partition is a Schur partition iff {0} is a class, the class system
/// is closed under negation, and all group-ring products of class sums
/// have constant coefficients on classes -- which is exactly the scheme
/// verification of the translation relations.
inline SchurOutcome is_schur_partition(const TranslationPartition& p) {
  SchurOutcome out;
  SchemeOutcome scheme = verify_scheme(p);
  if (!scheme.ok()) {
    out.failure = scheme.failure;
    return out;
  }
  out.sring = SchurPartition{p, std::move(*scheme.scheme)};
  return out;
}

/// All subgroups of Z_n that are unions of basic sets. Subgroups of Z_n
/// are exactly the dZ_n for divisors d, so the scan is over divisors.
inline std::vector<Subgroup> a_subgroups(const SchurPartition& s) {
  const int n = s.modulus();
  std::vector<Subgroup> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Subgroup h(n, d);
    bool union_of_classes = true;
    for (const auto& cls : s.basic_sets()) {
      bool any = false, all = true;
      for (int m : cls.members()) {
        if (h.contains(m))
          any = true;
        else
          all = false;
      }
      if (any && !all) {
        union_of_classes = false;
        break;
      }
    }
    if (union_of_classes) out.push_back(h);
  }
  return out;
}

inline bool is_a_subgroup(const SchurPartition& s, const Subgroup& l) {
  for (const auto& h : a_subgroups(s))
    if (h == l) return true;
  return false;
}

/// rad(A): the radical of any basic set that generates Z_n. Well defined
/// because such sets are multiplier images of each other.
inline Subgroup sring_radical(const SchurPartition& s) {
  std::optional<Subgroup> rad;
  for (const auto& cls : s.basic_sets()) {
    if (!generated_subgroup(cls).is_full()) continue;
    Subgroup r = set_radical(cls);
    if (rad && !(*rad == r))
      throw std::logic_error(
          "sring_radical: generating basic sets disagree; input is not a "
          "valid S-ring");
    rad = r;
  }
  if (!rad)
    throw NotApplicableError(
        "sring_radical: no basic set generates Z_n, rad(A) is undefined");
  return *rad;
}

inline bool is_free(const SchurPartition& s) {
  return sring_radical(s).is_trivial();
}

/// Quotient S-ring over Z_n/L for an A-subgroup L = dZ_n, realized on Z_d
/// via x -> x mod d. Duplicate class images merge.
inline SchurPartition quotient(const SchurPartition& s, const Subgroup& l) {
  if (l.modulus != s.modulus())
    throw std::invalid_argument("quotient: subgroup modulus mismatch");
  if (!is_a_subgroup(s, l))
    throw std::invalid_argument("quotient: L is not an A-subgroup");
  const int d = l.generator;
  std::vector<ResidueSet> images;
  for (const auto& cls : s.basic_sets()) {
    ResidueSet img(d);
    for (int m : cls.members()) img.insert(m % d);
    if (std::find(images.begin(), images.end(), img) == images.end())
      images.push_back(img);
  }
  std::sort(images.begin(), images.end(),
            [](const ResidueSet& a, const ResidueSet& b) {
              return a.min_member() < b.min_member();
            });
  TranslationPartition p;
  p.modulus = d;
  p.classes = std::move(images);
  SchurOutcome out = is_schur_partition(p);
  if (!out.ok())
    throw std::logic_error("quotient by an A-subgroup must be a Schur "
                           "partition; got: " +
                           out.failure->to_string());
  return std::move(*out.sring);
}

/// Orbit S-ring O(K, Z_n): basic sets are the orbits of the subgroup of
/// units generated by K acting by multiplication.
inline SchurPartition orbit_sring(int n, const std::vector<int>& k_gens) {
  std::vector<bool> in_group(n, false);
  std::vector<int> group;
  auto push = [&](int u) {
    int m = u % n;
    if (m < 0) m += n;
    if (std::gcd(m, n) != 1)
      throw std::invalid_argument("orbit_sring: " + std::to_string(u) +
                                  " is not a unit mod " + std::to_string(n));
    if (!in_group[m]) {
      in_group[m] = true;
      group.push_back(m);
    }
  };
  push(1);
  for (int g : k_gens) push(g);
  // close under multiplication
  for (size_t i = 0; i < group.size(); ++i)
    for (size_t j = 0; j <= i; ++j) {
      int prod = static_cast<int>(
          (static_cast<long long>(group[i]) * group[j]) % n);
      if (!in_group[prod]) {
        in_group[prod] = true;
        group.push_back(prod);
      }
    }

  TranslationPartition p;
  p.modulus = n;
  std::vector<bool> seen(n, false);
  for (int x = 0; x < n; ++x) {
    if (seen[x]) continue;
    ResidueSet orbit(n);
    for (int u : group) {
      int y = static_cast<int>((static_cast<long long>(u) * x) % n);
      orbit.insert(y);
      seen[y] = true;
    }
    p.classes.push_back(orbit);
  }
  SchurOutcome out = is_schur_partition(p);
  if (!out.ok())
    throw std::logic_error("orbit partition must be a Schur partition");
  return std::move(*out.sring);
}

/// K* = {units m : X^(m) = X for every basic set X}, and whether the
/// S-ring is the orbit S-ring of its own multiplier group.
struct MultiplierGroupInfo {
  std::vector<int> units;
  bool is_orbit = false;
};

inline MultiplierGroupInfo multiplier_group(const SchurPartition& s) {
  const int n = s.modulus();
  MultiplierGroupInfo info;
  for (int m : units_of(n)) {
    bool fixes_all = true;
    for (const auto& cls : s.basic_sets())
      if (!(multiplier_image(cls, m) == cls)) {
        fixes_all = false;
        break;
      }
    if (fixes_all) info.units.push_back(m);
  }
  SchurPartition orbit = orbit_sring(n, info.units);
  info.is_orbit = orbit.basic_sets() == s.basic_sets();
  return info;
}

/// Multiplier theorem audit: every unit must permute the basic sets.
struct MultiplierClosureReport {
  struct Violation {
    int unit;
    int class_index;
  };
  std::vector<Violation> violations;
  bool all_pass() const { return violations.empty(); }
};

inline MultiplierClosureReport multiplier_closure_check(
    const SchurPartition& s) {
  MultiplierClosureReport rep;
  const auto& classes = s.basic_sets();
  for (int m : units_of(s.modulus())) {
    for (size_t i = 0; i < classes.size(); ++i) {
      ResidueSet img = multiplier_image(classes[i], m);
      if (std::find(classes.begin(), classes.end(), img) == classes.end())
        rep.violations.push_back({m, static_cast<int>(i)});
    }
  }
  return rep;
}

/// Tensor decomposition of a free S-ring: Z_n = U_0 x ... x U_k with
/// pairwise coprime orders, every basic set the product of its
/// projections, rank-2 factors of order > 3 for i > 0.
struct TensorDecomposition {
  Subgroup radical;  // trivial for the free entry point
  struct Factor {
    Subgroup subgroup;       // U_i <= Z_n
    int order = 1;           // |U_i|
    SchurPartition sring;    // factor S-ring realized over Z_order
  };
  std::vector<Factor> factors;  // factor 0 first
  int k() const { return static_cast<int>(factors.size()) - 1; }
};

struct DecompositionResult {
  TensorDecomposition best;
  bool factor0_orbit = false;
  bool factor0_free = false;
  // every valid (factor-0-first) coprime factorization of n
  std::vector<std::vector<int>> valid_factorizations;
  std::vector<std::string> side_condition_violations;
};

namespace sring_detail {

inline std::vector<int> prime_power_factors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int q = 1;
    while (n % p == 0) {
      q *= p;
      n /= p;
    }
    out.push_back(q);
  }
  if (n > 1) out.push_back(n);
  return out;
}

// All set partitions of {0..m-1} as restricted-growth strings.
inline std::vector<std::vector<int>> set_partitions(int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(m, 0);
  for (;;) {
    out.push_back(rgs);
    int i = m - 1;
    while (i > 0) {
      int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
      if (rgs[i] < cap) break;
      --i;
    }
    if (i == 0) break;
    ++rgs[i];
    std::fill(rgs.begin() + i + 1, rgs.end(), 0);
  }
  return out;
}

// Projections of every basic set to Z_u (u | n, coprime complement), as a
// candidate factor partition; nullopt when the product test fails.
struct FactorView {
  int order;
  std::vector<ResidueSet> classes;        // dedup projections
  std::vector<int> projection_of_class;   // basic set -> factor class
};

inline std::optional<std::vector<FactorView>> product_views(
    const SchurPartition& s, const std::vector<int>& orders) {
  const int n = s.modulus();
  std::vector<FactorView> views(orders.size());
  for (size_t i = 0; i < orders.size(); ++i) views[i].order = orders[i];

  for (const auto& cls : s.basic_sets()) {
    long long size_product = 1;
    for (size_t i = 0; i < orders.size(); ++i) {
      ResidueSet proj(orders[i]);
      for (int m : cls.members()) proj.insert(m % orders[i]);
      size_product *= proj.size();
      auto& v = views[i];
      auto it = std::find(v.classes.begin(), v.classes.end(), proj);
      if (it == v.classes.end()) {
        v.classes.push_back(proj);
        v.projection_of_class.push_back(static_cast<int>(v.classes.size()) -
                                        1);
      } else {
        v.projection_of_class.push_back(
            static_cast<int>(it - v.classes.begin()));
      }
    }
    if (size_product != cls.size()) return std::nullopt;  // not a product
  }

  // factor classes must partition Z_u ...
  for (auto& v : views) {
    int covered = 0;
    std::vector<bool> seen(v.order, false);
    for (const auto& c : v.classes)
      for (int m : c.members()) {
        if (seen[m]) return std::nullopt;
        seen[m] = true;
        ++covered;
      }
    if (covered != v.order) return std::nullopt;
  }

  // ... and every combination of factor classes must be a basic set.
  long long combos = 1;
  for (auto& v : views) combos *= static_cast<long long>(v.classes.size());
  if (combos != static_cast<long long>(s.rank())) return std::nullopt;

  CrtSplit crt(n, orders);
  for (const auto& cls : s.basic_sets()) {
    // reconstruct the product of this class's projections
    ResidueSet rebuilt(n);
    std::vector<size_t> pick(orders.size(), 0);
    std::vector<std::vector<int>> memb(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) {
      int ci = 0;
      // projection of this basic set in factor i
      ResidueSet proj(orders[i]);
      for (int m : cls.members()) proj.insert(m % orders[i]);
      auto& v = views[i];
      ci = static_cast<int>(
          std::find(v.classes.begin(), v.classes.end(), proj) -
          v.classes.begin());
      memb[i] = v.classes[ci].members();
    }
    std::vector<int> coords(orders.size());
    std::function<void(size_t)> fill = [&](size_t depth) {
      if (depth == orders.size()) {
        rebuilt.insert(crt.inverse(coords));
        return;
      }
      for (int m : memb[depth]) {
        coords[depth] = m;
        fill(depth + 1);
      }
    };
    fill(0);
    if (!(rebuilt == cls)) return std::nullopt;
  }
  return views;
}

inline SchurPartition factor_sring(const FactorView& v) {
  TranslationPartition p;
  p.modulus = v.order;
  p.classes = v.classes;
  std::sort(p.classes.begin(), p.classes.end(),
            [](const ResidueSet& a, const ResidueSet& b) {
              return a.min_member() < b.min_member();
            });
  SchurOutcome out = is_schur_partition(p);
  if (!out.ok())
    throw std::logic_error("tensor factor is not a Schur partition");
  return std::move(*out.sring);
}

inline bool factor_is_rank2(const FactorView& v) {
  return v.classes.size() == 2;
}

}  // namespace sring_detail

inline DecompositionResult tensor_decompose_free(const SchurPartition& s) {
  using namespace sring_detail;
  if (!is_free(s))
    throw std::invalid_argument(
        "tensor_decompose_free: S-ring is not free; quotient by its radical "
        "first");
  const int n = s.modulus();
  std::vector<int> pps = prime_power_factors(n);
  const int m = static_cast<int>(pps.size());

  DecompositionResult result;
  int best_k = -1;
  bool best_orbit = false;

  for (const auto& rgs : set_partitions(std::max(m, 1))) {
    int parts = m == 0 ? 1 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<int> orders(parts, 1);
    if (m > 0)
      for (int i = 0; i < m; ++i) orders[rgs[i]] *= pps[i];

    for (int zero_part = 0; zero_part < parts; ++zero_part) {
      std::vector<int> arranged;
      arranged.push_back(orders[zero_part]);
      bool ok = true;
      for (int i = 0; i < parts; ++i) {
        if (i == zero_part) continue;
        if (orders[i] <= 3) {
          ok = false;  // rank-2 factors must have order > 3
          break;
        }
        arranged.push_back(orders[i]);
      }
      if (!ok) continue;
      std::sort(arranged.begin() + 1, arranged.end());

      auto views = product_views(s, arranged);
      if (!views) continue;
      for (size_t i = 1; i < views->size(); ++i)
        if (!factor_is_rank2((*views)[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;

      if (std::find(result.valid_factorizations.begin(),
                    result.valid_factorizations.end(),
                    arranged) == result.valid_factorizations.end())
        result.valid_factorizations.push_back(arranged);

      int k = parts - 1;
      SchurPartition factor0 = factor_sring((*views)[0]);
      bool orbit0 = multiplier_group(factor0).is_orbit;
      if (k > best_k || (k == best_k && orbit0 && !best_orbit)) {
        best_k = k;
        best_orbit = orbit0;
        TensorDecomposition dec;
        dec.radical = Subgroup(n, n);
        for (size_t i = 0; i < views->size(); ++i) {
          TensorDecomposition::Factor f;
          f.order = (*views)[i].order;
          f.subgroup = Subgroup(n, n / f.order);
          f.sring = i == 0 ? factor0 : factor_sring((*views)[i]);
          dec.factors.push_back(std::move(f));
        }
        result.best = std::move(dec);
        result.factor0_orbit = orbit0;
      }
    }
  }

  if (best_k < 0)
    throw std::logic_error(
        "tensor_decompose_free: even the trivial factorization failed");

  try {
    result.factor0_free = is_free(result.best.factors[0].sring);
  } catch (const NotApplicableError&) {
    result.factor0_free = false;
  }
  if (!result.factor0_orbit)
    result.side_condition_violations.push_back(
        "factor 0 is not an orbit S-ring");
  if (!result.factor0_free)
    result.side_condition_violations.push_back("factor 0 is not free");
  return result;
}

/// Instance checks of the structural lemmas used by the decomposition
/// argument, for a basic set X that generates Z_n:
///   (a) X is a union of rad(A)-cosets;
///   (b) the image of X in the free quotient is the full product of its
///       factor-0 projection with U_i \ {0} for every i > 0;
///   (c) |X| >= |Y| for every basic set Y;
///   (d) when X^(-1) is contained in X + X, the same containment passes to
///       every projected class of the quotient.
struct DecompositionLemmaReport {
  bool coset_union = false;
  bool projection_product = false;
  bool max_valency = false;
  bool inverse_condition_applicable = false;
  bool inverse_condition_holds = false;
  // integers b with Y^(b) = Y^(-b-1) = Y for every basic set Y (reported
  // only for orbit S-rings satisfying the premise of the lemma)
  std::vector<int> b_witnesses;
};

inline DecompositionLemmaReport verify_decomposition_lemmas(
    const SchurPartition& s, const ResidueSet& x) {
  if (!generated_subgroup(x).is_full())
    throw std::invalid_argument(
        "verify_decomposition_lemmas: X must generate Z_n");
  DecompositionLemmaReport rep;
  const int n = s.modulus();
  Subgroup l = sring_radical(s);

  rep.coset_union = true;
  for (int m : x.members())
    for (int g = 0; g < n; g += l.generator)
      if (!x.contains(m + g)) rep.coset_union = false;

  SchurPartition free_part = l.is_trivial() ? s : quotient(s, l);
  const int d = l.generator;  // quotient modulus
  ResidueSet pix(d);
  for (int m : x.members()) pix.insert(m % d);

  DecompositionResult dec = tensor_decompose_free(free_part);
  {
    std::vector<int> orders;
    for (const auto& f : dec.best.factors) orders.push_back(f.order);
    CrtSplit crt(d, orders);
    ResidueSet expected(d);
    ResidueSet proj0(orders[0]);
    for (int m : pix.members()) proj0.insert(m % orders[0]);
    // full product of proj0 with U_i \ {0}, i > 0
    std::vector<std::vector<int>> memb;
    memb.push_back(proj0.members());
    for (size_t i = 1; i < orders.size(); ++i) {
      std::vector<int> full;
      for (int v = 1; v < orders[i]; ++v) full.push_back(v);
      memb.push_back(full);
    }
    std::vector<int> coords(orders.size());
    std::function<void(size_t)> fill = [&](size_t depth) {
      if (depth == orders.size()) {
        expected.insert(crt.inverse(coords));
        return;
      }
      for (int v : memb[depth]) {
        coords[depth] = v;
        fill(depth + 1);
      }
    };
    fill(0);
    rep.projection_product = (pix == expected);
  }

  rep.max_valency = true;
  for (const auto& y : s.basic_sets())
    if (y.size() > x.size()) rep.max_valency = false;

  ResidueSet xx = sumset(x, x);
  ResidueSet xinv = negation(x);
  bool premise = true;
  for (int m : xinv.members())
    if (!xx.contains(m)) premise = false;
  rep.inverse_condition_applicable = premise;
  if (premise) {
    rep.inverse_condition_holds = true;
    for (const auto& y : s.basic_sets()) {
      ResidueSet piy(d);
      for (int m : y.members()) piy.insert(m % d);
      ResidueSet yy = sumset(piy, piy);
      for (int m : negation(piy).members())
        if (!yy.contains(m)) rep.inverse_condition_holds = false;
    }
    if (multiplier_group(s).is_orbit) {
      for (int b = 0; b < n; ++b) {
        bool all = true;
        for (const auto& y : s.basic_sets())
          if (!(multiplier_image(y, b) == y &&
                multiplier_image(y, -b - 1) == y)) {
            all = false;
            break;
          }
        if (all) rep.b_witnesses.push_back(b);
      }
    }
  }
  return rep;
}

}  // namespace wdrc
