#pragma once

// Association-scheme verification and algebra for translation partitions
// of Z_n: axioms, the intersection tensor p_{i,j}^l, complex products,
// closed subsets, primitivity, character spectra and pseudocyclicity.

#include <complex>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wdrc/circulant.hpp"
#include "wdrc/residues.hpp"

namespace wdrc {

/// Verified association scheme attached to a translation partition.
/// Class 0 is the diagonal class {0}; d = class_count - 1.
struct SchemeData {
  int n_points = 0;
  int class_count = 0;
  std::vector<ResidueSet> classes;
  std::vector<std::pair<int, int>> labels;  // optional, parallel to classes
  std::vector<int> class_of;                // residue -> class index
  std::vector<int> star;                    // transpose involution
  std::vector<int> valency;                 // k_i = |N_i|
  std::vector<std::vector<std::vector<int>>> tensor;  // p[i][j][l]
  bool commutative = false;
  std::vector<bool> symmetric_class;

  int d() const { return class_count - 1; }
  int p(int i, int j, int l) const { return tensor[i][j][l]; }
  bool labeled() const { return labels.size() == classes.size(); }

  std::optional<int> class_with_label(std::pair<int, int> lb) const {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == lb) return static_cast<int>(i);
    return std::nullopt;
  }
};

/// Structured reason why a partition is not a scheme.
struct SchemeFailure {
  enum class Kind {
    NotAPartition,
    ZeroClassMissing,
    InverseNotAClass,
    ProductNotConstant,
  };
  Kind kind = Kind::ProductNotConstant;
  int class_i = -1, class_j = -1, class_l = -1;
  int z = -1, z_prime = -1;
  int count_z = 0, count_z_prime = 0;

  std::string to_string() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::NotAPartition:
        os << "classes do not partition Z_n";
        break;
      case Kind::ZeroClassMissing:
        os << "{0} is not a class";
        break;
      case Kind::InverseNotAClass:
        os << "the inverse of class " << class_i << " is not a class";
        break;
      case Kind::ProductNotConstant:
        os << "count of N_" << class_i << " x N_" << class_j
           << " pairs is not constant on class " << class_l << ": z=" << z
           << " gives " << count_z << ", z=" << z_prime << " gives "
           << count_z_prime;
        break;
    }
    return os.str();
  }
};

struct SchemeOutcome {
  std::optional<SchemeData> scheme;
  std::optional<SchemeFailure> failure;
  bool ok() const { return scheme.has_value(); }
};

namespace scheme_detail {

/// #{(u,v) in N_i x N_j : u + v = z} for every z, by direct convolution.
inline std::vector<int> convolution_counts(const ResidueSet& ni,
                                           const ResidueSet& nj) {
  std::vector<int> cnt(ni.modulus(), 0);
  for (int u : ni.members())
    for (int v : nj.members()) ++cnt[(u + v) % ni.modulus()];
  return cnt;
}

}  // namespace scheme_detail

/// Check the scheme axioms for the translation relations induced by a
/// partition of Z_n. By translation invariance axiom (4) reduces to:
/// for all classes X, Y the count #{(x,y) in X x Y : x + y = z} is
/// constant over z within each class.
inline SchemeOutcome verify_scheme(const TranslationPartition& p) {
  SchemeOutcome out;
  const int n = p.modulus;

  std::vector<int> idx(n, -1);
  for (size_t i = 0; i < p.classes.size(); ++i) {
    if (p.classes[i].empty() || p.classes[i].modulus() != n) {
      out.failure = SchemeFailure{SchemeFailure::Kind::NotAPartition};
      return out;
    }
    for (int m : p.classes[i].members()) {
      if (idx[m] != -1) {
        out.failure = SchemeFailure{SchemeFailure::Kind::NotAPartition};
        return out;
      }
      idx[m] = static_cast<int>(i);
    }
  }
  for (int r = 0; r < n; ++r)
    if (idx[r] < 0) {
      out.failure = SchemeFailure{SchemeFailure::Kind::NotAPartition};
      return out;
    }

  const int k = static_cast<int>(p.classes.size());
  const int zero_idx = idx[0];
  if (p.classes[zero_idx].size() != 1) {
    out.failure = SchemeFailure{SchemeFailure::Kind::ZeroClassMissing};
    return out;
  }

  // axiom (3): the negation of each class is a class
  std::vector<int> star(k, -1);
  for (int i = 0; i < k; ++i) {
    ResidueSet inv = negation(p.classes[i]);
    for (int j = 0; j < k; ++j)
      if (inv == p.classes[j]) {
        star[i] = j;
        break;
      }
    if (star[i] < 0) {
      SchemeFailure f;
      f.kind = SchemeFailure::Kind::InverseNotAClass;
      f.class_i = i;
      out.failure = f;
      return out;
    }
  }

  // axiom (4): convolution counts constant on classes
  SchemeData s;
  s.n_points = n;
  s.class_count = k;
  s.classes = p.classes;
  s.labels = p.labels;
  s.class_of = idx;
  s.star = star;
  s.tensor.assign(k, std::vector<std::vector<int>>(k, std::vector<int>(k, 0)));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      std::vector<int> cnt =
          scheme_detail::convolution_counts(p.classes[i], p.classes[j]);
      for (int l = 0; l < k; ++l) {
        const auto mem = p.classes[l].members();
        int first = cnt[mem.front()];
        for (int z : mem) {
          if (cnt[z] != first) {
            SchemeFailure f;
            f.kind = SchemeFailure::Kind::ProductNotConstant;
            f.class_i = i;
            f.class_j = j;
            f.class_l = l;
            f.z = mem.front();
            f.z_prime = z;
            f.count_z = first;
            f.count_z_prime = cnt[z];
            out.failure = f;
            return out;
          }
        }
        s.tensor[i][j][l] = first;
      }
    }
  }

  s.valency.resize(k);
  s.symmetric_class.resize(k);
  for (int i = 0; i < k; ++i) {
    s.valency[i] = p.classes[i].size();
    s.symmetric_class[i] = (star[i] == i);
  }
  s.commutative = true;
  for (int i = 0; i < k && s.commutative; ++i)
    for (int j = 0; j < k && s.commutative; ++j)
      for (int l = 0; l < k; ++l)
        if (s.tensor[i][j][l] != s.tensor[j][i][l]) {
          s.commutative = false;
          break;
        }
  out.scheme = std::move(s);
  return out;
}

/// Slow generic oracle for axiom (4): counts |{w : (x,w) in R_i, (w,y) in
/// R_j}| over all vertex pairs (x,y) instead of exploiting translation
/// invariance. Returns the first violation found, scanning classes in
/// order. Intended for cross-checks in tests.
inline std::optional<SchemeFailure> axiom4_violation_generic(
    const TranslationPartition& p) {
  const int n = p.modulus;
  std::vector<int> idx = p.index_table();
  const int k = static_cast<int>(p.classes.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      std::vector<int> expected(k, -1);
      std::vector<int> first_z(k, -1);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int l = idx[(y - x + n) % n];
          int cnt = 0;
          for (int w = 0; w < n; ++w)
            if (p.classes[i].contains(w - x) && p.classes[j].contains(y - w))
              ++cnt;
          if (expected[l] < 0) {
            expected[l] = cnt;
            first_z[l] = (y - x + n) % n;
          } else if (expected[l] != cnt) {
            SchemeFailure f;
            f.kind = SchemeFailure::Kind::ProductNotConstant;
            f.class_i = i;
            f.class_j = j;
            f.class_l = l;
            f.z = first_z[l];
            f.z_prime = (y - x + n) % n;
            f.count_z = expected[l];
            f.count_z_prime = cnt;
            return f;
          }
        }
    }
  return std::nullopt;
}

/// Constancy check of one product pair on one class; exposes the witness
/// behind a verify_scheme failure for a designated (i, j, l) triple.
inline std::optional<SchemeFailure> constancy_violation(
    const TranslationPartition& p, int i, int j, int l) {
  auto cnt = scheme_detail::convolution_counts(p.classes[i], p.classes[j]);
  const auto mem = p.classes[l].members();
  for (int z : mem)
    if (cnt[z] != cnt[mem.front()]) {
      SchemeFailure f;
      f.kind = SchemeFailure::Kind::ProductNotConstant;
      f.class_i = i;
      f.class_j = j;
      f.class_l = l;
      f.z = mem.front();
      f.z_prime = z;
      f.count_z = cnt[mem.front()];
      f.count_z_prime = cnt[z];
      return f;
    }
  return std::nullopt;
}

/// Lemma-style intersection-number identities. Violations list (id, i, j, l).
struct IdentityReport {
  struct Violation {
    int identity;  // 1..5
    int i, j, l;
  };
  std::vector<Violation> violations;
  bool all_pass() const { return violations.empty(); }
};

/// (1) k_i k_j = sum_l p_{i,j}^l k_l
/// (2) p_{i,j}^l k_l = p_{l,j*}^i k_i = p_{i*,l}^j k_j
/// (3) sum_j p_{i,j}^l = k_i
/// (4) sum_a p_{i,j}^a p_{f,a}^l = sum_b p_{f,i}^b p_{b,j}^l
/// (5) lcm(k_i, k_j) divides p_{i,j}^l k_l
inline IdentityReport check_identities(const SchemeData& s) {
  IdentityReport rep;
  const int k = s.class_count;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long long sum1 = 0;
      for (int l = 0; l < k; ++l)
        sum1 += static_cast<long long>(s.p(i, j, l)) * s.valency[l];
      if (sum1 != static_cast<long long>(s.valency[i]) * s.valency[j])
        rep.violations.push_back({1, i, j, -1});
      for (int l = 0; l < k; ++l) {
        long long lhs = static_cast<long long>(s.p(i, j, l)) * s.valency[l];
        if (lhs != static_cast<long long>(s.p(l, s.star[j], i)) * s.valency[i] ||
            lhs != static_cast<long long>(s.p(s.star[i], l, j)) * s.valency[j])
          rep.violations.push_back({2, i, j, l});
        long long lc = std::lcm<long long>(s.valency[i], s.valency[j]);
        if (lhs % lc != 0) rep.violations.push_back({5, i, j, l});
      }
    }
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) {
      long long sum3 = 0;
      for (int j = 0; j < k; ++j) sum3 += s.p(i, j, l);
      if (sum3 != s.valency[i]) rep.violations.push_back({3, i, -1, l});
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int f = 0; f < k; ++f)
        for (int l = 0; l < k; ++l) {
          long long lhs = 0, rhs = 0;
          for (int a = 0; a < k; ++a)
            lhs += static_cast<long long>(s.p(i, j, a)) * s.p(f, a, l);
          for (int b = 0; b < k; ++b)
            rhs += static_cast<long long>(s.p(f, i, b)) * s.p(b, j, l);
          if (lhs != rhs) {
            rep.violations.push_back({4, i, j, l});
            break;
          }
        }
  return rep;
}

using ClassSet = std::vector<int>;  // sorted class indices

inline void insert_class(ClassSet& cs, int i) {
  auto it = std::lower_bound(cs.begin(), cs.end(), i);
  if (it == cs.end() || *it != i) cs.insert(it, i);
}

inline bool contains_class(const ClassSet& cs, int i) {
  return std::binary_search(cs.begin(), cs.end(), i);
}

/// EF = {R_l : p_{i,j}^l != 0 for some R_i in E, R_j in F}.
inline ClassSet complex_product(const SchemeData& s, const ClassSet& e,
                                const ClassSet& f) {
  ClassSet out;
  for (int i : e)
    for (int j : f)
      for (int l = 0; l < s.class_count; ++l)
        if (s.p(i, j, l) != 0) insert_class(out, l);
  return out;
}

/// Least fixed point of F -> F u (F* F) containing seed u {R_0}.
inline ClassSet closed_subset_generated(const SchemeData& s,
                                        const ClassSet& seed) {
  ClassSet f = seed;
  insert_class(f, s.class_of[0]);
  for (;;) {
    ClassSet starred;
    for (int i : f) insert_class(starred, s.star[i]);
    ClassSet prod = complex_product(s, starred, f);
    ClassSet merged = f;
    for (int l : prod) insert_class(merged, l);
    if (merged == f) return f;
    f = std::move(merged);
  }
}

/// Every non-diagonal relation generates the whole scheme.
inline bool is_primitive(const SchemeData& s) {
  for (int i = 0; i < s.class_count; ++i) {
    if (i == s.class_of[0]) continue;
    if (static_cast<int>(closed_subset_generated(s, {i}).size()) !=
        s.class_count)
      return false;
  }
  return true;
}

/// Translation-scheme shortcut: primitive iff every non-zero class
/// generates Z_n as a group. Kept separate so tests can compare routes.
inline bool is_primitive_translation(const SchemeData& s) {
  for (int i = 0; i < s.class_count; ++i) {
    if (i == s.class_of[0]) continue;
    if (!generated_subgroup(s.classes[i]).is_full()) return false;
  }
  return true;
}

class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

/// Character spectrum of a translation scheme over Z_n. Characters with
/// equal eigenvalue vectors are grouped; group sizes are the ranks of the
/// primitive idempotents.
struct SchemeSpectrum {
  // One representative eigenvalue vector (indexed by class) per group.
  std::vector<std::vector<std::complex<double>>> eigenvalues;
  std::vector<int> multiplicities;  // parallel to eigenvalues
  int trivial_group = 0;            // group containing the character t = 0

  std::vector<int> sorted_multiplicities() const {
    std::vector<int> m = multiplicities;
    std::sort(m.begin(), m.end());
    return m;
  }
};

inline SchemeSpectrum spectrum_multiplicities(const SchemeData& s,
                                              double tol = 1e-9) {
  const int n = s.n_points;
  const int k = s.class_count;
  const double two_pi = 6.283185307179586476925286766559;
  std::vector<std::vector<std::complex<double>>> vec(
      n, std::vector<std::complex<double>>(k));
  for (int t = 0; t < n; ++t)
    for (int i = 0; i < k; ++i) {
      std::complex<double> sum = 0.0;
      for (int x : s.classes[i].members()) {
        double ang = two_pi * t * x / n;
        sum += std::complex<double>(std::cos(ang), std::sin(ang));
      }
      vec[t][i] = sum;
    }

  auto dist = [&](int a, int b) {
    double m = 0;
    for (int i = 0; i < k; ++i) {
      m = std::max(m, std::abs(vec[a][i].real() - vec[b][i].real()));
      m = std::max(m, std::abs(vec[a][i].imag() - vec[b][i].imag()));
    }
    return m;
  };

  std::vector<int> group(n, -1);
  SchemeSpectrum spec;
  for (int t = 0; t < n; ++t) {
    for (int g = 0; g < static_cast<int>(spec.eigenvalues.size()); ++g) {
      int rep = 0;
      for (int u = 0; u < n; ++u)
        if (group[u] == g) {
          rep = u;
          break;
        }
      if (dist(t, rep) <= tol) {
        group[t] = g;
        ++spec.multiplicities[g];
        break;
      }
    }
    if (group[t] < 0) {
      group[t] = static_cast<int>(spec.eigenvalues.size());
      spec.eigenvalues.push_back(vec[t]);
      spec.multiplicities.push_back(1);
    }
  }
  // Grouping must be unambiguous: cross-group vectors may not sit close
  // to the threshold.
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (group[a] != group[b] && dist(a, b) < 10 * tol)
        throw PrecisionError(
            "spectrum grouping ambiguous: two eigenvalue vectors within 10x "
            "tolerance of the grouping threshold");
  spec.trivial_group = group[0];
  return spec;
}

/// All non-trivial multiplicities coincide.
inline bool is_pseudocyclic(const SchemeData& s, double tol = 1e-9) {
  SchemeSpectrum spec = spectrum_multiplicities(s, tol);
  int common = -1;
  for (size_t g = 0; g < spec.multiplicities.size(); ++g) {
    if (static_cast<int>(g) == spec.trivial_group) continue;
    if (common < 0)
      common = spec.multiplicities[g];
    else if (spec.multiplicities[g] != common)
      return false;
  }
  return true;
}

/// Audit of the hypotheses of the d=4 classification theorem on a concrete
/// scheme: designating R_1 := r1, every candidate R_2 consistent with
/// R_1^2 subseteq {R_1, R_1*, R_2} is reported with the sets
/// I = {i : R_i in R_1^2}, J = {i : R_i in R_1 R_1*} and the three
/// condition flags.
struct Theorem1Report {
  bool preconditions_ok = false;
  std::string reason;
  int r1 = -1;
  int d = 0;
  int k1 = 0;

  struct Assignment {
    int r2 = -1;
    ClassSet i_set;
    ClassSet j_set;
    bool cond_a = false;  // R_1^2 subseteq {R_1, R_1*, R_2}
    bool cond_b = false;  // R_1 R_1* subseteq {R_0, R_1, R_1*, R_2, R_2*}
    bool cond_c = false;  // 2 not in {1*, 2*}
    int k2 = 0;
    bool all() const { return cond_a && cond_b && cond_c; }
  };
  std::vector<Assignment> assignments;

  bool any_valid() const {
    for (const auto& a : assignments)
      if (a.all()) return true;
    return false;
  }
};

/// Symbolic name of a class relative to the (r1, r2) designation.
inline std::string theorem1_symbol(const SchemeData& s, int cls, int r1,
                                   int r2) {
  if (cls == s.class_of[0]) return "0";
  if (cls == r1) return "1";
  if (cls == s.star[r1]) return "1*";
  if (cls == r2) return "2";
  if (r2 >= 0 && cls == s.star[r2]) return "2*";
  return "#" + std::to_string(cls);
}

inline Theorem1Report theorem1_conditions(const SchemeData& s, int r1) {
  Theorem1Report rep;
  rep.r1 = r1;
  rep.d = s.d();
  rep.k1 = s.valency[r1];
  if (!s.commutative) {
    rep.reason = "scheme is not commutative";
    return rep;
  }
  if (s.symmetric_class[r1]) {
    rep.reason = "R_1 must be non-symmetric";
    return rep;
  }
  if (s.valency[r1] <= 1) {
    rep.reason = "k_1 > 1 required";
    return rep;
  }
  rep.preconditions_ok = true;

  const int zero = s.class_of[0];
  ClassSet r1_sq = complex_product(s, {r1}, {r1});
  ClassSet r1_r1s = complex_product(s, {r1}, {s.star[r1]});
  for (int r2 = 0; r2 < s.class_count; ++r2) {
    if (r2 == zero || r2 == r1 || r2 == s.star[r1]) continue;
    Theorem1Report::Assignment a;
    a.r2 = r2;
    a.i_set = r1_sq;
    a.j_set = r1_r1s;
    a.cond_a = true;
    for (int l : r1_sq)
      if (l != r1 && l != s.star[r1] && l != r2) a.cond_a = false;
    if (!a.cond_a) continue;  // r2 not consistent with the designation
    a.cond_b = true;
    for (int l : r1_r1s)
      if (l != zero && l != r1 && l != s.star[r1] && l != r2 &&
          l != s.star[r2])
        a.cond_b = false;
    a.cond_c = (r2 != s.star[r1]) && (r2 != s.star[r2]);
    a.k2 = s.valency[r2];
    rep.assignments.push_back(std::move(a));
  }
  return rep;
}

/// Structured text dump: classes, star pairing, valencies, nonzero tensor
/// entries and flags.
inline std::string format_scheme_report(const SchemeData& s) {
  std::ostringstream os;
  os << "scheme n=" << s.n_points << " d=" << s.d()
     << " commutative=" << (s.commutative ? 1 : 0);
  bool skew = true;
  for (int i = 0; i < s.class_count; ++i)
    if (i != s.class_of[0] && s.symmetric_class[i]) skew = false;
  os << " skew_symmetric=" << (skew ? 1 : 0) << "\n";
  for (int i = 0; i < s.class_count; ++i) {
    os << "class " << i;
    if (s.labeled())
      os << " label=(" << s.labels[i].first << "," << s.labels[i].second
         << ")";
    os << " star=" << s.star[i] << " k=" << s.valency[i]
       << " symmetric=" << (s.symmetric_class[i] ? 1 : 0) << " set={";
    bool first = true;
    for (int m : s.classes[i].members()) {
      if (!first) os << ',';
      os << m;
      first = false;
    }
    os << "}\n";
  }
  for (int i = 0; i < s.class_count; ++i)
    for (int j = 0; j < s.class_count; ++j)
      for (int l = 0; l < s.class_count; ++l)
        if (s.p(i, j, l) != 0)
          os << "p[" << i << "][" << j << "][" << l << "]=" << s.p(i, j, l)
             << "\n";
  return os.str();
}

}  // namespace wdrc
