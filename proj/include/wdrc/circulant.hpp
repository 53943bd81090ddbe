#pragma once

// Circulant digraphs Cay(Z_n, S): distances, two-way distance partitions,
// arc types and digraph products.

#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wdrc/residues.hpp"

namespace wdrc {

/// Cay(Z_n, S) with S a set of nonzero residues; arc x -> y iff y - x in S.
struct Circulant {
  int n = 0;
  ResidueSet connection;

  Circulant() = default;
  Circulant(int modulus, ResidueSet s) : n(modulus), connection(std::move(s)) {
    if (connection.modulus() != n)
      throw std::invalid_argument("Circulant: connection set modulus mismatch");
    if (connection.contains(0))
      throw std::invalid_argument("Circulant: connection set contains 0");
  }
  Circulant(int modulus, std::initializer_list<int> s)
      : Circulant(modulus, ResidueSet(modulus, s)) {}

  bool strongly_connected() const {
    return generated_subgroup(connection).is_full();
  }

  friend bool operator==(const Circulant&, const Circulant&) = default;
};

inline std::string format_circulant(const Circulant& c) {
  return format_residue_set(c.connection);
}

inline Circulant parse_circulant(const std::string& text) {
  ResidueSet s = parse_residue_set(text);
  return Circulant(s.modulus(), s);
}

/// Raised by distance computations on digraphs that are not strongly
/// connected; carries the subgroup actually reachable from 0.
class DisconnectedError : public std::runtime_error {
 public:
  explicit DisconnectedError(Subgroup reachable)
      : std::runtime_error("circulant is not strongly connected; arcs reach "
                           "only the subgroup " +
                           std::to_string(reachable.generator) + "Z_" +
                           std::to_string(reachable.modulus)),
        reachable_(reachable) {}
  const Subgroup& reachable() const { return reachable_; }

 private:
  Subgroup reachable_;
};

/// One-way distances from and to vertex 0. For a circulant the distance
/// pair of (x, y) depends only on y - x, so this table carries the whole
/// two-way distance structure.
struct TwoWayTable {
  std::vector<int> d_out;  // d_out[v] = distance 0 -> v
  std::vector<int> d_in;   // d_in[v]  = distance v -> 0 = d_out[-v]
};

inline TwoWayTable distances_from_zero(const Circulant& c) {
  if (!c.strongly_connected())
    throw DisconnectedError(generated_subgroup(c.connection));
  const int n = c.n;
  TwoWayTable t;
  t.d_out.assign(n, -1);
  t.d_out[0] = 0;
  std::queue<int> frontier;
  frontier.push(0);
  const std::vector<int> steps = c.connection.members();
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (int s : steps) {
      int w = v + s >= n ? v + s - n : v + s;
      if (t.d_out[w] < 0) {
        t.d_out[w] = t.d_out[v] + 1;
        frontier.push(w);
      }
    }
  }
  t.d_in.assign(n, 0);
  for (int v = 1; v < n; ++v) t.d_in[v] = t.d_out[n - v];
  return t;
}

/// A partition of Z_n into labeled classes, class {0} first. Induces the
/// translation relations R(X) = {(g, x+g)}. Labels are two-way distance
/// pairs when the partition comes from a digraph; otherwise empty.
struct TranslationPartition {
  int modulus = 0;
  std::vector<ResidueSet> classes;
  std::vector<std::pair<int, int>> labels;  // parallel to classes, or empty

  bool labeled() const { return labels.size() == classes.size(); }

  std::optional<int> class_with_label(std::pair<int, int> lb) const {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == lb) return static_cast<int>(i);
    return std::nullopt;
  }

  /// Class index per residue; -1 when uncovered.
  std::vector<int> index_table() const {
    std::vector<int> idx(modulus, -1);
    for (size_t i = 0; i < classes.size(); ++i)
      for (int m : classes[i].members()) idx[m] = static_cast<int>(i);
    return idx;
  }
};

/// N_(a,b) = {v != 0 : d_out[v] = a, d_in[v] = b}, plus {0} labeled (0,0).
/// Classes are ordered by label.
inline TranslationPartition two_way_partition(const Circulant& c) {
  TwoWayTable t = distances_from_zero(c);
  const int n = c.n;
  std::vector<std::pair<std::pair<int, int>, ResidueSet>> acc;
  auto class_for = [&](std::pair<int, int> lb) -> ResidueSet& {
    for (auto& [l, s] : acc)
      if (l == lb) return s;
    acc.emplace_back(lb, ResidueSet(n));
    return acc.back().second;
  };
  class_for({0, 0}).insert(0);
  for (int v = 1; v < n; ++v) class_for({t.d_out[v], t.d_in[v]}).insert(v);
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  TranslationPartition p;
  p.modulus = n;
  for (auto& [lb, s] : acc) {
    p.labels.push_back(lb);
    p.classes.push_back(std::move(s));
  }
  return p;
}

/// T = {1 + d_in[s] : s in S}; a single element means one type of arcs.
inline std::vector<int> arc_type_set(const Circulant& c) {
  TwoWayTable t = distances_from_zero(c);
  std::vector<int> types;
  for (int s : c.connection.members()) {
    int q = 1 + t.d_in[s];
    if (std::find(types.begin(), types.end(), q) == types.end())
      types.push_back(q);
  }
  std::sort(types.begin(), types.end());
  return types;
}

/// Direct product of coprime-order circulants via CRT: the connection set
/// is the preimage of S1 x S2.
inline Circulant direct_product(const Circulant& a, const Circulant& b) {
  if (std::gcd(a.n, b.n) != 1)
    throw std::invalid_argument(
        "direct_product: moduli must be coprime for the product to be a "
        "circulant");
  const int n = a.n * b.n;
  ResidueSet s(n);
  for (int x = 0; x < n; ++x)
    if (a.connection.contains(x % a.n) && b.connection.contains(x % b.n))
      s.insert(x);
  return Circulant(n, s);
}

/// Lexicographic product a[b] realized on Z_{m*l} with fibers = cosets of
/// mZ_{ml}: connection {x : x mod m in S1} u {m*t : t in S2}.
inline Circulant lex_product(const Circulant& a, const Circulant& b) {
  const int m = a.n, l = b.n;
  const int n = m * l;
  if (n > kMaxModulus)
    throw std::invalid_argument("lex_product: product order exceeds cap");
  ResidueSet s(n);
  for (int x = 0; x < n; ++x)
    if (a.connection.contains(x % m)) s.insert(x);
  for (int t : b.connection.members()) s.insert(m * t);
  return Circulant(n, s);
}

// --- partition literal "n | 0 | a,b,c | ..." --------------------------------

inline std::string format_partition(const TranslationPartition& p) {
  std::ostringstream os;
  os << p.modulus;
  for (const auto& cls : p.classes) {
    os << " | ";
    bool first = true;
    for (int m : cls.members()) {
      if (!first) os << ',';
      os << m;
      first = false;
    }
  }
  return os.str();
}

inline TranslationPartition parse_partition(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  auto strip = [](std::string s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  if (parts.empty()) throw std::invalid_argument("partition literal: empty");
  int n = std::stoi(strip(parts[0]));
  TranslationPartition p;
  p.modulus = n;
  for (size_t i = 1; i < parts.size(); ++i) {
    std::string body = strip(parts[i]);
    ResidueSet cls(n);
    if (!body.empty()) {
      std::istringstream is(body);
      std::string tok;
      while (std::getline(is, tok, ',')) cls.insert(std::stoi(strip(tok)));
    }
    p.classes.push_back(cls);
  }
  // keep {0} first, remaining classes by smallest member
  std::stable_sort(p.classes.begin(), p.classes.end(),
                   [](const ResidueSet& a, const ResidueSet& b) {
                     return a.min_member() < b.min_member();
                   });
  return p;
}

}  // namespace wdrc
