#pragma once

// Named circulant families of the classification, and the generator of
// the expected answer set for each modulus: C_m[K|_l], P(p)[K|_l],
// C_3 x K_h and Cay(Z_13,{1,3,9})[K|_l].

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wdrc/canonical.hpp"
#include "wdrc/circulant.hpp"
#include "wdrc/residues.hpp"

namespace wdrc {

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline Circulant cycle(int n) { return Circulant(n, ResidueSet(n, {1})); }

inline Circulant complete(int n) {
  ResidueSet s(n);
  for (int v = 1; v < n; ++v) s.insert(v);
  return Circulant(n, s);
}

inline Circulant empty_graph(int n) { return Circulant(n, ResidueSet(n)); }

/// Paley digraph P(p): arcs given by the nonzero squares mod p. Defined
/// for primes p = 3 (mod 4), where the squares avoid -1.
inline Circulant paley(int p) {
  if (!is_prime(p))
    throw std::invalid_argument("paley: " + std::to_string(p) +
                                " is not prime");
  if (p % 4 != 3)
    throw std::invalid_argument("paley: " + std::to_string(p) +
                                " != 3 (mod 4)");
  ResidueSet s(p);
  for (int x = 1; x < p; ++x)
    s.insert(static_cast<int>((static_cast<long long>(x) * x) % p));
  return Circulant(p, s);
}

inline int least_primitive_root(int p) {
  for (int a = 2; a < p; ++a) {
    int ord = 1;
    long long v = a;
    while (v != 1) {
      v = (v * a) % p;
      ++ord;
    }
    if (ord == p - 1) return a;
  }
  throw std::invalid_argument("least_primitive_root: no root mod " +
                              std::to_string(p));
}

/// The d cosets of the index-d subgroup of units mod p, labeled by powers
/// of the least primitive root: class i = alpha^i <alpha^d>. Together with
/// {0} these are the classes of the cyclotomic scheme.
inline std::vector<ResidueSet> cyclotomic_classes(int p, int d) {
  if (!is_prime(p))
    throw std::invalid_argument("cyclotomic_classes: p must be prime");
  if (d < 1 || (p - 1) % d != 0)
    throw std::invalid_argument("cyclotomic_classes: d must divide p-1");
  const int alpha = least_primitive_root(p);
  long long ad = 1;
  for (int i = 0; i < d; ++i) ad = (ad * alpha) % p;
  std::vector<ResidueSet> classes;
  long long coset_lead = 1;
  for (int i = 0; i < d; ++i) {
    ResidueSet cls(p);
    long long v = coset_lead;
    do {
      cls.insert(static_cast<int>(v));
      v = (v * ad) % p;
    } while (v != coset_lead);
    classes.push_back(cls);
    coset_lead = (coset_lead * alpha) % p;
  }
  return classes;
}

inline Circulant z13_139() { return Circulant(13, {1, 3, 9}); }

/// Family labels of the classification. Parameter constraints: l >= 1,
/// m >= 3, h, p > 3, 3 does not divide h, p prime = 3 (mod 4).
struct FamilyTag {
  enum class Kind { Cycle, CycleLex, PaleyLex, C3xKh, Z13Lex };
  Kind kind = Kind::Cycle;
  int m = 0, l = 0, p = 0, h = 0;

  static FamilyTag make_cycle(int m) {
    FamilyTag t;
    t.kind = Kind::Cycle;
    t.m = m;
    t.l = 1;
    return t;
  }
  static FamilyTag make_cycle_lex(int m, int l) {
    FamilyTag t;
    t.kind = Kind::CycleLex;
    t.m = m;
    t.l = l;
    return t;
  }
  static FamilyTag make_paley_lex(int p, int l) {
    FamilyTag t;
    t.kind = Kind::PaleyLex;
    t.p = p;
    t.l = l;
    return t;
  }
  static FamilyTag make_c3xkh(int h) {
    FamilyTag t;
    t.kind = Kind::C3xKh;
    t.h = h;
    return t;
  }
  static FamilyTag make_z13_lex(int l) {
    FamilyTag t;
    t.kind = Kind::Z13Lex;
    t.l = l;
    return t;
  }

  void validate() const {
    switch (kind) {
      case Kind::Cycle:
        if (m < 3) throw std::invalid_argument("Cycle: m >= 3 required");
        break;
      case Kind::CycleLex:
        if (m < 3 || l < 1)
          throw std::invalid_argument("CycleLex: m >= 3, l >= 1 required");
        break;
      case Kind::PaleyLex:
        if (!(p > 3 && is_prime(p) && p % 4 == 3) || l < 1)
          throw std::invalid_argument(
              "PaleyLex: p > 3 prime with p = 3 (mod 4), l >= 1 required");
        break;
      case Kind::C3xKh:
        if (!(h > 3 && h % 3 != 0))
          throw std::invalid_argument(
              "C3xKh: h > 3 with 3 not dividing h required");
        break;
      case Kind::Z13Lex:
        if (l < 1) throw std::invalid_argument("Z13Lex: l >= 1 required");
        break;
    }
  }

  int order() const {
    switch (kind) {
      case Kind::Cycle:
        return m;
      case Kind::CycleLex:
        return m * l;
      case Kind::PaleyLex:
        return p * l;
      case Kind::C3xKh:
        return 3 * h;
      case Kind::Z13Lex:
        return 13 * l;
    }
    return 0;
  }

  Circulant build() const {
    validate();
    switch (kind) {
      case Kind::Cycle:
        return cycle(m);
      case Kind::CycleLex:
        return lex_product(cycle(m), empty_graph(l));
      case Kind::PaleyLex:
        return lex_product(paley(p), empty_graph(l));
      case Kind::C3xKh:
        return direct_product(cycle(3), complete(h));
      case Kind::Z13Lex:
        return lex_product(z13_139(), empty_graph(l));
    }
    throw std::logic_error("FamilyTag::build: bad kind");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::Cycle:
        return "Cycle(m=" + std::to_string(m) + ")";
      case Kind::CycleLex:
        return "CycleLex(m=" + std::to_string(m) + ",l=" + std::to_string(l) +
               ")";
      case Kind::PaleyLex:
        return "PaleyLex(p=" + std::to_string(p) + ",l=" + std::to_string(l) +
               ")";
      case Kind::C3xKh:
        return "C3xKh(h=" + std::to_string(h) + ")";
      case Kind::Z13Lex:
        return "Z13Lex(l=" + std::to_string(l) + ")";
    }
    return "?";
  }

  static FamilyTag parse(const std::string& text) {
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos ||
        close < open)
      throw std::invalid_argument("family tag: expected Kind(k=v,...), got \"" +
                                  text + "\"");
    std::string kind = text.substr(0, open);
    std::string body = text.substr(open + 1, close - open - 1);
    std::map<std::string, int> kv;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("family tag: bad parameter \"" + tok +
                                    "\"");
      kv[tok.substr(0, eq)] = std::stoi(tok.substr(eq + 1));
    }
    auto need = [&](const char* key) {
      auto it = kv.find(key);
      if (it == kv.end())
        throw std::invalid_argument("family tag: missing parameter " +
                                    std::string(key));
      return it->second;
    };
    FamilyTag t;
    if (kind == "Cycle") {
      t = make_cycle(need("m"));
    } else if (kind == "CycleLex") {
      t = make_cycle_lex(need("m"), need("l"));
    } else if (kind == "PaleyLex") {
      t = make_paley_lex(need("p"), kv.count("l") ? kv["l"] : 1);
    } else if (kind == "C3xKh") {
      t = make_c3xkh(need("h"));
    } else if (kind == "Z13Lex") {
      t = make_z13_lex(kv.count("l") ? kv["l"] : 1);
    } else {
      throw std::invalid_argument("family tag: unknown kind \"" + kind +
                                  "\"");
    }
    t.validate();
    return t;
  }
};

/// Every admissible family member of order n, one representative per
/// isomorphism class. Coincidences between families are removed by full
/// isomorphism dedup, not by parameter reasoning.
inline std::vector<std::pair<Circulant, FamilyTag>> expected_one_type_family(
    int n) {
  std::vector<std::pair<Circulant, FamilyTag>> out;
  auto push = [&](FamilyTag tag) {
    Circulant c = tag.build();
    for (const auto& [prev, tag_prev] : out)
      if (is_isomorphic(prev, c)) return;
    out.emplace_back(std::move(c), tag);
  };
  for (int m = n; m >= 3; --m) {
    if (n % m != 0) continue;
    int l = n / m;
    push(l == 1 ? FamilyTag::make_cycle(m) : FamilyTag::make_cycle_lex(m, l));
  }
  for (int p = 5; p <= n; ++p)
    if (n % p == 0 && is_prime(p) && p % 4 == 3)
      push(FamilyTag::make_paley_lex(p, n / p));
  if (n % 3 == 0) {
    int h = n / 3;
    if (h > 3 && h % 3 != 0) push(FamilyTag::make_c3xkh(h));
  }
  if (n % 13 == 0) push(FamilyTag::make_z13_lex(n / 13));
  return out;
}

}  // namespace wdrc
