#pragma once

// Exact arithmetic on the cyclic group Z_n and its subsets: sumsets,
// multiplier images, generated subgroups, radicals and CRT splitting.
// Sets are fixed-width membership masks so the enumeration core never
// allocates.

#include <algorithm>
#include <array>
#include <bit>
#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wdrc {

// Moduli are capped so a set always fits in two machine words.
inline constexpr int kMaxModulus = 128;

namespace detail {

struct MaskWords {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

inline MaskWords words_of(const std::bitset<kMaxModulus>& b) {
  MaskWords w;
  std::bitset<kMaxModulus> low = b;
  for (int i = 64; i < kMaxModulus; ++i) low.reset(i);
  w.lo = low.to_ullong();
  w.hi = (b >> 64).to_ullong();
  return w;
}

}  // namespace detail

/// A subset of Z_n as a membership mask over residues 0..n-1.
class ResidueSet {
 public:
  ResidueSet() = default;

  explicit ResidueSet(int modulus) : n_(modulus) {
    if (modulus < 1 || modulus > kMaxModulus)
      throw std::invalid_argument("ResidueSet: modulus out of range [1, " +
                                  std::to_string(kMaxModulus) + "]");
  }

  ResidueSet(int modulus, std::initializer_list<int> members)
      : ResidueSet(modulus) {
    for (int m : members) insert(m);
  }

  ResidueSet(int modulus, const std::vector<int>& members)
      : ResidueSet(modulus) {
    for (int m : members) insert(m);
  }

  int modulus() const { return n_; }
  bool valid() const { return n_ >= 1; }

  int reduce(long long r) const {
    long long m = r % n_;
    return static_cast<int>(m < 0 ? m + n_ : m);
  }

  void insert(int r) { bits_.set(reduce(r)); }
  void erase(int r) { bits_.reset(reduce(r)); }
  bool contains(int r) const { return bits_.test(reduce(r)); }

  int size() const { return static_cast<int>(bits_.count()); }
  bool empty() const { return bits_.none(); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    auto w = detail::words_of(bits_);
    while (w.lo) {
      out.push_back(std::countr_zero(w.lo));
      w.lo &= w.lo - 1;
    }
    while (w.hi) {
      out.push_back(64 + std::countr_zero(w.hi));
      w.hi &= w.hi - 1;
    }
    return out;
  }

  /// Smallest member, or -1 when empty.
  int min_member() const {
    auto w = detail::words_of(bits_);
    if (w.lo) return std::countr_zero(w.lo);
    if (w.hi) return 64 + std::countr_zero(w.hi);
    return -1;
  }

  const std::bitset<kMaxModulus>& mask() const { return bits_; }

  friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  int n_ = 0;
  std::bitset<kMaxModulus> bits_;
};

inline void require_same_modulus(const ResidueSet& x, const ResidueSet& y,
                                 const char* op) {
  if (x.modulus() != y.modulus())
    throw std::invalid_argument(std::string(op) + ": modulus mismatch " +
                                std::to_string(x.modulus()) + " vs " +
                                std::to_string(y.modulus()));
}

/// {x + y mod n : x in X, y in Y}.
inline ResidueSet sumset(const ResidueSet& x, const ResidueSet& y) {
  require_same_modulus(x, y, "sumset");
  ResidueSet out(x.modulus());
  for (int a : x.members())
    for (int b : y.members()) out.insert(a + b);
  return out;
}

/// {m*x mod n : x in X}. m need not be a unit; m = -1 gives the inverse set.
inline ResidueSet multiplier_image(const ResidueSet& x, long long m) {
  ResidueSet out(x.modulus());
  for (int a : x.members()) out.insert(out.reduce(m * a));
  return out;
}

inline ResidueSet negation(const ResidueSet& x) {
  return multiplier_image(x, -1);
}

/// The subgroup dZ_n of Z_n, stored by its generating divisor d.
/// d = n encodes the trivial subgroup {0}; d = 1 the full group.
struct Subgroup {
  int modulus = 0;
  int generator = 0;

  Subgroup() = default;
  Subgroup(int n, int d) : modulus(n), generator(d) {
    if (n < 1 || d < 1 || n % d != 0)
      throw std::invalid_argument("Subgroup: generator must divide modulus");
  }

  int order() const { return modulus / generator; }
  bool contains(int r) const {
    int m = r % modulus;
    if (m < 0) m += modulus;
    return m % generator == 0;
  }
  bool is_trivial() const { return generator == modulus; }
  bool is_full() const { return generator == 1; }

  ResidueSet as_residue_set() const {
    ResidueSet s(modulus);
    for (int r = 0; r < modulus; r += generator) s.insert(r);
    return s;
  }

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// Subgroup generated by X: dZ_n with d = gcd(n, members of X).
/// X generates Z_n iff the result is the full group.
inline Subgroup generated_subgroup(const ResidueSet& x) {
  int d = x.modulus();
  for (int a : x.members()) d = std::gcd(d, a);
  return Subgroup(x.modulus(), d == 0 ? x.modulus() : d);
}

/// rad(X) = {g : g + X = X}, the largest subgroup L such that X is a
/// union of L-cosets.
inline Subgroup set_radical(const ResidueSet& x) {
  const int n = x.modulus();
  int d = n;  // gcd of all fixing shifts; n alone encodes {0}
  for (int g = 1; g < n; ++g) {
    bool fixes = true;
    // |X + g| = |X|, so containment of the shift forces equality.
    for (int a : x.members()) {
      if (!x.contains(a + g)) {
        fixes = false;
        break;
      }
    }
    if (fixes) d = std::gcd(d, g);
  }
  return Subgroup(n, d);
}

/// Chinese-remainder bijection between Z_n and a product of pairwise
/// coprime factors.
class CrtSplit {
 public:
  CrtSplit(int modulus, std::vector<int> factors)
      : n_(modulus), factors_(std::move(factors)) {
    long long prod = 1;
    for (size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 1) throw std::invalid_argument("crt_split: factor < 1");
      for (size_t j = i + 1; j < factors_.size(); ++j)
        if (std::gcd(factors_[i], factors_[j]) != 1)
          throw std::invalid_argument("crt_split: factors not coprime");
      prod *= factors_[i];
    }
    if (prod != n_)
      throw std::invalid_argument("crt_split: product of factors != modulus");
    // basis[i] == 1 mod factors_[i], == 0 mod the others
    basis_.resize(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
      long long rest = n_ / factors_[i];
      long long inv = inverse_mod(rest % factors_[i], factors_[i]);
      basis_[i] = static_cast<int>((rest * inv) % n_);
    }
  }

  int modulus() const { return n_; }
  const std::vector<int>& factors() const { return factors_; }

  std::vector<int> forward(int x) const {
    std::vector<int> out(factors_.size());
    int r = x % n_;
    if (r < 0) r += n_;
    for (size_t i = 0; i < factors_.size(); ++i) out[i] = r % factors_[i];
    return out;
  }

  int inverse(const std::vector<int>& coords) const {
    if (coords.size() != factors_.size())
      throw std::invalid_argument("crt_split: coordinate arity mismatch");
    long long acc = 0;
    for (size_t i = 0; i < coords.size(); ++i) {
      int c = coords[i] % factors_[i];
      if (c < 0) c += factors_[i];
      acc = (acc + static_cast<long long>(basis_[i]) * c) % n_;
    }
    return static_cast<int>(acc);
  }

 private:
  static long long inverse_mod(long long a, long long m) {
    if (m == 1) return 0;
    long long g = m, x = 0, x1 = 1, a1 = a % m;
    if (a1 < 0) a1 += m;
    long long b = a1;
    while (b != 0) {
      long long q = g / b;
      long long t = g - q * b;
      g = b;
      b = t;
      t = x - q * x1;
      x = x1;
      x1 = t;
    }
    if (g != 1) throw std::invalid_argument("crt_split: no modular inverse");
    return x < 0 ? x + m : x;
  }

  int n_;
  std::vector<int> factors_;
  std::vector<int> basis_;
};

inline CrtSplit crt_split(int modulus, const std::vector<int>& factors) {
  return CrtSplit(modulus, factors);
}

inline std::vector<int> units_of(int n) {
  std::vector<int> out;
  for (int m = 1; m < n; ++m)
    if (std::gcd(m, n) == 1) out.push_back(m);
  if (n == 1) out.push_back(0);  // degenerate group
  return out;
}

/// Total order on same-modulus sets: the set owning the smallest
/// differing residue comes first. Used to pick representatives of
/// multiplier classes.
inline bool set_precedes(const ResidueSet& a, const ResidueSet& b) {
  auto wa = detail::words_of(a.mask());
  auto wb = detail::words_of(b.mask());
  std::uint64_t diff = wa.lo ^ wb.lo;
  if (diff) return wa.lo & (diff & -diff);
  diff = wa.hi ^ wb.hi;
  if (diff) return wa.hi & (diff & -diff);
  return false;
}

// --- textual set syntax "n:a,b,c" ------------------------------------------

inline std::string format_residue_set(const ResidueSet& s) {
  std::ostringstream os;
  os << s.modulus() << ':';
  bool first = true;
  for (int m : s.members()) {
    if (!first) os << ',';
    os << m;
    first = false;
  }
  return os.str();
}

inline ResidueSet parse_residue_set(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("set literal: expected \"n:a,b,c\", got \"" +
                                text + "\"");
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw std::invalid_argument("set literal: bad modulus in \"" + text + "\"");
  }
  ResidueSet out(n);
  std::string rest = text.substr(colon + 1);
  if (rest.empty()) return out;
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("trailing junk");
      out.insert(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("set literal: bad element \"" + tok +
                                  "\" in \"" + text + "\"");
    }
  }
  return out;
}

}  // namespace wdrc
