#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "presentation.hpp"

namespace ttg {

/// A thick tensor ideal, represented by its rule-closed atom set. An object
/// class belongs to the ideal exactly when its atoms do; thickness is
/// automatic under that representation.
struct Ideal {
  AtomSet atoms;
  bool contains_object(ObjectClass a) const { return a.subset_of(atoms); }
  friend constexpr bool operator==(const Ideal&, const Ideal&) = default;
};

using ObjectFamily = std::vector<ObjectClass>;

// ---------------------------------------------------------------------------
// Closure rules. A subset S of atoms is a thick tensor ideal when it is
// stable under shift and tensoring by arbitrary atoms and, for every
// triangle of the family, contains the third component as soon as it
// contains two of them.

inline bool is_thick_tensor_ideal(const Presentation& p, std::span<const Triangle> rules,
                                  AtomSet s) {
  require_known(p, s);
  for (int x : s) {
    if (!p.shift(x).subset_of(s)) return false;
    for (int y = 0; y < p.atom_count(); ++y)
      if (!p.tensor(x, y).subset_of(s)) return false;
  }
  for (const Triangle& t : rules) {
    const bool a_in = t.a.subset_of(s);
    const bool b_in = t.b.subset_of(s);
    const bool c_in = t.c.subset_of(s);
    if (a_in + b_in + c_in == 2) return false;
  }
  return true;
}

inline bool is_thick_tensor_ideal(const Presentation& p, AtomSet s) {
  return is_thick_tensor_ideal(p, triangle_rule_family(p), s);
}

/// Least fixpoint of the closure rules above a seed atom set: worklist
/// saturation, one pass over the triangle family per growth round.
inline AtomSet saturate_atoms(const Presentation& p, std::span<const Triangle> rules,
                              AtomSet seed) {
  require_known(p, seed);
  AtomSet s = seed;
  bool grew = true;
  while (grew) {
    grew = false;
    AtomSet next = s;
    for (int x : s) {
      next |= p.shift(x);
      for (int y = 0; y < p.atom_count(); ++y) next |= p.tensor(x, y);
    }
    for (const Triangle& t : rules) {
      const bool a_in = t.a.subset_of(next);
      const bool b_in = t.b.subset_of(next);
      const bool c_in = t.c.subset_of(next);
      if (a_in && b_in) next |= t.c;
      if (a_in && c_in) next |= t.b;
      if (b_in && c_in) next |= t.a;
    }
    if (next != s) {
      s = next;
      grew = true;
    }
  }
  return s;
}

/// Smallest thick tensor ideal containing every member of the family.
inline Ideal ideal_generated_by(const Presentation& p, const ObjectFamily& family) {
  AtomSet seed;
  for (ObjectClass member : family) {
    require_known(p, member);
    seed |= member;
  }
  return Ideal{saturate_atoms(p, triangle_rule_family(p), seed)};
}

// ---------------------------------------------------------------------------
// Primality. The atom-level test is equivalent to quantifying over all
// object-class pairs; the object-level form is re-checked by the tests.

inline bool is_prime(const Presentation& p, const Ideal& ideal) {
  if (ideal.atoms == p.universe()) return false;  // proper only
  for (int x = 0; x < p.atom_count(); ++x) {
    if (ideal.atoms.contains(x)) continue;
    for (int y = 0; y <= x; ++y) {
      if (ideal.atoms.contains(y)) continue;
      if (p.tensor(x, y).subset_of(ideal.atoms)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration. Atom subsets are tried in increasing cardinality and the
// result is sorted canonically; practical up to max_atoms bit-indexed sets.

inline std::vector<Ideal> all_ideals(const Presentation& p) {
  const std::vector<Triangle> rules = triangle_rule_family(p);
  std::vector<Ideal> out;
  const std::uint32_t limit = p.universe().bits();
  for (std::uint32_t m = 0;; ++m) {
    const AtomSet s = AtomSet::from_bits(m);
    if (is_thick_tensor_ideal(p, rules, s)) out.push_back(Ideal{s});
    if (m == limit) break;
  }
  std::sort(out.begin(), out.end(), [&p](const Ideal& a, const Ideal& b) {
    return size_then_lex_less(p, a.atoms, b.atoms);
  });
  return out;
}

inline std::vector<Ideal> all_primes(const Presentation& p) {
  std::vector<Ideal> out;
  for (const Ideal& ideal : all_ideals(p))
    if (is_prime(p, ideal)) out.push_back(ideal);
  return out;
}

// ---------------------------------------------------------------------------
// Radical, nilpotence, generation.

namespace detail {

/// True when some tensor power of the class lands inside the atom set;
/// powers cycle over the finite class space, so repetition ends the scan.
inline std::optional<int> power_inside(const Presentation& p, ObjectClass a, AtomSet target) {
  std::unordered_set<std::uint32_t> seen;
  ObjectClass power = a;
  int n = 1;
  while (true) {
    if (power.subset_of(target)) return n;
    if (!seen.insert(power.bits()).second) return std::nullopt;
    power = tensor_obj(p, power, a);
    ++n;
  }
}

}  // namespace detail

inline Ideal radical(const Presentation& p, const Ideal& ideal,
                     std::span<const Ideal> primes) {
  require_known(p, ideal.atoms);
  AtomSet by_powers;
  for (int x = 0; x < p.atom_count(); ++x)
    if (detail::power_inside(p, AtomSet::single(x), ideal.atoms))
      by_powers |= AtomSet::single(x);

  AtomSet by_primes = p.universe();
  for (const Ideal& prime : primes)
    if (ideal.atoms.subset_of(prime.atoms)) by_primes &= prime.atoms;

  if (by_powers != by_primes)
    throw std::logic_error("radical mismatch: powers give " + object_to_string(p, by_powers) +
                           ", primes give " + object_to_string(p, by_primes));
  return Ideal{by_powers};
}

inline Ideal radical(const Presentation& p, const Ideal& ideal) {
  const std::vector<Ideal> primes = all_primes(p);
  return radical(p, ideal, primes);
}

struct Nilpotence {
  bool nilpotent = false;
  std::optional<int> exponent;  // smallest n with the n-th power zero
};

inline Nilpotence tensor_nilpotence(const Presentation& p, ObjectClass a) {
  const std::optional<int> n = detail::power_inside(p, a, AtomSet{});
  if (n) return Nilpotence{true, n};
  return Nilpotence{false, std::nullopt};
}

inline bool generates_whole(const Presentation& p, ObjectClass a) {
  return ideal_generated_by(p, {a}).atoms == p.universe();
}

// ---------------------------------------------------------------------------
// Prime avoidance: given an ideal J and a multiplicative family S disjoint
// from it, produce a prime containing J and missing S.

inline bool is_multiplicative_family(const Presentation& p, const ObjectFamily& family) {
  std::unordered_set<std::uint32_t> members;
  for (ObjectClass member : family) {
    require_known(p, member);
    members.insert(member.bits());
  }
  if (!members.count(p.unit().bits())) return false;
  for (ObjectClass a : family)
    for (ObjectClass b : family)
      if (!members.count(tensor_obj(p, a, b).bits())) return false;
  return true;
}

struct PrimeAvoidance {
  std::optional<Ideal> prime;
  std::optional<ObjectClass> witness;  // member of S lying in J, when none
};

inline PrimeAvoidance prime_avoiding(const Presentation& p, const Ideal& ideal_j,
                                     const ObjectFamily& family) {
  if (!is_multiplicative_family(p, family))
    throw std::invalid_argument("family not multiplicative");
  if (!is_thick_tensor_ideal(p, ideal_j.atoms))
    throw std::invalid_argument("not a thick tensor ideal");

  ObjectFamily sorted = family;
  std::sort(sorted.begin(), sorted.end(),
            [&p](ObjectClass a, ObjectClass b) { return size_then_lex_less(p, a, b); });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  for (ObjectClass member : sorted)
    if (member.subset_of(ideal_j.atoms)) return PrimeAvoidance{std::nullopt, member};

  // Start of the ascent: atoms annihilated into J by some member of S.
  AtomSet base;
  for (int x = 0; x < p.atom_count(); ++x)
    for (ObjectClass member : sorted)
      if (tensor_obj(p, AtomSet::single(x), member).subset_of(ideal_j.atoms)) {
        base |= AtomSet::single(x);
        break;
      }

  auto meets_family = [&](AtomSet s) {
    for (ObjectClass member : sorted)
      if (member.subset_of(s)) return true;
    return false;
  };
  auto absorbs = [&](AtomSet s) {  // c in S and a*c in s imply a in s
    for (int x = 0; x < p.atom_count(); ++x) {
      if (s.contains(x)) continue;
      for (ObjectClass member : sorted)
        if (tensor_obj(p, AtomSet::single(x), member).subset_of(s)) return false;
    }
    return true;
  };

  std::vector<Ideal> candidates;
  for (const Ideal& ideal : all_ideals(p)) {
    if (!base.subset_of(ideal.atoms)) continue;
    if (!ideal_j.atoms.subset_of(ideal.atoms)) continue;
    if (meets_family(ideal.atoms)) continue;
    if (!absorbs(ideal.atoms)) continue;
    candidates.push_back(ideal);
  }
  if (candidates.empty()) return PrimeAvoidance{std::nullopt, std::nullopt};

  std::vector<Ideal> maximal;
  for (const Ideal& a : candidates) {
    bool topped = false;
    for (const Ideal& b : candidates)
      if (a.atoms.proper_subset_of(b.atoms)) {
        topped = true;
        break;
      }
    if (!topped) maximal.push_back(a);
  }
  // Deterministic choice: lexicographically greatest sorted atom list.
  Ideal chosen = maximal.front();
  for (const Ideal& candidate : maximal)
    if (name_lex_less(p, chosen.atoms, candidate.atoms)) chosen = candidate;

  if (!is_prime(p, chosen))
    throw std::logic_error("prime avoidance produced a non-prime maximal ideal");
  return PrimeAvoidance{chosen, std::nullopt};
}

}  // namespace ttg
