#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ideals.hpp"
#include "presentation.hpp"

namespace ttg {

/// The spectrum of a presentation as a finite topological space: one point
/// per prime, the support of each atom, and the specialization order given
/// by inclusion of primes. Closed sets are exactly the downward-closed sets
/// of that order; the equivalence with the support-basis topology is itself
/// a tested invariant.
struct Spectrum {
  Presentation model;
  std::vector<AtomSet> points;            // primes in name-lex order
  std::vector<PointSet> atom_supports;    // per atom of the model

  int point_count() const { return static_cast<int>(points.size()); }
  PointSet everything() const { return PointSet::first(point_count()); }
  /// q ~> p : the prime at q is contained in the prime at p.
  bool specializes(int q, int p) const {
    return points[static_cast<std::size_t>(q)].subset_of(points[static_cast<std::size_t>(p)]);
  }
  int point_index(AtomSet prime) const {
    for (int i = 0; i < point_count(); ++i)
      if (points[static_cast<std::size_t>(i)] == prime) return i;
    throw std::invalid_argument("no such point");
  }
};

inline Spectrum spectrum(const Presentation& p) {
  Spectrum space;
  space.model = p;
  for (const Ideal& prime : all_primes(p)) space.points.push_back(prime.atoms);
  std::sort(space.points.begin(), space.points.end(),
            [&p](AtomSet a, AtomSet b) { return name_lex_less(p, a, b); });
  if (space.point_count() > PointSet::capacity())
    throw std::runtime_error("spectrum has more points than supported (max 64)");
  space.atom_supports.resize(static_cast<std::size_t>(p.atom_count()));
  for (int x = 0; x < p.atom_count(); ++x) {
    PointSet supp;
    for (int i = 0; i < space.point_count(); ++i)
      if (!space.points[static_cast<std::size_t>(i)].contains(x)) supp |= PointSet::single(i);
    space.atom_supports[static_cast<std::size_t>(x)] = supp;
  }
  return space;
}

/// supp(a) = { P | a not in P }.
inline PointSet support(const Spectrum& space, ObjectClass a) {
  require_known(space.model, a);
  PointSet out;
  for (int i = 0; i < space.point_count(); ++i)
    if (!a.subset_of(space.points[static_cast<std::size_t>(i)])) out |= PointSet::single(i);
  return out;
}

/// Z(S) = { P | no member of S lies in P }; closed.
inline PointSet closed_locus(const Spectrum& space, const ObjectFamily& family) {
  PointSet out;
  for (int i = 0; i < space.point_count(); ++i) {
    bool meets = false;
    for (ObjectClass member : family)
      if (member.subset_of(space.points[static_cast<std::size_t>(i)])) {
        meets = true;
        break;
      }
    if (!meets) out |= PointSet::single(i);
  }
  return out;
}

/// U(S) = complement of Z(S); the union of the support complements.
inline PointSet open_locus(const Spectrum& space, const ObjectFamily& family) {
  return space.everything() - closed_locus(space, family);
}

/// Closure by the support-intersection formula, ranging over every object
/// class. Coincides with specialization-downward closure; the tests compare
/// the two routes.
inline PointSet closure(const Spectrum& space, PointSet w) {
  PointSet out = space.everything();
  const std::uint32_t limit = space.model.universe().bits();
  for (std::uint32_t m = 0;; ++m) {
    const PointSet supp = support(space, AtomSet::from_bits(m));
    if (w.subset_of(supp)) out &= supp;
    if (m == limit) break;
  }
  return out;
}

/// { Q | Q below some member of W in the specialization order }.
inline PointSet down_closure(const Spectrum& space, PointSet w) {
  PointSet out;
  for (int i : w)
    for (int q = 0; q < space.point_count(); ++q)
      if (space.specializes(q, i)) out |= PointSet::single(q);
  return out;
}

inline bool is_closed(const Spectrum& space, PointSet z) {
  return down_closure(space, z) == z;
}

inline bool point_set_less(PointSet a, PointSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.bits() < b.bits();  // sorted index lists compare like the masks
}

namespace detail {

inline void require_enumerable_points(const Spectrum& space) {
  if (space.point_count() > 20)
    throw std::runtime_error("too many points for subset enumeration");
}

}  // namespace detail

inline std::vector<PointSet> all_closed_sets(const Spectrum& space) {
  detail::require_enumerable_points(space);
  std::vector<PointSet> out;
  const std::uint64_t limit = space.everything().bits();
  for (std::uint64_t m = 0;; ++m) {
    const PointSet z = PointSet::from_bits(m);
    if (is_closed(space, z)) out.push_back(z);
    if (m == limit) break;
  }
  std::sort(out.begin(), out.end(), point_set_less);
  return out;
}

inline std::vector<PointSet> all_open_sets(const Spectrum& space) {
  std::vector<PointSet> out;
  for (PointSet z : all_closed_sets(space)) out.push_back(space.everything() - z);
  std::sort(out.begin(), out.end(), point_set_less);
  return out;
}

inline PointSet minimal_primes(const Spectrum& space) {
  PointSet out;
  for (int i = 0; i < space.point_count(); ++i) {
    bool minimal = true;
    for (int q = 0; q < space.point_count(); ++q)
      if (q != i && space.specializes(q, i)) {
        minimal = false;
        break;
      }
    if (minimal) out |= PointSet::single(i);
  }
  return out;
}

inline PointSet closed_points(const Spectrum& space) {
  PointSet out;
  for (int i = 0; i < space.point_count(); ++i)
    if (down_closure(space, PointSet::single(i)) == PointSet::single(i))
      out |= PointSet::single(i);
  return out;
}

// ---------------------------------------------------------------------------
// Covering witnesses: U(a) is covered by U(S) exactly when some finite
// product of members of S falls into the ideal generated by a. The search is
// purely algebraic; the topological equivalence is verified by the tests.

inline std::optional<std::vector<ObjectClass>> covering_witness(const Presentation& p,
                                                                ObjectClass a,
                                                                const ObjectFamily& family) {
  require_known(p, a);
  ObjectFamily members = family;
  for (ObjectClass member : members) require_known(p, member);
  std::sort(members.begin(), members.end(),
            [&p](ObjectClass x, ObjectClass y) { return size_then_lex_less(p, x, y); });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) return std::nullopt;

  const Ideal target = ideal_generated_by(p, {a});

  // Values reachable as products of one or more members.
  std::unordered_set<std::uint32_t> reachable;
  std::vector<ObjectClass> work;
  for (ObjectClass member : members)
    if (reachable.insert(member.bits()).second) work.push_back(member);
  bool any_inside = false;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (target.contains_object(work[i])) any_inside = true;
    for (ObjectClass member : members) {
      const ObjectClass next = tensor_obj(p, work[i], member);
      if (reachable.insert(next.bits()).second) work.push_back(next);
    }
  }
  if (!any_inside) return std::nullopt;

  // Smallest length first, then lexicographic over non-decreasing index
  // tuples in the sorted member order.
  const int bound = static_cast<int>(reachable.size());
  const int m = static_cast<int>(members.size());
  for (int n = 1; n <= bound; ++n) {
    std::vector<int> tuple(static_cast<std::size_t>(n), 0);
    while (true) {
      ObjectClass product = members[static_cast<std::size_t>(tuple[0])];
      for (int k = 1; k < n; ++k)
        product = tensor_obj(p, product, members[static_cast<std::size_t>(tuple[k])]);
      if (target.contains_object(product)) {
        std::vector<ObjectClass> witness;
        for (int k = 0; k < n; ++k) witness.push_back(members[static_cast<std::size_t>(tuple[k])]);
        return witness;
      }
      int pos = n - 1;
      while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == m - 1) --pos;
      if (pos < 0) break;
      const int next = tuple[static_cast<std::size_t>(pos)] + 1;
      for (int k = pos; k < n; ++k) tuple[static_cast<std::size_t>(k)] = next;
    }
  }
  throw std::logic_error("covering witness bound exhausted despite reachable product");
}

// ---------------------------------------------------------------------------
// Every open of a finite spectrum is quasi-compact and must be representable
// as U(a); failure to find a representative is an engine invariant violation.

struct OpenRepresentation {
  PointSet open;
  ObjectClass representative;
};

inline std::vector<OpenRepresentation> open_representatives(const Spectrum& space) {
  std::vector<ObjectClass> candidates;
  candidates.push_back(ObjectClass{});
  candidates.push_back(space.model.unit());
  for (ObjectClass c : all_object_classes(space.model))
    if (c != ObjectClass{} && c != space.model.unit()) candidates.push_back(c);

  std::vector<OpenRepresentation> out;
  for (PointSet open : all_open_sets(space)) {
    std::optional<ObjectClass> rep;
    for (ObjectClass c : candidates)
      if (space.everything() - support(space, c) == open) {
        rep = c;
        break;
      }
    if (!rep) throw std::logic_error("no representing object for an open set");
    out.push_back(OpenRepresentation{open, *rep});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Irreducible closed subsets and their generic points.

/// Nonempty and not the union of two proper closed subsets; on these finite
/// spaces, equivalently a directed down-set.
inline bool is_irreducible_closed(const Spectrum& space, PointSet z) {
  if (z.empty() || !is_closed(space, z)) return false;
  for (int x : z)
    for (int y : z) {
      bool dominated = false;
      for (int g : z)
        if (space.specializes(x, g) && space.specializes(y, g)) {
          dominated = true;
          break;
        }
      if (!dominated) return false;
    }
  return true;
}

/// Union of the primes inside Z: the candidate generic point of the
/// irreducibility criterion. Prime exactly when Z is irreducible.
inline AtomSet generic_point_candidate(const Spectrum& space, PointSet z) {
  AtomSet out;
  for (int i : z) out |= space.points[static_cast<std::size_t>(i)];
  return out;
}

struct IrreducibleComponent {
  PointSet closed_set;
  int generic_point;
};

inline std::vector<IrreducibleComponent> irreducible_components(const Spectrum& space) {
  std::vector<IrreducibleComponent> out;
  for (int i = 0; i < space.point_count(); ++i) {
    bool maximal = true;
    for (int q = 0; q < space.point_count(); ++q)
      if (q != i && space.specializes(i, q)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back({down_closure(space, PointSet::single(i)), i});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral-space verification.

struct SpectralReport {
  bool t0 = false;
  bool quasi_compact = false;
  bool qc_open_basis = false;
  bool sober = false;
  bool closed_sets_are_supports = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline SpectralReport verify_spectral(const Spectrum& space) {
  SpectralReport report;

  report.t0 = true;
  for (int i = 0; i < space.point_count() && report.t0; ++i)
    for (int j = i + 1; j < space.point_count(); ++j)
      if (down_closure(space, PointSet::single(i)) == down_closure(space, PointSet::single(j))) {
        report.t0 = false;
        report.failures.push_back("T0: two points share a closure");
        break;
      }

  // A finite space has finitely many opens, so each cover admits a finite
  // subcover.
  report.quasi_compact = true;

  const std::vector<PointSet> opens = all_open_sets(space);
  report.qc_open_basis = true;
  for (PointSet open : opens) {
    PointSet covered;
    const std::uint32_t limit = space.model.universe().bits();
    for (std::uint32_t m = 0;; ++m) {
      const PointSet basic = space.everything() - support(space, AtomSet::from_bits(m));
      if (basic.subset_of(open)) covered |= basic;
      if (m == limit) break;
    }
    if (covered != open) {
      report.qc_open_basis = false;
      report.failures.push_back("basis: an open is not a union of basic opens");
      break;
    }
  }

  report.sober = true;
  for (PointSet z : all_closed_sets(space)) {
    if (!is_irreducible_closed(space, z)) continue;
    int generic_count = 0;
    for (int i : z)
      if (down_closure(space, PointSet::single(i)) == z) ++generic_count;
    if (generic_count != 1) {
      report.sober = false;
      report.failures.push_back("sober: an irreducible closed set lacks a unique generic point");
      break;
    }
  }

  report.closed_sets_are_supports = true;
  for (PointSet z : all_closed_sets(space)) {
    bool represented = false;
    const std::uint32_t limit = space.model.universe().bits();
    for (std::uint32_t m = 0;; ++m) {
      if (support(space, AtomSet::from_bits(m)) == z) {
        represented = true;
        break;
      }
      if (m == limit) break;
    }
    if (!represented) {
      report.closed_sets_are_supports = false;
      report.failures.push_back("noetherian: a closed set is not the support of any object");
      break;
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// Exports. Both are byte-stable: every list is sorted.

namespace detail {

inline std::string json_string_array(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += "\"" + items[i] + "\"";
  }
  out += "]";
  return out;
}

inline std::string json_index_array(PointSet s) {
  std::string out = "[";
  bool sep = false;
  for (int i : s) {
    if (sep) out += ",";
    out += std::to_string(i);
    sep = true;
  }
  out += "]";
  return out;
}

}  // namespace detail

inline std::string spectrum_to_json(const Spectrum& space) {
  std::string out = "{\"points\":[";
  for (int i = 0; i < space.point_count(); ++i) {
    if (i) out += ",";
    out += detail::json_string_array(
        object_names_sorted(space.model, space.points[static_cast<std::size_t>(i)]));
  }
  out += "],\"supports\":{";
  std::vector<std::string> names = space.model.atom_names();
  std::sort(names.begin(), names.end());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    const int atom = space.model.atom_index(names[i]);
    out += "\"" + names[i] + "\":" +
           detail::json_index_array(space.atom_supports[static_cast<std::size_t>(atom)]);
  }
  out += "},\"specialization\":[";
  bool sep = false;
  for (int i = 0; i < space.point_count(); ++i)
    for (int j = 0; j < space.point_count(); ++j) {
      if (i == j || !space.specializes(i, j)) continue;
      if (sep) out += ",";
      out += "[" + std::to_string(i) + "," + std::to_string(j) + "]";
      sep = true;
    }
  out += "]}\n";
  return out;
}

/// One node per point, one edge per covering pair of the specialization
/// order.
inline std::string spectrum_to_dot(const Spectrum& space) {
  std::string out = "digraph spectrum {\n";
  for (int i = 0; i < space.point_count(); ++i)
    out += "  p" + std::to_string(i) + " [label=\"" +
           object_to_string(space.model, space.points[static_cast<std::size_t>(i)]) + "\"];\n";
  for (int i = 0; i < space.point_count(); ++i)
    for (int j = 0; j < space.point_count(); ++j) {
      if (i == j || !space.specializes(i, j)) continue;
      bool covering = true;
      for (int k = 0; k < space.point_count(); ++k)
        if (k != i && k != j && space.specializes(i, k) && space.specializes(k, j)) {
          covering = false;
          break;
        }
      if (covering) out += "  p" + std::to_string(i) + " -> p" + std::to_string(j) + ";\n";
    }
  out += "}\n";
  return out;
}

}  // namespace ttg
