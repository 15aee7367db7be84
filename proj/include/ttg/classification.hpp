#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectrum.hpp"

namespace ttg {

/// Union of the member supports; cross-checked against the direct
/// description { P | some member outside P }.
inline PointSet family_support(const Spectrum& space, const ObjectFamily& family) {
  PointSet by_union;
  for (ObjectClass member : family) by_union |= support(space, member);
  PointSet direct;
  for (int i = 0; i < space.point_count(); ++i) {
    for (ObjectClass member : family)
      if (!member.subset_of(space.points[static_cast<std::size_t>(i)])) {
        direct |= PointSet::single(i);
        break;
      }
  }
  if (by_union != direct)
    throw std::logic_error("family support mismatch between union and direct forms");
  return by_union;
}

inline ObjectFamily ideal_members(const Ideal& ideal) {
  ObjectFamily out;
  for (int x : ideal.atoms) out.push_back(AtomSet::single(x));
  return out;
}

/// K_Y: atoms supported inside Y; verified equal to the intersection of the
/// primes outside Y.
inline Ideal ideal_supported_on(const Spectrum& space, PointSet y) {
  AtomSet by_support;
  for (int x = 0; x < space.model.atom_count(); ++x)
    if (space.atom_supports[static_cast<std::size_t>(x)].subset_of(y))
      by_support |= AtomSet::single(x);

  AtomSet by_primes = space.model.universe();
  for (int i = 0; i < space.point_count(); ++i)
    if (!y.contains(i)) by_primes &= space.points[static_cast<std::size_t>(i)];

  if (by_support != by_primes)
    throw std::logic_error("supported-on mismatch between support and prime-intersection forms");
  return Ideal{by_support};
}

/// All specialization-closed subsets (downward closed in the order), sorted
/// by cardinality then point list.
inline std::vector<PointSet> specialization_closed_subsets(const Spectrum& space) {
  return all_closed_sets(space);  // on a finite space these coincide
}

struct ClassificationPair {
  PointSet subset;  // Y
  Ideal ideal;      // K_Y
};

struct ClassificationReport {
  Spectrum space;
  std::vector<Ideal> radical_ideals;
  std::vector<PointSet> closed_subsets;
  std::vector<ClassificationPair> forward;                 // Y -> K_Y
  std::vector<std::pair<Ideal, PointSet>> backward;        // J -> supp(J)
  bool roundtrip_ok = false;
  std::vector<std::string> failures;
};

inline ClassificationReport verify_classification(const Presentation& p) {
  ClassificationReport report;
  report.space = spectrum(p);
  const Spectrum& space = report.space;

  const std::vector<Ideal> ideals = all_ideals(p);
  const std::vector<Ideal> primes = all_primes(p);
  for (const Ideal& ideal : ideals)
    if (radical(p, ideal, primes) == ideal) report.radical_ideals.push_back(ideal);
  report.closed_subsets = specialization_closed_subsets(space);

  auto fail = [&report](std::string message) {
    report.failures.push_back(std::move(message));
  };

  for (PointSet y : report.closed_subsets) {
    const Ideal k_y = ideal_supported_on(space, y);
    report.forward.push_back({y, k_y});
    if (!is_thick_tensor_ideal(p, k_y.atoms))
      fail("K_Y is not a thick tensor ideal for Y=" + detail::json_index_array(y));
    if (!(radical(p, k_y, primes) == k_y))
      fail("K_Y is not radical for Y=" + detail::json_index_array(y));
    if (family_support(space, ideal_members(k_y)) != y)
      fail("supp(K_Y) differs from Y=" + detail::json_index_array(y));
  }

  for (const Ideal& ideal : report.radical_ideals) {
    const PointSet supp = family_support(space, ideal_members(ideal));
    report.backward.push_back({ideal, supp});
    if (!is_closed(space, supp))
      fail("supp(J) is not specialization closed for J=" + object_to_string(p, ideal.atoms));
    if (!(ideal_supported_on(space, supp) == ideal))
      fail("K_supp(J) differs from J=" + object_to_string(p, ideal.atoms));
  }

  // Both maps must be monotone.
  for (const ClassificationPair& lhs : report.forward)
    for (const ClassificationPair& rhs : report.forward)
      if (lhs.subset.subset_of(rhs.subset) && !lhs.ideal.atoms.subset_of(rhs.ideal.atoms))
        fail("forward map is not monotone");
  for (const auto& lhs : report.backward)
    for (const auto& rhs : report.backward)
      if (lhs.first.atoms.subset_of(rhs.first.atoms) && !lhs.second.subset_of(rhs.second))
        fail("backward map is not monotone");

  if (report.forward.size() != report.backward.size())
    fail("classification is not a bijection: " + std::to_string(report.forward.size()) +
         " subsets vs " + std::to_string(report.backward.size()) + " radical ideals");

  report.roundtrip_ok = report.failures.empty();
  return report;
}

/// Every thick tensor ideal is radical exactly when each atom lies in the
/// ideal generated by its square; the equivalence is re-checked against the
/// full enumeration.
inline bool radical_criterion(const Presentation& p) {
  bool criterion = true;
  for (int x = 0; x < p.atom_count(); ++x) {
    const ObjectClass square = tensor_obj(p, AtomSet::single(x), AtomSet::single(x));
    if (!ideal_generated_by(p, {square}).atoms.contains(x)) {
      criterion = false;
      break;
    }
  }
  const std::vector<Ideal> primes = all_primes(p);
  bool all_radical = true;
  for (const Ideal& ideal : all_ideals(p))
    if (!(radical(p, ideal, primes) == ideal)) {
      all_radical = false;
      break;
    }
  if (criterion != all_radical)
    throw std::logic_error("radical criterion disagrees with the ideal enumeration");
  return criterion;
}

inline std::string classification_to_json(const ClassificationReport& report) {
  const Presentation& p = report.space.model;
  std::string out = "{\"points\":[";
  for (int i = 0; i < report.space.point_count(); ++i) {
    if (i) out += ",";
    out += detail::json_string_array(
        object_names_sorted(p, report.space.points[static_cast<std::size_t>(i)]));
  }
  out += "],\"classification\":[";
  for (std::size_t i = 0; i < report.forward.size(); ++i) {
    if (i) out += ",";
    out += "{\"Y\":" + detail::json_index_array(report.forward[i].subset) +
           ",\"K_Y\":" + detail::json_string_array(object_names_sorted(p, report.forward[i].ideal.atoms)) +
           "}";
  }
  out += "],\"roundtrip_ok\":";
  out += report.roundtrip_ok ? "true" : "false";
  out += "}\n";
  return out;
}

}  // namespace ttg
