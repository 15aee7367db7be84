#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "classification.hpp"
#include "spectrum.hpp"

namespace ttg {

/// A finite topological space given by the closure of each point. Closed
/// sets are the unions of point closures.
struct FiniteSpace {
  std::vector<std::string> point_names;
  std::vector<PointSet> point_closures;

  int point_count() const { return static_cast<int>(point_names.size()); }
  PointSet everything() const { return PointSet::first(point_count()); }

  int point_index(std::string_view name) const {
    for (int i = 0; i < point_count(); ++i)
      if (point_names[static_cast<std::size_t>(i)] == name) return i;
    throw std::invalid_argument("unknown point '" + std::string(name) + "'");
  }

  PointSet close(PointSet s) const {
    PointSet out;
    for (int i : s) out |= point_closures[static_cast<std::size_t>(i)];
    return out;
  }
  bool is_closed(PointSet s) const { return close(s) == s; }

  std::vector<PointSet> closed_sets() const {
    if (point_count() > 20) throw std::runtime_error("too many points for subset enumeration");
    std::vector<PointSet> out;
    const std::uint64_t limit = everything().bits();
    for (std::uint64_t m = 0;; ++m) {
      const PointSet s = PointSet::from_bits(m);
      if (is_closed(s)) out.push_back(s);
      if (m == limit) break;
    }
    std::sort(out.begin(), out.end(), point_set_less);
    return out;
  }
};

/// A support datum (X, sigma): closed subsets of X assigned to atoms and
/// extended to object classes by union.
struct SupportData {
  FiniteSpace space;
  std::vector<PointSet> sigma;  // per atom of the model
};

inline PointSet sigma_obj(const SupportData& sd, ObjectClass a) {
  PointSet out;
  for (int x : a) out |= sd.sigma[static_cast<std::size_t>(x)];
  return out;
}

/// The spectrum viewed as a finite space carrying its own support datum.
inline FiniteSpace spectrum_as_space(const Spectrum& space) {
  FiniteSpace out;
  for (int i = 0; i < space.point_count(); ++i) {
    out.point_names.push_back(object_to_string(space.model, space.points[static_cast<std::size_t>(i)]));
    out.point_closures.push_back(down_closure(space, PointSet::single(i)));
  }
  return out;
}

inline SupportData spectrum_support_data(const Spectrum& space) {
  return SupportData{spectrum_as_space(space), space.atom_supports};
}

struct SupportDataReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the space structure, closedness of every sigma value and the five
/// support-data axioms, the triangle axiom ranging over the full generated
/// family and the tensor axiom over all object-class pairs.
inline SupportDataReport verify_support_data(const Presentation& p, const SupportData& sd) {
  SupportDataReport report;
  auto violation = [&report](std::string rule, std::string subject, std::string message) {
    report.violations.push_back({std::move(rule), std::move(subject), std::move(message)});
  };

  const FiniteSpace& x = sd.space;
  for (int i = 0; i < x.point_count(); ++i) {
    const PointSet cl = x.point_closures[static_cast<std::size_t>(i)];
    if (!cl.contains(i))
      violation("space closure", x.point_names[static_cast<std::size_t>(i)],
                "closure does not contain the point itself");
    for (int j : cl)
      if (!x.point_closures[static_cast<std::size_t>(j)].subset_of(cl))
        violation("space closure", x.point_names[static_cast<std::size_t>(i)],
                  "closure is not transitive through " + x.point_names[static_cast<std::size_t>(j)]);
  }
  if (static_cast<int>(sd.sigma.size()) != p.atom_count()) {
    violation("sigma totality", "-", "sigma must assign a closed set to every atom");
    return report;
  }
  for (int a = 0; a < p.atom_count(); ++a) {
    const PointSet s = sd.sigma[static_cast<std::size_t>(a)];
    if (!s.subset_of(x.everything()))
      violation("sigma range", p.atom_name(a), "sigma references unknown points");
    else if (!x.is_closed(s))
      violation("SD closedness", p.atom_name(a),
                "sigma(" + p.atom_name(a) + ") is not a closed subset");
  }
  if (!report.ok()) return report;  // axioms assume well-formed data

  // SD1. sigma(0) is empty by the union extension; sigma(1) must be all of X.
  if (sigma_obj(sd, p.unit()) != x.everything())
    violation("SD1", "unit", "sigma(unit) is not the whole space");

  // SD2 holds by construction; re-checked as a consistency identity.
  const std::vector<ObjectClass> classes = all_object_classes(p);
  for (ObjectClass a : classes)
    for (ObjectClass b : classes)
      if (sigma_obj(sd, direct_sum(a, b)) != (sigma_obj(sd, a) | sigma_obj(sd, b))) {
        violation("SD2", object_to_string(p, a) + "," + object_to_string(p, b),
                  "sigma is not additive over direct sums");
        break;
      }

  // SD3. sigma(Ta) = sigma(a).
  for (ObjectClass a : classes)
    if (sigma_obj(sd, shift_obj(p, a)) != sigma_obj(sd, a))
      violation("SD3", object_to_string(p, a),
                "sigma(T" + object_to_string(p, a) + ") differs from sigma" +
                    object_to_string(p, a));

  // SD4. sigma(a) inside sigma(b) united with sigma(c), over every triangle.
  for (const Triangle& t : all_triangles(p))
    if (!sigma_obj(sd, t.a).subset_of(sigma_obj(sd, t.b) | sigma_obj(sd, t.c))) {
      violation("SD4",
                object_to_string(p, t.a) + ";" + object_to_string(p, t.b) + ";" +
                    object_to_string(p, t.c),
                "triangle support bound fails");
      break;
    }

  // SD5. sigma(a (x) b) = sigma(a) intersect sigma(b), all class pairs.
  for (ObjectClass a : classes)
    for (ObjectClass b : classes)
      if (sigma_obj(sd, tensor_obj(p, a, b)) != (sigma_obj(sd, a) & sigma_obj(sd, b))) {
        violation("SD5", object_to_string(p, a) + "," + object_to_string(p, b),
                  "sigma(" + object_to_string(p, a) + " (x) " + object_to_string(p, b) +
                      ") is not the intersection");
        return report;
      }

  return report;
}

/// { a | sigma(a) inside Y }: a thick tensor ideal, re-checked on return.
inline Ideal support_data_ideal(const Presentation& p, const SupportData& sd, PointSet y) {
  AtomSet atoms;
  for (int x = 0; x < p.atom_count(); ++x)
    if (sd.sigma[static_cast<std::size_t>(x)].subset_of(y)) atoms |= AtomSet::single(x);
  if (!is_thick_tensor_ideal(p, atoms))
    throw std::logic_error("support-data ideal is not rule closed");
  return Ideal{atoms};
}

// ---------------------------------------------------------------------------
// The universal map into the spectrum.

struct UniversalMap {
  Spectrum codomain;
  std::vector<int> point_map;  // X point index -> spectrum point index
};

/// f(x) = { a | x outside sigma(a) }. Verifies, per call: every value is a
/// prime, the map is continuous, sigma(a) = f^{-1}(supp(a)) for every class,
/// and f is the unique such map (exhaustively for small spaces, by the
/// closure certificate in general).
inline UniversalMap universal_map(const Presentation& p, const SupportData& sd) {
  if (!verify_support_data(p, sd).ok())
    throw std::invalid_argument("not a support datum");

  UniversalMap result;
  result.codomain = spectrum(p);
  const Spectrum& spc = result.codomain;
  const FiniteSpace& x = sd.space;

  for (int i = 0; i < x.point_count(); ++i) {
    AtomSet prime;
    for (int a = 0; a < p.atom_count(); ++a)
      if (!sd.sigma[static_cast<std::size_t>(a)].contains(i)) prime |= AtomSet::single(a);
    if (!is_thick_tensor_ideal(p, prime) || !is_prime(p, Ideal{prime}))
      throw std::logic_error("universal map produced a non-prime value");
    result.point_map.push_back(spc.point_index(prime));
  }

  auto preimage = [&](PointSet target) {
    PointSet out;
    for (int i = 0; i < x.point_count(); ++i)
      if (target.contains(result.point_map[static_cast<std::size_t>(i)]))
        out |= PointSet::single(i);
    return out;
  };

  // sigma(a) = f^{-1}(supp(a)) for every class; with sigma closed this also
  // gives continuity on the closed basis.
  for (ObjectClass a : all_object_classes(p))
    if (preimage(support(spc, a)) != sigma_obj(sd, a))
      throw std::logic_error("universal map does not pull supports back to sigma");
  for (int atom = 0; atom < p.atom_count(); ++atom)
    if (!x.is_closed(preimage(spc.atom_supports[static_cast<std::size_t>(atom)])))
      throw std::logic_error("universal map is not continuous");

  // Uniqueness certificate: f(x) is the only point whose closure equals the
  // intersection of the supports containing x's sigma classes.
  for (int i = 0; i < x.point_count(); ++i) {
    PointSet intersection = spc.everything();
    const std::uint32_t limit = p.universe().bits();
    for (std::uint32_t m = 0;; ++m) {
      const ObjectClass a = AtomSet::from_bits(m);
      if (sigma_obj(sd, a).contains(i)) intersection &= support(spc, a);
      if (m == limit) break;
    }
    int matches = 0;
    int matched = -1;
    for (int q = 0; q < spc.point_count(); ++q)
      if (down_closure(spc, PointSet::single(q)) == intersection) {
        ++matches;
        matched = q;
      }
    if (matches != 1 || matched != result.point_map[static_cast<std::size_t>(i)])
      throw std::logic_error("universal map closure certificate failed");
  }

  // Exhaustive uniqueness for small instances.
  if (x.point_count() <= 4 && spc.point_count() <= 4 && x.point_count() > 0 &&
      spc.point_count() > 0) {
    const std::vector<ObjectClass> classes = all_object_classes(p);
    std::vector<int> g(static_cast<std::size_t>(x.point_count()), 0);
    int satisfying = 0;
    while (true) {
      bool good = true;
      for (ObjectClass a : classes) {
        const PointSet supp = support(spc, a);
        PointSet pre;
        for (int i = 0; i < x.point_count(); ++i)
          if (supp.contains(g[static_cast<std::size_t>(i)])) pre |= PointSet::single(i);
        if (pre != sigma_obj(sd, a)) {
          good = false;
          break;
        }
      }
      if (good) {
        ++satisfying;
        if (g != result.point_map) throw std::logic_error("universal map is not unique");
      }
      int pos = x.point_count() - 1;
      while (pos >= 0 && g[static_cast<std::size_t>(pos)] == spc.point_count() - 1) {
        g[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++g[static_cast<std::size_t>(pos)];
    }
    if (satisfying != 1) throw std::logic_error("universal map uniqueness count failed");
  }

  return result;
}

// ---------------------------------------------------------------------------
// Classifying support data.

inline std::vector<PointSet> specialization_closed_subsets(const FiniteSpace& x) {
  if (x.point_count() > 20) throw std::runtime_error("too many points for subset enumeration");
  std::vector<PointSet> out;
  const std::uint64_t limit = x.everything().bits();
  for (std::uint64_t m = 0;; ++m) {
    const PointSet s = PointSet::from_bits(m);
    if (x.close(s) == s) out.push_back(s);
    if (m == limit) break;
  }
  std::sort(out.begin(), out.end(), point_set_less);
  return out;
}

/// Condition (a): noetherian (finite) with unique generic points for
/// irreducible closed subsets. Condition (b): Y -> { a | sigma(a) in Y } is
/// a bijection onto the radical ideals with inverse J -> sigma(J).
inline bool is_classifying(const Presentation& p, const SupportData& sd) {
  if (!verify_support_data(p, sd).ok())
    throw std::invalid_argument("not a support datum");
  const FiniteSpace& x = sd.space;

  for (PointSet z : x.closed_sets()) {
    if (z.empty()) continue;
    bool irreducible = true;
    for (int a : z) {
      for (int b : z) {
        bool dominated = false;
        for (int g : z) {
          const PointSet cl = x.point_closures[static_cast<std::size_t>(g)];
          if (cl.contains(a) && cl.contains(b)) {
            dominated = true;
            break;
          }
        }
        if (!dominated) {
          irreducible = false;
          break;
        }
      }
      if (!irreducible) break;
    }
    if (!irreducible) continue;
    int generic_count = 0;
    for (int g : z)
      if (x.point_closures[static_cast<std::size_t>(g)] == z) ++generic_count;
    if (generic_count != 1) return false;
  }

  const std::vector<Ideal> primes = all_primes(p);
  std::vector<Ideal> radical_ideals;
  for (const Ideal& ideal : all_ideals(p))
    if (radical(p, ideal, primes) == ideal) radical_ideals.push_back(ideal);

  const std::vector<PointSet> subsets = specialization_closed_subsets(x);
  if (subsets.size() != radical_ideals.size()) return false;

  for (PointSet y : subsets) {
    AtomSet atoms;
    for (int a = 0; a < p.atom_count(); ++a)
      if (sd.sigma[static_cast<std::size_t>(a)].subset_of(y)) atoms |= AtomSet::single(a);
    const Ideal theta{atoms};
    if (std::find(radical_ideals.begin(), radical_ideals.end(), theta) == radical_ideals.end())
      return false;
    if (sigma_obj(sd, theta.atoms) != y) return false;  // sigma(theta(Y)) = Y
  }
  for (const Ideal& ideal : radical_ideals) {
    const PointSet y = sigma_obj(sd, ideal.atoms);
    if (x.close(y) != y) return false;
    AtomSet atoms;
    for (int a = 0; a < p.atom_count(); ++a)
      if (sd.sigma[static_cast<std::size_t>(a)].subset_of(y)) atoms |= AtomSet::single(a);
    if (!(Ideal{atoms} == ideal)) return false;  // theta(sigma(J)) = J
  }
  return true;
}

struct HomeoCheck {
  bool homeomorphism = false;
  UniversalMap map;
  std::vector<std::string> failures;
};

/// For classifying support data the universal map must be a homeomorphism;
/// verified explicitly: bijective and a closed map.
inline HomeoCheck classifying_homeo_check(const Presentation& p, const SupportData& sd) {
  if (!is_classifying(p, sd)) throw std::invalid_argument("support datum is not classifying");
  HomeoCheck check;
  check.map = universal_map(p, sd);
  const Spectrum& spc = check.map.codomain;
  const FiniteSpace& x = sd.space;

  if (x.point_count() != spc.point_count())
    check.failures.push_back("point counts differ");
  std::vector<bool> hit(static_cast<std::size_t>(spc.point_count()), false);
  for (int image : check.map.point_map) hit[static_cast<std::size_t>(image)] = true;
  for (bool h : hit)
    if (!h) check.failures.push_back("map is not surjective");
  for (int i = 0; i < x.point_count(); ++i)
    for (int j = i + 1; j < x.point_count(); ++j)
      if (check.map.point_map[static_cast<std::size_t>(i)] ==
          check.map.point_map[static_cast<std::size_t>(j)])
        check.failures.push_back("map is not injective");

  for (PointSet z : x.closed_sets()) {
    PointSet image;
    for (int i : z) image |= PointSet::single(check.map.point_map[static_cast<std::size_t>(i)]);
    if (!is_closed(spc, image)) {
      check.failures.push_back("image of a closed set is not closed");
      break;
    }
  }
  check.homeomorphism = check.failures.empty();
  return check;
}

// ---------------------------------------------------------------------------
// Tensor triangulated functors between presentations.

struct ModelFunctor {
  Presentation source;
  Presentation target;
  std::vector<ObjectClass> atom_images;  // per source atom, a target class

  ObjectClass map_object(ObjectClass a) const {
    ObjectClass out;
    for (int x : a) out |= atom_images[static_cast<std::size_t>(x)];
    return out;
  }
};

struct FunctorReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline FunctorReport validate_functor(const ModelFunctor& f) {
  FunctorReport report;
  auto violation = [&report](std::string rule, std::string subject, std::string message) {
    report.violations.push_back({std::move(rule), std::move(subject), std::move(message)});
  };
  const Presentation& k = f.source;
  const Presentation& l = f.target;

  if (static_cast<int>(f.atom_images.size()) != k.atom_count()) {
    violation("functor totality", "-", "an image class is required for every source atom");
    return report;
  }
  for (ObjectClass image : f.atom_images)
    if (!image.subset_of(l.universe())) {
      violation("functor range", "-", "an image class references unknown target atoms");
      return report;
    }

  if (f.map_object(k.unit()) != l.unit())
    violation("unit", "-",
              "F(unit) = " + object_to_string(l, f.map_object(k.unit())) + ", expected " +
                  object_to_string(l, l.unit()));
  for (int x = 0; x < k.atom_count(); ++x)
    for (int y = x; y < k.atom_count(); ++y) {
      const ObjectClass lhs = f.map_object(k.tensor(x, y));
      const ObjectClass rhs = tensor_obj(l, f.atom_images[static_cast<std::size_t>(x)],
                                         f.atom_images[static_cast<std::size_t>(y)]);
      if (lhs != rhs)
        violation("tensor", "(" + k.atom_name(x) + "," + k.atom_name(y) + ")",
                  "F(" + k.atom_name(x) + "*" + k.atom_name(y) + ") = " + object_to_string(l, lhs) +
                      " but F(" + k.atom_name(x) + ")*F(" + k.atom_name(y) + ") = " +
                      object_to_string(l, rhs));
    }
  for (int x = 0; x < k.atom_count(); ++x) {
    const ObjectClass lhs = f.map_object(k.shift(x));
    const ObjectClass rhs = shift_obj(l, f.atom_images[static_cast<std::size_t>(x)]);
    if (lhs != rhs)
      violation("shift", k.atom_name(x),
                "F(T" + k.atom_name(x) + ") = " + object_to_string(l, lhs) + " but TF(" +
                    k.atom_name(x) + ") = " + object_to_string(l, rhs));
  }
  if (!report.ok()) return report;

  std::unordered_set<std::uint64_t> target_triangles;
  for (const Triangle& t : all_triangles(l)) target_triangles.insert(detail::pack_triangle(t));
  for (const Triangle& t : all_triangles(k)) {
    const Triangle image{f.map_object(t.a), f.map_object(t.b), f.map_object(t.c)};
    if (!target_triangles.count(detail::pack_triangle(image))) {
      violation("triangles",
                object_to_string(k, t.a) + ";" + object_to_string(k, t.b) + ";" +
                    object_to_string(k, t.c),
                "image triangle is not distinguished in the target");
      break;
    }
  }
  return report;
}

inline void require_valid_functor(const ModelFunctor& f) {
  const FunctorReport report = validate_functor(f);
  if (!report.ok())
    throw std::invalid_argument("not a tensor triangulated functor: " +
                                report.violations.front().rule + " " +
                                report.violations.front().message);
}

/// The induced map on spectra, Q -> F^{-1}(Q), from the target spectrum to
/// the source spectrum. Verified per call: values are primes and pulling a
/// support back along the map lands on the support of the image.
struct SpectrumMap {
  Spectrum domain;    // spectrum of the functor's target
  Spectrum codomain;  // spectrum of the functor's source
  std::vector<int> point_map;
};

inline SpectrumMap spectrum_map(const ModelFunctor& f) {
  require_valid_functor(f);
  SpectrumMap out;
  out.domain = spectrum(f.target);
  out.codomain = spectrum(f.source);

  for (int q = 0; q < out.domain.point_count(); ++q) {
    const AtomSet prime_l = out.domain.points[static_cast<std::size_t>(q)];
    AtomSet preimage;
    for (int x = 0; x < f.source.atom_count(); ++x)
      if (f.atom_images[static_cast<std::size_t>(x)].subset_of(prime_l))
        preimage |= AtomSet::single(x);
    if (!is_thick_tensor_ideal(f.source, preimage) || !is_prime(f.source, Ideal{preimage}))
      throw std::logic_error("functor preimage of a prime is not prime");
    out.point_map.push_back(out.codomain.point_index(preimage));
  }

  for (ObjectClass a : all_object_classes(f.source)) {
    const PointSet source_supp = support(out.codomain, a);
    PointSet pulled;
    for (int q = 0; q < out.domain.point_count(); ++q)
      if (source_supp.contains(out.point_map[static_cast<std::size_t>(q)]))
        pulled |= PointSet::single(q);
    if (pulled != support(out.domain, f.map_object(a)))
      throw std::logic_error("spectrum map does not pull supports back to image supports");
  }
  return out;
}

/// True when each atom's images generate the same target ideal; in that case
/// the induced spectrum maps are asserted to coincide.
inline bool functor_agreement(const ModelFunctor& f1, const ModelFunctor& f2) {
  if (!(f1.source == f2.source) || !(f1.target == f2.target))
    throw std::invalid_argument("functors do not share source and target");
  require_valid_functor(f1);
  require_valid_functor(f2);
  for (int x = 0; x < f1.source.atom_count(); ++x) {
    const Ideal lhs = ideal_generated_by(f1.target, {f1.atom_images[static_cast<std::size_t>(x)]});
    const Ideal rhs = ideal_generated_by(f2.target, {f2.atom_images[static_cast<std::size_t>(x)]});
    if (!(lhs == rhs)) return false;
  }
  if (spectrum_map(f1).point_map != spectrum_map(f2).point_map)
    throw std::logic_error("agreeing functors induced different spectrum maps");
  return true;
}

/// Closure of the image of the induced map, computed as the closed locus of
/// the classes whose images generate the target; cross-checked against the
/// closure of the pointwise image.
inline PointSet image_closure(const ModelFunctor& f) {
  require_valid_functor(f);
  const SpectrumMap map = spectrum_map(f);

  ObjectFamily generating;
  for (ObjectClass a : all_object_classes(f.source))
    if (generates_whole(f.target, f.map_object(a))) generating.push_back(a);
  const PointSet by_locus = closed_locus(map.codomain, generating);

  PointSet image;
  for (int idx : map.point_map) image |= PointSet::single(idx);
  const PointSet by_closure = closure(map.codomain, image);

  if (by_locus != by_closure)
    throw std::logic_error("image closure mismatch between locus and closure forms");
  return by_locus;
}

// ---------------------------------------------------------------------------
// Lattice-level quotients.

struct QuotientReport {
  bool ok = false;
  std::vector<std::string> failures;
  std::vector<std::pair<int, int>> correspondence;  // quotient point -> source point
  int primes_over_ideal = 0;
  int quotient_points = 0;
};

struct QuotientModel {
  Presentation quotient;
  ModelFunctor projection;
  QuotientReport report;
};

/// Deletes the ideal's atoms from every table and verifies, per call, that
/// the induced spectrum map is a homeomorphism onto the primes containing
/// the ideal. A failed correspondence is reported, never silently accepted.
inline QuotientModel quotient_model(const Presentation& p, const Ideal& ideal_j) {
  require_known(p, ideal_j.atoms);
  QuotientModel out;

  std::vector<std::string> names;
  std::vector<int> new_index(static_cast<std::size_t>(p.atom_count()), -1);
  for (int x = 0; x < p.atom_count(); ++x)
    if (!ideal_j.atoms.contains(x)) {
      new_index[static_cast<std::size_t>(x)] = static_cast<int>(names.size());
      names.push_back(p.atom_name(x));
    }
  auto project = [&](ObjectClass a) {
    ObjectClass outc;
    for (int x : a - ideal_j.atoms)
      outc |= AtomSet::single(new_index[static_cast<std::size_t>(x)]);
    return outc;
  };

  const int n = static_cast<int>(names.size());
  std::vector<std::vector<ObjectClass>> tensor_table(
      static_cast<std::size_t>(n),
      std::vector<ObjectClass>(static_cast<std::size_t>(n)));
  std::vector<ObjectClass> shift_table(static_cast<std::size_t>(n));
  for (int x = 0; x < p.atom_count(); ++x) {
    if (ideal_j.atoms.contains(x)) continue;
    shift_table[static_cast<std::size_t>(new_index[static_cast<std::size_t>(x)])] =
        project(p.shift(x));
    for (int y = 0; y < p.atom_count(); ++y) {
      if (ideal_j.atoms.contains(y)) continue;
      tensor_table[static_cast<std::size_t>(new_index[static_cast<std::size_t>(x)])]
                  [static_cast<std::size_t>(new_index[static_cast<std::size_t>(y)])] =
          project(p.tensor(x, y));
    }
  }
  std::vector<Triangle> triangles;
  for (const Triangle& t : p.declared_triangles()) {
    const Triangle image{project(t.a), project(t.b), project(t.c)};
    if (std::find(triangles.begin(), triangles.end(), image) == triangles.end())
      triangles.push_back(image);
  }
  out.quotient = Presentation(names, project(p.unit()), tensor_table, shift_table, triangles);

  std::vector<ObjectClass> atom_images;
  for (int x = 0; x < p.atom_count(); ++x)
    atom_images.push_back(project(AtomSet::single(x)));
  out.projection = ModelFunctor{p, out.quotient, atom_images};

  auto fail = [&out](std::string message) { out.report.failures.push_back(std::move(message)); };

  if (!validate_presentation(out.quotient).ok()) fail("quotient presentation is invalid");
  if (!validate_functor(out.projection).ok()) fail("projection is not a functor");

  if (out.report.failures.empty()) {
    const SpectrumMap map = spectrum_map(out.projection);
    out.report.quotient_points = map.domain.point_count();

    PointSet over_j;
    for (int i = 0; i < map.codomain.point_count(); ++i)
      if (ideal_j.atoms.subset_of(map.codomain.points[static_cast<std::size_t>(i)]))
        over_j |= PointSet::single(i);
    out.report.primes_over_ideal = over_j.size();

    PointSet image;
    for (int q = 0; q < map.domain.point_count(); ++q) {
      const int target = map.point_map[static_cast<std::size_t>(q)];
      if (image.contains(target)) fail("induced map is not injective");
      image |= PointSet::single(target);
      out.report.correspondence.push_back({q, target});
    }
    if (image != over_j) fail("image differs from the primes containing the ideal");

    // Homeomorphism onto the image: order isomorphism for the subspace order.
    for (int q1 = 0; q1 < map.domain.point_count(); ++q1)
      for (int q2 = 0; q2 < map.domain.point_count(); ++q2) {
        const bool below_domain = map.domain.specializes(q1, q2);
        const bool below_image =
            map.codomain.specializes(map.point_map[static_cast<std::size_t>(q1)],
                                     map.point_map[static_cast<std::size_t>(q2)]);
        if (below_domain != below_image) {
          fail("induced map is not an order isomorphism onto its image");
          q1 = map.domain.point_count();
          break;
        }
      }
  }

  out.report.ok = out.report.failures.empty();
  return out;
}

}  // namespace ttg
