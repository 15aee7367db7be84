#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "index_set.hpp"

namespace ttg {

/// Ordered triple of object classes standing for a distinguished triangle
/// a -> b -> c -> Ta.
struct Triangle {
  ObjectClass a, b, c;
  friend constexpr bool operator==(const Triangle&, const Triangle&) = default;
};

struct Violation {
  std::string rule;
  std::string subject;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Finite presentation of a tensor triangulated category: named atoms, a
/// unit class, a symmetric atom-pair tensor table, an atom shift table and
/// a finite list of declared triangles. Immutable after construction; all
/// operations on it are pure.
class Presentation {
public:
  static constexpr int max_atoms = 16;

  Presentation() = default;  // the zero category: no atoms, unit = 0

  Presentation(std::vector<std::string> atom_names, ObjectClass unit,
               std::vector<std::vector<ObjectClass>> tensor_table,
               std::vector<ObjectClass> shift_table, std::vector<Triangle> triangles)
      : names_(std::move(atom_names)),
        unit_(unit),
        shift_(std::move(shift_table)),
        triangles_(std::move(triangles)) {
    const int n = static_cast<int>(names_.size());
    if (n > max_atoms) throw std::invalid_argument("too many atoms (max 16)");
    if (static_cast<int>(tensor_table.size()) != n ||
        static_cast<int>(shift_.size()) != n)
      throw std::invalid_argument("table size does not match atom count");
    const ObjectClass all = AtomSet::first(n);
    auto in_range = [all](ObjectClass c) { return c.subset_of(all); };
    if (!in_range(unit_)) throw std::invalid_argument("unit references unknown atom");
    tensor_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      if (static_cast<int>(tensor_table[x].size()) != n)
        throw std::invalid_argument("tensor table is not square");
      for (int y = 0; y < n; ++y) {
        if (!in_range(tensor_table[x][y]))
          throw std::invalid_argument("tensor entry references unknown atom");
        tensor_[idx(x, y)] = tensor_table[x][y];
      }
    }
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        if (tensor_[idx(x, y)] != tensor_[idx(y, x)])
          throw std::invalid_argument("tensor table is not symmetric");
    for (int x = 0; x < n; ++x)
      if (!in_range(shift_[x]))
        throw std::invalid_argument("shift entry references unknown atom");
    for (const Triangle& t : triangles_)
      if (!in_range(t.a) || !in_range(t.b) || !in_range(t.c))
        throw std::invalid_argument("triangle references unknown atom");
    for (int i = 0; i < n; ++i) {
      if (index_.count(names_[i])) throw std::invalid_argument("duplicate atom '" + names_[i] + "'");
      index_.emplace(names_[i], i);
    }
  }

  int atom_count() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& atom_names() const { return names_; }
  const std::string& atom_name(int x) const { return names_[static_cast<std::size_t>(x)]; }

  std::optional<int> find_atom(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int atom_index(std::string_view name) const {
    auto found = find_atom(name);
    if (!found) throw std::invalid_argument("unknown atom '" + std::string(name) + "'");
    return *found;
  }

  ObjectClass universe() const { return AtomSet::first(atom_count()); }
  ObjectClass unit() const { return unit_; }
  ObjectClass tensor(int x, int y) const { return tensor_[idx(x, y)]; }
  ObjectClass shift(int x) const { return shift_[static_cast<std::size_t>(x)]; }
  const std::vector<Triangle>& declared_triangles() const { return triangles_; }

  ObjectClass object(std::initializer_list<std::string_view> names) const {
    ObjectClass out;
    for (std::string_view name : names) out |= AtomSet::single(atom_index(name));
    return out;
  }

  bool operator==(const Presentation& o) const {
    return names_ == o.names_ && unit_ == o.unit_ && tensor_ == o.tensor_ &&
           shift_ == o.shift_ && triangles_ == o.triangles_;
  }

private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(names_.size()) +
           static_cast<std::size_t>(y);
  }

  std::vector<std::string> names_;
  ObjectClass unit_;
  std::vector<ObjectClass> tensor_;  // flattened n*n, symmetric
  std::vector<ObjectClass> shift_;
  std::vector<Triangle> triangles_;
  std::unordered_map<std::string, int> index_;
};

// ---------------------------------------------------------------------------
// Object-level algebra. Direct sum is atom-set union; tensor and shift are
// the bilinear/additive extensions of the atom tables.

inline ObjectClass direct_sum(ObjectClass a, ObjectClass b) { return a | b; }

inline void require_known(const Presentation& p, ObjectClass a) {
  if (!a.subset_of(p.universe()))
    throw std::invalid_argument("object class references unknown atom");
}

inline ObjectClass tensor_obj(const Presentation& p, ObjectClass a, ObjectClass b) {
  require_known(p, a);
  require_known(p, b);
  ObjectClass out;
  for (int x : a)
    for (int y : b) out |= p.tensor(x, y);
  return out;
}

inline ObjectClass shift_obj(const Presentation& p, ObjectClass a) {
  require_known(p, a);
  ObjectClass out;
  for (int x : a) out |= p.shift(x);
  return out;
}

/// n-th tensor power, n >= 1.
inline ObjectClass tensor_power(const Presentation& p, ObjectClass a, int n) {
  ObjectClass out = a;
  for (int i = 1; i < n; ++i) out = tensor_obj(p, out, a);
  return out;
}

// ---------------------------------------------------------------------------
// Formatting and canonical orders. A class prints as its atom names sorted
// lexicographically; points of a spectrum are ordered by that name list,
// ideals and report rows by cardinality first.

inline std::vector<std::string> object_names_sorted(const Presentation& p, ObjectClass a) {
  std::vector<std::string> names;
  for (int x : a) names.push_back(p.atom_name(x));
  std::sort(names.begin(), names.end());
  return names;
}

inline std::string object_to_string(const Presentation& p, ObjectClass a) {
  std::string out = "{";
  bool sep = false;
  for (const std::string& name : object_names_sorted(p, a)) {
    if (sep) out += ",";
    out += name;
    sep = true;
  }
  out += "}";
  return out;
}

inline bool name_lex_less(const Presentation& p, ObjectClass a, ObjectClass b) {
  return object_names_sorted(p, a) < object_names_sorted(p, b);
}

inline bool size_then_lex_less(const Presentation& p, ObjectClass a, ObjectClass b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return name_lex_less(p, a, b);
}

/// All 2^n object classes in canonical (cardinality, name-lex) order.
inline std::vector<ObjectClass> all_object_classes(const Presentation& p) {
  std::vector<ObjectClass> out;
  const std::uint32_t limit = p.universe().bits();
  out.reserve(static_cast<std::size_t>(limit) + 1);
  for (std::uint32_t m = 0;; ++m) {
    out.push_back(AtomSet::from_bits(m));
    if (m == limit) break;
  }
  std::sort(out.begin(), out.end(),
            [&p](ObjectClass a, ObjectClass b) { return size_then_lex_less(p, a, b); });
  return out;
}

// ---------------------------------------------------------------------------
// Triangle families.

namespace detail {

inline std::uint64_t pack_triangle(const Triangle& t) {
  return static_cast<std::uint64_t>(t.a.bits()) |
         (static_cast<std::uint64_t>(t.b.bits()) << 16) |
         (static_cast<std::uint64_t>(t.c.bits()) << 32);
}

inline Triangle rotate_triangle(const Presentation& p, const Triangle& t) {
  return Triangle{t.b, t.c, shift_obj(p, t.a)};
}

inline Triangle sum_triangle(const Triangle& s, const Triangle& t) {
  return Triangle{s.a | t.a, s.b | t.b, s.c | t.c};
}

/// Classes named somewhere in the presentation: zero, the unit, the atom
/// singletons, every shift and tensor value and every declared triangle
/// component.
inline std::vector<ObjectClass> declared_classes(const Presentation& p) {
  std::unordered_set<std::uint32_t> seen;
  std::vector<ObjectClass> out;
  auto add = [&](ObjectClass c) {
    if (seen.insert(c.bits()).second) out.push_back(c);
  };
  add(ObjectClass{});
  add(p.unit());
  for (int x = 0; x < p.atom_count(); ++x) {
    add(AtomSet::single(x));
    add(p.shift(x));
    for (int y = x; y < p.atom_count(); ++y) add(p.tensor(x, y));
  }
  for (const Triangle& t : p.declared_triangles()) {
    add(t.a);
    add(t.b);
    add(t.c);
  }
  return out;
}

inline std::vector<Triangle> triangle_seeds(const Presentation& p) {
  std::vector<Triangle> seeds = p.declared_triangles();
  for (ObjectClass a : declared_classes(p)) {
    seeds.push_back(Triangle{a, a, ObjectClass{}});
    seeds.push_back(Triangle{ObjectClass{}, a, a});
    seeds.push_back(Triangle{a, ObjectClass{}, shift_obj(p, a)});
  }
  return seeds;
}

inline std::vector<Triangle> close_triangles(const Presentation& p,
                                             std::vector<Triangle> seeds,
                                             bool with_sums) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<Triangle> family;
  auto push = [&](const Triangle& t) {
    if (seen.insert(pack_triangle(t)).second) family.push_back(t);
  };
  for (const Triangle& t : seeds) push(t);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Triangle t = family[i];
    push(rotate_triangle(p, t));
    if (with_sums)
      for (std::size_t j = 0; j <= i; ++j) push(sum_triangle(t, family[j]));
  }
  std::sort(family.begin(), family.end(), [](const Triangle& s, const Triangle& t) {
    return pack_triangle(s) < pack_triangle(t);
  });
  return family;
}

}  // namespace detail

/// Declared triangles closed under rotation, the generated family
/// {(a,a,0), (0,a,a), (a,0,Ta)} for every declared class, and componentwise
/// direct sums of pairs. Closure terminates: triples of atom sets over a
/// finite atom set are finite.
inline std::vector<Triangle> all_triangles(const Presentation& p) {
  return detail::close_triangles(p, detail::triangle_seeds(p), /*with_sums=*/true);
}

/// Rotation/generated closure without sums. Sum triangles never constrain a
/// two-in-implies-third rule beyond their summands, so this smaller family
/// drives saturation and closedness tests; the equivalence is covered by the
/// oracle tests.
inline std::vector<Triangle> triangle_rule_family(const Presentation& p) {
  return detail::close_triangles(p, detail::triangle_seeds(p), /*with_sums=*/false);
}

// ---------------------------------------------------------------------------
// Validation.

inline ValidationReport validate_presentation(const Presentation& p) {
  ValidationReport report;
  const int n = p.atom_count();
  auto pair_subject = [&](int x, int y) {
    return "(" + p.atom_name(x) + "," + p.atom_name(y) + ")";
  };

  for (int x = 0; x < n; ++x) {
    const ObjectClass got = tensor_obj(p, p.unit(), AtomSet::single(x));
    if (got != AtomSet::single(x))
      report.violations.push_back(
          {"unit law", "(" + p.atom_name(x) + ")",
           "unit*" + p.atom_name(x) + " = " + object_to_string(p, got) + ", expected {" +
               p.atom_name(x) + "}"});
  }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const ObjectClass left =
            tensor_obj(p, p.tensor(x, y), AtomSet::single(z));
        const ObjectClass right =
            tensor_obj(p, AtomSet::single(x), p.tensor(y, z));
        if (left != right)
          report.violations.push_back(
              {"associativity",
               "(" + p.atom_name(x) + "," + p.atom_name(y) + "," + p.atom_name(z) + ")",
               "(" + p.atom_name(x) + "*" + p.atom_name(y) + ")*" + p.atom_name(z) + " = " +
                   object_to_string(p, left) + " but " + p.atom_name(x) + "*(" +
                   p.atom_name(y) + "*" + p.atom_name(z) + ") = " + object_to_string(p, right)});
      }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const ObjectClass left = shift_obj(p, p.tensor(x, y));
      const ObjectClass right = tensor_obj(p, p.shift(x), AtomSet::single(y));
      if (left != right)
        report.violations.push_back(
            {"shift compatibility", pair_subject(x, y),
             "T(" + p.atom_name(x) + "*" + p.atom_name(y) + ") = " + object_to_string(p, left) +
                 " but T(" + p.atom_name(x) + ")*" + p.atom_name(y) + " = " +
                 object_to_string(p, right)});
    }

  // Shift must act bijectively on the nonempty classes reachable from the
  // atom singletons.
  {
    std::unordered_set<std::uint32_t> reachable;
    std::vector<ObjectClass> work;
    for (int x = 0; x < n; ++x) {
      const ObjectClass s = AtomSet::single(x);
      if (reachable.insert(s.bits()).second) work.push_back(s);
    }
    for (std::size_t i = 0; i < work.size(); ++i) {
      const ObjectClass next = shift_obj(p, work[i]);
      if (next.empty()) {
        report.violations.push_back({"shift bijectivity",
                                     object_to_string(p, work[i]),
                                     "shift of " + object_to_string(p, work[i]) +
                                         " is the zero class"});
        continue;
      }
      if (reachable.insert(next.bits()).second) work.push_back(next);
    }
    std::unordered_map<std::uint32_t, ObjectClass> image_of;
    for (const ObjectClass c : work) {
      const ObjectClass next = shift_obj(p, c);
      if (next.empty()) continue;
      auto [it, fresh] = image_of.emplace(next.bits(), c);
      if (!fresh)
        report.violations.push_back(
            {"shift bijectivity", object_to_string(p, c),
             "shift maps both " + object_to_string(p, it->second) + " and " +
                 object_to_string(p, c) + " to " + object_to_string(p, next)});
    }
  }

  return report;
}

}  // namespace ttg
