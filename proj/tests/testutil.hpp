#pragma once

// Shared test infrastructure: fixture loading, independent brute-force
// oracles, a generator for randomized valid presentations, and a helper to
// spawn the CLI.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ttg/formats.hpp"

namespace ttgtest {

inline std::string fixture_path(const std::string& name) {
  return std::string(TTG_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline ttg::Presentation load_fixture(const std::string& name) {
  return ttg::parse_presentation(read_file(fixture_path(name)));
}

// ---------------------------------------------------------------------------
// Brute-force oracles, independent of the saturation and enumeration paths
// they check. The rule predicate is restated from scratch against the full
// generated triangle family.

inline bool oracle_closed(const ttg::Presentation& p,
                          const std::vector<ttg::Triangle>& triangles, ttg::AtomSet s) {
  for (int x = 0; x < p.atom_count(); ++x) {
    if (!s.contains(x)) continue;
    if (!p.shift(x).subset_of(s)) return false;
    for (int y = 0; y < p.atom_count(); ++y)
      if (!p.tensor(x, y).subset_of(s)) return false;
  }
  for (const ttg::Triangle& t : triangles) {
    const int inside = t.a.subset_of(s) + t.b.subset_of(s) + t.c.subset_of(s);
    if (inside == 2) return false;
  }
  return true;
}

/// Minimal rule-closed superset as the intersection of all rule-closed
/// subsets containing the seed, scanning every atom subset.
inline ttg::AtomSet oracle_generated(const ttg::Presentation& p,
                                     const std::vector<ttg::Triangle>& triangles,
                                     ttg::AtomSet seed) {
  ttg::AtomSet result = p.universe();
  const std::uint32_t limit = p.universe().bits();
  for (std::uint32_t m = 0;; ++m) {
    const ttg::AtomSet s = ttg::AtomSet::from_bits(m);
    if (seed.subset_of(s) && oracle_closed(p, triangles, s)) result &= s;
    if (m == limit) break;
  }
  return result;
}

/// Object-level primality: quantified over all pairs of object classes.
inline bool oracle_prime(const ttg::Presentation& p, ttg::AtomSet ideal) {
  if (ideal == p.universe()) return false;
  const std::uint32_t limit = p.universe().bits();
  for (std::uint32_t ma = 0;; ++ma) {
    const ttg::ObjectClass a = ttg::AtomSet::from_bits(ma);
    for (std::uint32_t mb = 0;; ++mb) {
      const ttg::ObjectClass b = ttg::AtomSet::from_bits(mb);
      if (ttg::tensor_obj(p, a, b).subset_of(ideal) && !a.subset_of(ideal) &&
          !b.subset_of(ideal))
        return false;
      if (mb == limit) break;
    }
    if (ma == limit) break;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Randomized valid presentations. Models are assembled from small blocks
// whose tensor tables are associative by construction (orthogonal across
// blocks), shifted by translation along an invertible class, and optionally
// spiced with extra declared triangles; the declared set is closed under
// tensoring by atoms. Candidates are rejection-sampled through
// validate_presentation, and presentations whose zero ideal is nonempty are
// rejected as degenerate: such atoms present objects identified with zero.

class ModelGen {
public:
  explicit ModelGen(std::uint32_t seed = 0xC0FFEEu) : rng_(seed) {}

  ttg::Presentation next() {
    while (true) {
      const ttg::Presentation candidate = make_candidate();
      if (!ttg::validate_presentation(candidate).ok()) continue;
      if (!ttg::ideal_generated_by(candidate, {}).atoms.empty()) continue;
      return candidate;
    }
  }

private:
  struct Block {
    int size;
    ttg::AtomSet unit;                                   // local indices
    std::vector<std::vector<ttg::AtomSet>> tensor;       // local table
    std::vector<ttg::Triangle> triangles;                // local classes
  };

  int pick(int bound) { return static_cast<int>(rng_() % static_cast<std::uint32_t>(bound)); }

  static ttg::AtomSet local(std::initializer_list<int> indices) {
    ttg::AtomSet out;
    for (int i : indices) out |= ttg::AtomSet::single(i);
    return out;
  }

  Block make_block(int kind) {
    Block b;
    switch (kind) {
      case 0:  // unit alone
        b.size = 1;
        b.unit = local({0});
        b.tensor = {{local({0})}};
        break;
      case 1:  // chain of length 2 with a defining triangle
        b.size = 2;
        b.unit = local({0});
        b.tensor = {{local({0}), local({1})}, {local({1}), local({1})}};
        b.triangles.push_back({local({0}), local({0}), local({1})});
        break;
      case 2:  // chain of length 3
        b.size = 3;
        b.unit = local({0});
        b.tensor.assign(3, std::vector<ttg::AtomSet>(3));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) b.tensor[i][j] = local({std::max(i, j)});
        b.triangles.push_back({local({0}), local({0}), local({1})});
        b.triangles.push_back({local({1}), local({1}), local({2})});
        break;
      case 3:  // invertible atom of order 2
        b.size = 2;
        b.unit = local({0});
        b.tensor = {{local({0}), local({1})}, {local({1}), local({0})}};
        break;
      case 4:  // invertible atom of order 3
        b.size = 3;
        b.unit = local({0});
        b.tensor.assign(3, std::vector<ttg::AtomSet>(3));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) b.tensor[i][j] = local({(i + j) % 3});
        break;
      case 5:  // two orthogonal idempotents, split unit
        b.size = 2;
        b.unit = local({0, 1});
        b.tensor = {{local({0}), {}}, {{}, local({1})}};
        b.triangles.push_back({local({0}), local({0, 1}), local({1})});
        break;
      case 6:  // tensor-nilpotent atom over the unit
        b.size = 2;
        b.unit = local({0});
        b.tensor = {{local({0}), local({1})}, {local({1}), {}}};
        break;
      default:  // fusion-style atom with a*a = unit + a
        b.size = 2;
        b.unit = local({0});
        b.tensor = {{local({0}), local({1})}, {local({1}), local({0, 1})}};
        break;
    }
    return b;
  }

  ttg::Presentation make_candidate() {
    const int target = 1 + pick(4);
    std::vector<Block> blocks;
    int total = 0;
    while (total < target) {
      const Block b = make_block(pick(8));
      if (total + b.size > target) {
        if (total > 0) break;
        continue;
      }
      total += b.size;
      blocks.push_back(b);
    }

    static const char* pool = "abcdefgh";
    std::vector<std::string> names;
    {
      std::vector<int> letters{0, 1, 2, 3, 4, 5, 6, 7};
      for (int i = 7; i > 0; --i) std::swap(letters[i], letters[pick(i + 1)]);
      for (int i = 0; i < total; ++i) names.push_back(std::string(1, pool[letters[i]]));
    }

    ttg::AtomSet unit;
    std::vector<std::vector<ttg::ObjectClass>> tensor(total,
                                                      std::vector<ttg::ObjectClass>(total));
    std::vector<ttg::Triangle> triangles;
    int offset = 0;
    auto shifted = [](ttg::AtomSet s, int by) {
      ttg::AtomSet out;
      for (int i : s) out |= ttg::AtomSet::single(i + by);
      return out;
    };
    for (const Block& b : blocks) {
      unit |= shifted(b.unit, offset);
      for (int i = 0; i < b.size; ++i)
        for (int j = 0; j < b.size; ++j)
          tensor[offset + i][offset + j] = shifted(b.tensor[i][j], offset);
      for (const ttg::Triangle& t : b.triangles)
        triangles.push_back(
            {shifted(t.a, offset), shifted(t.b, offset), shifted(t.c, offset)});
      offset += b.size;
    }

    // Shift by translation along an invertible class.
    std::vector<ttg::AtomSet> shift(total);
    {
      ttg::Presentation untwisted(names, unit, tensor,
                                  std::vector<ttg::AtomSet>(total, ttg::AtomSet{}),
                                  {});
      std::vector<ttg::ObjectClass> invertible;
      const std::uint32_t limit = untwisted.universe().bits();
      for (std::uint32_t ma = 0;; ++ma) {
        const ttg::ObjectClass a = ttg::AtomSet::from_bits(ma);
        for (std::uint32_t mb = 0;; ++mb) {
          if (ttg::tensor_obj(untwisted, a, ttg::AtomSet::from_bits(mb)) == unit) {
            invertible.push_back(a);
            break;
          }
          if (mb == limit) break;
        }
        if (ma == limit) break;
      }
      const ttg::ObjectClass twist = invertible[pick(static_cast<int>(invertible.size()))];
      for (int x = 0; x < total; ++x)
        shift[x] = ttg::tensor_obj(untwisted, twist, ttg::AtomSet::single(x));
    }

    ttg::Presentation base(names, unit, tensor, shift, triangles);

    // Extra declared triangles, then tensor-closure of the declared set so
    // that tensoring any triangle by an atom stays inside the family.
    const int extras = pick(3);
    for (int i = 0; i < extras; ++i) {
      const ttg::ObjectClass a = ttg::AtomSet::from_bits(rng_() % (base.universe().bits() + 1));
      const ttg::ObjectClass b = ttg::AtomSet::from_bits(rng_() % (base.universe().bits() + 1));
      if (pick(2) == 0)
        triangles.push_back({a, b, b | ttg::shift_obj(base, a)});  // cone of the zero map
      else
        triangles.push_back({a, a, b});
    }
    {
      std::vector<ttg::Triangle> closed;
      std::vector<std::uint64_t> seen;
      auto push = [&](const ttg::Triangle& t) {
        const std::uint64_t key = ttg::detail::pack_triangle(t);
        for (std::uint64_t k : seen)
          if (k == key) return;
        seen.push_back(key);
        closed.push_back(t);
      };
      for (const ttg::Triangle& t : triangles) push(t);
      for (std::size_t i = 0; i < closed.size() && closed.size() < 256; ++i)
        for (int x = 0; x < total; ++x)
          push({ttg::tensor_obj(base, closed[i].a, ttg::AtomSet::single(x)),
                ttg::tensor_obj(base, closed[i].b, ttg::AtomSet::single(x)),
                ttg::tensor_obj(base, closed[i].c, ttg::AtomSet::single(x))});
      triangles = std::move(closed);
    }

    return ttg::Presentation(names, unit, tensor, shift, triangles);
  }

  std::mt19937 rng_;
};

/// Fixtures plus the shared randomized sample used across property suites.
inline const std::vector<ttg::Presentation>& fixture_models() {
  static const std::vector<ttg::Presentation> models = [] {
    std::vector<ttg::Presentation> out;
    for (const char* name : {"field.tt", "twopoints.tt", "dvr.tt", "stabz3.tt"})
      out.push_back(load_fixture(name));
    return out;
  }();
  return models;
}

inline const std::vector<ttg::Presentation>& random_models(int count = 200) {
  static const std::vector<ttg::Presentation> models = [count] {
    ModelGen gen;
    std::vector<ttg::Presentation> out;
    for (int i = 0; i < count; ++i) out.push_back(gen.next());
    return out;
  }();
  return models;
}

// ---------------------------------------------------------------------------
// CLI spawning.

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  static int counter = 0;
  const std::string tag = std::to_string(++counter);
  const std::string out_path = std::string(TTG_BUILD_DIR) + "/cli_out_" + tag;
  const std::string err_path = std::string(TTG_BUILD_DIR) + "/cli_err_" + tag;
  std::string command = std::string("'") + TTG_CLI_PATH + "'";
  for (const std::string& arg : args) command += " '" + arg + "'";
  command += " > '" + out_path + "' 2> '" + err_path + "'";
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WEXITSTATUS(status);
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

}  // namespace ttgtest
