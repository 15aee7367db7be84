#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

// Property checks over a sample of the randomized presentations; the
// acceptance suite runs the full set.

using namespace ttg;

namespace {

std::vector<Presentation> sample(int count) {
  const auto& all = ttgtest::random_models();
  return {all.begin(), all.begin() + count};
}

}  // namespace

TEST_CASE("random presentations validate and are nondegenerate") {
  for (const Presentation& p : sample(50)) {
    CHECK(validate_presentation(p).ok());
    CHECK(p.atom_count() >= 1);
    CHECK(ideal_generated_by(p, {}).atoms.empty());
  }
}

TEST_CASE("random presentations satisfy the saturation oracle") {
  for (const Presentation& p : sample(30)) {
    const std::vector<Triangle> triangles = all_triangles(p);
    const std::uint32_t limit = p.universe().bits();
    for (std::uint32_t m = 0;; ++m) {
      const AtomSet seed = AtomSet::from_bits(m);
      CHECK(ideal_generated_by(p, {seed}).atoms ==
            ttgtest::oracle_generated(p, triangles, seed));
      if (m == limit) break;
    }
  }
}

TEST_CASE("random presentations satisfy primality and existence properties") {
  for (const Presentation& p : sample(30)) {
    const std::vector<Ideal> ideals = all_ideals(p);
    const std::vector<Ideal> primes = all_primes(p);
    CHECK_FALSE(primes.empty());
    for (const Ideal& ideal : ideals)
      CHECK(is_prime(p, ideal) == ttgtest::oracle_prime(p, ideal.atoms));
    for (const Ideal& ideal : ideals) {
      if (ideal.atoms == p.universe()) continue;
      bool maximal = true;
      for (const Ideal& other : ideals)
        if (other.atoms != p.universe() && ideal.atoms.proper_subset_of(other.atoms))
          maximal = false;
      if (maximal) CHECK(is_prime(p, ideal));
    }
  }
}

TEST_CASE("random spectra are spectral spaces with the closure equivalence") {
  for (const Presentation& p : sample(25)) {
    const Spectrum space = spectrum(p);
    CHECK(verify_spectral(space).ok());
    const std::uint64_t limit = space.everything().bits();
    for (std::uint64_t m = 0;; ++m) {
      const PointSet w = PointSet::from_bits(m);
      CHECK(closure(space, w) == down_closure(space, w));
      if (m == limit) break;
    }
  }
}

TEST_CASE("random presentations classify") {
  for (const Presentation& p : sample(40)) {
    const ClassificationReport report = verify_classification(p);
    CHECK(report.roundtrip_ok);
    if (!report.roundtrip_ok)
      for (const std::string& failure : report.failures) UNSCOPED_INFO(failure);
  }
}

TEST_CASE("random quotients keep the prime correspondence") {
  for (const Presentation& p : sample(20))
    for (const Ideal& ideal : all_ideals(p)) {
      const QuotientModel quotient = quotient_model(p, ideal);
      CHECK(quotient.report.ok);
    }
}

TEST_CASE("the generator spans different shapes") {
  const auto models = sample(200);
  bool with_triangles = false, multi_unit = false, twisted_shift = false, nilpotent = false;
  for (const Presentation& p : models) {
    if (!p.declared_triangles().empty()) with_triangles = true;
    if (p.unit().size() > 1) multi_unit = true;
    for (int x = 0; x < p.atom_count(); ++x)
      if (p.shift(x) != AtomSet::single(x)) twisted_shift = true;
    for (int x = 0; x < p.atom_count(); ++x)
      if (tensor_nilpotence(p, AtomSet::single(x)).nilpotent) nilpotent = true;
  }
  CHECK(with_triangles);
  CHECK(multi_unit);
  CHECK(twisted_shift);
  CHECK(nilpotent);
}
