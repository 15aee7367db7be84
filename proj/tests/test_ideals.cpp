#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace ttg;
using ttgtest::fixture_models;
using ttgtest::load_fixture;

TEST_CASE("ideal_generated_by matches the documented fixtures") {
  const Presentation dvr = load_fixture("dvr.tt");
  CHECK(ideal_generated_by(dvr, {dvr.object({"k"})}).atoms == dvr.object({"k"}));
  CHECK(ideal_generated_by(dvr, {dvr.object({"u"})}).atoms == dvr.universe());
  for (const Presentation& p : fixture_models())
    CHECK(ideal_generated_by(p, {}).atoms == AtomSet{});
}

TEST_CASE("ideal_generated_by equals the brute-force minimal closed superset") {
  for (const Presentation& p : fixture_models()) {
    const std::vector<Triangle> triangles = all_triangles(p);
    const std::uint32_t limit = p.universe().bits();
    for (std::uint32_t m = 0;; ++m) {
      const AtomSet seed = AtomSet::from_bits(m);
      CHECK(ideal_generated_by(p, {seed}).atoms == ttgtest::oracle_generated(p, triangles, seed));
      if (m == limit) break;
    }
  }
}

TEST_CASE("generation depends only on the union of the family") {
  const Presentation tp = load_fixture("twopoints.tt");
  const ObjectFamily family{tp.object({"e"}), tp.object({"f"})};
  CHECK(ideal_generated_by(tp, family) == ideal_generated_by(tp, {tp.object({"e", "f"})}));
}

TEST_CASE("is_thick_tensor_ideal follows the closure rules") {
  const Presentation stab = load_fixture("stabz3.tt");
  CHECK_FALSE(is_thick_tensor_ideal(stab, stab.object({"m1"})));  // triangle forces m2
  CHECK_FALSE(is_thick_tensor_ideal(stab, stab.object({"m2"})));  // m2*m2 escapes
  for (const Presentation& p : fixture_models()) CHECK(is_thick_tensor_ideal(p, AtomSet{}));
}

TEST_CASE("atom-level primality agrees with the object-level quantifier") {
  const Presentation tp = load_fixture("twopoints.tt");
  CHECK_FALSE(is_prime(tp, Ideal{}));  // e (x) f = 0 without either factor
  const Presentation dvr = load_fixture("dvr.tt");
  CHECK(is_prime(dvr, Ideal{}));
  CHECK_FALSE(is_prime(dvr, Ideal{dvr.universe()}));  // not proper

  for (const Presentation& p : fixture_models())
    for (const Ideal& ideal : all_ideals(p))
      CHECK(is_prime(p, ideal) == ttgtest::oracle_prime(p, ideal.atoms));
}

TEST_CASE("enumeration matches the documented fixture lattices") {
  const Presentation dvr = load_fixture("dvr.tt");
  const std::vector<Ideal> dvr_ideals = all_ideals(dvr);
  REQUIRE(dvr_ideals.size() == 3);
  CHECK(dvr_ideals[0].atoms == AtomSet{});
  CHECK(dvr_ideals[1].atoms == dvr.object({"k"}));
  CHECK(dvr_ideals[2].atoms == dvr.universe());
  const std::vector<Ideal> dvr_primes = all_primes(dvr);
  REQUIRE(dvr_primes.size() == 2);
  CHECK(dvr_primes[0].atoms == AtomSet{});
  CHECK(dvr_primes[1].atoms == dvr.object({"k"}));

  const Presentation tp = load_fixture("twopoints.tt");
  const std::vector<Ideal> tp_primes = all_primes(tp);
  REQUIRE(tp_primes.size() == 2);
  CHECK(tp_primes[0].atoms == tp.object({"e"}));
  CHECK(tp_primes[1].atoms == tp.object({"f"}));

  const std::vector<Ideal> stab_primes = all_primes(load_fixture("stabz3.tt"));
  REQUIRE(stab_primes.size() == 1);
  CHECK(stab_primes[0].atoms == AtomSet{});
}

TEST_CASE("maximal proper ideals are prime") {
  for (const Presentation& p : fixture_models()) {
    const std::vector<Ideal> ideals = all_ideals(p);
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

TEST_CASE("radical matches the documented values and laws") {
  const Presentation dvr = load_fixture("dvr.tt");
  CHECK(radical(dvr, Ideal{dvr.object({"k"})}).atoms == dvr.object({"k"}));
  for (const Presentation& p : fixture_models()) {
    CHECK(radical(p, Ideal{p.universe()}).atoms == p.universe());
    CHECK(radical(p, Ideal{}).atoms == AtomSet{});  // no nilpotents in the fixtures
    const std::vector<Ideal> primes = all_primes(p);
    for (const Ideal& ideal : all_ideals(p)) {
      const Ideal rad = radical(p, ideal, primes);
      CHECK(ideal.atoms.subset_of(rad.atoms));
      CHECK(radical(p, rad, primes) == rad);
      AtomSet intersection = p.universe();
      for (const Ideal& prime : primes)
        if (ideal.atoms.subset_of(prime.atoms)) intersection &= prime.atoms;
      CHECK(rad.atoms == intersection);
    }
  }
}

TEST_CASE("tensor nilpotence iterates powers with cycle detection") {
  for (const Presentation& p : fixture_models()) {
    const Nilpotence zero = tensor_nilpotence(p, {});
    CHECK(zero.nilpotent);
    CHECK(zero.exponent == 1);
  }
  const Presentation dvr = load_fixture("dvr.tt");
  CHECK_FALSE(tensor_nilpotence(dvr, dvr.object({"k"})).nilpotent);
  const Presentation tp = load_fixture("twopoints.tt");
  CHECK_FALSE(tensor_nilpotence(tp, tp.object({"e"})).nilpotent);
  // zero-divisors without nilpotents:
  CHECK(tensor_obj(tp, tp.object({"e"}), tp.object({"f"})) == ObjectClass{});

  const Presentation nil = parse_presentation(
      "[atoms] u x\n[unit] u\n[shift]\nu->u\nx->x\n[tensor]\nu*u=u\nu*x=x\nx*x=0\n");
  REQUIRE(validate_presentation(nil).ok());
  const Nilpotence n = tensor_nilpotence(nil, nil.object({"x"}));
  CHECK(n.nilpotent);
  CHECK(n.exponent == 2);
}

TEST_CASE("generates_whole follows saturation") {
  const Presentation dvr = load_fixture("dvr.tt");
  CHECK(generates_whole(dvr, dvr.object({"u"})));
  CHECK_FALSE(generates_whole(dvr, dvr.object({"k"})));
  for (const Presentation& p : fixture_models()) CHECK(generates_whole(p, p.unit()));
}

TEST_CASE("prime_avoiding follows the ascent construction") {
  const Presentation dvr = load_fixture("dvr.tt");
  const PrimeAvoidance via_unit = prime_avoiding(dvr, Ideal{}, {dvr.object({"u"})});
  REQUIRE(via_unit.prime);
  CHECK(via_unit.prime->atoms == dvr.object({"k"}));  // maximal candidate wins

  const Presentation tp = load_fixture("twopoints.tt");
  const ObjectFamily closure_of_e{tp.object({"e"}), tp.unit()};
  REQUIRE(is_multiplicative_family(tp, closure_of_e));
  const PrimeAvoidance avoiding_e = prime_avoiding(tp, Ideal{}, closure_of_e);
  REQUIRE(avoiding_e.prime);
  CHECK(avoiding_e.prime->atoms == tp.object({"f"}));

  // the zero class always meets the ideal, so no prime and a witness
  const PrimeAvoidance with_zero =
      prime_avoiding(tp, Ideal{}, ObjectFamily{tp.unit(), ObjectClass{}});
  CHECK_FALSE(with_zero.prime);
  REQUIRE(with_zero.witness);
  CHECK(*with_zero.witness == ObjectClass{});

  CHECK_THROWS_WITH(prime_avoiding(tp, Ideal{}, ObjectFamily{tp.object({"e"})}),
                    Catch::Matchers::ContainsSubstring("family not multiplicative"));
}

TEST_CASE("prime_avoiding returns none exactly when the family meets the ideal") {
  for (const Presentation& p : fixture_models()) {
    const std::vector<ObjectClass> classes = all_object_classes(p);
    for (const Ideal& ideal : all_ideals(p)) {
      if (ideal.atoms == p.universe()) continue;
      for (ObjectClass seed : classes) {
        // multiplicative closure of {seed} together with the unit
        ObjectFamily family{p.unit(), seed};
        for (std::size_t i = 0; i < family.size(); ++i)
          for (std::size_t j = 0; j <= i; ++j) {
            const ObjectClass product = tensor_obj(p, family[i], family[j]);
            if (std::find(family.begin(), family.end(), product) == family.end())
              family.push_back(product);
          }
        bool meets = false;
        for (ObjectClass member : family)
          if (member.subset_of(ideal.atoms)) meets = true;
        const PrimeAvoidance result = prime_avoiding(p, ideal, family);
        CHECK(result.prime.has_value() == !meets);
        if (result.prime) {
          CHECK(is_prime(p, *result.prime));
          CHECK(ideal.atoms.subset_of(result.prime->atoms));
          for (ObjectClass member : family)
            CHECK_FALSE(member.subset_of(result.prime->atoms));
        }
      }
    }
  }
}
