#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hypsurf/endspace.hpp"

using namespace hypsurf;

TEST_CASE("derivative rules") {
  CHECK_FALSE(derivative(singleton()).has_value());
  CHECK(*derivative(cantor()) == cantor());
  CHECK(*derivative(omega_sum(singleton())) == singleton());
  CHECK(*derivative(omega_sum(omega_sum(singleton()))) == omega_sum(singleton()));

  // unions drop empty parts
  auto u = union_of({singleton(), omega_sum(singleton())});
  CHECK(*derivative(u) == singleton());

  // towers step down through successors and stall on limits
  CHECK(*derivative(tower(ordinal_nat(3))) == tower(ordinal_nat(2)));
  CHECK(*derivative(tower(ordinal_nat(1))) == singleton());
  CHECK(*derivative(tower(ordinal_omega())) == tower(ordinal_omega()));
  CHECK(*derivative(tower(parse_ordinal("w+1"))) == tower(ordinal_omega()));
}

TEST_CASE("characteristic systems") {
  CHECK(*char_system(singleton()) == CharSystem{ordinal_zero(), 1});
  CHECK(*char_system(union_of({omega_sum(singleton()), omega_sum(singleton())})) ==
        CharSystem{ordinal_nat(1), 2});
  CHECK_FALSE(char_system(union_of({singleton(), cantor()})).has_value());
  CHECK(*char_system(tower(ordinal_omega())) == CharSystem{ordinal_omega(), 1});
  // lower-rank parts do not contribute to the degree
  CHECK(*char_system(union_of({tower(ordinal_nat(2)), singleton()})) ==
        CharSystem{ordinal_nat(2), 1});
}

TEST_CASE("nested omega-sums agree with towers") {
  EndSpaceExpr nested = singleton();
  for (int k = 1; k <= 4; ++k) {
    nested = omega_sum(nested);
    CHECK(*char_system(nested) == CharSystem{ordinal_nat(k), 1});
    CHECK(canonical(nested) == tower(ordinal_nat(k)));
  }
}

TEST_CASE("canonical forms identify homeomorphic expressions") {
  auto a = union_of({omega_sum(singleton()), omega_sum(singleton())});
  auto b = union_of({tower(ordinal_nat(1)), tower(ordinal_nat(1))});
  CHECK(canonical(a) == canonical(b));
  CHECK(canonical(omega_sum(cantor())) == cantor());
  CHECK(canonical(union_of({cantor(), cantor()})) == cantor());
  CHECK_THROWS_AS(canonical(union_of({cantor(), singleton()})), UnsupportedEndSpaceError);
}

TEST_CASE("radial symmetry and self-similarity coincide") {
  const EndSpaceExpr cases[] = {
      singleton(),
      cantor(),
      omega_sum(singleton()),
      tower(ordinal_omega()),
      union_of({singleton(), singleton()}),
      union_of({omega_sum(singleton()), omega_sum(singleton())}),
      omega_sum(cantor()),
  };
  for (const auto& e : cases) CHECK(is_self_similar(e) == is_radially_symmetric(e));

  CHECK(is_self_similar(omega_sum(singleton())));
  CHECK(is_self_similar(cantor()));
  CHECK(is_self_similar(singleton()));
  CHECK_FALSE(is_self_similar(union_of({singleton(), singleton()})));
  CHECK_FALSE(is_self_similar(union_of({omega_sum(singleton()), omega_sum(singleton())})));
}

TEST_CASE("star decomposition") {
  auto sd = star_decomposition(omega_sum(singleton()));
  CHECK(canonical(sd.part_compactified) == tower(ordinal_nat(1)));
  CHECK(sd.parts(3).size() == 3);

  auto sd2 = star_decomposition(omega_sum(omega_sum(singleton())));
  CHECK(*char_system(sd2.part_compactified) == CharSystem{ordinal_nat(2), 1});

  auto sdc = star_decomposition(cantor());
  CHECK(sdc.cantor_deleted_point);
  CHECK(sdc.part_compactified == cantor());

  CHECK_THROWS_AS(star_decomposition(singleton()), NotSelfSimilarError);
  CHECK_THROWS_AS(star_decomposition(union_of({singleton(), singleton()})),
                  NotSelfSimilarError);
}

TEST_CASE("trichotomy") {
  CHECK(trichotomy(tower(ordinal_nat(1))).branch == Trichotomy::Branch::SelfSimilar);
  auto d = trichotomy(canonical(CharSystem{ordinal_omega(), 2}));
  CHECK(d.branch == Trichotomy::Branch::DoublyPointed);
  CHECK(*d.doubly_pointed_alpha == AlphaKind::Limit);
  auto s = trichotomy(canonical(CharSystem{ordinal_nat(1), 2}));
  CHECK(*s.doubly_pointed_alpha == AlphaKind::Successor);
  auto z = trichotomy(union_of({singleton(), singleton()}));
  CHECK(*z.doubly_pointed_alpha == AlphaKind::Zero);
  CHECK(trichotomy(canonical(CharSystem{ordinal_zero(), 3})).branch ==
        Trichotomy::Branch::NonDisplaceable);
  CHECK(trichotomy(cantor()).branch == Trichotomy::Branch::SelfSimilar);
  CHECK_THROWS_AS(trichotomy(union_of({cantor(), singleton()})),
                  UnsupportedEndSpaceError);
}

TEST_CASE("json round-trip") {
  const EndSpaceExpr cases[] = {
      singleton(), cantor(), omega_sum(singleton()),
      union_of({singleton(), cantor()}), tower(parse_ordinal("w^2+1"))};
  for (const auto& e : cases) {
    CHECK(endspace_from_json(to_json(e)) == e);
  }
  CHECK_THROWS_AS(endspace_from_json(nlohmann::json{{"type", "mystery"}}), EndSpaceError);
}

TEST_CASE("shorthand parsing") {
  CHECK(parse_endspace("w^1*1+1") == tower(ordinal_nat(1)));
  CHECK(parse_endspace("w^2*3+1") == canonical(CharSystem{ordinal_nat(2), 3}));
  CHECK(parse_endspace("w^{w}*1+1") == tower(ordinal_omega()));
  CHECK(parse_endspace("cantor") == cantor());
  CHECK(parse_endspace("Cantor") == cantor());
  CHECK(parse_endspace("1") == singleton());
  CHECK(parse_endspace("3") == canonical(CharSystem{ordinal_zero(), 3}));
  CHECK_THROWS_AS(parse_endspace("w"), EndSpaceError);       // limit, not compact
  CHECK_THROWS_AS(parse_endspace("0"), EndSpaceError);       // empty
  CHECK_THROWS_AS(parse_endspace("nonsense"), OrdinalParseError);
}

TEST_CASE("shorthand printing inverts parsing on canonical forms") {
  for (const char* text : {"w+1", "w^2*3+1", "w^{w}+1", "3", "cantor"}) {
    auto e = parse_endspace(text);
    CHECK(parse_endspace(endspace_to_shorthand(e)) == e);
  }
}

TEST_CASE("union constructor collapses singleton lists") {
  CHECK(union_of({cantor()}) == cantor());
  CHECK_THROWS_AS(union_of({}), EndSpaceError);
}
