#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "hypsurf/ordinal.hpp"

using namespace hypsurf;

namespace {

// Reference comparison by direct structural recursion on term lists,
// written independently of compare().
int ref_compare(const Ordinal& a, const Ordinal& b, std::size_t i = 0) {
  bool ea = i >= a.terms.size(), eb = i >= b.terms.size();
  if (ea && eb) return 0;
  if (ea) return -1;
  if (eb) return 1;
  int e = ref_compare(a.terms[i].exponent, b.terms[i].exponent);
  if (e != 0) return e;
  if (a.terms[i].coefficient != b.terms[i].coefficient) {
    return a.terms[i].coefficient < b.terms[i].coefficient ? -1 : 1;
  }
  return ref_compare(a, b, i + 1);
}

// Reference sum: recurse on the left argument one term at a time.
Ordinal ref_add(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero()) return b;
  Ordinal::Term head = a.terms.front();
  Ordinal tail;
  tail.terms.assign(a.terms.begin() + 1, a.terms.end());
  Ordinal rest = ref_add(tail, b);
  if (rest.is_zero()) {
    Ordinal out;
    out.terms.push_back(head);
    return out;
  }
  int c = ref_compare(head.exponent, rest.terms.front().exponent);
  if (c < 0) return rest;  // head absorbed
  Ordinal out;
  out.terms.push_back(head);
  if (c == 0) {
    out.terms.back().coefficient += rest.terms.front().coefficient;
    out.terms.insert(out.terms.end(), rest.terms.begin() + 1, rest.terms.end());
  } else {
    out.terms.insert(out.terms.end(), rest.terms.begin(), rest.terms.end());
  }
  return out;
}

std::vector<Ordinal> sample_ordinals() {
  std::vector<Ordinal> xs;
  const char* texts[] = {"0",   "1",     "2",      "7",       "w",          "w+1",
                         "w*2", "w*3+4", "w^2",    "w^2*3+w", "w^2*3+w+1",  "w^3",
                         "w^{w}", "w^{w}+1", "w^{w}*2+w^2", "w^{w+1}*2+5", "w^{w*2}+w^{w}"};
  for (const char* t : texts) xs.push_back(parse_ordinal(t));
  return xs;
}

}  // namespace

TEST_CASE("comparison basics") {
  CHECK(compare(parse_ordinal("w"), parse_ordinal("w")) == std::strong_ordering::equal);
  CHECK(compare(parse_ordinal("w+1"), parse_ordinal("w*2")) == std::strong_ordering::less);
  CHECK(compare(parse_ordinal("w^{w}"), parse_ordinal("w^3*5+w")) ==
        std::strong_ordering::greater);
  CHECK(parse_ordinal("1") < parse_ordinal("w"));
  CHECK_FALSE(parse_ordinal("w") < parse_ordinal("w"));
}

TEST_CASE("comparison matches the structural-recursion reference") {
  auto xs = sample_ordinals();
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      int r = ref_compare(a, b);
      auto c = compare(a, b);
      CHECK((r < 0) == (c == std::strong_ordering::less));
      CHECK((r == 0) == (c == std::strong_ordering::equal));
      CHECK((r > 0) == (c == std::strong_ordering::greater));
    }
  }
}

TEST_CASE("addition absorbs lower terms") {
  CHECK(add(ordinal_nat(1), ordinal_omega()) == ordinal_omega());
  CHECK(add(ordinal_omega(), ordinal_nat(1)) == parse_ordinal("w+1"));
  CHECK(add(parse_ordinal("w^2+w"), parse_ordinal("w^2")) == parse_ordinal("w^2*2"));
}

TEST_CASE("addition matches the reference and is associative") {
  auto xs = sample_ordinals();
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      CHECK(add(a, b) == ref_add(a, b));
    }
  }
  // associativity over a coarser triple sample
  for (std::size_t i = 0; i < xs.size(); i += 2) {
    for (std::size_t j = 0; j < xs.size(); j += 2) {
      for (std::size_t k = 0; k < xs.size(); k += 2) {
        CHECK(add(add(xs[i], xs[j]), xs[k]) == add(xs[i], add(xs[j], xs[k])));
      }
    }
  }
}

TEST_CASE("successor, limit, predecessor") {
  CHECK(is_successor(parse_ordinal("w+1")));
  CHECK(pred(parse_ordinal("w+1")) == ordinal_omega());
  CHECK(is_limit(parse_ordinal("w^{w}")));
  CHECK_FALSE(is_limit(ordinal_zero()));
  CHECK_FALSE(is_successor(ordinal_zero()));
  CHECK(pred(parse_ordinal("5")) == parse_ordinal("4"));
  CHECK_THROWS_AS(pred(ordinal_omega()), OrdinalDomainError);
  CHECK_THROWS_AS(pred(ordinal_zero()), OrdinalDomainError);
}

TEST_CASE("exactly one of zero, successor, limit") {
  for (const auto& a : sample_ordinals()) {
    int count = (a.is_zero() ? 1 : 0) + (is_successor(a) ? 1 : 0) + (is_limit(a) ? 1 : 0);
    CHECK(count == 1);
  }
}

TEST_CASE("natural multiplication acts on the leading term") {
  CHECK(mul_nat(ordinal_omega(), 3) == parse_ordinal("w*3"));
  CHECK(mul_nat(parse_ordinal("w^2+w"), 2) == parse_ordinal("w^2*2+w"));
  CHECK(mul_nat(ordinal_zero(), 5) == ordinal_zero());
  CHECK_THROWS_AS(mul_nat(ordinal_omega(), 0), OrdinalDomainError);
}

TEST_CASE("printer and parser round-trip") {
  for (const auto& a : sample_ordinals()) {
    CHECK(parse_ordinal(to_string(a)) == a);
  }
  CHECK(to_string(parse_ordinal("w^2*3 + w + 1")) == "w^2*3 + w + 1");
  CHECK(to_string(parse_ordinal("w^{w+1}*2+5")) == "w^{w + 1}*2 + 5");
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_ordinal(""), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("w^"), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("w*0"), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("w+"), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("q"), OrdinalParseError);
  CHECK_THROWS_AS(parse_ordinal("w^{w"), OrdinalParseError);
}

TEST_CASE("non-normal sums normalize while parsing") {
  CHECK(parse_ordinal("1 + w") == ordinal_omega());
  CHECK(parse_ordinal("w + w") == parse_ordinal("w*2"));
  CHECK(parse_ordinal("w + w^2") == parse_ordinal("w^2"));
}

TEST_CASE("finite helpers") {
  CHECK(is_finite(ordinal_zero()));
  CHECK(is_finite(parse_ordinal("9")));
  CHECK_FALSE(is_finite(ordinal_omega()));
  CHECK(to_nat(parse_ordinal("9")) == 9);
  CHECK_THROWS_AS(to_nat(ordinal_omega()), OrdinalDomainError);
}
