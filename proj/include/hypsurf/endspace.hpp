#pragma once

// Symbolic end spaces of infinite-genus 2-manifolds and their
// Cantor-Bendixson machinery.
//
// The expression grammar:
//   Singleton                one point
//   Cantor                   a Cantor set
//   Union(e1, ..., ek)       finite disjoint union, k >= 2
//   OmegaSum(e)              one-point compactification of countably many
//                            pairwise-separated copies of e
//   Tower(alpha)             the ordinal space w^alpha + 1, alpha >= 1
//
// Tower is the canonical-form node: finite towers coincide with nested
// OmegaSums (Tower(n) = OmegaSum(Tower(n-1))), and it is the only way to
// write spaces of infinite rank such as w^w + 1 with a finite tree.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypsurf/ordinal.hpp"
#include "json.hpp"

namespace hypsurf {

class EndSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSelfSimilarError : public EndSpaceError {
 public:
  NotSelfSimilarError() : EndSpaceError("end space is not self-similar") {}
};

class UnsupportedEndSpaceError : public EndSpaceError {
 public:
  using EndSpaceError::EndSpaceError;
};

struct EndSpaceExpr {
  enum class Kind { Singleton, Cantor, Union, OmegaSum, Tower };

  Kind kind = Kind::Singleton;
  std::vector<EndSpaceExpr> parts;  // Union: >= 2 entries; OmegaSum: exactly 1
  Ordinal alpha;                    // Tower only

  bool operator==(const EndSpaceExpr&) const = default;
};

inline EndSpaceExpr singleton() { return EndSpaceExpr{}; }

inline EndSpaceExpr cantor() {
  EndSpaceExpr e;
  e.kind = EndSpaceExpr::Kind::Cantor;
  return e;
}

inline EndSpaceExpr omega_sum(EndSpaceExpr copy) {
  EndSpaceExpr e;
  e.kind = EndSpaceExpr::Kind::OmegaSum;
  e.parts.push_back(std::move(copy));
  return e;
}

inline EndSpaceExpr union_of(std::vector<EndSpaceExpr> parts) {
  if (parts.empty()) throw EndSpaceError("union of zero parts");
  if (parts.size() == 1) return std::move(parts.front());
  EndSpaceExpr e;
  e.kind = EndSpaceExpr::Kind::Union;
  e.parts = std::move(parts);
  return e;
}

// w^alpha + 1; Tower(0) collapses to a singleton.
inline EndSpaceExpr tower(Ordinal alpha) {
  if (alpha.is_zero()) return singleton();
  EndSpaceExpr e;
  e.kind = EndSpaceExpr::Kind::Tower;
  e.alpha = std::move(alpha);
  return e;
}

struct CharSystem {
  Ordinal alpha;
  std::uint64_t degree = 1;

  bool operator==(const CharSystem&) const = default;
};

inline bool contains_cantor(const EndSpaceExpr& e) {
  if (e.kind == EndSpaceExpr::Kind::Cantor) return true;
  for (const auto& p : e.parts)
    if (contains_cantor(p)) return true;
  return false;
}

// True when e normalizes to a plain Cantor set: finite disjoint unions of
// Cantor sets and omega-sums of Cantor sets are again Cantor sets.
inline bool is_pure_cantor(const EndSpaceExpr& e) {
  switch (e.kind) {
    case EndSpaceExpr::Kind::Cantor:
      return true;
    case EndSpaceExpr::Kind::Union:
    case EndSpaceExpr::Kind::OmegaSum:
      for (const auto& p : e.parts)
        if (!is_pure_cantor(p)) return false;
      return true;
    default:
      return false;
  }
}

// Cantor-Bendixson derivative: the symbolic set of accumulation points.
// nullopt encodes the empty space.
inline std::optional<EndSpaceExpr> derivative(const EndSpaceExpr& e) {
  switch (e.kind) {
    case EndSpaceExpr::Kind::Singleton:
      return std::nullopt;
    case EndSpaceExpr::Kind::Cantor:
      return cantor();
    case EndSpaceExpr::Kind::Union: {
      std::vector<EndSpaceExpr> parts;
      for (const auto& p : e.parts) {
        if (auto d = derivative(p)) parts.push_back(std::move(*d));
      }
      if (parts.empty()) return std::nullopt;
      return union_of(std::move(parts));
    }
    case EndSpaceExpr::Kind::OmegaSum: {
      // Each copy derives in place; if the copies derive to nothing, the
      // compactification point alone survives.
      if (auto d = derivative(e.parts.front())) return omega_sum(std::move(*d));
      return singleton();
    }
    case EndSpaceExpr::Kind::Tower: {
      if (is_successor(e.alpha)) return tower(pred(e.alpha));
      // limit alpha: the derived set of w^alpha + 1 is again w^alpha + 1
      return e;
    }
  }
  throw EndSpaceError("unreachable");
}

// Characteristic system (alpha, d): e is homeomorphic to w^alpha * d + 1.
// nullopt when e contains a Cantor atom.
inline std::optional<CharSystem> char_system(const EndSpaceExpr& e) {
  switch (e.kind) {
    case EndSpaceExpr::Kind::Singleton:
      return CharSystem{ordinal_zero(), 1};
    case EndSpaceExpr::Kind::Cantor:
      return std::nullopt;
    case EndSpaceExpr::Kind::Union: {
      Ordinal best;
      std::uint64_t degree = 0;
      for (const auto& p : e.parts) {
        auto cs = char_system(p);
        if (!cs) return std::nullopt;
        auto cmp = compare(cs->alpha, best);
        if (cmp == std::strong_ordering::greater) {
          best = cs->alpha;
          degree = cs->degree;
        } else if (cmp == std::strong_ordering::equal) {
          degree += cs->degree;
        }
      }
      return CharSystem{std::move(best), degree};
    }
    case EndSpaceExpr::Kind::OmegaSum: {
      auto cs = char_system(e.parts.front());
      if (!cs) return std::nullopt;
      return CharSystem{add_nat(cs->alpha, 1), 1};
    }
    case EndSpaceExpr::Kind::Tower:
      return CharSystem{e.alpha, 1};
  }
  throw EndSpaceError("unreachable");
}

// Canonical representative of the characteristic system: d copies of
// w^alpha + 1.
inline EndSpaceExpr canonical(const CharSystem& cs) {
  if (cs.degree == 0) throw EndSpaceError("degree must be >= 1");
  if (cs.degree == 1) return tower(cs.alpha);
  std::vector<EndSpaceExpr> parts;
  parts.reserve(cs.degree);
  for (std::uint64_t i = 0; i < cs.degree; ++i) parts.push_back(tower(cs.alpha));
  return union_of(std::move(parts));
}

// Canonical form; structural equality on canonical forms is exactly
// homeomorphism within the grammar.
inline EndSpaceExpr canonical(const EndSpaceExpr& e) {
  if (is_pure_cantor(e)) return cantor();
  if (auto cs = char_system(e)) return canonical(*cs);
  throw UnsupportedEndSpaceError(
      "no canonical form for mixed Cantor/countable expressions");
}

inline bool is_radially_symmetric(const EndSpaceExpr& e) {
  if (e.kind == EndSpaceExpr::Kind::Singleton) return true;
  if (is_pure_cantor(e)) return true;
  if (auto cs = char_system(e)) return cs->degree == 1;
  // Mixed uncountable: an omega-sum always has pairwise homeomorphic parts
  // accumulating at the compactification point.
  return e.kind == EndSpaceExpr::Kind::OmegaSum;
}

inline bool is_self_similar(const EndSpaceExpr& e) {
  // Self-similarity and radial symmetry coincide for end spaces of
  // orientable surfaces; the equivalence is taken as the implementation.
  return is_radially_symmetric(e);
}

struct EndPointDescriptor {
  enum class Kind { CompactificationPoint, CantorPoint };
  Kind kind = Kind::CompactificationPoint;
  std::string description;
};

// Decomposition of a self-similar space minus its star point into countably
// many pairwise homeomorphic parts E_n; each part is reported through its
// one-point compactification E_n + {x}, which is homeomorphic to the whole
// space.
struct StarDecomposition {
  EndPointDescriptor star;
  EndSpaceExpr part_compactified;
  bool cantor_deleted_point = false;  // parts are Cantor-minus-a-point copies

  std::vector<EndSpaceExpr> parts(std::size_t n) const {
    return std::vector<EndSpaceExpr>(n, part_compactified);
  }
};

inline StarDecomposition star_decomposition(const EndSpaceExpr& e) {
  if (!is_self_similar(e) || e.kind == EndSpaceExpr::Kind::Singleton) {
    throw NotSelfSimilarError();
  }
  StarDecomposition out;
  if (is_pure_cantor(e)) {
    out.star = {EndPointDescriptor::Kind::CantorPoint, "deleted Cantor point"};
    out.part_compactified = cantor();
    out.cantor_deleted_point = true;
    return out;
  }
  auto cs = char_system(e);
  if (!cs) {
    // Mixed omega-sum: parts are the copies themselves, compactified.
    out.star = {EndPointDescriptor::Kind::CompactificationPoint,
                "omega-sum compactification point"};
    out.part_compactified = e;
    return out;
  }
  // Countable degree-1 space w^alpha + 1: parts are copies of w^alpha, each
  // compactifying back to w^alpha + 1.
  out.star = {EndPointDescriptor::Kind::CompactificationPoint,
              "unique point of maximal Cantor-Bendixson rank"};
  out.part_compactified = canonical(*cs);
  return out;
}

enum class AlphaKind { Zero, Successor, Limit };

inline AlphaKind alpha_kind(const Ordinal& a) {
  if (a.is_zero()) return AlphaKind::Zero;
  return is_successor(a) ? AlphaKind::Successor : AlphaKind::Limit;
}

struct Trichotomy {
  enum class Branch { SelfSimilar, DoublyPointed, NonDisplaceable };
  Branch branch = Branch::SelfSimilar;
  std::optional<AlphaKind> doubly_pointed_alpha;  // set on the degree-2 branch
};

inline Trichotomy trichotomy(const EndSpaceExpr& e) {
  if (is_pure_cantor(e)) return {Trichotomy::Branch::SelfSimilar, std::nullopt};
  auto cs = char_system(e);
  if (!cs) {
    throw UnsupportedEndSpaceError(
        "trichotomy is unsupported for mixed uncountable expressions");
  }
  if (cs->degree == 1) return {Trichotomy::Branch::SelfSimilar, std::nullopt};
  if (cs->degree == 2) return {Trichotomy::Branch::DoublyPointed, alpha_kind(cs->alpha)};
  return {Trichotomy::Branch::NonDisplaceable, std::nullopt};
}

// ---------------------------------------------------------------------------
// Serialization.

inline nlohmann::ordered_json to_json(const EndSpaceExpr& e) {
  using json = nlohmann::ordered_json;
  switch (e.kind) {
    case EndSpaceExpr::Kind::Singleton:
      return json{{"type", "singleton"}};
    case EndSpaceExpr::Kind::Cantor:
      return json{{"type", "cantor"}};
    case EndSpaceExpr::Kind::Union: {
      json parts = json::array();
      for (const auto& p : e.parts) parts.push_back(to_json(p));
      return json{{"type", "union"}, {"parts", std::move(parts)}};
    }
    case EndSpaceExpr::Kind::OmegaSum:
      return json{{"type", "omega_sum"}, {"copy", to_json(e.parts.front())}};
    case EndSpaceExpr::Kind::Tower:
      return json{{"type", "tower"}, {"alpha", to_string(e.alpha)}};
  }
  throw EndSpaceError("unreachable");
}

inline EndSpaceExpr endspace_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "singleton") return singleton();
  if (type == "cantor") return cantor();
  if (type == "union") {
    std::vector<EndSpaceExpr> parts;
    for (const auto& p : j.at("parts")) parts.push_back(endspace_from_json(p));
    if (parts.size() < 2) throw EndSpaceError("union needs >= 2 parts");
    return union_of(std::move(parts));
  }
  if (type == "omega_sum") return omega_sum(endspace_from_json(j.at("copy")));
  if (type == "tower") {
    return tower(parse_ordinal(j.at("alpha").get<std::string>()));
  }
  throw EndSpaceError("unknown end space node type: " + type);
}

// Shorthand `w^a*d+1`: the text is read as an ordinal; a successor ordinal
// with CNF leading term w^a*d denotes the compact space w^a*d+1, i.e. the
// characteristic system (a, d).  A bare natural n denotes n points.
// "cantor" denotes the Cantor set.
inline EndSpaceExpr parse_endspace(std::string_view text) {
  {
    std::string lowered(text);
    for (auto& c : lowered) c = static_cast<char>(::tolower(c));
    // trim
    auto b = lowered.find_first_not_of(" \t");
    auto f = lowered.find_last_not_of(" \t");
    if (b != std::string::npos && lowered.substr(b, f - b + 1) == "cantor") {
      return cantor();
    }
  }
  Ordinal o = parse_ordinal(text);
  if (o.is_zero()) throw EndSpaceError("end space shorthand denotes the empty space");
  if (is_limit(o)) {
    throw EndSpaceError("end space shorthand must denote a compact space (successor ordinal)");
  }
  if (is_finite(o)) return canonical(CharSystem{ordinal_zero(), to_nat(o)});
  return canonical(CharSystem{o.terms.front().exponent, o.terms.front().coefficient});
}

// Canonical shorthand for display; inverse of parse_endspace on canonical
// countable forms.
inline std::string endspace_to_shorthand(const EndSpaceExpr& e) {
  if (is_pure_cantor(e)) return "cantor";
  auto cs = char_system(e);
  if (!cs) throw UnsupportedEndSpaceError("no shorthand for mixed expressions");
  if (cs->alpha.is_zero()) return std::to_string(cs->degree);
  Ordinal o = add_nat(mul_nat(omega_pow(cs->alpha), cs->degree), 1);
  return to_string(o);
}

}  // namespace hypsurf
