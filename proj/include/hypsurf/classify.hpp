#pragma once

// Realization decision procedure: which group classes arise as isometry
// groups of complete hyperbolic metrics on an infinite-genus surface with a
// given end space, plus the finite-genus and planar-end obstructions.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypsurf/endspace.hpp"
#include "hypsurf/grouptable.hpp"
#include "json.hpp"

namespace hypsurf {

class ClassifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenusTooSmallError : public ClassifyError {
 public:
  GenusTooSmallError() : ClassifyError("hurwitz_bound requires genus >= 2") {}
};

struct SurfaceDescriptor {
  bool infinite_genus = true;
  std::uint64_t genus = 0;  // meaningful when !infinite_genus
  EndSpaceExpr ends;
  std::uint64_t planar_ends = 0;
};

struct GroupClassDescriptor {
  enum class Tag { Finite, VirtuallyCyclic, CountableInfinite };

  Tag tag = Tag::Finite;
  std::optional<FiniteGroup> table;  // specific finite group, when known

  static GroupClassDescriptor finite() { return {Tag::Finite, std::nullopt}; }
  static GroupClassDescriptor finite(FiniteGroup g) {
    return {Tag::Finite, std::move(g)};
  }
  static GroupClassDescriptor virtually_cyclic() {
    return {Tag::VirtuallyCyclic, std::nullopt};
  }
  static GroupClassDescriptor countable() {
    return {Tag::CountableInfinite, std::nullopt};
  }
};

enum class AllowedClass { Finite, VirtuallyCyclic, Countable };

struct Verdict {
  enum class Answer { Realizable, NotRealizable, OutOfScope, Inconclusive };

  Answer answer = Answer::OutOfScope;
  std::optional<AllowedClass> allowed_class;
  bool exact = true;  // false when only an upper bound is known
  bool corner_case_alpha_zero = false;
  std::vector<std::string> citations;
  std::vector<std::string> notes;
};

namespace detail {

// Finite < VirtuallyCyclic < Countable as group classes.
inline bool tag_in_class(GroupClassDescriptor::Tag tag, AllowedClass cls) {
  switch (cls) {
    case AllowedClass::Countable:
      return true;
    case AllowedClass::VirtuallyCyclic:
      return tag != GroupClassDescriptor::Tag::CountableInfinite;
    case AllowedClass::Finite:
      return tag == GroupClassDescriptor::Tag::Finite;
  }
  return false;
}

inline const char* allowed_class_name(AllowedClass c) {
  switch (c) {
    case AllowedClass::Finite: return "Finite";
    case AllowedClass::VirtuallyCyclic: return "VirtuallyCyclic";
    case AllowedClass::Countable: return "Countable";
  }
  return "?";
}

inline const char* answer_name(Verdict::Answer a) {
  switch (a) {
    case Verdict::Answer::Realizable: return "Realizable";
    case Verdict::Answer::NotRealizable: return "NotRealizable";
    case Verdict::Answer::OutOfScope: return "OutOfScope";
    case Verdict::Answer::Inconclusive: return "Inconclusive";
  }
  return "?";
}

// The allowed isometry-group class of an infinite-genus surface with no
// planar ends, from its end space alone.
struct AllowedResult {
  std::optional<AllowedClass> cls;
  bool corner = false;
  std::vector<std::string> citations;
};

inline AllowedResult allowed_class_of(const EndSpaceExpr& ends) {
  AllowedResult out;
  if (is_pure_cantor(ends)) {
    out.cls = AllowedClass::Countable;
    out.citations = {"ThmA.1", "Thm3.9"};
    return out;
  }
  auto cs = char_system(ends);
  if (!cs) return out;  // mixed uncountable: out of scope
  if (cs->degree == 1) {
    out.cls = AllowedClass::Countable;
    out.citations = {"ThmB.1"};
  } else if (cs->degree == 2) {
    switch (alpha_kind(cs->alpha)) {
      case AlphaKind::Zero:
        out.cls = AllowedClass::VirtuallyCyclic;
        out.corner = true;
        out.citations = {"Thm4.13"};
        break;
      case AlphaKind::Successor:
        out.cls = AllowedClass::VirtuallyCyclic;
        out.citations = {"ThmB.2", "Thm4.16(i)"};
        break;
      case AlphaKind::Limit:
        out.cls = AllowedClass::Finite;
        out.citations = {"ThmB.3", "Thm4.16(ii)"};
        break;
    }
  } else {
    out.cls = AllowedClass::Finite;
    out.citations = {"ThmB.3"};
  }
  return out;
}

}  // namespace detail

inline Verdict hurwitz_bound(std::uint64_t genus, const FiniteGroup& G) {
  if (genus < 2) throw GenusTooSmallError();
  Verdict v;
  v.citations = {"Prop9.1"};
  const std::uint64_t bound = 168 * (genus - 1);
  if (G.order() > bound) {
    v.answer = Verdict::Answer::NotRealizable;
    v.notes.push_back("|G| = " + std::to_string(G.order()) + " exceeds 168(g-1) = " +
                      std::to_string(bound));
  } else {
    v.answer = Verdict::Answer::Inconclusive;
    v.notes.push_back("|G| within the 168(g-1) bound; the bound is necessary, not sufficient");
  }
  return v;
}

inline Verdict planar_obstruction(std::uint64_t n_planar, const FiniteGroup& G) {
  if (n_planar < 1) throw ClassifyError("planar_obstruction requires n_planar >= 1");
  Verdict v;
  v.citations = {"Prop9.2"};
  std::uint64_t factorial = 1;
  bool overflow = false;
  for (std::uint64_t i = 2; i <= n_planar; ++i) {
    if (factorial > UINT64_MAX / i) {
      overflow = true;
      break;
    }
    factorial *= i;
  }
  const bool exceeds = !overflow && G.order() > factorial;
  if (!G.is_abelian() && is_simple(G) && exceeds) {
    v.answer = Verdict::Answer::NotRealizable;
    v.notes.push_back("non-abelian simple group of order " + std::to_string(G.order()) +
                      " > " + std::to_string(n_planar) + "!");
  } else {
    v.answer = Verdict::Answer::Inconclusive;
  }
  return v;
}

inline Verdict realizable(const SurfaceDescriptor& s, const GroupClassDescriptor& g) {
  Verdict v;
  if (!s.infinite_genus) {
    if (g.table && s.genus >= 2) {
      Verdict h = hurwitz_bound(s.genus, *g.table);
      h.notes.push_back("finite genus: only the order bound is checked");
      return h;
    }
    v.answer = Verdict::Answer::OutOfScope;
    v.notes.push_back("finite-genus surfaces are outside the main classification");
    return v;
  }
  if (s.planar_ends > 0) {
    if (g.table) {
      Verdict p = planar_obstruction(s.planar_ends, *g.table);
      p.notes.push_back("planar ends present: only the obstruction is checked");
      return p;
    }
    v.answer = Verdict::Answer::OutOfScope;
    v.notes.push_back("planar ends are outside the main classification");
    return v;
  }
  auto allowed = detail::allowed_class_of(s.ends);
  if (!allowed.cls) {
    v.answer = Verdict::Answer::OutOfScope;
    v.citations = {"ThmA.1"};
    v.notes.push_back("mixed uncountable end space: realizability is not decided");
    return v;
  }
  v.allowed_class = allowed.cls;
  v.corner_case_alpha_zero = allowed.corner;
  v.citations = allowed.citations;
  v.answer = detail::tag_in_class(g.tag, *allowed.cls) ? Verdict::Answer::Realizable
                                                       : Verdict::Answer::NotRealizable;
  return v;
}

struct ConsistencyReport {
  Trichotomy branch;
  bool covered = false;  // exactly one branch, with verdicts for every tag
  Verdict finite_verdict, vc_verdict, countable_verdict;
};

inline ConsistencyReport corollary_consistency(const SurfaceDescriptor& s) {
  if (!s.infinite_genus || s.planar_ends > 0) {
    throw ClassifyError("corollary_consistency requires infinite genus and no planar ends");
  }
  ConsistencyReport r;
  r.branch = trichotomy(s.ends);
  r.finite_verdict = realizable(s, GroupClassDescriptor::finite());
  r.vc_verdict = realizable(s, GroupClassDescriptor::virtually_cyclic());
  r.countable_verdict = realizable(s, GroupClassDescriptor::countable());
  auto decided = [](const Verdict& v) {
    return v.answer == Verdict::Answer::Realizable ||
           v.answer == Verdict::Answer::NotRealizable;
  };
  r.covered = decided(r.finite_verdict) && decided(r.vc_verdict) &&
              decided(r.countable_verdict);
  return r;
}

inline nlohmann::ordered_json to_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["answer"] = detail::answer_name(v.answer);
  if (v.allowed_class) j["allowed_class"] = detail::allowed_class_name(*v.allowed_class);
  j["exact"] = v.exact;
  if (v.corner_case_alpha_zero) j["corner_case_alpha_zero"] = true;
  j["citations"] = v.citations;
  j["notes"] = v.notes;
  return j;
}

}  // namespace hypsurf
