#pragma once

// Gluing complexes: finite truncations of the vertex-and-edge surface
// constructions, their symbolic end spaces, quotients, and decorated
// automorphism groups.
//
// A complex is a decorated piece-and-port graph.  Vertex pieces are copies
// of a fixed infinite-genus surface with boundary (rigid by fiat, carrying
// an end summary); edge pieces are tori with two boundary components.
// Boundary lengths come from one injective enumeration into (0, arcsinh 1),
// interior cuffs from one into (arcsinh 1, 2 arcsinh 1), and both depend
// only on orbit invariants so the group action preserves decorations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hypsurf/endspace.hpp"
#include "hypsurf/grouptable.hpp"
#include "hypsurf/hypgeom.hpp"
#include "json.hpp"

namespace hypsurf {

class SynthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TruncationTooSmallError : public SynthError {
 public:
  TruncationTooSmallError() : SynthError("truncation depth M must be >= 1") {}
};

class AlphaNotSuccessorError : public SynthError {
 public:
  AlphaNotSuccessorError() : SynthError("rank must be a successor ordinal") {}
};

class NotTwoEndedCertifiedError : public SynthError {
 public:
  NotTwoEndedCertifiedError()
      : SynthError("descriptor lacks a two-ended certificate") {}
};

class UnknownRecipeError : public SynthError {
 public:
  UnknownRecipeError() : SynthError("complex has no builder recipe") {}
};

class ActionNotFreeError : public SynthError {
 public:
  ActionNotFreeError() : SynthError("deck action is not free on pieces") {}
};

class ActionNotDecorationPreservingError : public SynthError {
 public:
  ActionNotDecorationPreservingError()
      : SynthError("deck action does not preserve decorations") {}
};

// Virtually cyclic input at desk scale: the infinite cyclic group with a
// symmetric generating set, materialized on balls of the word metric.
struct VCGroupDescriptor {
  std::string name = "Z";
  bool two_ended_certificate = false;
};

struct Port {
  std::string name;
  double length = 0.0;
  bool frontier = false;  // unpaired because the truncation cut it off
};

struct Piece {
  enum class Kind { VertexSurface, EdgeSurface };

  Kind kind = Kind::VertexSurface;
  int id = 0;
  std::string owner;
  // orbit coordinates: vertex pieces use g; edge pieces use (g, h, m)
  int g = 0, h = 0, m = 0;
  std::vector<Port> ports;
  std::vector<double> cuff_lengths;
  std::vector<double> cuff_twists;
  std::optional<EndSpaceExpr> end_summary;  // vertex pieces only
};

struct Pairing {
  int a_piece = 0, a_port = 0;
  int b_piece = 0, b_port = 0;
  bool orientation_reversing = true;
  double twist = 0.0;
};

struct Recipe {
  enum class Kind { XFinite, XInfinite, Y, YInfinite, XGamma, Quotient, Manual };

  Kind kind = Kind::Manual;
  EndSpaceExpr end_space;  // builder input (X, Y, Quotient)
  CharSystem cs;           // XGamma target characteristic system
  std::string group_name;
  int truncation_M = 0;
  int ball_radius_R = 0;
  bool no_planar_ends = true;
  bool corner_case_alpha_zero = false;
};

struct GluingComplex {
  std::vector<Piece> pieces;
  std::vector<Pairing> pairings;
  Recipe recipe;
  std::optional<FiniteGroup> group;  // declared symmetry group, if finite
  std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Deterministic length and twist enumerations.

namespace detail {

// Strictly increasing map N -> (0, 1); the dyadic tail keeps consecutive
// values separated even after the base fraction flattens out.
inline double unit_point(int k) {
  return (k + 1.0) / (k + 2.0) - 0.5 + std::ldexp(1.0, -(k + 20));
}

inline double band_point(double lo, double hi, int k) {
  return lo + (hi - lo) * unit_point(k);
}

inline double lambda_length(int k) { return band_point(0.0, arcsinh1(), k); }

inline double cuff_length(int k) {
  return band_point(arcsinh1(), 2.0 * arcsinh1(), k);
}

// splitmix64; full-period, platform-independent
inline std::uint64_t mix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

struct TwistSource {
  std::uint64_t state;

  explicit TwistSource(std::uint64_t seed) : state(seed) {}

  double next() { return std::ldexp(static_cast<double>(mix64(state) >> 11), -53); }
};

// Port index of the boundary pair (h_idx, m, side): side 0 carries the
// lambda(h, 2m) length glued to V_g, side 1 the lambda(h, 2m-1) length
// glued to V_{gh}.
inline int port_index(int h_idx, int m, int side, int M) {
  return (h_idx * M + (m - 1)) * 2 + side;
}

inline int edge_orbit_index(int h_idx, int m, int M) { return h_idx * M + (m - 1); }

}  // namespace detail

// The global boundary-length enumeration, exposed for inspection.
inline double lambda_port_length(int k) { return detail::lambda_length(k); }

// ---------------------------------------------------------------------------
// Builders.

namespace detail {

// Shared combinatorics of the complete-Cayley constructions: vertices carry
// one (out, in) port pair per (label, m), edge pieces join them.
struct CayleyComplexPlan {
  // vertex "group elements"
  std::vector<int> vertices;                       // opaque ids (element index or integer)
  std::vector<std::string> vertex_names;
  // labels (non-identity elements or nonzero steps)
  std::vector<int> labels;
  std::vector<std::string> label_names;
  // target(g_pos, h_idx) = position of g*h in `vertices`, or -1 (outside ball)
  std::vector<std::vector<int>> target;
};

inline GluingComplex realize_cayley_plan(const CayleyComplexPlan& plan,
                                         const EndSpaceExpr& vertex_summary,
                                         int M, std::uint64_t seed) {
  GluingComplex c;
  c.seed = seed;
  const int L = static_cast<int>(plan.labels.size());
  const int V = static_cast<int>(plan.vertices.size());

  // orbit-invariant twists, generated in one fixed order
  TwistSource ts(seed);
  std::vector<double> vertex_cuff_twists{ts.next(), ts.next()};
  std::vector<double> edge_cuff_twist(L * M);
  std::vector<double> pairing_twist0(L * M), pairing_twist1(L * M);
  for (int h = 0; h < L; ++h) {
    for (int m = 1; m <= M; ++m) {
      const int k = edge_orbit_index(h, m, M);
      edge_cuff_twist[k] = ts.next();
      pairing_twist0[k] = ts.next();
      pairing_twist1[k] = ts.next();
    }
  }

  for (int v = 0; v < V; ++v) {
    Piece p;
    p.kind = Piece::Kind::VertexSurface;
    p.id = static_cast<int>(c.pieces.size());
    p.g = plan.vertices[v];
    p.owner = "V[" + plan.vertex_names[v] + "]";
    p.end_summary = vertex_summary;
    p.cuff_lengths = {cuff_length(0), cuff_length(1)};
    p.cuff_twists = vertex_cuff_twists;
    for (int h = 0; h < L; ++h) {
      for (int m = 1; m <= M; ++m) {
        Port out;
        out.name = "out(" + plan.label_names[h] + "," + std::to_string(m) + ")";
        out.length = lambda_length(port_index(h, m, 0, M));
        out.frontier = plan.target[v][h] < 0;
        p.ports.push_back(out);
        Port in;
        in.name = "in(" + plan.label_names[h] + "," + std::to_string(m) + ")";
        in.length = lambda_length(port_index(h, m, 1, M));
        // the in-port pairs with the edge arriving from g*h^{-1}; at the
        // frontier that source vertex is missing exactly when no vertex maps
        // here by label h, detected below after all edges are laid down
        p.ports.push_back(in);
      }
    }
    c.pieces.push_back(std::move(p));
  }

  std::vector<std::vector<bool>> in_port_used(
      V, std::vector<bool>(static_cast<std::size_t>(L) * M, false));

  for (int v = 0; v < V; ++v) {
    for (int h = 0; h < L; ++h) {
      const int w = plan.target[v][h];
      if (w < 0) continue;
      for (int m = 1; m <= M; ++m) {
        Piece e;
        e.kind = Piece::Kind::EdgeSurface;
        e.id = static_cast<int>(c.pieces.size());
        e.g = plan.vertices[v];
        e.h = plan.labels[h];
        e.m = m;
        e.owner = "E[" + plan.vertex_names[v] + "," + plan.label_names[h] + "," +
                  std::to_string(m) + "]";
        const int k = edge_orbit_index(h, m, M);
        e.ports.push_back(
            {"bd(2m)", lambda_length(port_index(h, m, 0, M)), false});
        e.ports.push_back(
            {"bd(2m-1)", lambda_length(port_index(h, m, 1, M)), false});
        e.cuff_lengths = {cuff_length(2 + k)};
        e.cuff_twists = {edge_cuff_twist[k]};
        c.pieces.push_back(e);

        const int out_port = 2 * k;     // ports interleave (out, in) per (h, m)
        const int in_port = 2 * k + 1;
        c.pairings.push_back({e.id, 0, v, out_port, true, pairing_twist0[k]});
        c.pairings.push_back({e.id, 1, w, in_port, true, pairing_twist1[k]});
        in_port_used[w][k] = true;
      }
    }
  }

  for (int v = 0; v < V; ++v) {
    for (int h = 0; h < L; ++h) {
      for (int m = 1; m <= M; ++m) {
        const int k = edge_orbit_index(h, m, M);
        if (!in_port_used[v][k]) c.pieces[v].ports[2 * k + 1].frontier = true;
      }
    }
  }
  return c;
}

inline CayleyComplexPlan finite_group_plan(const FiniteGroup& G) {
  CayleyComplexPlan plan;
  const int n = static_cast<int>(G.order());
  for (int g = 0; g < n; ++g) {
    plan.vertices.push_back(g);
    plan.vertex_names.push_back(G.names[g]);
  }
  for (int h = 0; h < n; ++h) {
    if (h == G.identity) continue;
    plan.labels.push_back(h);
    plan.label_names.push_back(G.names[h]);
  }
  plan.target.assign(n, std::vector<int>(plan.labels.size()));
  for (int g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < plan.labels.size(); ++h) {
      plan.target[g][h] = G.mul(g, plan.labels[h]);
    }
  }
  return plan;
}

// Ball of radius R in Z, complete-Cayley style: every nonzero step up to
// 2R is a label, edges kept when both endpoints lie in the ball.
inline CayleyComplexPlan z_ball_plan(int R) {
  CayleyComplexPlan plan;
  for (int g = -R; g <= R; ++g) {
    plan.vertices.push_back(g);
    plan.vertex_names.push_back(std::to_string(g));
  }
  for (int a = 1; a <= 2 * R; ++a) {
    plan.labels.push_back(a);
    plan.label_names.push_back("+" + std::to_string(a));
    plan.labels.push_back(-a);
    plan.label_names.push_back("-" + std::to_string(a));
  }
  plan.target.assign(plan.vertices.size(), std::vector<int>(plan.labels.size()));
  for (std::size_t v = 0; v < plan.vertices.size(); ++v) {
    for (std::size_t h = 0; h < plan.labels.size(); ++h) {
      const int w = plan.vertices[v] + plan.labels[h];
      plan.target[v][h] = (w >= -R && w <= R) ? w + R : -1;
    }
  }
  return plan;
}

}  // namespace detail

inline GluingComplex build_X(const EndSpaceExpr& e, const FiniteGroup& G, int M,
                             std::uint64_t seed = 0) {
  if (M < 1) throw TruncationTooSmallError();
  GluingComplex c = detail::realize_cayley_plan(detail::finite_group_plan(G), e, M, seed);
  c.recipe.kind = Recipe::Kind::XFinite;
  c.recipe.end_space = e;
  c.recipe.group_name = "order-" + std::to_string(G.order());
  c.recipe.truncation_M = M;
  c.group = G;
  return c;
}

// Complete-Cayley complex over the radius-R ball of Z; the ideal object is
// the one-ended infinite-genus surface.
inline GluingComplex build_X_infinite(const EndSpaceExpr& e, int R, int M,
                                      std::uint64_t seed = 0) {
  if (M < 1) throw TruncationTooSmallError();
  if (R < 1) throw SynthError("ball radius R must be >= 1");
  GluingComplex c = detail::realize_cayley_plan(detail::z_ball_plan(R), e, M, seed);
  c.recipe.kind = Recipe::Kind::XInfinite;
  c.recipe.end_space = e;
  c.recipe.group_name = "Z";
  c.recipe.truncation_M = M;
  c.recipe.ball_radius_R = R;
  return c;
}

namespace detail {

inline EndSpaceExpr star_part_summary(const EndSpaceExpr& e) {
  if (e == singleton()) return singleton();
  return star_decomposition(e).part_compactified;
}

}  // namespace detail

inline GluingComplex build_Y(const EndSpaceExpr& e, const FiniteGroup& G, int M,
                             std::uint64_t seed = 0) {
  if (M < 1) throw TruncationTooSmallError();
  if (!is_self_similar(e)) throw NotSelfSimilarError();
  GluingComplex c = detail::realize_cayley_plan(detail::finite_group_plan(G),
                                                detail::star_part_summary(e), M, seed);
  c.recipe.kind = Recipe::Kind::Y;
  c.recipe.end_space = e;
  c.recipe.group_name = "order-" + std::to_string(G.order());
  c.recipe.truncation_M = M;
  c.group = G;
  return c;
}

inline GluingComplex build_Y_countable(const EndSpaceExpr& e, int R, int M,
                                       std::uint64_t seed = 0) {
  if (M < 1) throw TruncationTooSmallError();
  if (R < 1) throw SynthError("ball radius R must be >= 1");
  if (!is_self_similar(e)) throw NotSelfSimilarError();
  GluingComplex c = detail::realize_cayley_plan(detail::z_ball_plan(R),
                                                detail::star_part_summary(e), M, seed);
  c.recipe.kind = Recipe::Kind::YInfinite;
  c.recipe.end_space = e;
  c.recipe.group_name = "Z";
  c.recipe.truncation_M = M;
  c.recipe.ball_radius_R = R;
  return c;
}

// Doubly-pointed construction over a two-ended group: a line of vertex
// pieces joined by one edge piece per generator pair, truncated to the
// radius-R ball of Z.
inline GluingComplex build_X_gamma(const VCGroupDescriptor& G, const CharSystem& cs,
                                   int R, std::uint64_t seed = 0) {
  if (cs.degree != 2) throw SynthError("build_X_gamma requires degree 2");
  if (!G.two_ended_certificate) throw NotTwoEndedCertifiedError();
  if (cs.alpha.is_zero()) {
    // two-ended corner: the vertex blueprint degenerates; see recipe flag
  } else if (!is_successor(cs.alpha)) {
    throw AlphaNotSuccessorError();
  }
  if (R < 1) throw SynthError("ball radius R must be >= 1");

  // vertex ends: W with W + point towers back up to rank alpha
  EndSpaceExpr W;
  bool corner = false;
  if (cs.alpha.is_zero()) {
    W = singleton();  // bookkeeping stand-in; flagged below
    corner = true;
  } else {
    Ordinal beta = pred(cs.alpha);
    if (beta.is_zero()) {
      // w^0 + 1 is the two-point discrete space
      W = union_of({singleton(), singleton()});
    } else {
      W = tower(beta);
    }
  }

  GluingComplex c;
  c.seed = seed;
  detail::TwistSource ts(seed);
  std::vector<double> vertex_cuff_twists{ts.next(), ts.next()};
  const double edge_cuff_twist = ts.next();
  const double ptwist0 = ts.next(), ptwist1 = ts.next();

  const double zeta0 = detail::lambda_length(0);
  const double zeta1 = detail::lambda_length(1);
  for (int g = -R; g <= R; ++g) {
    Piece p;
    p.kind = Piece::Kind::VertexSurface;
    p.id = static_cast<int>(c.pieces.size());
    p.g = g;
    p.owner = "V[" + std::to_string(g) + "]";
    p.end_summary = W;
    p.cuff_lengths = {detail::cuff_length(0), detail::cuff_length(1)};
    p.cuff_twists = vertex_cuff_twists;
    p.ports.push_back({"out(+1)", zeta0, g == R});
    p.ports.push_back({"in(+1)", zeta1, g == -R});
    c.pieces.push_back(std::move(p));
  }
  for (int g = -R; g < R; ++g) {
    Piece e;
    e.kind = Piece::Kind::EdgeSurface;
    e.id = static_cast<int>(c.pieces.size());
    e.g = g;
    e.h = 1;
    e.m = 1;
    e.owner = "E[" + std::to_string(g) + ",+1]";
    e.ports.push_back({"bd(0)", zeta0, false});
    e.ports.push_back({"bd(1)", zeta1, false});
    e.cuff_lengths = {detail::cuff_length(2)};
    e.cuff_twists = {edge_cuff_twist};
    c.pieces.push_back(e);
    const int vg = g + R, vgh = g + 1 + R;
    c.pairings.push_back({e.id, 0, vg, 0, true, ptwist0});
    c.pairings.push_back({e.id, 1, vgh, 1, true, ptwist1});
  }
  c.recipe.kind = Recipe::Kind::XGamma;
  c.recipe.cs = cs;
  c.recipe.end_space = canonical(cs);
  c.recipe.group_name = G.name;
  c.recipe.ball_radius_R = R;
  c.recipe.corner_case_alpha_zero = corner;
  return c;
}

// ---------------------------------------------------------------------------
// Symbolic end space of the ideal (untruncated) object, by recipe.

inline EndSpaceExpr complex_end_space(const GluingComplex& c, bool ideal) {
  if (!ideal) {
    std::vector<EndSpaceExpr> parts;
    for (const auto& p : c.pieces) {
      if (p.end_summary) parts.push_back(*p.end_summary);
    }
    if (parts.empty()) throw SynthError("complex has no vertex pieces");
    return canonical(union_of(std::move(parts)));
  }
  switch (c.recipe.kind) {
    case Recipe::Kind::XFinite: {
      // |G| vertex copies, one end set each
      std::size_t n = 0;
      for (const auto& p : c.pieces)
        if (p.kind == Piece::Kind::VertexSurface) ++n;
      std::vector<EndSpaceExpr> parts(n, c.recipe.end_space);
      return canonical(union_of(std::move(parts)));
    }
    case Recipe::Kind::XInfinite:
      return singleton();  // Loch Ness monster surface
    case Recipe::Kind::Y:
    case Recipe::Kind::YInfinite:
      return canonical(c.recipe.end_space);
    case Recipe::Kind::XGamma:
      return canonical(c.recipe.cs);
    case Recipe::Kind::Quotient:
      return canonical(c.recipe.end_space);
    case Recipe::Kind::Manual:
      break;
  }
  throw UnknownRecipeError();
}

// ---------------------------------------------------------------------------
// Quotients.

struct CoverDescriptor {
  GluingComplex total;
  FiniteGroup group;
  GluingComplex quotient;
  // deck_action[t][piece] = image piece under group element t
  std::vector<std::vector<int>> deck_action;
};

namespace detail {

inline bool same_decoration(const Piece& a, const Piece& b) {
  if (a.kind != b.kind || a.ports.size() != b.ports.size()) return false;
  for (std::size_t i = 0; i < a.ports.size(); ++i) {
    if (a.ports[i].length != b.ports[i].length) return false;
  }
  if (a.cuff_lengths != b.cuff_lengths || a.cuff_twists != b.cuff_twists) return false;
  return a.end_summary == b.end_summary;
}

}  // namespace detail

inline CoverDescriptor quotient(const GluingComplex& c, const FiniteGroup& deck) {
  if (c.recipe.kind != Recipe::Kind::XFinite && c.recipe.kind != Recipe::Kind::Y) {
    throw UnknownRecipeError();
  }
  const int n = static_cast<int>(deck.order());
  // piece lookup by orbit coordinates
  std::map<std::tuple<int, int, int, int>, int> index;
  for (const auto& p : c.pieces) {
    index[{p.kind == Piece::Kind::VertexSurface ? 0 : 1, p.g, p.h, p.m}] = p.id;
  }
  std::vector<std::vector<int>> action(n, std::vector<int>(c.pieces.size(), -1));
  for (int t = 0; t < n; ++t) {
    for (const auto& p : c.pieces) {
      int tg = deck.mul(t, p.g);
      auto it = index.find({p.kind == Piece::Kind::VertexSurface ? 0 : 1, tg, p.h, p.m});
      if (it == index.end()) throw ActionNotFreeError();
      action[t][p.id] = it->second;
      if (t != deck.identity && it->second == p.id) throw ActionNotFreeError();
      if (!detail::same_decoration(p, c.pieces[it->second])) {
        throw ActionNotDecorationPreservingError();
      }
    }
  }

  CoverDescriptor cover;
  cover.total = c;
  cover.group = deck;
  cover.deck_action = std::move(action);

  if (n == 1) {
    cover.quotient = c;
    return cover;
  }

  // orbit representatives: vertex orbit is a single piece (the action is
  // transitive on vertices), edge orbits are the (h, m) classes
  GluingComplex q;
  q.seed = c.seed;
  q.recipe = c.recipe;
  q.recipe.kind = Recipe::Kind::Quotient;
  q.group = c.group;  // retained so the recipe can be rebuilt
  std::map<int, int> rep;  // total piece id -> quotient piece id
  for (const auto& p : c.pieces) {
    if (p.g != deck.identity) continue;
    Piece copy = p;
    copy.id = static_cast<int>(q.pieces.size());
    rep[p.id] = copy.id;
    q.pieces.push_back(std::move(copy));
  }
  // map every piece to its representative's quotient id via the action
  std::vector<int> to_rep(c.pieces.size(), -1);
  for (const auto& p : c.pieces) {
    for (int t = 0; t < n; ++t) {
      int image = cover.deck_action[t][p.id];
      auto it = rep.find(image);
      if (it != rep.end()) {
        to_rep[p.id] = it->second;
        break;
      }
    }
    if (to_rep[p.id] < 0) throw ActionNotFreeError();
  }
  std::set<std::tuple<int, int, int, int>> seen;
  for (const auto& pr : c.pairings) {
    std::tuple<int, int, int, int> key{to_rep[pr.a_piece], pr.a_port,
                                       to_rep[pr.b_piece], pr.b_port};
    if (seen.count(key)) continue;
    seen.insert(key);
    q.pairings.push_back({to_rep[pr.a_piece], pr.a_port, to_rep[pr.b_piece],
                          pr.b_port, pr.orientation_reversing, pr.twist});
  }
  cover.quotient = std::move(q);
  return cover;
}

// ---------------------------------------------------------------------------
// Decorated automorphisms of a finite complex.

namespace detail {

struct PieceSignature {
  int kind;
  std::vector<double> port_lengths;
  std::vector<bool> frontier;
  std::vector<double> cuffs;
  std::vector<double> cuff_twists;
  std::string summary;

  auto operator<=>(const PieceSignature&) const = default;
};

inline PieceSignature signature_of(const Piece& p) {
  PieceSignature s;
  s.kind = p.kind == Piece::Kind::VertexSurface ? 0 : 1;
  for (const auto& q : p.ports) {
    s.port_lengths.push_back(q.length);
    s.frontier.push_back(q.frontier);
  }
  s.cuffs = p.cuff_lengths;
  s.cuff_twists = p.cuff_twists;
  if (p.end_summary) s.summary = to_json(*p.end_summary).dump();
  return s;
}

}  // namespace detail

// Group of piece bijections preserving kind, every length and twist, and
// all pairings.  Vertex pieces are rigid, so a piece maps to a piece with
// the identical port list and the port map is the identity on indices
// (port lengths within a piece are pairwise distinct by construction).
inline FiniteGroup complex_automorphisms(const GluingComplex& c) {
  const int n = static_cast<int>(c.pieces.size());
  if (n == 0) return trivial_group();

  std::vector<detail::PieceSignature> sig;
  sig.reserve(n);
  for (const auto& p : c.pieces) sig.push_back(detail::signature_of(p));

  // partner[(piece, port)] = (piece, port, twist) across a pairing
  std::map<std::pair<int, int>, std::tuple<int, int, double>> partner;
  for (const auto& pr : c.pairings) {
    partner[{pr.a_piece, pr.a_port}] = {pr.b_piece, pr.b_port, pr.twist};
    partner[{pr.b_piece, pr.b_port}] = {pr.a_piece, pr.a_port, pr.twist};
  }

  // connected components of the pairing graph
  std::vector<int> comp(n, -1);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    roots.push_back(i);
    std::vector<int> stack{i};
    comp[i] = static_cast<int>(roots.size()) - 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (std::size_t q = 0; q < c.pieces[v].ports.size(); ++q) {
        auto it = partner.find({v, static_cast<int>(q)});
        if (it == partner.end()) continue;
        int w = std::get<0>(it->second);
        if (comp[w] < 0) {
          comp[w] = comp[v];
          stack.push_back(w);
        }
      }
    }
  }

  // propagate a component map from a seed assignment; false on conflict
  auto propagate = [&](int root, int image, std::vector<int>& sigma,
                       std::vector<bool>& used) -> bool {
    if (sig[root] != sig[image] || used[image]) return false;
    std::vector<std::pair<int, int>> undo;
    auto assign = [&](int v, int w) {
      sigma[v] = w;
      used[w] = true;
      undo.push_back({v, w});
    };
    auto rollback = [&]() {
      for (auto [v, w] : undo) {
        sigma[v] = -1;
        used[w] = false;
      }
    };
    assign(root, image);
    std::vector<int> queue{root};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (std::size_t q = 0; q < c.pieces[v].ports.size(); ++q) {
        auto it = partner.find({v, static_cast<int>(q)});
        auto jt = partner.find({sigma[v], static_cast<int>(q)});
        if ((it == partner.end()) != (jt == partner.end())) {
          rollback();
          return false;
        }
        if (it == partner.end()) continue;
        auto [w, wp, tw] = it->second;
        auto [w2, wp2, tw2] = jt->second;
        if (wp != wp2 || tw != tw2) {
          rollback();
          return false;
        }
        if (sigma[w] == -1) {
          if (used[w2] || sig[w] != sig[w2]) {
            rollback();
            return false;
          }
          assign(w, w2);
          queue.push_back(w);
        } else if (sigma[w] != w2) {
          rollback();
          return false;
        }
      }
    }
    return true;
  };

  std::vector<std::vector<int>> autos;
  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  auto search = [&](auto&& self, std::size_t root_idx) -> void {
    if (root_idx == roots.size()) {
      autos.push_back(sigma);
      return;
    }
    int root = roots[root_idx];
    if (sigma[root] >= 0) {
      self(self, root_idx + 1);
      return;
    }
    for (int image = 0; image < n; ++image) {
      std::vector<int> saved_sigma = sigma;
      std::vector<bool> saved_used = used;
      if (propagate(root, image, sigma, used)) {
        self(self, root_idx + 1);
      }
      sigma = std::move(saved_sigma);
      used = std::move(saved_used);
    }
  };
  search(search, 0);
  return detail::group_from_closed_permutations(std::move(autos), "t");
}

// ---------------------------------------------------------------------------
// Connectivity shadow of one-endedness: drop all vertex pieces within word
// distance r of a center element together with their incident edge pieces,
// and ask whether the remaining piece graph is connected.

inline bool connected_after_deleting_vertex_ball(const GluingComplex& c, int center,
                                                 int r) {
  std::vector<bool> removed(c.pieces.size(), false);
  for (const auto& p : c.pieces) {
    if (p.kind == Piece::Kind::VertexSurface && std::abs(p.g - center) <= r) {
      removed[p.id] = true;
    }
  }
  for (const auto& pr : c.pairings) {
    // an edge piece incident to a removed vertex piece goes too
    for (auto [e, v] : {std::pair{pr.a_piece, pr.b_piece}, std::pair{pr.b_piece, pr.a_piece}}) {
      if (c.pieces[e].kind == Piece::Kind::EdgeSurface && removed[v]) removed[e] = true;
    }
  }
  std::vector<std::vector<int>> adj(c.pieces.size());
  for (const auto& pr : c.pairings) {
    if (removed[pr.a_piece] || removed[pr.b_piece]) continue;
    adj[pr.a_piece].push_back(pr.b_piece);
    adj[pr.b_piece].push_back(pr.a_piece);
  }
  int start = -1, remaining = 0;
  for (const auto& p : c.pieces) {
    if (!removed[p.id]) {
      ++remaining;
      if (start < 0) start = p.id;
    }
  }
  if (remaining == 0) return true;
  std::vector<bool> seen(c.pieces.size(), false);
  std::vector<int> stack{start};
  seen[start] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == remaining;
}

// ---------------------------------------------------------------------------
// Completeness certification over a whole complex.

inline CompletenessCertificate certify_complete(const GluingComplex& c) {
  std::vector<double> lengths;
  for (const auto& p : c.pieces) {
    for (const auto& q : p.ports) lengths.push_back(q.length);
    for (double l : p.cuff_lengths) lengths.push_back(l);
  }
  return certify_lengths(lengths, 2.0 * arcsinh1(), c.recipe.no_planar_ends);
}

// ---------------------------------------------------------------------------
// Serialization.

namespace detail {

inline std::string format_length(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline const char* recipe_kind_name(Recipe::Kind k) {
  switch (k) {
    case Recipe::Kind::XFinite: return "x_finite";
    case Recipe::Kind::XInfinite: return "x_infinite";
    case Recipe::Kind::Y: return "y";
    case Recipe::Kind::YInfinite: return "y_infinite";
    case Recipe::Kind::XGamma: return "x_gamma";
    case Recipe::Kind::Quotient: return "quotient";
    case Recipe::Kind::Manual: return "manual";
  }
  return "manual";
}

inline Recipe::Kind recipe_kind_from_name(const std::string& s) {
  if (s == "x_finite") return Recipe::Kind::XFinite;
  if (s == "x_infinite") return Recipe::Kind::XInfinite;
  if (s == "y") return Recipe::Kind::Y;
  if (s == "y_infinite") return Recipe::Kind::YInfinite;
  if (s == "x_gamma") return Recipe::Kind::XGamma;
  if (s == "quotient") return Recipe::Kind::Quotient;
  return Recipe::Kind::Manual;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const GluingComplex& c) {
  using json = nlohmann::ordered_json;
  json j;
  j["schema_version"] = 1;
  j["seed"] = c.seed;
  json recipe;
  recipe["kind"] = detail::recipe_kind_name(c.recipe.kind);
  recipe["end_space"] = to_json(c.recipe.end_space);
  if (c.recipe.kind == Recipe::Kind::XGamma) {
    recipe["char_system"] = {{"alpha", to_string(c.recipe.cs.alpha)},
                             {"degree", c.recipe.cs.degree}};
  }
  recipe["group"] = c.recipe.group_name;
  recipe["M"] = c.recipe.truncation_M;
  recipe["R"] = c.recipe.ball_radius_R;
  recipe["no_planar_ends"] = c.recipe.no_planar_ends;
  if (c.recipe.corner_case_alpha_zero) recipe["corner_case_alpha_zero"] = true;
  j["recipe"] = std::move(recipe);
  if (c.group) j["group"] = group_to_json(*c.group);
  json pieces = json::array();
  for (const auto& p : c.pieces) {
    json pj;
    pj["id"] = p.id;
    pj["kind"] = p.kind == Piece::Kind::VertexSurface ? "vertex" : "edge";
    pj["owner"] = p.owner;
    pj["g"] = p.g;
    pj["h"] = p.h;
    pj["m"] = p.m;
    json ports = json::array();
    for (const auto& q : p.ports) {
      json qj;
      qj["name"] = q.name;
      qj["length"] = detail::format_length(q.length);
      qj["frontier"] = q.frontier;
      ports.push_back(std::move(qj));
    }
    pj["ports"] = std::move(ports);
    json cuffs = json::array();
    for (double l : p.cuff_lengths) cuffs.push_back(detail::format_length(l));
    pj["cuffs"] = std::move(cuffs);
    json ctw = json::array();
    for (double t : p.cuff_twists) ctw.push_back(detail::format_length(t));
    pj["cuff_twists"] = std::move(ctw);
    if (p.end_summary) pj["end_summary"] = to_json(*p.end_summary);
    pieces.push_back(std::move(pj));
  }
  j["pieces"] = std::move(pieces);
  json pairings = json::array();
  for (const auto& pr : c.pairings) {
    json pj;
    pj["a"] = {pr.a_piece, pr.a_port};
    pj["b"] = {pr.b_piece, pr.b_port};
    pj["orientation_reversing"] = pr.orientation_reversing;
    pj["twist"] = detail::format_length(pr.twist);
    pairings.push_back(std::move(pj));
  }
  j["pairings"] = std::move(pairings);
  auto cert = certify_complete(c);
  j["completeness"] = {{"holds", cert.holds},
                       {"sup_bound", detail::format_length(cert.sup_bound)},
                       {"max_length", detail::format_length(cert.max_length)}};
  return j;
}

inline GluingComplex complex_from_json(const nlohmann::json& j) {
  GluingComplex c;
  c.seed = j.at("seed").get<std::uint64_t>();
  const auto& rj = j.at("recipe");
  c.recipe.kind = detail::recipe_kind_from_name(rj.at("kind").get<std::string>());
  c.recipe.end_space = endspace_from_json(rj.at("end_space"));
  if (rj.contains("char_system")) {
    c.recipe.cs.alpha = parse_ordinal(rj.at("char_system").at("alpha").get<std::string>());
    c.recipe.cs.degree = rj.at("char_system").at("degree").get<std::uint64_t>();
  }
  c.recipe.group_name = rj.at("group").get<std::string>();
  c.recipe.truncation_M = rj.at("M").get<int>();
  c.recipe.ball_radius_R = rj.at("R").get<int>();
  c.recipe.no_planar_ends = rj.at("no_planar_ends").get<bool>();
  c.recipe.corner_case_alpha_zero = rj.value("corner_case_alpha_zero", false);
  if (j.contains("group")) c.group = group_from_json(j.at("group"));
  for (const auto& pj : j.at("pieces")) {
    Piece p;
    p.id = pj.at("id").get<int>();
    p.kind = pj.at("kind").get<std::string>() == "vertex" ? Piece::Kind::VertexSurface
                                                          : Piece::Kind::EdgeSurface;
    p.owner = pj.at("owner").get<std::string>();
    p.g = pj.at("g").get<int>();
    p.h = pj.at("h").get<int>();
    p.m = pj.at("m").get<int>();
    for (const auto& qj : pj.at("ports")) {
      Port q;
      q.name = qj.at("name").get<std::string>();
      q.length = std::stod(qj.at("length").get<std::string>());
      q.frontier = qj.at("frontier").get<bool>();
      p.ports.push_back(std::move(q));
    }
    for (const auto& lj : pj.at("cuffs")) {
      p.cuff_lengths.push_back(std::stod(lj.get<std::string>()));
    }
    for (const auto& tj : pj.at("cuff_twists")) {
      p.cuff_twists.push_back(std::stod(tj.get<std::string>()));
    }
    if (pj.contains("end_summary")) {
      p.end_summary = endspace_from_json(pj.at("end_summary"));
    }
    c.pieces.push_back(std::move(p));
  }
  for (const auto& pj : j.at("pairings")) {
    Pairing pr;
    pr.a_piece = pj.at("a")[0].get<int>();
    pr.a_port = pj.at("a")[1].get<int>();
    pr.b_piece = pj.at("b")[0].get<int>();
    pr.b_port = pj.at("b")[1].get<int>();
    pr.orientation_reversing = pj.at("orientation_reversing").get<bool>();
    pr.twist = std::stod(pj.at("twist").get<std::string>());
    c.pairings.push_back(pr);
  }
  return c;
}

// DOT export: pieces as nodes (vertex = box, edge piece = ellipse),
// pairings as edges labelled with the glued length; order follows piece and
// pairing ids, so output is diff-stable.
inline std::string to_dot(const GluingComplex& c) {
  std::string out = "graph gluing_complex {\n";
  for (const auto& p : c.pieces) {
    out += "  p" + std::to_string(p.id) + " [label=\"" + p.owner + "\", shape=" +
           (p.kind == Piece::Kind::VertexSurface ? "box" : "ellipse") + "];\n";
  }
  for (const auto& pr : c.pairings) {
    out += "  p" + std::to_string(pr.a_piece) + " -- p" + std::to_string(pr.b_piece) +
           " [label=\"" + detail::format_length(c.pieces[pr.a_piece].ports[pr.a_port].length) +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Structural verification.

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string msg) {
    ok = false;
    failures.push_back(std::move(msg));
  }
};

// Rebuild the complex from its recipe and seed; Manual recipes cannot be
// verified this way.
inline GluingComplex rebuild_from_recipe(const GluingComplex& c) {
  switch (c.recipe.kind) {
    case Recipe::Kind::XFinite:
      if (!c.group) throw SynthError("recipe lacks a group table");
      return build_X(c.recipe.end_space, *c.group, c.recipe.truncation_M, c.seed);
    case Recipe::Kind::XInfinite:
      return build_X_infinite(c.recipe.end_space, c.recipe.ball_radius_R,
                              c.recipe.truncation_M, c.seed);
    case Recipe::Kind::Y:
      if (!c.group) throw SynthError("recipe lacks a group table");
      return build_Y(c.recipe.end_space, *c.group, c.recipe.truncation_M, c.seed);
    case Recipe::Kind::YInfinite:
      return build_Y_countable(c.recipe.end_space, c.recipe.ball_radius_R,
                               c.recipe.truncation_M, c.seed);
    case Recipe::Kind::XGamma: {
      VCGroupDescriptor g;
      g.name = c.recipe.group_name;
      g.two_ended_certificate = true;
      return build_X_gamma(g, c.recipe.cs, c.recipe.ball_radius_R, c.seed);
    }
    case Recipe::Kind::Quotient: {
      if (!c.group) throw SynthError("recipe lacks a group table");
      GluingComplex total =
          build_X(c.recipe.end_space, *c.group, c.recipe.truncation_M, c.seed);
      return quotient(total, *c.group).quotient;
    }
    case Recipe::Kind::Manual:
      break;
  }
  throw UnknownRecipeError();
}

inline VerifyReport verify_complex(const GluingComplex& c,
                                   bool check_automorphisms = true) {
  VerifyReport report;
  LengthBudget budget;

  for (const auto& p : c.pieces) {
    if (p.kind == Piece::Kind::EdgeSurface && p.ports.size() != 2) {
      report.fail("edge piece " + p.owner + " does not have exactly 2 ports");
    }
    for (const auto& q : p.ports) {
      if (!budget.boundary_ok(q.length)) {
        report.fail("port " + q.name + " on " + p.owner + " outside boundary band");
      }
    }
    for (double l : p.cuff_lengths) {
      if (!budget.cuff_ok(l)) {
        report.fail("cuff on " + p.owner + " outside cuff band");
      }
    }
  }

  std::set<std::pair<int, int>> paired;
  for (const auto& pr : c.pairings) {
    double la = c.pieces[pr.a_piece].ports[pr.a_port].length;
    double lb = c.pieces[pr.b_piece].ports[pr.b_port].length;
    if (la != lb) report.fail("pairing joins unequal lengths");
    for (auto key : {std::pair{pr.a_piece, pr.a_port}, std::pair{pr.b_piece, pr.b_port}}) {
      if (paired.count(key)) report.fail("port paired twice");
      paired.insert(key);
    }
  }
  for (const auto& p : c.pieces) {
    for (std::size_t q = 0; q < p.ports.size(); ++q) {
      bool is_paired = paired.count({p.id, static_cast<int>(q)}) > 0;
      if (!is_paired && !p.ports[q].frontier &&
          c.recipe.kind != Recipe::Kind::Quotient) {
        report.fail("unpaired non-frontier port " + p.ports[q].name + " on " + p.owner);
      }
      if (is_paired && p.ports[q].frontier) {
        report.fail("frontier port " + p.ports[q].name + " is paired");
      }
    }
  }

  auto cert = certify_complete(c);
  if (!cert.holds) report.fail("completeness certificate fails: " + cert.failure);

  if (c.recipe.kind != Recipe::Kind::Manual) {
    try {
      GluingComplex fresh = rebuild_from_recipe(c);
      if (to_json(fresh).dump() != to_json(c).dump()) {
        report.fail("complex differs from deterministic rebuild of its recipe");
      }
    } catch (const std::exception& e) {
      report.fail(std::string("rebuild failed: ") + e.what());
    }
  }

  if (check_automorphisms && c.group &&
      (c.recipe.kind == Recipe::Kind::XFinite || c.recipe.kind == Recipe::Kind::Y)) {
    FiniteGroup aut = complex_automorphisms(c);
    if (!isomorphic(aut, *c.group)) {
      report.fail("decorated automorphism group is not the declared group");
    }
  }
  return report;
}

}  // namespace hypsurf
