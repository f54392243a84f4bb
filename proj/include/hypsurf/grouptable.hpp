#pragma once

// Finite groups as Cayley multiplication tables, Cayley graph construction,
// and brute-force label/direction-preserving automorphism groups.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace hypsurf {

class GroupTableError : public std::runtime_error {
 public:
  enum class Axiom { NotSquare, IndexOutOfRange, NotLatin, NoIdentity, NotAssociative };
  Axiom axiom;
  int g = -1, h = -1, k = -1;  // offending triple where applicable

  GroupTableError(Axiom a, std::string msg, int g_ = -1, int h_ = -1, int k_ = -1)
      : std::runtime_error(std::move(msg)), axiom(a), g(g_), h(h_), k(k_) {}
};

struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;  // table[g][h] = g*h
  int identity = 0;

  std::size_t order() const { return names.size(); }
  int mul(int g, int h) const { return table[g][h]; }

  int inverse(int g) const {
    for (std::size_t h = 0; h < order(); ++h) {
      if (table[g][h] == identity) return static_cast<int>(h);
    }
    throw GroupTableError(GroupTableError::Axiom::NoIdentity, "element has no inverse", g);
  }

  int element_order(int g) const {
    int x = g, n = 1;
    while (x != identity) {
      x = mul(x, g);
      ++n;
    }
    return n;
  }

  std::vector<int> order_profile() const {
    std::vector<int> profile(order());
    for (std::size_t g = 0; g < order(); ++g) profile[g] = element_order(static_cast<int>(g));
    std::sort(profile.begin(), profile.end());
    return profile;
  }

  bool is_abelian() const {
    for (std::size_t g = 0; g < order(); ++g)
      for (std::size_t h = g + 1; h < order(); ++h)
        if (table[g][h] != table[h][g]) return false;
    return true;
  }
};

inline FiniteGroup validate_table(std::vector<std::string> names,
                                  std::vector<std::vector<int>> table) {
  const std::size_t n = names.size();
  if (n == 0 || table.size() != n) {
    throw GroupTableError(GroupTableError::Axiom::NotSquare, "table is not n x n");
  }
  for (const auto& row : table) {
    if (row.size() != n) {
      throw GroupTableError(GroupTableError::Axiom::NotSquare, "table is not n x n");
    }
    for (int v : row) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw GroupTableError(GroupTableError::Axiom::IndexOutOfRange,
                              "table entry out of range");
      }
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t h = 0; h < n; ++h) {
      if (row_seen[table[g][h]]) {
        throw GroupTableError(GroupTableError::Axiom::NotLatin,
                              "row " + names[g] + " repeats an entry",
                              static_cast<int>(g));
      }
      row_seen[table[g][h]] = true;
      if (col_seen[table[h][g]]) {
        throw GroupTableError(GroupTableError::Axiom::NotLatin,
                              "column " + names[g] + " repeats an entry",
                              static_cast<int>(g));
      }
      col_seen[table[h][g]] = true;
    }
  }
  std::optional<int> identity;
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) {
      ok = table[e][g] == static_cast<int>(g) && table[g][e] == static_cast<int>(g);
    }
    if (ok) {
      identity = static_cast<int>(e);
      break;
    }
  }
  if (!identity) {
    throw GroupTableError(GroupTableError::Axiom::NoIdentity, "no two-sided identity");
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t h = 0; h < n; ++h) {
      for (std::size_t k = 0; k < n; ++k) {
        if (table[table[g][h]][k] != table[g][table[h][k]]) {
          throw GroupTableError(
              GroupTableError::Axiom::NotAssociative,
              "(" + names[g] + "*" + names[h] + ")*" + names[k] + " != " + names[g] +
                  "*(" + names[h] + "*" + names[k] + ")",
              static_cast<int>(g), static_cast<int>(h), static_cast<int>(k));
        }
      }
    }
  }
  return FiniteGroup{std::move(names), std::move(table), *identity};
}

// ---------------------------------------------------------------------------
// Builtin constructors.

namespace detail {

// Close a set of permutations under composition and build the group table.
inline FiniteGroup group_from_permutations(std::vector<std::vector<int>> gens,
                                           const std::string& prefix) {
  const std::size_t deg = gens.front().size();
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  auto find = [&](const std::vector<int>& p) -> int {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == p) return static_cast<int>(i);
    return -1;
  };
  for (const auto& g : gens)
    if (find(g) < 0) elems.push_back(g);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      std::vector<int> prod(deg);
      for (std::size_t x = 0; x < deg; ++x) prod[x] = elems[i][g[x]];
      if (find(prod) < 0) elems.push_back(std::move(prod));
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<int> prod(deg);
      for (std::size_t x = 0; x < deg; ++x) prod[x] = elems[a][elems[b][x]];
      table[a][b] = find(prod);
    }
  }
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = prefix + std::to_string(i);
  return validate_table(std::move(names), std::move(table));
}

}  // namespace detail

inline FiniteGroup trivial_group() {
  return validate_table({"e"}, {{0}});
}

inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw GroupTableError(GroupTableError::Axiom::NotSquare, "order must be >= 1");
  std::vector<std::string> names(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    names[i] = "g" + std::to_string(i);
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return validate_table(std::move(names), std::move(table));
}

// Dihedral group of order 2n (symmetries of the n-gon), n >= 2.
inline FiniteGroup dihedral_group(int n) {
  if (n < 2) throw GroupTableError(GroupTableError::Axiom::NotSquare, "need n >= 2");
  std::vector<int> rot(n), refl(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  return detail::group_from_permutations({rot, refl}, "d");
}

inline FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 4) {
    throw GroupTableError(GroupTableError::Axiom::NotSquare, "symmetric group supports n <= 4");
  }
  if (n == 1) return trivial_group();
  std::vector<int> swap01(n), cycle(n);
  for (int i = 0; i < n; ++i) {
    swap01[i] = i;
    cycle[i] = (i + 1) % n;
  }
  std::swap(swap01[0], swap01[1]);
  return detail::group_from_permutations({swap01, cycle}, "s");
}

inline FiniteGroup alternating_group(int n) {
  if (n < 3 || n > 5) {
    throw GroupTableError(GroupTableError::Axiom::NotSquare, "alternating group supports 3 <= n <= 5");
  }
  std::vector<int> three(n), other(n);
  std::iota(three.begin(), three.end(), 0);
  other = three;
  // (0 1 2) and, for n > 3, an n-cycle (n odd) or (1 2 ... n-1) (n even)
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  if (n == 3) return detail::group_from_permutations({three}, "a");
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i) other[i] = (i + 1) % n;
  } else {
    for (int i = 1; i < n; ++i) other[i] = 1 + (i % (n - 1));
  }
  return detail::group_from_permutations({three, other}, "a");
}

inline FiniteGroup quaternion_group() {
  // {1, -1, i, -i, j, -j, k, -k} as indices 0..7
  const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  auto neg = [](int x) { return x ^ 1; };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  // base products on {1,i,j,k} (indices 0,2,4,6); sign handled separately
  auto base_mul = [&](int a, int b, int& sign) {
    static const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sgn[4][4] = {{+1, +1, +1, +1},
                                  {+1, -1, +1, -1},
                                  {+1, -1, -1, +1},
                                  {+1, +1, -1, -1}};
    sign = sgn[a][b];
    return prod[a][b];
  };
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      int sign;
      int base = base_mul(a / 2, b / 2, sign);
      int out = base * 2;
      if ((a % 2) ^ (b % 2)) sign = -sign;
      if (sign < 0) out = neg(out);
      table[a][b] = out;
    }
  }
  return validate_table(names, std::move(table));
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.order(), m = b.order();
  std::vector<std::string> names(n * m);
  std::vector<std::vector<int>> table(n * m, std::vector<int>(n * m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      names[i * m + j] = "(" + a.names[i] + "," + b.names[j] + ")";
    }
  }
  for (std::size_t i = 0; i < n * m; ++i) {
    for (std::size_t j = 0; j < n * m; ++j) {
      int x = a.table[i / m][j / m];
      int y = b.table[i % m][j % m];
      table[i][j] = x * static_cast<int>(m) + y;
    }
  }
  return validate_table(std::move(names), std::move(table));
}

// Builtin lookup by name: Z<n>, D<n> (order 2n), S<n>, A<n>, Q8, trivial,
// and products like Z2xZ2.
inline std::optional<FiniteGroup> builtin_group(const std::string& name) {
  auto piece = [](const std::string& s) -> std::optional<FiniteGroup> {
    if (s == "trivial" || s == "Z1") return trivial_group();
    if (s == "Q8") return quaternion_group();
    if (s.size() >= 2) {
      char kind = s[0];
      int n = 0;
      try {
        n = std::stoi(s.substr(1));
      } catch (...) {
        return std::nullopt;
      }
      if (kind == 'Z') return cyclic_group(n);
      if (kind == 'D') return dihedral_group(n);
      if (kind == 'S') return symmetric_group(n);
      if (kind == 'A') return alternating_group(n);
    }
    return std::nullopt;
  };
  std::vector<std::string> factors;
  std::size_t start = 0;
  while (true) {
    auto x = name.find('x', start);
    if (x == std::string::npos) {
      factors.push_back(name.substr(start));
      break;
    }
    factors.push_back(name.substr(start, x - start));
    start = x + 1;
  }
  std::optional<FiniteGroup> acc;
  for (const auto& f : factors) {
    auto g = piece(f);
    if (!g) return std::nullopt;
    acc = acc ? direct_product(*acc, *g) : std::move(*g);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Table ingestion: CSV (header row of element names, then a matrix of
// names) and JSON ({"names": [...], "table": [[...]]} with indices).

inline FiniteGroup group_from_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      auto b = cell.find_first_not_of(" \t");
      auto e = cell.find_last_not_of(" \t");
      cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) {
    throw GroupTableError(GroupTableError::Axiom::NotSquare, "empty CSV");
  }
  const auto& names = rows.front();
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::vector<int> row;
    for (const auto& cell : rows[r]) {
      auto it = index.find(cell);
      if (it == index.end()) {
        throw GroupTableError(GroupTableError::Axiom::IndexOutOfRange,
                              "unknown element name in CSV: " + cell);
      }
      row.push_back(it->second);
    }
    table.push_back(std::move(row));
  }
  return validate_table(names, std::move(table));
}

inline FiniteGroup group_from_json(const nlohmann::json& j) {
  std::vector<std::string> names = j.at("names").get<std::vector<std::string>>();
  std::vector<std::vector<int>> table = j.at("table").get<std::vector<std::vector<int>>>();
  return validate_table(std::move(names), std::move(table));
}

inline nlohmann::ordered_json group_to_json(const FiniteGroup& g) {
  nlohmann::ordered_json j;
  j["names"] = g.names;
  j["table"] = g.table;
  return j;
}

// ---------------------------------------------------------------------------
// Cayley graphs.

struct CayleyGraph {
  struct Edge {
    int src, dst, label;
  };
  std::vector<std::string> vertex_names;
  std::vector<std::string> label_names;
  std::vector<Edge> edges;

  std::size_t order() const { return vertex_names.size(); }
};

// Complete variant: one directed edge per ordered pair (g, h), h != id,
// from g to g*h labelled h.
inline CayleyGraph complete_cayley_graph(const FiniteGroup& g) {
  CayleyGraph c;
  c.vertex_names = g.names;
  const int n = static_cast<int>(g.order());
  std::vector<int> label_of(n, -1);
  for (int h = 0; h < n; ++h) {
    if (h == g.identity) continue;
    label_of[h] = static_cast<int>(c.label_names.size());
    c.label_names.push_back(g.names[h]);
  }
  for (int v = 0; v < n; ++v) {
    for (int h = 0; h < n; ++h) {
      if (h == g.identity) continue;
      c.edges.push_back({v, g.mul(v, h), label_of[h]});
    }
  }
  return c;
}

// Generating-set variant: one edge per (g, s) with s drawn from the given
// (element-index) generating set.
inline CayleyGraph generating_cayley_graph(const FiniteGroup& g, const std::vector<int>& gens) {
  CayleyGraph c;
  c.vertex_names = g.names;
  for (std::size_t s = 0; s < gens.size(); ++s) c.label_names.push_back(g.names[gens[s]]);
  for (int v = 0; v < static_cast<int>(g.order()); ++v) {
    for (std::size_t s = 0; s < gens.size(); ++s) {
      c.edges.push_back({v, g.mul(v, gens[s]), static_cast<int>(s)});
    }
  }
  return c;
}

namespace detail {

// Vertex bijections preserving every labelled directed edge.  Out-degree
// one per label makes the extension of a seed assignment deterministic.
inline std::vector<std::vector<int>> labelled_digraph_automorphisms(const CayleyGraph& c) {
  const int n = static_cast<int>(c.order());
  const int labels = static_cast<int>(c.label_names.size());
  std::vector<std::vector<int>> out(n, std::vector<int>(labels, -1));
  std::vector<std::vector<int>> in(n, std::vector<int>(labels, -1));
  for (const auto& e : c.edges) {
    if (out[e.src][e.label] != -1 || in[e.dst][e.label] != -1) {
      throw GroupTableError(GroupTableError::Axiom::NotLatin,
                            "graph violates the out/in-degree-one invariant");
    }
    out[e.src][e.label] = e.dst;
    in[e.dst][e.label] = e.src;
  }
  std::vector<std::vector<int>> autos;
  if (n == 0) return autos;
  for (int image0 = 0; image0 < n; ++image0) {
    std::vector<int> sigma(n, -1), used(n, 0);
    sigma[0] = image0;
    used[image0] = 1;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi) {
      const int v = queue[qi];
      for (int l = 0; l < labels && ok; ++l) {
        int w = out[v][l];
        if (w < 0) continue;
        int target = out[sigma[v]][l];
        if (target < 0) {
          ok = false;
        } else if (sigma[w] == -1) {
          if (used[target]) {
            ok = false;
          } else {
            sigma[w] = target;
            used[target] = 1;
            queue.push_back(w);
          }
        } else if (sigma[w] != target) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    // Disconnected graphs are outside the Cayley invariants; require a full
    // assignment from the single seed.
    if (static_cast<int>(queue.size()) != n) {
      if (n == 1) {
        autos.push_back({0});
      }
      continue;
    }
    // confirm every edge is preserved
    for (const auto& e : c.edges) {
      if (out[sigma[e.src]][e.label] != sigma[e.dst]) {
        ok = false;
        break;
      }
    }
    if (ok) autos.push_back(std::move(sigma));
  }
  return autos;
}

inline FiniteGroup group_from_closed_permutations(std::vector<std::vector<int>> elems,
                                                  const std::string& prefix) {
  const std::size_t n = elems.size();
  const std::size_t deg = elems.front().size();
  std::vector<int> id(deg);
  std::iota(id.begin(), id.end(), 0);
  std::sort(elems.begin(), elems.end());
  auto find = [&](const std::vector<int>& p) -> int {
    auto it = std::lower_bound(elems.begin(), elems.end(), p);
    if (it != elems.end() && *it == p) return static_cast<int>(it - elems.begin());
    return -1;
  };
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<int> prod(deg);
      for (std::size_t x = 0; x < deg; ++x) prod[x] = elems[a][elems[b][x]];
      int idx = find(prod);
      if (idx < 0) {
        throw GroupTableError(GroupTableError::Axiom::NotAssociative,
                              "automorphism set is not closed under composition");
      }
      table[a][b] = idx;
    }
  }
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = prefix + std::to_string(i);
  return validate_table(std::move(names), std::move(table));
}

}  // namespace detail

// The group of vertex bijections preserving direction and labels, returned
// as a permutation group with its own Cayley table.
inline FiniteGroup decorated_automorphisms(const CayleyGraph& c) {
  auto autos = detail::labelled_digraph_automorphisms(c);
  if (autos.empty()) throw GroupTableError(GroupTableError::Axiom::NoIdentity,
                                           "empty automorphism set");
  return detail::group_from_closed_permutations(std::move(autos), "t");
}

// Automorphism count after forgetting labels and directions (the collapse
// the complete-Cayley rigidity guards against).  Brute force; small n only.
inline std::uint64_t undecorated_automorphism_count(const CayleyGraph& c) {
  const int n = static_cast<int>(c.order());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : c.edges) {
    if (e.src != e.dst) {
      adj[e.src][e.dst] = true;
      adj[e.dst][e.src] = true;
    }
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        if (adj[a][b] != adj[perm[a]][perm[b]]) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// ---------------------------------------------------------------------------
// Group isomorphism by invariant-pruned backtracking.

namespace detail {

inline std::vector<int> small_generating_set(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  std::vector<int> gens;
  std::vector<bool> in_closure(n, false);
  std::vector<int> closure{g.identity};
  in_closure[g.identity] = true;
  while (static_cast<int>(closure.size()) < n) {
    int next = -1;
    for (int x = 0; x < n; ++x) {
      if (!in_closure[x]) {
        next = x;
        break;
      }
    }
    gens.push_back(next);
    // extend the closure
    closure.push_back(next);
    in_closure[next] = true;
    for (std::size_t i = 0; i < closure.size(); ++i) {
      for (std::size_t j = 0; j < closure.size(); ++j) {
        int p = g.mul(closure[i], closure[j]);
        if (!in_closure[p]) {
          in_closure[p] = true;
          closure.push_back(p);
        }
      }
    }
  }
  return gens;
}

inline bool extend_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                               const std::vector<int>& gens, std::size_t pos,
                               std::vector<int>& phi) {
  const int n = static_cast<int>(a.order());
  if (pos == gens.size()) return true;
  const int gen = gens[pos];
  const int gen_order = a.element_order(gen);
  for (int image = 0; image < n; ++image) {
    if (b.element_order(image) != gen_order) continue;
    std::vector<int> trial = phi;
    trial[gen] = image;
    // close the partial map under multiplication; detect conflicts
    bool ok = true;
    bool grew = true;
    while (grew && ok) {
      grew = false;
      for (int x = 0; x < n && ok; ++x) {
        if (trial[x] < 0) continue;
        for (int y = 0; y < n && ok; ++y) {
          if (trial[y] < 0) continue;
          int p = a.mul(x, y);
          int q = b.mul(trial[x], trial[y]);
          if (trial[p] < 0) {
            trial[p] = q;
            grew = true;
          } else if (trial[p] != q) {
            ok = false;
          }
        }
      }
    }
    if (!ok) continue;
    // injectivity on the defined part
    std::vector<bool> seen(n, false);
    for (int x = 0; x < n && ok; ++x) {
      if (trial[x] >= 0) {
        if (seen[trial[x]]) ok = false;
        seen[trial[x]] = true;
      }
    }
    if (!ok) continue;
    std::vector<int> saved = phi;
    phi = trial;
    if (extend_isomorphism(a, b, gens, pos + 1, phi)) return true;
    phi = saved;
  }
  return false;
}

}  // namespace detail

inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  if (a.order_profile() != b.order_profile()) return false;
  auto gens = detail::small_generating_set(a);
  std::vector<int> phi(a.order(), -1);
  phi[a.identity] = b.identity;
  return detail::extend_isomorphism(a, b, gens, 0, phi);
}

// All normal subgroups, as sorted element lists; a normal subgroup is a
// union of conjugacy classes closed under multiplication.
inline std::vector<std::vector<int>> normal_subgroups(const FiniteGroup& g) {
  const int n = static_cast<int>(g.order());
  // conjugacy classes
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    std::vector<int> c;
    for (int t = 0; t < n; ++t) {
      int y = g.mul(g.mul(t, x), g.inverse(t));
      if (cls[y] < 0) {
        cls[y] = static_cast<int>(classes.size());
        c.push_back(y);
      }
    }
    classes.push_back(std::move(c));
  }
  const std::size_t k = classes.size();
  std::vector<std::vector<int>> result;
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    if (!(mask & (1ull << cls[g.identity]))) continue;
    std::size_t size = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1ull << i)) size += classes[i].size();
    if (n % size != 0) continue;
    std::vector<bool> in_set(n, false);
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1ull << i))
        for (int x : classes[i]) in_set[x] = true;
    }
    bool closed = true;
    for (int x = 0; x < n && closed; ++x) {
      if (!in_set[x]) continue;
      for (int y = 0; y < n && closed; ++y) {
        if (in_set[y] && !in_set[g.mul(x, y)]) closed = false;
      }
    }
    if (!closed) continue;
    std::vector<int> elems;
    for (int x = 0; x < n; ++x)
      if (in_set[x]) elems.push_back(x);
    result.push_back(std::move(elems));
  }
  return result;
}

inline bool is_simple(const FiniteGroup& g) {
  if (g.order() == 1) return false;
  return normal_subgroups(g).size() == 2;  // {id} and g itself
}

}  // namespace hypsurf
