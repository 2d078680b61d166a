#pragma once
// The zigzag algebra of a type-A vertex window, graded right modules over
// it, chain complexes of such modules, and the braid twist functor given as
// the cone on the counit map from a projective tensor block.
//
// Conventions.  A basis path is (src, dst, len) with len <= 2; loops are the
// len-2 paths with src == dst, and the two loop presentations at a vertex
// are identified.  Internal degree: idempotents 0; an edge has degree 0 when
// it steps up (dst == src + 1) and degree 1 when it steps down; loops 1.
// A module stores one space dimension per (vertex, internal degree) and two
// action maps: `raise` (the degree-0 edges, vertex +1) and `lower` (the
// degree-1 edges, vertex -1, internal degree +1), with raise^2 = lower^2 = 0
// and raise o lower = lower o raise (the loop action).  The projective P_r
// generated at (r, j) then has its degree-0 edge element at vertex r+1 and
// its degree-1 edge element at vertex r-1, matching the graded dimensions
// {deg j: 2, deg j+1: 2} of the interior diamond.
//
// Complexes are graded by (vertex, internal, homological) with the
// differential lowering homological degree; the shift [s] is a pure relabel
// and the cone carries the signs C(f)(x, y) = (-d x, f x + d y).

#include <set>

#include "lam/errors.hpp"
#include "lam/homology.hpp"
#include "lam/solver.hpp"

namespace lam {

// ---------------------------------------------------------------------------
// Algebra.

struct ZigzagAlgebra {
  FieldSpec field;
  int lo = 1, hi = 1;
  // Truncated: the finite algebra on exactly these vertices (boundary
  // projectives are 3-dimensional).  Untruncated: a window into the
  // infinite algebra; operations needing out-of-window neighbors refuse.
  bool truncated = false;

  struct Path {
    int src = 0, dst = 0, len = 0;
    friend bool operator==(const Path& a, const Path& b) {
      return a.src == b.src && a.dst == b.dst && a.len == b.len;
    }
  };
  std::vector<Path> basis;
  std::vector<std::vector<int>> mult;  // basis index or -1 for zero

  int index_of(const Path& p) const {
    for (size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == p) return static_cast<int>(i);
    return -1;
  }
};

inline int path_degree(const ZigzagAlgebra::Path& p) {
  if (p.len == 0) return 0;
  if (p.len == 1) return p.dst == p.src + 1 ? 0 : 1;
  return 1;
}

inline std::string str(const ZigzagAlgebra::Path& p) {
  std::ostringstream os;
  if (p.len == 0) os << '(' << p.src << ')';
  else if (p.len == 1) os << '(' << p.src << '|' << p.dst << ')';
  else os << '(' << p.src << '|' << p.src << "+-1|" << p.src << ')';
  return os.str();
}

inline ZigzagAlgebra build_algebra(FieldSpec field, int lo, int hi, bool truncated = false) {
  if (hi < lo) throw std::invalid_argument("zigzag algebra: window must satisfy hi >= lo");
  ZigzagAlgebra a;
  a.field = field;
  a.lo = lo;
  a.hi = hi;
  a.truncated = truncated;
  using Path = ZigzagAlgebra::Path;
  for (int r = lo; r <= hi; ++r) a.basis.push_back(Path{r, r, 0});
  for (int r = lo; r <= hi; ++r) {
    if (r + 1 <= hi) a.basis.push_back(Path{r, r + 1, 1});
    if (r - 1 >= lo) a.basis.push_back(Path{r, r - 1, 1});
  }
  for (int r = lo; r <= hi; ++r)
    if (r + 1 <= hi || r - 1 >= lo) a.basis.push_back(Path{r, r, 2});

  int n = static_cast<int>(a.basis.size());
  a.mult.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Path &p = a.basis[i], &q = a.basis[j];
      if (p.dst != q.src) continue;
      int len = p.len + q.len;
      if (len >= 3) continue;                    // paths of length >= 3 vanish
      if (len == 2 && p.src != q.dst) continue;  // straight length-2 paths vanish
      a.mult[i][j] = a.index_of(Path{p.src, q.dst, len});
    }
  return a;
}

inline bool same_window(const ZigzagAlgebra& a, const ZigzagAlgebra& b) {
  return a.lo == b.lo && a.hi == b.hi && a.truncated == b.truncated;
}

namespace detail {

inline void check_same_window(const ZigzagAlgebra& a, const ZigzagAlgebra& b) {
  if (!same_window(a, b))
    throw std::invalid_argument("zigzag: operands live over different algebra windows");
}

template <class K>
const Deg* first_bad(const GradedMap<K>& rel) {
  for (auto& [d, b] : rel.blocks)
    if (!is_zero_mat(b)) return &d;
  return nullptr;
}

template <class K>
void check_action(const ZigzagAlgebra& alg, const GradedSpace& space,
                  const GradedMap<K>& raise, const GradedMap<K>& lower) {
  for (auto& [d, n] : space.dims)
    if (d[0] < alg.lo || d[0] > alg.hi)
      throw ValidationError("zigzag module: support at vertex " + std::to_string(d[0]) +
                            " outside the window");
  if (auto* d = first_bad(compose(raise, raise)))
    throw ValidationError("zigzag module: raise^2 != 0 at " + str(*d));
  if (auto* d = first_bad(compose(lower, lower)))
    throw ValidationError("zigzag module: lower^2 != 0 at " + str(*d));
  // At a truncated boundary vertex only one of the two loop presentations
  // exists; the composite through the missing neighbor is forced to zero
  // while the surviving loop acts freely, so no relation binds there.
  GradedMap<K> comm = sub(compose(raise, lower), compose(lower, raise));
  for (auto& [d, b] : comm.blocks) {
    if (alg.truncated && (d[0] == alg.lo || d[0] == alg.hi)) continue;
    if (!is_zero_mat(b))
      throw ValidationError("zigzag module: raise and lower do not commute at " + str(d));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Modules and complexes.

template <class K>
struct AModule {
  ZigzagAlgebra alg;
  GradedSpace space{2};  // (vertex, internal degree)
  GradedMap<K> raise;    // offset (1, 0)
  GradedMap<K> lower;    // offset (-1, 1)
};

template <class K>
AModule<K> make_amodule(ZigzagAlgebra alg, GradedSpace space, GradedMap<K> raise,
                        GradedMap<K> lower) {
  if (space.arity != 2) throw std::invalid_argument("zigzag module: space must have arity 2");
  if (raise.src != space || raise.dst != space || lower.src != space || lower.dst != space)
    throw std::invalid_argument("zigzag module: actions must be endomorphisms of the space");
  if (raise.offset != deg2(1, 0))
    throw std::invalid_argument("zigzag module: raise offset must be (1,0)");
  if (lower.offset != deg2(-1, 1))
    throw std::invalid_argument("zigzag module: lower offset must be (-1,1)");
  detail::check_action(alg, space, raise, lower);
  return AModule<K>{std::move(alg), std::move(space), std::move(raise), std::move(lower)};
}

template <class K>
struct AComplex {
  ZigzagAlgebra alg;
  GradedSpace space{3};  // (vertex, internal degree, homological degree)
  GradedMap<K> raise;    // offset (1, 0, 0)
  GradedMap<K> lower;    // offset (-1, 1, 0)
  GradedMap<K> d;        // offset (0, 0, -1)
};

template <class K>
AComplex<K> make_acomplex(ZigzagAlgebra alg, GradedSpace space, GradedMap<K> raise,
                          GradedMap<K> lower, GradedMap<K> d) {
  if (space.arity != 3) throw std::invalid_argument("zigzag complex: space must have arity 3");
  if (raise.src != space || raise.dst != space || lower.src != space ||
      lower.dst != space || d.src != space || d.dst != space)
    throw std::invalid_argument("zigzag complex: maps must be endomorphisms of the space");
  if (raise.offset != deg3(1, 0, 0))
    throw std::invalid_argument("zigzag complex: raise offset must be (1,0,0)");
  if (lower.offset != deg3(-1, 1, 0))
    throw std::invalid_argument("zigzag complex: lower offset must be (-1,1,0)");
  if (d.offset != deg3(0, 0, -1))
    throw std::invalid_argument("zigzag complex: d offset must be (0,0,-1)");
  detail::check_action(alg, space, raise, lower);
  if (auto* e = detail::first_bad(compose(d, d)))
    throw ValidationError("zigzag complex: d^2 != 0 at " + str(*e));
  if (auto* e = detail::first_bad(sub(compose(d, raise), compose(raise, d))))
    throw ValidationError("zigzag complex: d does not commute with raise at " + str(*e));
  if (auto* e = detail::first_bad(sub(compose(d, lower), compose(lower, d))))
    throw ValidationError("zigzag complex: d does not commute with lower at " + str(*e));
  return AComplex<K>{std::move(alg), std::move(space), std::move(raise), std::move(lower),
                     std::move(d)};
}

// A module viewed as a one-term complex in homological degree k.
template <class K>
AComplex<K> complex_of(const AModule<K>& m, int k = 0) {
  GradedSpace s(3);
  for (auto& [d, n] : m.space.dims) s.set_dim(deg3(d[0], d[1], k), n);
  GradedMap<K> raise(s, s, deg3(1, 0, 0)), lower(s, s, deg3(-1, 1, 0)),
      dd(s, s, deg3(0, 0, -1));
  for (auto& [d, b] : m.raise.blocks) raise.set_block(deg3(d[0], d[1], k), b);
  for (auto& [d, b] : m.lower.blocks) lower.set_block(deg3(d[0], d[1], k), b);
  return make_acomplex(m.alg, std::move(s), std::move(raise), std::move(lower), std::move(dd));
}

// <j>[k]: relabel internal degree by +j and homological degree by +k.
template <class K>
AComplex<K> shift_complex(const AComplex<K>& c, int j, int k) {
  Deg v = deg3(0, j, k);
  return AComplex<K>{c.alg, shift_space(c.space, v), shift_map(c.raise, v),
                     shift_map(c.lower, v), shift_map(c.d, v)};
}

template <class K>
std::map<Deg, int> homology_dims(const AComplex<K>& c) {
  std::map<Deg, int> out;
  for (auto& [d, n] : graded_cohomology(c.space, c.d).h.dims) out[d] = n;
  return out;
}

// ---------------------------------------------------------------------------
// Projective modules.

// P_r<j>: generator e at (r, j); degree-0 edge element at (r+1, j); degree-1
// edge element at (r-1, j+1); loop at (r, j+1).  Pieces whose vertex falls
// outside a truncated window are absent (boundary projectives have 3 basis
// elements); the untruncated window refuses boundary vertices instead.
template <class K>
AModule<K> projective(const ZigzagAlgebra& alg, int r, int j) {
  if (r < alg.lo || r > alg.hi)
    throw std::invalid_argument("projective: vertex " + std::to_string(r) +
                                " outside the window");
  if (!alg.truncated && (r == alg.lo || r == alg.hi))
    throw UnsupportedError(
        "projective: boundary vertex " + std::to_string(r) +
        " needs an out-of-window neighbor; enlarge the window or build the "
        "truncated algebra");
  bool has_b = r + 1 <= alg.hi, has_a = r - 1 >= alg.lo;
  bool has_c = has_b || has_a;
  GradedSpace sp(2);
  sp.set_dim(deg2(r, j), 1);
  if (has_b) sp.set_dim(deg2(r + 1, j), 1);
  if (has_a) sp.set_dim(deg2(r - 1, j + 1), 1);
  if (has_c) sp.set_dim(deg2(r, j + 1), 1);
  GradedMap<K> raise(sp, sp, deg2(1, 0)), lower(sp, sp, deg2(-1, 1));
  Mat<K> unit(1, 1);
  unit(0, 0) = K(1);
  if (has_b) raise.set_block(deg2(r, j), unit);
  if (has_a) raise.set_block(deg2(r - 1, j + 1), unit);
  if (has_a) lower.set_block(deg2(r, j), unit);
  if (has_b) lower.set_block(deg2(r + 1, j), unit);
  return make_amodule(alg, std::move(sp), std::move(raise), std::move(lower));
}

// ---------------------------------------------------------------------------
// Hom spaces and homotopies.

// Basis of module maps M -> N raising internal degree by j.
template <class K>
std::vector<GradedMap<K>> hom_modules(const AModule<K>& m, const AModule<K>& n, int j) {
  detail::check_same_window(m.alg, n.alg);
  MapSolver<K> solver(m.space, n.space, deg2(0, j));
  solver.require_commute(n.raise, m.raise, K(-1));
  solver.require_commute(n.lower, m.lower, K(-1));
  return solver.kernel();
}

// Basis of chain maps M -> N of offset (0, j, k) (module maps commuting with
// the differentials on the nose).
template <class K>
std::vector<GradedMap<K>> chain_maps(const AComplex<K>& m, const AComplex<K>& n, int j,
                                     int k) {
  detail::check_same_window(m.alg, n.alg);
  MapSolver<K> solver(m.space, n.space, deg3(0, j, k));
  solver.require_commute(n.raise, m.raise, K(-1));
  solver.require_commute(n.lower, m.lower, K(-1));
  solver.require_commute(n.d, m.d, K(-1));
  return solver.kernel();
}

namespace detail {

template <class K>
void check_chain_map(const AComplex<K>& m, const AComplex<K>& n, const GradedMap<K>& f) {
  check_same_window(m.alg, n.alg);
  if (f.src != m.space || f.dst != n.space)
    throw std::invalid_argument("zigzag: map does not match the given complexes");
  if (first_bad(sub(compose(n.raise, f), compose(f, m.raise))) ||
      first_bad(sub(compose(n.lower, f), compose(f, m.lower))) ||
      first_bad(sub(compose(n.d, f), compose(f, m.d))))
    throw std::invalid_argument("zigzag: not a chain map of module complexes");
}

}  // namespace detail

// Homotopy witness h (a module map one homological step up) with
// d h + h d = f, if one exists.  f must be a chain map.
template <class K>
std::optional<GradedMap<K>> null_homotopy(const AComplex<K>& m, const AComplex<K>& n,
                                          const GradedMap<K>& f) {
  detail::check_chain_map(m, n, f);
  MapSolver<K> solver(m.space, n.space, f.offset + deg3(0, 0, 1));
  solver.require_commute(n.raise, m.raise, K(-1));
  solver.require_commute(n.lower, m.lower, K(-1));
  MapConstraint<K> c;
  c.terms.push_back(MapTerm<K>{K(1), n.d, std::nullopt});
  c.terms.push_back(MapTerm<K>{K(1), std::nullopt, m.d});
  c.rhs = f;
  solver.add_constraint(std::move(c));
  return solver.solve_particular();
}

template <class K>
bool is_null_homotopic(const AComplex<K>& m, const AComplex<K>& n, const GradedMap<K>& f) {
  return static_cast<bool>(null_homotopy(m, n, f));
}

// dim of chain maps of offset (0, j, k) modulo the null-homotopic ones.
template <class K>
int hom_homotopy(const AComplex<K>& m, const AComplex<K>& n, int j, int k) {
  detail::check_same_window(m.alg, n.alg);
  int chain = static_cast<int>(chain_maps(m, n, j, k).size());
  // Module maps one homological step above the offset...
  MapSolver<K> free_h(m.space, n.space, deg3(0, j, k + 1));
  free_h.require_commute(n.raise, m.raise, K(-1));
  free_h.require_commute(n.lower, m.lower, K(-1));
  int total_h = static_cast<int>(free_h.kernel().size());
  // ...minus those with d h + h d = 0 gives the rank of h |-> d h + h d.
  MapSolver<K> closed_h(m.space, n.space, deg3(0, j, k + 1));
  closed_h.require_commute(n.raise, m.raise, K(-1));
  closed_h.require_commute(n.lower, m.lower, K(-1));
  MapConstraint<K> c;
  c.terms.push_back(MapTerm<K>{K(1), n.d, std::nullopt});
  c.terms.push_back(MapTerm<K>{K(1), std::nullopt, m.d});
  closed_h.add_constraint(std::move(c));
  int kernel_h = static_cast<int>(closed_h.kernel().size());
  return chain - (total_h - kernel_h);
}

// ---------------------------------------------------------------------------
// Cone.

// C(f) = X[1] (+) Y with d(x, y) = (-d x, f x + d y) and the diagonal
// algebra action; f must be a degree-0 chain map.
template <class K>
AComplex<K> cone(const AComplex<K>& x, const AComplex<K>& y, const GradedMap<K>& f) {
  detail::check_chain_map(x, y, f);
  if (f.offset != zero_deg(3))
    throw std::invalid_argument("cone: the map must preserve all degrees");
  Deg e3 = deg3(0, 0, 1);
  SumDecomp<K> s = sum_with_maps<K>(shift_space(x.space, e3), y.space);
  auto part = [&](const GradedMap<K>& inj, const GradedMap<K>& map,
                  const GradedMap<K>& proj) { return compose(inj, compose(map, proj)); };
  GradedMap<K> raise = add(part(s.in1, shift_map(x.raise, e3), s.pr1),
                           part(s.in2, y.raise, s.pr2));
  GradedMap<K> lower = add(part(s.in1, shift_map(x.lower, e3), s.pr1),
                           part(s.in2, y.lower, s.pr2));
  GradedMap<K> d = add(add(part(s.in1, scale(K(-1), shift_map(x.d, e3)), s.pr1),
                           part(s.in2, shift_source(f, e3), s.pr1)),
                       part(s.in2, y.d, s.pr2));
  return make_acomplex(x.alg, s.sum, std::move(raise), std::move(lower), std::move(d));
}

// ---------------------------------------------------------------------------
// Braid twist.

// The braid generator at vertex r: the cone on the evaluation map
// P_r (x) W -> M, where W is the vertex-r slice of M (one graded space per
// (internal, homological) degree, with the restricted differential) and the
// evaluation sends e (x) w to w, extended as a module map.  Vertex r needs
// both neighbors in the untruncated window.
template <class K>
AComplex<K> braid_twist(int r, const AComplex<K>& m) {
  const ZigzagAlgebra& alg = m.alg;
  if (r < alg.lo || r > alg.hi)
    throw std::invalid_argument("braid twist: vertex " + std::to_string(r) +
                                " outside the window");
  if (!alg.truncated && (r == alg.lo || r == alg.hi))
    throw UnsupportedError(
        "braid twist: boundary vertex " + std::to_string(r) +
        " needs an out-of-window neighbor; enlarge the window or build the "
        "truncated algebra");
  bool has_b = r + 1 <= alg.hi, has_a = r - 1 >= alg.lo;
  bool has_c = has_b || has_a;

  std::map<std::pair<int, int>, int> w;  // (j, k) -> dim of M at (r, j, k)
  for (auto& [d, n] : m.space.dims)
    if (d[0] == r) w[{d[1], d[2]}] = n;
  auto wdim = [&w](int j, int k) {
    auto it = w.find({j, k});
    return it == w.end() ? 0 : it->second;
  };

  // X = P_r (x) W.  Per (j, k): e-part at (r, j, k), b-part at (r+1, j, k),
  // a-part at (r-1, j+1, k), c-part at (r, j+1, k); within a vertex-r degree
  // the e-part columns come first, then the c-part (fed from internal j-1).
  GradedSpace xs(3);
  std::set<std::pair<int, int>> host;
  for (auto& [jk, n] : w) {
    host.insert(jk);
    if (has_c) host.insert({jk.first + 1, jk.second});
  }
  for (auto& jk : host) {
    int n = wdim(jk.first, jk.second) + (has_c ? wdim(jk.first - 1, jk.second) : 0);
    if (n) xs.set_dim(deg3(r, jk.first, jk.second), n);
  }
  for (auto& [jk, n] : w) {
    if (has_b) xs.set_dim(deg3(r + 1, jk.first, jk.second), n);
    if (has_a) xs.set_dim(deg3(r - 1, jk.first + 1, jk.second), n);
  }

  GradedMap<K> raise(xs, xs, deg3(1, 0, 0)), lower(xs, xs, deg3(-1, 1, 0)),
      d(xs, xs, deg3(0, 0, -1)), f(xs, m.space, zero_deg(3));
  for (auto& jk : host) {
    auto [j, k] = jk;
    int ne = wdim(j, k), nc = has_c ? wdim(j - 1, k) : 0;
    if (ne + nc == 0) continue;
    // raise: e -> b identically; the a-part block below handles a -> c.
    if (has_b && ne) {
      Mat<K> blk = Mat<K>::Zero(ne, ne + nc);
      blk.leftCols(ne) = Mat<K>::Identity(ne, ne);
      raise.set_block(deg3(r, j, k), blk);
    }
    // lower: e -> a identically.
    if (has_a && ne) {
      Mat<K> blk = Mat<K>::Zero(ne, ne + nc);
      blk.leftCols(ne) = Mat<K>::Identity(ne, ne);
      lower.set_block(deg3(r, j, k), blk);
    }
    // differential: diagonal (d on W_{j,k}, d on W_{j-1,k}).
    int me = wdim(j, k - 1), mc = has_c ? wdim(j - 1, k - 1) : 0;
    if (me + mc) {
      Mat<K> blk = Mat<K>::Zero(me + mc, ne + nc);
      if (me && ne) blk.topLeftCorner(me, ne) = m.d.block(deg3(r, j, k));
      if (mc && nc) blk.bottomRightCorner(mc, nc) = m.d.block(deg3(r, j - 1, k));
      d.set_block(deg3(r, j, k), blk);
    }
    // evaluation: e (x) w -> w; c (x) w -> lower(raise(w)).
    if (m.space.dim(deg3(r, j, k))) {
      Mat<K> blk = Mat<K>::Zero(m.space.dim(deg3(r, j, k)), ne + nc);
      if (ne) blk.leftCols(ne) = Mat<K>::Identity(ne, ne);
      if (nc)
        blk.rightCols(nc) =
            mul(m.lower.block(deg3(r + 1, j - 1, k)), m.raise.block(deg3(r, j - 1, k)));
      f.set_block(deg3(r, j, k), blk);
    }
  }
  for (auto& [jk, n] : w) {
    auto [j, k] = jk;
    Mat<K> dw = m.d.block(deg3(r, j, k));  // W_{j,k} -> W_{j,k-1}
    int ce = wdim(j + 1, k);
    Mat<K> into_c = Mat<K>::Zero(ce + n, n);
    into_c.bottomRows(n) = Mat<K>::Identity(n, n);
    if (has_b) {
      if (dw.rows()) d.set_block(deg3(r + 1, j, k), dw);
      lower.set_block(deg3(r + 1, j, k), into_c);  // b -> c
      f.set_block(deg3(r + 1, j, k), m.raise.block(deg3(r, j, k)));
    }
    if (has_a) {
      if (dw.rows()) d.set_block(deg3(r - 1, j + 1, k), dw);
      raise.set_block(deg3(r - 1, j + 1, k), into_c);  // a -> c
      f.set_block(deg3(r - 1, j + 1, k), m.lower.block(deg3(r, j, k)));
    }
  }
  AComplex<K> x = make_acomplex(alg, std::move(xs), std::move(raise), std::move(lower),
                                std::move(d));
  return cone(x, m, f);
}

// ---------------------------------------------------------------------------
// Braid words.

struct BraidLetter {
  int index = 0;
  int sign = 1;  // +1 or -1
};
using BraidWord = std::vector<BraidLetter>;

// Left-to-right application of the positive generators.  Negative letters
// have no zigzag-side model; mixed words are evaluated in the stable
// tricomplex category instead.
template <class K>
AComplex<K> braid_apply(const BraidWord& word, AComplex<K> m) {
  for (auto& letter : word) {
    if (letter.sign < 0)
      throw UnsupportedError(
          "braid apply: negative letters are not available on zigzag complexes; "
          "evaluate the word in the stable tricomplex category");
    m = braid_twist(letter.index, m);
  }
  return m;
}

}  // namespace lam
