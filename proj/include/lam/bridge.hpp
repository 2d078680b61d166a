#pragma once

// Functors between the three module categories: folding a bicomplex onto the
// zigzag algebra of its diagonals (and unfolding back), and the exact functor
// sending a complex of zigzag-algebra modules to a tricomplex.

#include <string>
#include <utility>

#include <lam/bicomplex.hpp>
#include <lam/tricomplex.hpp>
#include <lam/zigzag.hpp>

namespace lam {

// ---------------------------------------------------------------------------
// Bicomplex <-> zigzag module.

// Fold along diagonals: bidegree (i, j) lands at vertex i - j with internal
// degree j, d1 becomes the raising action and d2 the lowering one.  The
// (-1)^{i-j} twist that converts between the two bicomplex conventions is
// exactly what turns anticommuting differentials into commuting actions, so
// converting to the commuting convention and then relabelling handles both
// kinds of input.
template <class K>
AModule<K> bicomplex_bridge(const Bicomplex<K>& b, const ZigzagAlgebra& alg) {
  Bicomplex<K> c = b.convention == Convention::Commute ? b : convert_convention(b);
  GradedSpace s(2);
  for (auto& [d, n] : c.space.dims) s.set_dim(deg2(d[0] - d[1], d[1]), n);
  GradedMap<K> raise(s, s, deg2(1, 0)), lower(s, s, deg2(-1, 1));
  for (auto& [d, blk] : c.d1.blocks) raise.set_block(deg2(d[0] - d[1], d[1]), blk);
  for (auto& [d, blk] : c.d2.blocks) lower.set_block(deg2(d[0] - d[1], d[1]), blk);
  return make_amodule(alg, std::move(s), std::move(raise), std::move(lower));
}

// Unfold: vertex r with internal degree j reappears at bidegree (r + j, j);
// the raising action becomes d1 and (-1)^r times the lowering action becomes
// d2, which restores the anticommuting convention.
template <class K>
Bicomplex<K> bridge_inverse(const AModule<K>& m) {
  GradedSpace s(2);
  for (auto& [d, n] : m.space.dims) s.set_dim(deg2(d[0] + d[1], d[1]), n);
  GradedMap<K> d1(s, s, deg2(1, 0)), d2(s, s, deg2(0, 1));
  for (auto& [d, blk] : m.raise.blocks) d1.set_block(deg2(d[0] + d[1], d[1]), blk);
  for (auto& [d, blk] : m.lower.blocks)
    d2.set_block(deg2(d[0] + d[1], d[1]), d[0] % 2 ? Mat<K>(-blk) : blk);
  return make_bicomplex(std::move(s), std::move(d1), std::move(d2),
                        Convention::Anticommute);
}

// Relabel every vertex by +s.  The diagonal fold twist travels with the
// vertex, so the lowering action picks up a global (-1)^s; this is the module
// image of the bidegree shift {s, 0}.
template <class K>
AModule<K> vertex_shift(const AModule<K>& m, int s) {
  Deg v = deg2(s, 0);
  GradedMap<K> lower = shift_map(m.lower, v);
  if (s % 2) lower = scale(K(-1), lower);
  return make_amodule(m.alg, shift_space(m.space, v), shift_map(m.raise, v),
                      std::move(lower));
}

// ---------------------------------------------------------------------------
// Complexes of zigzag modules -> tricomplexes.

namespace detail {

// (vertex, internal, homological) -> (i1, i2, i3).
inline Deg bridge_deg(const Deg& d) { return deg3(d[0] + d[1], d[1], -d[2]); }

// Relabel the blocks of a structure map, optionally scaling each one by
// (-1)^{vertex} of its source degree.
template <class K>
GradedMap<K> bridge_map(const GradedSpace& s, const Deg& offset, const GradedMap<K>& f,
                        bool dress) {
  GradedMap<K> out(s, s, offset);
  for (auto& [d, blk] : f.blocks)
    out.set_block(bridge_deg(d), dress && d[0] % 2 ? Mat<K>(-blk) : blk);
  return out;
}

}  // namespace detail

// The bridge to tricomplexes: a piece at (vertex r, internal j, homological k)
// lands in tridegree (r + j, j, -k); the raising action becomes d1, the
// lowering action d2, and the complex differential d3, with raise and d
// scaled by (-1)^{i1+i2} at the source so that all six square-zero and
// anticommuting relations close.  Truncated algebras drop the loop relation
// at their boundary vertices, so modules supported there have no tricomplex
// counterpart.
template <class K>
Tricomplex<K> functor_g(const AComplex<K>& c) {
  if (c.alg.truncated)
    for (auto& [d, n] : c.space.dims)
      if (d[0] == c.alg.lo || d[0] == c.alg.hi)
        throw UnsupportedError("bridge functor: truncated boundary vertex " +
                               std::to_string(d[0]) +
                               " carries no commuting relation; use an untruncated "
                               "window containing the support");
  GradedSpace s(3);
  for (auto& [d, n] : c.space.dims) s.set_dim(detail::bridge_deg(d), n);
  GradedMap<K> d1 = detail::bridge_map(s, deg3(1, 0, 0), c.raise, true);
  GradedMap<K> d2 = detail::bridge_map(s, deg3(0, 1, 0), c.lower, false);
  GradedMap<K> d3 = detail::bridge_map(s, deg3(0, 0, 1), c.d, true);
  return make_tricomplex(std::move(s), std::move(d1), std::move(d2), std::move(d3));
}

// Transport of a degree-preserving chain map: blocks relabel with no signs,
// which commutes with the dressed differentials because such a map never
// changes the source vertex parity.
template <class K>
TriMorphism<K> functor_g(const AComplex<K>& x, const AComplex<K>& y,
                         const GradedMap<K>& f) {
  if (f.offset != zero_deg(3))
    throw std::invalid_argument("bridge functor: only degree-preserving maps transport");
  Tricomplex<K> gx = functor_g(x), gy = functor_g(y);
  GradedMap<K> g(gx.space, gy.space, zero_deg(3));
  for (auto& [d, blk] : f.blocks) g.set_block(detail::bridge_deg(d), blk);
  return make_trimorphism(std::move(gx), std::move(gy), std::move(g));
}

}  // namespace lam
