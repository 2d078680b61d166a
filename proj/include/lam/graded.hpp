#pragma once
// Finite-dimensional multigraded vector spaces and degree-homogeneous
// linear maps between them, stored blockwise per degree.

#include <map>
#include <stdexcept>
#include <vector>

#include "lam/degree.hpp"
#include "lam/dense.hpp"

namespace lam {

// Dimensions per degree; degrees with dimension zero are not stored.
struct GradedSpace {
  int arity = 1;
  std::map<Deg, int> dims;

  explicit GradedSpace(int arity_ = 1) : arity(arity_) {}

  int dim(const Deg& d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
  void set_dim(const Deg& d, int n) {
    if (d.arity != arity) throw std::invalid_argument("graded space: arity mismatch");
    if (n < 0) throw std::invalid_argument("graded space: negative dimension");
    if (n == 0) dims.erase(d);
    else dims[d] = n;
  }
  long long total_dim() const {
    long long t = 0;
    for (auto& [d, n] : dims) t += n;
    return t;
  }
  std::vector<Deg> degrees() const {
    std::vector<Deg> out;
    out.reserve(dims.size());
    for (auto& [d, n] : dims) out.push_back(d);
    return out;
  }
  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.arity == b.arity && a.dims == b.dims;
  }
  friend bool operator!=(const GradedSpace& a, const GradedSpace& b) { return !(a == b); }
};

inline std::string str(const GradedSpace& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto& [d, n] : s.dims) {
    if (!first) os << ", ";
    os << str(d) << ':' << n;
    first = false;
  }
  os << '}';
  return os.str();
}

// M{v}: shift all degrees up by v, so the new space has mass at d where the
// old one had mass at d - v.
inline GradedSpace shift_space(const GradedSpace& s, const Deg& v) {
  GradedSpace out(s.arity);
  for (auto& [d, n] : s.dims) out.set_dim(d + v, n);
  return out;
}

// Homogeneous map f: src -> dst of fixed degree `offset`; the block stored
// at source degree d is the matrix of f: src_d -> dst_{d+offset}.  All-zero
// blocks are never stored, so missing means zero.
template <class K>
struct GradedMap {
  GradedSpace src, dst;
  Deg offset;
  std::map<Deg, Mat<K>> blocks;

  GradedMap() : src(1), dst(1), offset(zero_deg(1)) {}
  GradedMap(GradedSpace src_, GradedSpace dst_, Deg offset_)
      : src(std::move(src_)), dst(std::move(dst_)), offset(offset_) {
    if (src.arity != dst.arity || offset.arity != src.arity)
      throw std::invalid_argument("graded map: arity mismatch");
  }

  Mat<K> block(const Deg& d) const {
    auto it = blocks.find(d);
    if (it != blocks.end()) return it->second;
    return Mat<K>::Zero(dst.dim(d + offset), src.dim(d));
  }
  void set_block(const Deg& d, Mat<K> m) {
    if (m.rows() != dst.dim(d + offset) || m.cols() != src.dim(d))
      throw std::invalid_argument("graded map: block shape mismatch at " + lam::str(d));
    if (is_zero_mat(m)) blocks.erase(d);
    else blocks[d] = std::move(m);
  }
  bool is_zero() const { return blocks.empty(); }
};

template <class K>
GradedMap<K> zero_map(GradedSpace src, GradedSpace dst, const Deg& offset) {
  return GradedMap<K>(std::move(src), std::move(dst), offset);
}

template <class K>
GradedMap<K> identity_map(const GradedSpace& s) {
  GradedMap<K> f(s, s, zero_deg(s.arity));
  for (auto& [d, n] : s.dims) f.set_block(d, Mat<K>::Identity(n, n));
  return f;
}

// g after f.
template <class K>
GradedMap<K> compose(const GradedMap<K>& g, const GradedMap<K>& f) {
  if (f.dst != g.src) throw std::invalid_argument("compose: inner dst != outer src");
  GradedMap<K> out(f.src, g.dst, f.offset + g.offset);
  for (auto& [d, fb] : f.blocks) {
    auto git = g.blocks.find(d + f.offset);
    if (git == g.blocks.end()) continue;
    out.set_block(d, mul(git->second, fb));
  }
  return out;
}

template <class K>
GradedMap<K> add(const GradedMap<K>& f, const GradedMap<K>& g) {
  if (f.src != g.src || f.dst != g.dst || f.offset != g.offset)
    throw std::invalid_argument("add: map shapes differ");
  GradedMap<K> out(f.src, f.dst, f.offset);
  std::map<Deg, char> keys;
  for (auto& [d, b] : f.blocks) keys[d] = 1;
  for (auto& [d, b] : g.blocks) keys[d] = 1;
  for (auto& [d, u] : keys) out.set_block(d, Mat<K>(f.block(d) + g.block(d)));
  return out;
}

template <class K>
GradedMap<K> scale(const K& k, const GradedMap<K>& f) {
  GradedMap<K> out(f.src, f.dst, f.offset);
  for (auto& [d, b] : f.blocks) out.set_block(d, Mat<K>(b * k));
  return out;
}

template <class K>
GradedMap<K> sub(const GradedMap<K>& f, const GradedMap<K>& g) {
  return add(f, scale(K(-1), g));
}

// Structural equality: same spaces, same offset, equal blocks (missing = 0).
template <class K>
bool map_equal(const GradedMap<K>& f, const GradedMap<K>& g) {
  if (f.src != g.src || f.dst != g.dst || f.offset != g.offset) return false;
  std::map<Deg, char> keys;
  for (auto& [d, b] : f.blocks) keys[d] = 1;
  for (auto& [d, b] : g.blocks) keys[d] = 1;
  for (auto& [d, u] : keys)
    if (!is_zero_mat(Mat<K>(f.block(d) - g.block(d)))) return false;
  return true;
}

// Same map with source and target relabeled by {v}; the offset is unchanged.
template <class K>
GradedMap<K> shift_map(const GradedMap<K>& f, const Deg& v) {
  GradedMap<K> out(shift_space(f.src, v), shift_space(f.dst, v), f.offset);
  for (auto& [d, b] : f.blocks) out.set_block(d + v, b);
  return out;
}

// Same map with only the source relabeled by {v}; the offset absorbs the
// relabeling so targets stay put.  Useful for legs out of a shifted summand.
template <class K>
GradedMap<K> shift_source(const GradedMap<K>& f, const Deg& v) {
  GradedMap<K> out(shift_space(f.src, v), f.dst, f.offset - v);
  for (auto& [d, b] : f.blocks) out.set_block(d + v, b);
  return out;
}

// Direct sum A (+) B with the four structural maps; A-coordinates come
// first within every degree.
template <class K>
struct SumDecomp {
  GradedSpace sum;
  GradedMap<K> in1, in2, pr1, pr2;
};

template <class K>
SumDecomp<K> sum_with_maps(const GradedSpace& a, const GradedSpace& b) {
  if (a.arity != b.arity) throw std::invalid_argument("direct sum: arity mismatch");
  GradedSpace s(a.arity);
  std::map<Deg, char> keys;
  for (auto& [d, n] : a.dims) keys[d] = 1;
  for (auto& [d, n] : b.dims) keys[d] = 1;
  for (auto& [d, u] : keys) s.set_dim(d, a.dim(d) + b.dim(d));
  SumDecomp<K> out{s,
                   GradedMap<K>(a, s, zero_deg(a.arity)),
                   GradedMap<K>(b, s, zero_deg(a.arity)),
                   GradedMap<K>(s, a, zero_deg(a.arity)),
                   GradedMap<K>(s, b, zero_deg(a.arity))};
  for (auto& [d, u] : keys) {
    int na = a.dim(d), nb = b.dim(d);
    Mat<K> i1 = Mat<K>::Zero(na + nb, na), i2 = Mat<K>::Zero(na + nb, nb);
    i1.topRows(na) = Mat<K>::Identity(na, na);
    i2.bottomRows(nb) = Mat<K>::Identity(nb, nb);
    if (na) out.in1.set_block(d, i1);
    if (nb) out.in2.set_block(d, i2);
    if (na) out.pr1.set_block(d, Mat<K>(i1.transpose()));
    if (nb) out.pr2.set_block(d, Mat<K>(i2.transpose()));
  }
  return out;
}

// Blockwise f (+) g; both maps must have the same offset.
template <class K>
GradedMap<K> direct_sum(const GradedMap<K>& f, const GradedMap<K>& g) {
  if (f.offset != g.offset) throw std::invalid_argument("direct sum: offsets differ");
  SumDecomp<K> sa = sum_with_maps<K>(f.src, g.src);
  SumDecomp<K> sb = sum_with_maps<K>(f.dst, g.dst);
  return add(compose(sb.in1, compose(f, sa.pr1)), compose(sb.in2, compose(g, sa.pr2)));
}

}  // namespace lam
