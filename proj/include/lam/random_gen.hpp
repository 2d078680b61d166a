#pragma once
// Seeded random generators for test inputs.  All draws go through explicit
// modular reduction of mt19937_64 output so streams are identical across
// platforms for a fixed seed.
//
// Random bicomplexes are produced by conjugating a random direct sum of
// standard indecomposables with random per-bidegree invertible matrices:
// by the decomposition theorem every bounded bicomplex is of this form, so
// the family has full coverage, and the summand multiset is known exactly
// without running the decomposition being tested.

#include <random>
#include <utility>

#include "lam/bicomplex.hpp"
#include "lam/tricomplex.hpp"
#include "lam/zigzag.hpp"

namespace lam {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long long seed) : eng(seed) {}
  long long below(long long n) {
    return static_cast<long long>(eng() % static_cast<unsigned long long>(n));
  }
};

template <class K>
K random_scalar(Rng& rng, const FieldOps<K>& ops) {
  if (ops.spec.rational) return ops.from_int(rng.below(7) - 3);
  return ops.from_int(rng.below(ops.spec.p));
}

template <class K>
K random_nonzero(Rng& rng, const FieldOps<K>& ops) {
  if (ops.spec.rational) {
    long long v = rng.below(6) - 3;
    if (v >= 0) ++v;
    return ops.from_int(v);
  }
  return ops.from_int(1 + rng.below(ops.spec.p - 1));
}

template <class K>
Mat<K> random_matrix(Rng& rng, const FieldOps<K>& ops, int r, int c) {
  Mat<K> m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = random_scalar(rng, ops);
  return m;
}

// Unit lower * unit upper * nonzero diagonal: invertible without rejection.
template <class K>
Mat<K> random_invertible(Rng& rng, const FieldOps<K>& ops, int n) {
  Mat<K> l = Mat<K>::Identity(n, n), u = Mat<K>::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) {
      l(i, j) = random_scalar(rng, ops);
      u(j, i) = random_scalar(rng, ops);
    }
  Mat<K> d = Mat<K>::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = random_nonzero(rng, ops);
  return mul(mul(l, u), d);
}

// A random invertible degree-0 endomorphism and its inverse.
template <class K>
std::pair<GradedMap<K>, GradedMap<K>> random_basis_change(Rng& rng, const FieldOps<K>& ops,
                                                          const GradedSpace& s) {
  GradedMap<K> u(s, s, zero_deg(s.arity)), uinv(s, s, zero_deg(s.arity));
  for (auto& [d, n] : s.dims) {
    Mat<K> m = random_invertible(rng, ops, n);
    auto inv = inverse(m);
    uinv.set_block(d, std::move(*inv));
    u.set_block(d, std::move(m));
  }
  return {std::move(u), std::move(uinv)};
}

// Conjugate both differentials by a random change of basis per bidegree.
template <class K>
Bicomplex<K> conjugate_random(Rng& rng, const FieldOps<K>& ops, const Bicomplex<K>& b) {
  auto [u, uinv] = random_basis_change(rng, ops, b.space);
  return make_bicomplex(b.space, compose(u, compose(b.d1, uinv)),
                        compose(u, compose(b.d2, uinv)), b.convention);
}

struct BicomplexGenOptions {
  int box = 4;           // labels must fit inside [0,box) x [0,box)
  int max_summands = 6;  // 1..max_summands labels
  int max_arrows = 4;    // zigzag length bound
};

template <class K>
std::pair<Bicomplex<K>, std::vector<SummandLabel>> random_bicomplex(
    Rng& rng, const FieldOps<K>& ops, const BicomplexGenOptions& opt = {}) {
  int n = 1 + static_cast<int>(rng.below(opt.max_summands));
  std::vector<SummandLabel> labels;
  while (static_cast<int>(labels.size()) < n) {
    SummandLabel lab;
    lab.kind = static_cast<SummandKind>(rng.below(4));
    lab.i = static_cast<int>(rng.below(opt.box));
    lab.j = static_cast<int>(rng.below(opt.box));
    if (lab.kind == SummandKind::ZRight || lab.kind == SummandKind::ZUp)
      lab.l = 1 + static_cast<int>(rng.below(opt.max_arrows));
    bool fits = true;
    for (auto& d : standard_summand<K>(lab).space.degrees())
      if (d[0] < 0 || d[0] >= opt.box || d[1] < 0 || d[1] >= opt.box) fits = false;
    if (fits) labels.push_back(lab);
  }
  Bicomplex<K> sum = standard_sum<K>(labels);
  std::sort(labels.begin(), labels.end());
  return {conjugate_random(rng, ops, sum), std::move(labels)};
}

// A random module over the zigzag algebra: a direct sum of projectives at
// admissible vertices (interior ones if the window is untruncated) with
// small internal shifts, hidden behind a random change of basis.
template <class K>
AModule<K> random_amodule(Rng& rng, const FieldOps<K>& ops, const ZigzagAlgebra& alg,
                          int max_summands = 3) {
  int vlo = alg.truncated ? alg.lo : alg.lo + 1;
  int vhi = alg.truncated ? alg.hi : alg.hi - 1;
  if (vhi < vlo)
    throw std::invalid_argument("random module: window has no admissible vertices");
  int count = 1 + static_cast<int>(rng.below(max_summands));
  std::optional<AModule<K>> acc;
  for (int i = 0; i < count; ++i) {
    int r = vlo + static_cast<int>(rng.below(vhi - vlo + 1));
    int j = static_cast<int>(rng.below(5)) - 2;
    AModule<K> p = projective<K>(alg, r, j);
    if (!acc) {
      acc = std::move(p);
    } else {
      GradedMap<K> raise = direct_sum(acc->raise, p.raise);
      GradedMap<K> lower = direct_sum(acc->lower, p.lower);
      GradedSpace sp = raise.src;
      acc = AModule<K>{alg, std::move(sp), std::move(raise), std::move(lower)};
    }
  }
  auto [u, uinv] = random_basis_change(rng, ops, acc->space);
  return make_amodule(alg, acc->space, compose(u, compose(acc->raise, uinv)),
                      compose(u, compose(acc->lower, uinv)));
}

// A two-term complex of projectives: the cone of a random chain map between
// random sums of projectives.
template <class K>
AComplex<K> random_acomplex(Rng& rng, const FieldOps<K>& ops, const ZigzagAlgebra& alg,
                            int max_summands = 2) {
  AComplex<K> x = complex_of(random_amodule(rng, ops, alg, max_summands));
  AComplex<K> y = complex_of(random_amodule(rng, ops, alg, max_summands));
  GradedMap<K> f(x.space, y.space, zero_deg(3));
  for (auto& h : chain_maps(x, y, 0, 0)) f = add(f, scale(random_scalar(rng, ops), h));
  return cone(x, y, f);
}

// A small trigraded module: a direct sum of shifted copies of the simple,
// cyclic, and free standard modules, hidden behind a random change of basis.
template <class K>
Tricomplex<K> random_tricomplex(Rng& rng, const FieldOps<K>& ops, int max_summands = 3,
                                int box = 2) {
  int count = 1 + static_cast<int>(rng.below(max_summands));
  std::optional<Tricomplex<K>> acc;
  for (int i = 0; i < count; ++i) {
    Deg v = deg3(static_cast<int>(rng.below(2 * box + 1)) - box,
                 static_cast<int>(rng.below(2 * box + 1)) - box,
                 static_cast<int>(rng.below(2 * box + 1)) - box);
    unsigned kind = rng.below(4);
    Tricomplex<K> piece = kind == 0   ? shift_tricomplex(lambda3<K>(), v)
                          : kind == 1 ? shift_tricomplex(q_module<K>(), v)
                                      : simple_at<K>(v);
    acc = acc ? direct_sum_tricomplex(*acc, piece).sum : piece;
  }
  auto [u, uinv] = random_basis_change(rng, ops, acc->space);
  auto conj = [&](const GradedMap<K>& d) { return compose(u, compose(d, uinv)); };
  return make_tricomplex(acc->space, conj(acc->d1), conj(acc->d2), conj(acc->d3));
}

}  // namespace lam
