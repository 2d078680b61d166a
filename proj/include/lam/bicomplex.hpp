#pragma once
// Bicomplexes of finite-dimensional vector spaces: a bigraded space with two
// square-zero differentials d1 (offset (1,0)) and d2 (offset (0,1)) that
// either anticommute or commute.  Includes the standard indecomposable
// summands (dot, square, and the two zigzag families), cohomology in either
// direction with the induced surviving differential, and total cohomology.

#include <map>

#include "lam/homology.hpp"

namespace lam {

enum class Convention { Anticommute, Commute };

template <class K>
struct Bicomplex {
  GradedSpace space{2};
  GradedMap<K> d1, d2;
  Convention convention = Convention::Anticommute;
};

namespace detail {

// First source degree (lex order) where the map has a nonzero block.
template <class K>
const Deg* first_nonzero(const GradedMap<K>& f) {
  for (auto& [d, b] : f.blocks)
    if (!is_zero_mat(b)) return &d;
  return nullptr;
}

}  // namespace detail

template <class K>
Bicomplex<K> make_bicomplex(GradedSpace space, GradedMap<K> d1, GradedMap<K> d2,
                            Convention convention) {
  if (space.arity != 2) throw std::invalid_argument("bicomplex: space must have arity 2");
  if (d1.src != space || d1.dst != space || d2.src != space || d2.dst != space)
    throw std::invalid_argument("bicomplex: differentials must be endomorphisms of the space");
  if (d1.offset != deg2(1, 0)) throw std::invalid_argument("bicomplex: d1 offset must be (1,0)");
  if (d2.offset != deg2(0, 1)) throw std::invalid_argument("bicomplex: d2 offset must be (0,1)");
  if (auto* d = detail::first_nonzero(compose(d1, d1)))
    throw ValidationError("bicomplex: d1*d1 != 0 at " + str(*d));
  if (auto* d = detail::first_nonzero(compose(d2, d2)))
    throw ValidationError("bicomplex: d2*d2 != 0 at " + str(*d));
  GradedMap<K> mix = compose(d2, d1);
  GradedMap<K> other = compose(d1, d2);
  GradedMap<K> rel = convention == Convention::Anticommute ? add(mix, other) : sub(mix, other);
  if (auto* d = detail::first_nonzero(rel)) {
    const char* what = convention == Convention::Anticommute ? "d1*d2 + d2*d1 != 0 at "
                                                             : "d1*d2 - d2*d1 != 0 at ";
    throw ValidationError(std::string("bicomplex: ") + what + str(*d));
  }
  return Bicomplex<K>{std::move(space), std::move(d1), std::move(d2), convention};
}

// Switch between the anticommuting and commuting conventions by scaling the
// d2 block at bidegree (i,j) by (-1)^(i-j); applying it twice is the identity.
template <class K>
Bicomplex<K> convert_convention(const Bicomplex<K>& b) {
  GradedMap<K> d2(b.space, b.space, deg2(0, 1));
  for (auto& [d, blk] : b.d2.blocks) {
    int s = ((d[0] - d[1]) % 2 + 2) % 2;
    d2.set_block(d, s ? Mat<K>(-blk) : blk);
  }
  Convention other = b.convention == Convention::Anticommute ? Convention::Commute
                                                             : Convention::Anticommute;
  return make_bicomplex(b.space, b.d1, std::move(d2), other);
}

// ---------------------------------------------------------------------------
// Standard indecomposable summands.

enum class SummandKind { Dot, Square, ZRight, ZUp };

struct SummandLabel {
  SummandKind kind = SummandKind::Dot;
  int i = 0, j = 0;  // anchor bidegree
  int l = 0;         // number of arrows; zigzags only (l >= 1)

  friend bool operator==(const SummandLabel& a, const SummandLabel& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j && a.l == b.l;
  }
  friend bool operator<(const SummandLabel& a, const SummandLabel& b) {
    return std::tie(a.kind, a.i, a.j, a.l) < std::tie(b.kind, b.i, b.j, b.l);
  }
};

inline std::string str(const SummandLabel& s) {
  std::ostringstream os;
  switch (s.kind) {
    case SummandKind::Dot: os << "dot"; break;
    case SummandKind::Square: os << "square"; break;
    case SummandKind::ZRight: os << "zright"; break;
    case SummandKind::ZUp: os << "zup"; break;
  }
  os << '@' << '(' << s.i << ',' << s.j << ')';
  if (s.kind == SummandKind::ZRight || s.kind == SummandKind::ZUp) os << " l=" << s.l;
  return os.str();
}

inline SummandLabel dot_at(int i, int j) { return SummandLabel{SummandKind::Dot, i, j, 0}; }
inline SummandLabel square_at(int i, int j) { return SummandLabel{SummandKind::Square, i, j, 0}; }
inline SummandLabel zright_at(int i, int j, int l) {
  return SummandLabel{SummandKind::ZRight, i, j, l};
}
inline SummandLabel zup_at(int i, int j, int l) { return SummandLabel{SummandKind::ZUp, i, j, l}; }

// The standard anticommuting model of one summand.
//  - Dot@(i,j): one basis vector, zero differentials.
//  - Square@(i,j): basis m, d1 m, d2 m, d1 d2 m at (i,j),(i+1,j),(i,j+1),
//    (i+1,j+1); the d2 edge out of d1 m carries the sign forced by
//    anticommutativity.
//  - ZRight@(i,j), l arrows: v_0 at the anchor ("top leftmost term"), even
//    v_{2t} at (i+t, j-t) mapping by d1 to v_{2t+1} at (i+t+1, j-t) and by
//    d2 to v_{2t-1}; all arrow entries +1 (no vertex has both an incoming
//    and an outgoing arrow, so the relations hold trivially).
//  - ZUp@(i,j), l arrows: w_0 at the anchor (top term), odd w_{2t+1} at
//    (i+t, j-t-1) mapping by d2 to w_{2t} at (i+t, j-t) and by d1 to
//    w_{2t+2}; all entries +1.
template <class K>
Bicomplex<K> standard_summand(const SummandLabel& s) {
  GradedSpace sp(2);
  GradedMap<K> d1(sp, sp, deg2(1, 0)), d2(sp, sp, deg2(0, 1));
  auto grow = [&sp](int i, int j) { sp.set_dim(deg2(i, j), sp.dim(deg2(i, j)) + 1); };
  switch (s.kind) {
    case SummandKind::Dot:
      grow(s.i, s.j);
      break;
    case SummandKind::Square:
      grow(s.i, s.j);
      grow(s.i + 1, s.j);
      grow(s.i, s.j + 1);
      grow(s.i + 1, s.j + 1);
      break;
    case SummandKind::ZRight:
      for (int t = 0; t <= s.l; ++t) {
        int half = t / 2;
        if (t % 2 == 0) grow(s.i + half, s.j - half);
        else grow(s.i + half + 1, s.j - half);
      }
      break;
    case SummandKind::ZUp:
      for (int t = 0; t <= s.l; ++t) {
        int half = t / 2;
        if (t % 2 == 0) grow(s.i + half, s.j - half);
        else grow(s.i + half, s.j - half - 1);
      }
      break;
  }
  d1 = GradedMap<K>(sp, sp, deg2(1, 0));
  d2 = GradedMap<K>(sp, sp, deg2(0, 1));
  auto unit = [](K v) {
    Mat<K> m(1, 1);
    m(0, 0) = v;
    return m;
  };
  switch (s.kind) {
    case SummandKind::Dot:
      break;
    case SummandKind::Square:
      d1.set_block(deg2(s.i, s.j), unit(K(1)));
      d1.set_block(deg2(s.i, s.j + 1), unit(K(1)));
      d2.set_block(deg2(s.i, s.j), unit(K(1)));
      d2.set_block(deg2(s.i + 1, s.j), unit(K(-1)));
      break;
    case SummandKind::ZRight:
      for (int t = 0; 2 * t < s.l; ++t)
        d1.set_block(deg2(s.i + t, s.j - t), unit(K(1)));
      for (int t = 1; 2 * t - 1 < s.l; ++t)
        d2.set_block(deg2(s.i + t, s.j - t), unit(K(1)));
      break;
    case SummandKind::ZUp:
      for (int t = 0; 2 * t + 1 <= s.l; ++t)
        d2.set_block(deg2(s.i + t, s.j - t - 1), unit(K(1)));
      for (int t = 0; 2 * t + 2 <= s.l; ++t)
        d1.set_block(deg2(s.i + t, s.j - t - 1), unit(K(1)));
      break;
  }
  return make_bicomplex(sp, std::move(d1), std::move(d2), Convention::Anticommute);
}

// Direct sum of standard summands in the given order; coordinates within a
// bidegree are appended summand by summand.
template <class K>
Bicomplex<K> standard_sum(const std::vector<SummandLabel>& labels) {
  GradedSpace sp(2);
  GradedMap<K> d1, d2;
  bool first = true;
  for (auto& lab : labels) {
    Bicomplex<K> s = standard_summand<K>(lab);
    if (first) {
      sp = s.space;
      d1 = s.d1;
      d2 = s.d2;
      first = false;
    } else {
      d1 = direct_sum(d1, s.d1);
      d2 = direct_sum(d2, s.d2);
      sp = d1.src;
    }
  }
  if (first) {
    d1 = GradedMap<K>(sp, sp, deg2(1, 0));
    d2 = GradedMap<K>(sp, sp, deg2(0, 1));
  }
  return make_bicomplex(sp, std::move(d1), std::move(d2), Convention::Anticommute);
}

// ---------------------------------------------------------------------------
// Cohomology.

template <class K>
struct BicomplexCohomology {
  GradedSpace h;         // surviving dims
  GradedMap<K> induced;  // the other differential, descended to h
  GradedMap<K> reps;     // h -> original space, representative cycles
};

// direction = 1 kills along d1 and returns the induced d2; direction = 2
// kills along d2 and returns the induced d1.
template <class K>
BicomplexCohomology<K> cohomology(const Bicomplex<K>& b, int direction) {
  if (direction != 1 && direction != 2)
    throw std::invalid_argument("cohomology: direction must be 1 or 2");
  const GradedMap<K>& kill = direction == 2 ? b.d2 : b.d1;
  const GradedMap<K>& keep = direction == 2 ? b.d1 : b.d2;
  SubquotientResult<K> coh = graded_cohomology(b.space, kill);
  GradedMap<K> ind = induced_on_cohomology(coh, kill, keep);
  return BicomplexCohomology<K>{coh.h, std::move(ind), std::move(coh.reps)};
}

// Collapse to the total complex (degree k = i + j, blocks ordered by
// ascending i) and return its cohomology dims.  Requires the anticommuting
// convention so that d1 + d2 squares to zero on the nose.
template <class K>
std::map<int, int> total_cohomology(const Bicomplex<K>& b) {
  if (b.convention != Convention::Anticommute)
    throw ValidationError("total cohomology: requires the anticommuting convention");
  // Layout: per total degree k, list bidegrees (i,j), i ascending, with
  // their coordinate offsets.
  std::map<int, std::map<int, std::pair<int, int>>> layout;  // k -> i -> (base, dim)
  std::map<int, int> tdim;
  for (auto& [d, n] : b.space.dims) {
    int k = d[0] + d[1];
    layout[k][d[0]] = {0, n};
  }
  for (auto& [k, row] : layout) {
    int base = 0;
    for (auto& [i, bd] : row) {
      bd.first = base;
      base += bd.second;
    }
    tdim[k] = base;
  }
  GradedSpace tot(1);
  for (auto& [k, n] : tdim) tot.set_dim(deg1(k), n);
  GradedMap<K> d(tot, tot, deg1(1));
  for (auto& [k, row] : layout) {
    int rows = tdim.count(k + 1) ? tdim[k + 1] : 0;
    if (rows == 0) continue;
    Mat<K> blk = Mat<K>::Zero(rows, tdim[k]);
    bool any = false;
    auto& trow = layout[k + 1];
    for (auto& [i, bd] : row) {
      Mat<K> b1 = b.d1.block(deg2(i, k - i));
      if (b1.rows() && !is_zero_mat(b1)) {
        auto it = trow.find(i + 1);
        blk.block(it->second.first, bd.first, b1.rows(), b1.cols()) = b1;
        any = true;
      }
      Mat<K> b2 = b.d2.block(deg2(i, k - i));
      if (b2.rows() && !is_zero_mat(b2)) {
        auto it = trow.find(i);
        blk.block(it->second.first, bd.first, b2.rows(), b2.cols()) = b2;
        any = true;
      }
    }
    if (any) d.set_block(deg1(k), std::move(blk));
  }
  SubquotientResult<K> coh = graded_cohomology(tot, d);
  std::map<int, int> out;
  for (auto& [e, n] : coh.h.dims) out[e[0]] = n;
  return out;
}

}  // namespace lam
