#pragma once
// Linear solver for degree-homogeneous maps: treats every block entry of an
// unknown map f: src -> dst as a scalar unknown and accepts constraints of
// the form  sum_t  c_t * (L_t o f o R_t)  =  rhs,  where L_t / R_t are known
// maps (either may be omitted).  This covers intertwiners (L o f - f o R = 0),
// homotopy equations (d o h + h o d = f), and retraction equations
// (f o incl = id).

#include <optional>
#include <stdexcept>
#include <vector>

#include "lam/graded.hpp"

namespace lam {

template <class K>
struct MapTerm {
  K coeff;
  std::optional<GradedMap<K>> post;  // L in L o f o R
  std::optional<GradedMap<K>> pre;   // R
};

template <class K>
struct MapConstraint {
  std::vector<MapTerm<K>> terms;
  std::optional<GradedMap<K>> rhs;  // absent = zero
};

template <class K>
class MapSolver {
public:
  MapSolver(GradedSpace src, GradedSpace dst, Deg offset)
      : src_(std::move(src)), dst_(std::move(dst)), offset_(offset) {
    int base = 0;
    for (auto& [d, n] : src_.dims) {
      int rows = dst_.dim(d + offset_);
      if (rows == 0) continue;
      slots_.push_back(Slot{d, rows, n, base});
      base += rows * n;
    }
    nunknowns_ = base;
  }

  void add_constraint(MapConstraint<K> c) {
    check_constraint(c);
    constraints_.push_back(std::move(c));
  }

  // post o f + sign * (f o pre) = 0
  void require_commute(const GradedMap<K>& post, const GradedMap<K>& pre, const K& sign) {
    MapConstraint<K> c;
    c.terms.push_back(MapTerm<K>{K(1), post, std::nullopt});
    c.terms.push_back(MapTerm<K>{sign, std::nullopt, pre});
    add_constraint(std::move(c));
  }

  std::optional<GradedMap<K>> solve_particular() const {
    auto [a, b] = assemble();
    auto x = lam::solve(a, b);
    if (!x) return std::nullopt;
    return unflatten(*x);
  }

  std::vector<GradedMap<K>> kernel() const {
    auto [a, b] = assemble();
    Mat<K> kb = kernel_basis(a);
    std::vector<GradedMap<K>> out;
    for (int j = 0; j < kb.cols(); ++j) out.push_back(unflatten(Mat<K>(kb.col(j))));
    return out;
  }

  int num_unknowns() const { return nunknowns_; }

  GradedMap<K> unflatten(const Mat<K>& colvec) const {
    GradedMap<K> f(src_, dst_, offset_);
    for (auto& s : slots_) {
      Mat<K> m(s.rows, s.cols);
      for (int c = 0; c < s.cols; ++c)
        for (int r = 0; r < s.rows; ++r) m(r, c) = colvec(s.base + c * s.rows + r, 0);
      f.set_block(s.d, std::move(m));
    }
    return f;
  }

private:
  struct Slot {
    Deg d;
    int rows, cols, base;
  };

  GradedSpace src_, dst_;
  Deg offset_;
  std::vector<Slot> slots_;
  int nunknowns_ = 0;
  std::vector<MapConstraint<K>> constraints_;

  const Slot* slot_at(const Deg& d) const {
    for (auto& s : slots_)
      if (s.d == d) return &s;
    return nullptr;
  }

  // Source/target space and total offset of one composite term.
  static const GradedSpace& term_src(const MapTerm<K>& t, const GradedSpace& fsrc) {
    return t.pre ? t.pre->src : fsrc;
  }
  static const GradedSpace& term_dst(const MapTerm<K>& t, const GradedSpace& fdst) {
    return t.post ? t.post->dst : fdst;
  }
  Deg term_offset(const MapTerm<K>& t) const {
    Deg o = offset_;
    if (t.pre) o = o + t.pre->offset;
    if (t.post) o = o + t.post->offset;
    return o;
  }

  void check_constraint(const MapConstraint<K>& c) const {
    if (c.terms.empty()) throw std::invalid_argument("solver: empty constraint");
    for (auto& t : c.terms) {
      if (t.pre && t.pre->dst != src_)
        throw std::invalid_argument("solver: pre-map target != unknown source");
      if (t.post && t.post->src != dst_)
        throw std::invalid_argument("solver: post-map source != unknown target");
    }
    const GradedSpace& cs = term_src(c.terms[0], src_);
    const GradedSpace& cd = term_dst(c.terms[0], dst_);
    Deg co = term_offset(c.terms[0]);
    for (auto& t : c.terms)
      if (term_src(t, src_) != cs || term_dst(t, dst_) != cd || term_offset(t) != co)
        throw std::invalid_argument("solver: constraint terms have mismatched shapes");
    if (c.rhs && (c.rhs->src != cs || c.rhs->dst != cd || c.rhs->offset != co))
      throw std::invalid_argument("solver: rhs shape mismatch");
  }

  std::pair<Mat<K>, Mat<K>> assemble() const {
    // Count equation rows first.
    long long neq = 0;
    for (auto& c : constraints_) {
      const GradedSpace& cs = term_src(c.terms[0], src_);
      const GradedSpace& cd = term_dst(c.terms[0], dst_);
      Deg co = term_offset(c.terms[0]);
      for (auto& [e, cols] : cs.dims) neq += static_cast<long long>(cd.dim(e + co)) * cols;
    }
    Mat<K> a = Mat<K>::Zero(neq, nunknowns_);
    Mat<K> b = Mat<K>::Zero(neq, 1);
    long long row0 = 0;
    for (auto& c : constraints_) {
      const GradedSpace& cs = term_src(c.terms[0], src_);
      const GradedSpace& cd = term_dst(c.terms[0], dst_);
      Deg co = term_offset(c.terms[0]);
      for (auto& [e, cols] : cs.dims) {
        int rows = cd.dim(e + co);
        if (rows == 0) continue;
        if (c.rhs) {
          Mat<K> rb = c.rhs->block(e);
          for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i) b(row0 + j * rows + i, 0) = rb(i, j);
        }
        for (auto& t : c.terms) {
          Deg d = t.pre ? e + t.pre->offset : e;  // degree of the unknown block hit
          const Slot* s = slot_at(d);
          if (!s) continue;
          Mat<K> l = t.post ? t.post->block(d + offset_)
                            : Mat<K>::Identity(s->rows, s->rows);
          Mat<K> r = t.pre ? t.pre->block(e) : Mat<K>::Identity(s->cols, s->cols);
          for (int j = 0; j < cols; ++j)
            for (int i = 0; i < rows; ++i)
              for (int aa = 0; aa < s->rows; ++aa) {
                if (is_zero(l(i, aa))) continue;
                for (int bb = 0; bb < s->cols; ++bb) {
                  if (is_zero(r(bb, j))) continue;
                  a(row0 + j * rows + i, s->base + bb * s->rows + aa) =
                      a(row0 + j * rows + i, s->base + bb * s->rows + aa) +
                      t.coeff * l(i, aa) * r(bb, j);
                }
              }
        }
        row0 += static_cast<long long>(rows) * cols;
      }
    }
    return {std::move(a), std::move(b)};
  }
};

}  // namespace lam
