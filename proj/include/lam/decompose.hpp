#pragma once
// Decomposition of a bounded bicomplex into the standard indecomposables
// (dots, squares, and the two zigzag families) with an explicit change of
// basis, plus the spectral-page census read off the summand labels.
//
// Phase 1 splits off free summands: while d1 d2 != 0, the submodule
// generated by a basis vector m with d1 d2 m != 0 is free on (m, d1 m,
// d2 m, d1 d2 m); a retraction that commutes with both differentials is
// solved for, and the kernel of the retraction is the complementary
// submodule.  Phase 2 has d1 d2 = 0, so with D = ker d1 cap ker d2 and C a
// complement of D per bidegree, both differentials map C into D at adjacent
// bidegrees: the data is a representation of a disjoint union of A-type
// quivers with alternating orientation, one per antidiagonal, which a
// left-to-right sweep reduces to interval summands.  The sweep recombines
// interval vectors only in ways that can be propagated back across already
// swept positions; the result is validated by exact reassembly.

#include <algorithm>

#include "lam/bicomplex.hpp"
#include "lam/solver.hpp"

namespace lam {

template <class K>
struct Decomposition {
  std::vector<SummandLabel> summands;  // sorted
  // standard_sum(summands).space -> input space, invertible per bidegree;
  // conjugating the standard differentials by it reproduces the input.
  GradedMap<K> change_of_basis;
};

namespace detail {

template <class K>
struct SummandRecord {
  SummandLabel label;
  std::map<Deg, Mat<K>> vectors;  // bidegree -> one basis column (input coords)
};

// One interval of the phase-2 sweep.  Positions along a chain are numbered
// 0,1,2,...: even = D-vertex, odd = C-vertex.
template <class K>
struct Interval {
  int birth_pos = 0;
  bool born_at_c = false;  // born as a kernel vector of a backward map
  long long seq = 0;
  bool alive = true;
  std::map<int, Mat<K>> vecs;  // position -> column vector (ambient coords)
};

// Recombination i -> j: subtract lam * (i's vector) from j's vector at every
// position both intervals occupy.  Only called in sweep orders for which
// this is a legal change of the already-built structure.
template <class K>
void subtract_overlap(Interval<K>& j, const Interval<K>& i, const K& lam) {
  for (auto& [pos, vec] : i.vecs) {
    auto it = j.vecs.find(pos);
    if (it != j.vecs.end()) it->second = Mat<K>(it->second - vec * lam);
  }
}

// Processing order: intervals born at a C-vertex first, latest birth first;
// then intervals born at a D-vertex, earliest birth first; ties by creation
// sequence.  Earlier-processed intervals may always be legally added into
// later-processed ones.
template <class K>
bool sweep_precedes(const Interval<K>& a, const Interval<K>& b) {
  if (a.born_at_c != b.born_at_c) return a.born_at_c;
  if (a.birth_pos != b.birth_pos)
    return a.born_at_c ? a.birth_pos > b.birth_pos : a.birth_pos < b.birth_pos;
  return a.seq < b.seq;
}

}  // namespace detail

template <class K>
Decomposition<K> decompose(const Bicomplex<K>& b) {
  if (b.convention != Convention::Anticommute)
    throw std::invalid_argument(
        "decompose: requires the anticommuting convention (apply convert_convention first)");
  using Rec = detail::SummandRecord<K>;
  std::vector<Rec> recs;

  GradedSpace sp = b.space;
  GradedMap<K> d1 = b.d1, d2 = b.d2;
  GradedMap<K> embed = identity_map<K>(b.space);  // current module -> input

  // ---- Phase 1: free summands. -------------------------------------------
  for (;;) {
    GradedMap<K> t = compose(d1, d2);
    const Deg* hit = nullptr;
    int col = -1;
    for (auto& [d, blk] : t.blocks) {
      for (int c = 0; c < blk.cols() && col < 0; ++c)
        for (int r = 0; r < blk.rows(); ++r)
          if (!is_zero(blk(r, c))) {
            col = c;
            break;
          }
      if (col >= 0) {
        hit = &d;
        break;
      }
    }
    if (!hit) break;
    Deg d0 = *hit;
    int n0 = sp.dim(d0);
    Mat<K> m = Mat<K>::Zero(n0, 1);
    m(col, 0) = K(1);
    Mat<K> c2 = d2.block(d0).col(col);
    Mat<K> c1 = d1.block(d0).col(col);
    Mat<K> c12 = mul(d1.block(d0 + deg2(0, 1)), c2);

    Bicomplex<K> sq = standard_summand<K>(square_at(d0[0], d0[1]));
    GradedMap<K> incl(sq.space, sp, zero_deg(2));
    incl.set_block(d0, m);
    incl.set_block(d0 + deg2(1, 0), c1);
    incl.set_block(d0 + deg2(0, 1), c2);
    incl.set_block(d0 + deg2(1, 1), c12);

    MapSolver<K> solver(sp, sq.space, zero_deg(2));
    MapConstraint<K> cid;
    cid.terms.push_back(MapTerm<K>{K(1), std::nullopt, incl});
    cid.rhs = identity_map<K>(sq.space);
    solver.add_constraint(std::move(cid));
    solver.require_commute(sq.d1, d1, K(-1));
    solver.require_commute(sq.d2, d2, K(-1));
    auto rho = solver.solve_particular();
    if (!rho) throw std::logic_error("decompose: free summand retraction must exist");

    Rec rec{square_at(d0[0], d0[1]), {}};
    for (auto& [dd, mcol] : incl.blocks) rec.vectors[dd] = mul(embed.block(dd), mcol);
    recs.push_back(std::move(rec));

    // Complement = kernel of the retraction, with induced differentials.
    GradedSpace nsp(2);
    std::map<Deg, Mat<K>> kb;
    for (auto& [dd, n] : sp.dims) {
      Mat<K> kbasis = kernel_basis(rho->block(dd));
      if (kbasis.cols()) {
        nsp.set_dim(dd, static_cast<int>(kbasis.cols()));
        kb[dd] = std::move(kbasis);
      }
    }
    auto induce = [&](const GradedMap<K>& dmap, const Deg& off) {
      GradedMap<K> nd(nsp, nsp, off);
      for (auto& [dd, kbasis] : kb) {
        Mat<K> img = mul(dmap.block(dd), kbasis);
        if (is_zero_mat(img)) continue;
        auto it = kb.find(dd + off);
        if (it == kb.end())
          throw std::logic_error("decompose: complement is not a submodule");
        auto coords = solve(it->second, img);
        if (!coords) throw std::logic_error("decompose: complement is not a submodule");
        nd.set_block(dd, *coords);
      }
      return nd;
    };
    GradedMap<K> nd1 = induce(d1, deg2(1, 0));
    GradedMap<K> nd2 = induce(d2, deg2(0, 1));
    GradedMap<K> kincl(nsp, sp, zero_deg(2));
    for (auto& [dd, kbasis] : kb) kincl.set_block(dd, kbasis);
    embed = compose(embed, kincl);
    sp = nsp;
    d1 = std::move(nd1);
    d2 = std::move(nd2);
  }

  // ---- Phase 2: alternating A-quiver sweep. ------------------------------
  std::map<Deg, Mat<K>> Db, Cb;
  for (auto& [dd, n] : sp.dims) {
    Mat<K> stack = vcat(d1.block(dd), d2.block(dd));
    Mat<K> dbasis = kernel_basis(stack);
    Cb[dd] = complement_basis(dbasis, n);
    Db[dd] = std::move(dbasis);
  }
  auto ddim = [&](int i, int j) {
    auto it = Db.find(deg2(i, j));
    return it == Db.end() ? 0 : static_cast<int>(it->second.cols());
  };
  auto cdim = [&](int i, int j) {
    auto it = Cb.find(deg2(i, j));
    return it == Cb.end() ? 0 : static_cast<int>(it->second.cols());
  };

  // Chain c has D-vertices at bidegrees (i, c+1-i) and C-vertices at
  // (i, c-i).
  std::map<int, char> chain_marks;
  for (auto& [dd, n] : sp.dims) {
    if (ddim(dd[0], dd[1])) chain_marks[dd[0] + dd[1] - 1] = 1;
    if (cdim(dd[0], dd[1])) chain_marks[dd[0] + dd[1]] = 1;
  }
  std::vector<int> chain_ids;
  for (auto& kv : chain_marks) chain_ids.push_back(kv.first);

  long long seq = 0;
  for (int c : chain_ids) {
    int imin = 0, imax = -1;
    bool any = false;
    for (auto& [dd, n] : sp.dims) {
      int i = dd[0];
      bool in_chain = (dd[0] + dd[1] - 1 == c && ddim(dd[0], dd[1])) ||
                      (dd[0] + dd[1] == c && cdim(dd[0], dd[1]));
      if (!in_chain) continue;
      if (!any) {
        imin = imax = i;
        any = true;
      } else {
        imin = std::min(imin, i);
        imax = std::max(imax, i);
      }
    }
    if (!any) continue;

    using Iv = detail::Interval<K>;
    std::vector<Iv> ivs;
    std::vector<size_t> alive;  // indices into ivs, unsorted
    auto alive_sorted = [&]() {
      std::vector<size_t> v = alive;
      std::sort(v.begin(), v.end(), [&](size_t a, size_t bb) {
        return detail::sweep_precedes(ivs[a], ivs[bb]);
      });
      return v;
    };

    for (int i = imin; i <= imax; ++i) {
      int pd = 2 * (i - imin);            // position of D-vertex
      Deg dD = deg2(i, c + 1 - i);        // its bidegree
      Deg dC = deg2(i, c - i);            // bidegree of the C-vertex at pd+1
      Mat<K> dbase = Db.count(dD) ? Db[dD] : Mat<K>::Zero(sp.dim(dD), 0);
      Mat<K> cbase = Cb.count(dC) ? Cb[dC] : Mat<K>::Zero(sp.dim(dC), 0);

      // -- forward step into D^i (or initial births at the chain start).
      std::vector<Mat<K>> pivots;  // reduced images, aligned with owners
      std::vector<size_t> owners;
      if (i > imin) {
        Deg dCprev = deg2(i - 1, c - i + 1);
        Mat<K> f = d1.block(dCprev);
        std::vector<size_t> order = alive_sorted();
        for (size_t idx : order) {
          Iv& iv = ivs[idx];
          Mat<K> w = mul(f, iv.vecs.at(pd - 1));
          for (size_t t = 0; t < pivots.size(); ++t) {
            int pr = -1;
            for (int r = 0; r < pivots[t].rows(); ++r)
              if (!is_zero(pivots[t](r, 0))) {
                pr = r;
                break;
              }
            if (pr >= 0 && !is_zero(w(pr, 0))) {
              K lam = w(pr, 0) / pivots[t](pr, 0);
              w = Mat<K>(w - pivots[t] * lam);
              detail::subtract_overlap(iv, ivs[owners[t]], lam);
            }
          }
          if (is_zero_mat(w)) {
            iv.alive = false;
          } else {
            iv.vecs[pd] = w;
            pivots.push_back(std::move(w));
            owners.push_back(idx);
          }
        }
        alive.erase(std::remove_if(alive.begin(), alive.end(),
                                   [&](size_t idx) { return !ivs[idx].alive; }),
                    alive.end());
      }
      // Newborns at D^i: complement of the arrived images inside D^i.
      {
        Mat<K> img = Mat<K>::Zero(sp.dim(dD), static_cast<int>(pivots.size()));
        for (size_t t = 0; t < pivots.size(); ++t) img.col(static_cast<int>(t)) = pivots[t];
        Mat<K> coords;
        if (dbase.cols() == 0) {
          coords = Mat<K>::Zero(0, img.cols());
        } else {
          auto sol = solve(dbase, img);
          if (!sol) throw std::logic_error("decompose: image escapes ker d1 cap ker d2");
          coords = *sol;
        }
        Mat<K> comp = complement_basis(coords, dbase.cols());
        for (int t = 0; t < comp.cols(); ++t) {
          Iv iv;
          iv.birth_pos = pd;
          iv.born_at_c = false;
          iv.seq = seq++;
          iv.vecs[pd] = mul(dbase, Mat<K>(comp.col(t)));
          ivs.push_back(std::move(iv));
          alive.push_back(ivs.size() - 1);
        }
      }

      // -- backward step across g: C^i -> D^i.
      {
        Mat<K> g = mul(d2.block(dC), cbase);  // ambient columns of D-bidegree
        std::vector<size_t> order = alive_sorted();
        Mat<K> seen = Mat<K>::Zero(sp.dim(dD), 0);
        std::vector<size_t> seen_owner;
        for (size_t idx : order) {
          Iv& iv = ivs[idx];
          Mat<K> u = iv.vecs.at(pd);
          auto sol = solve(Mat<K>(hcat(g, seen)), u);
          if (sol) {
            for (int t = 0; t < static_cast<int>(seen_owner.size()); ++t) {
              K lam = (*sol)(g.cols() + t, 0);
              if (!is_zero(lam)) detail::subtract_overlap(iv, ivs[seen_owner[t]], lam);
            }
            Mat<K> gamma = sol->topRows(g.cols());
            iv.vecs[pd + 1] = mul(cbase, gamma);
          } else {
            iv.alive = false;
          }
          Mat<K> cur = iv.vecs.at(pd);
          seen.conservativeResize(Eigen::NoChange, seen.cols() + 1);
          seen.col(seen.cols() - 1) = cur;
          seen_owner.push_back(idx);
        }
        alive.erase(std::remove_if(alive.begin(), alive.end(),
                                   [&](size_t idx) { return !ivs[idx].alive; }),
                    alive.end());
        Mat<K> ker = kernel_basis(g);
        for (int t = 0; t < ker.cols(); ++t) {
          Iv iv;
          iv.birth_pos = pd + 1;
          iv.born_at_c = true;
          iv.seq = seq++;
          iv.vecs[pd + 1] = mul(cbase, Mat<K>(ker.col(t)));
          ivs.push_back(std::move(iv));
          alive.push_back(ivs.size() - 1);
        }
      }
    }

    // Translate intervals of this chain into labeled summands.
    for (auto& iv : ivs) {
      int pl = iv.vecs.begin()->first;
      int pr = iv.vecs.rbegin()->first;
      SummandLabel lab;
      if (pl == pr) {
        if (pl % 2 != 0)
          throw std::logic_error("decompose: singleton at a C-vertex is impossible");
        lab = dot_at(imin + pl / 2, c + 1 - (imin + pl / 2));
      } else if (pl % 2 == 1) {
        int i0 = imin + (pl - 1) / 2;
        lab = zright_at(i0, c - i0, pr - pl);
      } else {
        int i0 = imin + pl / 2;
        lab = zup_at(i0, c + 1 - i0, pr - pl);
      }
      Rec rec{lab, {}};
      for (auto& [pos, vec] : iv.vecs) {
        int i0 = imin + pos / 2;
        Deg dd = pos % 2 == 0 ? deg2(i0, c + 1 - i0) : deg2(i0, c - i0);
        rec.vectors[dd] = mul(embed.block(dd), vec);
      }
      recs.push_back(std::move(rec));
    }
  }

  // ---- Assemble the result and verify by exact reassembly. ---------------
  std::stable_sort(recs.begin(), recs.end(),
                   [](const Rec& a, const Rec& bb) { return a.label < bb.label; });
  Decomposition<K> out;
  for (auto& r : recs) out.summands.push_back(r.label);
  Bicomplex<K> model = standard_sum<K>(out.summands);
  GradedMap<K> u(model.space, b.space, zero_deg(2));
  for (auto& [dd, n] : model.space.dims) {
    Mat<K> blk(b.space.dim(dd), n);
    int at = 0;
    for (auto& r : recs) {
      auto it = r.vectors.find(dd);
      if (it != r.vectors.end()) blk.col(at++) = it->second;
    }
    if (at != n || blk.rows() != n)
      throw std::logic_error("decompose: summand dimensions do not tile the space");
    u.set_block(dd, std::move(blk));
  }
  GradedMap<K> uinv(b.space, model.space, zero_deg(2));
  for (auto& [dd, n] : model.space.dims) {
    auto inv = inverse(u.block(dd));
    if (!inv) throw std::logic_error("decompose: change of basis is singular");
    uinv.set_block(dd, std::move(*inv));
  }
  if (!map_equal(compose(u, compose(model.d1, uinv)), b.d1) ||
      !map_equal(compose(u, compose(model.d2, uinv)), b.d2))
    throw std::logic_error("decompose: reassembly does not reproduce the input");
  out.change_of_basis = std::move(u);
  return out;
}

// ---------------------------------------------------------------------------
// Spectral-page census. Pages are counted from 1 (killing along d2 first).

inline std::map<Deg, int> label_page_census(const std::vector<SummandLabel>& labels, int page) {
  if (page < 1) throw std::invalid_argument("spectral page: page must be >= 1");
  std::map<Deg, int> out;
  auto bump = [&out](int i, int j) { ++out[deg2(i, j)]; };
  for (auto& s : labels) {
    switch (s.kind) {
      case SummandKind::Dot:
        bump(s.i, s.j);
        break;
      case SummandKind::Square:
        break;
      case SummandKind::ZUp:
        if (s.l % 2 == 0) bump(s.i + s.l / 2, s.j - s.l / 2);
        break;
      case SummandKind::ZRight:
        if (s.l % 2 == 0) {
          bump(s.i, s.j);
        } else {
          int k = (s.l - 1) / 2;
          if (page <= k + 1) {
            bump(s.i, s.j);
            bump(s.i + k + 1, s.j - k);
          }
        }
        break;
    }
  }
  return out;
}

template <class K>
std::map<Deg, int> spectral_page(const Bicomplex<K>& b, int page) {
  return label_page_census(decompose(b).summands, page);
}

inline std::string str(const std::vector<SummandLabel>& labels) {
  std::ostringstream os;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) os << "; ";
    os << str(labels[i]);
  }
  return os.str();
}

}  // namespace lam
