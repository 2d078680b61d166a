#pragma once
// Cohomology of a square-zero endomorphism of a graded space, with explicit
// representative cycles, plus the map induced on cohomology by a compatible
// operator.  Works uniformly in any arity and for any differential offset.

#include "lam/errors.hpp"
#include "lam/graded.hpp"

namespace lam {

template <class K>
struct SubquotientResult {
  GradedSpace h;      // cohomology dims
  GradedMap<K> reps;  // h -> ambient space, offset 0, representative cycles
};

// d must be a square-zero map space -> space; per degree e the result is
// ker d_e / im d_{e-offset}, with representatives chosen as a first-pivot
// complement of the boundaries inside the cycle basis.
template <class K>
SubquotientResult<K> graded_cohomology(const GradedSpace& space, const GradedMap<K>& d) {
  if (d.src != space || d.dst != space)
    throw std::invalid_argument("cohomology: differential not an endomorphism of the space");
  GradedSpace h(space.arity);
  std::map<Deg, Mat<K>> repmats;
  for (auto& [e, n] : space.dims) {
    Mat<K> z = kernel_basis(d.block(e));  // n x z
    if (z.cols() == 0) continue;
    Mat<K> bnd = d.block(e - d.offset);  // columns span the boundaries
    Mat<K> coords;
    if (bnd.cols() == 0) {
      coords = Mat<K>::Zero(z.cols(), 0);
    } else {
      auto sol = solve(z, bnd);
      if (!sol) throw ValidationError("cohomology: boundaries not contained in cycles at " + str(e));
      coords = *sol;
    }
    Mat<K> comp = complement_basis(coords, z.cols());
    if (comp.cols() == 0) continue;
    h.set_dim(e, static_cast<int>(comp.cols()));
    repmats[e] = mul(z, comp);
  }
  SubquotientResult<K> out{h, GradedMap<K>(h, space, zero_deg(space.arity))};
  for (auto& [e, m] : repmats) out.reps.set_block(e, m);
  return out;
}

// Map induced on cohomology by f (which must send cycles to cycles modulo
// boundaries of d); the blockwise coefficients are extracted by solving
// f(rep) = reps * x + boundaries * y, whose reps-part is unique.
template <class K>
GradedMap<K> induced_on_cohomology(const SubquotientResult<K>& coh, const GradedMap<K>& d,
                                   const GradedMap<K>& f) {
  GradedMap<K> out(coh.h, coh.h, f.offset);
  for (auto& [e, n] : coh.h.dims) {
    Deg t = e + f.offset;
    int nt = coh.h.dim(t);
    Mat<K> img = mul(f.block(e), coh.reps.block(e));
    if (is_zero_mat(img)) continue;
    Mat<K> r = coh.reps.block(t);
    Mat<K> bnd = d.block(t - d.offset);
    auto sol = solve(Mat<K>(hcat(r, bnd)), img);
    if (!sol)
      throw ValidationError("induced map does not descend to cohomology at " + str(e));
    if (nt) out.set_block(e, Mat<K>(sol->topRows(nt)));
  }
  return out;
}

}  // namespace lam
