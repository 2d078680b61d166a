// Graded spaces, homogeneous maps, direct sums, and the blockwise linear
// solver.  Solution-space dimensions asserted here were counted by hand from
// the defining equations and are frozen as literals.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lam/graded.hpp"
#include "lam/solver.hpp"
#include "test_util.hpp"

using namespace lam;
using testutil::f7;
using testutil::mk;

TEST_CASE("degree ordering and arithmetic") {
  CHECK(deg2(1, 2) + deg2(3, -1) == deg2(4, 1));
  CHECK(deg2(4, 1) - deg2(3, -1) == deg2(1, 2));
  CHECK(-deg3(1, 2, 3) == deg3(-1, -2, -3));
  CHECK(deg2(0, 5) < deg2(1, -10));
  CHECK(deg3(1, 0, 0) < deg3(1, 0, 1));
  CHECK(str(deg3(1, -2, 0)) == "(1,-2,0)");
  CHECK(str(deg1(4)) == "(4)");
}

TEST_CASE("graded space bookkeeping and the shift direction") {
  GradedSpace s(2);
  s.set_dim(deg2(0, 0), 2);
  s.set_dim(deg2(1, 0), 3);
  CHECK(s.total_dim() == 5);
  s.set_dim(deg2(1, 0), 0);
  CHECK(s.dims.size() == 1);
  CHECK(s.dim(deg2(1, 0)) == 0);
  CHECK_THROWS_AS(s.set_dim(deg1(0), 1), std::invalid_argument);

  // M{v} puts the old mass at d at the new degree d + v.
  GradedSpace t = shift_space(s, deg2(1, 3));
  CHECK(t.dim(deg2(1, 3)) == 2);
  CHECK(t.dim(deg2(0, 0)) == 0);
}

TEST_CASE("graded map block storage") {
  auto ops = f7();
  GradedSpace a(1), b(1);
  a.set_dim(deg1(0), 2);
  b.set_dim(deg1(1), 3);
  GradedMap<Fp> f(a, b, deg1(1));
  CHECK_THROWS_AS(f.set_block(deg1(0), mk(ops, {{1, 2}})), std::invalid_argument);
  f.set_block(deg1(0), mk(ops, {{1, 2}, {3, 4}, {5, 6}}));
  CHECK(f.blocks.size() == 1);
  f.set_block(deg1(0), mk(ops, {{0, 0}, {0, 0}, {0, 0}}));
  CHECK(f.blocks.empty());  // explicit zero blocks are dropped
  // Materialized zero block has the right shape.
  CHECK(f.block(deg1(0)).rows() == 3);
  CHECK(f.block(deg1(0)).cols() == 2);
}

TEST_CASE("compose matches a hand-multiplied example") {
  auto ops = f7();
  GradedSpace a(1), b(1), c(1);
  a.set_dim(deg1(0), 2);
  b.set_dim(deg1(1), 2);
  c.set_dim(deg1(1), 1);
  GradedMap<Fp> f(a, b, deg1(1)), g(b, c, deg1(0));
  f.set_block(deg1(0), mk(ops, {{1, 2}, {3, 4}}));
  g.set_block(deg1(1), mk(ops, {{5, 6}}));
  GradedMap<Fp> gf = compose(g, f);
  CHECK(gf.offset == deg1(1));
  // [5 6] * [[1,2],[3,4]] = [23 34] = [2 6] mod 7.
  CHECK(is_zero_mat(Mat<Fp>(gf.block(deg1(0)) - mk(ops, {{2, 6}}))));
}

TEST_CASE("map algebra: add, scale, sub, identity") {
  auto ops = f7();
  GradedSpace a(1);
  a.set_dim(deg1(0), 2);
  GradedMap<Fp> f(a, a, deg1(0));
  f.set_block(deg1(0), mk(ops, {{1, 2}, {3, 4}}));
  CHECK(map_equal(add(f, scale(Fp(-1, 7), f)), zero_map<Fp>(a, a, deg1(0))));
  CHECK(sub(f, f).is_zero());
  CHECK(map_equal(compose(identity_map<Fp>(a), f), f));
  CHECK(map_equal(compose(f, identity_map<Fp>(a)), f));
  GradedMap<Fp> tw = scale(ops.from_int(2), f);
  CHECK(is_zero_mat(Mat<Fp>(tw.block(deg1(0)) - mk(ops, {{2, 4}, {6, 1}}))));
}

TEST_CASE("direct sum structure maps") {
  auto ops = f7();
  GradedSpace a(1), b(1);
  a.set_dim(deg1(0), 1);
  a.set_dim(deg1(1), 2);
  b.set_dim(deg1(0), 1);
  auto s = sum_with_maps<Fp>(a, b);
  CHECK(s.sum.dim(deg1(0)) == 2);
  CHECK(s.sum.dim(deg1(1)) == 2);
  CHECK(map_equal(compose(s.pr1, s.in1), identity_map<Fp>(a)));
  CHECK(map_equal(compose(s.pr2, s.in2), identity_map<Fp>(b)));
  CHECK(compose(s.pr2, s.in1).is_zero());
  CHECK(map_equal(add(compose(s.in1, s.pr1), compose(s.in2, s.pr2)),
                  identity_map<Fp>(s.sum)));

  GradedMap<Fp> f(a, a, deg1(0)), g(b, b, deg1(0));
  f.set_block(deg1(0), mk(ops, {{2}}));
  g.set_block(deg1(0), mk(ops, {{3}}));
  GradedMap<Fp> fg = direct_sum(f, g);
  CHECK(is_zero_mat(Mat<Fp>(fg.block(deg1(0)) - mk(ops, {{2, 0}, {0, 3}}))));
}

TEST_CASE("shift_map relabels degrees and keeps blocks") {
  auto ops = f7();
  GradedSpace a(2);
  a.set_dim(deg2(0, 0), 1);
  a.set_dim(deg2(1, 0), 1);
  GradedMap<Fp> d(a, a, deg2(-1, 0));
  d.set_block(deg2(1, 0), mk(ops, {{5}}));
  GradedMap<Fp> ds = shift_map(d, deg2(2, 1));
  CHECK(ds.offset == deg2(-1, 0));
  CHECK(ds.src.dim(deg2(2, 1)) == 1);
  CHECK(is_zero_mat(Mat<Fp>(ds.block(deg2(3, 1)) - mk(ops, {{5}}))));
}

namespace {

// Two-term complex at degrees 1 -> 0 with prescribed matrix.
struct TwoTerm {
  GradedSpace m{1};
  GradedMap<Fp> d;
};

TwoTerm two_term(const FieldOps<Fp>& ops, const Mat<Fp>& block) {
  TwoTerm t;
  t.m.set_dim(deg1(0), static_cast<int>(block.rows()));
  t.m.set_dim(deg1(1), static_cast<int>(block.cols()));
  t.d = GradedMap<Fp>(t.m, t.m, deg1(-1));
  t.d.set_block(deg1(1), block);
  return t;
}

}  // namespace

TEST_CASE("solver: chain self-maps of two-term complexes") {
  auto ops = f7();
  {
    // d = [1]: f0 = f1 is the only condition, so the space is 1-dimensional.
    auto t = two_term(ops, mk(ops, {{1}}));
    MapSolver<Fp> s(t.m, t.m, deg1(0));
    s.require_commute(t.d, t.d, Fp(-1, 7));
    auto ker = s.kernel();
    CHECK(s.num_unknowns() == 2);
    CHECK(ker.size() == 1);
    for (auto& f : ker) CHECK(map_equal(compose(t.d, f), compose(f, t.d)));
  }
  {
    // d = E11 on 2+2 dims: 3 independent equations on 8 unknowns.
    auto t = two_term(ops, mk(ops, {{1, 0}, {0, 0}}));
    MapSolver<Fp> s(t.m, t.m, deg1(0));
    s.require_commute(t.d, t.d, Fp(-1, 7));
    auto ker = s.kernel();
    CHECK(s.num_unknowns() == 8);
    CHECK(ker.size() == 5);
    for (auto& f : ker) CHECK(map_equal(compose(t.d, f), compose(f, t.d)));
  }
}

TEST_CASE("solver: homotopy equation d h + h d = id") {
  auto ops = f7();
  {
    // Contractible complex: witness exists and satisfies the equation.
    auto t = two_term(ops, mk(ops, {{1}}));
    MapSolver<Fp> s(t.m, t.m, deg1(1));
    MapConstraint<Fp> c;
    c.terms.push_back(MapTerm<Fp>{ops.from_int(1), t.d, std::nullopt});
    c.terms.push_back(MapTerm<Fp>{ops.from_int(1), std::nullopt, t.d});
    c.rhs = identity_map<Fp>(t.m);
    s.add_constraint(std::move(c));
    auto h = s.solve_particular();
    REQUIRE(h.has_value());
    CHECK(map_equal(add(compose(t.d, *h), compose(*h, t.d)), identity_map<Fp>(t.m)));
  }
  {
    // Zero differential: the identity is not null-homotopic.
    auto t = two_term(ops, mk(ops, {{0}}));
    MapSolver<Fp> s(t.m, t.m, deg1(1));
    MapConstraint<Fp> c;
    c.terms.push_back(MapTerm<Fp>{ops.from_int(1), t.d, std::nullopt});
    c.terms.push_back(MapTerm<Fp>{ops.from_int(1), std::nullopt, t.d});
    c.rhs = identity_map<Fp>(t.m);
    s.add_constraint(std::move(c));
    CHECK(!s.solve_particular().has_value());
  }
}

TEST_CASE("solver: sandwiched term and unconstrained unknowns") {
  auto ops = f7();
  auto t = two_term(ops, mk(ops, {{1}}));
  {
    MapSolver<Fp> s(t.m, t.m, deg1(1));
    CHECK(s.num_unknowns() == 1);
    CHECK(s.kernel().size() == 1);  // no constraints: everything is free
  }
  {
    MapSolver<Fp> s(t.m, t.m, deg1(1));
    MapConstraint<Fp> c;
    c.terms.push_back(MapTerm<Fp>{ops.from_int(1), t.d, t.d});  // d f d = 0
    s.add_constraint(std::move(c));
    CHECK(s.kernel().empty());
  }
}

TEST_CASE("solver: retraction against an inclusion") {
  auto ops = f7();
  GradedSpace a(1), b(1);
  a.set_dim(deg1(0), 1);
  b.set_dim(deg1(0), 2);
  GradedMap<Fp> incl(a, b, deg1(0));
  incl.set_block(deg1(0), mk(ops, {{1}, {0}}));
  MapSolver<Fp> s(b, a, deg1(0));
  MapConstraint<Fp> c;
  c.terms.push_back(MapTerm<Fp>{ops.from_int(1), std::nullopt, incl});
  c.rhs = identity_map<Fp>(a);
  s.add_constraint(std::move(c));
  auto rho = s.solve_particular();
  REQUIRE(rho.has_value());
  CHECK(map_equal(compose(*rho, incl), identity_map<Fp>(a)));
  // First-pivot particular solution zeroes the free coordinate.
  CHECK(is_zero_mat(Mat<Fp>(rho->block(deg1(0)) - mk(ops, {{1, 0}}))));
}

TEST_CASE("solver: shape validation") {
  auto ops = f7();
  GradedSpace a(1), b(1);
  a.set_dim(deg1(0), 1);
  b.set_dim(deg1(0), 2);
  GradedMap<Fp> wrong(b, b, deg1(0));
  MapSolver<Fp> s(a, a, deg1(0));
  MapConstraint<Fp> c;
  c.terms.push_back(MapTerm<Fp>{ops.from_int(1), std::nullopt, wrong});
  CHECK_THROWS_AS(s.add_constraint(std::move(c)), std::invalid_argument);
}
