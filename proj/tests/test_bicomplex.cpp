// Bicomplex construction, convention conversion, standard summands, and the
// cohomology / total-cohomology oracles.  Expected dimensions below are
// frozen from hand computations on the standard summands.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lam/bicomplex.hpp"
#include "lam/random_gen.hpp"
#include "test_util.hpp"

using namespace lam;
using namespace lam::testutil;

namespace {

template <class K>
Bicomplex<K> two_by_two(const FieldOps<K>& ops, Mat<K> a1, Mat<K> a1up, Mat<K> a2,
                        Mat<K> a2rt, Convention conv) {
  // One square footprint (0,0),(1,0),(0,1),(1,1), all dims 1.
  GradedSpace sp(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sp.set_dim(deg2(i, j), 1);
  GradedMap<K> d1(sp, sp, deg2(1, 0)), d2(sp, sp, deg2(0, 1));
  d1.set_block(deg2(0, 0), a1);
  d1.set_block(deg2(0, 1), a1up);
  d2.set_block(deg2(0, 0), a2);
  d2.set_block(deg2(1, 0), a2rt);
  (void)ops;
  return make_bicomplex(sp, std::move(d1), std::move(d2), conv);
}

std::map<Deg, int> dims_of(const GradedSpace& s) {
  std::map<Deg, int> out;
  for (auto& [d, n] : s.dims) out[d] = n;
  return out;
}

}  // namespace

TEST_CASE("standard square is a valid anticommuting bicomplex") {
  auto b = standard_summand<Fp>(square_at(0, 0));
  CHECK(b.space.total_dim() == 4);
  CHECK(b.d1.block(deg2(0, 0))(0, 0) == Fp(1, 7));
  CHECK(b.d2.block(deg2(1, 0))(0, 0) == Fp(-1, 7));
  // Commuting variant of the same data fails validation.
  auto ops = f7();
  CHECK_THROWS_AS(two_by_two(ops, mk(ops, {{1}}), mk(ops, {{1}}), mk(ops, {{1}}),
                             mk(ops, {{-1}}), Convention::Commute),
                  ValidationError);
}

TEST_CASE("validation reports the first failing bidegree") {
  auto ops = f7();
  // Break anticommutativity by flipping the top edge sign.
  try {
    two_by_two(ops, mk(ops, {{1}}), mk(ops, {{-1}}), mk(ops, {{1}}), mk(ops, {{-1}}),
               Convention::Anticommute);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0,0)") != std::string::npos);
  }
  // d1 squared: chain of two d1 arrows with unit entries.
  GradedSpace sp(2);
  for (int i = 0; i < 3; ++i) sp.set_dim(deg2(i, 0), 1);
  GradedMap<Fp> d1(sp, sp, deg2(1, 0)), d2(sp, sp, deg2(0, 1));
  d1.set_block(deg2(0, 0), mk(ops, {{1}}));
  d1.set_block(deg2(1, 0), mk(ops, {{1}}));
  try {
    make_bicomplex(sp, d1, d2, Convention::Anticommute);
    CHECK(false);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("d1*d1") != std::string::npos);
  }
}

TEST_CASE("zero differentials and offset checks") {
  GradedSpace sp(2);
  sp.set_dim(deg2(2, 3), 5);
  GradedMap<Fp> d1(sp, sp, deg2(1, 0)), d2(sp, sp, deg2(0, 1));
  auto b = make_bicomplex(sp, d1, d2, Convention::Anticommute);
  CHECK(b.space.total_dim() == 5);
  GradedMap<Fp> bad(sp, sp, deg2(0, 1));
  CHECK_THROWS_AS(make_bicomplex(sp, bad, d2, Convention::Anticommute),
                  std::invalid_argument);
  GradedSpace one(1);
  CHECK_THROWS_AS(make_bicomplex(one, GradedMap<Fp>(one, one, deg1(1)),
                                 GradedMap<Fp>(one, one, deg1(1)),
                                 Convention::Anticommute),
                  std::invalid_argument);
}

TEST_CASE("convert_convention flips the forced sign and is an involution") {
  auto b = standard_summand<Fp>(square_at(0, 0));
  auto c = convert_convention(b);
  CHECK(c.convention == Convention::Commute);
  CHECK(c.d2.block(deg2(1, 0))(0, 0) == Fp(1, 7));   // (-1)^(1-0) * (-1)
  CHECK(c.d2.block(deg2(0, 0))(0, 0) == Fp(1, 7));   // (-1)^0 * 1
  auto back = convert_convention(c);
  CHECK(back.convention == Convention::Anticommute);
  CHECK(map_equal(back.d1, b.d1));
  CHECK(map_equal(back.d2, b.d2));

  auto ops = fbig();
  Rng rng(2024);
  for (int t = 0; t < 10; ++t) {
    auto [rb, labels] = random_bicomplex<Fp>(rng, ops);
    auto twice = convert_convention(convert_convention(rb));
    CHECK(map_equal(twice.d1, rb.d1));
    CHECK(map_equal(twice.d2, rb.d2));
  }
}

TEST_CASE("cohomology of the standard summands") {
  // Square: killing either differential leaves nothing.
  auto sq = standard_summand<Rational>(square_at(1, -2));
  CHECK(cohomology(sq, 2).h.total_dim() == 0);
  CHECK(cohomology(sq, 1).h.total_dim() == 0);

  // Dot survives in both directions at its own bidegree.
  auto dot = standard_summand<Fp>(dot_at(2, 3));
  auto cd = cohomology(dot, 2);
  CHECK(dims_of(cd.h) == std::map<Deg, int>{{deg2(2, 3), 1}});
  CHECK(cd.induced.is_zero());

  // ZUp of even length: one class at (i + l/2, j - l/2) after killing d2.
  auto z2 = cohomology(standard_summand<Fp>(zup_at(0, 0, 2)), 2);
  CHECK(dims_of(z2.h) == std::map<Deg, int>{{deg2(1, -1), 1}});
  auto z4 = cohomology(standard_summand<Fp>(zup_at(0, 0, 4)), 2);
  CHECK(dims_of(z4.h) == std::map<Deg, int>{{deg2(2, -2), 1}});
  // Odd length dies completely.
  CHECK(cohomology(standard_summand<Fp>(zup_at(0, 0, 3)), 2).h.total_dim() == 0);

  // ZRight l=1 has zero d2, so everything survives and the induced map is d1.
  auto z1 = cohomology(standard_summand<Fp>(zright_at(0, 0, 1)), 2);
  CHECK(dims_of(z1.h) == std::map<Deg, int>{{deg2(0, 0), 1}, {deg2(1, 0), 1}});
  CHECK(z1.induced.block(deg2(0, 0))(0, 0) == Fp(1, 32003));

  CHECK_THROWS_AS(cohomology(sq, 0), std::invalid_argument);
  CHECK_THROWS_AS(cohomology(sq, 3), std::invalid_argument);
}

TEST_CASE("total cohomology of the standard summands") {
  CHECK(total_cohomology(standard_summand<Fp>(dot_at(2, 3))) ==
        std::map<int, int>{{5, 1}});
  CHECK(total_cohomology(standard_summand<Fp>(square_at(0, 0))).empty());
  CHECK(total_cohomology(standard_summand<Fp>(zright_at(0, 0, 3))).empty());
  CHECK(total_cohomology(standard_summand<Fp>(zup_at(0, 0, 2))) ==
        std::map<int, int>{{0, 1}});
  CHECK(total_cohomology(standard_summand<Rational>(zright_at(1, 1, 2))) ==
        std::map<int, int>{{2, 1}});

  auto commuting = convert_convention(standard_summand<Fp>(square_at(0, 0)));
  CHECK_THROWS_AS(total_cohomology(commuting), ValidationError);
}

TEST_CASE("random conjugates keep cohomology dims") {
  auto ops = fbig();
  Rng rng(77);
  for (int t = 0; t < 8; ++t) {
    auto [b, labels] = random_bicomplex<Fp>(rng, ops);
    auto plain = standard_sum<Fp>(labels);
    CHECK(dims_of(cohomology(b, 2).h) == dims_of(cohomology(plain, 2).h));
    CHECK(dims_of(cohomology(b, 1).h) == dims_of(cohomology(plain, 1).h));
    CHECK(total_cohomology(b) == total_cohomology(plain));
  }
}
