// Decomposition into standard summands, checked against three independent
// oracles: (1) ground-truth labels recorded by the random generator before
// conjugation, (2) per-bidegree ranks of d1, d2, d1 d2 predicted from label
// footprints alone, (3) the spectral-page census against cohomology computed
// directly from the matrices.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lam/decompose.hpp"
#include "lam/random_gen.hpp"
#include "test_util.hpp"

using namespace lam;
using namespace lam::testutil;

namespace {

// The change of basis must intertwine the standard differentials with the
// input ones: U d_model = d_input U.
template <class K>
bool intertwines(const Decomposition<K>& dec, const Bicomplex<K>& b) {
  Bicomplex<K> model = standard_sum<K>(dec.summands);
  return map_equal(compose(dec.change_of_basis, model.d1),
                   compose(b.d1, dec.change_of_basis)) &&
         map_equal(compose(dec.change_of_basis, model.d2),
                   compose(b.d2, dec.change_of_basis));
}

// Independent rank oracle: ranks of the differential blocks of a direct sum
// of standard summands, predicted from the labels without any linear algebra.
struct RankCensus {
  std::map<Deg, int> r1, r2, r12;
};

RankCensus predicted_ranks(const std::vector<SummandLabel>& labels) {
  RankCensus rc;
  for (auto& s : labels) {
    switch (s.kind) {
      case SummandKind::Dot:
        break;
      case SummandKind::Square:
        ++rc.r1[deg2(s.i, s.j)];
        ++rc.r1[deg2(s.i, s.j + 1)];
        ++rc.r2[deg2(s.i, s.j)];
        ++rc.r2[deg2(s.i + 1, s.j)];
        ++rc.r12[deg2(s.i, s.j)];
        break;
      case SummandKind::ZRight:
        for (int t = 0; 2 * t < s.l; ++t) ++rc.r1[deg2(s.i + t, s.j - t)];
        for (int t = 1; 2 * t - 1 < s.l; ++t) ++rc.r2[deg2(s.i + t, s.j - t)];
        break;
      case SummandKind::ZUp:
        for (int t = 0; 2 * t + 1 <= s.l; ++t) ++rc.r2[deg2(s.i + t, s.j - t - 1)];
        for (int t = 0; 2 * t + 2 <= s.l; ++t) ++rc.r1[deg2(s.i + t, s.j - t - 1)];
        break;
    }
  }
  return rc;
}

template <class K>
RankCensus actual_ranks(const Bicomplex<K>& b) {
  RankCensus rc;
  auto scan = [](const GradedMap<K>& f, std::map<Deg, int>& out) {
    for (auto& [d, blk] : f.blocks) {
      int r = rank(blk);
      if (r) out[d] = r;
    }
  };
  scan(b.d1, rc.r1);
  scan(b.d2, rc.r2);
  scan(compose(b.d1, b.d2), rc.r12);
  return rc;
}

std::map<Deg, int> dims_of(const GradedSpace& s) {
  std::map<Deg, int> out;
  for (auto& [d, n] : s.dims) out[d] = n;
  return out;
}

std::map<Deg, int> census_trim(std::map<Deg, int> m) {
  for (auto it = m.begin(); it != m.end();)
    it = it->second == 0 ? m.erase(it) : std::next(it);
  return m;
}

}  // namespace

TEST_CASE("single standard summands decompose to themselves") {
  for (auto lab : {dot_at(2, 3), square_at(0, 0), square_at(-1, 4), zright_at(0, 0, 1),
                   zright_at(1, -1, 4), zup_at(0, 0, 1), zup_at(2, 2, 3)}) {
    auto b = standard_summand<Fp>(lab);
    auto dec = decompose(b);
    REQUIRE(dec.summands.size() == 1);
    CHECK(dec.summands[0] == lab);
    CHECK(intertwines(dec, b));
  }
  // Empty bicomplex.
  GradedSpace sp(2);
  auto empty = make_bicomplex(sp, GradedMap<Fp>(sp, sp, deg2(1, 0)),
                              GradedMap<Fp>(sp, sp, deg2(0, 1)),
                              Convention::Anticommute);
  CHECK(decompose(empty).summands.empty());
}

TEST_CASE("hand fixtures") {
  auto ops = f7();
  // Invertible d1 between two 2-dim spaces: two length-1 zigzags.
  {
    GradedSpace sp(2);
    sp.set_dim(deg2(0, 0), 2);
    sp.set_dim(deg2(1, 0), 2);
    GradedMap<Fp> d1(sp, sp, deg2(1, 0)), d2(sp, sp, deg2(0, 1));
    d1.set_block(deg2(0, 0), mk(ops, {{1, 1}, {0, 1}}));
    auto b = make_bicomplex(sp, d1, d2, Convention::Anticommute);
    auto dec = decompose(b);
    CHECK(dec.summands ==
          std::vector<SummandLabel>{zright_at(0, 0, 1), zright_at(0, 0, 1)});
    CHECK(intertwines(dec, b));
  }
  // Rank-one d1 between two 2-dim spaces: one zigzag plus two dots.
  {
    GradedSpace sp(2);
    sp.set_dim(deg2(0, 0), 2);
    sp.set_dim(deg2(1, 0), 2);
    GradedMap<Fp> d1(sp, sp, deg2(1, 0)), d2(sp, sp, deg2(0, 1));
    d1.set_block(deg2(0, 0), mk(ops, {{1, 0}, {0, 0}}));
    auto b = make_bicomplex(sp, d1, d2, Convention::Anticommute);
    auto dec = decompose(b);
    CHECK(dec.summands == std::vector<SummandLabel>{dot_at(0, 0), dot_at(1, 0),
                                                    zright_at(0, 0, 1)});
    CHECK(intertwines(dec, b));
  }
  // A free square hidden by a random change of basis.
  {
    Rng rng(5);
    auto b = conjugate_random(rng, ops, standard_summand<Fp>(square_at(0, 0)));
    auto dec = decompose(b);
    CHECK(dec.summands == std::vector<SummandLabel>{square_at(0, 0)});
    CHECK(intertwines(dec, b));
  }
}

TEST_CASE("convention guard") {
  auto commuting = convert_convention(standard_summand<Fp>(square_at(0, 0)));
  try {
    decompose(commuting);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("convert_convention") != std::string::npos);
  }
}

TEST_CASE("random conjugates of known sums: recovered labels match ground truth") {
  auto run = [](auto ops, unsigned long long seed, int trials) {
    using K = decltype(ops.from_int(0));
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
      auto [b, labels] = random_bicomplex<K>(rng, ops);
      auto pred = predicted_ranks(labels);
      auto act = actual_ranks(b);
      CHECK(pred.r1 == act.r1);
      CHECK(pred.r2 == act.r2);
      CHECK(pred.r12 == act.r12);
      auto dec = decompose(b);
      CHECK(dec.summands == labels);
      CHECK(intertwines(dec, b));
    }
  };
  run(fbig(), 1001, 25);
  run(f7(), 1002, 25);   // small field: more accidental collisions
  run(fq(), 1003, 8);    // exact rationals
}

TEST_CASE("spectral page fixtures for odd zigzags") {
  auto z1 = standard_summand<Fp>(zright_at(0, 0, 1));
  CHECK(spectral_page(z1, 1) ==
        std::map<Deg, int>{{deg2(0, 0), 1}, {deg2(1, 0), 1}});
  CHECK(spectral_page(z1, 2).empty());

  auto z3 = standard_summand<Fp>(zright_at(0, 0, 3));
  CHECK(spectral_page(z3, 1) ==
        std::map<Deg, int>{{deg2(0, 0), 1}, {deg2(2, -1), 1}});
  CHECK(spectral_page(z3, 2) ==
        std::map<Deg, int>{{deg2(0, 0), 1}, {deg2(2, -1), 1}});
  CHECK(spectral_page(z3, 3).empty());

  CHECK_THROWS_AS(label_page_census({}, 0), std::invalid_argument);
}

TEST_CASE("pages 1 and 2 agree with cohomology computed from the matrices") {
  auto ops = fbig();
  Rng rng(42);
  for (int t = 0; t < 12; ++t) {
    auto [b, labels] = random_bicomplex<Fp>(rng, ops);
    auto c = cohomology(b, 2);
    CHECK(spectral_page(b, 1) == census_trim(dims_of(c.h)));
    auto page2 = graded_cohomology(c.h, c.induced);
    CHECK(spectral_page(b, 2) == census_trim(dims_of(page2.h)));
  }
}

TEST_CASE("census stabilizes and collapses to total cohomology") {
  auto ops = fbig();
  Rng rng(314);
  for (int t = 0; t < 12; ++t) {
    auto [b, labels] = random_bicomplex<Fp>(rng, ops);
    int maxhalf = 0;
    for (auto& s : labels) maxhalf = std::max(maxhalf, s.l / 2);
    int p0 = maxhalf + 2;
    auto stable = spectral_page(b, p0);
    CHECK(stable == spectral_page(b, p0 + 3));
    std::map<int, int> collapsed;
    for (auto& [d, n] : stable) collapsed[d[0] + d[1]] += n;
    CHECK(collapsed == total_cohomology(b));
  }
}
