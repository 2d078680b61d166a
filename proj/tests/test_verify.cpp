#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include <lam/verify.hpp>

#include "test_util.hpp"

using namespace lam;
using lam::testutil::fbig;

TEST_CASE("braid words parse from signed index lists") {
  BraidWord w = parse_braid_word("0,1,-0");
  REQUIRE(w.size() == 3);
  CHECK(w[0].index == 0);
  CHECK(w[0].sign == 1);
  CHECK(w[1].index == 1);
  CHECK(w[1].sign == 1);
  CHECK(w[2].index == 0);
  CHECK(w[2].sign == -1);
  CHECK(parse_braid_word("").empty());
  CHECK_THROWS_AS(parse_braid_word("0,x"), ValidationError);
  CHECK_THROWS_AS(parse_braid_word("0,,1"), ValidationError);
  CHECK_THROWS_AS(parse_braid_word("1 2"), ValidationError);
}

TEST_CASE("the randomized suites pass with the standard sign table") {
  FieldOps<Fp> ops = fbig();
  VerifyOptions o;
  o.trials = 3;
  for (std::string name : {"tl", "inverse", "bridge"}) {
    Report rep{{"suite " + name}, run_suite(name, ops, o)};
    INFO(rep.str());
    CHECK(rep.ok());
  }
  VerifyOptions ob = o;
  ob.trials = 2;
  Report rb{{"suite braid"}, run_suite("braid", ops, ob)};
  INFO(rb.str());
  CHECK(rb.ok());
  Report rh{{"suite homtable"}, run_suite("homtable", ops, o)};
  INFO(rh.str());
  CHECK(rh.ok());
  CHECK(rh.findings.size() == 6);  // five vertex rows plus the census
  CHECK_THROWS_AS(run_suite("nope", ops, o), ValidationError);
}

TEST_CASE("reports render deterministically") {
  FieldOps<Fp> ops = fbig();
  VerifyOptions o;
  o.trials = 2;
  o.seed = 7;
  Report a{{"suite tl", "seed 7"}, suite_tl(ops, o)};
  Report b{{"suite tl", "seed 7"}, suite_tl(ops, o)};
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("lam3-report v1\n", 0) == 0);
  CHECK(a.str().find("suite tl\n") != std::string::npos);
  CHECK(a.str().find("summary checks 8 passed 8 failed 0\n") != std::string::npos);
}

TEST_CASE("each corrupted counit sign is caught by the contraction suite") {
  FieldOps<Fp> ops = fbig();
  for (int slot = 0; slot < 4; ++slot) {
    VerifyOptions o;
    o.trials = 2;
    (slot == 0   ? o.signs.on_line_unit
     : slot == 1 ? o.signs.on_line_top
     : slot == 2 ? o.signs.above_line
                 : o.signs.below_line) = -1;
    Report rep{{}, suite_tl(ops, o)};
    INFO("slot ", slot, "\n", rep.str());
    CHECK_FALSE(rep.ok());
    bool informative = false;
    for (auto& f : rep.findings)
      if (!f.pass && f.note.find("error:") != std::string::npos) informative = true;
    CHECK(informative);
  }
}

TEST_CASE("fingerprints ignore free summands and detect shifts") {
  FieldOps<Fp> ops = fbig();
  Rng rng(11);
  Tricomplex<Fp> m = random_tricomplex(rng, ops, 3, 1);
  Fingerprint fp = fingerprint(m, ops);
  Tricomplex<Fp> padded =
      direct_sum_tricomplex(m, with_field(ops, shift_tricomplex(lambda3<Fp>(), deg3(1, 0, -1))))
          .sum;
  CHECK(fingerprint(padded, ops) == fp);

  Tricomplex<Fp> q = with_field(ops, q_module<Fp>());
  Fingerprint base = fingerprint(q, ops);
  CHECK(base != fingerprint(shift_tricomplex(q, deg3(0, 0, 1)), ops));
  CHECK(base.dims.size() == 4);
  int total = 0;
  for (int p : base.probes) total += p;
  CHECK(total == 4);  // id, two edge classes, and the top class, each dim 1
  CHECK(base.str().find("probes") != std::string::npos);
}

TEST_CASE("complex fingerprints are homotopy invariants that see the braid action") {
  FieldOps<Fp> ops = fbig();
  ZigzagAlgebra alg = build_algebra(ops.spec, -4, 4);
  AComplex<Fp> p0 = complex_of(projective<Fp>(alg, 0, 0));

  BraidWord lhs = parse_braid_word("0,1,0"), rhs = parse_braid_word("1,0,1");
  Fingerprint a = fingerprint(braid_apply(lhs, p0), ops);
  CHECK(a == fingerprint(braid_apply(rhs, p0), ops));
  CHECK(fingerprint(braid_apply(parse_braid_word("0,2"), p0), ops) ==
        fingerprint(braid_apply(parse_braid_word("2,0"), p0), ops));
  CHECK(a != fingerprint(p0, ops));
  CHECK_THROWS_AS(braid_apply(parse_braid_word("-0"), p0), UnsupportedError);

  Tricomplex<Fp> g0 = functor_g(p0);
  CHECK(fingerprint(braid_word_apply(lhs, g0), ops) ==
        fingerprint(braid_word_apply(rhs, g0), ops));
  CHECK(fingerprint(braid_word_apply(parse_braid_word("-0,0"), g0), ops) ==
        fingerprint(g0, ops));
}
