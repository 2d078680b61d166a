#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "lam/random_gen.hpp"
#include "lam/serialize.hpp"
#include "test_util.hpp"

using namespace lam;
using namespace lam::testutil;

namespace {

template <class F>
std::string thrown_msg(F&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

std::string sealed(const std::string& body) {
  return body + "digest " + hex64(fnv1a64(body)) + "\n";
}

}  // namespace

TEST_CASE("digest test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(hex64(0xaf63dc4c8601ec8cull) == "af63dc4c8601ec8c");
}

TEST_CASE("bicomplex files round trip") {
  auto ops = fq();
  using K = Rational;
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    Bicomplex<K> b = random_bicomplex(rng, ops).first;
    std::string text = write_module(to_file(b, ops.spec), ops);
    ModuleFile<K> f = read_module<K>(text, ops);
    CHECK(file_equal(f, to_file(b, ops.spec)));
    Bicomplex<K> back = as_bicomplex(f);
    CHECK(back.convention == b.convention);
    CHECK(back.space == b.space);
    CHECK(map_equal(back.d1, b.d1));
    CHECK(map_equal(back.d2, b.d2));
    // Serialization is stable: parse -> serialize reproduces the bytes.
    CHECK(write_module(f, ops) == text);
  }
}

TEST_CASE("tricomplex files round trip over a prime field") {
  auto ops = fbig();
  using K = Fp;
  Rng rng(5);
  for (int t = 0; t < 5; ++t) {
    Tricomplex<K> m = random_tricomplex(rng, ops);
    std::string text = write_module(to_file(m, ops.spec), ops);
    Tricomplex<K> back = as_tricomplex(read_module<K>(text, ops));
    CHECK(tri_equal(back, m));
    CHECK(write_module(read_module<K>(text, ops), ops) == text);
  }
  CHECK(read_field(write_module(to_file(with_field(ops, q_module<K>()), ops.spec), ops)).p ==
        32003);
}

TEST_CASE("zigzag complex files carry the window") {
  auto ops = fbig();
  using K = Fp;
  ZigzagAlgebra alg = build_algebra(ops.spec, -4, 4);
  Rng rng(7);
  for (int t = 0; t < 4; ++t) {
    AComplex<K> c = braid_twist(0, complex_of(random_amodule(rng, ops, alg, 2)));
    std::string text = write_module(to_file(c), ops);
    AComplex<K> back = as_acomplex(read_module<K>(text, ops));
    CHECK(back.alg.lo == alg.lo);
    CHECK(back.alg.hi == alg.hi);
    CHECK(back.alg.truncated == alg.truncated);
    CHECK(back.space == c.space);
    CHECK(map_equal(back.raise, c.raise));
    CHECK(map_equal(back.lower, c.lower));
    CHECK(map_equal(back.d, c.d));
  }

  ZigzagAlgebra talg = build_algebra(ops.spec, -2, 2, true);
  AComplex<K> tc = complex_of(projective<K>(talg, 2, 0));
  AComplex<K> back = as_acomplex(read_module<K>(write_module(to_file(tc), ops), ops));
  CHECK(back.alg.truncated);

  // A tricomplex file has no window, so it cannot pose as a zigzag complex.
  Tricomplex<K> q = with_field(ops, q_module<K>());
  ModuleFile<K> qf = read_module<K>(write_module(to_file(q, ops.spec), ops), ops);
  CHECK(thrown_msg([&] { as_acomplex(qf); }).find("window") != std::string::npos);
  CHECK(tri_equal(as_tricomplex(qf), q));
}

TEST_CASE("validation errors name the problem and the degree") {
  auto ops = fq();
  using K = Rational;
  Bicomplex<K> b = standard_summand<K>(square_at(0, 0));
  std::string good = write_module(to_file(b, ops.spec), ops);

  // Corrupted digest.
  {
    std::string bad = good;
    size_t pos = bad.rfind("digest ");
    bad[pos + 7] = bad[pos + 7] == '0' ? '1' : '0';
    CHECK(thrown_msg([&] { read_module<K>(bad, ops); }).find("digest mismatch") !=
          std::string::npos);
  }
  // Corrupted content under an unchanged digest.
  {
    std::string bad = good;
    size_t pos = bad.find("dim 0,0 1");
    REQUIRE(pos != std::string::npos);
    bad[pos + 8] = '2';
    CHECK(thrown_msg([&] { read_module<K>(bad, ops); }).find("digest mismatch") !=
          std::string::npos);
  }

  CHECK(thrown_msg([&] { read_field("nonsense\n"); }).find("lam3-module v1") !=
        std::string::npos);
  CHECK(thrown_msg([&] { read_module<K>(sealed("lam3-module v1\nfield q\n"), ops); })
            .find("arity") != std::string::npos);

  // The field line must match the scalar type in use.
  auto opsp = fbig();
  CHECK(thrown_msg([&] { read_module<Fp>(good, opsp); }).find("does not match") !=
        std::string::npos);

  // A malformed matrix entry reports its block's degree.
  {
    std::string body =
        "lam3-module v1\nfield q\narity 2\nconvention anticommute\n"
        "dim 0,0 1\ndim 1,0 1\nmap d1 1,0\nblock 0,0\nx\nmap d2 0,1\n";
    std::string msg = thrown_msg([&] { read_module<K>(sealed(body), ops); });
    CHECK(msg.find("bad scalar 'x'") != std::string::npos);
    CHECK(msg.find("(0,0)") != std::string::npos);
  }
  // A block whose shape disagrees with the dimension table names its degree.
  {
    std::string body =
        "lam3-module v1\nfield q\narity 2\nconvention anticommute\n"
        "dim 0,0 1\ndim 1,0 2\nmap d1 1,0\nblock 0,0\n1\nmap d2 0,1\n";
    std::string msg = thrown_msg([&] { read_module<K>(sealed(body), ops); });
    CHECK(msg.find("(0,0)") != std::string::npos);
  }
  // Structure mismatches surface through the converters.
  {
    ModuleFile<K> f = read_module<K>(good, ops);
    f.maps.pop_back();
    CHECK(thrown_msg([&] { as_bicomplex(f); }).find("missing map 'd2'") !=
          std::string::npos);
    CHECK(thrown_msg([&] { as_tricomplex(f); }).find("arity 3") != std::string::npos);
  }
  // Differential relations are still enforced on the way in: flipping one
  // sign of the square's d2 breaks anticommutativity at a named degree.
  {
    Bicomplex<K> bad = b;
    bad.d2.set_block(deg2(1, 0), mk(ops, {{1}}));
    ModuleFile<K> f = to_file(bad, ops.spec);
    std::string msg =
        thrown_msg([&] { as_bicomplex(read_module<K>(write_module(f, ops), ops)); });
    CHECK(msg.find("d1*d2 + d2*d1 != 0") != std::string::npos);
    CHECK(msg.find("(0,0)") != std::string::npos);
  }
}
