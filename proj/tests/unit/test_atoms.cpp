#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "zsm/atoms.hpp"

using namespace zsm;

namespace {
std::vector<std::string> names(const std::vector<Sequence>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}
}  // namespace

TEST_SUITE("atoms") {
  TEST_CASE("is_atom basics") {
    CHECK(is_atom(Sequence::parse("1 -1")));
    CHECK_FALSE(is_atom(Sequence::parse("1^2 -1^2")));
    CHECK(is_atom(Sequence::parse("3 1 -2^2")));
    CHECK(is_atom(Sequence::parse("0")));
    CHECK_FALSE(is_atom(Sequence::parse("0^2")));
    CHECK_FALSE(is_atom(Sequence()));
  }

  TEST_CASE("is_atom agrees with exhaustive sub-multisets") {
    auto r = gen::rng("is_atom");
    for (int trial = 0; trial < 400; ++trial) {
      Sequence s = oracle::random_zero_sum({-6, -4, -1, 2, 3, 5}, 9, r);
      CHECK(is_atom(s) == oracle::is_minimal_zero_sum(s));
    }
    for (Int n : {4, 5, 6}) {
      for (int trial = 0; trial < 100; ++trial) {
        Sequence s(Ambient::cyclic(n));
        Int sum = 0;
        Count len = gen::uniform(r, 1, n + 1);
        for (Count i = 0; i + 1 < len; ++i) {
          Int g = gen::uniform(r, 1, n - 1);
          s.add(g);
          sum += g;
        }
        Int last = ((n - sum % n) % n);
        s.add(last == 0 ? n - 1 : last);
        CHECK(is_atom(s) == oracle::is_minimal_zero_sum(s));
      }
    }
  }

  TEST_CASE("small catalogues") {
    CHECK(names(enumerate_atoms({-1, 1}).atoms) == std::vector<std::string>{"-1 1"});
    CHECK(names(enumerate_atoms({-4, 2}).atoms) == std::vector<std::string>{"-4 2^2"});
    CHECK(names(enumerate_atoms({-2, -1, 1, 2}).atoms) ==
          std::vector<std::string>{"-2 1^2", "-2 2", "-1 1", "-1^2 2"});
    CHECK(davenport({-1, 1}) == 2);
    CHECK(davenport({-2, -1, 1, 2}) == 3);
    for (Int n = 2; n <= 6; ++n) CHECK(davenport({-n, 1}) == n + 1);
    CHECK_THROWS_AS(enumerate_atoms({1, 2}), InvalidInput);
    CHECK(names(enumerate_atoms({0, -1, 1}).atoms) == std::vector<std::string>{"-1 1", "0"});
  }

  TEST_CASE("random grounds match the minimal zero-sum oracle") {
    auto r = gen::rng("atoms");
    for (int trial = 0; trial < 40; ++trial) {
      auto g = gen::condensed_ground(r, -5, 5, 4);
      Count cap = g.back() - g.front();
      auto got = enumerate_atoms(g);
      CHECK(got.atoms == oracle::atoms(g, cap));
      for (const auto& u : got.atoms) {
        CHECK(u.positive_part().length() <= -g.front());
        CHECK(u.negative_part().length() <= g.back());
      }
      CHECK(got.davenport() <= cap);
    }
  }

  TEST_CASE("cyclic catalogues") {
    for (Int n = 1; n <= 8; ++n) {
      std::vector<Int> all;
      for (Int g = 0; g < n; ++g) all.push_back(g);
      CHECK(davenport_cyclic(n, all) == n);
    }
    for (Int n = 2; n <= 6; ++n) {
      std::vector<Int> nonzero;
      for (Int g = 1; g < n; ++g) nonzero.push_back(g);
      CHECK(enumerate_atoms_cyclic(n, nonzero).atoms == oracle::cyclic_atoms(n, nonzero));
    }
  }

  TEST_CASE("two-support atoms") {
    CHECK(two_support_atom(-1, 1) == Sequence::parse("-1 1"));
    CHECK(two_support_atom(-4, 6) == Sequence::parse("-4^3 6^2"));
    CHECK(two_support_atom(-2, 3) == Sequence::parse("-2^3 3^2"));
    CHECK_THROWS_AS(two_support_atom(2, 3), InvalidInput);
  }

  TEST_CASE("extend_to_atom") {
    GroundSpec odd({-2, -1}, {{1, 2}});
    GroundSpec naturals({-2, -1}, {{1, 1}});
    Sequence u = extend_to_atom(Sequence::parse("-2^3"), odd);
    CHECK(is_atom(u));
    CHECK(Sequence::parse("-2^3").divides(u));
    Sequence v = extend_to_atom(Sequence::parse("-1^2"), naturals);
    CHECK(is_atom(v));
    CHECK(Sequence::parse("-1^2").divides(v));
    CHECK(extend_to_atom(Sequence::parse("-1^2"), GroundSpec({-1}, {{1, 1}})) == Sequence::parse("4 -1^4"));
    CHECK(extend_to_atom(Sequence(), odd) == two_support_atom(-1, 1));
    CHECK_THROWS_AS(extend_to_atom(Sequence::parse("-1"), GroundSpec::from_list({-1, 1})), Inapplicable);
    CHECK_THROWS_AS(extend_to_atom(Sequence::parse("1"), odd), InvalidInput);
    auto r = gen::rng("extend");
    for (int trial = 0; trial < 50; ++trial) {
      Sequence s = gen::sequence(r, {-3, -2}, gen::uniform(r, 1, 6));
      Sequence w = extend_to_atom(s, GroundSpec({-3, -2}, {{5, 6}}));
      CHECK(is_atom(w));
      CHECK(s.divides(w));
    }
  }
}
