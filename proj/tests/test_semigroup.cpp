#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "rmc/accordability.hpp"
#include "rmc/catalog.hpp"
#include "rmc/errors.hpp"
#include "rmc/semigroup.hpp"

using namespace rmc;

namespace {

std::set<oracle::Table> as_tables(const SemigroupTable& table) {
  std::set<oracle::Table> out;
  for (const auto& t : table.elements()) out.insert(oracle::Table(t.table().begin(), t.table().end()));
  return out;
}

}  // namespace

TEST_CASE("non-h semigroup contains the listed elements and has six elements") {
  const auto system = non_h_example();
  const auto table = enumerate_semigroup(system);
  CHECK(table.size() == 6);
  for (const auto& text : non_h_listed_elements()) {
    CHECK(table.find(system.compose_word(system.parse_word(text))).has_value());
  }
  // The element beyond the listed five.
  const auto extra = system.compose_word(system.parse_word("f2 f1 f1"));
  CHECK(extra == Transformation({0, 1, 3, 3}));
  CHECK(table.find(extra).has_value());
  CHECK(as_tables(table) == oracle::semigroup(system));
}

TEST_CASE("semigroup sizes of small catalog systems") {
  CHECK(enumerate_semigroup(vinokourov()).size() == 2);
  CHECK(enumerate_semigroup(counterexample_truncated(4)).size() ==
        oracle::semigroup(counterexample_truncated(4)).size());
  const auto s3 = gen_group_action(symmetric_group_3(), {{1, Rational(1, 2)}, {4, Rational(1, 2)}});
  CHECK(enumerate_semigroup(s3).size() == 6);
}

TEST_CASE("semigroup cap is reported, never truncated silently") {
  const auto s3 = gen_group_action(symmetric_group_3(), {{1, Rational(1, 2)}, {4, Rational(1, 2)}});
  CHECK_THROWS_AS(enumerate_semigroup(s3, 3), CapExceeded);
}

TEST_CASE("property: semigroup closure, words, and multiplication table") {
  testing::for_random_systems(303, 80, testing::any, [](const RandomMapSystem& system) {
    const auto table = enumerate_semigroup(system);
    CHECK(as_tables(table) == oracle::semigroup(system));
    for (std::size_t i = 0; i < table.size(); ++i) {
      CHECK(system.compose_word(table.word(i)) == table.element(i));
      for (std::size_t h = 0; h < system.map_count(); ++h) {
        CHECK(table.element(table.right(i, h)) ==
              compose(table.element(i), system.transformation(h)));
      }
    }
  });
}

TEST_CASE("walk structure from the identity") {
  const auto system = counterexample_truncated(3);
  const auto table = enumerate_semigroup(system);
  const auto walk = walk_structure(table);
  const auto recurrent = walk.recurrent_elements();
  CHECK_FALSE(recurrent.empty());
  // Recurrent elements of a synchronizing system are the constants.
  for (const auto r : recurrent) CHECK(table.element(r).is_constant());
  const auto closed = oracle::closed_nodes(walk.edges);
  for (std::size_t i = 0; i < table.size(); ++i) CHECK(walk.recurrent[i] == closed[i]);
}

TEST_CASE("recurrent elements have rank M and non-accordable images") {
  const auto system = non_h_example();
  const auto report = check_recurrent_images(system);
  CHECK(report.ok);
  CHECK(report.m == 3);
  CHECK(report.min_rank_over_semigroup == 3);
  CHECK_FALSE(report.details.empty());

  testing::for_random_systems(404, 60, testing::ergodic, [](const RandomMapSystem& sys) {
    const auto r = check_recurrent_images(sys);
    CHECK(r.ok);
    CHECK(r.m == oracle::max_non_accordable(sys));
    for (const auto& detail : r.details) {
      CHECK(detail.rank_matches);
      CHECK(detail.pairwise_non_accordable);
    }
  });

  const RandomMapSystem cycle(StateSpace({"a", "b"}), {{"swap", Transformation({1, 0}), Rational(1)}});
  CHECK_THROWS_AS(check_recurrent_images(cycle), PreconditionError);
}

TEST_CASE("backward walk images shrink to the minimal rank") {
  const auto system = counterexample_truncated(4);
  const auto walker = BackwardWalker::with_min_rank(system);
  CHECK(walker.target_rank() == 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto trace = walker.run(seed, 2000);
    REQUIRE(trace.images.size() == trace.word.size() + 1);
    CHECK(trace.images[0] == full_set(5));
    for (std::size_t n = 1; n < trace.images.size(); ++n) {
      CHECK((trace.images[n] & ~trace.images[n - 1]) == 0);
      const Word prefix(trace.word.begin(), trace.word.begin() + static_cast<std::ptrdiff_t>(n));
      CHECK(system.compose_word(prefix).image() == trace.images[n]);
    }
    CHECK(trace.stabilized);
    CHECK(set_size(trace.limit_image) == 1);
    // Determinism in the seed.
    CHECK(walker.run(seed, 2000).word == trace.word);
  }
}

TEST_CASE("property: ranks over S are at least M, with equality exactly on recurrent elements") {
  testing::for_random_systems(606, 60, testing::irreducible, [](const RandomMapSystem& system) {
    const auto table = enumerate_semigroup(system);
    const auto walk = walk_structure(table);
    const auto m = max_non_accordable(system).m;
    for (std::size_t i = 0; i < table.size(); ++i) {
      CHECK(table.element(i).rank() >= m);
      CHECK((table.element(i).rank() == m) == walk.recurrent[i]);
    }
  });
}

TEST_CASE("property: stabilized backward walks end on M pairwise non-accordable states") {
  testing::for_random_systems(707, 10, testing::ergodic, [](const RandomMapSystem& system) {
    const auto report = max_non_accordable(system);
    const auto walker = BackwardWalker::with_min_rank(system);
    CHECK(walker.target_rank() == report.m);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto trace = walker.run(seed, 5000);
      CHECK(system.compose_word(trace.word).image() == trace.images.back());
      if (!trace.stabilized) continue;
      CHECK(trace.limit_image == trace.images[*trace.stabilization_index]);
      const auto r0 = members(trace.limit_image);
      CHECK(r0.size() == report.m);
      for (const auto a : r0) {
        for (const auto b : r0) {
          if (a != b) CHECK_FALSE(report.relation[a][b]);
        }
      }
    }
  });
}
