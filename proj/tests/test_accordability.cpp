#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "rmc/accordability.hpp"
#include "rmc/catalog.hpp"
#include "rmc/errors.hpp"

using namespace rmc;

TEST_CASE("non-h example: only the pair {3,4} is accordable") {
  const auto system = non_h_example();
  const auto relation = accordability_relation(system);
  for (std::size_t x = 0; x < 4; ++x) {
    for (std::size_t y = 0; y < 4; ++y) {
      const bool expected = x == y || (x >= 2 && y >= 2);
      CHECK(relation[x][y] == expected);
    }
  }
  const auto verdict = accordable(system, 2, 3);
  CHECK(verdict.accordable);
  REQUIRE(verdict.witness.has_value());
  CHECK(system.word_to_string(*verdict.witness) == "f1");
  CHECK_FALSE(accordable(system, 0, 1).accordable);
  CHECK_FALSE(accordable(system, 0, 1).witness.has_value());

  const auto report = max_non_accordable(system);
  CHECK(report.m == 3);
  CHECK(report.witness_set.size() == 3);
  CHECK(min_rank(system).rank == 3);
  CHECK(system.compose_word(min_rank(system).witness).rank() == 3);
  CHECK_FALSE(innovations_determine(system).determined);
}

TEST_CASE("truncated counterexample: everything accordable, synchronizing") {
  const auto system = counterexample_truncated(4);
  const auto report = max_non_accordable(system);
  CHECK(report.m == 1);
  for (const auto& row : report.relation) {
    for (const bool v : row) CHECK(v);
  }
  const auto rank = min_rank(system);
  CHECK(rank.rank == 1);
  CHECK(rank.witness.size() == 4);
  CHECK(system.compose_word(rank.witness).is_constant());
  CHECK(system.compose_word(system.parse_word("f1 f1 f1 f1")) == Transformation::constant(5, 0));
  const auto verdict = innovations_determine(system);
  CHECK(verdict.determined);
  CHECK(verdict.all_pairs_accordable);
  CHECK(verdict.diagonal_absorbs);
  CHECK(verdict.synchronizing);
}

TEST_CASE("vinokourov: innovations do not determine the chain") {
  const auto system = vinokourov();
  CHECK_FALSE(accordable(system, 0, 1).accordable);
  CHECK(max_non_accordable(system).m == 2);
  CHECK(min_rank(system).rank == 2);
  const auto diagonal = diagonal_recurrence_check(system);
  CHECK_FALSE(diagonal.holds);
  CHECK(diagonal.offenders.size() == 2);
  const auto verdict = innovations_determine(system);
  CHECK_FALSE(verdict.determined);
  CHECK_FALSE(verdict.all_pairs_accordable);
  CHECK_FALSE(verdict.diagonal_absorbs);
  CHECK_FALSE(verdict.synchronizing);
}

TEST_CASE("accordable: trivial and invalid arguments") {
  const auto system = non_h_example();
  const auto self = accordable(system, 1, 1);
  CHECK(self.accordable);
  REQUIRE(self.witness.has_value());
  CHECK(self.witness->empty());
  CHECK_THROWS_AS(accordable(system, 0, 9), InputError);
}

TEST_CASE("state caps") {
  std::vector<std::string> labels;
  for (int i = 0; i < 18; ++i) labels.push_back(std::to_string(i));
  std::vector<std::uint8_t> shift(18);
  for (int i = 0; i < 18; ++i) shift[i] = static_cast<std::uint8_t>((i + 1) % 18);
  const RandomMapSystem big(StateSpace(labels),
                            {{"s", Transformation(shift), Rational(1, 2)},
                             {"c", Transformation::constant(18, 0), Rational(1, 2)}});
  CHECK_THROWS_AS(max_non_accordable(big), CapExceeded);
  CHECK_THROWS_AS(max_non_accordable(big, 30), InputError);
  CHECK(max_non_accordable(big, 18).m == 1);
  CHECK(min_rank(big, 18).rank == 1);

  std::vector<std::string> too_many;
  for (int i = 0; i < 25; ++i) too_many.push_back(std::to_string(i));
  CHECK_THROWS_AS(StateSpace{too_many}, InputError);
}

TEST_CASE("property: relation and M agree with brute force") {
  testing::for_random_systems(101, 150, testing::any, [](const RandomMapSystem& system) {
    const auto report = max_non_accordable(system);
    const auto d = system.degree();
    for (std::size_t x = 0; x < d; ++x) {
      for (std::size_t y = 0; y < d; ++y) {
        const bool expected = oracle::accordable(system, static_cast<int>(x), static_cast<int>(y));
        CHECK(report.relation[x][y] == expected);
        CHECK(report.relation[x][y] == report.relation[y][x]);
      }
    }
    CHECK(report.m == oracle::max_non_accordable(system));
    // The witness set is pairwise non-accordable.
    for (const auto a : report.witness_set) {
      for (const auto b : report.witness_set) {
        if (a != b) CHECK_FALSE(report.relation[a][b]);
      }
    }
    // Every witness word merges its pair.
    for (const auto& [pair, word] : report.witnesses) {
      const auto t = system.compose_word(word);
      CHECK(t(pair.first) == t(pair.second));
    }
    const auto rank = min_rank(system);
    CHECK(rank.rank == oracle::min_rank(system));
    CHECK(system.compose_word(rank.witness).rank() == rank.rank);
    CHECK(diagonal_recurrence_check(system).holds == oracle::diagonal_absorbs(system));
  });
}

TEST_CASE("property: on irreducible systems the three determination routes agree with M") {
  testing::for_random_systems(202, 150, testing::irreducible, [](const RandomMapSystem& system) {
    const auto verdict = innovations_determine(system);
    const auto m = max_non_accordable(system).m;
    CHECK(verdict.all_pairs_accordable == (m == 1));
    CHECK(verdict.diagonal_absorbs == (m == 1));
    CHECK(verdict.synchronizing == (m == 1));
    CHECK(verdict.rank.rank == m);
  });
}

TEST_CASE("innovations_determine refuses reducible kernels") {
  const RandomMapSystem identity(StateSpace({"a", "b"}),
                                 {{"id", Transformation::identity(2), Rational(1)}});
  CHECK_THROWS_AS(innovations_determine(identity), PreconditionError);
}

TEST_CASE("property: verdicts depend only on the map set, not the weights") {
  Rng weights_rng(909);
  testing::for_random_systems(303, 80, testing::any, [&](const RandomMapSystem& system) {
    std::vector<Rational> weights;
    Rational total = 0;
    for (std::size_t h = 0; h < system.map_count(); ++h) {
      weights.emplace_back(static_cast<long long>(1 + uniform_index(weights_rng, 20)));
      total += weights.back();
    }
    for (auto& w : weights) w /= total;
    const auto other = system.with_weights(weights);
    CHECK(accordability_relation(other) == accordability_relation(system));
    CHECK(max_non_accordable(other).m == max_non_accordable(system).m);
    CHECK(min_rank(other).rank == min_rank(system).rank);
    CHECK(diagonal_recurrence_check(other).holds == diagonal_recurrence_check(system).holds);
  });
}

TEST_CASE("property: all pairs accordable forces a constant composition, irreducible or not") {
  int hits = 0;
  testing::for_random_systems(404, 200, testing::any, [&](const RandomMapSystem& system) {
    if (max_non_accordable(system).m != 1) return;
    ++hits;
    CHECK(min_rank(system).rank == 1);
  });
  CHECK(hits > 20);
}

TEST_CASE("property: M equals the minimal rank on ergodic systems") {
  testing::for_random_systems(505, 100, testing::ergodic, [](const RandomMapSystem& system) {
    CHECK(max_non_accordable(system).m == min_rank(system).rank);
  });
}
