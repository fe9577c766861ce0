#include <doctest.h>

#include "helpers.hpp"
#include "rmc/catalog.hpp"
#include "rmc/errors.hpp"
#include "rmc/report.hpp"

using namespace rmc;

TEST_CASE("non-h report") {
  AnalysisOptions options;
  options.reference_elements = non_h_listed_elements();
  const auto report = analyze(non_h_example(), options);
  CHECK(report.m == 3);
  CHECK(report.n == 2);
  CHECK_FALSE(report.h_feasible);
  CHECK_FALSE(report.m_divides_d);
  CHECK(report.accordable_pairs == std::vector<LabelPair>{{"3", "4"}});
  CHECK(report.pair_witnesses == std::vector<std::string>{"f1"});
  CHECK(report.semigroup_size == std::optional<std::size_t>(6));
  CHECK(report.reference_elements_contained == std::optional<bool>(true));
  CHECK(report.semigroup_note.find("6") != std::string::npos);
  CHECK(report.recurrent_images == "ok");
  CHECK_FALSE(report_inconsistency(report).has_value());
  const auto text = render_text(report);
  CHECK(text.find("M (max pairwise non-accordable): 3") != std::string::npos);
}

TEST_CASE("report json is deterministic and re-parses consistently") {
  testing::for_random_systems(808, 30, testing::irreducible, [](const RandomMapSystem& system) {
    const auto first = to_json(analyze(system)).dump(2);
    const auto second = to_json(analyze(system)).dump(2);
    CHECK(first == second);
    const auto reparsed = report_from_json(nlohmann::ordered_json::parse(first));
    CHECK(to_json(reparsed).dump(2) == first);
    CHECK_FALSE(report_inconsistency(reparsed).has_value());
  });
}

TEST_CASE("inconsistent reports are detected") {
  auto report = analyze(counterexample_truncated(4));
  CHECK_FALSE(report_inconsistency(report).has_value());
  report.min_rank = 2;
  CHECK(report_inconsistency(report).has_value());
}

TEST_CASE("analyze: periodic and reducible systems") {
  const RandomMapSystem cycle(StateSpace({"a", "b"}), {{"swap", Transformation({1, 0}), Rational(1)}});
  const auto report = analyze(cycle);
  CHECK(report.recurrent_images.rfind("skipped", 0) == 0);
  CHECK(report.period == std::optional<std::size_t>(2));
  CHECK_FALSE(report.mixing_time.has_value());

  const RandomMapSystem identity(StateSpace({"a", "b"}),
                                 {{"id", Transformation::identity(2), Rational(1)}});
  CHECK_THROWS_AS(analyze(identity), PreconditionError);
}

TEST_CASE("builtin names") {
  CHECK(builtin("counterexample-truncated").degree() == 5);
  CHECK(builtin("counterexample-truncated(7)").degree() == 8);
  CHECK_THROWS_AS(builtin("nope"), InputError);
  CHECK_THROWS_AS(builtin("counterexample-truncated(x)"), InputError);
}
