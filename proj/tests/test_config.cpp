#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kpzlab/config.hpp"

using namespace kpzlab;

TEST_CASE("minimal limit-cdf config gets the documented defaults") {
    const auto c = parse_config(json{{"scenario", "limit-cdf"}, {"process", "airy2"}});
    CHECK(c.scenario == Scenario::LimitCdf);
    CHECK(c.nodes == 40);
    CHECK(c.cutoff == doctest::Approx(10.0));
    CHECK(c.s_step == doctest::Approx(0.1));
}

TEST_CASE("unknown keys are rejected (fail-closed)") {
    CHECK_THROWS_WITH_AS((void)parse_config(json{{"scenario", "verify"}, {"bogus", 1}}),
                         doctest::Contains("unknown config key 'bogus'"), ConfigError);
}

TEST_CASE("out-of-range parameters are rejected with the offending key named") {
    CHECK_THROWS_WITH_AS(
        (void)parse_config(json{{"scenario", "simulate-lpp"}, {"eta", 1.5}, {"x", 3}, {"y", 3}}),
        doctest::Contains("eta"), ConfigError);
    CHECK_THROWS_AS((void)parse_config(json{{"scenario", "simulate-lpp"}, {"eta", 0.5}}),
                    ConfigError);
    CHECK_THROWS_AS((void)parse_config(json{{"scenario", "nonsense"}}), ConfigError);
    CHECK_THROWS_AS((void)parse_config(json{{"scenario", "limit-cdf"}, {"process", "weird"}}),
                    ConfigError);
    CHECK_THROWS_AS((void)parse_config(json{{"scenario", "verify"}, {"only", {0}}}), ConfigError);
}

TEST_CASE("verify scenario with no overrides runs the whole registry") {
    const auto c = parse_config(json{{"scenario", "verify"}});
    CHECK(c.scenario == Scenario::Verify);
    CHECK(c.only.empty());
}

TEST_CASE("flag overrides beat file values key-by-key") {
    const json file{{"scenario", "schur-cdf"}, {"eta", 0.5}, {"N", 2}, {"samples", 10}};
    const json flags{{"eta", 0.6}, {"seed", 9}};
    const auto c = parse_config(merge_config(file, flags));
    CHECK(c.eta == doctest::Approx(0.6));
    CHECK(c.schur_N == 2);
    CHECK(c.seed == 9);
    CHECK(c.samples == 10);
}

TEST_CASE("schur-cdf requires eta") {
    CHECK_THROWS_AS((void)parse_config(json{{"scenario", "schur-cdf"}}), ConfigError);
}
