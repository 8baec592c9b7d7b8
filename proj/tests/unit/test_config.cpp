#include <doctest.h>

#include "grnevo/config.hpp"
#include "grnevo/network_io.hpp"

using namespace grnevo;

namespace {

std::string error_of(const std::string& text)
{
    try {
        (void)config_from_json(text, "cfg.json");
    }
    catch (const DocumentError& e) {
        return e.what();
    }
    catch (const std::exception& e) {
        return std::string("other: ") + e.what();
    }
    return "";
}

} // namespace

TEST_CASE("defaults and the paper campaign")
{
    const auto c = config_from_json("{}");
    CHECK(c.problems == std::vector<std::string>{"oscillator"});
    CHECK(c.methods == std::vector<Method>{Method::ForcedReduction});
    CHECK(c.repetitions == 1);
    CHECK(c.trial_count() == 1);
    CHECK(ExperimentConfig::full_campaign().trial_count() == 900);
}

TEST_CASE("config fields and overrides are read")
{
    const auto c = config_from_json(R"({
        "problem": ["bistable", "oscillator"],
        "method": "penalty",
        "density": ["dense", "sparse"],
        "repetitions": 2,
        "seed": 42,
        "workers": 3,
        "overrides": {"rtol": 1e-7, "max_generations": 20, "rand_to_best": "verbatim",
                      "forbidden": [{"from": [0], "to": [1, 2]}]}
    })");
    CHECK(c.problems.size() == 2);
    CHECK(c.methods == std::vector<Method>{Method::Penalty});
    CHECK(c.densities == std::vector<Density>{Density::Dense, Density::Sparse});
    CHECK(c.trial_count() == 8);
    CHECK(c.seed == 42);
    CHECK(c.workers == 3);
    CHECK(c.overrides.rtol == 1e-7);
    CHECK(c.overrides.max_generations == 20);
    CHECK(c.overrides.rand_to_best == RandToBestForm::Verbatim);
    REQUIRE(c.overrides.forbidden.has_value());
    CHECK(expand(*c.overrides.forbidden).size() == 2);
}

TEST_CASE("bad keys and values are named")
{
    CHECK(error_of(R"({"problems": "oscillator"})").find("problems") != std::string::npos);
    CHECK(error_of(R"({"overrides": {"rtoll": 1}})").find("rtoll") != std::string::npos);
    CHECK(error_of(R"({"repetitions": "three"})").find("/repetitions") != std::string::npos);
    CHECK(error_of(R"({"method": "prune"})").find("/method") != std::string::npos);
    CHECK(error_of(R"({"seed": 1,)").find("line") != std::string::npos);
    CHECK_FALSE(error_of(R"({"repetitions": 0})").empty());
}

TEST_CASE("effective config round-trips")
{
    auto c = config_from_json(R"({"problem": "dual-oscillator", "method": ["no-penalty", "penalty"],
                                  "seed": 9, "overrides": {"popsize": 30, "f_after": 1.1}})");
    const auto text = config_to_json(c);
    const auto back = config_from_json(text);
    CHECK(config_to_json(back) == text);
    CHECK(back.overrides.popsize == 30);
    CHECK(back.overrides.f_after == 1.1);
    CHECK(back.seed == 9);
}

TEST_CASE("overrides reach problems and trial settings")
{
    Overrides o;
    o.threshold = -6.0;
    o.rtol = 1e-8;
    o.duration = 120;
    o.max_generations = 7;
    o.step_tolerance = 0.2;
    o.rand_to_best = RandToBestForm::Verbatim;
    o.forbidden = std::vector<SlotBlock>{{{0}, {1}}};
    const auto p = apply_overrides(resolve_problem("oscillator"), o);
    CHECK(p.threshold == -6.0);
    CHECK(p.integrator.rtol == 1e-8);
    CHECK(p.duration == 120);
    CHECK(p.model->slot_kind(0, 1) == SlotKind::Forbidden);
    CHECK(p.model->genotype_length() == 82);
    const auto s = trial_settings(p, Method::ForcedReduction, o);
    CHECK(s.max_generations == 7);
    CHECK(s.method.step_tolerance == 0.2);
    CHECK(s.de.rand_to_best == RandToBestForm::Verbatim);
}

TEST_CASE("output directory falls back to the environment")
{
    ExperimentConfig c;
    c.output_dir = "explicit";
    CHECK(c.resolved_output_dir() == "explicit");
}
