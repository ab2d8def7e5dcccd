#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "xri/core/error.hpp"
#include "xri/scenario/runtime.hpp"
#include "xri/scenario/trace.hpp"

namespace xri::scenario {
namespace {

using nlohmann::json;

std::vector<json> golden() {
  return parse_trace(testing::read_file(testing::source_path("data/golden/paper_walkthrough.trace")));
}

SpaceLayout golden_layout() { return testing::lab_layout(30000); }

TEST(DiffTraces, Identity) {
  const auto t = golden();
  EXPECT_EQ(diff_traces(t, t), std::nullopt);
  EXPECT_EQ(diff_traces({}, {}), std::nullopt);
}

TEST(DiffTraces, CommandsDifferAtEntryFive) {
  auto a = golden();
  auto b = a;
  ASSERT_EQ(b[5].at("seq"), 5);
  ASSERT_EQ(b[5]["commands"][0]["type"], "wave");
  b[5]["commands"][0]["type"] = "show_menu";
  const auto d = diff_traces(a, b);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->seq, 5u);
  EXPECT_EQ(d->path, "commands");
  EXPECT_EQ(d->pointer, "/5/commands/0/type");
}

TEST(DiffTraces, LengthMismatch) {
  const auto one = std::vector<json>{golden().front()};
  const auto d = diff_traces({}, one);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->seq, 0u);
  EXPECT_EQ(d->path, "<length>");
  const auto d2 = diff_traces(golden(), one);
  ASSERT_TRUE(d2);
  EXPECT_EQ(d2->seq, 1u);
  EXPECT_EQ(d2->path, "<length>");
}

TEST(DiffTraces, NumbersCompareByValue) {
  std::vector<json> a{json::parse(R"({"seq":0,"x":5})")};
  std::vector<json> b{json::parse(R"({"seq":0,"x":5.0})")};
  EXPECT_EQ(diff_traces(a, b), std::nullopt);
  b[0]["x"] = 5.5;
  EXPECT_EQ(diff_traces(a, b)->path, "x");
}

TEST(DiffTraces, FirstDifferenceWins) {
  auto a = golden();
  auto b = a;
  b[3]["agents"]["guide"]["after"]["phase"] = "idle";
  b[9]["commands"] = json::array();
  const auto d = diff_traces(a, b);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->seq, 3u);
  EXPECT_EQ(d->path, "agents");
}

TEST(ParseTrace, ReportsLine) {
  try {
    parse_trace("{\"seq\":0}\n\n{broken\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_EQ(e.detail(), "line 3");
  }
}

TEST(ValidateTrace, GoldenIsLicensed) { EXPECT_TRUE(validate_trace(golden(), golden_layout()).empty()); }

TEST(ValidateTrace, EveryBundledScenarioIsLicensed) {
  const auto layout = testing::lab_layout();
  for (const char* name : {"paper_walkthrough", "meeting_lights", "study_interrupted"}) {
    const auto script =
        load_script(testing::read_file(testing::source_path(std::string("data/scenarios/") + name + ".scenario")), layout);
    const auto effective = apply_overrides(layout, script.overrides);
    const auto trace = parse_trace(trace_to_jsonl(run_scenario(script, effective)));
    EXPECT_TRUE(validate_trace(trace, effective).empty()) << name;
  }
}

TEST(ValidateTrace, UnlicensedCommandIsCaught) {
  auto t = golden();
  // A projector command in an entry whose transitions never asked for it.
  t[0]["commands"].push_back(
      json::parse(R"({"issuer":"meeting","on":true,"target":"projector1","target_kind":"device","type":"set_power"})"));
  const auto issues = validate_trace(t, golden_layout());
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues[0].seq, 0u);
}

TEST(ValidateTrace, TamperedStateAndSeq) {
  auto t = golden();
  t[5]["agents"]["guide"]["after"]["phase"] = "welcoming";
  EXPECT_FALSE(validate_trace(t, golden_layout()).empty());

  auto gap = golden();
  gap.erase(gap.begin() + 2);
  EXPECT_FALSE(validate_trace(gap, golden_layout()).empty());

  auto emitted = golden();
  for (auto& e : emitted) {
    if (!e["emitted_events"].empty()) {
      e["emitted_events"] = json::array();
      break;
    }
  }
  EXPECT_FALSE(validate_trace(emitted, golden_layout()).empty());
}

}  // namespace
}  // namespace xri::scenario
