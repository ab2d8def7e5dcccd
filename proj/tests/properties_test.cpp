#include <gtest/gtest.h>

#include "support/properties.hpp"

namespace xri::testing {
namespace {

void expect_holds(const PropertyResult& r) {
  EXPECT_GT(r.cases, 0u);
  EXPECT_EQ(r.violations, 0u) << r.first_failure;
}

TEST(Properties, ZoneMembershipMatchesOracle) { expect_holds(check_zone_oracle(11, 2000)); }
TEST(Properties, ZoneEntriesAndExitsBalance) { expect_holds(check_zone_event_balance(12, 500)); }
TEST(Properties, TaxonomyMatchesOracle) { expect_holds(check_taxonomy(13, 2000)); }
TEST(Properties, TopicCodecIsInjectiveRoundTrip) { expect_holds(check_topic_laws(14, 2000)); }
TEST(Properties, EnvelopeCodecIsInjectiveRoundTrip) { expect_holds(check_envelope_laws(15, 2000)); }
TEST(Properties, DeviceEventsMirrorStateChanges) { expect_holds(check_device_bisimulation(16, 500)); }
TEST(Properties, ProjectorNeverStartsInBrightRoom) { expect_holds(check_meeting_safety(17, 200)); }
TEST(Properties, RelaxAgentIgnoresHistory) { expect_holds(check_relax_reflex(18, 200)); }
TEST(Properties, StudyTimerFiresOnFirstEligibleTick) { expect_holds(check_timer_exactness(19, 50)); }
TEST(Properties, AgentStepsArePure) { expect_holds(check_agent_purity(20, 1000)); }
TEST(Properties, GuideModelShallow) { expect_holds(check_guide_model(8)); }
TEST(Properties, BundledScenariosAreDeterministic) { expect_holds(check_determinism(2)); }

}  // namespace
}  // namespace xri::testing
