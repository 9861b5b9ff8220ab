#include <gtest/gtest.h>

#include "scrutinator/baseline.hpp"
#include "scrutinator/digest.hpp"
#include "support/trace_builder.hpp"

namespace scrut {
namespace {

using testing::TraceBuilder;

TrackerList trackers_fixture() {
  TrackerList t;
  t.add("ad-x.co.uk");
  t.add("appsflyer.com");
  return t;
}

TEST(Baseline, RejectsSystemGeneratedKinds) {
  DeviceProfile profile = testing::test_android_profile();
  EXPECT_THROW(analyze_baseline(EventTrace{}, profile, trackers_fixture()),
               InputError);
  EXPECT_NO_THROW(analyze_baseline(EventTrace{}, user_known_subset(profile),
                                   trackers_fixture()));
}

TEST(Baseline, SeesClearUnmodifiedUserKnownValues) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::imei,
                                 "352066060926230")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear, "id=352066060926230")
                         .build();
  AnalysisResult analysis = analyze_trace(trace, profile, trackers_fixture());
  AnalysisResult baseline = analyze_baseline(trace, user_known_subset(profile),
                                             trackers_fixture());
  EXPECT_EQ(finding_keys(analysis).size(), 1u);
  EXPECT_EQ(finding_keys(baseline), finding_keys(analysis));
}

TEST(Baseline, BlindToSsl) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::imei,
                                 "352066060926230")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::ssl, "id=352066060926230")
                         .build();
  AnalysisResult analysis = analyze_trace(trace, profile, trackers_fixture());
  AnalysisResult baseline = analyze_baseline(trace, user_known_subset(profile),
                                             trackers_fixture());
  EXPECT_EQ(finding_keys(analysis).size(), 1u);
  EXPECT_TRUE(finding_keys(baseline).empty());
  ComparisonReport cmp = compare_detectors(analysis, baseline);
  EXPECT_EQ(cmp.miss_counts.at(MissCategory::ssl), 1u);
  EXPECT_TRUE(cmp.unexplained.empty());
}

TEST(Baseline, BlindToModifiedValues) {
  DeviceProfile profile = testing::test_android_profile();
  Bytes mac = "a0:b1:c2:d3:e4:f5";
  Bytes digest = compute_digest(HashAlgo::md5, mac);
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::wifi_mac, mac)
                         .modify("com.example.game", ModApi::hash_md5, mac, digest)
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear, "h=" + hex_encode(digest))
                         .build();
  AnalysisResult analysis = analyze_trace(trace, profile, trackers_fixture());
  AnalysisResult baseline = analyze_baseline(trace, user_known_subset(profile),
                                             trackers_fixture());
  EXPECT_EQ(finding_keys(analysis).size(), 1u);
  EXPECT_TRUE(finding_keys(baseline).empty());
  ComparisonReport cmp = compare_detectors(analysis, baseline);
  EXPECT_EQ(cmp.miss_counts.at(MissCategory::modified), 1u);
}

TEST(Baseline, BlindToSystemGeneratedValues) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::android_id,
                                 "9774d56d682e549c")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear, "aid=9774d56d682e549c")
                         .build();
  AnalysisResult analysis = analyze_trace(trace, profile, trackers_fixture());
  AnalysisResult baseline = analyze_baseline(trace, user_known_subset(profile),
                                             trackers_fixture());
  EXPECT_EQ(finding_keys(analysis).size(), 1u);
  EXPECT_TRUE(finding_keys(baseline).empty());
  ComparisonReport cmp = compare_detectors(analysis, baseline);
  EXPECT_EQ(cmp.miss_counts.at(MissCategory::system_value), 1u);
}

TEST(Baseline, RemovingSslEventsLeavesBaselineUnchanged) {
  DeviceProfile profile = testing::test_android_profile();
  TraceBuilder b;
  b.access("com.example.game", PiiKind::imei, "352066060926230");
  b.transmit("com.example.game", "ad-x.co.uk", Channel::clear,
             "id=352066060926230");
  b.transmit("com.example.game", "appsflyer.com", Channel::ssl,
             "id=352066060926230");
  EventTrace with_ssl = b.build();
  EventTrace without_ssl = with_ssl;
  without_ssl.events.erase(
      std::remove_if(without_ssl.events.begin(), without_ssl.events.end(),
                     [](const Event& ev) {
                       return ev.kind == EventKind::net_transmit &&
                              ev.transmit().channel == Channel::ssl;
                     }),
      without_ssl.events.end());
  AnalysisResult a = analyze_baseline(with_ssl, user_known_subset(profile),
                                      trackers_fixture());
  AnalysisResult b2 = analyze_baseline(without_ssl, user_known_subset(profile),
                                       trackers_fixture());
  EXPECT_EQ(finding_keys(a), finding_keys(b2));
}

TEST(Compare, IdenticalWhenRestrictionVacuous) {
  // Every leak is clear, unmodified and user-known: the two detectors agree.
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::imei,
                                 "352066060926230")
                         .access("com.example.game", PiiKind::phone_no,
                                 "+33612345678")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear,
                                   "id=352066060926230&tel=%2B33612345678")
                         .build();
  AnalysisResult analysis = analyze_trace(trace, profile, trackers_fixture());
  AnalysisResult baseline = analyze_baseline(trace, user_known_subset(profile),
                                             trackers_fixture());
  ComparisonReport cmp = compare_detectors(analysis, baseline);
  EXPECT_TRUE(cmp.analyzer_only.empty());
  EXPECT_TRUE(cmp.baseline_only.empty());
  EXPECT_EQ(cmp.both.size(), 2u);
}

}  // namespace
}  // namespace scrut
