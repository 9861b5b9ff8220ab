#include <gtest/gtest.h>

#include "scrutinator/analyzer.hpp"
#include "scrutinator/digest.hpp"
#include "support/trace_builder.hpp"

namespace scrut {
namespace {

using testing::TraceBuilder;

TrackerList trackers_fixture() {
  TrackerList t;
  t.add("ad-x.co.uk");
  t.add("appsflyer.com");
  t.add("flurry.com");
  return t;
}

const LeakFinding* find_finding(const AppReport& report, PiiKind kind,
                                const std::string& host) {
  for (const LeakFinding& f : report.findings)
    if (f.pii_kind == kind && f.destination_host == host) return &f;
  return nullptr;
}

TEST(AnalyzeApp, UnmodifiedImeiOverClear) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::imei,
                                 "352066060926230")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear,
                                   "id=352066060926230&x=1")
                         .build();
  AnalysisResult result =
      analyze_trace(trace, profile, trackers_fixture());
  const AppReport& report = result.apps.at("com.example.game");
  EXPECT_TRUE(report.accessed.count(PiiKind::imei));
  const LeakFinding* f = find_finding(report, PiiKind::imei, "ad-x.co.uk");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->channel, Channel::clear);
  EXPECT_FALSE(f->modified);
  EXPECT_TRUE(f->chain.empty());
  EXPECT_EQ(f->party, PartyClass::third_party);
  EXPECT_EQ(f->evidence.offset, 3u);
}

TEST(AnalyzeApp, AccessWithoutTransmitYieldsNoFindings) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::imei,
                                 "352066060926230")
                         .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  const AppReport& report = result.apps.at("com.example.game");
  EXPECT_TRUE(report.accessed.count(PiiKind::imei));
  EXPECT_TRUE(report.findings.empty());
}

TEST(AnalyzeApp, HashedMacOverSslResolvedThroughChain) {
  DeviceProfile profile = testing::test_android_profile();
  Bytes mac = "a0:b1:c2:d3:e4:f5";
  Bytes digest = compute_digest(HashAlgo::md5, mac);
  EventTrace trace =
      TraceBuilder()
          .access("com.example.game", PiiKind::wifi_mac, mac)
          .modify("com.example.game", ModApi::hash_md5, mac, digest)
          .transmit("com.example.game", "appsflyer.com", Channel::ssl,
                    "h=" + hex_encode(digest) + "&z=9")
          .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  const AppReport& report = result.apps.at("com.example.game");
  EXPECT_TRUE(report.fed_to_modification.count(PiiKind::wifi_mac));
  const LeakFinding* f = find_finding(report, PiiKind::wifi_mac, "appsflyer.com");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->channel, Channel::ssl);
  EXPECT_TRUE(f->modified);
  EXPECT_EQ(f->chain, std::vector<ModApi>{ModApi::hash_md5});
  EXPECT_EQ(f->party, PartyClass::third_party);
}

TEST(AnalyzeApp, FindingsRequireAccess) {
  // The IMEI flows through a payload, but the app never accessed it: the
  // value cannot have come from this app's hooks.
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear, "id=352066060926230")
                         .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  EXPECT_TRUE(result.apps.at("com.example.game").findings.empty());
}

TEST(AnalyzeTrace, PerAppScoping) {
  // Both apps access distinct kinds; app B transmits a payload carrying the
  // value only app A accessed. No cross-app needle bleed.
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace =
      TraceBuilder()
          .access("com.example.game", PiiKind::imei, "352066060926230")
          .access("com.example.news", PiiKind::android_id, "9774d56d682e549c")
          .transmit("com.example.news", "ad-x.co.uk", Channel::clear,
                    "id=352066060926230")
          .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  EXPECT_TRUE(result.apps.at("com.example.news").findings.empty());
  EXPECT_TRUE(result.apps.at("com.example.game").findings.empty());
}

TEST(AnalyzeTrace, PlatformMismatchFatal) {
  DeviceProfile profile = testing::test_ios_profile();
  EventTrace trace = TraceBuilder(Platform::android)
                         .access("a", PiiKind::imei, "352066060926230")
                         .build();
  EXPECT_THROW(analyze_trace(trace, profile, trackers_fixture()), InputError);
}

TEST(AnalyzeTrace, EmptyTraceEmptyResult) {
  DeviceProfile profile = testing::test_android_profile();
  AnalysisResult result =
      analyze_trace(EventTrace{}, profile, trackers_fixture());
  EXPECT_TRUE(result.apps.empty());
}

TEST(AnalyzeApp, UserAgentCarriesPackageName) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .transmit("com.badoo.mobile", "flurry.com",
                                   Channel::clear, "ev=ping",
                                   "com.badoo.mobile/5.1")
                         .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  const AppReport& report = result.apps.at("com.badoo.mobile");
  const LeakFinding* f =
      find_finding(report, PiiKind::installed_apps, "flurry.com");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->evidence.site, MatchSite::user_agent);
  ASSERT_EQ(f->matched_values.size(), 1u);
  EXPECT_EQ(f->matched_values[0], "com.badoo.mobile");
}

TEST(AnalyzeApp, EventCarriedValueBecomesNeedle) {
  // A location reading unknown to the profile is still detected because the
  // access event carried it.
  DeviceProfile profile = testing::test_android_profile();
  profile.values.erase(PiiKind::location);
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::location,
                                 "47.2184,-1.5536")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear, "ll=47.2184,-1.5536")
                         .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  const LeakFinding* f = find_finding(result.apps.at("com.example.game"),
                                      PiiKind::location, "ad-x.co.uk");
  ASSERT_NE(f, nullptr);
  EXPECT_FALSE(f->modified);
}

TEST(AnalyzeApp, FindingsDeduplicatedAcrossTransmits) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::imei,
                                 "352066060926230")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear, "a=352066060926230")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear, "b=352066060926230&c=1")
                         .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  const AppReport& report = result.apps.at("com.example.game");
  EXPECT_EQ(report.findings.size(), 1u);
  // Evidence points at the first sighting.
  EXPECT_EQ(report.findings[0].evidence.event_seq, 2);
}

TEST(AnalyzeApp, PercentEncodedMacDetected) {
  DeviceProfile profile = testing::test_android_profile();
  EventTrace trace = TraceBuilder()
                         .access("com.example.game", PiiKind::wifi_mac,
                                 "a0:b1:c2:d3:e4:f5")
                         .transmit("com.example.game", "ad-x.co.uk",
                                   Channel::clear,
                                   "mac=a0%3Ab1%3Ac2%3Ad3%3Ae4%3Af5")
                         .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  const LeakFinding* f = find_finding(result.apps.at("com.example.game"),
                                      PiiKind::wifi_mac, "ad-x.co.uk");
  ASSERT_NE(f, nullptr);
  EXPECT_EQ(f->evidence.site, MatchSite::payload_decoded);
}

TEST(AnalyzeTrace, DeterministicAcrossWorkerCounts) {
  DeviceProfile profile = testing::test_android_profile();
  TraceBuilder b;
  for (int i = 0; i < 12; ++i) {
    std::string app = "com.load.app" + std::to_string(i);
    profile.apps[app] = AppNames{app, "Load App " + std::to_string(i)};
    b.access(app, PiiKind::imei, "352066060926230");
    b.transmit(app, "ad-x.co.uk", Channel::clear, "id=352066060926230");
  }
  EventTrace trace = b.build();
  AnalyzerConfig one;
  one.workers = 1;
  AnalyzerConfig four;
  four.workers = 4;
  AnalysisResult r1 = analyze_trace(trace, profile, trackers_fixture(), one);
  AnalysisResult r4 = analyze_trace(trace, profile, trackers_fixture(), four);
  EXPECT_EQ(r1, r4);
  EXPECT_EQ(analysis_to_json(r1).dump(), analysis_to_json(r4).dump());
}

TEST(AnalysisJson, RoundTrip) {
  DeviceProfile profile = testing::test_android_profile();
  Bytes mac = "a0:b1:c2:d3:e4:f5";
  Bytes digest = compute_digest(HashAlgo::md5, mac);
  EventTrace trace =
      TraceBuilder()
          .access("com.example.game", PiiKind::wifi_mac, mac)
          .modify("com.example.game", ModApi::hash_md5, mac, digest)
          .transmit("com.example.game", "appsflyer.com", Channel::ssl,
                    "h=" + hex_encode(digest))
          .pb_write("com.example.game", "com.x.pb", "text", "pbvalue-123456")
          .build();
  AnalysisResult result = analyze_trace(trace, profile, trackers_fixture());
  AnalysisResult round = analysis_from_json(
      nlohmann::json::parse(analysis_to_json(result).dump()));
  // Counters are envelope metadata; core content must survive.
  round.counters = result.counters;
  EXPECT_EQ(result, round);
}

}  // namespace
}  // namespace scrut
