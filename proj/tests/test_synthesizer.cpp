#include <gtest/gtest.h>

#include <sstream>

#include "scrutinator/analyzer.hpp"
#include "scrutinator/baseline.hpp"
#include "scrutinator/synthesizer.hpp"
#include "scrutinator/trace_io.hpp"
#include "support/random_manifest.hpp"
#include "support/trace_builder.hpp"

namespace scrut {
namespace {

LeakManifest tiny_manifest() {
  LeakManifest m;
  m.platform = Platform::android;
  m.profile = testing::test_android_profile();
  m.profile.apps["com.example.leaky"] =
      AppNames{"com.example.leaky", "Leaky App"};
  AppBehavior app;
  app.app_id = "com.example.leaky";
  app.accesses = {PiiKind::imei};
  app.leaks = {LeakSpec{PiiKind::imei, "tracking.ad-x.co.uk", Channel::clear,
                        {}, "", 0}};
  app.noise_transmits = 2;
  m.apps.push_back(app);
  return m;
}

TEST(Synthesizer, UnmodifiedLeakProducesAccessAndTransmit) {
  SynthesisOutput out = synthesize_trace(tiny_manifest(), 7);
  int accesses = 0, transmits = 0;
  bool saw_leak_dest = false;
  for (const Event& ev : out.trace.events) {
    if (ev.kind == EventKind::pii_access) ++accesses;
    if (ev.kind == EventKind::net_transmit) {
      ++transmits;
      if (ev.transmit().destination_host == "tracking.ad-x.co.uk")
        saw_leak_dest = true;
    }
  }
  EXPECT_EQ(accesses, 1);
  EXPECT_EQ(transmits, 3);  // leak + 2 noise
  EXPECT_TRUE(saw_leak_dest);
  ASSERT_EQ(out.truth.findings.size(), 1u);
  EXPECT_EQ(out.truth.findings[0].pii_kind, PiiKind::imei);
  EXPECT_FALSE(out.truth.findings[0].modified());
}

TEST(Synthesizer, ChainRowEmitsRealDigest) {
  LeakManifest m = tiny_manifest();
  m.apps[0].leaks = {LeakSpec{PiiKind::imei, "api.kochava.com", Channel::ssl,
                              {ModApi::hash_md5}, "", 0}};
  SynthesisOutput out = synthesize_trace(m, 7);
  const DataModifyBody* mod = nullptr;
  const NetTransmitBody* tx = nullptr;
  for (const Event& ev : out.trace.events) {
    if (ev.kind == EventKind::data_modify) mod = &ev.modify();
    if (ev.kind == EventKind::net_transmit &&
        ev.transmit().destination_host == "api.kochava.com")
      tx = &ev.transmit();
  }
  ASSERT_NE(mod, nullptr);
  ASSERT_NE(tx, nullptr);
  EXPECT_EQ(mod->api, ModApi::hash_md5);
  EXPECT_EQ(mod->input, "352066060926230");
  // Digest frozen from an independent implementation.
  EXPECT_EQ(hex_encode(mod->output), "7af1f92396144cffca86f04b6ea27201");
  // The payload carries the digest in one of its three spellings.
  bool embedded =
      tx->payload.find(mod->output) != std::string::npos ||
      tx->payload.find(hex_encode(mod->output, false)) != std::string::npos ||
      tx->payload.find(hex_encode(mod->output, true)) != std::string::npos;
  EXPECT_TRUE(embedded);
}

TEST(Synthesizer, DeterministicBytes) {
  LeakManifest m = tiny_manifest();
  SynthesisOutput a = synthesize_trace(m, 42);
  SynthesisOutput b = synthesize_trace(m, 42);
  std::ostringstream sa, sb;
  serialize_trace(a.trace, sa);
  serialize_trace(b.trace, sb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(truth_to_json(a.truth).dump(), truth_to_json(b.truth).dump());
  SynthesisOutput c = synthesize_trace(m, 43);
  std::ostringstream sc;
  serialize_trace(c.trace, sc);
  EXPECT_NE(sa.str(), sc.str());
}

TEST(Synthesizer, NoiseIsNeedleFree) {
  LeakManifest m = tiny_manifest();
  m.apps[0].leaks.clear();
  m.apps[0].noise_transmits = 30;
  SynthesisOutput out = synthesize_trace(m, 11);
  TrackerList trackers;
  AnalysisResult result = analyze_trace(out.trace, m.profile, trackers);
  for (const auto& [app, report] : result.apps)
    EXPECT_TRUE(report.findings.empty());
}

TEST(Synthesizer, ManifestInvariantViolationFatal) {
  LeakManifest m = tiny_manifest();
  m.apps[0].accesses.clear();  // leak of unaccessed kind
  EXPECT_THROW(synthesize_trace(m, 1), InputError);
}

AnalyzerConfig test_config() {
  AnalyzerConfig cfg;
  cfg.min_needle_len = 6;
  return cfg;
}

void expect_closed_loop(Platform platform, std::uint64_t seed, bool chains,
                        bool pasteboards) {
  testing::RandomManifestParams params;
  params.apps = 12;
  params.max_chain_depth = chains ? 3 : 0;
  params.min_chain_depth = chains ? 1 : 0;
  params.pasteboards = pasteboards;
  testing::RandomFixture fx =
      testing::make_random_manifest(platform, seed, params);
  SynthesisOutput out = synthesize_trace(fx.manifest, seed * 31 + 1);
  AnalysisResult analysis =
      analyze_trace(out.trace, fx.manifest.profile, fx.trackers, test_config());

  // Finding set equals ground truth exactly.
  std::set<FindingKey> actual = finding_keys(analysis);
  std::set<FindingKey> expected;
  for (const TruthFinding& f : out.truth.findings)
    expected.insert(FindingKey{f.app_id, f.pii_kind, f.destination_host,
                               f.channel, f.modified(), f.chain});
  EXPECT_EQ(actual, expected) << "platform " << to_string(platform) << " seed "
                              << seed;

  // Aggregates equal the manifest-derived expectation.
  AggregateStats from_analysis = aggregate_stats(analysis);
  AggregateStats from_manifest = expected_stats(fx.manifest, fx.trackers);
  EXPECT_EQ(from_analysis, from_manifest)
      << "platform " << to_string(platform) << " seed " << seed;
}

TEST(ClosedLoop, AndroidUnmodified) { expect_closed_loop(Platform::android, 1, false, false); }
TEST(ClosedLoop, AndroidChained) { expect_closed_loop(Platform::android, 2, true, false); }
TEST(ClosedLoop, IosChainedWithPasteboards) {
  expect_closed_loop(Platform::ios, 3, true, true);
}
TEST(ClosedLoop, SeveralRandomPairs) {
  for (std::uint64_t seed = 10; seed < 16; ++seed)
    expect_closed_loop(seed % 2 ? Platform::android : Platform::ios, seed, true,
                       true);
}

TEST(Synthesizer, TraceSurvivesSerializationRoundTrip) {
  testing::RandomFixture fx =
      testing::make_random_manifest(Platform::android, 77);
  SynthesisOutput out = synthesize_trace(fx.manifest, 78);
  std::ostringstream os;
  serialize_trace(out.trace, os);
  std::istringstream is(os.str());
  EventTrace parsed = parse_trace(is);
  EXPECT_EQ(parsed.events, out.trace.events);
  EXPECT_TRUE(parsed.warnings.empty());
}

TEST(Baseline, SubsetOfAnalyzerOnSynthesizedTraces) {
  for (std::uint64_t seed = 50; seed < 55; ++seed) {
    testing::RandomManifestParams params;
    params.apps = 10;
    params.max_chain_depth = 2;
    params.min_chain_depth = 1;
    params.chained_percent = 40;
    testing::RandomFixture fx = testing::make_random_manifest(
        seed % 2 ? Platform::ios : Platform::android, seed, params);
    SynthesisOutput out = synthesize_trace(fx.manifest, seed);
    AnalysisResult analysis = analyze_trace(out.trace, fx.manifest.profile,
                                            fx.trackers, test_config());
    AnalysisResult baseline = analyze_baseline(
        out.trace, user_known_subset(fx.manifest.profile), fx.trackers,
        test_config());
    ComparisonReport cmp = compare_detectors(analysis, baseline);
    EXPECT_TRUE(cmp.baseline_only.empty()) << "seed " << seed;
    EXPECT_TRUE(cmp.unexplained.empty()) << "seed " << seed;
    std::size_t categorized = 0;
    for (const auto& [cat, count] : cmp.miss_counts) categorized += count;
    EXPECT_EQ(categorized, cmp.analyzer_only.size()) << "seed " << seed;
  }
}

TEST(ExpectedStats, EmptyManifestAllZero) {
  LeakManifest m;
  m.platform = Platform::android;
  m.profile = testing::test_android_profile();
  TrackerList trackers;
  AggregateStats stats = expected_stats(m, trackers);
  EXPECT_EQ(stats.total_apps, 0u);
  EXPECT_TRUE(stats.apps_per_identifier.empty());
  EXPECT_EQ(stats.apps_with_any_system_id, 0u);
  EXPECT_EQ(stats.pasteboard_creator_apps, 0u);
  EXPECT_EQ(stats.reset.tracking_apps, 0u);
}

}  // namespace
}  // namespace scrut
