#include <gtest/gtest.h>

#include <sstream>

#include "scrutinator/rng.hpp"
#include "scrutinator/trace_io.hpp"

namespace scrut {
namespace {

std::string access_line(std::int64_t seq, std::int64_t ts,
                        const std::string& app, const std::string& kind,
                        const std::string& value_hex) {
  return "{\"seq\":" + std::to_string(seq) + ",\"ts_ms\":" + std::to_string(ts) +
         ",\"platform\":\"android\",\"app_id\":\"" + app +
         "\",\"kind\":\"pii_access\",\"body\":{\"pii_kind\":\"" + kind +
         "\",\"value\":\"" + value_hex + "\"}}";
}

TEST(ParseTrace, EmptyStream) {
  std::istringstream in("");
  EventTrace t = parse_trace(in);
  EXPECT_TRUE(t.events.empty());
  EXPECT_TRUE(t.warnings.empty());
}

TEST(ParseTrace, SingleEventRoundTripsBitExact) {
  std::string line = access_line(1, 5, "com.example.app", "imei",
                                 "333532303636303630393236323330");
  std::istringstream in(line + "\n");
  EventTrace t = parse_trace(in);
  ASSERT_EQ(t.events.size(), 1u);
  const Event& ev = t.events[0];
  EXPECT_EQ(ev.seq, 1);
  EXPECT_EQ(ev.ts_ms, 5);
  EXPECT_EQ(ev.app_id, "com.example.app");
  EXPECT_EQ(ev.access().pii_kind, PiiKind::imei);
  EXPECT_EQ(ev.access().value, "352066060926230");
  EXPECT_EQ(serialize_event(ev), line);
}

TEST(ParseTrace, UnknownKindSkippedAndCounted) {
  std::ostringstream body;
  body << access_line(1, 1, "a", "imei", "333532303636303630393236323330") << "\n";
  body << "{\"seq\":2,\"ts_ms\":2,\"platform\":\"android\",\"app_id\":\"a\","
          "\"kind\":\"bogus\",\"body\":{}}\n";
  body << access_line(3, 3, "a", "imei", "333532303636303630393236323330") << "\n";
  std::istringstream in(body.str());
  EventTrace t = parse_trace(in);
  EXPECT_EQ(t.events.size(), 2u);
  EXPECT_EQ(t.warnings.at("unknown_kind"), 1u);
}

TEST(ParseTrace, CommentsAndBlankLinesIgnored) {
  std::istringstream in("# header\n\n" +
                        access_line(1, 1, "a", "imei",
                                    "333532303636303630393236323330") +
                        "\n# trailer\n");
  EventTrace t = parse_trace(in);
  EXPECT_EQ(t.events.size(), 1u);
  EXPECT_TRUE(t.warnings.empty());
}

TEST(ParseTrace, DuplicateSeqIsFatal) {
  std::string l1 = access_line(7, 1, "a", "imei", "333532303636303630393236323330");
  std::string l2 = access_line(7, 2, "a", "imei", "333532303636303630393236323330");
  std::istringstream in(l1 + "\n" + l2 + "\n");
  EXPECT_THROW(parse_trace(in), InputError);
}

TEST(ParseTrace, SortsByTimestampThenSeq) {
  std::string l1 = access_line(2, 100, "a", "imei", "333532303636303630393236323330");
  std::string l2 = access_line(1, 100, "a", "imei", "333532303636303630393236323330");
  std::string l3 = access_line(3, 50, "a", "imei", "333532303636303630393236323330");
  std::istringstream in(l1 + "\n" + l2 + "\n" + l3 + "\n");
  EventTrace t = parse_trace(in);
  ASSERT_EQ(t.events.size(), 3u);
  EXPECT_EQ(t.events[0].seq, 3);
  EXPECT_EQ(t.events[1].seq, 1);
  EXPECT_EQ(t.events[2].seq, 2);
}

TEST(ParseTrace, HashOutputLengthEnforced) {
  // md5 output must be 16 bytes; 3 bytes is a malformed body.
  std::string bad =
      "{\"seq\":1,\"ts_ms\":1,\"platform\":\"android\",\"app_id\":\"a\","
      "\"kind\":\"data_modify\",\"body\":{\"api\":\"hash_md5\","
      "\"input\":\"616263\",\"output\":\"616263\"}}";
  std::istringstream in(bad + "\n");
  EventTrace t = parse_trace(in);
  EXPECT_TRUE(t.events.empty());
  EXPECT_EQ(t.warnings.at("invalid_body"), 1u);
}

TEST(PartitionByApp, GroupsAndPreservesOrder) {
  std::istringstream in(
      access_line(1, 1, "app.a", "imei", "333532303636303630393236323330") + "\n" +
      access_line(2, 2, "app.b", "imei", "333532303636303630393236323330") + "\n" +
      access_line(3, 3, "app.a", "imei", "333532303636303630393236323330") + "\n");
  EventTrace t = parse_trace(in);
  auto parts = partition_by_app(t);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts.at("app.a").size(), 2u);
  EXPECT_EQ(parts.at("app.b").size(), 1u);
  EXPECT_EQ(parts.at("app.a")[0].seq, 1);
  EXPECT_EQ(parts.at("app.a")[1].seq, 3);
  std::size_t total = 0;
  for (const auto& [id, events] : parts) total += events.size();
  EXPECT_EQ(total, t.events.size());
}

TEST(PartitionByApp, EmptyTrace) {
  EventTrace t;
  EXPECT_TRUE(partition_by_app(t).empty());
}

// Fuzz: bad lines injected at random positions never lose surrounding events.
TEST(ParseTrace, BadLinesNeverDropNeighbors) {
  SplitMix64 rng(42);
  for (int round = 0; round < 50; ++round) {
    int n = 1 + static_cast<int>(rng.below(20));
    std::vector<std::string> lines;
    int expected = 0;
    for (int i = 0; i < n; ++i) {
      if (rng.below(3) == 0) {
        switch (rng.below(3)) {
          case 0: lines.push_back("this is not json"); break;
          case 1:
            lines.push_back(
                "{\"seq\":" + std::to_string(1000 + i) +
                ",\"ts_ms\":1,\"platform\":\"android\",\"app_id\":\"a\","
                "\"kind\":\"mystery\",\"body\":{}}");
            break;
          default:
            lines.push_back(
                "{\"seq\":" + std::to_string(1000 + i) +
                ",\"ts_ms\":1,\"platform\":\"android\",\"app_id\":\"\","
                "\"kind\":\"pii_access\",\"body\":{\"pii_kind\":\"imei\","
                "\"value\":\"61\"}}");
        }
      } else {
        lines.push_back(access_line(i + 1, i, "app", "imei",
                                    "333532303636303630393236323330"));
        ++expected;
      }
    }
    std::string joined;
    for (const auto& l : lines) joined += l + "\n";
    std::istringstream in(joined);
    EventTrace t = parse_trace(in);
    EXPECT_EQ(static_cast<int>(t.events.size()), expected);
  }
}

// Round-trip: serialize(parse(x)) reproduces the canonical bytes, and
// partition + merge reproduces the event list.
TEST(TraceIo, SerializeParseRoundTrip) {
  std::ostringstream source;
  source << access_line(1, 10, "app.a", "imei", "333532303636303630393236323330")
         << "\n";
  source << "{\"seq\":2,\"ts_ms\":11,\"platform\":\"android\",\"app_id\":\"app.a\","
            "\"kind\":\"data_modify\",\"body\":{\"api\":\"encrypt_opaque\","
            "\"input\":\"616263\",\"output\":\"0102ff\"}}\n";
  source << "{\"seq\":3,\"ts_ms\":12,\"platform\":\"android\",\"app_id\":\"app.b\","
            "\"kind\":\"net_transmit\",\"body\":{\"destination_host\":"
            "\"tracking.ad-x.co.uk\",\"channel\":\"ssl\",\"payload\":\"6162\","
            "\"user_agent\":\"app.b/1.0\"}}\n";
  source << "{\"seq\":4,\"ts_ms\":13,\"platform\":\"android\",\"app_id\":\"app.b\","
            "\"kind\":\"pasteboard_write\",\"body\":{\"name\":\"com.x.pb\","
            "\"pb_type\":\"text\",\"value\":\"7575\"}}\n";
  std::string canonical = source.str();
  std::istringstream in(canonical);
  EventTrace t = parse_trace(in);
  std::ostringstream out;
  serialize_trace(t, out);
  EXPECT_EQ(out.str(), canonical);

  auto parts = partition_by_app(t);
  std::vector<Event> merged;
  for (const auto& [id, events] : parts)
    merged.insert(merged.end(), events.begin(), events.end());
  std::sort(merged.begin(), merged.end(), [](const Event& a, const Event& b) {
    return std::tie(a.ts_ms, a.seq) < std::tie(b.ts_ms, b.seq);
  });
  EXPECT_EQ(merged, t.events);
}

}  // namespace
}  // namespace scrut
