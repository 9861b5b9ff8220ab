#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "scrutinator/bytes.hpp"
#include "scrutinator/digest.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/events.hpp"
#include "scrutinator/manifest.hpp"
#include "scrutinator/matcher.hpp"
#include "scrutinator/needles.hpp"
#include "scrutinator/rng.hpp"
#include "scrutinator/stats.hpp"
#include "scrutinator/trackers.hpp"
#include "scrutinator/truth.hpp"

namespace scrut {

struct SynthesisConfig {
  // Needle pool granularity for the filler non-collision guarantee. Must not
  // exceed the smallest min-needle-length any analysis run will use.
  std::size_t collision_min_len = 3;
};

struct SynthesisOutput {
  EventTrace trace;
  GroundTruth truth;
};

namespace synth {

// Stand-in for opaque encryption hooks: a keyed byte rotation plus XOR
// stream. The analyzer only ever sees recorded input/output pairs, so the
// transform just needs to be deterministic and length-preserving.
inline Bytes opaque_encrypt(const Bytes& input, std::uint64_t key) {
  SplitMix64 rng(key);
  Bytes out(input.size(), '\0');
  std::size_t rot = input.size() > 1 ? rng.below(input.size()) : 0;
  for (std::size_t i = 0; i < input.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(input[(i + rot) % input.size()]);
    out[i] = static_cast<char>(c ^ static_cast<unsigned char>(rng.next()));
  }
  return out;
}

inline Bytes apply_mod_api(ModApi api, const Bytes& input, std::uint64_t key) {
  switch (api) {
    case ModApi::hash_md5: return compute_digest(HashAlgo::md5, input);
    case ModApi::hash_sha1: return compute_digest(HashAlgo::sha1, input);
    case ModApi::hash_sha256: return compute_digest(HashAlgo::sha256, input);
    case ModApi::encrypt_opaque: return opaque_encrypt(input, key);
  }
  throw InternalError("unknown modification api");
}

inline constexpr char kFillerAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";

// Filler never contains '%', uppercase letters, or separators, which keeps
// accidental needle collisions close to impossible; a pool scan still
// verifies every payload.
inline std::string filler(SplitMix64& rng, std::size_t min_len,
                          std::size_t max_len) {
  std::size_t len = rng.range(min_len, max_len + 1);
  std::string out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back(kFillerAlphabet[rng.below(sizeof(kFillerAlphabet) - 1)]);
  return out;
}

inline std::string percent_encode_aggressive(const Bytes& value) {
  std::string out;
  for (unsigned char c : value) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHexDigitsUpper[c >> 4]);
      out.push_back(kHexDigitsUpper[c & 0x0f]);
    }
  }
  return out;
}

inline std::string_view payload_key_for(PiiKind kind) {
  switch (kind) {
    case PiiKind::imei: return "did";
    case PiiKind::imsi: return "sub";
    case PiiKind::android_id: return "aid";
    case PiiKind::serial_no: return "ser";
    case PiiKind::phone_no: return "msisdn";
    case PiiKind::contacts: return "cts";
    case PiiKind::operator_name: return "carrier";
    case PiiKind::sim_network_code: return "mnc";
    case PiiKind::wifi_scan_config: return "bss";
    case PiiKind::udid: return "udid";
    case PiiKind::ad_identifier: return "ifa";
    case PiiKind::identifier_for_vendor: return "idfv";
    case PiiKind::device_name: return "dn";
    case PiiKind::pasteboard_id: return "pbid";
    case PiiKind::address_book: return "ab";
    case PiiKind::sim_network_name: return "simop";
    case PiiKind::sim_number: return "simno";
    case PiiKind::wifi_mac: return "mac";
    case PiiKind::location: return "ll";
    case PiiKind::accounts: return "acct";
    case PiiKind::installed_apps: return "pkgs";
  }
  return "v";
}

inline std::string uuid_like(std::uint64_t key) {
  SplitMix64 rng(key);
  std::string hex;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t v = rng.next();
    for (int b = 0; b < 8; ++b)
      hex.push_back(kHexDigitsUpper[(v >> (b * 4)) & 0x0f]);
  }
  return hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) +
         "-" + hex.substr(16, 4) + "-" + hex.substr(20, 12);
}

// Generated pasteboard values depend only on the entry name (and explicit
// manifest values), never on the trace seed, so expected statistics can be
// derived from the manifest alone.
inline Bytes resolve_pb_value(const std::string& name, const std::string& given) {
  if (!given.empty()) return given;
  return uuid_like(fnv1a64(name) ^ 0x70623169646b6579ull);
}

inline const std::vector<std::string>& noise_destinations() {
  static const std::vector<std::string> dests = {
      "cdn.pixelfarm-static.net", "assets.tileserve-cache.com",
      "img.glyphstore-mirror.net", "fonts.typeshard-host.com",
      "api.weatherquilt.io",      "edge.bannerless-cdn.com",
  };
  return dests;
}

struct PreparedChain {
  std::vector<DataModifyBody> steps;  // in call order
  Bytes final_bytes;
};

inline PreparedChain prepare_chain(const Bytes& value,
                                   const std::vector<ModApi>& chain,
                                   std::uint64_t key, int nonce) {
  PreparedChain out;
  Bytes current = value;
  int step_index = 0;
  for (ModApi api : chain) {
    Bytes output = apply_mod_api(
        api, current,
        key ^ (static_cast<std::uint64_t>(nonce) << 32) ^
            static_cast<std::uint64_t>(step_index) * 0x9e3779b97f4a7c15ull);
    out.steps.push_back(DataModifyBody{api, current, output});
    current = output;
    ++step_index;
  }
  out.final_bytes = current;
  return out;
}

// Resolved pasteboard state shared by the generator and expected_stats.
struct PbResolution {
  std::map<std::string, std::pair<Bytes, std::string>> store;  // name -> (value, type)
  struct Op {
    std::string app_id;
    bool write;
    std::string name;
    std::string pb_type;
    Bytes value;
  };
  std::vector<Op> ops;  // manifest order
};

inline PbResolution resolve_pasteboards(const LeakManifest& manifest) {
  PbResolution r;
  for (const AppBehavior& app : manifest.apps) {
    for (const PasteboardOp& op : app.pasteboard) {
      if (op.write) {
        auto it = r.store.find(op.name);
        Bytes value = it != r.store.end() ? it->second.first
                                          : resolve_pb_value(op.name, op.value);
        if (it == r.store.end()) r.store[op.name] = {value, op.pb_type};
        r.ops.push_back({app.app_id, true, op.name, op.pb_type, value});
      } else {
        const auto& stored = r.store.at(op.name);
        r.ops.push_back({app.app_id, false, op.name, stored.second, stored.first});
      }
    }
  }
  return r;
}

inline std::vector<std::string> resolve_installed_names(
    const LeakManifest& manifest, const AppBehavior& app,
    const InstalledSend& send) {
  std::vector<std::string> names;
  if (send.all) {
    for (const auto& [id, an] : manifest.profile.apps) names.push_back(an.package);
  } else if (send.self) {
    // Android identifies apps by package name, iOS by process name.
    const AppNames& an = manifest.profile.apps.at(app.app_id);
    names.push_back(manifest.platform == Platform::android ? an.package
                                                           : an.display);
  } else {
    names = send.names;
  }
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

}  // namespace synth

// Deterministically renders a manifest into an event trace plus its ground
// truth. Leak payloads embed the (transformed) value amid seeded filler that
// is verified against the full needle pool not to contain anything beyond the
// intended sighting; noise payloads are verified needle-free.
inline SynthesisOutput synthesize_trace(const LeakManifest& manifest,
                                        std::uint64_t seed,
                                        const SynthesisConfig& cfg = {}) {
  validate_manifest(manifest);
  SynthesisOutput out;
  out.truth.platform = manifest.platform;

  synth::PbResolution pb = synth::resolve_pasteboards(manifest);
  for (const auto& op : pb.ops) {
    if (op.write) {
      out.truth.pasteboard_entries.push_back(
          GroundTruth::PasteboardEntry{op.app_id, op.name, op.pb_type, op.value});
    }
  }

  // Chain materials are prepared first so derived patterns join the
  // verification pool before any payload is assembled.
  struct PlannedLeak {
    std::size_t app_index;
    const LeakSpec* leak;
    Bytes value;
    std::uint64_t chain_key;
    synth::PreparedChain chain;
  };
  std::vector<PlannedLeak> planned;
  for (std::size_t ai = 0; ai < manifest.apps.size(); ++ai) {
    const AppBehavior& app = manifest.apps[ai];
    SplitMix64 chain_rng(seed ^ fnv1a64(app.app_id) ^ 0x636861696e6b6579ull);
    for (const LeakSpec& leak : app.leaks) {
      PlannedLeak p;
      p.app_index = ai;
      p.leak = &leak;
      p.value = leak.kind == PiiKind::pasteboard_id
                    ? pb.store.at(leak.pb_name).first
                    : manifest.profile.values_for(leak.kind)[leak.value_index];
      p.chain_key = chain_rng.next();
      p.chain = synth::prepare_chain(p.value, leak.chain, p.chain_key, 0);
      planned.push_back(std::move(p));
    }
  }

  // Needle pool: everything an analysis run could search for.
  std::vector<Needle> pool;
  for (const auto& [kind, values] : manifest.profile.values) {
    for (const Bytes& v : values)
      expand_value_needles(kind, v, cfg.collision_min_len, pool);
  }
  auto installed =
      needles_for(manifest.profile, PiiKind::installed_apps, cfg.collision_min_len);
  pool.insert(pool.end(), installed.begin(), installed.end());
  for (const auto& [name, entry] : pb.store) {
    expand_value_needles(PiiKind::pasteboard_id, entry.first,
                         cfg.collision_min_len, pool);
  }
  auto add_chain_needles = [&](std::vector<Needle>& dst, const PlannedLeak& p) {
    std::vector<ModApi> prefix;
    for (const auto& step : p.chain.steps) {
      prefix.push_back(step.api);
      auto add = [&](Bytes bytes, Representation rep) {
        if (bytes.size() < cfg.collision_min_len) return;
        dst.push_back(Needle{p.leak->kind, std::move(bytes), rep, prefix, p.value});
      };
      add(step.output, Representation::raw);
      add(hex_encode(step.output, false), Representation::hex_lower);
      add(hex_encode(step.output, true), Representation::hex_upper);
    }
  };
  for (const PlannedLeak& p : planned) add_chain_needles(pool, p);
  dedup_needles(pool);
  NeedleIndex pool_index(pool);

  // Expected sightings inside one payload: (kind, chain, source) groups.
  using Group = std::tuple<PiiKind, std::vector<ModApi>, Bytes>;
  auto verify = [&](const std::string& text, const std::set<Group>& allowed) {
    for (const Match& m : pool_index.find(text)) {
      if (!allowed.count({m.needle->pii_kind, m.needle->chain, m.needle->source}))
        return false;
    }
    return true;
  };
  // Values can be known under several kinds at once (e.g. a pasteboard entry
  // holding the MAC address); any same-bytes unmodified sighting is expected.
  auto allowed_for_value = [&](PiiKind kind, const Bytes& value) {
    std::set<Group> allowed;
    allowed.insert({kind, {}, value});
    for (const Needle& n : pool_index.needles()) {
      if (n.chain.empty() && n.source == value)
        allowed.insert({n.pii_kind, {}, n.source});
    }
    return allowed;
  };

  struct PendingEvent {
    std::int64_t ts_ms;
    std::string app_id;
    EventKind kind;
    EventBody body;
  };
  std::vector<PendingEvent> pending;
  auto emit = [&](std::int64_t ts, const std::string& app_id, EventKind kind,
                  EventBody body) {
    pending.push_back(PendingEvent{ts, app_id, kind, std::move(body)});
  };

  std::map<std::string, std::vector<const synth::PbResolution::Op*>> pb_by_app;
  for (const auto& op : pb.ops) pb_by_app[op.app_id].push_back(&op);
  std::map<std::size_t, std::vector<PlannedLeak*>> leaks_by_app;
  for (PlannedLeak& p : planned) leaks_by_app[p.app_index].push_back(&p);

  const std::int64_t stride_ms = 20000;
  for (std::size_t ai = 0; ai < manifest.apps.size(); ++ai) {
    const AppBehavior& app = manifest.apps[ai];
    SplitMix64 rng(seed ^ fnv1a64(app.app_id));
    const std::int64_t t0 = static_cast<std::int64_t>(ai) * stride_ms;

    for (PiiKind kind : app.accesses) {
      for (const Bytes& value : manifest.profile.values_for(kind)) {
        emit(t0 + static_cast<std::int64_t>(rng.below(8000)), app.app_id,
             EventKind::pii_access, PiiAccessBody{kind, value});
      }
    }
    for (const auto* op : pb_by_app[app.app_id]) {
      std::int64_t ts =
          op->write ? t0 + 8000 + static_cast<std::int64_t>(rng.below(2000))
                    : t0 + 45000 + static_cast<std::int64_t>(rng.below(5000));
      emit(ts, app.app_id,
           op->write ? EventKind::pasteboard_write : EventKind::pasteboard_read,
           PasteboardBody{op->name, op->pb_type, op->value});
    }

    for (PlannedLeak* pp : leaks_by_app[ai]) {
      PlannedLeak& p = *pp;
      const bool has_opaque =
          std::find(p.leak->chain.begin(), p.leak->chain.end(),
                    ModApi::encrypt_opaque) != p.leak->chain.end();
      std::set<Group> allowed =
          p.leak->chain.empty()
              ? allowed_for_value(p.leak->kind, p.value)
              : std::set<Group>{{p.leak->kind, p.leak->chain, p.value}};

      std::string payload;
      bool ok = false;
      for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
        if (attempt > 0 && attempt % 8 == 0 && has_opaque) {
          // Persistent collision inside an opaque output: re-key the chain.
          p.chain = synth::prepare_chain(p.value, p.leak->chain, p.chain_key,
                                         attempt);
        }
        const Bytes& final_bytes = p.chain.final_bytes;
        std::string encoded;
        if (p.leak->chain.empty()) {
          switch (rng.below(4)) {
            case 0: encoded = final_bytes; break;
            case 1: encoded = hex_encode(final_bytes, false); break;
            case 2: encoded = hex_encode(final_bytes, true); break;
            default: encoded = synth::percent_encode_aggressive(final_bytes);
          }
        } else {
          switch (rng.below(3)) {
            case 0: encoded = hex_encode(final_bytes, false); break;
            case 1: encoded = hex_encode(final_bytes, true); break;
            default: encoded = final_bytes;
          }
        }
        payload = "ev=" + synth::filler(rng, 6, 14) + "&" +
                  std::string(synth::payload_key_for(p.leak->kind)) + "=" +
                  encoded + "&s=" + synth::filler(rng, 8, 20);
        ok = verify(payload, allowed);
      }
      if (!ok)
        throw InternalError("synthesizer: could not build a collision-free payload");

      std::int64_t mod_ts = t0 + 10000 + static_cast<std::int64_t>(rng.below(5000));
      for (const auto& step : p.chain.steps) {
        emit(mod_ts, app.app_id, EventKind::data_modify, step);
        mod_ts += 1 + static_cast<std::int64_t>(rng.below(500));
      }
      std::int64_t tx_ts = t0 + 20000 + static_cast<std::int64_t>(rng.below(25000));
      emit(tx_ts, app.app_id, EventKind::net_transmit,
           NetTransmitBody{p.leak->dest, p.leak->channel, payload, std::nullopt});

      TruthFinding tf;
      tf.app_id = app.app_id;
      tf.pii_kind = p.leak->kind;
      tf.destination_host = p.leak->dest;
      tf.channel = p.leak->channel;
      tf.chain = p.leak->chain;
      tf.values.push_back(p.value);
      out.truth.findings.push_back(std::move(tf));
    }

    for (const InstalledSend& send : app.installed_sends) {
      std::vector<std::string> names =
          synth::resolve_installed_names(manifest, app, send);
      std::set<Group> allowed;
      for (const std::string& n : names)
        allowed.insert({PiiKind::installed_apps, {}, n});
      std::int64_t tx_ts = t0 + 20000 + static_cast<std::int64_t>(rng.below(25000));
      if (send.via_user_agent) {
        std::string ua = names.front() + "/" + std::to_string(rng.range(1, 9)) +
                         "." + std::to_string(rng.below(10));
        std::string payload;
        bool ok = false;
        for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
          payload = "ev=" + synth::filler(rng, 8, 16) + "&s=" +
                    synth::filler(rng, 8, 16);
          ok = verify(payload, {}) && verify(ua, allowed);
        }
        if (!ok) throw InternalError("synthesizer: user-agent collision");
        emit(tx_ts, app.app_id, EventKind::net_transmit,
             NetTransmitBody{send.dest, send.channel, payload, ua});
      } else {
        std::string joined;
        for (std::size_t i = 0; i < names.size(); ++i) {
          if (i) joined.push_back(',');
          joined += names[i];
        }
        std::string payload;
        bool ok = false;
        for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
          payload = "ev=" + synth::filler(rng, 6, 12) + "&pkgs=" + joined +
                    "&s=" + synth::filler(rng, 6, 12);
          ok = verify(payload, allowed);
        }
        if (!ok) throw InternalError("synthesizer: installed-send collision");
        emit(tx_ts, app.app_id, EventKind::net_transmit,
             NetTransmitBody{send.dest, send.channel, payload, std::nullopt});
      }

      TruthFinding tf;
      tf.app_id = app.app_id;
      tf.pii_kind = PiiKind::installed_apps;
      tf.destination_host = send.dest;
      tf.channel = send.channel;
      for (const std::string& n : names) tf.values.push_back(n);
      out.truth.findings.push_back(std::move(tf));
    }

    for (int i = 0; i < app.noise_transmits; ++i) {
      std::string payload;
      bool ok = false;
      for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
        payload = "t=" + synth::filler(rng, 4, 10) + "&u=" +
                  synth::filler(rng, 10, 40) + "&c=" + synth::filler(rng, 4, 18);
        ok = verify(payload, {});
      }
      if (!ok) throw InternalError("synthesizer: noise payload collision");
      const auto& dests = synth::noise_destinations();
      std::string dest = dests[rng.below(dests.size())];
      Channel channel = rng.below(2) ? Channel::ssl : Channel::clear;
      std::int64_t tx_ts = t0 + 20000 + static_cast<std::int64_t>(rng.below(40000));
      emit(tx_ts, app.app_id, EventKind::net_transmit,
           NetTransmitBody{dest, channel, payload, std::nullopt});
    }
  }

  std::stable_sort(pending.begin(), pending.end(),
                   [](const PendingEvent& a, const PendingEvent& b) {
                     return a.ts_ms < b.ts_ms;
                   });
  out.trace.events.reserve(pending.size());
  std::int64_t seq = 1;
  for (PendingEvent& p : pending) {
    Event ev;
    ev.seq = seq++;
    ev.ts_ms = p.ts_ms;
    ev.platform = manifest.platform;
    ev.app_id = std::move(p.app_id);
    ev.kind = p.kind;
    ev.body = std::move(p.body);
    out.trace.events.push_back(std::move(ev));
  }

  // Merge duplicate truth rows (same app/kind/dest/channel/chain).
  std::map<std::tuple<std::string, PiiKind, std::string, Channel, bool,
                      std::vector<ModApi>>,
           TruthFinding>
      merged;
  for (TruthFinding& f : out.truth.findings) {
    auto key = f.key();
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, std::move(f));
    } else {
      for (Bytes& v : f.values) {
        if (std::find(it->second.values.begin(), it->second.values.end(), v) ==
            it->second.values.end())
          it->second.values.push_back(std::move(v));
      }
    }
  }
  out.truth.findings.clear();
  for (auto& [key, f] : merged) {
    std::sort(f.values.begin(), f.values.end());
    out.truth.findings.push_back(std::move(f));
  }
  out.truth.sort();
  return out;
}

// Aggregate counters derived from manifest rows alone, with no event
// generation: the independent side of the closed-loop oracle.
inline AggregateStats expected_stats(const LeakManifest& manifest,
                                     const TrackerList& trackers,
                                     const PublicSuffixList& psl = {}) {
  validate_manifest(manifest);
  AggregateStats stats;
  stats.platform = manifest.platform;
  stats.total_apps = manifest.apps.size();

  synth::PbResolution pb = synth::resolve_pasteboards(manifest);
  std::map<std::pair<std::string, Bytes>, SharedIdFinding> pb_entries;
  for (const auto& op : pb.ops) {
    if (op.write) {
      SharedIdFinding& f = pb_entries[{op.name, op.value}];
      f.pasteboard_name = op.name;
      if (f.pb_type.empty()) f.pb_type = op.pb_type;
      f.value = op.value;
      f.writer_apps.insert(op.app_id);
    } else {
      pb_entries[{op.name, op.value}].reader_apps.insert(op.app_id);
    }
  }

  const auto& system_kinds = system_identifier_kinds(manifest.platform);
  for (const AppBehavior& app : manifest.apps) {
    const AppNames& names = manifest.profile.apps.at(app.app_id);
    AppMeta meta{app.app_id, names.package, names.display};

    std::set<PiiKind> any_kinds, modified_kinds, unmodified_kinds, durable;
    bool any_system = false;
    bool vendor_to_third = false;
    auto tally = [&](PiiKind kind, const std::string& dest_host, Channel channel,
                     bool modified) {
      NormalizedDest dest = normalize_destination(dest_host, psl);
      PartyClass party = classify_party(meta, dest, trackers);
      any_kinds.insert(kind);
      (modified ? modified_kinds : unmodified_kinds).insert(kind);
      stats.servers_per_identifier[kind][{party, channel}].insert(
          ServerCell{dest.registrable, modified});
      if (std::find(system_kinds.begin(), system_kinds.end(), kind) !=
          system_kinds.end())
        any_system = true;
      if (is_reset_resilient(kind)) durable.insert(kind);
      if (kind == PiiKind::identifier_for_vendor &&
          party == PartyClass::third_party)
        vendor_to_third = true;
      return std::pair{dest, party};
    };

    for (const LeakSpec& leak : app.leaks) {
      auto [dest, party] = tally(leak.kind, leak.dest, leak.channel,
                                 !leak.chain.empty());
      if (leak.kind == PiiKind::pasteboard_id) {
        const Bytes& value = pb.store.at(leak.pb_name).first;
        for (auto& [key, entry] : pb_entries) {
          if (key.second == value)
            entry.transmitted_to.insert({dest.registrable, party, leak.channel});
        }
      }
    }
    for (const InstalledSend& send : app.installed_sends) {
      auto [dest, party] =
          tally(PiiKind::installed_apps, send.dest, send.channel, false);
      if (party == PartyClass::third_party) {
        for (const std::string& n :
             synth::resolve_installed_names(manifest, app, send))
          stats.installed_app_knowledge[dest.registrable].insert(n);
      }
    }

    for (PiiKind k : any_kinds) ++stats.apps_per_identifier[k].any;
    for (PiiKind k : modified_kinds) ++stats.apps_per_identifier[k].modified;
    for (PiiKind k : unmodified_kinds) ++stats.apps_per_identifier[k].unmodified;
    if (any_system) ++stats.apps_with_any_system_id;
    if (!durable.empty()) {
      ++stats.reset.tracking_apps;
      if (!(durable.size() == 1 && *durable.begin() == PiiKind::wifi_mac))
        ++stats.reset.tracking_apps_excluding_wifi_mac_only;
    }
    if (vendor_to_third) ++stats.vendor_id_to_third_party_apps;
    for (const PasteboardOp& op : app.pasteboard) {
      if (op.write) {
        ++stats.pasteboard_creator_apps;
        break;
      }
    }
  }
  stats.reset.total_apps = manifest.apps.size();
  for (auto& [key, entry] : pb_entries)
    stats.shared_identifiers.push_back(std::move(entry));
  std::sort(stats.shared_identifiers.begin(), stats.shared_identifiers.end());
  check_stats_consistency(stats);
  return stats;
}

}  // namespace scrut
