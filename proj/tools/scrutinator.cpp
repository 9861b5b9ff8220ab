// Command-line driver: synthesize traces, analyze them, aggregate reports,
// run the network-interception baseline, and compare detectors. Each stage
// reads and writes plain files so pipelines stay inspectable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "scrutinator/analyzer.hpp"
#include "scrutinator/baseline.hpp"
#include "scrutinator/errors.hpp"
#include "scrutinator/manifest.hpp"
#include "scrutinator/report.hpp"
#include "scrutinator/stats.hpp"
#include "scrutinator/synthesizer.hpp"
#include "scrutinator/trace_io.hpp"
#include "scrutinator/version.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

nlohmann::json parse_json_file(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(scrut::read_file(path), nullptr, false);
  if (j.is_discarded()) throw scrut::InputError("'" + path + "' is not valid JSON");
  return j;
}

scrut::DeviceProfile load_profile_file(const std::string& path) {
  return scrut::load_device_profile(scrut::read_file(path));
}

scrut::PublicSuffixList load_psl_file(const std::string& path) {
  if (path.empty()) return scrut::PublicSuffixList{};
  std::vector<std::string> suffixes;
  std::istringstream in(scrut::read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    suffixes.push_back(line);
  }
  return scrut::PublicSuffixList(suffixes);
}

scrut::TrackerList load_trackers_file(const std::string& path,
                                      const scrut::PublicSuffixList& psl) {
  if (path.empty()) return scrut::TrackerList{};
  std::istringstream in(scrut::read_file(path));
  return scrut::TrackerList::load(in, psl);
}

std::size_t env_min_needle_len() {
  const char* env = std::getenv("SCRUTINATOR_MIN_NEEDLE_LEN");
  if (!env) return scrut::kDefaultMinNeedleLen;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v < 1)
    throw scrut::UsageError("SCRUTINATOR_MIN_NEEDLE_LEN must be a positive integer");
  return static_cast<std::size_t>(v);
}

ordered_json envelope(std::initializer_list<std::pair<std::string, std::string>>
                          input_digests) {
  ordered_json j;
  j["tool_version"] = std::string(scrut::kToolVersion);
  ordered_json inputs;
  for (const auto& [name, digest] : input_digests) inputs[name] = digest;
  j["inputs"] = std::move(inputs);
  return j;
}

int run_synthesize(const std::string& manifest_path, std::uint64_t seed,
                   const std::string& out_path, const std::string& truth_path) {
  nlohmann::json mj = parse_json_file(manifest_path);
  scrut::DeviceProfile profile;
  if (mj.contains("profile") && mj["profile"].is_object()) {
    profile = scrut::load_device_profile(mj["profile"].dump());
  } else if (mj.contains("profile_path")) {
    fs::path base = fs::path(manifest_path).parent_path();
    profile = load_profile_file(
        (base / mj["profile_path"].get<std::string>()).string());
  } else {
    throw scrut::InputError("manifest: missing profile or profile_path");
  }
  scrut::LeakManifest manifest = scrut::manifest_from_json(mj, std::move(profile));
  scrut::SynthesisOutput output = scrut::synthesize_trace(manifest, seed);

  std::ostringstream trace_os;
  trace_os << "# " << scrut::kToolVersion << "\n";
  trace_os << "# manifest: " << scrut::file_digest(manifest_path) << "\n";
  trace_os << "# seed: " << seed << "\n";
  scrut::serialize_trace(output.trace, trace_os);
  scrut::write_file(out_path, trace_os.str());

  ordered_json tj = envelope({{"manifest", scrut::file_digest(manifest_path)},
                              {"trace", scrut::file_digest(out_path)}});
  ordered_json truth_body = scrut::truth_to_json(output.truth);
  for (auto& [key, value] : truth_body.items()) tj[key] = value;
  scrut::write_file(truth_path, tj.dump(2) + "\n");
  std::cerr << "synthesized " << output.trace.events.size() << " events for "
            << manifest.apps.size() << " apps\n";
  return 0;
}

int run_analyze(const std::string& trace_path, const std::string& profile_path,
                const std::string& trackers_path, const std::string& psl_path,
                const std::string& out_path, int workers,
                std::size_t min_needle_len, int max_chain_depth) {
  scrut::PublicSuffixList psl = load_psl_file(psl_path);
  scrut::TrackerList trackers = load_trackers_file(trackers_path, psl);
  scrut::DeviceProfile profile = load_profile_file(profile_path);
  std::ifstream trace_in(trace_path, std::ios::binary);
  if (!trace_in) throw scrut::InputError("cannot open '" + trace_path + "'");
  scrut::EventTrace trace = scrut::parse_trace(trace_in);

  scrut::AnalyzerConfig cfg;
  cfg.min_needle_len = min_needle_len;
  cfg.max_chain_depth = max_chain_depth;
  cfg.workers = workers;
  scrut::AnalysisResult result =
      scrut::analyze_trace(trace, profile, trackers, cfg, psl);

  ordered_json j = envelope(
      {{"trace", scrut::file_digest(trace_path)},
       {"profile", scrut::file_digest(profile_path)},
       {"trackers",
        trackers_path.empty() ? "none" : scrut::file_digest(trackers_path)}});
  ordered_json body = scrut::analysis_to_json(result);
  for (auto& [key, value] : body.items()) j[key] = value;
  scrut::write_file(out_path, j.dump(2) + "\n");
  std::cerr << "analyzed " << trace.events.size() << " events, "
            << result.apps.size() << " apps\n";
  return 0;
}

int run_baseline(const std::string& trace_path, const std::string& profile_path,
                 const std::string& trackers_path, const std::string& psl_path,
                 const std::string& out_path, std::size_t min_needle_len) {
  scrut::PublicSuffixList psl = load_psl_file(psl_path);
  scrut::TrackerList trackers = load_trackers_file(trackers_path, psl);
  scrut::DeviceProfile profile = load_profile_file(profile_path);
  std::ifstream trace_in(trace_path, std::ios::binary);
  if (!trace_in) throw scrut::InputError("cannot open '" + trace_path + "'");
  scrut::EventTrace trace = scrut::parse_trace(trace_in);

  scrut::AnalyzerConfig cfg;
  cfg.min_needle_len = min_needle_len;
  scrut::AnalysisResult result = scrut::analyze_baseline(
      trace, scrut::user_known_subset(profile), trackers, cfg, psl);

  ordered_json j = envelope(
      {{"trace", scrut::file_digest(trace_path)},
       {"profile", scrut::file_digest(profile_path)},
       {"trackers",
        trackers_path.empty() ? "none" : scrut::file_digest(trackers_path)}});
  ordered_json body = scrut::analysis_to_json(result);
  for (auto& [key, value] : body.items()) j[key] = value;
  scrut::write_file(out_path, j.dump(2) + "\n");
  return 0;
}

int run_report(const std::string& analysis_path, const std::string& format_name,
               const std::string& out_dir) {
  auto format = scrut::parse_report_format(format_name);
  if (!format)
    throw scrut::UsageError("unknown report format '" + format_name + "'");
  nlohmann::json aj = parse_json_file(analysis_path);
  scrut::AnalysisResult analysis = scrut::analysis_from_json(aj);
  scrut::AggregateStats stats = scrut::aggregate_stats(analysis);

  fs::create_directories(out_dir);
  std::string digest = scrut::file_digest(analysis_path);
  for (scrut::ReportDocument& doc : scrut::render_report(stats, *format)) {
    fs::path path = fs::path(out_dir) / doc.filename;
    if (*format == scrut::ReportFormat::json) {
      ordered_json j = envelope({{"analysis", digest}});
      j["stats"] = nlohmann::ordered_json::parse(doc.content);
      scrut::write_file(path.string(), j.dump(2) + "\n");
    } else {
      std::string header = std::string("# ") + std::string(scrut::kToolVersion) +
                           "\n# analysis: " + digest + "\n";
      scrut::write_file(path.string(), header + doc.content);
    }
  }
  return 0;
}

int run_compare(const std::string& analysis_path, const std::string& baseline_path,
                const std::string& truth_path, const std::string& out_path) {
  nlohmann::json aj = parse_json_file(analysis_path);
  nlohmann::json bj = parse_json_file(baseline_path);
  std::string a_trace = aj.value("inputs", nlohmann::json::object())
                            .value("trace", std::string("?"));
  std::string b_trace = bj.value("inputs", nlohmann::json::object())
                            .value("trace", std::string("?"));
  if (a_trace != b_trace) {
    throw scrut::InputError(
        "analysis and baseline were produced from different traces (" + a_trace +
        " vs " + b_trace + ")");
  }
  scrut::AnalysisResult analysis = scrut::analysis_from_json(aj);
  scrut::AnalysisResult baseline = scrut::analysis_from_json(bj);
  scrut::GroundTruth truth;
  bool have_truth = !truth_path.empty();
  if (have_truth) truth = scrut::truth_from_json(parse_json_file(truth_path));

  scrut::ComparisonReport report = scrut::compare_detectors(
      analysis, baseline, have_truth ? &truth : nullptr);

  auto keys_json = [](const std::vector<scrut::FindingKey>& keys) {
    ordered_json arr = ordered_json::array();
    for (const scrut::FindingKey& k : keys) {
      ordered_json e;
      e["app_id"] = k.app_id;
      e["pii_kind"] = std::string(to_string(k.pii_kind));
      e["destination_host"] = k.destination_host;
      e["channel"] = std::string(to_string(k.channel));
      e["modified"] = k.modified;
      e["chain"] = scrut::jsonio::chain_to_json(k.chain);
      arr.push_back(std::move(e));
    }
    return arr;
  };

  ordered_json j = envelope({{"analysis", scrut::file_digest(analysis_path)},
                             {"baseline", scrut::file_digest(baseline_path)}});
  j["trace"] = a_trace;
  j["both"] = keys_json(report.both);
  j["analyzer_only"] = keys_json(report.analyzer_only);
  j["baseline_only"] = keys_json(report.baseline_only);
  ordered_json misses;
  misses["missed_because_ssl"] =
      report.miss_counts.count(scrut::MissCategory::ssl)
          ? report.miss_counts.at(scrut::MissCategory::ssl)
          : 0;
  misses["missed_because_modified"] =
      report.miss_counts.count(scrut::MissCategory::modified)
          ? report.miss_counts.at(scrut::MissCategory::modified)
          : 0;
  misses["missed_because_system_value"] =
      report.miss_counts.count(scrut::MissCategory::system_value)
          ? report.miss_counts.at(scrut::MissCategory::system_value)
          : 0;
  j["miss_categories"] = std::move(misses);
  j["unexplained"] = keys_json(report.unexplained);
  if (have_truth) {
    j["missing_vs_truth"] = keys_json(report.missing_vs_truth);
    j["spurious_vs_truth"] = keys_json(report.spurious_vs_truth);
  }
  scrut::write_file(out_path, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"API-event trace privacy-leak analyzer"};
  app.require_subcommand(1);

  std::string manifest_path, trace_path, profile_path, trackers_path, psl_path;
  std::string out_path, truth_path, analysis_path, baseline_path, format_name;
  std::uint64_t seed = 1;
  int workers = 1;
  int max_chain_depth = scrut::kDefaultMaxChainDepth;
  long min_needle_flag = -1;

  auto* synth = app.add_subcommand("synthesize", "generate a trace from a manifest");
  synth->add_option("--manifest", manifest_path)->required();
  synth->add_option("--seed", seed)->required();
  synth->add_option("--out", out_path)->required();
  synth->add_option("--truth", truth_path)->required();

  auto* analyze = app.add_subcommand("analyze", "detect leaks in a trace");
  analyze->add_option("--trace", trace_path)->required();
  analyze->add_option("--profile", profile_path)->required();
  analyze->add_option("--trackers", trackers_path);
  analyze->add_option("--psl", psl_path);
  analyze->add_option("--out", out_path)->required();
  analyze->add_option("--workers", workers);
  analyze->add_option("--min-needle-len", min_needle_flag);
  analyze->add_option("--max-chain-depth", max_chain_depth);

  auto* baseline = app.add_subcommand("baseline", "network-interception baseline");
  baseline->add_option("--trace", trace_path)->required();
  baseline->add_option("--profile", profile_path)->required();
  baseline->add_option("--trackers", trackers_path);
  baseline->add_option("--psl", psl_path);
  baseline->add_option("--out", out_path)->required();
  baseline->add_option("--min-needle-len", min_needle_flag);

  auto* report = app.add_subcommand("report", "aggregate statistics documents");
  report->add_option("--analysis", analysis_path)->required();
  report->add_option("--format", format_name)->required();
  report->add_option("--out", out_path)->required();

  auto* compare = app.add_subcommand("compare", "analyzer vs baseline");
  compare->add_option("--analysis", analysis_path)->required();
  compare->add_option("--baseline", baseline_path)->required();
  compare->add_option("--truth", truth_path);
  compare->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
    std::size_t min_needle_len =
        min_needle_flag > 0 ? static_cast<std::size_t>(min_needle_flag)
                            : env_min_needle_len();
    if (synth->parsed())
      return run_synthesize(manifest_path, seed, out_path, truth_path);
    if (analyze->parsed())
      return run_analyze(trace_path, profile_path, trackers_path, psl_path,
                         out_path, workers, min_needle_len, max_chain_depth);
    if (baseline->parsed())
      return run_baseline(trace_path, profile_path, trackers_path, psl_path,
                          out_path, min_needle_len);
    if (report->parsed())
      return run_report(analysis_path, format_name, out_path);
    if (compare->parsed())
      return run_compare(analysis_path, baseline_path, truth_path, out_path);
    return static_cast<int>(scrut::ExitCode::usage);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(scrut::ExitCode::usage);
  } catch (const scrut::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return static_cast<int>(scrut::ExitCode::usage);
  } catch (const scrut::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return static_cast<int>(scrut::ExitCode::input_format);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return static_cast<int>(scrut::ExitCode::internal);
  }
}
