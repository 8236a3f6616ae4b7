// Copyright 2026 The edgefuse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgefuse/sim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "edgefuse/core/error.hpp"
#include "edgefuse/core/io.hpp"
#include "json_util.hpp"

namespace edgefuse::sim {

using nlohmann::json;
using nlohmann::ordered_json;

FusionTrace FusionTrace::from(const fusion::FusionOutcome& o) {
  auto ms = [](const std::optional<Timestamp>& t) -> std::optional<std::int64_t> {
    if (!t) return std::nullopt;
    return t->ms();
  };
  auto idx = [](const std::optional<std::size_t>& v) -> std::optional<std::int64_t> {
    if (!v) return std::nullopt;
    return static_cast<std::int64_t>(*v);
  };
  FusionTrace t;
  t.mode = std::string(fusion::to_string(o.mode));
  t.winner = std::string(fusion::to_string(o.winner));
  t.t1_ms = ms(o.t1);
  t.t2_ms = ms(o.t2);
  t.t3_ms = ms(o.t3);
  t.p_real = o.p_real;
  t.p_raw = idx(o.p_raw);
  t.p_clamped = idx(o.p_clamped);
  t.p_word = idx(o.p_word);
  t.splice_count = idx(o.splice_count);
  t.spoken_at_t2 = idx(o.spoken_at_t2);
  t.spoken_at_fusion_first = idx(o.spoken_at_fusion_first);
  t.recovery = o.recovery;
  t.degraded = o.degraded;
  return t;
}

namespace {

template <typename T>
ordered_json opt(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json trace_json(const FusionTrace& t) {
  ordered_json j;
  j["mode"] = t.mode;
  j["winner"] = t.winner;
  j["t1_ms"] = opt(t.t1_ms);
  j["t2_ms"] = opt(t.t2_ms);
  j["t3_ms"] = opt(t.t3_ms);
  j["p_real"] = opt(t.p_real);
  j["p_raw"] = opt(t.p_raw);
  j["p_clamped"] = opt(t.p_clamped);
  j["p_word"] = opt(t.p_word);
  j["splice_count"] = opt(t.splice_count);
  j["spoken_at_t2"] = opt(t.spoken_at_t2);
  j["spoken_at_fusion_first"] = opt(t.spoken_at_fusion_first);
  j["recovery"] = t.recovery;
  j["degraded"] = t.degraded;
  return j;
}

FusionTrace read_trace(const json& node, detail::ObjectReader& parent) {
  detail::ObjectReader r(node, parent.source(), parent.line(), "fusion");
  FusionTrace t;
  t.mode = r.required<std::string>("mode");
  t.winner = r.required<std::string>("winner");
  t.t1_ms = r.optional<std::int64_t>("t1_ms");
  t.t2_ms = r.optional<std::int64_t>("t2_ms");
  t.t3_ms = r.optional<std::int64_t>("t3_ms");
  t.p_real = r.optional<double>("p_real");
  t.p_raw = r.optional<std::int64_t>("p_raw");
  t.p_clamped = r.optional<std::int64_t>("p_clamped");
  t.p_word = r.optional<std::int64_t>("p_word");
  t.splice_count = r.optional<std::int64_t>("splice_count");
  t.spoken_at_t2 = r.optional<std::int64_t>("spoken_at_t2");
  t.spoken_at_fusion_first = r.optional<std::int64_t>("spoken_at_fusion_first");
  t.recovery = r.required<bool>("recovery");
  t.degraded = r.required<bool>("degraded");
  r.finish();
  return t;
}

}  // namespace

std::string to_jsonl(const MetricsRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["system"] = std::string(to_string(r.system));
  j["predicted_track"] = r.predicted_track ? ordered_json(std::string(to_string(*r.predicted_track))) : nullptr;
  j["truth_track"] = std::string(to_string(r.truth_track));
  j["ttft_ms"] = opt(r.ttft_ms);
  j["turnaround_ms"] = opt(r.turnaround_ms);
  j["edge_calls"] = r.edge_calls;
  j["cloud_calls"] = r.cloud_calls;
  j["fusion_calls"] = r.fusion_calls;
  j["editor_calls"] = r.editor_calls;
  j["fusion"] = r.fusion ? trace_json(*r.fusion) : ordered_json(nullptr);
  j["flags"] = r.flags;
  j["final_text"] = r.final_text;
  j["error"] = opt(r.error);
  return j.dump();
}

MetricsRecord parse_metrics_line(std::string_view line, const std::string& source, std::size_t line_no) {
  const json doc = detail::parse_json(line, source, line_no);
  detail::ObjectReader r(doc, source, line_no, "");
  MetricsRecord m;
  m.id = r.required<std::string>("id");
  const auto system = parse_system(r.required<std::string>("system"));
  if (!system) r.fail("system", "unknown system");
  m.system = *system;
  if (auto t = r.optional<std::string>("predicted_track")) {
    m.predicted_track = parse_track(*t);
    if (!m.predicted_track) r.fail("predicted_track", "unknown track");
  }
  const auto truth = parse_track(r.required<std::string>("truth_track"));
  if (!truth) r.fail("truth_track", "unknown track");
  m.truth_track = *truth;
  m.ttft_ms = r.optional<std::int64_t>("ttft_ms");
  m.turnaround_ms = r.optional<std::int64_t>("turnaround_ms");
  m.edge_calls = r.required<std::int64_t>("edge_calls");
  m.cloud_calls = r.required<std::int64_t>("cloud_calls");
  m.fusion_calls = r.required<std::int64_t>("fusion_calls");
  m.editor_calls = r.required<std::int64_t>("editor_calls");
  if (const json* f = r.optional_object("fusion")) m.fusion = read_trace(*f, r);
  m.flags = r.required<std::vector<std::string>>("flags");
  m.final_text = r.required<std::string>("final_text");
  m.error = r.optional<std::string>("error");
  r.finish();
  return m;
}

void export_metrics(std::span<const MetricsRecord> records, const std::filesystem::path& path) {
  std::string out;
  for (const auto& r : records) out += to_jsonl(r) + "\n";
  write_file(path, out);
}

std::vector<MetricsRecord> load_metrics(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<MetricsRecord> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string_view line = std::string_view(text).substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    out.push_back(parse_metrics_line(line, path.string(), line_no));
  }
  return out;
}

namespace {

std::optional<double> mean(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::optional<double> nearest_rank(std::vector<double> v, double q) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

}  // namespace

LatencySummary summarize(std::span<const MetricsRecord> records) {
  std::vector<double> ttft;
  std::vector<double> turnaround;
  for (const auto& r : records) {
    if (r.ttft_ms) ttft.push_back(static_cast<double>(*r.ttft_ms));
    if (r.turnaround_ms) turnaround.push_back(static_cast<double>(*r.turnaround_ms));
  }
  LatencySummary s;
  s.count = ttft.size();
  s.mean_ttft_ms = mean(ttft);
  s.mean_turnaround_ms = mean(turnaround);
  s.p50_ttft_ms = nearest_rank(ttft, 0.5);
  s.p90_ttft_ms = nearest_rank(ttft, 0.9);
  s.p50_turnaround_ms = nearest_rank(turnaround, 0.5);
  s.p90_turnaround_ms = nearest_rank(turnaround, 0.9);
  return s;
}

}  // namespace edgefuse::sim
