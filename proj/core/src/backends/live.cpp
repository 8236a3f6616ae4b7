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

#include "edgefuse/backends/live.hpp"

#include <httplib.h>

#include <cstdlib>
#include <json.hpp>
#include <stdexcept>

namespace edgefuse::backends {

using nlohmann::json;

void BackendEndpoint::validate() const {
  if (base_url.empty()) throw std::invalid_argument("endpoint base_url is empty");
  if (model.empty()) throw std::invalid_argument("endpoint model is empty");
  if (timeout <= Millis{0}) throw std::invalid_argument("endpoint timeout must be positive");
}

LiveBackend::LiveBackend(BackendKind kind, BackendEndpoint endpoint) : kind_(kind), endpoint_(std::move(endpoint)) {
  endpoint_.validate();
}

std::string build_chat_request(const BackendEndpoint& endpoint, const std::string& prompt, const FrameRef& frame) {
  json content = json::array();
  content.push_back({{"type", "text"}, {"text", prompt}});
  if (frame.bytes) {
    const std::string url = "data:image/jpeg;base64," + httplib::detail::base64_encode(*frame.bytes);
    content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
  } else {
    content.push_back({{"type", "text"}, {"text", "Frame reference: " + frame.id}});
  }
  json body = {
      {"model", endpoint.model},
      {"stream", true},
      {"messages", json::array({{{"role", "user"}, {"content", content}}})},
  };
  return body.dump();
}

std::vector<SseParser::Event> SseParser::feed(std::string_view chunk) {
  std::vector<Event> out;
  pending_.append(chunk);
  std::size_t start = 0;
  while (true) {
    const auto nl = pending_.find('\n', start);
    if (nl == std::string::npos) break;
    std::string_view line(pending_.data() + start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    handle_line(line, out);
    start = nl + 1;
  }
  pending_.erase(0, start);
  return out;
}

void SseParser::handle_line(std::string_view line, std::vector<Event>& out) {
  if (line.empty() || line.front() == ':') return;
  if (line.substr(0, 5) != "data:") return;  // event:, id:, retry: carry nothing we use
  std::string_view payload = line.substr(5);
  while (!payload.empty() && payload.front() == ' ') payload.remove_prefix(1);
  if (payload == "[DONE]") {
    out.push_back({Event::Done, {}});
    return;
  }
  json doc;
  try {
    doc = json::parse(payload);
  } catch (const json::exception&) {
    out.push_back({Event::Failure, "protocol error: malformed data record"});
    return;
  }
  if (doc.contains("error")) {
    out.push_back({Event::Failure, "server error: " + doc["error"].dump()});
    return;
  }
  if (!doc.contains("choices") || !doc["choices"].is_array()) {
    out.push_back({Event::Failure, "protocol error: data record without choices"});
    return;
  }
  for (const auto& choice : doc["choices"]) {
    if (!choice.contains("delta")) continue;
    const auto& delta = choice["delta"];
    if (delta.contains("content") && delta["content"].is_string()) {
      auto text = delta["content"].get<std::string>();
      if (!text.empty()) out.push_back({Event::Delta, std::move(text)});
    }
  }
}

namespace {

struct Target {
  std::string scheme_host_port;
  std::string path;
};

Target split_url(const std::string& base) {
  const auto scheme = base.find("://");
  const auto host_start = scheme == std::string::npos ? 0 : scheme + 3;
  const auto slash = base.find('/', host_start);
  Target t;
  t.scheme_host_port = slash == std::string::npos ? base : base.substr(0, slash);
  std::string prefix = slash == std::string::npos ? "" : base.substr(slash);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  t.path = prefix + "/chat/completions";
  return t;
}

std::string describe(httplib::Error err) {
  switch (err) {
    case httplib::Error::Connection:
    case httplib::Error::ConnectionTimeout:
    case httplib::Error::BindIPAddress:
    case httplib::Error::ProxyConnection:
    case httplib::Error::SSLConnection:
      return "connect failure: " + httplib::to_string(err);
    case httplib::Error::Read:
      return "timeout: no data within the read timeout";
    default:
      return "protocol error: " + httplib::to_string(err);
  }
}

// State shared by the worker and the cancel hook.
struct Request {
  std::mutex mu;
  httplib::Client* client = nullptr;
  bool stopped = false;
};

}  // namespace

TokenStream open_live_stream(const BackendEndpoint& endpoint, const std::string& prompt, const FrameRef& frame,
                             Clock& clock, BackendKind source) {
  auto core = std::make_shared<StreamCore>(source, clock);
  std::weak_ptr<StreamCore> weak = core;

  auto post = [&clock, weak](std::function<void(StreamCore&)> fn) {
    clock.post([weak, fn = std::move(fn)] {
      if (auto c = weak.lock()) fn(*c);
    });
  };

  std::string credential;
  if (!endpoint.api_key_env.empty()) {
    if (const char* v = std::getenv(endpoint.api_key_env.c_str())) credential = v;
  }
  if (!endpoint.api_key_env.empty() && credential.empty()) {
    post([name = endpoint.api_key_env](StreamCore& c) {
      c.emit_error("connect failure: credential variable " + name + " is not set");
    });
    return TokenStream(core);
  }

  auto request = std::make_shared<Request>();
  core->set_cancel_hook([request] {
    std::lock_guard lock(request->mu);
    request->stopped = true;
    if (request->client) request->client->stop();
  });

  const Target target = split_url(endpoint.base_url);
  std::string body = build_chat_request(endpoint, prompt, frame);

  // The guard keeps the loop waiting for this worker's terminal event.
  auto guard = std::make_shared<Clock::WorkGuard>(clock.hold());
  std::thread worker([=, core_flag = weak, body = std::move(body)]() mutable {
    httplib::Client client(target.scheme_host_port);
    const auto secs = endpoint.timeout.count() / 1000;
    const auto usecs = (endpoint.timeout.count() % 1000) * 1000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    {
      std::lock_guard lock(request->mu);
      if (request->stopped) {
        guard->release();
        return;
      }
      request->client = &client;
    }

    auto is_cancelled = [&] {
      auto c = core_flag.lock();
      return !c || c->is_cancelled();
    };

    SseParser parser;
    bool done = false;
    bool failed = false;
    int status = 0;
    std::string error_body;

    httplib::Request req;
    req.method = "POST";
    req.path = target.path;
    req.body = body;
    req.set_header("Content-Type", "application/json");
    req.set_header("Accept", "text/event-stream");
    if (!credential.empty()) req.set_header("Authorization", "Bearer " + credential);
    req.response_handler = [&](const httplib::Response& res) {
      status = res.status;
      return true;
    };
    req.content_receiver = [&](const char* data, size_t len, uint64_t, uint64_t) {
      if (is_cancelled()) return false;
      if (status != 200) {
        error_body.append(data, len);
        return true;
      }
      for (auto& ev : parser.feed(std::string_view(data, len))) {
        if (done || failed) break;
        switch (ev.kind) {
          case SseParser::Event::Delta:
            post([text = std::move(ev.text)](StreamCore& c) { c.emit_text(text); });
            break;
          case SseParser::Event::Done:
            done = true;
            post([](StreamCore& c) { c.emit_end(); });
            break;
          case SseParser::Event::Failure:
            failed = true;
            post([d = std::move(ev.text)](StreamCore& c) { c.emit_error(d); });
            break;
        }
      }
      return !(done || failed);
    };

    auto result = client.send(req);
    {
      std::lock_guard lock(request->mu);
      request->client = nullptr;
    }

    if (!done && !failed && !is_cancelled()) {
      std::string detail;
      if (!result && result.error() != httplib::Error::Canceled) {
        detail = describe(result.error());
      } else if (status != 200) {
        detail = "protocol error: HTTP " + std::to_string(status);
        if (!error_body.empty()) detail += ": " + error_body.substr(0, 200);
      } else {
        detail = "protocol error: stream closed without terminator";
      }
      post([detail](StreamCore& c) { c.emit_error(detail); });
    }
    guard->release();
  });
  core->adopt_worker(std::move(worker));
  return TokenStream(core);
}

}  // namespace edgefuse::backends
