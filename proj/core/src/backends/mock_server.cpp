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

#include "edgefuse/backends/mock_server.hpp"

#include <httplib.h>

#include <condition_variable>
#include <json.hpp>
#include <stdexcept>

#include "edgefuse/core/error.hpp"

namespace edgefuse::backends {

using nlohmann::json;

std::string sse_delta_record(const std::string& content) {
  json chunk = {
      {"object", "chat.completion.chunk"},
      {"choices", json::array({{{"index", 0}, {"delta", {{"content", content}}}}})},
  };
  return "data: " + chunk.dump() + "\n\n";
}

struct MockChatServer::Impl {
  httplib::Server server;
  std::thread thread;

  mutable std::mutex mu;
  std::condition_variable cv;
  bool stopping = false;
  MockReply fallback;
  std::map<std::string, MockReply> replies;
  std::optional<std::string> api_key;
  std::vector<RecordedRequest> log;

  // False if the server is shutting down.
  bool pause(Millis d) {
    if (d <= Millis{0}) return true;
    std::unique_lock lock(mu);
    return !cv.wait_for(lock, d, [&] { return stopping; });
  }

  MockReply lookup(const std::string& body) {
    std::string key;
    try {
      const auto doc = json::parse(body);
      for (const auto& part : doc.at("messages").at(0).at("content")) {
        if (part.value("type", "") == "text") {
          key = part.value("text", "");
          break;
        }
      }
    } catch (const json::exception&) {
    }
    std::lock_guard lock(mu);
    const auto it = replies.find(key);
    return it == replies.end() ? fallback : it->second;
  }

  void install() {
    server.Post(R"(.*/chat/completions)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string auth = req.get_header_value("Authorization");
      {
        std::lock_guard lock(mu);
        log.push_back({req.path, auth, req.body});
        if (api_key && auth != "Bearer " + *api_key) {
          res.status = 401;
          res.set_content(R"({"error":{"message":"invalid api key"}})", "application/json");
          return;
        }
      }
      MockReply reply = lookup(req.body);
      if (reply.status != 200) {
        res.status = reply.status;
        res.set_content(R"({"error":{"message":"scripted failure"}})", "application/json");
        return;
      }
      res.status = 200;
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider("text/event-stream", [this, reply](size_t offset, httplib::DataSink& sink) {
        if (offset > 0) {
          sink.done();
          return true;
        }
        if (!pause(reply.first_delay)) return false;
        for (std::size_t i = 0; i < reply.deltas.size(); ++i) {
          if (i > 0 && !pause(reply.gap)) return false;
          const std::string record = sse_delta_record(reply.deltas[i]);
          if (!sink.write(record.data(), record.size())) return false;
          if (reply.stall_after && *reply.stall_after == i + 1 && !pause(reply.stall)) return false;
        }
        if (reply.deltas.empty() && reply.stall_after && *reply.stall_after == 0 && !pause(reply.stall)) return false;
        if (reply.send_done) {
          static constexpr char kDone[] = "data: [DONE]\n\n";
          if (!sink.write(kDone, sizeof(kDone) - 1)) return false;
        }
        sink.done();
        return true;
      });
    });
  }
};

MockChatServer::MockChatServer(MockReply default_reply) : impl_(std::make_unique<Impl>()) {
  impl_->fallback = std::move(default_reply);
  impl_->install();
}

MockChatServer::~MockChatServer() { stop(); }

void MockChatServer::start(int port) {
  if (impl_->thread.joinable()) throw Error("mock server already running");
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port("127.0.0.1");
  } else {
    port_ = impl_->server.bind_to_port("127.0.0.1", port) ? port : -1;
  }
  if (port_ <= 0) throw IoError("mock server could not bind 127.0.0.1:" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void MockChatServer::stop() {
  {
    std::lock_guard lock(impl_->mu);
    impl_->stopping = true;
  }
  impl_->cv.notify_all();
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

std::string MockChatServer::base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

void MockChatServer::set_reply(const std::string& prompt, MockReply reply) {
  std::lock_guard lock(impl_->mu);
  impl_->replies[prompt] = std::move(reply);
}

void MockChatServer::set_default_reply(MockReply reply) {
  std::lock_guard lock(impl_->mu);
  impl_->fallback = std::move(reply);
}

void MockChatServer::require_api_key(std::string key) {
  std::lock_guard lock(impl_->mu);
  impl_->api_key = std::move(key);
}

std::vector<RecordedRequest> MockChatServer::requests() const {
  std::lock_guard lock(impl_->mu);
  return impl_->log;
}

void MockChatServer::listen_blocking(const std::string& host, int port) {
  port_ = port;
  if (!impl_->server.listen(host, port)) throw IoError("mock server could not listen on " + host + ":" + std::to_string(port));
}

}  // namespace edgefuse::backends
