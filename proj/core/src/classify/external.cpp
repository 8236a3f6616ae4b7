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

#include "edgefuse/classify/external.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <json.hpp>

#include "edgefuse/core/error.hpp"

namespace edgefuse::classify {

namespace {

void write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ClassifierFailure(std::string("write to classifier failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace

ExternalProcessClassifier::ExternalProcessClassifier(std::vector<std::string> argv) {
  if (argv.empty()) throw ClassifierFailure("external classifier: empty command");
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw ClassifierFailure("pipe failed");
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw ClassifierFailure("pipe failed");
  }

  std::vector<char*> cargv;
  for (auto& a : argv) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) throw ClassifierFailure("fork failed");
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  // A dead child must surface as a failed write, not a process-wide SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);
}

ExternalProcessClassifier::~ExternalProcessClassifier() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }
}

std::string ExternalProcessClassifier::read_line() const {
  while (true) {
    if (auto nl = pending_.find('\n'); nl != std::string::npos) {
      std::string line = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      return line;
    }
    char buf[4096];
    const ssize_t n = ::read(from_child_, buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw ClassifierFailure("classifier process closed its output");
    pending_.append(buf, static_cast<std::size_t>(n));
  }
}

ClassDistribution ExternalProcessClassifier::classify(std::string_view text) const {
  std::lock_guard lock(mu_);
  nlohmann::json req = {{"text", std::string(text)}};
  write_all(to_child_, req.dump() + "\n");
  const std::string line = read_line();

  nlohmann::json resp;
  try {
    resp = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw ClassifierFailure("classifier returned malformed line: " + line);
  }
  if (resp.contains("error")) throw ClassifierFailure("classifier error: " + resp["error"].dump());
  if (!resp.contains("scores") || !resp["scores"].is_object()) {
    throw ClassifierFailure("classifier response lacks a 'scores' object");
  }
  std::map<std::string, double> scores;
  for (const auto& [label, v] : resp["scores"].items()) {
    if (!v.is_number()) throw ClassifierFailure("non-numeric score for " + label);
    scores.emplace(label, v.get<double>());
  }
  try {
    return ClassDistribution(std::move(scores));
  } catch (const std::invalid_argument& e) {
    throw ClassifierFailure(e.what());
  }
}

}  // namespace edgefuse::classify
