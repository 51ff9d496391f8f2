// Copyright 2026 The seqtail Authors
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

#include "seqtail/blackbox.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <sstream>

#include "seqtail/csv.hpp"

namespace seqtail {

namespace {

// Runs `sh -c command`, writes `input` to its stdin, collects stdout.
// Returns the exit status; throws EvaluationError on timeout.
int run_command(const std::string& command, const std::string& input, double timeout_s,
                std::string& output) {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw EvaluationError("black box: pipe() failed: " + std::string(std::strerror(errno)));
  }
  pid_t pid = fork();
  if (pid < 0) {
    throw EvaluationError("black box: fork() failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // The protocol input is one short line; writing it before reading cannot
  // deadlock against a pipe buffer.
  ssize_t off = 0;
  while (off < static_cast<ssize_t>(input.size())) {
    ssize_t w = write(in_pipe[1], input.data() + off, input.size() - off);
    if (w < 0) {
      if (errno == EINTR) continue;
      break;  // child may have exited without reading; the exit status decides
    }
    off += w;
  }
  close(in_pipe[1]);

  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
  output.clear();
  char buf[4096];
  bool timed_out = false;
  for (;;) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                         deadline - std::chrono::steady_clock::now())
                         .count();
    if (remaining <= 0) {
      timed_out = true;
      break;
    }
    struct pollfd pfd{out_pipe[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(remaining));
    if (pr < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (pr == 0) {
      timed_out = true;
      break;
    }
    ssize_t r = read(out_pipe[0], buf, sizeof(buf));
    if (r < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (r == 0) break;  // EOF
    output.append(buf, static_cast<std::size_t>(r));
  }
  close(out_pipe[0]);

  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    throw EvaluationError("black box: command timed out after " + format_number(timeout_s) +
                          " s: " + command);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

}  // namespace

BlackBox make_function_blackbox(std::function<double(const Vector&)> fn, Index dim,
                                std::string description) {
  return BlackBox{std::move(fn), dim, std::move(description)};
}

BlackBox make_external_blackbox(const std::string& command, Index dim, double timeout_s) {
  if (command.empty()) throw std::invalid_argument("external black box: empty command");
  auto fn = [command, dim, timeout_s](const Vector& x) -> double {
    std::ostringstream line;
    for (Index j = 0; j < dim; ++j) {
      if (j > 0) line << ',';
      line << format_number(x(j));
    }
    line << '\n';
    std::string out;
    int status = run_command(command, line.str(), timeout_s, out);
    if (status != 0) {
      throw EvaluationError("black box: command exited with status " + std::to_string(status) +
                            ": " + command);
    }
    try {
      std::size_t pos = 0;
      double v = std::stod(out, &pos);
      return v;
    } catch (const std::exception&) {
      throw EvaluationError("black box: unparsable output '" + out + "' from: " + command);
    }
  };
  return BlackBox{std::move(fn), dim, "external:" + command};
}

double evaluate(const BlackBox& box, const Vector& x) {
  if (x.size() != box.dim) {
    throw EvaluationError("black box: input dimension " + std::to_string(x.size()) +
                          " does not match " + std::to_string(box.dim));
  }
  if (!x.allFinite()) throw EvaluationError("black box: non-finite input");
  double y = box.fn(x);
  if (!std::isfinite(y)) {
    throw EvaluationError("black box: non-finite output from " + box.description);
  }
  return y;
}

}  // namespace seqtail
