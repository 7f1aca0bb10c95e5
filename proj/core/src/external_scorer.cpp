#include "lmgec/external_scorer.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>

#include <nlohmann/json.hpp>

#include "lmgec/error.hpp"

extern char** environ;

namespace lmgec {

namespace {

using json = nlohmann::json;

void write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ScorerUnavailable(std::string("write to scorer failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

void ignore_sigpipe() {
  static const bool once = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

}  // namespace

std::string encode_request(const ScoreRequest& request) {
  json j = {{"id", request.id}, {"tokens", request.tokens}};
  return j.dump() + "\n";
}

ScoreResponse decode_response(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ScorerError(std::string("malformed scorer response: ") + e.what());
  }
  if (!j.is_object() || !j.contains("id") || !j["id"].is_number_integer()) {
    throw ScorerError("scorer response lacks an integer id: " + std::string(line));
  }
  ScoreResponse r;
  if (j["id"].is_number_unsigned()) {
    r.id = j["id"].get<std::uint64_t>();
  } else {
    const auto signed_id = j["id"].get<std::int64_t>();
    if (signed_id < 0) throw ScorerError("scorer reported an unroutable error: " + j.dump());
    r.id = static_cast<std::uint64_t>(signed_id);
  }
  if (j.contains("error")) {
    r.error = j["error"].is_string() ? j["error"].get<std::string>() : j["error"].dump();
  } else if (j.contains("logprob") && j["logprob"].is_number()) {
    r.logprob = j["logprob"].get<double>();
  } else {
    throw ScorerError("scorer response has neither logprob nor error: " + std::string(line));
  }
  return r;
}

ExternalScorer::ExternalScorer(int read_fd, int write_fd, pid_t child, std::string description,
                               const ExternalOptions& options)
    : read_fd_(read_fd),
      write_fd_(write_fd),
      child_(child),
      description_(std::move(description)),
      timeout_(options.timeout_seconds) {
  reader_ = std::thread([this] { reader_loop(); });
}

ExternalScorer::~ExternalScorer() {
  if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
  if (read_fd_ >= 0 && read_fd_ == write_fd_) ::shutdown(read_fd_, SHUT_RDWR);
  if (child_ > 0) {
    // Closing stdin asks the child to exit; don't wait forever on it.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(child_, nullptr, WNOHANG) == child_) {
        child_ = -1;
        break;
      }
      ::usleep(10000);
    }
    if (child_ > 0) {
      ::kill(child_, SIGKILL);
      ::waitpid(child_, nullptr, 0);
    }
  }
  if (reader_.joinable()) reader_.join();
  if (read_fd_ >= 0) ::close(read_fd_);
}

std::unique_ptr<ExternalScorer> ExternalScorer::spawn(const std::vector<std::string>& argv,
                                                      const ExternalOptions& options) {
  if (argv.empty()) throw InputError("external scorer command is empty");
  ignore_sigpipe();
  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0 || ::pipe2(from_child, O_CLOEXEC) != 0) {
    throw ScorerUnavailable(std::string("pipe: ") + std::strerror(errno));
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);

  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  pid_t pid = -1;
  const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(to_child[0]);
  ::close(from_child[1]);
  if (rc != 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    throw ScorerUnavailable("cannot spawn scorer '" + argv[0] + "': " + std::strerror(rc));
  }
  std::string desc = "external(cmd:";
  for (const auto& a : argv) desc += " " + a;
  desc += ")";
  std::unique_ptr<ExternalScorer> scorer(
      new ExternalScorer(from_child[0], to_child[1], pid, std::move(desc), options));
  scorer->ping();
  return scorer;
}

std::unique_ptr<ExternalScorer> ExternalScorer::connect(const std::string& host, unsigned short port,
                                                        const ExternalOptions& options) {
  ignore_sigpipe();
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port_text = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), port_text.c_str(), &hints, &res); rc != 0) {
    throw ScorerUnavailable("cannot resolve '" + host + "': " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* p = res; p; p = p->ai_next) {
    fd = ::socket(p->ai_family, p->ai_socktype | SOCK_CLOEXEC, p->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw ScorerUnavailable("cannot connect to scorer at " + host + ":" + port_text);
  std::unique_ptr<ExternalScorer> scorer(
      new ExternalScorer(fd, fd, -1, "external(tcp:" + host + ":" + port_text + ")", options));
  scorer->ping();
  return scorer;
}

void ExternalScorer::reader_loop() {
  std::string buffer;
  char chunk[4096];
  while (true) {
    ssize_t n = ::read(read_fd_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      ScoreResponse r;
      try {
        r = decode_response(line);
      } catch (const ScorerError&) {
        // Unroutable garbage; whoever is waiting will time out or see EOF.
        continue;
      }
      std::lock_guard lock(mutex_);
      auto it = pending_.find(r.id);
      if (it == pending_.end() || it->second.done) continue;
      it->second.done = true;
      it->second.response = std::move(r);
      cv_.notify_all();
    }
  }
  fail_all("scorer closed its output");
}

void ExternalScorer::fail_all(const std::string& reason) {
  std::lock_guard lock(mutex_);
  if (!broken_) broken_ = reason;
  cv_.notify_all();
}

std::uint64_t ExternalScorer::send(const std::vector<std::string>& tokens, bool ping) {
  std::uint64_t id = 0;
  {
    std::lock_guard lock(mutex_);
    if (broken_) throw ScorerUnavailable(*broken_);
    id = ping ? 0 : next_id_++;
    pending_[id] = Pending{};
  }
  const std::string line = encode_request(ScoreRequest{id, tokens});
  try {
    std::lock_guard lock(write_mutex_);
    write_all(write_fd_, line);
  } catch (...) {
    std::lock_guard lock(mutex_);
    pending_.erase(id);
    throw;
  }
  return id;
}

double ExternalScorer::await(std::uint64_t id) {
  std::unique_lock lock(mutex_);
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(timeout_);
  auto ready = [&] { return pending_.at(id).done || broken_.has_value(); };
  if (!cv_.wait_until(lock, deadline, ready)) {
    pending_.erase(id);
    throw ScorerUnavailable("scorer timed out on request " + std::to_string(id));
  }
  Pending p = std::move(pending_.at(id));
  pending_.erase(id);
  if (!p.done) throw ScorerUnavailable(*broken_);
  if (p.response.error) throw ScorerError("scorer error for request " + std::to_string(id) + ": " + *p.response.error);
  const double v = *p.response.logprob;
  if (!std::isfinite(v)) throw ScorerError("scorer returned a non-finite logprob");
  return v;
}

void ExternalScorer::ping() {
  const double v = await(send({}, true));
  if (v != 0.0) throw ScorerUnavailable("scorer health ping returned " + std::to_string(v));
}

double ExternalScorer::score(const Sentence& s) { return await(send(s.words())); }

std::vector<double> ExternalScorer::score_batch(std::span<const Sentence> sentences) {
  std::vector<std::uint64_t> ids;
  ids.reserve(sentences.size());
  for (const auto& s : sentences) ids.push_back(send(s.words()));
  std::vector<double> out(sentences.size());
  std::optional<BatchError> first_error;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    try {
      out[i] = await(ids[i]);
    } catch (const ScorerUnavailable&) {
      std::lock_guard lock(mutex_);
      for (std::size_t j = i + 1; j < ids.size(); ++j) pending_.erase(ids[j]);
      throw;
    } catch (const ScorerError& e) {
      if (!first_error) first_error.emplace(i, e.what());
    }
  }
  if (first_error) throw *first_error;
  return out;
}

}  // namespace lmgec
