#pragma once

#include <sys/types.h>

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "lmgec/scorer.hpp"

namespace lmgec {

/// Wire messages of the NDJSON scoring protocol.
struct ScoreRequest {
  std::uint64_t id = 0;
  std::vector<std::string> tokens;
};

struct ScoreResponse {
  std::uint64_t id = 0;
  std::optional<double> logprob;
  std::optional<std::string> error;
};

std::string encode_request(const ScoreRequest& request);
/// Throws ScorerError when the line is not a valid response object.
ScoreResponse decode_response(std::string_view line);

/// Client for an external scorer speaking NDJSON over a subprocess's
/// stdin/stdout or a TCP socket. Writes are serialized; a reader thread
/// routes responses to waiting callers by id, so several requests may be
/// in flight and answered in any order.
class ExternalScorer final : public Scorer {
 public:
  /// Spawns argv[0] (PATH lookup) and sends a health ping.
  static std::unique_ptr<ExternalScorer> spawn(const std::vector<std::string>& argv,
                                               const ExternalOptions& options = {});
  static std::unique_ptr<ExternalScorer> connect(const std::string& host, unsigned short port,
                                                 const ExternalOptions& options = {});

  ~ExternalScorer() override;
  ExternalScorer(const ExternalScorer&) = delete;
  ExternalScorer& operator=(const ExternalScorer&) = delete;

  double score(const Sentence& s) override;
  /// All requests are written before any response is awaited.
  std::vector<double> score_batch(std::span<const Sentence> sentences) override;
  std::string describe() const override { return description_; }

  /// Sends {"id":0,"tokens":[]} and checks for logprob 0.
  void ping();

 private:
  struct Pending {
    bool done = false;
    ScoreResponse response;
  };

  ExternalScorer(int read_fd, int write_fd, pid_t child, std::string description,
                 const ExternalOptions& options);

  std::uint64_t send(const std::vector<std::string>& tokens, bool ping = false);
  double await(std::uint64_t id);
  void reader_loop();
  void fail_all(const std::string& reason);

  int read_fd_ = -1;
  int write_fd_ = -1;
  pid_t child_ = -1;
  std::string description_;
  std::chrono::duration<double> timeout_;

  std::mutex write_mutex_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::map<std::uint64_t, Pending> pending_;
  std::uint64_t next_id_ = 1;
  std::optional<std::string> broken_;
  std::thread reader_;
};

}  // namespace lmgec
