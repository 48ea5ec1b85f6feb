#pragma once

// Review-judging prompt, reply parsing, and an HTTP chat-completion judge.

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "innov/error.hpp"

namespace innov::textlab {

/// Prompt sent to every judge; `text` is substituted verbatim.
std::string judge_prompt(std::string_view text);

class UnparseableVerdict : public Error {
public:
  explicit UnparseableVerdict(std::string reply)
      : Error("unparseable verdict: \"" + reply + "\""), reply_(std::move(reply)) {}
  const std::string& reply() const { return reply_; }

private:
  std::string reply_;
};

class AuthError : public NetworkError {
public:
  using NetworkError::NetworkError;
};

/// The first literal '0' or '1' in the reply.
int parse_verdict(std::string_view reply);

struct JudgeConfig {
  std::string endpoint = "https://openrouter.ai/api/v1/chat/completions";
  std::string model;
  std::string api_key_env = "JUDGE_API_KEY";
  std::chrono::milliseconds timeout{30'000};
  std::size_t max_in_flight = 4;
  int attempts = 3;
  std::chrono::milliseconds backoff{500};
  /// Request and response bodies are written here when set.
  std::ostream* debug_http = nullptr;
};

/// Sends judge_prompt(text) to the configured endpoint and parses the reply. Transport
/// failures and 5xx/429 replies are retried with exponential backoff; 401/403 raise
/// AuthError at once.
int remote_judge(const JudgeConfig& config, std::string_view text);

struct JudgeOutcome {
  std::optional<int> verdict;
  std::string error;        ///< set when verdict is absent
  bool unparseable = false; ///< the endpoint answered but without a 0/1
};

/// Judges every text with at most config.max_in_flight concurrent requests. Errors are
/// reported per text; results keep input order. `on_done` is called from worker threads
/// as each text finishes. AuthError aborts the batch.
std::vector<JudgeOutcome> remote_judge_all(
    const JudgeConfig& config, const std::vector<std::string>& texts,
    const std::function<void(std::size_t, const JudgeOutcome&)>& on_done = {});

} // namespace innov::textlab
