#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"

namespace testing {

/// Chat-completion endpoint on 127.0.0.1. `reply` maps a request count (1-based) and
/// the prompt to an HTTP status and a message content.
class StubJudge {
public:
  using Reply = std::function<std::pair<int, std::string>(int call, const std::string& prompt)>;

  explicit StubJudge(Reply reply) : reply_(std::move(reply)) {
    server_.Post("/v1/chat", [this](const httplib::Request& req, httplib::Response& res) {
      const int call = ++calls_;
      {
        std::lock_guard lock(mutex_);
        auth_.push_back(req.get_header_value("Authorization"));
      }
      const auto body = nlohmann::json::parse(req.body);
      const auto prompt = body["messages"][0]["content"].get<std::string>();
      {
        std::lock_guard lock(mutex_);
        prompts_.push_back(prompt);
      }
      const auto [status, content] = reply_(call, prompt);
      res.status = status;
      if (status == 200) {
        const nlohmann::json out{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
        res.set_content(out.dump(), "application/json");
      } else {
        res.set_content(content, "text/plain");
      }
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubJudge() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat"; }
  int calls() const { return calls_; }
  std::vector<std::string> prompts() const {
    std::lock_guard lock(mutex_);
    return prompts_;
  }
  std::vector<std::string> auth() const {
    std::lock_guard lock(mutex_);
    return auth_;
  }

private:
  Reply reply_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> calls_{0};
  mutable std::mutex mutex_;
  std::vector<std::string> prompts_;
  std::vector<std::string> auth_;
};

} // namespace testing
