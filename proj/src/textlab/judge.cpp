#include "innov/textlab/judge.hpp"

#include <cstdlib>
#include <mutex>
#include <regex>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"

#include "innov/parallel.hpp"

namespace innov::textlab {

std::string judge_prompt(std::string_view text) {
  if (text.empty()) throw PreconditionError("judge_prompt: empty text");
  std::string out =
      "Is the following text a review? Respond with a 1 if it is, or with a 0 if it isn't. ⟨BEGIN TEXT⟩ ";
  out += text;
  out += " ⟨END TEXT⟩";
  return out;
}

int parse_verdict(std::string_view reply) {
  auto pos = reply.find_first_of("01");
  if (pos == std::string_view::npos) throw UnparseableVerdict(std::string(reply));
  return reply[pos] - '0';
}

namespace {

struct Endpoint {
  std::string origin;
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw PreconditionError("malformed judge endpoint '" + url + "'");
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

std::mutex debug_mutex;

void debug_log(const JudgeConfig& config, std::string_view label, std::string_view body) {
  if (!config.debug_http) return;
  std::lock_guard lock(debug_mutex);
  *config.debug_http << "[http " << label << "] " << body << '\n';
}

} // namespace

int remote_judge(const JudgeConfig& config, std::string_view text) {
  if (config.model.empty()) throw PreconditionError("remote judge needs a model name");
  const char* key = std::getenv(config.api_key_env.c_str());
  if (!key || !*key) throw AuthError("environment variable " + config.api_key_env + " is not set");
  const auto [origin, path] = split_endpoint(config.endpoint);

  const nlohmann::json request{{"model", config.model},
                               {"temperature", 0},
                               {"messages", {{{"role", "user"}, {"content", judge_prompt(text)}}}}};
  const std::string body = request.dump();

  httplib::Client client(origin);
  client.set_connection_timeout(config.timeout);
  client.set_read_timeout(config.timeout);
  client.set_write_timeout(config.timeout);
  client.set_bearer_token_auth(key);

  std::string last_error = "no attempt made";
  auto wait = config.backoff;
  for (int attempt = 1; attempt <= std::max(1, config.attempts); ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(wait);
      wait *= 2;
    }
    debug_log(config, "request", body);
    auto res = client.Post(path, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    debug_log(config, "response " + std::to_string(res->status), res->body);
    if (res->status == 401 || res->status == 403)
      throw AuthError("judge endpoint rejected credentials (HTTP " + std::to_string(res->status) + ")");
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw NetworkError("judge endpoint returned HTTP " + std::to_string(res->status));
    std::string content;
    try {
      content = nlohmann::json::parse(res->body).at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw UnparseableVerdict(res->body);
    }
    return parse_verdict(content);
  }
  throw NetworkError("judge request failed after " + std::to_string(config.attempts) + " attempts: " + last_error);
}

std::vector<JudgeOutcome> remote_judge_all(const JudgeConfig& config, const std::vector<std::string>& texts,
                                           const std::function<void(std::size_t, const JudgeOutcome&)>& on_done) {
  std::vector<JudgeOutcome> out(texts.size());
  const unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, config.max_in_flight));
  parallel_for(texts.size(), workers, [&](std::size_t i, unsigned) {
    try {
      out[i].verdict = remote_judge(config, texts[i]);
    } catch (const UnparseableVerdict& e) {
      out[i].error = e.what();
      out[i].unparseable = true;
    } catch (const AuthError&) {
      throw;
    } catch (const Error& e) {
      out[i].error = e.what();
    }
    if (on_done) on_done(i, out[i]);
  });
  return out;
}

} // namespace innov::textlab
