#pragma once

#include <exception>
#include <filesystem>
#include <functional>
#include <iosfwd>

#include "json.hpp"

namespace innov::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kIoError = 3, kNetworkError = 4 };

/// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

int cmd_verify(const nlohmann::json& config, const std::filesystem::path& out, Streams io);
int cmd_ngram(const nlohmann::json& config, const std::filesystem::path& out, Streams io);
int cmd_judge(const nlohmann::json& config, const std::filesystem::path& out, Streams io);
int cmd_report(const nlohmann::json& config, const std::filesystem::path& out, Streams io);
int cmd_tuples(const nlohmann::json& config, const std::filesystem::path& out, Streams io);

/// Runs `fn`, mapping escaping exceptions to exit codes and printing them to io.err.
int guarded(const std::function<int()>& fn, Streams io);

} // namespace innov::cli
