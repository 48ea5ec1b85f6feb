#pragma once

// Append-only JSONL label store and the terminal labeling loop.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace innov::textlab {

struct LabelRecord {
  std::string text;
  std::string judge; ///< "human" or a model name
  int verdict = 0;   ///< 1 = a review, 0 = not a review
  std::string ts;    ///< UTC, ISO 8601
  bool dup = false;  ///< the text occurs verbatim in the training data

  bool operator==(const LabelRecord&) const = default;
};

std::string to_jsonl(const LabelRecord& r);
LabelRecord label_from_jsonl(const std::string& line);

std::string utc_timestamp();

/// Records are appended one line at a time and flushed. On open, a trailing line that
/// was cut short by an interrupted write is dropped and truncated away; any other
/// malformed line is an IoError naming the line.
class LabelStore {
public:
  explicit LabelStore(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  const std::vector<LabelRecord>& records() const { return records_; }
  std::optional<int> verdict(const std::string& text, const std::string& judge) const;
  void append(const LabelRecord& record);

private:
  std::filesystem::path path_;
  std::vector<LabelRecord> records_;
  std::ofstream out_;
  std::mutex mutex_;
};

struct LabelItem {
  std::string text;
  bool dup_of_training = false;
};

struct LabelStats {
  std::size_t labeled = 0; ///< statements with a verdict from this judge, including earlier sessions
  std::size_t zeros = 0;
  std::size_t skipped_training = 0;
  std::size_t skipped_duplicates = 0;
  bool finished = true; ///< false when the session was quit or input ended early
  /// Share labeled 0; absent when nothing is labeled.
  std::optional<double> rate() const;
};

/// Presents each statement not yet labeled by `judge`, reading one "0" or "1" line per
/// statement from `in`. Training duplicates and repeats of an earlier statement are
/// skipped. "q" or end of input stops the session; it can be resumed later.
LabelStats interactive_label(const std::vector<LabelItem>& items, LabelStore& store, std::istream& in,
                             std::ostream& out, const std::string& judge = "human");

} // namespace innov::textlab
