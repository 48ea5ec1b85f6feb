#include "innov/textlab/labels.hpp"

#include <chrono>
#include <ctime>
#include <unordered_set>

#include "innov/error.hpp"
#include "json.hpp"

namespace innov::textlab {

std::string to_jsonl(const LabelRecord& r) {
  nlohmann::ordered_json j;
  j["text"] = r.text;
  j["judge"] = r.judge;
  j["verdict"] = r.verdict;
  j["ts"] = r.ts;
  j["dup"] = r.dup;
  return j.dump();
}

LabelRecord label_from_jsonl(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  LabelRecord r{j.at("text").get<std::string>(), j.at("judge").get<std::string>(), j.at("verdict").get<int>(),
                j.at("ts").get<std::string>(), j.at("dup").get<bool>()};
  if (r.verdict != 0 && r.verdict != 1) throw PreconditionError("verdict must be 0 or 1");
  return r;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

LabelStore::LabelStore(std::filesystem::path path) : path_(std::move(path)) {
  std::uintmax_t valid_bytes = 0;
  if (std::filesystem::exists(path_)) {
    std::ifstream in(path_, std::ios::binary);
    if (!in) throw IoError("cannot read label store " + path_.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t start = 0, line_no = 0;
    while (start < content.size()) {
      ++line_no;
      const auto end = content.find('\n', start);
      const bool complete = end != std::string::npos;
      const std::string line = content.substr(start, complete ? end - start : std::string::npos);
      try {
        records_.push_back(label_from_jsonl(line));
      } catch (const std::exception& e) {
        if (!complete) break;
        throw IoError(path_.string() + ":" + std::to_string(line_no) + ": malformed label record: " + e.what());
      }
      if (!complete) {
        // A record without its newline: keep it and terminate the line.
        content.push_back('\n');
        std::ofstream fix(path_, std::ios::binary | std::ios::app);
        fix << '\n';
        valid_bytes = content.size();
        break;
      }
      start = end + 1;
      valid_bytes = start;
    }
    if (valid_bytes < content.size()) std::filesystem::resize_file(path_, valid_bytes);
  }
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw IoError("cannot open label store " + path_.string());
}

std::optional<int> LabelStore::verdict(const std::string& text, const std::string& judge) const {
  for (auto it = records_.rbegin(); it != records_.rend(); ++it)
    if (it->text == text && it->judge == judge) return it->verdict;
  return std::nullopt;
}

void LabelStore::append(const LabelRecord& record) {
  std::lock_guard lock(mutex_);
  out_ << to_jsonl(record) << '\n';
  out_.flush();
  if (!out_) throw IoError("write to label store " + path_.string() + " failed");
  records_.push_back(record);
}

std::optional<double> LabelStats::rate() const {
  if (labeled == 0) return std::nullopt;
  return static_cast<double>(zeros) / static_cast<double>(labeled);
}

LabelStats interactive_label(const std::vector<LabelItem>& items, LabelStore& store, std::istream& in,
                             std::ostream& out, const std::string& judge) {
  LabelStats stats;
  std::unordered_set<std::string> seen;
  std::size_t position = 0;
  bool stopped = false;
  for (const auto& item : items) {
    ++position;
    if (item.dup_of_training) {
      ++stats.skipped_training;
      continue;
    }
    if (!seen.insert(item.text).second) {
      ++stats.skipped_duplicates;
      continue;
    }
    auto verdict = store.verdict(item.text, judge);
    if (!verdict && !stopped) {
      out << "[" << position << "/" << items.size() << "] " << item.text << "\n";
      std::string line;
      while (true) {
        out << "review? 1 = yes, 0 = no, q = quit > " << std::flush;
        if (!std::getline(in, line) || line == "q") {
          stopped = true;
          break;
        }
        if (line == "0" || line == "1") break;
        out << "please type 0, 1 or q\n";
      }
      if (!stopped) {
        verdict = line[0] - '0';
        store.append({item.text, judge, *verdict, utc_timestamp(), false});
      }
    }
    if (verdict) {
      ++stats.labeled;
      stats.zeros += *verdict == 0;
    }
  }
  stats.finished = !stopped;
  return stats;
}

} // namespace innov::textlab
