#pragma once

// Sentence normalization and word interning.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "innov/measures.hpp"

namespace innov::textlab {

inline constexpr std::size_t kMaxSentenceTokens = 20;

/// Word <-> id table. Ids 0 and 1 are the BOS and EOS sentinels.
class Vocabulary {
public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;

  Vocabulary();

  TokenId intern(std::string_view word);
  std::optional<TokenId> find(std::string_view word) const;
  const std::string& word(TokenId id) const;
  std::size_t size() const { return words_.size(); }

  /// Words joined by single spaces; sentinels are skipped.
  std::string join(const TokenSeq& tokens) const;

private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TokenId> ids_;
};

struct Sentence {
  TokenSeq tokens;
  std::string raw;

  bool operator==(const Sentence&) const = default;
};

/// Lowercased words of `text` with punctuation removed. Punctuation is any code point in
/// a Unicode P* category plus the ASCII symbols; invalid UTF-8 bytes are dropped.
std::vector<std::string> normalize_words(std::string_view text);

/// Absent when the normalized text has no words or more than kMaxSentenceTokens.
std::optional<Sentence> preprocess(std::string_view text, Vocabulary& vocab);

/// Reads newline-delimited text and keeps the lines that survive preprocess.
std::vector<Sentence> load_corpus(const std::string& path, Vocabulary& vocab);

} // namespace innov::textlab
