#include "innov/textlab/text.hpp"

#include <cctype>
#include <fstream>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace innov::textlab {

Vocabulary::Vocabulary() {
  intern("<s>");
  intern("</s>");
}

TokenId Vocabulary::intern(std::string_view word) {
  auto [it, inserted] = ids_.try_emplace(std::string(word), static_cast<TokenId>(words_.size()));
  if (inserted) words_.push_back(it->first);
  return it->second;
}

std::optional<TokenId> Vocabulary::find(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::word(TokenId id) const {
  if (id >= words_.size()) throw PreconditionError("unknown token id " + std::to_string(id));
  return words_[id];
}

std::string Vocabulary::join(const TokenSeq& tokens) const {
  std::string out;
  for (auto t : tokens) {
    if (t == kBos || t == kEos) continue;
    if (!out.empty()) out += ' ';
    out += word(t);
  }
  return out;
}

namespace {

bool is_punctuation(UChar32 c) {
  if (c < 0x80) return std::ispunct(static_cast<unsigned char>(c)) != 0;
  return u_ispunct(c) != 0;
}

} // namespace

std::vector<std::string> normalize_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto length = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) continue;
    if (u_isUWhiteSpace(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (is_punctuation(c)) continue;
    c = u_tolower(c);
    char buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, c);
    current.append(buf, static_cast<std::size_t>(n));
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

std::optional<Sentence> preprocess(std::string_view text, Vocabulary& vocab) {
  auto words = normalize_words(text);
  if (words.empty() || words.size() > kMaxSentenceTokens) return std::nullopt;
  Sentence out;
  for (const auto& w : words) {
    out.tokens.push_back(vocab.intern(w));
    if (!out.raw.empty()) out.raw += ' ';
    out.raw += w;
  }
  return out;
}

std::vector<Sentence> load_corpus(const std::string& path, Vocabulary& vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path);
  std::vector<Sentence> out;
  std::string line;
  while (std::getline(in, line))
    if (auto s = preprocess(line, vocab)) out.push_back(std::move(*s));
  return out;
}

} // namespace innov::textlab
