#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include "innov/rng.hpp"
#include "innov/textlab/text.hpp"

namespace innov::textlab {

/// Unsmoothed maximum-likelihood n-gram model. Sentences are padded with n-1 BOS tokens
/// and one EOS token. Ordered maps keep sampling reproducible for a fixed seed.
class NgramModel {
public:
  using Context = TokenSeq;
  using NextCounts = std::map<TokenId, std::uint64_t>;

  explicit NgramModel(std::size_t order);

  std::size_t order() const { return order_; }
  void add(const TokenSeq& sentence);

  const NextCounts* next_counts(const Context& context) const;
  /// count(context, next) / count(context); 0 for an unseen context.
  double probability(const Context& context, TokenId next) const;
  std::size_t n_contexts() const { return table_.size(); }

  /// Ancestral sampling from the all-BOS context. Stops at EOS or after max_len tokens.
  TokenSeq sample(Rng& rng, std::size_t max_len = kMaxSentenceTokens) const;

private:
  std::size_t order_;
  std::map<Context, NextCounts> table_;
};

NgramModel train_ngram(std::span<const Sentence> sentences, std::size_t order);

Sentence generate(const NgramModel& model, const Vocabulary& vocab, Rng& rng,
                  std::size_t max_len = kMaxSentenceTokens);

} // namespace innov::textlab
