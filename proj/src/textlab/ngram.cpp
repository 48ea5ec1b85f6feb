#include "innov/textlab/ngram.hpp"

namespace innov::textlab {

NgramModel::NgramModel(std::size_t order) : order_(order) {
  if (order < 2 || order > 7) throw PreconditionError("n-gram order must lie in [2, 7]");
}

void NgramModel::add(const TokenSeq& sentence) {
  Context context(order_ - 1, Vocabulary::kBos);
  auto push = [&](TokenId next) {
    ++table_[context][next];
    context.erase(context.begin());
    context.push_back(next);
  };
  for (auto t : sentence) push(t);
  push(Vocabulary::kEos);
}

const NgramModel::NextCounts* NgramModel::next_counts(const Context& context) const {
  auto it = table_.find(context);
  return it == table_.end() ? nullptr : &it->second;
}

double NgramModel::probability(const Context& context, TokenId next) const {
  const auto* counts = next_counts(context);
  if (!counts) return 0.0;
  std::uint64_t total = 0, hit = 0;
  for (const auto& [t, c] : *counts) {
    total += c;
    if (t == next) hit = c;
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

TokenSeq NgramModel::sample(Rng& rng, std::size_t max_len) const {
  TokenSeq out;
  Context context(order_ - 1, Vocabulary::kBos);
  while (out.size() < max_len) {
    const auto* counts = next_counts(context);
    if (!counts) break;
    std::uint64_t total = 0;
    for (const auto& [t, c] : *counts) total += c;
    std::uint64_t pick = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
    TokenId next = Vocabulary::kEos;
    for (const auto& [t, c] : *counts) {
      if (pick < c) {
        next = t;
        break;
      }
      pick -= c;
    }
    if (next == Vocabulary::kEos) break;
    out.push_back(next);
    context.erase(context.begin());
    context.push_back(next);
  }
  return out;
}

NgramModel train_ngram(std::span<const Sentence> sentences, std::size_t order) {
  NgramModel model(order);
  if (sentences.empty()) throw PreconditionError("cannot train an n-gram model on an empty corpus");
  for (const auto& s : sentences) model.add(s.tokens);
  return model;
}

Sentence generate(const NgramModel& model, const Vocabulary& vocab, Rng& rng, std::size_t max_len) {
  Sentence out;
  out.tokens = model.sample(rng, max_len);
  out.raw = vocab.join(out.tokens);
  return out;
}

} // namespace innov::textlab
