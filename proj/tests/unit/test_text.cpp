#include "doctest.h"

#include <set>

#include "innov/textlab/ngram.hpp"
#include "innov/textlab/text.hpp"
#include "support.hpp"

using namespace innov;
using namespace innov::textlab;

TEST_CASE("normalization lowercases and strips punctuation") {
  using V = std::vector<std::string>;
  CHECK(normalize_words("Great phone!!!") == V{"great", "phone"});
  CHECK(normalize_words("  Don't   waste\tmoney. ") == V{"dont", "waste", "money"});
  CHECK(normalize_words("Ünïcode «quotes» \u2014 dash") == V{"ünïcode", "quotes", "dash"});
  CHECK(normalize_words("a\xff" "b") == V{"ab"});
  CHECK(normalize_words("!!! ...").empty());
}

TEST_CASE("preprocess bounds sentence length") {
  Vocabulary vocab;
  CHECK_FALSE(preprocess("", vocab));
  CHECK_FALSE(preprocess("?!", vocab));
  std::string twenty, twentyone;
  for (int i = 0; i < 20; ++i) twenty += "w" + std::to_string(i) + " ";
  twentyone = twenty + "extra";
  CHECK(preprocess(twenty, vocab)->tokens.size() == 20);
  CHECK_FALSE(preprocess(twentyone, vocab));
}

TEST_CASE("preprocess is idempotent on its own output") {
  Vocabulary vocab;
  for (const char* s : {"Great phone!!!", "The burger is FRESH, and the screen was fresh!", "ok :)"}) {
    const auto once = preprocess(s, vocab);
    REQUIRE(once);
    const auto twice = preprocess(once->raw, vocab);
    REQUIRE(twice);
    CHECK(twice->tokens == once->tokens);
    CHECK(twice->raw == once->raw);
  }
}

TEST_CASE("vocabulary interns words after the sentinels") {
  Vocabulary v;
  CHECK(v.size() == 2);
  const auto a = v.intern("a");
  CHECK(a == 2);
  CHECK(v.intern("a") == a);
  CHECK(v.find("b") == std::nullopt);
  CHECK(v.join({Vocabulary::kBos, a, v.intern("b"), Vocabulary::kEos}) == "a b");
}

TEST_CASE("bigram maximum likelihood on a single sentence") {
  Vocabulary vocab;
  const std::vector<Sentence> corpus{*preprocess("a b", vocab)};
  const auto m = train_ngram(corpus, 2);
  const auto a = *vocab.find("a"), b = *vocab.find("b");
  CHECK(m.probability({Vocabulary::kBos}, a) == 1.0);
  CHECK(m.probability({a}, b) == 1.0);
  CHECK(m.probability({b}, Vocabulary::kEos) == 1.0);
  CHECK(m.probability({Vocabulary::kEos}, a) == 0.0);
  Rng rng(1);
  CHECK(generate(m, vocab, rng).raw == "a b");
}

TEST_CASE("ngram order validation and max_len") {
  CHECK_THROWS_AS(NgramModel(1), PreconditionError);
  CHECK_THROWS_AS(NgramModel(8), PreconditionError);
  CHECK_THROWS(train_ngram(std::vector<Sentence>{}, 2));
  Vocabulary vocab;
  const std::vector<Sentence> corpus{*preprocess("go go go go go go", vocab)};
  const auto m = train_ngram(corpus, 2);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) CHECK(m.sample(rng, 4).size() <= 4);
}

TEST_CASE("generation is deterministic for a fixed seed") {
  Vocabulary vocab;
  const auto corpus = load_corpus(std::string(DATA_DIR) + "/reviews.txt", vocab);
  const auto m = train_ngram(corpus, 3);
  Rng a(5), b(5);
  for (int i = 0; i < 20; ++i) CHECK(generate(m, vocab, a).raw == generate(m, vocab, b).raw);
  CHECK_THROWS_AS(load_corpus("/nonexistent/reviews.txt", vocab), IoError);
}

TEST_CASE("low-order models innovate more than high-order ones") {
  Vocabulary vocab;
  const auto corpus = load_corpus(std::string(DATA_DIR) + "/reviews.txt", vocab);
  REQUIRE(corpus.size() > 1000);
  std::set<TokenSeq> training;
  for (const auto& s : corpus) training.insert(s.tokens);
  auto rate = [&](std::size_t n) {
    const auto m = train_ngram(corpus, n);
    auto rng = derive_rng(1, {n});
    std::vector<TokenSeq> gens;
    for (int i = 0; i < 500; ++i) gens.push_back(m.sample(rng));
    return empirical_innovation_rate(gens, training);
  };
  const double r2 = rate(2), r7 = rate(7);
  CHECK(r2 > r7);
  CHECK(r2 > 0.5);
}
