#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "innov/worlds.hpp"
#include "support.hpp"

using namespace innov;

namespace {

MetaSpec uniform_meta(std::size_t n, std::size_t k) {
  MetaSpec m;
  m.n_statements = n;
  m.k_max = k;
  return m;
}

struct RejectionEstimate {
  std::size_t accepted = 0;
  std::vector<double> fact_freq;
  std::vector<double> mean_mass;
  std::vector<double> mass_sq;
};

/// Draws (world, corpus) pairs from the prior and keeps worlds whose corpus equals the target.
RejectionEstimate rejection(const MetaSpec& meta, const Corpus& target, std::size_t draws, std::uint64_t seed) {
  Rng rng(seed);
  RejectionEstimate r;
  const auto n = meta.n_statements;
  r.fact_freq.assign(n, 0);
  r.mean_mass.assign(n, 0);
  r.mass_sq.assign(n, 0);
  for (std::size_t i = 0; i < draws; ++i) {
    const auto w = sample_world(meta, rng);
    if (!(sample_corpus(w, target.n(), rng) == target)) continue;
    ++r.accepted;
    for (std::size_t y = 0; y < n; ++y) {
      r.fact_freq[y] += w.is_fact(y);
      r.mean_mass[y] += w.dist[y];
      r.mass_sq[y] += w.dist[y] * w.dist[y];
    }
  }
  return r;
}

} // namespace

TEST_CASE("meta spec validation and json") {
  auto m = uniform_meta(12, 3);
  CHECK_NOTHROW(m.validate());
  CHECK_FALSE(m.sparsity_warning());
  CHECK(uniform_meta(10, 3).sparsity_warning());
  CHECK_THROWS_AS(uniform_meta(3, 3).validate(), PreconditionError);
  CHECK_THROWS_AS(uniform_meta(3, 0).validate(), PreconditionError);
  m.alpha = 0.0;
  CHECK_THROWS_AS(m.validate(), PreconditionError);

  const auto w = MetaSpec::two_class(8, 2, 2.0);
  nlohmann::json j = w;
  const auto back = meta_from_json(j);
  CHECK(back.support_prior == SupportPrior::weighted);
  CHECK(back.weights == w.weights);
  CHECK(w.weights[0] == 2.0);
  CHECK(w.weights[7] == 1.0);
  const auto rho = meta_from_json({{"n_statements", 8}, {"k_max", 2}, {"support_prior", "weighted-subsets"}, {"rho", 3.0}});
  CHECK(rho.weights[3] == 3.0);
  CHECK(rho.weights[4] == 1.0);
  CHECK_THROWS_AS(meta_from_json({{"n_statements", 8}, {"k_max", 2}, {"support_prior", "zipf"}}), PreconditionError);
}

TEST_CASE("sampled worlds respect the support prior") {
  Rng rng(1);
  auto exact = uniform_meta(12, 4);
  auto mixed = exact;
  mixed.support_size = SupportSize::mixed;
  auto fixed = exact;
  fixed.support_prior = SupportPrior::fixed_size;
  fixed.fixed_size = 2;
  std::vector<int> sizes(5, 0);
  for (int i = 0; i < 2000; ++i) {
    const auto w = sample_world(exact, rng);
    CHECK(w.facts.size() == 4);
    CHECK(std::is_sorted(w.facts.begin(), w.facts.end()));
    for (auto y : w.facts) CHECK(w.dist[y] > 0.0);
    CHECK(sample_world(fixed, rng).facts.size() == 2);
    ++sizes[sample_world(mixed, rng).facts.size()];
  }
  CHECK(sizes[0] == 0);
  for (int s = 1; s <= 4; ++s) CHECK(std::abs(sizes[s] - 500) < 4 * std::sqrt(2000 * 0.25 * 0.75));
}

TEST_CASE("uniform prior: every unseen statement equally likely to be a fact") {
  const auto meta = uniform_meta(10, 3);
  const Corpus corpus({2, 0, 1, 0, 0, 0, 0, 0, 0, 0});
  const auto post = exact_posterior(meta, corpus);
  CHECK(post.size() == testing::binom(8, 1));
  CHECK(candidate_count(meta, corpus) == doctest::Approx(8.0));
  for (auto y : corpus.unseen_set()) CHECK(post.fact_marginals()[y] == doctest::Approx(1.0 / 8).epsilon(1e-14));
  CHECK(post.fact_marginals()[0] == 1.0);
  CHECK(post.expected_fu() == doctest::Approx(1.0));
  CHECK(regularity_ratio(post).r == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mixed support sizes enumerate every admissible size") {
  auto meta = uniform_meta(7, 3);
  meta.support_size = SupportSize::mixed;
  const Corpus corpus({1, 0, 0, 0, 0, 0, 0});
  // Sizes 1..3 containing statement 0: C(6,0) + C(6,1) + C(6,2).
  CHECK(candidate_count(meta, corpus) == doctest::Approx(1 + 6 + 15));
  CHECK(exact_posterior(meta, corpus).size() == 22);
}

TEST_CASE("exact posterior agrees with rejection sampling") {
  SUBCASE("uniform") {
    const auto meta = uniform_meta(5, 2);
    const Corpus target({2, 0, 0, 0, 0});
    const auto post = exact_posterior(meta, target);
    const auto est = rejection(meta, target, 300000, 17);
    REQUIRE(est.accepted > 5000);
    const auto mean = posterior_mean_mass(post);
    for (std::size_t y = 0; y < 5; ++y) {
      const double f = est.fact_freq[y] / est.accepted, pf = post.fact_marginals()[y];
      CHECK(std::abs(f - pf) <= 4 * std::sqrt(pf * (1 - pf) / est.accepted) + 1e-12);
      const double m = est.mean_mass[y] / est.accepted;
      const double var = est.mass_sq[y] / est.accepted - m * m;
      CHECK(std::abs(m - mean[y]) <= 4 * std::sqrt(var / est.accepted) + 1e-12);
    }
  }
  SUBCASE("weighted") {
    const auto meta = MetaSpec::two_class(6, 2, 3.0);
    const Corpus target({0, 0, 0, 1, 0, 0});
    const auto post = exact_posterior(meta, target);
    const auto est = rejection(meta, target, 300000, 23);
    REQUIRE(est.accepted > 5000);
    for (std::size_t y = 0; y < 6; ++y) {
      const double f = est.fact_freq[y] / est.accepted, pf = post.fact_marginals()[y];
      CHECK(std::abs(f - pf) <= 4 * std::sqrt(pf * (1 - pf) / est.accepted) + 1e-12);
    }
    // Heavier statements are likelier facts, so r exceeds 1.
    CHECK(post.fact_marginals()[0] > post.fact_marginals()[5]);
    CHECK(regularity_ratio(post).r > 1.0);
  }
}

TEST_CASE("posterior errors") {
  const auto meta = uniform_meta(40, 6);
  std::vector<std::uint64_t> counts(40, 0);
  counts[0] = 1;
  const Corpus corpus(counts);
  CHECK_THROWS_AS(exact_posterior(meta, corpus, 100), PosteriorInfeasible);
  CHECK_THROWS_AS(exact_posterior(uniform_meta(5, 1), Corpus({1, 1, 0, 0, 0})), InconsistentCorpus);
  CHECK_THROWS_AS(exact_posterior(uniform_meta(5, 1), Corpus({0, 0, 0, 0, 0})), PreconditionError);
}

TEST_CASE("forced support: |O| = K leaves no unseen facts") {
  const auto post = exact_posterior(uniform_meta(6, 2), Corpus({1, 0, 3, 0, 0, 0}));
  CHECK(post.size() == 1);
  CHECK(post.expected_fu() == 0.0);
  const auto reg = regularity_ratio(post);
  CHECK(reg.degenerate);
  CHECK(reg.r == 1.0);
  CHECK(prob_hallucinate(Dist::point_mass(6, 1), post) == 1.0);
}

TEST_CASE("hallucination probabilities from marginals") {
  const auto meta = uniform_meta(8, 3);
  const Corpus corpus({1, 0, 0, 0, 0, 0, 0, 0});
  const auto post = exact_posterior(meta, corpus);
  // A spike on unseen y hallucinates exactly when y ∉ F.
  CHECK(prob_hallucinate(Dist::point_mass(8, 4), post) == doctest::Approx(1 - 2.0 / 7));
  const Dist g({0.5, 0.5 / 7, 0.5 / 7, 0.5 / 7, 0.5 / 7, 0.5 / 7, 0.5 / 7, 0.5 / 7});
  CHECK(expected_hallucination(g, post) == doctest::Approx(0.5 * (1 - 2.0 / 7)));
  // Spread over all of U: hallucinates unless every unseen statement is a fact, impossible here.
  CHECK(prob_hallucinate(g, post) == 1.0);
  CHECK(prob_hallucinate(Dist::point_mass(8, 0), post) == 0.0);
}

TEST_CASE("conditional worlds match the posterior mean") {
  const auto meta = uniform_meta(6, 3);
  const Corpus corpus({3, 0, 1, 0, 0, 0});
  const auto post = exact_posterior(meta, corpus);
  const auto mean = posterior_mean_mass(post);
  double total = 0;
  for (double v : mean) total += v;
  CHECK(total == doctest::Approx(1.0));
  Rng rng(9);
  const int draws = 40000;
  std::vector<double> sum(6, 0), sq(6, 0);
  for (int i = 0; i < draws; ++i) {
    const auto w = sample_conditional_world(post, rng);
    for (auto y : corpus.observed_set()) REQUIRE(w.is_fact(y));
    for (std::size_t y = 0; y < 6; ++y) {
      sum[y] += w.dist[y];
      sq[y] += w.dist[y] * w.dist[y];
    }
  }
  for (std::size_t y = 0; y < 6; ++y) {
    const double m = sum[y] / draws, var = sq[y] / draws - m * m;
    CHECK(std::abs(m - mean[y]) <= 4 * std::sqrt(var / draws) + 1e-12);
  }
}

TEST_CASE("sampling is reproducible for a fixed seed") {
  const auto meta = uniform_meta(20, 4);
  Rng a(77), b(77);
  const auto wa = sample_world(meta, a);
  const auto wb = sample_world(meta, b);
  CHECK(wa.facts == wb.facts);
  CHECK(wa.dist == wb.dist);
  CHECK(sample_corpus(wa, 30, a) == sample_corpus(wb, 30, b));
}
