#include "doctest.h"

#include <cmath>
#include <sstream>

#include "innov/measures.hpp"
#include "innov/verify.hpp"
#include "support.hpp"

using namespace innov;

namespace {

MetaSpec uniform_meta(std::size_t n, std::size_t k) {
  MetaSpec m;
  m.n_statements = n;
  m.k_max = k;
  return m;
}

} // namespace

TEST_CASE("spike on an unseen statement: exact hallucination probability") {
  const auto meta = uniform_meta(10, 3);
  const Corpus corpus({2, 0, 1, 0, 0, 0, 0, 0, 0, 0});
  const auto g = spike_model_at(corpus, 0.5, 5);
  const auto check = exact_check_thm32(meta, corpus, g.dist);
  // |O| = 2, |U| = 8: Pr[y ∉ F] = 1 − 1/8.
  CHECK(check.lhs == doctest::Approx(1 - 1.0 / 8).epsilon(1e-14));
  CHECK(check.rhs == doctest::Approx(1 - 3.0 / 8));
  CHECK(check.holds);
  CHECK(check.applicable);

  const Corpus full({1, 1, 1, 0, 0, 0, 0, 0, 0, 0});
  const auto forced = exact_check_thm32(meta, full, spike_model_at(full, 0.2, 9).dist);
  CHECK(forced.lhs == 1.0);

  const auto empirical = exact_check_thm32(meta, corpus, empirical_model(corpus).dist);
  CHECK_FALSE(empirical.applicable);
}

TEST_CASE("expected hallucination rate has slack g(U)|O|/|U|") {
  const auto meta = uniform_meta(10, 3);
  const Corpus corpus({2, 0, 1, 0, 0, 0, 0, 0, 0, 0});
  const auto g = scatter_model(corpus, 0.4);
  const auto check = exact_check_expected_rate(meta, corpus, g.dist);
  CHECK(check.rhs == doctest::Approx(0.4 * (1 - 3.0 / 8)));
  CHECK(check.slack == doctest::Approx(0.4 * 2.0 / 8).epsilon(1e-12));
}

TEST_CASE("deterministic checks") {
  const World w({0, 1, 2}, Dist({0.5, 0.3, 0.2, 0.0}));
  const Corpus c({1, 0, 0, 0});
  const Dist g({0.4, 0.1, 0.1, 0.4});
  const auto hall = check_hall_implies_innov(g, w, c);
  CHECK(hall.lhs == doctest::Approx(0.6));
  CHECK(hall.rhs == doctest::Approx(0.4));
  CHECK(hall.holds);

  const Partition pi({0, 1, 1, 1});
  CHECK(check_calib_mm_innov(w, c, pi).holds);
  const auto lemma = check_coarsening_lemma(w, c, pi, 3);
  CHECK(lemma.lhs == doctest::Approx(0.5));
  CHECK(lemma.rhs == doctest::Approx(0.5 / 4));
  CHECK(check_coarsening_lemma_cellwise(w, c, pi, 3).holds);
  CHECK(check_innov_mm(g, w, c, pi, 3).holds);

  // p(U) = 0: calibrated innovation is not required.
  const World point({0}, Dist({1.0, 0.0}));
  const auto none = check_calib_mm_innov(point, Corpus({3, 0}), Partition::single_cell(2));
  CHECK_FALSE(none.applicable);
}

TEST_CASE("calibration implies innovation over every partition of small universes") {
  Rng rng(12);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto parts = testing::all_partitions(n);
    for (int rep = 0; rep < 20; ++rep) {
      const auto p = testing::random_dist(n, rng);
      std::vector<StatementId> facts;
      for (std::size_t y = 0; y < n; ++y)
        if (p[y] > 0) facts.push_back(y);
      const World w(facts, p);
      const auto corpus = sample_corpus(w, 1 + rep % 4, rng);
      for (const auto& pi : parts) {
        REQUIRE(check_calib_mm_innov(w, corpus, pi).holds);
        REQUIRE(check_coarsening_lemma(w, corpus, pi, facts.size()).holds);
        REQUIRE(check_coarsening_lemma_cellwise(w, corpus, pi, facts.size()).holds);
      }
    }
  }
}

TEST_CASE("deterministic sweep finds no failures") {
  const auto sweeps = deterministic_sweep(500, 24, 3, 2);
  CHECK(sweeps.size() == 5);
  for (const auto& s : sweeps) {
    INFO(s.name);
    CHECK(s.instances > 0);
    CHECK(s.failures == 0);
  }
}

TEST_CASE("corpus enumeration and exact sweep") {
  // 10 statements, up to 3 observed, 1..4 draws.
  CHECK(enumerate_corpora(10, 3, 4).size() == 790);
  CHECK(enumerate_corpora(3, 3, 2).size() == 3 + 6);
  const auto s = exact_sweep(uniform_meta(8, 3), 3, false, 5);
  CHECK(s.thm32.failures == 0);
  CHECK(s.expected_rate.failures == 0);
  CHECK(s.max_marginal_error < 1e-12);
  CHECK(s.max_r_error < 1e-12);
  const auto w = exact_sweep(MetaSpec::two_class(7, 2, 3.0), 3, true, 5);
  CHECK(w.thm32.failures == 0);
  CHECK(w.max_r > 1.0);
}

TEST_CASE("theorem and model names round trip") {
  for (auto t : kAllTheorems) CHECK(parse_theorem(theorem_name(t)) == t);
  CHECK_THROWS_AS(parse_theorem("nope"), PreconditionError);
  CHECK(parse_model_kind(model_kind_name(ModelKind::perturbed)) == ModelKind::perturbed);
  CHECK(uses_delta(Theorem::markov));
  CHECK(uses_delta(Theorem::kv_cor2));
  CHECK_FALSE(uses_delta(Theorem::highconf));
  CHECK_FALSE(uses_delta(Theorem::cor_highconf_mm));
}

TEST_CASE("monte carlo cells pass and do not depend on thread count") {
  const auto meta = uniform_meta(12, 3);
  const ModelKind models[] = {ModelKind::spike, ModelKind::scatter, ModelKind::calibrated};
  const DeltaSpec deltas[] = {{0.5, false}};
  McOptions one;
  one.trials = 2000;
  auto eight = one;
  eight.threads = 8;
  const auto a = mc_corpus(meta, models, kAllTheorems, deltas, 8, 0, one, 99);
  const auto b = mc_corpus(meta, models, kAllTheorems, deltas, 8, 0, eight, 99);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(to_csv_row(a[i]) == to_csv_row(b[i]));
    CHECK(a[i].pass);
  }
}

TEST_CASE("strict mode rejects delta outside its range") {
  const auto meta = uniform_meta(12, 3);
  McOptions opts;
  opts.trials = 100;
  // K/|U| ≥ 3/11, so δ = 0.01 is out of range for every corpus.
  CHECK_THROWS_AS(mc_verify(Theorem::markov, meta, ModelKind::spike, 8, 0.01, opts, 1), PreconditionError);
  opts.strict = false;
  const auto r = mc_verify(Theorem::markov, meta, ModelKind::spike, 8, 0.01, opts, 1);
  CHECK_FALSE(r.precondition_met);
  const auto ok = mc_verify(Theorem::highconf, meta, ModelKind::spike, 8, 0.5, opts, 1);
  CHECK(std::isnan(ok.delta));
  CHECK(ok.precondition_met);
}

TEST_CASE("trial csv rows match the header") {
  McOptions opts;
  opts.trials = 200;
  const auto r = mc_verify(Theorem::highconf_r, uniform_meta(12, 3), ModelKind::scatter, 8, 0.5, opts, 4);
  const auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  CHECK(count(trial_csv_header()) == count(to_csv_row(r)));
  CHECK(trial_csv_header().rfind("theorem,", 0) == 0);
  nlohmann::json j = r;
  CHECK(j["trials"] == 200);
}

TEST_CASE("regime comparison: n-dependent bound vacuous, corollary positive") {
  auto meta = uniform_meta(4096, 1000);
  Rng rng(derive_seed(1, {7}));
  const auto world = sample_world(meta, rng);
  const auto corpus = sample_corpus(world, 5, rng);
  const auto g = calibrated_model(world, level_set_partition(world.dist));
  const auto cmp = compare_regimes(g.dist, world, corpus, 1000, 0.5);
  CHECK(cmp.kv_cor2_vacuous);
  CHECK(cmp.kv_cor2_rhs <= 0.0);
  CHECK(cmp.cor_markov_mm_rhs > 0.0);
  CHECK(cmp.unseen == 4096 - corpus.observed_set().size());
}

TEST_CASE("tightness probe reports every innovating model") {
  const auto rows = tightness_probe(uniform_meta(12, 3), 8, 2, 500);
  CHECK_FALSE(rows.empty());
  for (const auto& r : rows) {
    INFO(r.model);
    CHECK(r.trials == 500);
    CHECK(r.event_freq >= r.guaranteed_freq - 3 * std::sqrt(r.guaranteed_freq * (1 - r.guaranteed_freq) / 500));
    CHECK(r.min_ratio_in_event >= 1.0);
  }
}
