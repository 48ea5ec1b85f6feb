#pragma once

// Checks for the hallucination/innovation bounds.
//
// Deterministic checks hold for every instance. Exact checks evaluate posterior
// probabilities by enumeration. Monte Carlo checks draw worlds from the posterior given
// a corpus and compare the frequency of the bound event with its guarantee; every
// probability here is conditional on the corpus, never joint over corpora.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "innov/distcore.hpp"
#include "innov/models.hpp"
#include "innov/worlds.hpp"
#include "json.hpp"

namespace innov {

inline constexpr double kBoundTolerance = 1e-12;

struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double slack = 0.0;
  /// False when the statement's precondition fails (e.g. g(U) = 0); holds is then vacuous.
  bool applicable = true;

  static BoundCheck make(std::string name, double lhs, double rhs);
};

/// g(U) ≥ g(H): a hallucinating model innovates.
BoundCheck check_hall_implies_innov(const Dist& g, const World& world, const Corpus& corpus);

/// With g = coarsen(p, pi): p(U) = 0 or g(U) > 0. Encoded as lhs = 1 when that
/// disjunction is true (0 otherwise) against rhs = 1.
BoundCheck check_calib_mm_innov(const World& world, const Corpus& corpus, const Partition& pi);

/// p^Π(U) ≥ p(U)/(K+1).
BoundCheck check_coarsening_lemma(const World& world, const Corpus& corpus, const Partition& pi, std::size_t k);

/// The same inequality restricted to U ∩ B for every cell B; returns the tightest cell.
BoundCheck check_coarsening_lemma_cellwise(const World& world, const Corpus& corpus, const Partition& pi,
                                           std::size_t k);

/// g(U) ≥ p(U)/(K+1) − TV(g, p^Π).
BoundCheck check_innov_mm(const Dist& g, const World& world, const Corpus& corpus, const Partition& pi,
                          std::size_t k);

/// Pr[g(H) > 0 | X] ≥ 1 − K/|U| (or 1 − rK/|U| with use_r). Not applicable when g(U) = 0.
BoundCheck exact_check_thm32(const Posterior& post, const Dist& g, bool use_r = false);
BoundCheck exact_check_thm32(const MetaSpec& meta, const Corpus& corpus, const Dist& g, bool use_r = false);

/// E[g(H) | X] ≥ g(U)(1 − K/|U|) (or with rK).
BoundCheck exact_check_expected_rate(const Posterior& post, const Dist& g, bool use_r = false);
BoundCheck exact_check_expected_rate(const MetaSpec& meta, const Corpus& corpus, const Dist& g, bool use_r = false);

enum class Theorem { markov, highconf, markov_r, highconf_r, cor_markov_mm, cor_highconf_mm, kv_cor1, kv_cor2 };

std::string_view theorem_name(Theorem t);
Theorem parse_theorem(std::string_view name);
inline constexpr Theorem kAllTheorems[] = {Theorem::markov,        Theorem::highconf,        Theorem::markov_r,
                                           Theorem::highconf_r,    Theorem::cor_markov_mm,   Theorem::cor_highconf_mm,
                                           Theorem::kv_cor1,       Theorem::kv_cor2};
/// Whether the statement is parameterized by a failure probability δ.
bool uses_delta(Theorem t);

enum class ModelKind { empirical, scatter, spike, calibrated, perturbed, uniform };

std::string_view model_kind_name(ModelKind k);
ModelKind parse_model_kind(std::string_view name);

struct BatteryOptions {
  double beta = 0.5;
  double eps = 0.1;
};

/// Builds g for a corpus. Calibrated and perturbed models coarsen `truth` on a random
/// partition; the others depend on the corpus alone.
Model build_model(ModelKind kind, const World& truth, const Corpus& corpus, const BatteryOptions& opts, Rng& rng);

enum class PartitionMode {
  level_sets, ///< Π = level sets of g, so the TV term is Mis(g, p)
  random      ///< a fixed random partition drawn per corpus
};

struct McOptions {
  std::size_t trials = 10'000;
  unsigned threads = 1;
  PartitionMode partition = PartitionMode::level_sets;
  BatteryOptions battery;
  /// Throw PreconditionError for δ outside the stated range instead of reporting the
  /// cell as out of range.
  bool strict = true;
};

/// δ either absolute or as a multiple of K/|U| of each corpus.
struct DeltaSpec {
  double value = 0.5;
  bool relative = false;

  double resolve(std::size_t k, std::size_t unseen) const {
    return relative ? value * static_cast<double>(k) / static_cast<double>(unseen) : value;
  }
};

struct TrialReport {
  Theorem theorem = Theorem::markov;
  std::size_t n_statements = 0;
  std::size_t k = 0;
  std::uint64_t n = 0;
  std::size_t unseen = 0;
  double delta = 0.0; ///< NaN for statements without δ
  double r = 1.0;
  std::string model;
  std::uint64_t seed = 0;
  std::size_t corpus_index = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double empirical_freq = 0.0;
  double guaranteed_freq = 0.0;
  double binomial_slack = 0.0;
  bool pass = false;
  /// δ lies inside the statement's admissible range.
  bool precondition_met = true;
  /// The bound's right-hand side is ≤ 0 for every world, so the event always holds.
  bool vacuous = false;
};

/// Runs every (model, theorem, δ) cell on one corpus. The corpus comes from a world drawn
/// with derive_rng(seed, {corpus_index, 0}); posterior draws use per-draw streams, so
/// reports do not depend on opts.threads.
std::vector<TrialReport> mc_corpus(const MetaSpec& meta, std::span<const ModelKind> models,
                                   std::span<const Theorem> theorems, std::span<const DeltaSpec> deltas,
                                   std::uint64_t n, std::size_t corpus_index, const McOptions& opts,
                                   std::uint64_t seed);

/// One cell on corpus 0.
TrialReport mc_verify(Theorem theorem, const MetaSpec& meta, ModelKind model, std::uint64_t n, double delta,
                      const McOptions& opts, std::uint64_t seed);

std::string trial_csv_header();
std::string to_csv_row(const TrialReport& r);
void to_json(nlohmann::json& j, const TrialReport& r);

/// Right-hand sides of the missing-mass corollary (Markov form) and the earlier
/// n-dependent corollary on the same instance.
struct RegimeComparison {
  std::size_t k = 0;
  std::uint64_t n = 0;
  std::size_t unseen = 0;
  double delta = 0.0;
  double missing_mass = 0.0;
  double miscalibration = 0.0;
  double kv_cor2_rhs = 0.0;
  double cor_markov_mm_rhs = 0.0;
  /// K(n+1)/(δ|U|) ≥ 1, so the n-dependent right-hand side is ≤ 0 whatever p(U) and Mis are.
  bool kv_cor2_vacuous = false;
};

RegimeComparison compare_regimes(const Dist& g, const World& truth, const Corpus& corpus, std::size_t k,
                                 double delta);
void to_json(nlohmann::json& j, const RegimeComparison& c);

struct TightnessRow {
  std::string model;
  std::size_t trials = 0;
  double min_ratio = 0.0;          ///< min over draws of g(H)(K+1)/g(U)
  double mean_ratio = 0.0;
  double event_freq = 0.0;         ///< share of draws with ratio ≥ 1
  double min_ratio_in_event = 0.0; ///< min ratio among draws in the bound event
  double guaranteed_freq = 0.0;    ///< 1 − K/|U|
};

/// Ratio g(H)(K+1)/g(U) over posterior draws for every innovating model in the battery.
std::vector<TightnessRow> tightness_probe(const MetaSpec& meta, std::uint64_t n, std::uint64_t seed,
                                          std::size_t trials = 10'000, const BatteryOptions& battery = {},
                                          unsigned threads = 1);
void to_json(nlohmann::json& j, const TightnessRow& row);

struct SweepSummary {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double min_slack = 0.0;
  std::optional<BoundCheck> first_failure;
};
void to_json(nlohmann::json& j, const SweepSummary& s);

/// Randomized instances (N ≤ max_statements) for the four unconditional statements
/// plus the cell-wise coarsening inequality. One summary per statement.
std::vector<SweepSummary> deterministic_sweep(std::size_t instances, std::size_t max_statements, std::uint64_t seed,
                                              unsigned threads = 1);

/// Every count vector over N statements with 1 ≤ n ≤ max_n draws and at most
/// max_observed distinct statements.
std::vector<Corpus> enumerate_corpora(std::size_t n_statements, std::size_t max_observed, std::uint64_t max_n);

/// g = 𝒜(X) battery for exact checks: empirical, scatter, uniform, a spike on every
/// unseen statement, and calibrated/perturbed coarsenings of a posterior-drawn world.
std::vector<Model> exact_battery(const Posterior& post, const BatteryOptions& opts, Rng& rng);

struct ExactSweepSummary {
  std::size_t corpora = 0;
  SweepSummary thm32;
  SweepSummary expected_rate;
  /// max |Pr[y ∈ F | X] − (K − |O|)/|U| over unseen y (meaningful for exact-size uniform).
  double max_marginal_error = 0.0;
  /// max |r − 1|.
  double max_r_error = 0.0;
  /// max over corpora of the spread of E[p(y) | X] across unseen y.
  double max_mean_mass_spread = 0.0;
  double max_r = 1.0;
};
void to_json(nlohmann::json& j, const ExactSweepSummary& s);

/// Exact checks over every enumerated corpus of `meta` with at most max_n draws.
ExactSweepSummary exact_sweep(const MetaSpec& meta, std::uint64_t max_n, bool use_r, std::uint64_t seed,
                              const BatteryOptions& battery = {}, unsigned threads = 1);

} // namespace innov
