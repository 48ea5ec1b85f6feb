#pragma once

// Meta-distributions over document distributions, world and corpus sampling, and the
// exact posterior over fact supports given a corpus.
//
// A world is drawn in two stages: a fact support F from the support prior, then weights
// on F from a symmetric Dirichlet(alpha). Given a corpus X the posterior over supports is
//
//   weight(F) ∝ prior(F) · Γ(|F|α) / Γ(|F|α + n) · Π_{y∈O} Γ(α + c_y) / Γ(α),   F ⊇ O,
//
// and conditional on F the weights are Dirichlet(α + counts) restricted to F.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "innov/distcore.hpp"
#include "innov/error.hpp"
#include "innov/rng.hpp"
#include "json.hpp"

namespace innov {

enum class SupportPrior {
  uniform,    ///< every support of the admissible size equally likely
  weighted,   ///< P(F) ∝ Π_{y∈F} w_y within each admissible size
  fixed_size  ///< uniform over supports of size exactly m (m ≤ K)
};

enum class SupportSize {
  exact, ///< |F| = K (or m for fixed_size)
  mixed  ///< |F| uniform over 1..K, then the support prior within that size
};

struct MetaSpec {
  std::size_t n_statements = 0;
  std::size_t k_max = 0;
  SupportPrior support_prior = SupportPrior::uniform;
  SupportSize support_size = SupportSize::exact;
  std::size_t fixed_size = 0;
  std::vector<double> weights;
  double alpha = 1.0;
  std::uint64_t seed = 0;

  /// Throws PreconditionError on an invalid spec.
  void validate() const;
  /// True when K/N exceeds 0.25, outside the sparse regime the bounds are meant for.
  bool sparsity_warning() const;
  std::size_t min_support_size() const;
  std::size_t max_support_size() const;
  double log_weight(StatementId y) const;

  /// Weighted prior with weight rho on the first floor(N/2) statements and 1 on the rest.
  static MetaSpec two_class(std::size_t n, std::size_t k, double rho, double alpha = 1.0,
                            std::uint64_t seed = 0);
};

MetaSpec meta_from_json(const nlohmann::json& j);
void to_json(nlohmann::json& j, const MetaSpec& m);

struct World {
  World(std::vector<StatementId> facts, Dist dist);

  std::size_t n_statements() const { return dist.size(); }
  bool is_fact(StatementId y) const;
  std::vector<StatementId> hallucination_set() const;

  std::vector<StatementId> facts; ///< sorted; exactly supp(dist)
  Dist dist;
};

class PosteriorInfeasible : public Error {
public:
  using Error::Error;
};

class InconsistentCorpus : public Error {
public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 2'000'000;

/// Exact posterior over candidate supports. Every candidate is O ∪ T with T ⊆ U; the
/// unseen part T is stored flat.
class Posterior {
public:
  std::size_t n_statements() const { return corpus_.n_statements(); }
  std::size_t k_max() const { return k_max_; }
  double alpha() const { return alpha_; }
  const Corpus& corpus() const { return corpus_; }

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  /// Unseen members of candidate i, ascending.
  std::span<const StatementId> unseen_part(std::size_t i) const {
    return {extra_ids_.data() + extra_offsets_[i], extra_ids_.data() + extra_offsets_[i + 1]};
  }
  std::size_t support_size(std::size_t i) const {
    return corpus_.observed_set().size() + (extra_offsets_[i + 1] - extra_offsets_[i]);
  }
  /// Full candidate support (O ∪ T), ascending.
  std::vector<StatementId> support(std::size_t i) const;

  /// Pr[y ∈ F | X]; equal to 1 on O.
  std::span<const double> fact_marginals() const { return marginals_; }
  /// E[|F ∩ U| | X].
  double expected_fu() const { return expected_fu_; }

  /// Index of the candidate whose cumulative weight first exceeds u ∈ [0, 1).
  std::size_t candidate_at(double u) const;

private:
  friend Posterior exact_posterior(const MetaSpec&, const Corpus&, std::size_t);

  explicit Posterior(Corpus corpus) : corpus_(std::move(corpus)) {}

  Corpus corpus_;
  std::size_t k_max_ = 0;
  double alpha_ = 1.0;
  std::vector<StatementId> extra_ids_;
  std::vector<std::size_t> extra_offsets_{0};
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<double> marginals_;
  double expected_fu_ = 0.0;
};

World sample_world(const MetaSpec& meta, Rng& rng);

/// Multinomial(n, world.dist) draw. Requires n ≥ 1.
Corpus sample_corpus(const World& world, std::uint64_t n, Rng& rng);

/// Number of candidate supports exact_posterior would enumerate (as a double, since it
/// can exceed 64 bits for large universes).
double candidate_count(const MetaSpec& meta, const Corpus& corpus);

/// Throws PosteriorInfeasible when the candidate count exceeds `cap`, and
/// InconsistentCorpus when no admissible support contains O.
Posterior exact_posterior(const MetaSpec& meta, const Corpus& corpus,
                          std::size_t cap = kDefaultEnumerationCap);

struct Regularity {
  double r = 1.0;
  /// expected_fu was 0: no unseen fact is possible and r = 1 by convention.
  bool degenerate = false;
};

/// Smallest r for which r-Regular Facts holds at this corpus:
/// max_{y∈U} Pr[y ∈ F | X] · |U| / E[|F ∩ U| | X].
Regularity regularity_ratio(const Posterior& post);

/// Pr[g(H) > 0 | X], exact.
double prob_hallucinate(const Dist& g, const Posterior& post);

/// E[g(H) | X] = Σ_{y∈U} g(y) (1 − Pr[y ∈ F | X]).
double expected_hallucination(const Dist& g, const Posterior& post);

/// E[p(y) | X] for every statement.
std::vector<double> posterior_mean_mass(const Posterior& post);

/// Draws a world from the posterior: a support by posterior weight, then weights from
/// Dirichlet(α + counts) on that support.
World sample_conditional_world(const Posterior& post, Rng& rng);

} // namespace innov
