#pragma once

// Predictive distributions g = A(X) used to exercise the bounds.

#include <string>

#include "innov/distcore.hpp"
#include "innov/rng.hpp"
#include "innov/worlds.hpp"

namespace innov {

struct Model {
  Dist dist;
  /// Constructor name and parameters, e.g. "spike(beta=0.5,target=7)".
  std::string provenance;
};

/// Relative frequencies; never innovates.
Model empirical_model(const Corpus& corpus);

/// coarsen(world.dist, pi). Uses the true world, which only a simulation can do.
Model calibrated_model(const World& world, const Partition& pi);

/// (1 − beta) spread like the corpus counts, beta on one unseen statement drawn uniformly.
Model spike_model(const Corpus& corpus, double beta, Rng& rng);

/// Spike with a caller-chosen unseen target.
Model spike_model_at(const Corpus& corpus, double beta, StatementId target);

/// (1 − beta) spread like the corpus counts, beta uniform over U.
Model scatter_model(const Corpus& corpus, double beta);

struct PerturbedModel {
  Model model;
  /// TV(g, coarsen(p, pi)); at most eps.
  double tv_to_calibrated = 0.0;
  /// Mis(g, p) recomputed on the perturbed level sets.
  double miscalibration = 0.0;
};

/// (1 − eps) coarsen(p, pi) + eps q for q drawn from a flat Dirichlet.
PerturbedModel perturbed_calibrated_model(const World& world, const Partition& pi, double eps, Rng& rng);

/// Random partition: a random cell count in [1, N] and random labels, relabelled
/// densely. Not uniform over set partitions.
Partition random_partition(std::size_t n, Rng& rng);

} // namespace innov
