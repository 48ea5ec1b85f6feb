#include "doctest.h"

#include "innov/measures.hpp"
#include "innov/models.hpp"
#include "support.hpp"

using namespace innov;

TEST_CASE("empirical model never innovates") {
  const Corpus c({3, 1, 0, 0});
  const auto g = empirical_model(c);
  CHECK(g.dist[0] == 0.75);
  CHECK(g.dist[1] == 0.25);
  CHECK(innovation_rate(g, c) == 0.0);
  CHECK(g.provenance == "empirical");
  CHECK_THROWS_AS(empirical_model(Corpus({0, 0})), PreconditionError);
}

TEST_CASE("spike and scatter put beta on unseen statements") {
  const Corpus c({2, 0, 2, 0, 0});
  Rng rng(4);
  const auto spike = spike_model(c, 0.3, rng);
  CHECK(innovation_rate(spike, c) == doctest::Approx(0.3));
  int spikes = 0;
  for (auto y : c.unseen_set()) spikes += spike.dist[y] > 0;
  CHECK(spikes == 1);
  const auto at = spike_model_at(c, 0.3, 4);
  CHECK(at.dist[4] == doctest::Approx(0.3));
  CHECK(at.provenance == "spike(beta=0.3,target=4)");
  CHECK_THROWS_AS(spike_model_at(c, 0.3, 0), PreconditionError);

  const auto scatter = scatter_model(c, 0.6);
  for (auto y : c.unseen_set()) CHECK(scatter.dist[y] == doctest::Approx(0.2));
  CHECK(scatter.dist[0] == doctest::Approx(0.2));
  CHECK(scatter.provenance == "scatter(beta=0.6)");
  CHECK_THROWS_AS(scatter_model(c, 1.5), PreconditionError);
  CHECK_THROWS_AS(scatter_model(Corpus({1, 1}), 0.5), PreconditionError);
  CHECK(scatter_model(Corpus({1, 1}), 0.0).dist[0] == 0.5);
}

TEST_CASE("calibrated and perturbed models") {
  Rng rng(8);
  const World w({0, 2}, Dist({0.25, 0.0, 0.75, 0.0}));
  const Partition pi({0, 0, 1, 1});
  const auto cal = calibrated_model(w, pi);
  CHECK(cal.dist[1] == doctest::Approx(0.125));
  CHECK(cal.provenance == "calibrated(cells=2)");
  CHECK(miscalibration(cal.dist, w.dist) <= 1e-15);
  for (double eps : {0.0, 0.05, 0.3}) {
    const auto pert = perturbed_calibrated_model(w, pi, eps, rng);
    CHECK(pert.tv_to_calibrated <= eps + 1e-12);
    CHECK(pert.miscalibration >= 0.0);
  }
  CHECK_THROWS_AS(perturbed_calibrated_model(w, pi, 1.0, rng), PreconditionError);
  CHECK_THROWS_AS(calibrated_model(w, Partition({0, 0, 1})), DimensionMismatch);
}

TEST_CASE("random partitions are dense and cover every size") {
  Rng rng(2);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 3000; ++i) {
    const auto pi = random_partition(6, rng);
    REQUIRE(pi.size() == 6);
    ++seen[pi.n_cells()];
  }
  for (int c = 1; c <= 6; ++c) CHECK(seen[c] > 0);
}
