#include "innov/models.hpp"

#include <algorithm>
#include <cstdio>

#include "innov/error.hpp"

namespace innov {

namespace {

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<double> counts_share(const Corpus& corpus, double scale) {
  std::vector<double> m(corpus.n_statements(), 0.0);
  const double n = static_cast<double>(corpus.n());
  for (auto y : corpus.observed_set()) m[y] = scale * static_cast<double>(corpus.count(y)) / n;
  return m;
}

void check_beta(const Corpus& corpus, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw PreconditionError("beta must lie in [0, 1]");
  if (corpus.n() == 0) throw PreconditionError("model needs a nonempty corpus");
  if (beta > 0.0 && corpus.unseen_set().empty())
    throw PreconditionError("cannot place mass on unseen statements: every statement was observed");
}

} // namespace

Model empirical_model(const Corpus& corpus) {
  if (corpus.n() == 0) throw PreconditionError("empirical model of an empty corpus");
  return {Dist(counts_share(corpus, 1.0)), "empirical"};
}

Model calibrated_model(const World& world, const Partition& pi) {
  if (pi.size() != world.n_statements()) throw DimensionMismatch(world.n_statements(), pi.size());
  return {coarsen(world.dist, pi), "calibrated(cells=" + std::to_string(pi.n_cells()) + ")"};
}

Model spike_model(const Corpus& corpus, double beta, Rng& rng) {
  check_beta(corpus, beta);
  if (beta == 0.0) return {Dist(counts_share(corpus, 1.0)), "spike(beta=0)"};
  const auto unseen = corpus.unseen_set();
  std::uniform_int_distribution<std::size_t> pick(0, unseen.size() - 1);
  return spike_model_at(corpus, beta, unseen[pick(rng)]);
}

Model spike_model_at(const Corpus& corpus, double beta, StatementId target) {
  check_beta(corpus, beta);
  if (target >= corpus.n_statements() || corpus.observed(target))
    throw PreconditionError("spike target must be an unseen statement");
  auto m = counts_share(corpus, 1.0 - beta);
  m[target] = beta;
  return {Dist(std::move(m)), "spike(beta=" + fmt_param(beta) + ",target=" + std::to_string(target) + ")"};
}

Model scatter_model(const Corpus& corpus, double beta) {
  check_beta(corpus, beta);
  auto m = counts_share(corpus, 1.0 - beta);
  const auto unseen = corpus.unseen_set();
  if (beta > 0.0) {
    const double each = beta / static_cast<double>(unseen.size());
    for (auto y : unseen) m[y] = each;
  }
  return {Dist(std::move(m)), "scatter(beta=" + fmt_param(beta) + ")"};
}

PerturbedModel perturbed_calibrated_model(const World& world, const Partition& pi, double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in [0, 1)");
  if (pi.size() != world.n_statements()) throw DimensionMismatch(world.n_statements(), pi.size());
  const Dist calibrated = coarsen(world.dist, pi);
  std::vector<double> mix(calibrated.mass().begin(), calibrated.mass().end());
  if (eps > 0.0) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> q(mix.size());
    double total = 0.0;
    for (double& v : q) total += v = expo(rng);
    for (std::size_t y = 0; y < mix.size(); ++y) mix[y] = (1.0 - eps) * mix[y] + eps * q[y] / total;
  }
  PerturbedModel out{{Dist(std::move(mix)), "perturbed(eps=" + fmt_param(eps) + ",cells=" + std::to_string(pi.n_cells()) + ")"}};
  out.tv_to_calibrated = tv_distance(out.model.dist, calibrated);
  out.miscalibration = miscalibration(out.model.dist, world.dist);
  return out;
}

Partition random_partition(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<std::size_t> cells_dist(1, n);
  const std::size_t cells = cells_dist(rng);
  std::uniform_int_distribution<std::size_t> label(0, cells - 1);
  std::vector<std::size_t> raw(n);
  for (auto& c : raw) c = label(rng);
  // Relabel densely in order of first appearance so every cell is nonempty.
  std::vector<std::size_t> remap(cells, n);
  std::size_t next = 0;
  for (auto& c : raw) {
    if (remap[c] == n) remap[c] = next++;
    c = remap[c];
  }
  return Partition(std::move(raw));
}

} // namespace innov
