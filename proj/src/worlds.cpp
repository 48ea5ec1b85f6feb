#include "innov/worlds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace innov {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// log e_j(w_0, ..., w_{N-1}) for j = 0..max_j.
std::vector<double> log_elementary_symmetric(const MetaSpec& meta, std::size_t max_j) {
  std::vector<double> e(max_j + 1, kNegInf);
  e[0] = 0.0;
  for (StatementId y = 0; y < meta.n_statements; ++y) {
    const double lw = meta.log_weight(y);
    for (std::size_t j = std::min<std::size_t>(max_j, y + 1); j >= 1; --j) e[j] = log_add_exp(e[j], lw + e[j - 1]);
  }
  return e;
}

double log_size_prior(const MetaSpec& meta, std::size_t s) {
  if (s < meta.min_support_size() || s > meta.max_support_size()) return kNegInf;
  if (meta.support_size == SupportSize::mixed) return -std::log(static_cast<double>(meta.k_max));
  return 0.0;
}

std::vector<double> dirichlet(std::span<const double> shape, Rng& rng) {
  std::vector<double> x(shape.size());
  for (;;) {
    double total = 0.0;
    bool all_positive = true;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      std::gamma_distribution<double> gamma(shape[i], 1.0);
      x[i] = gamma(rng);
      all_positive = all_positive && x[i] > 0.0;
      total += x[i];
    }
    // A zero draw would shrink the support; resample (only reachable for tiny shapes).
    if (all_positive && total > 0.0 && std::isfinite(total)) {
      for (double& v : x) v /= total;
      return x;
    }
  }
}

World world_from_weights(std::size_t n, std::vector<StatementId> facts, std::span<const double> w) {
  std::vector<double> mass(n, 0.0);
  for (std::size_t i = 0; i < facts.size(); ++i) mass[facts[i]] = w[i];
  return World(std::move(facts), Dist(std::move(mass)));
}

std::vector<StatementId> sample_support(const MetaSpec& meta, std::size_t s, Rng& rng) {
  const std::size_t n = meta.n_statements;
  std::vector<StatementId> out;
  out.reserve(s);
  if (meta.support_prior != SupportPrior::weighted) {
    std::vector<StatementId> all(n);
    std::iota(all.begin(), all.end(), StatementId{0});
    std::sample(all.begin(), all.end(), std::back_inserter(out), s, rng);
    return out;
  }
  // suffix[y][j] = log e_j(w_y, ..., w_{N-1}); include y with probability
  // w_y e_{r-1}(w_{y+1..}) / e_r(w_{y..}) where r is the number still to pick.
  std::vector<std::vector<double>> suffix(n + 1, std::vector<double>(s + 1, kNegInf));
  suffix[n][0] = 0.0;
  for (std::size_t y = n; y-- > 0;) {
    const double lw = meta.log_weight(y);
    suffix[y][0] = 0.0;
    for (std::size_t j = 1; j <= s; ++j) suffix[y][j] = log_add_exp(suffix[y + 1][j], lw + suffix[y + 1][j - 1]);
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t remaining = s;
  for (StatementId y = 0; y < n && remaining > 0; ++y) {
    const double p_in = std::exp(meta.log_weight(y) + suffix[y + 1][remaining - 1] - suffix[y][remaining]);
    if (unit(rng) < p_in) {
      out.push_back(y);
      --remaining;
    }
  }
  return out;
}

/// Visits every j-subset of `pool` in lexicographic order.
template <typename Fn>
void for_each_combination(std::span<const StatementId> pool, std::size_t j, Fn&& fn) {
  if (j > pool.size()) return;
  std::vector<std::size_t> idx(j);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<StatementId> chosen(j);
  for (;;) {
    for (std::size_t i = 0; i < j; ++i) chosen[i] = pool[idx[i]];
    fn(std::span<const StatementId>(chosen));
    std::size_t i = j;
    while (i > 0 && idx[i - 1] == pool.size() - j + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t k = i; k < j; ++k) idx[k] = idx[k - 1] + 1;
  }
}

} // namespace

void MetaSpec::validate() const {
  if (n_statements < 2 || n_statements > kMaxStatements)
    throw PreconditionError("n_statements must be in [2, " + std::to_string(kMaxStatements) + "]");
  if (k_max < 1 || k_max >= n_statements) throw PreconditionError("k_max must satisfy 1 <= K < N");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be positive");
  if (support_prior == SupportPrior::weighted) {
    if (weights.size() != n_statements) throw PreconditionError("weights must have one entry per statement");
    for (double w : weights)
      if (!(w > 0.0) || !std::isfinite(w)) throw PreconditionError("weights must be positive");
  }
  if (support_prior == SupportPrior::fixed_size) {
    if (fixed_size < 1 || fixed_size > k_max) throw PreconditionError("fixed support size m must satisfy 1 <= m <= K");
    if (support_size == SupportSize::mixed) throw PreconditionError("fixed-size prior cannot use mixed sizes");
  }
}

bool MetaSpec::sparsity_warning() const {
  return static_cast<double>(k_max) > 0.25 * static_cast<double>(n_statements);
}

std::size_t MetaSpec::min_support_size() const {
  if (support_prior == SupportPrior::fixed_size) return fixed_size;
  return support_size == SupportSize::mixed ? 1 : k_max;
}

std::size_t MetaSpec::max_support_size() const {
  return support_prior == SupportPrior::fixed_size ? fixed_size : k_max;
}

double MetaSpec::log_weight(StatementId y) const {
  return support_prior == SupportPrior::weighted ? std::log(weights[y]) : 0.0;
}

MetaSpec MetaSpec::two_class(std::size_t n, std::size_t k, double rho, double alpha, std::uint64_t seed) {
  MetaSpec m;
  m.n_statements = n;
  m.k_max = k;
  m.support_prior = SupportPrior::weighted;
  m.weights.assign(n, 1.0);
  for (std::size_t y = 0; y < n / 2; ++y) m.weights[y] = rho;
  m.alpha = alpha;
  m.seed = seed;
  return m;
}

MetaSpec meta_from_json(const nlohmann::json& j) {
  MetaSpec m;
  m.n_statements = j.at("n_statements").get<std::size_t>();
  m.k_max = j.at("k_max").get<std::size_t>();
  const auto prior = j.value("support_prior", std::string("uniform-K-subsets"));
  if (prior == "uniform-K-subsets" || prior == "uniform") {
    m.support_prior = SupportPrior::uniform;
  } else if (prior == "weighted-subsets" || prior == "weighted") {
    m.support_prior = SupportPrior::weighted;
  } else if (prior == "fixed-size-m-subsets" || prior == "fixed") {
    m.support_prior = SupportPrior::fixed_size;
    m.fixed_size = j.at("m").get<std::size_t>();
  } else {
    throw PreconditionError("unknown support_prior '" + prior + "'");
  }
  const auto size = j.value("support_size", std::string("exact"));
  if (size == "exact") m.support_size = SupportSize::exact;
  else if (size == "mixed") m.support_size = SupportSize::mixed;
  else throw PreconditionError("unknown support_size '" + size + "'");
  if (j.contains("weights") && !j["weights"].is_null()) m.weights = j["weights"].get<std::vector<double>>();
  if (m.support_prior == SupportPrior::weighted && m.weights.empty() && j.contains("rho")) {
    m = MetaSpec::two_class(m.n_statements, m.k_max, j["rho"].get<double>(), 1.0, 0);
    m.support_size = size == "mixed" ? SupportSize::mixed : SupportSize::exact;
  }
  m.alpha = j.value("alpha", 1.0);
  m.seed = j.value("seed", std::uint64_t{0});
  m.validate();
  return m;
}

void to_json(nlohmann::json& j, const MetaSpec& m) {
  static constexpr const char* kPriors[] = {"uniform-K-subsets", "weighted-subsets", "fixed-size-m-subsets"};
  j = nlohmann::json{{"n_statements", m.n_statements},
                     {"k_max", m.k_max},
                     {"support_prior", kPriors[static_cast<int>(m.support_prior)]},
                     {"support_size", m.support_size == SupportSize::exact ? "exact" : "mixed"},
                     {"alpha", m.alpha},
                     {"seed", m.seed}};
  if (m.support_prior == SupportPrior::fixed_size) j["m"] = m.fixed_size;
  if (m.support_prior == SupportPrior::weighted) j["weights"] = m.weights;
}

World::World(std::vector<StatementId> f, Dist d) : facts(std::move(f)), dist(std::move(d)) {
  std::sort(facts.begin(), facts.end());
  std::size_t positive = 0;
  for (StatementId y = 0; y < dist.size(); ++y) positive += dist[y] > 0.0;
  if (positive != facts.size()) throw PreconditionError("world support does not match its fact set");
  for (auto y : facts)
    if (y >= dist.size() || !(dist[y] > 0.0)) throw PreconditionError("world support does not match its fact set");
}

bool World::is_fact(StatementId y) const { return dist[y] > 0.0; }

std::vector<StatementId> World::hallucination_set() const {
  std::vector<StatementId> h;
  for (StatementId y = 0; y < dist.size(); ++y)
    if (!is_fact(y)) h.push_back(y);
  return h;
}

std::vector<StatementId> Posterior::support(std::size_t i) const {
  std::vector<StatementId> s(corpus_.observed_set().begin(), corpus_.observed_set().end());
  const auto extra = unseen_part(i);
  s.insert(s.end(), extra.begin(), extra.end());
  std::sort(s.begin(), s.end());
  return s;
}

std::size_t Posterior::candidate_at(double u) const {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), size() - 1);
}

World sample_world(const MetaSpec& meta, Rng& rng) {
  meta.validate();
  std::size_t s = meta.min_support_size();
  if (s != meta.max_support_size()) {
    std::uniform_int_distribution<std::size_t> pick(meta.min_support_size(), meta.max_support_size());
    s = pick(rng);
  }
  auto facts = sample_support(meta, s, rng);
  const std::vector<double> shape(facts.size(), meta.alpha);
  const auto w = dirichlet(shape, rng);
  return world_from_weights(meta.n_statements, std::move(facts), w);
}

Corpus sample_corpus(const World& world, std::uint64_t n, Rng& rng) {
  if (n < 1) throw PreconditionError("corpus size must be at least 1");
  std::vector<std::uint64_t> counts(world.n_statements(), 0);
  std::uint64_t left = n;
  double mass_left = 1.0;
  for (std::size_t i = 0; i < world.facts.size() && left > 0; ++i) {
    const auto y = world.facts[i];
    if (i + 1 == world.facts.size()) {
      counts[y] = left;
      break;
    }
    const double p = std::clamp(world.dist[y] / mass_left, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> draw(left, p);
    counts[y] = draw(rng);
    left -= counts[y];
    mass_left -= world.dist[y];
  }
  return Corpus(std::move(counts));
}

double candidate_count(const MetaSpec& meta, const Corpus& corpus) {
  const std::size_t o = corpus.observed_set().size();
  const std::size_t u = corpus.unseen_set().size();
  double total = 0.0;
  for (std::size_t s = std::max(o, meta.min_support_size()); s <= meta.max_support_size(); ++s) {
    if (s - o > u) break;
    total += std::exp(log_choose(static_cast<double>(u), static_cast<double>(s - o)));
  }
  return total;
}

Posterior exact_posterior(const MetaSpec& meta, const Corpus& corpus, std::size_t cap) {
  meta.validate();
  if (corpus.n_statements() != meta.n_statements) throw DimensionMismatch(meta.n_statements, corpus.n_statements());
  if (corpus.n() == 0) throw PreconditionError("exact posterior needs a nonempty corpus");
  const auto observed = corpus.observed_set();
  const auto unseen = corpus.unseen_set();
  const std::size_t o = observed.size();
  if (o > meta.max_support_size())
    throw InconsistentCorpus("corpus observes " + std::to_string(o) + " statements but supports have at most " +
                             std::to_string(meta.max_support_size()));
  const double count = candidate_count(meta, corpus);
  if (count > static_cast<double>(cap))
    throw PosteriorInfeasible("universe too large for exact posterior: " + std::to_string(count) +
                              " candidate supports exceed the cap of " + std::to_string(cap));

  Posterior post{corpus};
  post.k_max_ = meta.k_max;
  post.alpha_ = meta.alpha;
  const auto log_e = log_elementary_symmetric(meta, meta.max_support_size());
  const double n = static_cast<double>(corpus.n());
  double log_w_observed = 0.0;
  for (auto y : observed) log_w_observed += meta.log_weight(y);

  std::vector<double> log_weights;
  log_weights.reserve(static_cast<std::size_t>(count));
  for (std::size_t s = std::max(o, meta.min_support_size()); s <= meta.max_support_size(); ++s) {
    if (s - o > unseen.size()) break;
    const double sa = static_cast<double>(s) * meta.alpha;
    const double base = log_size_prior(meta, s) - log_e[s] + log_w_observed + std::lgamma(sa) - std::lgamma(sa + n);
    for_each_combination(unseen, s - o, [&](std::span<const StatementId> extra) {
      double lw = base;
      for (auto y : extra) lw += meta.log_weight(y);
      log_weights.push_back(lw);
      post.extra_ids_.insert(post.extra_ids_.end(), extra.begin(), extra.end());
      post.extra_offsets_.push_back(post.extra_ids_.size());
    });
  }
  if (log_weights.empty()) throw InconsistentCorpus("no admissible support contains the observed statements");

  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  post.weights_.resize(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) total += post.weights_[i] = std::exp(log_weights[i] - top);
  post.cumulative_.resize(post.weights_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < post.weights_.size(); ++i) {
    post.weights_[i] /= total;
    running += post.weights_[i];
    post.cumulative_[i] = running;
  }

  post.marginals_.assign(meta.n_statements, 0.0);
  for (auto y : observed) post.marginals_[y] = 1.0;
  for (std::size_t i = 0; i < post.size(); ++i) {
    const auto extra = post.unseen_part(i);
    for (auto y : extra) post.marginals_[y] += post.weights_[i];
    post.expected_fu_ += post.weights_[i] * static_cast<double>(extra.size());
  }
  return post;
}

Regularity regularity_ratio(const Posterior& post) {
  const auto unseen = post.corpus().unseen_set();
  if (unseen.empty()) throw PreconditionError("regularity ratio needs at least one unseen statement");
  if (!(post.expected_fu() > 0.0)) return {1.0, true};
  double top = 0.0;
  for (auto y : unseen) top = std::max(top, post.fact_marginals()[y]);
  const double r = top * static_cast<double>(unseen.size()) / post.expected_fu();
  return {std::max(1.0, r), false};
}

double prob_hallucinate(const Dist& g, const Posterior& post) {
  if (g.size() != post.n_statements()) throw DimensionMismatch(post.n_statements(), g.size());
  // g(H) > 0 iff some statement with g(y) > 0 lies outside F. Observed ones never do.
  std::vector<char> positive_unseen(g.size(), 0);
  std::size_t n_positive_unseen = 0;
  for (auto y : post.corpus().unseen_set()) {
    if (g[y] > 0.0) {
      positive_unseen[y] = 1;
      ++n_positive_unseen;
    }
  }
  if (n_positive_unseen == 0) return 0.0;
  double prob = 0.0;
  for (std::size_t i = 0; i < post.size(); ++i) {
    std::size_t covered = 0;
    for (auto y : post.unseen_part(i)) covered += positive_unseen[y];
    if (covered < n_positive_unseen) prob += post.weight(i);
  }
  return std::min(1.0, prob);
}

double expected_hallucination(const Dist& g, const Posterior& post) {
  if (g.size() != post.n_statements()) throw DimensionMismatch(post.n_statements(), g.size());
  double total = 0.0;
  for (auto y : post.corpus().unseen_set()) total += g[y] * (1.0 - post.fact_marginals()[y]);
  return total;
}

std::vector<double> posterior_mean_mass(const Posterior& post) {
  const auto& corpus = post.corpus();
  const double n = static_cast<double>(corpus.n());
  const double a = post.alpha();
  std::vector<double> mean(post.n_statements(), 0.0);
  for (std::size_t i = 0; i < post.size(); ++i) {
    const double denom = static_cast<double>(post.support_size(i)) * a + n;
    const double w = post.weight(i);
    for (auto y : corpus.observed_set()) mean[y] += w * (a + static_cast<double>(corpus.count(y))) / denom;
    for (auto y : post.unseen_part(i)) mean[y] += w * a / denom;
  }
  return mean;
}

World sample_conditional_world(const Posterior& post, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t i = post.candidate_at(unit(rng));
  auto facts = post.support(i);
  std::vector<double> shape(facts.size());
  for (std::size_t k = 0; k < facts.size(); ++k)
    shape[k] = post.alpha() + static_cast<double>(post.corpus().count(facts[k]));
  const auto w = dirichlet(shape, rng);
  return world_from_weights(post.n_statements(), std::move(facts), w);
}

} // namespace innov
