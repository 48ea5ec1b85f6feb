#include "innov/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "innov/csv.hpp"
#include "innov/measures.hpp"
#include "innov/parallel.hpp"

namespace innov {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double as_double(std::size_t v) { return static_cast<double>(v); }

std::string fmt_num(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

/// Per-model state fixed by the corpus.
struct PreparedModel {
  Model model;
  double g_unseen = 0.0;
  Partition level_sets;
};

/// g(H) given a world; only unseen statements can be hallucinations.
double hallucinated_mass(const Dist& g, const World& p, std::span<const StatementId> unseen) {
  double total = 0.0;
  for (auto y : unseen)
    if (!p.is_fact(y)) total += g[y];
  return total;
}

} // namespace

BoundCheck BoundCheck::make(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs >= rhs - kBoundTolerance, lhs - rhs, true};
}

BoundCheck check_hall_implies_innov(const Dist& g, const World& world, const Corpus& corpus) {
  return BoundCheck::make("hall_implies_innov", innovation_rate(g, corpus), hallucination_rate(g, world));
}

BoundCheck check_calib_mm_innov(const World& world, const Corpus& corpus, const Partition& pi) {
  const Dist g = coarsen(world.dist, pi);
  const double p_unseen = missing_mass(world, corpus);
  const double g_unseen = innovation_rate(g, corpus);
  const bool ok = p_unseen == 0.0 || g_unseen > 0.0;
  auto check = BoundCheck::make("calib_mm_innov", ok ? 1.0 : 0.0, 1.0);
  check.applicable = p_unseen > 0.0;
  return check;
}

BoundCheck check_coarsening_lemma(const World& world, const Corpus& corpus, const Partition& pi, std::size_t k) {
  const Dist coarse = coarsen(world.dist, pi);
  return BoundCheck::make("coarsening_lemma", mass_on(coarse, corpus.unseen_set()),
                          missing_mass(world, corpus) / as_double(k + 1));
}

BoundCheck check_coarsening_lemma_cellwise(const World& world, const Corpus& corpus, const Partition& pi,
                                           std::size_t k) {
  if (pi.size() != world.n_statements()) throw DimensionMismatch(world.n_statements(), pi.size());
  const Dist coarse = coarsen(world.dist, pi);
  std::vector<double> lhs(pi.n_cells(), 0.0), rhs(pi.n_cells(), 0.0);
  for (auto y : corpus.unseen_set()) {
    lhs[pi.cell_of(y)] += coarse[y];
    rhs[pi.cell_of(y)] += world.dist[y];
  }
  BoundCheck worst = BoundCheck::make("coarsening_lemma_cellwise", 0.0, 0.0);
  for (std::size_t c = 0; c < pi.n_cells(); ++c) {
    auto cell = BoundCheck::make("coarsening_lemma_cellwise", lhs[c], rhs[c] / as_double(k + 1));
    if (c == 0 || cell.slack < worst.slack) worst = cell;
  }
  return worst;
}

BoundCheck check_innov_mm(const Dist& g, const World& world, const Corpus& corpus, const Partition& pi,
                          std::size_t k) {
  const double tv = tv_distance(g, coarsen(world.dist, pi));
  return BoundCheck::make("innov_mm", innovation_rate(g, corpus),
                          missing_mass(world, corpus) / as_double(k + 1) - tv);
}

BoundCheck exact_check_thm32(const Posterior& post, const Dist& g, bool use_r) {
  const auto unseen = post.corpus().unseen_set();
  const double r = use_r ? regularity_ratio(post).r : 1.0;
  const double rhs = 1.0 - r * as_double(post.k_max()) / as_double(unseen.size());
  auto check = BoundCheck::make(use_r ? "thm32_r" : "thm32", prob_hallucinate(g, post), rhs);
  if (!(innovation_rate(g, post.corpus()) > 0.0)) {
    check.applicable = false;
    check.holds = true;
  }
  return check;
}

BoundCheck exact_check_thm32(const MetaSpec& meta, const Corpus& corpus, const Dist& g, bool use_r) {
  return exact_check_thm32(exact_posterior(meta, corpus), g, use_r);
}

BoundCheck exact_check_expected_rate(const Posterior& post, const Dist& g, bool use_r) {
  const auto unseen = post.corpus().unseen_set();
  const double r = use_r ? regularity_ratio(post).r : 1.0;
  const double g_unseen = innovation_rate(g, post.corpus());
  return BoundCheck::make(use_r ? "expected_rate_r" : "expected_rate", expected_hallucination(g, post),
                          g_unseen * (1.0 - r * as_double(post.k_max()) / as_double(unseen.size())));
}

BoundCheck exact_check_expected_rate(const MetaSpec& meta, const Corpus& corpus, const Dist& g, bool use_r) {
  return exact_check_expected_rate(exact_posterior(meta, corpus), g, use_r);
}

namespace {

constexpr std::array<std::pair<Theorem, std::string_view>, 8> kTheoremNames{{
    {Theorem::markov, "markov"},
    {Theorem::highconf, "highconf"},
    {Theorem::markov_r, "markov_r"},
    {Theorem::highconf_r, "highconf_r"},
    {Theorem::cor_markov_mm, "cor_markov_mm"},
    {Theorem::cor_highconf_mm, "cor_highconf_mm"},
    {Theorem::kv_cor1, "kv_cor1"},
    {Theorem::kv_cor2, "kv_cor2"},
}};

constexpr std::array<std::pair<ModelKind, std::string_view>, 6> kModelNames{{
    {ModelKind::empirical, "empirical"},
    {ModelKind::scatter, "scatter"},
    {ModelKind::spike, "spike"},
    {ModelKind::calibrated, "calibrated"},
    {ModelKind::perturbed, "perturbed"},
    {ModelKind::uniform, "uniform"},
}};

} // namespace

std::string_view theorem_name(Theorem t) {
  for (const auto& [k, v] : kTheoremNames)
    if (k == t) return v;
  return "unknown";
}

Theorem parse_theorem(std::string_view name) {
  for (const auto& [k, v] : kTheoremNames)
    if (v == name) return k;
  throw PreconditionError("unknown theorem '" + std::string(name) + "'");
}

bool uses_delta(Theorem t) {
  return t == Theorem::markov || t == Theorem::markov_r || t == Theorem::cor_markov_mm || t == Theorem::kv_cor1 ||
         t == Theorem::kv_cor2;
}

std::string_view model_kind_name(ModelKind k) {
  for (const auto& [key, v] : kModelNames)
    if (key == k) return v;
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (const auto& [k, v] : kModelNames)
    if (v == name) return k;
  throw PreconditionError("unknown model kind '" + std::string(name) + "'");
}

Model build_model(ModelKind kind, const World& truth, const Corpus& corpus, const BatteryOptions& opts, Rng& rng) {
  switch (kind) {
  case ModelKind::empirical:
    return empirical_model(corpus);
  case ModelKind::scatter:
    return scatter_model(corpus, opts.beta);
  case ModelKind::spike:
    return spike_model(corpus, opts.beta, rng);
  case ModelKind::calibrated:
    return calibrated_model(truth, random_partition(truth.n_statements(), rng));
  case ModelKind::perturbed:
    return perturbed_calibrated_model(truth, random_partition(truth.n_statements(), rng), opts.eps, rng).model;
  case ModelKind::uniform:
    return {Dist::uniform(corpus.n_statements()), "uniform"};
  }
  throw PreconditionError("unknown model kind");
}

namespace {

struct Cell {
  std::size_t model = 0;
  Theorem theorem = Theorem::markov;
  double delta = kNaN;
  double guaranteed = 0.0;
  bool precondition_met = true;
  bool vacuous = false;
};

/// Right-hand side of the bound event for one posterior draw.
struct DrawTerms {
  double g_unseen;
  double p_unseen;
  double tv_partition; ///< TV(g, p^Π) for the configured Π
  double mis;          ///< Mis(g, p)
};

double bound_rhs(Theorem t, double delta, double k, double unseen, double n, double r, const DrawTerms& d) {
  switch (t) {
  case Theorem::markov:
    return d.g_unseen * (1.0 - k / (delta * unseen));
  case Theorem::markov_r:
    return d.g_unseen * (1.0 - r * k / (delta * unseen));
  case Theorem::highconf:
  case Theorem::highconf_r:
    return d.g_unseen / (k + 1.0);
  case Theorem::cor_markov_mm:
    return d.p_unseen / (k + 1.0) - 1.0 / (delta * unseen) - d.tv_partition;
  case Theorem::cor_highconf_mm:
    return d.p_unseen / ((k + 1.0) * (k + 1.0)) - d.tv_partition / (k + 1.0);
  case Theorem::kv_cor1:
    return d.p_unseen - d.mis - 2.0 * k / (delta * unseen);
  case Theorem::kv_cor2:
    return d.p_unseen - d.mis - k * (n + 1.0) / (delta * unseen);
  }
  return 0.0;
}

Cell make_cell(std::size_t model, Theorem t, double delta, double k, double unseen, double n, double r,
               bool strict) {
  Cell c{model, t, uses_delta(t) ? delta : kNaN};
  switch (t) {
  case Theorem::markov:
  case Theorem::cor_markov_mm:
    c.precondition_met = delta > k / unseen && delta < 1.0;
    break;
  case Theorem::markov_r:
    c.precondition_met = delta > r * k / unseen && delta < 1.0;
    break;
  case Theorem::kv_cor1:
  case Theorem::kv_cor2:
    c.precondition_met = delta > 0.0 && delta <= 1.0;
    break;
  default:
    break;
  }
  if (!c.precondition_met && strict)
    throw PreconditionError(std::string(theorem_name(t)) + ": delta = " + fmt_num(delta) +
                            " lies outside its admissible range (K/|U| = " + fmt_num(k / unseen) + ", r = " +
                            fmt_num(r) + ")");
  switch (t) {
  case Theorem::highconf:
  case Theorem::cor_highconf_mm:
    c.guaranteed = 1.0 - k / unseen;
    break;
  case Theorem::highconf_r:
    c.guaranteed = 1.0 - r * k / unseen;
    break;
  default:
    c.guaranteed = 1.0 - delta;
  }
  switch (t) {
  case Theorem::markov:
    c.vacuous = k / (delta * unseen) >= 1.0;
    break;
  case Theorem::markov_r:
    c.vacuous = r * k / (delta * unseen) >= 1.0;
    break;
  case Theorem::cor_markov_mm:
    c.vacuous = 1.0 / (delta * unseen) >= 1.0 / (k + 1.0);
    break;
  case Theorem::kv_cor1:
    c.vacuous = 2.0 * k / (delta * unseen) >= 1.0;
    break;
  case Theorem::kv_cor2:
    c.vacuous = k * (n + 1.0) / (delta * unseen) >= 1.0;
    break;
  default:
    break;
  }
  return c;
}

} // namespace

std::vector<TrialReport> mc_corpus(const MetaSpec& meta, std::span<const ModelKind> models,
                                   std::span<const Theorem> theorems, std::span<const DeltaSpec> deltas,
                                   std::uint64_t n, std::size_t corpus_index, const McOptions& opts,
                                   std::uint64_t seed) {
  meta.validate();
  if (opts.trials < 1) throw PreconditionError("Monte Carlo needs at least one trial");
  auto world_rng = derive_rng(seed, {corpus_index, 0});
  const World truth = sample_world(meta, world_rng);
  const Corpus corpus = sample_corpus(truth, n, world_rng);
  const Posterior post = exact_posterior(meta, corpus);
  const auto unseen = corpus.unseen_set();
  const double k = as_double(meta.k_max);
  const double u = as_double(unseen.size());
  const double r = regularity_ratio(post).r;

  std::vector<PreparedModel> prepared;
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto rng = derive_rng(seed, {corpus_index, 1, i});
    Model g = build_model(models[i], truth, corpus, opts.battery, rng);
    const double gu = innovation_rate(g, corpus);
    auto levels = level_set_partition(g.dist);
    prepared.push_back({std::move(g), gu, std::move(levels)});
  }
  auto partition_rng = derive_rng(seed, {corpus_index, 3});
  const Partition random_pi = random_partition(meta.n_statements, partition_rng);

  std::vector<Cell> cells;
  for (std::size_t m = 0; m < prepared.size(); ++m) {
    for (auto t : theorems) {
      if (!uses_delta(t)) {
        cells.push_back(make_cell(m, t, kNaN, k, u, as_double(n), r, opts.strict));
        continue;
      }
      for (const auto& d : deltas)
        cells.push_back(make_cell(m, t, d.resolve(meta.k_max, unseen.size()), k, u, as_double(n), r, opts.strict));
    }
  }

  const unsigned workers = resolve_threads(opts.threads);
  std::vector<std::vector<std::size_t>> successes(workers, std::vector<std::size_t>(cells.size(), 0));
  parallel_for(opts.trials, workers, [&](std::size_t draw, unsigned w) {
    auto rng = derive_rng(seed, {corpus_index, 2, draw});
    const World p = sample_conditional_world(post, rng);
    const double p_unseen = mass_on(p.dist, unseen);
    std::vector<double> g_hall(prepared.size());
    std::vector<DrawTerms> terms(prepared.size());
    for (std::size_t m = 0; m < prepared.size(); ++m) {
      const auto& pm = prepared[m];
      g_hall[m] = hallucinated_mass(pm.model.dist, p, unseen);
      const double mis = tv_distance(pm.model.dist, coarsen(p.dist, pm.level_sets));
      const double tv = opts.partition == PartitionMode::level_sets ? mis
                                                                    : tv_distance(pm.model.dist, coarsen(p.dist, random_pi));
      terms[m] = {pm.g_unseen, p_unseen, tv, mis};
    }
    auto& local = successes[w];
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto& cell = cells[c];
      const double rhs = bound_rhs(cell.theorem, cell.delta, k, u, as_double(n), r, terms[cell.model]);
      local[c] += g_hall[cell.model] >= rhs - kBoundTolerance;
    }
  });

  std::vector<TrialReport> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    TrialReport rep;
    rep.theorem = cell.theorem;
    rep.n_statements = meta.n_statements;
    rep.k = meta.k_max;
    rep.n = n;
    rep.unseen = unseen.size();
    rep.delta = cell.delta;
    rep.r = r;
    rep.model = prepared[cell.model].model.provenance;
    rep.seed = seed;
    rep.corpus_index = corpus_index;
    rep.trials = opts.trials;
    for (const auto& local : successes) rep.successes += local[c];
    rep.empirical_freq = as_double(rep.successes) / as_double(rep.trials);
    rep.guaranteed_freq = cell.guaranteed;
    const double f = std::clamp(cell.guaranteed, 0.0, 1.0);
    rep.binomial_slack = 3.0 * std::sqrt(f * (1.0 - f) / as_double(rep.trials));
    rep.pass = rep.empirical_freq >= rep.guaranteed_freq - rep.binomial_slack;
    rep.precondition_met = cell.precondition_met;
    rep.vacuous = cell.vacuous;
    out.push_back(std::move(rep));
  }
  return out;
}

TrialReport mc_verify(Theorem theorem, const MetaSpec& meta, ModelKind model, std::uint64_t n, double delta,
                      const McOptions& opts, std::uint64_t seed) {
  const ModelKind models[] = {model};
  const Theorem theorems[] = {theorem};
  const DeltaSpec deltas[] = {{delta, false}};
  return mc_corpus(meta, models, theorems, deltas, n, 0, opts, seed).front();
}

std::string trial_csv_header() { return "theorem,N,K,n,delta,r,model,trials,successes,freq,guaranteed,slack,pass"; }

std::string to_csv_row(const TrialReport& r) {
  std::string row;
  row += theorem_name(r.theorem);
  row += ',' + std::to_string(r.n_statements);
  row += ',' + std::to_string(r.k);
  row += ',' + std::to_string(r.n);
  row += ',' + fmt_num(r.delta);
  row += ',' + fmt_num(r.r);
  row += ',' + csv_quote(r.model);
  row += ',' + std::to_string(r.trials);
  row += ',' + std::to_string(r.successes);
  row += ',' + fmt_num(r.empirical_freq);
  row += ',' + fmt_num(r.guaranteed_freq);
  row += ',' + fmt_num(r.binomial_slack);
  row += r.pass ? ",1" : ",0";
  return row;
}

void to_json(nlohmann::json& j, const TrialReport& r) {
  j = nlohmann::json{{"theorem", theorem_name(r.theorem)},
                     {"N", r.n_statements},
                     {"K", r.k},
                     {"n", r.n},
                     {"unseen", r.unseen},
                     {"delta", std::isnan(r.delta) ? nlohmann::json() : nlohmann::json(r.delta)},
                     {"r", r.r},
                     {"model", r.model},
                     {"seed", r.seed},
                     {"corpus", r.corpus_index},
                     {"trials", r.trials},
                     {"successes", r.successes},
                     {"freq", r.empirical_freq},
                     {"guaranteed", r.guaranteed_freq},
                     {"slack", r.binomial_slack},
                     {"pass", r.pass},
                     {"precondition_met", r.precondition_met},
                     {"vacuous", r.vacuous}};
}

RegimeComparison compare_regimes(const Dist& g, const World& truth, const Corpus& corpus, std::size_t k,
                                 double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw PreconditionError("delta must lie in (0, 1]");
  RegimeComparison c;
  c.k = k;
  c.n = corpus.n();
  c.unseen = corpus.unseen_set().size();
  c.delta = delta;
  c.missing_mass = missing_mass(truth, corpus);
  c.miscalibration = miscalibration(g, truth.dist);
  const double kd = as_double(k);
  const double du = delta * as_double(c.unseen);
  const double kv_error = kd * (as_double(c.n) + 1.0) / du;
  c.kv_cor2_rhs = c.missing_mass - c.miscalibration - kv_error;
  c.cor_markov_mm_rhs = c.missing_mass / (kd + 1.0) - 1.0 / du - c.miscalibration;
  c.kv_cor2_vacuous = kv_error >= 1.0;
  return c;
}

void to_json(nlohmann::json& j, const RegimeComparison& c) {
  j = nlohmann::json{{"K", c.k},
                     {"n", c.n},
                     {"unseen", c.unseen},
                     {"delta", c.delta},
                     {"missing_mass", c.missing_mass},
                     {"miscalibration", c.miscalibration},
                     {"kv_cor2_rhs", c.kv_cor2_rhs},
                     {"cor_markov_mm_rhs", c.cor_markov_mm_rhs},
                     {"kv_cor2_vacuous", c.kv_cor2_vacuous}};
}

std::vector<TightnessRow> tightness_probe(const MetaSpec& meta, std::uint64_t n, std::uint64_t seed,
                                          std::size_t trials, const BatteryOptions& battery, unsigned threads) {
  auto world_rng = derive_rng(seed, {0, 0});
  const World truth = sample_world(meta, world_rng);
  const Corpus corpus = sample_corpus(truth, n, world_rng);
  const Posterior post = exact_posterior(meta, corpus);
  const auto unseen = corpus.unseen_set();
  const double k = as_double(meta.k_max);

  std::vector<Model> models;
  std::vector<double> g_unseen;
  for (std::size_t i = 0; i < std::size(kModelNames); ++i) {
    auto rng = derive_rng(seed, {0, 1, i});
    Model g = build_model(kModelNames[i].first, truth, corpus, battery, rng);
    const double gu = innovation_rate(g, corpus);
    if (!(gu > 0.0)) continue;
    models.push_back(std::move(g));
    g_unseen.push_back(gu);
  }

  std::vector<std::vector<double>> ratios(models.size(), std::vector<double>(trials));
  parallel_for(trials, threads, [&](std::size_t draw, unsigned) {
    auto rng = derive_rng(seed, {0, 2, draw});
    const World p = sample_conditional_world(post, rng);
    for (std::size_t m = 0; m < models.size(); ++m)
      ratios[m][draw] = hallucinated_mass(models[m].dist, p, unseen) * (k + 1.0) / g_unseen[m];
  });

  std::vector<TightnessRow> rows;
  for (std::size_t m = 0; m < models.size(); ++m) {
    TightnessRow row;
    row.model = models[m].provenance;
    row.trials = trials;
    row.guaranteed_freq = 1.0 - k / as_double(unseen.size());
    row.min_ratio = std::numeric_limits<double>::infinity();
    row.min_ratio_in_event = std::numeric_limits<double>::infinity();
    std::size_t in_event = 0;
    double sum = 0.0;
    for (double v : ratios[m]) {
      row.min_ratio = std::min(row.min_ratio, v);
      sum += v;
      if (v >= 1.0 - kBoundTolerance) {
        ++in_event;
        row.min_ratio_in_event = std::min(row.min_ratio_in_event, v);
      }
    }
    row.mean_ratio = sum / as_double(trials);
    row.event_freq = as_double(in_event) / as_double(trials);
    rows.push_back(std::move(row));
  }
  return rows;
}

void to_json(nlohmann::json& j, const TightnessRow& row) {
  auto finite = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  j = nlohmann::json{{"model", row.model},
                     {"trials", row.trials},
                     {"min_ratio", finite(row.min_ratio)},
                     {"mean_ratio", row.mean_ratio},
                     {"event_freq", row.event_freq},
                     {"min_ratio_in_event", finite(row.min_ratio_in_event)},
                     {"guaranteed_freq", row.guaranteed_freq}};
}

void to_json(nlohmann::json& j, const SweepSummary& s) {
  j = nlohmann::json{{"name", s.name},
                     {"instances", s.instances},
                     {"failures", s.failures},
                     {"min_slack", s.min_slack}};
  if (s.first_failure)
    j["first_failure"] = {{"lhs", s.first_failure->lhs}, {"rhs", s.first_failure->rhs}, {"check", s.first_failure->name}};
}

namespace {

void accumulate(SweepSummary& s, const BoundCheck& c) {
  if (!c.applicable) return;
  s.min_slack = s.instances == 0 ? c.slack : std::min(s.min_slack, c.slack);
  ++s.instances;
  if (!c.holds) {
    ++s.failures;
    if (!s.first_failure) s.first_failure = c;
  }
}

MetaSpec random_meta(std::size_t max_statements, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick_n(2, std::max<std::size_t>(2, max_statements));
  MetaSpec m;
  m.n_statements = pick_n(rng);
  std::uniform_int_distribution<std::size_t> pick_k(1, m.n_statements - 1);
  m.k_max = pick_k(rng);
  static constexpr double kAlphas[] = {0.3, 1.0, 3.0};
  m.alpha = kAlphas[std::uniform_int_distribution<int>(0, 2)(rng)];
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
  case 0:
    break;
  case 1:
    m.support_size = SupportSize::mixed;
    break;
  case 2: {
    m.support_prior = SupportPrior::weighted;
    std::uniform_real_distribution<double> w(0.5, 3.0);
    m.weights.resize(m.n_statements);
    for (auto& v : m.weights) v = w(rng);
    break;
  }
  default:
    m.support_prior = SupportPrior::fixed_size;
    m.fixed_size = std::uniform_int_distribution<std::size_t>(1, m.k_max)(rng);
  }
  return m;
}

/// An arbitrary predictive distribution: Dirichlet weights on a random subset.
Model random_model(std::size_t n, Rng& rng) {
  std::bernoulli_distribution keep(0.5);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> m(n, 0.0);
  double total = 0.0;
  for (auto& v : m)
    if (keep(rng)) total += v = expo(rng);
  if (!(total > 0.0)) {
    m[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = 1.0;
    total = 1.0;
  }
  for (auto& v : m) v /= total;
  return {Dist(std::move(m)), "random"};
}

} // namespace

std::vector<SweepSummary> deterministic_sweep(std::size_t instances, std::size_t max_statements, std::uint64_t seed,
                                              unsigned threads) {
  constexpr std::size_t kChecks = 5;
  std::vector<std::array<BoundCheck, kChecks>> results(instances);
  parallel_for(instances, threads, [&](std::size_t i, unsigned) {
    auto rng = derive_rng(seed, {i});
    const MetaSpec meta = random_meta(max_statements, rng);
    const World world = sample_world(meta, rng);
    const std::uint64_t n = std::uniform_int_distribution<std::uint64_t>(1, 3 * meta.n_statements)(rng);
    const Corpus corpus = sample_corpus(world, n, rng);
    const Partition pi = random_partition(meta.n_statements, rng);
    const int pick = std::uniform_int_distribution<int>(0, 6)(rng);
    BatteryOptions battery{std::uniform_real_distribution<double>(0.0, 1.0)(rng),
                           std::uniform_real_distribution<double>(0.0, 0.5)(rng)};
    if (corpus.unseen_set().empty()) battery.beta = 0.0;
    const Model g = pick == 6 ? random_model(meta.n_statements, rng)
                              : build_model(static_cast<ModelKind>(pick), world, corpus, battery, rng);
    results[i] = {check_hall_implies_innov(g.dist, world, corpus), check_calib_mm_innov(world, corpus, pi),
                  check_coarsening_lemma(world, corpus, pi, meta.k_max),
                  check_coarsening_lemma_cellwise(world, corpus, pi, meta.k_max),
                  check_innov_mm(g.dist, world, corpus, pi, meta.k_max)};
  });
  std::vector<SweepSummary> out;
  for (const char* name :
       {"hall_implies_innov", "calib_mm_innov", "coarsening_lemma", "coarsening_lemma_cellwise", "innov_mm"}) {
    out.emplace_back();
    out.back().name = name;
  }
  for (const auto& r : results)
    for (std::size_t c = 0; c < kChecks; ++c) accumulate(out[c], r[c]);
  return out;
}

std::vector<Corpus> enumerate_corpora(std::size_t n_statements, std::size_t max_observed, std::uint64_t max_n) {
  std::vector<Corpus> out;
  std::vector<std::uint64_t> counts(n_statements, 0);
  // Depth-first over statements, assigning each a count from what remains.
  auto recurse = [&](auto&& self, std::size_t y, std::uint64_t remaining, std::size_t distinct) -> void {
    if (y == n_statements) {
      if (remaining == 0) out.emplace_back(counts);
      return;
    }
    for (std::uint64_t c = 0; c <= remaining; ++c) {
      if (c > 0 && distinct + 1 > max_observed) break;
      counts[y] = c;
      self(self, y + 1, remaining - c, distinct + (c > 0));
    }
    counts[y] = 0;
  };
  for (std::uint64_t total = 1; total <= max_n; ++total) recurse(recurse, 0, total, 0);
  return out;
}

std::vector<Model> exact_battery(const Posterior& post, const BatteryOptions& opts, Rng& rng) {
  const Corpus& corpus = post.corpus();
  std::vector<Model> models;
  models.push_back(empirical_model(corpus));
  models.push_back({Dist::uniform(corpus.n_statements()), "uniform"});
  if (corpus.unseen_set().empty()) return models;
  models.push_back(scatter_model(corpus, opts.beta));
  for (auto y : corpus.unseen_set()) models.push_back(spike_model_at(corpus, opts.beta, y));
  const World reference = sample_conditional_world(post, rng);
  models.push_back(calibrated_model(reference, random_partition(corpus.n_statements(), rng)));
  models.push_back(calibrated_model(reference, Partition::single_cell(corpus.n_statements())));
  models.push_back(
      perturbed_calibrated_model(reference, random_partition(corpus.n_statements(), rng), opts.eps, rng).model);
  return models;
}

void to_json(nlohmann::json& j, const ExactSweepSummary& s) {
  j = nlohmann::json{{"corpora", s.corpora},
                     {"thm32", s.thm32},
                     {"expected_rate", s.expected_rate},
                     {"max_marginal_error", s.max_marginal_error},
                     {"max_r_error", s.max_r_error},
                     {"max_r", s.max_r},
                     {"max_mean_mass_spread", s.max_mean_mass_spread}};
}

ExactSweepSummary exact_sweep(const MetaSpec& meta, std::uint64_t max_n, bool use_r, std::uint64_t seed,
                              const BatteryOptions& battery, unsigned threads) {
  meta.validate();
  const auto corpora = enumerate_corpora(meta.n_statements, meta.max_support_size(), max_n);
  struct PerCorpus {
    std::vector<BoundCheck> thm32, rate;
    double marginal_error = 0.0, r = 1.0, spread = 0.0;
  };
  std::vector<PerCorpus> results(corpora.size());
  parallel_for(corpora.size(), threads, [&](std::size_t i, unsigned) {
    const Posterior post = exact_posterior(meta, corpora[i]);
    auto rng = derive_rng(seed, {i});
    auto& res = results[i];
    for (const auto& g : exact_battery(post, battery, rng)) {
      res.thm32.push_back(exact_check_thm32(post, g.dist, use_r));
      res.rate.push_back(exact_check_expected_rate(post, g.dist, use_r));
    }
    const auto unseen = corpora[i].unseen_set();
    const double symmetric = (as_double(meta.k_max) - as_double(corpora[i].observed_set().size())) /
                             as_double(unseen.size());
    const auto mean_mass = posterior_mean_mass(post);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto y : unseen) {
      res.marginal_error = std::max(res.marginal_error, std::abs(post.fact_marginals()[y] - symmetric));
      lo = std::min(lo, mean_mass[y]);
      hi = std::max(hi, mean_mass[y]);
    }
    res.spread = hi - lo;
    res.r = regularity_ratio(post).r;
  });
  ExactSweepSummary out;
  out.corpora = corpora.size();
  out.thm32.name = use_r ? "thm32_r" : "thm32";
  out.expected_rate.name = use_r ? "expected_rate_r" : "expected_rate";
  for (const auto& res : results) {
    for (const auto& c : res.thm32) accumulate(out.thm32, c);
    for (const auto& c : res.rate) accumulate(out.expected_rate, c);
    out.max_marginal_error = std::max(out.max_marginal_error, res.marginal_error);
    out.max_r_error = std::max(out.max_r_error, std::abs(res.r - 1.0));
    out.max_r = std::max(out.max_r, res.r);
    out.max_mean_mass_spread = std::max(out.max_mean_mass_spread, res.spread);
  }
  return out;
}

} // namespace innov
