#include "innov/distcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "innov/error.hpp"

namespace innov {

namespace {

constexpr double kExactTolerance = 1e-9;
constexpr double kRenormTolerance = 1e-6;

void require_same_size(std::size_t expected, std::size_t got) {
  if (expected != got) throw DimensionMismatch(expected, got);
}

} // namespace

Dist::Dist(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw PreconditionError("distribution over an empty universe");
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0) || !std::isfinite(m))
      throw PreconditionError("distribution entries must be finite and non-negative");
    total += m;
  }
  const double drift = std::abs(total - 1.0);
  if (drift <= kExactTolerance) return;
  if (drift > kRenormTolerance)
    throw PreconditionError("distribution sums to " + std::to_string(total) + ", not 1");
  for (double& m : mass_) m /= total;
}

Dist Dist::uniform(std::size_t n) {
  if (n == 0) throw PreconditionError("distribution over an empty universe");
  return Dist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Dist Dist::point_mass(std::size_t n, StatementId at) {
  if (at >= n) throw PreconditionError("statement id out of range");
  std::vector<double> m(n, 0.0);
  m[at] = 1.0;
  return Dist(std::move(m));
}

Dist Dist::uniform_on(std::size_t n, std::span<const StatementId> support) {
  if (support.empty()) throw PreconditionError("uniform distribution over an empty support");
  std::vector<double> m(n, 0.0);
  const double w = 1.0 / static_cast<double>(support.size());
  for (auto y : support) {
    if (y >= n) throw PreconditionError("statement id out of range");
    m[y] = w;
  }
  return Dist(std::move(m));
}

Partition::Partition(std::vector<std::size_t> cell_of) : cell_of_(std::move(cell_of)) {
  if (cell_of_.empty()) throw PreconditionError("partition of an empty universe");
  const std::size_t n_cells = *std::max_element(cell_of_.begin(), cell_of_.end()) + 1;
  cells_.resize(n_cells);
  for (StatementId y = 0; y < cell_of_.size(); ++y) cells_[cell_of_[y]].push_back(y);
  for (const auto& c : cells_)
    if (c.empty()) throw PreconditionError("partition cells must be nonempty and numbered densely");
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::size_t> c(n);
  std::iota(c.begin(), c.end(), std::size_t{0});
  return Partition(std::move(c));
}

Partition Partition::single_cell(std::size_t n) { return Partition(std::vector<std::size_t>(n, 0)); }

Corpus::Corpus(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw PreconditionError("corpus over an empty universe");
  for (StatementId y = 0; y < counts_.size(); ++y) {
    n_ += counts_[y];
    (counts_[y] > 0 ? observed_ : unseen_).push_back(y);
  }
}

double tv_distance(const Dist& p, const Dist& q) {
  require_same_size(p.size(), q.size());
  double l1 = 0.0;
  for (StatementId y = 0; y < p.size(); ++y) l1 += std::abs(p[y] - q[y]);
  return std::min(1.0, 0.5 * l1);
}

Dist coarsen(const Dist& p, const Partition& pi) {
  require_same_size(p.size(), pi.size());
  std::vector<double> out(p.size());
  for (std::size_t c = 0; c < pi.n_cells(); ++c) {
    const auto cell = pi.cell(c);
    double cell_mass = 0.0;
    for (auto y : cell) cell_mass += p[y];
    const double avg = cell_mass / static_cast<double>(cell.size());
    for (auto y : cell) out[y] = avg;
  }
  return Dist(std::move(out));
}

Partition level_set_partition(const Dist& g) { return level_set_partition(g, 0.0); }

Partition level_set_partition(const Dist& g, double epsilon) {
  std::vector<StatementId> order(g.size());
  std::iota(order.begin(), order.end(), StatementId{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return g[a] < g[b]; });
  std::vector<std::size_t> cell_of(g.size());
  std::size_t cell = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) {
      const double prev = g[order[i - 1]];
      const double cur = g[order[i]];
      const bool same = epsilon > 0.0 ? (cur - prev) < epsilon : cur == prev;
      if (!same) ++cell;
    }
    cell_of[order[i]] = cell;
  }
  return Partition(std::move(cell_of));
}

double miscalibration(const Dist& g, const Dist& p) {
  require_same_size(g.size(), p.size());
  return tv_distance(g, coarsen(p, level_set_partition(g)));
}

double mass_on(const Dist& p, std::span<const StatementId> s) {
  double total = 0.0;
  for (auto y : s) {
    if (y >= p.size()) throw PreconditionError("statement id " + std::to_string(y) + " out of range");
    total += p[y];
  }
  return total;
}

void to_json(nlohmann::json& j, const Dist& d) {
  j = nlohmann::json{{"n_statements", d.size()},
                     {"mass", std::vector<double>(d.mass().begin(), d.mass().end())}};
}

void to_json(nlohmann::json& j, const Partition& pi) {
  j = nlohmann::json{{"n_statements", pi.size()},
                     {"n_cells", pi.n_cells()},
                     {"cell_of", std::vector<std::size_t>(pi.cell_index().begin(), pi.cell_index().end())}};
}

Dist dist_from_json(const nlohmann::json& j) { return Dist(j.at("mass").get<std::vector<double>>()); }

Partition partition_from_json(const nlohmann::json& j) {
  return Partition(j.at("cell_of").get<std::vector<std::size_t>>());
}

} // namespace innov
