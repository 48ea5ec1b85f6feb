#pragma once

// Discrete probability objects over a finite statement universe {0, ..., N-1}.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

namespace innov {

using StatementId = std::size_t;

/// Upper bound on the universe size handled by dense vectors.
inline constexpr std::size_t kMaxStatements = 4096;

/// Probability vector over N statements. Entries are non-negative and sum to 1.
///
/// Construction keeps inputs whose sum is within 1e-9 of 1 as given, renormalizes
/// inputs within 1e-6, and rejects anything further off.
class Dist {
public:
  explicit Dist(std::vector<double> mass);

  static Dist uniform(std::size_t n);
  static Dist point_mass(std::size_t n, StatementId at);
  /// Uniform over `support`, zero elsewhere.
  static Dist uniform_on(std::size_t n, std::span<const StatementId> support);

  std::size_t size() const { return mass_.size(); }
  double operator[](StatementId y) const { return mass_[y]; }
  std::span<const double> mass() const { return mass_; }

  friend bool operator==(const Dist&, const Dist&) = default;

private:
  std::vector<double> mass_;
};

/// Partition of the universe into nonempty cells numbered 0..n_cells-1.
class Partition {
public:
  explicit Partition(std::vector<std::size_t> cell_of);

  static Partition singletons(std::size_t n);
  static Partition single_cell(std::size_t n);

  std::size_t size() const { return cell_of_.size(); }
  std::size_t n_cells() const { return cells_.size(); }
  std::size_t cell_of(StatementId y) const { return cell_of_[y]; }
  std::span<const std::size_t> cell_index() const { return cell_of_; }
  /// Members of cell `c`, ascending.
  std::span<const StatementId> cell(std::size_t c) const { return cells_[c]; }

  friend bool operator==(const Partition& a, const Partition& b) { return a.cell_of_ == b.cell_of_; }

private:
  std::vector<std::size_t> cell_of_;
  std::vector<std::vector<StatementId>> cells_;
};

/// Multiset of n draws, stored as per-statement counts. O and U are derived once.
class Corpus {
public:
  explicit Corpus(std::vector<std::uint64_t> counts);

  std::size_t n_statements() const { return counts_.size(); }
  std::uint64_t n() const { return n_; }
  std::uint64_t count(StatementId y) const { return counts_[y]; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  bool observed(StatementId y) const { return counts_[y] > 0; }
  std::span<const StatementId> observed_set() const { return observed_; }
  std::span<const StatementId> unseen_set() const { return unseen_; }

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.counts_ == b.counts_; }

private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t n_ = 0;
  std::vector<StatementId> observed_;
  std::vector<StatementId> unseen_;
};

/// Total variation distance, computed as half the L1 distance.
double tv_distance(const Dist& p, const Dist& q);

/// p^Pi: each statement receives the mean mass of its cell.
Dist coarsen(const Dist& p, const Partition& pi);

/// Level sets of g under exact value equality, cells numbered by ascending value.
Partition level_set_partition(const Dist& g);

/// Level sets where sorted neighbouring values closer than `epsilon` are merged.
/// For float-noisy inputs only; epsilon = 0 gives level_set_partition.
Partition level_set_partition(const Dist& g, double epsilon);

/// Mis(g, p) = TV(g, coarsen(p, level sets of g)).
double miscalibration(const Dist& g, const Dist& p);

double mass_on(const Dist& p, std::span<const StatementId> s);

void to_json(nlohmann::json& j, const Dist& d);
void to_json(nlohmann::json& j, const Partition& pi);
Dist dist_from_json(const nlohmann::json& j);
Partition partition_from_json(const nlohmann::json& j);

} // namespace innov
