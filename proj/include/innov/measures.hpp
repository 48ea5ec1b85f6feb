#pragma once

// Scalar estimators: innovation, hallucination, missing mass, Good-Turing, exact binomial
// intervals, and embedding-based semantic innovation.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "innov/distcore.hpp"
#include "innov/error.hpp"
#include "innov/worlds.hpp"

namespace innov {

struct Model;

/// g(U): the model's mass on statements absent from the corpus.
double innovation_rate(const Dist& g, const Corpus& corpus);
double innovation_rate(const Model& g, const Corpus& corpus);

/// g(H) = g(Ω \ F).
double hallucination_rate(const Dist& g, const World& world);
double hallucination_rate(const Model& g, const World& world);

/// p(U) under the true world.
double missing_mass(const World& world, const Corpus& corpus);

/// E[p(U)] = Σ_y p(y) (1 − p(y))^n for a corpus of n draws from p.
double expected_missing_mass(const Dist& p, std::uint64_t n);

/// N1 / n, the share of draws that are singletons.
double good_turing(const Corpus& corpus);

struct IntervalEstimate {
  double point = 0.0;
  double lo = 0.0;
  double hi = 1.0;
  double confidence = 0.95;
};

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// x with I_x(a, b) = q, by bisection to ~1e-15.
double beta_quantile(double q, double a, double b);

/// Exact (Clopper-Pearson) interval for k successes in n trials.
IntervalEstimate clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95);

double cosine_similarity(std::span<const float> u, std::span<const float> v);
double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// Row-major float32 matrix with L2-normalized rows (within 1e-4).
class EmbeddingTable {
public:
  EmbeddingTable(std::size_t count, std::size_t dim, std::vector<float> rows);

  /// Normalizes each row before building the table. Zero rows are rejected.
  static EmbeddingTable normalized(std::size_t count, std::size_t dim, std::vector<float> rows);

  std::size_t count() const { return count_; }
  std::size_t dim() const { return dim_; }
  std::span<const float> row(std::size_t i) const { return {rows_.data() + i * dim_, dim_}; }
  std::span<const float> data() const { return rows_; }

private:
  std::size_t count_;
  std::size_t dim_;
  std::vector<float> rows_;
};

enum class EmbFormatFault { bad_magic, bad_version, truncated, trailing_bytes, not_normalized };

class EmbFormatError : public Error {
public:
  EmbFormatError(EmbFormatFault fault, const std::string& what) : Error(what), fault_(fault) {}
  EmbFormatFault fault() const { return fault_; }

private:
  EmbFormatFault fault_;
};

/// Parses an IEMB buffer: "IEMB", u32 version = 1, u32 count, u32 dim, then count·dim
/// float32 values, all little-endian.
EmbeddingTable parse_iemb(std::span<const std::byte> bytes);
EmbeddingTable load_iemb(const std::filesystem::path& path);
std::vector<std::byte> encode_iemb(const EmbeddingTable& table);

/// Share of generated rows whose best cosine against the training rows is strictly
/// below `threshold`. The scan over generated rows runs on `threads` workers.
double semantic_innovation_rate(const EmbeddingTable& generated, const EmbeddingTable& training,
                                double threshold = 0.95, unsigned threads = 1);

using TokenId = std::uint32_t;
using TokenSeq = std::vector<TokenId>;

/// Share of generations not present in the training set. Duplicate generations count
/// separately unless `dedup` is set, in which case each distinct generation counts once.
double empirical_innovation_rate(std::span<const TokenSeq> generated, const std::set<TokenSeq>& training,
                                 bool dedup = false);

} // namespace innov
