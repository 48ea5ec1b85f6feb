#include "innov/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "innov/models.hpp"
#include "innov/parallel.hpp"

namespace innov {

double innovation_rate(const Dist& g, const Corpus& corpus) {
  if (g.size() != corpus.n_statements()) throw DimensionMismatch(corpus.n_statements(), g.size());
  return std::min(1.0, mass_on(g, corpus.unseen_set()));
}

double innovation_rate(const Model& g, const Corpus& corpus) { return innovation_rate(g.dist, corpus); }

double hallucination_rate(const Dist& g, const World& world) {
  if (g.size() != world.n_statements()) throw DimensionMismatch(world.n_statements(), g.size());
  double total = 0.0;
  for (StatementId y = 0; y < g.size(); ++y)
    if (!world.is_fact(y)) total += g[y];
  return std::min(1.0, total);
}

double hallucination_rate(const Model& g, const World& world) { return hallucination_rate(g.dist, world); }

double missing_mass(const World& world, const Corpus& corpus) {
  if (world.n_statements() != corpus.n_statements()) throw DimensionMismatch(world.n_statements(), corpus.n_statements());
  return std::min(1.0, mass_on(world.dist, corpus.unseen_set()));
}

double expected_missing_mass(const Dist& p, std::uint64_t n) {
  double total = 0.0;
  for (double m : p.mass()) total += m * std::pow(1.0 - m, static_cast<double>(n));
  return total;
}

double good_turing(const Corpus& corpus) {
  if (corpus.n() == 0) throw PreconditionError("Good-Turing estimate of an empty corpus");
  std::uint64_t singletons = 0;
  for (auto c : corpus.counts()) singletons += c == 1;
  return static_cast<double>(singletons) / static_cast<double>(corpus.n());
}

namespace {

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw PreconditionError("incomplete beta needs a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double beta_quantile(double q, double a, double b) {
  if (!(q >= 0.0 && q <= 1.0)) throw PreconditionError("quantile level must lie in [0, 1]");
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (incomplete_beta(a, b, mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

IntervalEstimate clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence) {
  if (trials < 1 || successes > trials) throw PreconditionError("Clopper-Pearson needs 0 <= successes <= trials, trials >= 1");
  if (!(confidence > 0.0 && confidence < 1.0)) throw PreconditionError("confidence must lie in (0, 1)");
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  const double tail = (1.0 - confidence) / 2.0;
  IntervalEstimate est;
  est.confidence = confidence;
  est.point = k / n;
  est.lo = successes == 0 ? 0.0 : beta_quantile(tail, k, n - k + 1.0);
  est.hi = successes == trials ? 1.0 : beta_quantile(1.0 - tail, k + 1.0, n - k);
  est.lo = std::min(est.lo, est.point);
  est.hi = std::max(est.hi, est.point);
  return est;
}

namespace {

template <typename T>
double cosine_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * static_cast<double>(v[i]);
    nu += static_cast<double>(u[i]) * static_cast<double>(u[i]);
    nv += static_cast<double>(v[i]) * static_cast<double>(v[i]);
  }
  if (!(nu > 0.0) || !(nv > 0.0)) throw PreconditionError("cosine similarity of a zero vector");
  return std::clamp(dot / std::sqrt(nu * nv), -1.0, 1.0);
}

constexpr double kNormTolerance = 1e-4;

double row_norm(std::span<const float> r) {
  double s = 0.0;
  for (float v : r) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}

std::uint32_t read_u32_le(std::span<const std::byte> b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) | (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) | (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

void write_u32_le(std::vector<std::byte>& out, std::uint32_t v) {
  for (int s = 0; s < 32; s += 8) out.push_back(static_cast<std::byte>((v >> s) & 0xffu));
}

constexpr std::size_t kHeaderBytes = 16;

} // namespace

double cosine_similarity(std::span<const float> u, std::span<const float> v) { return cosine_impl(u, v); }
double cosine_similarity(std::span<const double> u, std::span<const double> v) { return cosine_impl(u, v); }

EmbeddingTable::EmbeddingTable(std::size_t count, std::size_t dim, std::vector<float> rows)
    : count_(count), dim_(dim), rows_(std::move(rows)) {
  if (dim_ == 0) throw PreconditionError("embedding dimension must be positive");
  if (rows_.size() != count_ * dim_) throw DimensionMismatch(count_ * dim_, rows_.size());
  for (std::size_t i = 0; i < count_; ++i) {
    const double norm = row_norm(row(i));
    if (!(std::abs(norm - 1.0) <= kNormTolerance))
      throw EmbFormatError(EmbFormatFault::not_normalized,
                           "embedding row " + std::to_string(i) + " has norm " + std::to_string(norm));
  }
}

EmbeddingTable EmbeddingTable::normalized(std::size_t count, std::size_t dim, std::vector<float> rows) {
  if (dim == 0 || rows.size() != count * dim) throw DimensionMismatch(count * dim, rows.size());
  for (std::size_t i = 0; i < count; ++i) {
    const std::span<float> r(rows.data() + i * dim, dim);
    const double norm = row_norm(r);
    if (!(norm > 0.0)) throw PreconditionError("cannot normalize a zero embedding row");
    for (float& v : r) v = static_cast<float>(v / norm);
  }
  return EmbeddingTable(count, dim, std::move(rows));
}

EmbeddingTable parse_iemb(std::span<const std::byte> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "IEMB", 4) != 0)
    throw EmbFormatError(EmbFormatFault::bad_magic, "not an IEMB file: bad magic");
  if (bytes.size() < kHeaderBytes) throw EmbFormatError(EmbFormatFault::truncated, "IEMB header truncated");
  const auto version = read_u32_le(bytes, 4);
  if (version != 1)
    throw EmbFormatError(EmbFormatFault::bad_version, "unsupported IEMB version " + std::to_string(version));
  const std::size_t count = read_u32_le(bytes, 8);
  const std::size_t dim = read_u32_le(bytes, 12);
  const std::size_t expected = kHeaderBytes + 4 * count * dim;
  if (bytes.size() < expected)
    throw EmbFormatError(EmbFormatFault::truncated, "IEMB payload truncated: expected " + std::to_string(expected) +
                                                        " bytes, found " + std::to_string(bytes.size()));
  if (bytes.size() > expected)
    throw EmbFormatError(EmbFormatFault::trailing_bytes, "IEMB file has " + std::to_string(bytes.size() - expected) +
                                                             " trailing bytes");
  std::vector<float> rows(count * dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i] = std::bit_cast<float>(read_u32_le(bytes, kHeaderBytes + 4 * i));
  return EmbeddingTable(count, dim, std::move(rows));
}

EmbeddingTable load_iemb(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embeddings file " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> bytes(raw.size());
  std::memcpy(bytes.data(), raw.data(), raw.size());
  return parse_iemb(bytes);
}

std::vector<std::byte> encode_iemb(const EmbeddingTable& table) {
  std::vector<std::byte> out;
  out.reserve(kHeaderBytes + 4 * table.data().size());
  for (char c : {'I', 'E', 'M', 'B'}) out.push_back(static_cast<std::byte>(c));
  write_u32_le(out, 1);
  write_u32_le(out, static_cast<std::uint32_t>(table.count()));
  write_u32_le(out, static_cast<std::uint32_t>(table.dim()));
  for (float v : table.data()) write_u32_le(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

double semantic_innovation_rate(const EmbeddingTable& generated, const EmbeddingTable& training, double threshold,
                                unsigned threads) {
  if (generated.dim() != training.dim()) throw DimensionMismatch(training.dim(), generated.dim());
  if (generated.count() == 0) throw PreconditionError("no generated rows");
  std::vector<char> novel(generated.count(), 0);
  parallel_for(generated.count(), threads, [&](std::size_t i, unsigned) {
    const auto g = generated.row(i);
    bool close = false;
    for (std::size_t t = 0; t < training.count() && !close; ++t) {
      double dot = 0.0;
      const auto r = training.row(t);
      for (std::size_t k = 0; k < g.size(); ++k) dot += static_cast<double>(g[k]) * static_cast<double>(r[k]);
      close = !(std::clamp(dot, -1.0, 1.0) < threshold);
    }
    novel[i] = !close;
  });
  const auto hits = std::count(novel.begin(), novel.end(), 1);
  return static_cast<double>(hits) / static_cast<double>(generated.count());
}

double empirical_innovation_rate(std::span<const TokenSeq> generated, const std::set<TokenSeq>& training, bool dedup) {
  if (generated.empty()) throw PreconditionError("no generated statements");
  if (dedup) {
    const std::set<TokenSeq> distinct(generated.begin(), generated.end());
    std::size_t novel = 0;
    for (const auto& s : distinct) novel += !training.contains(s);
    return static_cast<double>(novel) / static_cast<double>(distinct.size());
  }
  std::size_t novel = 0;
  for (const auto& s : generated) novel += !training.contains(s);
  return static_cast<double>(novel) / static_cast<double>(generated.size());
}

} // namespace innov
