#include "doctest.h"

#include <cmath>
#include <cstring>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "innov/measures.hpp"
#include "support.hpp"

using namespace innov;

TEST_CASE("innovation, hallucination and missing mass") {
  const World w({0, 1}, Dist({0.5, 0.5, 0.0, 0.0}));
  const Corpus c({1, 0, 0, 0});
  const Dist g({0.4, 0.3, 0.2, 0.1});
  CHECK(innovation_rate(g, c) == doctest::Approx(0.6));
  CHECK(hallucination_rate(g, w) == doctest::Approx(0.3));
  CHECK(missing_mass(w, c) == doctest::Approx(0.5));
}

TEST_CASE("expected missing mass closed form and Monte Carlo") {
  CHECK(expected_missing_mass(Dist::uniform(20), 50) == doctest::Approx(std::pow(0.95, 50)));
  const Dist p({0.5, 0.3, 0.2});
  Rng rng(31);
  const World w({0, 1, 2}, p);
  const int trials = 20000;
  double sum = 0, sq = 0;
  for (int i = 0; i < trials; ++i) {
    const double m = missing_mass(w, sample_corpus(w, 5, rng));
    sum += m;
    sq += m * m;
  }
  const double mean = sum / trials, sd = std::sqrt((sq / trials - mean * mean) / trials);
  CHECK(std::abs(mean - expected_missing_mass(p, 5)) <= 4 * sd);
}

TEST_CASE("good-turing counts singletons") {
  CHECK(good_turing(Corpus({1, 2, 1, 0})) == doctest::Approx(0.5));
  CHECK(good_turing(Corpus({3, 0})) == 0.0);
  CHECK_THROWS(good_turing(Corpus({0, 0})));
}

TEST_CASE("incomplete beta agrees with boost") {
  for (double a : {0.5, 1.0, 3.0, 17.5})
    for (double b : {0.7, 2.0, 40.0})
      for (double x : {0.0, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0})
        CHECK(incomplete_beta(a, b, x) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-12));
}

TEST_CASE("clopper-pearson agrees with boost beta quantiles") {
  for (std::uint64_t n : {1u, 10u, 57u, 1000u}) {
    for (std::uint64_t k = 0; k <= n; k += std::max<std::uint64_t>(1, n / 7)) {
      const auto ci = clopper_pearson(k, n, 0.95);
      const double lo = k == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1), 0.025);
      const double hi = k == n ? 1.0 : boost::math::quantile(boost::math::beta_distribution<>(k + 1, n - k), 0.975);
      CHECK(ci.lo == doctest::Approx(lo).epsilon(1e-9));
      CHECK(ci.hi == doctest::Approx(hi).epsilon(1e-9));
      CHECK(ci.point == doctest::Approx(double(k) / n));
    }
  }
  CHECK(clopper_pearson(0, 10).hi == doctest::Approx(1 - std::pow(0.025, 0.1)).epsilon(1e-12));
  CHECK_THROWS(clopper_pearson(3, 2));
  CHECK_THROWS(clopper_pearson(0, 0));
}

namespace {

std::vector<std::byte> read_fixture(const char* name) {
  const auto s = testing::slurp(std::string(FIXTURE_DIR) + "/" + name);
  std::vector<std::byte> out(s.size());
  std::memcpy(out.data(), s.data(), s.size());
  return out;
}

EmbFormatFault fault_of(const char* name) {
  try {
    parse_iemb(read_fixture(name));
  } catch (const EmbFormatError& e) {
    return e.fault();
  }
  FAIL("no error for " << name);
  return EmbFormatFault::bad_magic;
}

} // namespace

TEST_CASE("iemb fixture parses and identical sentences have cosine 1") {
  const auto t = load_iemb(std::string(FIXTURE_DIR) + "/five.iemb");
  CHECK(t.count() == 5);
  CHECK(t.dim() == 4);
  CHECK(cosine_similarity(t.row(0), t.row(2)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cosine_similarity(t.row(0), t.row(4)) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cosine_similarity(t.row(0), t.row(1)) == doctest::Approx(0.0));
  CHECK(read_fixture("five.iemb").size() == 16 + 4 * 5 * 4);
  const auto bytes = encode_iemb(t);
  CHECK(bytes == read_fixture("five.iemb"));
}

TEST_CASE("iemb format faults are distinct") {
  CHECK(fault_of("bad_magic.iemb") == EmbFormatFault::bad_magic);
  CHECK(fault_of("bad_version.iemb") == EmbFormatFault::bad_version);
  CHECK(fault_of("truncated.iemb") == EmbFormatFault::truncated);
  CHECK(fault_of("trailing.iemb") == EmbFormatFault::trailing_bytes);
  CHECK(fault_of("unnormalized.iemb") == EmbFormatFault::not_normalized);
  CHECK_THROWS_AS(load_iemb(std::string(FIXTURE_DIR) + "/missing.iemb"), IoError);
}

TEST_CASE("semantic innovation uses a strict threshold") {
  const auto t = load_iemb(std::string(FIXTURE_DIR) + "/five.iemb");
  const auto train = EmbeddingTable(1, 4, {t.row(0).begin(), t.row(0).end()});
  // Rows 0, 2, 4 duplicate the training row; rows 1 and 3 are far from it.
  CHECK(semantic_innovation_rate(t, train) == doctest::Approx(0.4));
  CHECK(semantic_innovation_rate(t, train, 0.95, 4) == semantic_innovation_rate(t, train, 0.95, 1));
  // cos(row3, row0) = 0.7; at threshold 0.7 it is not below, so it does not count.
  const double c = cosine_similarity(t.row(3), t.row(0));
  CHECK(c == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(semantic_innovation_rate(t, train, static_cast<double>(c)) == doctest::Approx(0.2));
  CHECK_THROWS_AS(semantic_innovation_rate(t, EmbeddingTable::normalized(1, 3, {1, 0, 0})), DimensionMismatch);
}

TEST_CASE("embedding tables check row norms") {
  CHECK_THROWS(EmbeddingTable(1, 2, {1.0f, 1.0f}));
  const auto t = EmbeddingTable::normalized(1, 2, {3.0f, 4.0f});
  CHECK(t.row(0)[0] == doctest::Approx(0.6));
  CHECK_THROWS(EmbeddingTable::normalized(1, 2, {0.0f, 0.0f}));
}

TEST_CASE("empirical innovation rate counts duplicates unless deduplicated") {
  const std::set<TokenSeq> training{{2, 3}, {4}};
  const std::vector<TokenSeq> gens{{2, 3}, {5}, {5}, {4, 2}};
  CHECK(empirical_innovation_rate(gens, training) == doctest::Approx(0.75));
  CHECK(empirical_innovation_rate(gens, training, true) == doctest::Approx(2.0 / 3));
  CHECK_THROWS(empirical_innovation_rate(std::vector<TokenSeq>{}, training));
}
