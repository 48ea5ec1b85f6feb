#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "innov/distcore.hpp"
#include "innov/rng.hpp"

namespace testing {

/// Random probability vector; about a third of the entries are zero.
inline innov::Dist random_dist(std::size_t n, innov::Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution zero(0.3);
  std::vector<double> m(n);
  double total = 0;
  for (auto& v : m) total += v = zero(rng) ? 0.0 : e(rng);
  if (total == 0) {
    m[0] = 1;
    total = 1;
  }
  for (auto& v : m) v /= total;
  return innov::Dist(m);
}

/// Every set partition of {0..n-1} as restricted growth strings.
inline std::vector<innov::Partition> all_partitions(std::size_t n) {
  std::vector<innov::Partition> out;
  std::vector<std::size_t> a(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t max_label) -> void {
    if (i == n) {
      out.emplace_back(a);
      return;
    }
    for (std::size_t c = 0; c <= max_label + 1; ++c) {
      a[i] = c;
      self(self, i + 1, std::max(max_label, c));
    }
  };
  if (n == 0) return out;
  a[0] = 0;
  rec(rec, 1, 0);
  return out;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("innov_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

inline double binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

} // namespace testing
