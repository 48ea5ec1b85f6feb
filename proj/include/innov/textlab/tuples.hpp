#pragma once

// The 7-tuple experiment: a training corpus sampled from a tuple dataset, an n-gram model
// over the field sequence, and membership-based innovation and hallucination rates.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "innov/rng.hpp"
#include "innov/textlab/text.hpp"
#include "json.hpp"

namespace innov::textlab {

inline constexpr std::array<std::string_view, 7> kTupleFields{
    "name", "dob", "birthplace", "degree", "college", "job", "employer"};

struct TupleRecord {
  std::array<std::string, 7> fields;

  bool operator==(const TupleRecord&) const = default;
  auto operator<=>(const TupleRecord&) const = default;
};

/// CSV with a header naming the 7 columns (any order, case-insensitive) and quoted fields
/// allowed. Empty fields and rows with the wrong field count are errors naming the row.
std::vector<TupleRecord> load_tuples_csv(const std::string& path);
void write_tuples_csv(const std::string& path, const std::vector<TupleRecord>& tuples);

/// Synthetic people with distinct names; the other fields come from fixed value lists.
std::vector<TupleRecord> synthetic_tuples(std::size_t count, Rng& rng);

/// One token per field; the value is interned together with its field name so equal
/// strings in different columns stay distinct.
TokenSeq tuple_tokens(const TupleRecord& t, Vocabulary& vocab);

struct TupleReport {
  std::size_t order = 0;
  std::size_t dataset_size = 0;
  std::size_t corpus_size = 0;
  std::size_t generations = 0;
  std::size_t innovations = 0;    ///< generations absent from the training corpus
  std::size_t hallucinations = 0; ///< generations absent from the dataset
  double innovation_rate = 0.0;
  double hallucination_rate = 0.0;
};

TupleReport run_tuple_experiment(const std::vector<TupleRecord>& dataset, std::size_t corpus_size, std::size_t order,
                                 std::size_t generations, std::uint64_t seed);
void to_json(nlohmann::json& j, const TupleReport& r);

} // namespace innov::textlab
