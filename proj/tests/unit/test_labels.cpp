#include "doctest.h"

#include <sstream>

#include "innov/error.hpp"
#include "innov/textlab/labels.hpp"
#include "support.hpp"

using namespace innov;
using namespace innov::textlab;

TEST_CASE("label records round trip byte for byte") {
  const LabelRecord r{"great \"phone\"\n", "human", 1, "2026-01-02T03:04:05Z", true};
  const auto line = to_jsonl(r);
  CHECK(line == R"({"text":"great \"phone\"\n","judge":"human","verdict":1,"ts":"2026-01-02T03:04:05Z","dup":true})");
  CHECK(label_from_jsonl(line) == r);
  CHECK(to_jsonl(label_from_jsonl(line)) == line);
  CHECK_THROWS(label_from_jsonl(R"({"text":"a","judge":"h","verdict":2,"ts":"","dup":false})"));
  CHECK(utc_timestamp().size() == 20);
}

TEST_CASE("label store reloads appended records") {
  const auto dir = testing::temp_dir("labels_reload");
  {
    LabelStore s(dir / "labels.jsonl");
    s.append({"a", "human", 1, "t", false});
    s.append({"b", "human", 0, "t", false});
    s.append({"a", "human", 0, "t", false});
  }
  LabelStore s(dir / "labels.jsonl");
  CHECK(s.records().size() == 3);
  CHECK(s.verdict("a", "human") == 0);
  CHECK(s.verdict("a", "model") == std::nullopt);
}

TEST_CASE("a torn final line is truncated away") {
  const auto dir = testing::temp_dir("labels_torn");
  const auto path = dir / "labels.jsonl";
  const std::string good = to_jsonl({"a", "human", 1, "t", false}) + "\n";
  testing::spit(path, good + R"({"text":"b","jud)");
  LabelStore s(path);
  CHECK(s.records().size() == 1);
  CHECK(testing::slurp(path) == good);
  s.append({"b", "human", 0, "t", false});
  CHECK(LabelStore(path).records().size() == 2);
}

TEST_CASE("a complete final record without newline is kept") {
  const auto dir = testing::temp_dir("labels_nonl");
  const auto path = dir / "labels.jsonl";
  const auto line = to_jsonl({"a", "human", 1, "t", false});
  testing::spit(path, line);
  {
    LabelStore s(path);
    CHECK(s.records().size() == 1);
    s.append({"b", "human", 0, "t", false});
  }
  CHECK(LabelStore(path).records().size() == 2);
}

TEST_CASE("a malformed middle line is an error naming the line") {
  const auto dir = testing::temp_dir("labels_bad");
  const auto path = dir / "labels.jsonl";
  testing::spit(path, to_jsonl({"a", "human", 1, "t", false}) + "\nnot json\n" +
                          to_jsonl({"b", "human", 1, "t", false}) + "\n");
  try {
    LabelStore s(path);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("labels.jsonl:2") != std::string::npos);
  }
}

TEST_CASE("interactive labeling") {
  const auto dir = testing::temp_dir("labels_interactive");
  const std::vector<LabelItem> items{{"one", false}, {"copy", true}, {"two", false}, {"one", false}, {"three", false}};

  SUBCASE("nothing to label leaves the rate undefined") {
    LabelStore store(dir / "empty.jsonl");
    std::istringstream in;
    std::ostringstream out;
    const auto stats = interactive_label({{"copy", true}}, store, in, out);
    CHECK(stats.labeled == 0);
    CHECK(stats.skipped_training == 1);
    CHECK_FALSE(stats.rate());
    CHECK(stats.finished);
  }
  SUBCASE("all ones give rate zero") {
    LabelStore store(dir / "ones.jsonl");
    std::istringstream in("1\n1\n1\n");
    std::ostringstream out;
    const auto stats = interactive_label(items, store, in, out);
    CHECK(stats.labeled == 3);
    CHECK(stats.skipped_duplicates == 1);
    CHECK(stats.rate() == 0.0);
    CHECK(store.records().size() == 3);
  }
  SUBCASE("invalid keys reprompt") {
    LabelStore store(dir / "reprompt.jsonl");
    std::istringstream in("x\n\n0\n1\n0\n");
    std::ostringstream out;
    const auto stats = interactive_label(items, store, in, out);
    CHECK(out.str().find("please type 0, 1 or q") != std::string::npos);
    CHECK(stats.labeled == 3);
    CHECK(*stats.rate() == doctest::Approx(2.0 / 3));
  }
  SUBCASE("quit and resume in a new session") {
    const auto path = dir / "resume.jsonl";
    {
      LabelStore store(path);
      std::istringstream in("0\nq\n");
      std::ostringstream out;
      const auto stats = interactive_label(items, store, in, out);
      CHECK_FALSE(stats.finished);
      CHECK(stats.labeled == 1);
    }
    LabelStore store(path);
    std::istringstream in("1\n1\n");
    std::ostringstream out;
    const auto stats = interactive_label(items, store, in, out);
    CHECK(stats.finished);
    CHECK(stats.labeled == 3);
    CHECK(*stats.rate() == doctest::Approx(1.0 / 3));
    CHECK(out.str().find("] one") == std::string::npos);
  }
}
