#include "innov/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "innov/cli/svg.hpp"
#include "innov/csv.hpp"
#include "innov/measures.hpp"
#include "innov/textlab/judge.hpp"
#include "innov/textlab/labels.hpp"
#include "innov/textlab/ngram.hpp"
#include "innov/textlab/tuples.hpp"
#include "innov/verify.hpp"

namespace innov::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NetworkError*>(&e)) return kNetworkError;
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const EmbFormatError*>(&e) ||
      dynamic_cast<const fs::filesystem_error*>(&e))
    return kIoError;
  if (dynamic_cast<const Error*>(&e) || dynamic_cast<const json::exception*>(&e)) return kConfigError;
  return kVerifyFailed;
}

int guarded(const std::function<int()>& fn, Streams io) {
  try {
    return fn();
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  return f;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

template <typename T>
std::vector<T> as_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

std::uint64_t seed_of(const json& config) { return config.at("seed").get<std::uint64_t>(); }
unsigned threads_of(const json& config) { return config.value("threads", 1u); }

// ---------------------------------------------------------------------------- verify

std::vector<DeltaSpec> parse_deltas(const json& j) {
  std::vector<DeltaSpec> out;
  for (const auto& d : j) {
    if (d.is_object()) out.push_back({d.at("relative").get<double>(), true});
    else out.push_back({d.get<double>(), false});
  }
  return out;
}

void check_delta_range(const MetaSpec& meta, std::span<const Theorem> theorems, std::span<const DeltaSpec> deltas) {
  const double k = static_cast<double>(meta.k_max);
  const double max_unseen = static_cast<double>(meta.n_statements - 1);
  for (auto t : theorems) {
    if (!uses_delta(t)) continue;
    for (const auto& d : deltas) {
      if (d.relative) {
        if (!(d.value > 0.0)) throw PreconditionError("relative delta must be positive");
        continue;
      }
      const bool markov_family = t == Theorem::markov || t == Theorem::markov_r || t == Theorem::cor_markov_mm;
      if (!(d.value > 0.0 && d.value < 1.0) && !(d.value == 1.0 && !markov_family))
        throw PreconditionError(std::string(theorem_name(t)) + ": delta = " + fmt(d.value) + " outside (0, 1)");
      if (markov_family && d.value <= k / max_unseen)
        throw PreconditionError(std::string(theorem_name(t)) + ": delta = " + fmt(d.value) +
                                " does not exceed K/|U| for any corpus (K/|U| >= K/(N-1) = " + fmt(k / max_unseen) +
                                ", N = " + std::to_string(meta.n_statements) + ", K = " + std::to_string(meta.k_max) +
                                ")");
    }
  }
}

} // namespace

int cmd_verify(const json& config, const fs::path& out, Streams io) {
  const auto& v = config.at("verify");
  const auto seed = seed_of(config);
  const auto threads = threads_of(config);

  std::vector<MetaSpec> metas;
  for (const auto& m : v.at("meta").is_array() ? v.at("meta") : json::array({v.at("meta")}))
    metas.push_back(meta_from_json(m));
  const auto ns = as_list<std::uint64_t>(v.at("n"));
  const auto deltas = parse_deltas(v.at("deltas"));
  std::vector<Theorem> theorems;
  for (const auto& t : v.at("theorems")) theorems.push_back(parse_theorem(t.get<std::string>()));
  std::vector<ModelKind> models;
  for (const auto& m : v.at("models")) models.push_back(parse_model_kind(m.get<std::string>()));
  McOptions opts;
  opts.trials = v.at("trials").get<std::size_t>();
  opts.threads = threads;
  opts.strict = false;
  const auto partition = v.value("partition", std::string("level_sets"));
  if (partition == "random") opts.partition = PartitionMode::random;
  else if (partition != "level_sets") throw PreconditionError("unknown partition mode '" + partition + "'");
  opts.battery = {v.value("beta", 0.5), v.value("eps", 0.1)};
  const auto corpora = v.at("corpora").get<std::size_t>();
  if (opts.trials < 1) throw PreconditionError("trials must be positive");
  for (const auto& m : metas) check_delta_range(m, theorems, deltas);

  json report;
  std::vector<std::string> failed;

  // Unconditional inequalities.
  const auto& sw = v.at("sweep");
  const auto sweeps = deterministic_sweep(sw.at("instances").get<std::size_t>(),
                                          sw.at("max_statements").get<std::size_t>(), seed, threads);
  for (const auto& s : sweeps) {
    report["sweeps"].push_back(s);
    if (s.failures) failed.push_back(s.name);
    io.out << "sweep " << s.name << ": " << s.instances << " instances, " << s.failures << " failures\n";
  }

  // Exact posterior checks.
  const auto& ex = v.at("exact");
  MetaSpec exact_meta;
  exact_meta.n_statements = ex.at("n_statements").get<std::size_t>();
  exact_meta.k_max = ex.at("k_max").get<std::size_t>();
  const auto exact = exact_sweep(exact_meta, ex.at("max_n").get<std::uint64_t>(), false, seed, opts.battery, threads);
  report["exact"]["uniform"] = exact;
  report["exact"]["uniform"]["meta"] = exact_meta;
  if (exact.thm32.failures) failed.push_back("thm32");
  if (exact.expected_rate.failures) failed.push_back("expected_rate");
  if (exact.max_marginal_error > kBoundTolerance) failed.push_back("regular_facts");
  if (exact.max_r_error > kBoundTolerance) failed.push_back("regularity_ratio");
  io.out << "exact uniform: " << exact.corpora << " corpora, thm32 failures " << exact.thm32.failures
         << ", expected-rate failures " << exact.expected_rate.failures << ", max marginal error "
         << fmt(exact.max_marginal_error) << '\n';
  if (ex.contains("weighted") && !ex["weighted"].is_null()) {
    const auto& w = ex["weighted"];
    const auto wmeta = MetaSpec::two_class(w.at("n_statements").get<std::size_t>(), w.at("k_max").get<std::size_t>(),
                                           w.at("rho").get<double>());
    const auto weighted = exact_sweep(wmeta, w.at("max_n").get<std::uint64_t>(), true, seed, opts.battery, threads);
    report["exact"]["weighted"] = weighted;
    report["exact"]["weighted"]["meta"] = wmeta;
    if (weighted.thm32.failures) failed.push_back("thm32_r");
    if (weighted.expected_rate.failures) failed.push_back("expected_rate_r");
    io.out << "exact weighted: " << weighted.corpora << " corpora, max r " << fmt(weighted.max_r)
           << ", thm32_r failures " << weighted.thm32.failures << ", expected_rate_r failures "
           << weighted.expected_rate.failures << '\n';
  }

  // Monte Carlo under the posterior.
  auto csv = open_out(out / "verify.csv");
  csv << trial_csv_header() << '\n';
  std::size_t cells = 0, out_of_range = 0, vacuous = 0, mc_failures = 0;
  json first_failures = json::array();
  for (std::size_t mi = 0; mi < metas.size(); ++mi) {
    for (auto n : ns) {
      const auto mc_seed = derive_seed(seed, {mi, n});
      for (std::size_t ci = 0; ci < corpora; ++ci) {
        for (const auto& r : mc_corpus(metas[mi], models, theorems, deltas, n, ci, opts, mc_seed)) {
          csv << to_csv_row(r) << '\n';
          ++cells;
          vacuous += r.vacuous;
          if (!r.precondition_met) {
            ++out_of_range;
            continue;
          }
          if (!r.pass) {
            ++mc_failures;
            if (first_failures.size() < 10) first_failures.push_back(r);
          }
        }
      }
    }
  }
  if (!csv) throw IoError("write to verify.csv failed");
  if (mc_failures) failed.push_back("monte_carlo");
  report["monte_carlo"] = {{"cells", cells},
                           {"out_of_range", out_of_range},
                           {"vacuous", vacuous},
                           {"failures", mc_failures},
                           {"first_failures", first_failures}};
  io.out << "monte carlo: " << cells << " cells, " << mc_failures << " failures, " << out_of_range
         << " outside the delta range, " << vacuous << " vacuous\n";

  // Regime comparison on one large sparse instance.
  const auto& rg = v.at("regime");
  MetaSpec rmeta;
  rmeta.n_statements = rg.at("n_statements").get<std::size_t>();
  rmeta.k_max = rg.at("k_max").get<std::size_t>();
  rmeta.validate();
  auto rrng = derive_rng(seed, {0x7265u});
  const World rworld = sample_world(rmeta, rrng);
  const Corpus rcorpus = sample_corpus(rworld, rg.at("n").get<std::uint64_t>(), rrng);
  const Model rg_model = calibrated_model(rworld, random_partition(rmeta.n_statements, rrng));
  report["regime"] = compare_regimes(rg_model.dist, rworld, rcorpus, rmeta.k_max, rg.at("delta").get<double>());
  report["regime"]["model"] = rg_model.provenance;

  // Tightness of the high-confidence constant.
  const auto tight_trials = v.at("tightness").at("trials").get<std::size_t>();
  if (tight_trials > 0)
    for (const auto& row : tightness_probe(metas.front(), ns.front(), seed, tight_trials, opts.battery, threads))
      report["tightness"].push_back(row);

  report["pass"] = failed.empty();
  report["failed"] = failed;
  auto js = open_out(out / "verify.json");
  js << report.dump(2) << '\n';
  if (!js) throw IoError("write to verify.json failed");

  if (!failed.empty()) {
    io.err << "verification failed:";
    for (const auto& f : failed) io.err << ' ' << f;
    io.err << '\n';
    return kVerifyFailed;
  }
  io.out << "all checks passed\n";
  return kOk;
}

// ----------------------------------------------------------------------------- rates

namespace {

struct RateRow {
  std::size_t n = 0;
  std::size_t generations = 0;
  std::size_t innovations = 0;
  std::optional<std::size_t> semantic;
  std::string judge;
  std::string denominator;
  std::size_t judged = 0;
  std::size_t hallucinations = 0;
};

fs::path generations_path(const fs::path& out, std::size_t n) {
  return out / ("generations_n" + std::to_string(n) + ".txt");
}

std::vector<RateRow> compute_rates(const json& config, const fs::path& out, bool with_semantic) {
  const auto& ng = config.at("ngram");
  const auto n_values = as_list<std::size_t>(ng.at("n_values"));
  textlab::Vocabulary vocab;
  const auto train_lines = read_lines(out / "train.txt");
  std::set<TokenSeq> training;
  std::set<std::string> training_text;
  for (const auto& l : train_lines) {
    if (auto s = textlab::preprocess(l, vocab)) training.insert(s->tokens);
    training_text.insert(l);
  }

  std::vector<textlab::LabelRecord> labels;
  if (fs::exists(out / "labels.jsonl")) labels = textlab::LabelStore(out / "labels.jsonl").records();
  std::set<std::string> judges;
  std::map<std::pair<std::string, std::string>, int> verdicts;
  for (const auto& r : labels) {
    judges.insert(r.judge);
    verdicts[{r.judge, r.text}] = r.verdict;
  }

  std::optional<EmbeddingTable> train_emb;
  fs::path emb_dir;
  if (with_semantic && ng.contains("embeddings") && !ng["embeddings"].is_null()) {
    emb_dir = ng["embeddings"].get<std::string>();
    train_emb = load_iemb(emb_dir / "train.iemb");
    if (train_emb->count() != train_lines.size())
      throw PreconditionError("train.iemb has " + std::to_string(train_emb->count()) + " rows but train.txt has " +
                              std::to_string(train_lines.size()) + " lines");
  }
  const double threshold = ng.value("threshold", 0.95);

  std::vector<RateRow> rows;
  for (auto n : n_values) {
    const auto gens = read_lines(generations_path(out, n));
    std::vector<TokenSeq> seqs;
    for (const auto& g : gens) {
      auto s = textlab::preprocess(g, vocab);
      seqs.push_back(s ? s->tokens : TokenSeq{});
    }
    RateRow base;
    base.n = n;
    base.generations = gens.size();
    base.innovations = static_cast<std::size_t>(
        std::llround(empirical_innovation_rate(seqs, training) * static_cast<double>(gens.size())));
    if (train_emb && fs::exists(emb_dir / ("gen_n" + std::to_string(n) + ".iemb"))) {
      const auto gen_emb = load_iemb(emb_dir / ("gen_n" + std::to_string(n) + ".iemb"));
      if (gen_emb.count() != gens.size())
        throw PreconditionError("gen_n" + std::to_string(n) + ".iemb row count does not match the generations");
      base.semantic = static_cast<std::size_t>(std::llround(
          semantic_innovation_rate(gen_emb, *train_emb, threshold, threads_of(config)) *
          static_cast<double>(gens.size())));
    }
    if (judges.empty()) {
      rows.push_back(base);
      continue;
    }
    for (const auto& judge : judges) {
      // All generations: training copies count as reviews unless a label says otherwise.
      RateRow all = base;
      all.judge = judge;
      all.denominator = "all";
      // Distinct generations absent from the training data.
      RateRow novel = all;
      novel.denominator = "novel";
      std::set<std::string> seen;
      for (const auto& g : gens) {
        auto it = verdicts.find({judge, g});
        const bool in_training = training_text.contains(g);
        if (it != verdicts.end() || in_training) {
          ++all.judged;
          all.hallucinations += it != verdicts.end() && it->second == 0;
        }
        if (!in_training && it != verdicts.end() && seen.insert(g).second) {
          ++novel.judged;
          novel.hallucinations += it->second == 0;
        }
      }
      rows.push_back(all);
      rows.push_back(novel);
    }
  }
  return rows;
}

bool write_rates(const std::vector<RateRow>& rows, const fs::path& path) {
  const bool semantic = std::any_of(rows.begin(), rows.end(), [](const RateRow& r) { return r.semantic.has_value(); });
  auto csv = open_out(path);
  csv << "n,judge,denominator,generations,innovations,innovation_rate,innovation_lo,innovation_hi";
  if (semantic) csv << ",semantic_innovations,semantic_innovation_rate,semantic_lo,semantic_hi";
  csv << ",judged,hallucinations,hallucination_rate,hallucination_lo,hallucination_hi\n";
  bool judged_any = false;
  for (const auto& r : rows) {
    const auto innov = clopper_pearson(r.innovations, r.generations);
    csv << r.n << ',' << csv_field(r.judge) << ',' << r.denominator << ',' << r.generations << ',' << r.innovations
        << ',' << fmt(innov.point) << ',' << fmt(innov.lo) << ',' << fmt(innov.hi);
    if (semantic) {
      if (r.semantic) {
        const auto sem = clopper_pearson(*r.semantic, r.generations);
        csv << ',' << *r.semantic << ',' << fmt(sem.point) << ',' << fmt(sem.lo) << ',' << fmt(sem.hi);
      } else {
        csv << ",,,,";
      }
    }
    if (!r.judge.empty() && r.judged > 0) {
      judged_any = true;
      const auto hall = clopper_pearson(r.hallucinations, r.judged);
      csv << ',' << r.judged << ',' << r.hallucinations << ',' << fmt(hall.point) << ',' << fmt(hall.lo) << ','
          << fmt(hall.hi) << '\n';
    } else if (!r.judge.empty()) {
      csv << ",0,0,,,\n";
    } else {
      csv << ",,,,,\n";
    }
  }
  if (!csv) throw IoError("write to " + path.string() + " failed");
  return judged_any;
}

std::vector<ScatterPoint> read_rate_points(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw IoError(path.string() + ": empty file");
  const auto header = split_csv_line(lines[0], 1);
  auto col = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw IoError(path.string() + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto c_n = col("n"), c_judge = col("judge"), c_den = col("denominator"), c_x = col("innovation_rate"),
             c_xlo = col("innovation_lo"), c_xhi = col("innovation_hi"), c_y = col("hallucination_rate"),
             c_ylo = col("hallucination_lo"), c_yhi = col("hallucination_hi");
  std::vector<ScatterPoint> points;
  std::size_t data_rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    ++data_rows;
    const auto row = i + 1;
    const auto f = split_csv_line(lines[i], row);
    if (f.size() != header.size())
      throw IoError(path.string() + ": row " + std::to_string(row) + " has " + std::to_string(f.size()) +
                    " fields, expected " + std::to_string(header.size()));
    if (f[c_y].empty()) continue;
    auto number = [&](std::size_t c) {
      try {
        std::size_t used = 0;
        const double v = std::stod(f[c], &used);
        if (used != f[c].size() || !(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("range");
        return v;
      } catch (const std::logic_error&) {
        throw IoError(path.string() + ": row " + std::to_string(row) + ": bad value '" + f[c] + "' in column " +
                      header[c]);
      }
    };
    ScatterPoint p;
    p.series = f[c_judge] + " (" + f[c_den] + ")";
    p.label = "n=" + f[c_n];
    p.x = number(c_x);
    p.x_lo = number(c_xlo);
    p.x_hi = number(c_xhi);
    p.y = number(c_y);
    p.y_lo = number(c_ylo);
    p.y_hi = number(c_yhi);
    points.push_back(std::move(p));
  }
  if (data_rows == 0) throw IoError(path.string() + ": no data rows");
  return points;
}

void write_figure(const std::vector<ScatterPoint>& points, const fs::path& path) {
  auto f = open_out(path);
  f << scatter_svg(points, "Hallucination rate versus innovation rate", "innovation rate", "hallucination rate");
  if (!f) throw IoError("write to " + path.string() + " failed");
}

void refresh_rates(const json& config, const fs::path& out) {
  if (write_rates(compute_rates(config, out, true), out / "rates.csv"))
    write_figure(read_rate_points(out / "rates.csv"), out / "figure1.svg");
}

} // namespace

// ----------------------------------------------------------------------------- ngram

int cmd_ngram(const json& config, const fs::path& out, Streams io) {
  const auto& ng = config.at("ngram");
  const auto seed = seed_of(config);
  const auto n_values = as_list<std::size_t>(ng.at("n_values"));
  const auto generations = ng.at("generations").get<std::size_t>();
  const auto max_len = ng.value("max_len", textlab::kMaxSentenceTokens);
  const fs::path corpus_path = ng.at("corpus").get<std::string>();
  if (!fs::exists(corpus_path)) throw IoError("corpus " + corpus_path.string() + " not found");
  if (ng.contains("embeddings") && !ng["embeddings"].is_null() &&
      !fs::exists(fs::path(ng["embeddings"].get<std::string>()) / "train.iemb"))
    throw IoError("embeddings directory " + ng["embeddings"].get<std::string>() + " has no train.iemb");

  textlab::Vocabulary vocab;
  const auto sentences = textlab::load_corpus(corpus_path.string(), vocab);
  if (sentences.empty()) throw PreconditionError("corpus " + corpus_path.string() + " has no usable sentences");
  {
    auto train = open_out(out / "train.txt");
    for (const auto& s : sentences) train << s.raw << '\n';
  }
  for (auto n : n_values) {
    const auto model = textlab::train_ngram(sentences, n);
    auto rng = derive_rng(seed, {n});
    auto f = open_out(generations_path(out, n));
    for (std::size_t i = 0; i < generations; ++i) f << textlab::generate(model, vocab, rng, max_len).raw << '\n';
    if (!f) throw IoError("write to " + generations_path(out, n).string() + " failed");
  }
  const auto rows = compute_rates(config, out, true);
  const bool judged = write_rates(rows, out / "rates.csv");
  if (judged) write_figure(read_rate_points(out / "rates.csv"), out / "figure1.svg");
  for (const auto& r : rows) {
    if (!r.judge.empty() && r.denominator != "all") continue;
    io.out << "n=" << r.n << " innovation " << fmt(static_cast<double>(r.innovations) / static_cast<double>(r.generations));
    if (r.semantic) io.out << " semantic " << fmt(static_cast<double>(*r.semantic) / static_cast<double>(r.generations));
    io.out << '\n';
  }
  return kOk;
}

// ----------------------------------------------------------------------------- judge

int cmd_judge(const json& config, const fs::path& out, Streams io) {
  const auto& jc = config.at("judge");
  const auto n_values = as_list<std::size_t>(config.at("ngram").at("n_values"));
  const auto train = read_lines(out / "train.txt");
  const std::set<std::string> training(train.begin(), train.end());
  std::vector<textlab::LabelItem> items;
  for (auto n : n_values)
    for (auto& g : read_lines(generations_path(out, n))) items.push_back({g, training.contains(g)});
  if (jc.contains("shuffle_seed") && !jc["shuffle_seed"].is_null()) {
    auto rng = derive_rng(jc["shuffle_seed"].get<std::uint64_t>(), {});
    std::shuffle(items.begin(), items.end(), rng);
  }
  textlab::LabelStore store(out / "labels.jsonl");
  const auto mode = jc.at("mode").get<std::string>();
  int code = kOk;
  if (mode == "human") {
    const auto stats = textlab::interactive_label(items, store, io.in, io.out);
    io.out << "labeled " << stats.labeled << " statements; skipped " << stats.skipped_training
           << " training copies and " << stats.skipped_duplicates << " duplicates\n";
    if (auto rate = stats.rate()) io.out << "judged hallucination rate " << fmt(*rate) << '\n';
    else io.out << "judged hallucination rate undefined (nothing labeled)\n";
    if (!stats.finished) io.out << "session stopped early; rerun to resume\n";
  } else if (mode == "remote") {
    textlab::JudgeConfig cfg;
    cfg.endpoint = jc.at("endpoint").get<std::string>();
    if (!jc.contains("model") || jc["model"].is_null()) throw PreconditionError("remote judging needs --model");
    cfg.model = jc["model"].get<std::string>();
    cfg.api_key_env = jc.value("api_key_env", std::string("JUDGE_API_KEY"));
    cfg.max_in_flight = jc.value("max_in_flight", std::size_t{4});
    cfg.timeout = std::chrono::milliseconds(static_cast<long>(jc.value("timeout_s", 30.0) * 1000));
    if (jc.contains("backoff_ms")) cfg.backoff = std::chrono::milliseconds(jc["backoff_ms"].get<long>());
    if (jc.value("debug_http", false)) cfg.debug_http = &io.err;
    std::vector<std::string> texts;
    std::set<std::string> queued;
    for (const auto& item : items)
      if (!store.verdict(item.text, cfg.model) && queued.insert(item.text).second) texts.push_back(item.text);
    std::size_t errors = 0, unparseable = 0;
    std::mutex count_mutex;
    textlab::remote_judge_all(cfg, texts, [&](std::size_t i, const textlab::JudgeOutcome& o) {
      if (o.verdict) {
        store.append({texts[i], cfg.model, *o.verdict, textlab::utc_timestamp(), training.contains(texts[i])});
        return;
      }
      std::lock_guard lock(count_mutex);
      (o.unparseable ? unparseable : errors) += 1;
      io.err << "judge: " << o.error << '\n';
    });
    io.out << "judged " << texts.size() - errors - unparseable << " of " << texts.size() << " new statements ("
           << unparseable << " unparseable, " << errors << " failed)\n";
    if (errors) code = kNetworkError;
  } else {
    throw PreconditionError("judge mode must be human or remote");
  }
  refresh_rates(config, out);
  return code;
}

// ---------------------------------------------------------------------------- report

int cmd_report(const json& config, const fs::path& out, Streams io) {
  fs::path rates = out / "rates.csv";
  if (config.contains("report") && config["report"].contains("rates")) rates = config["report"]["rates"].get<std::string>();
  const auto points = read_rate_points(rates);
  if (points.empty()) throw PreconditionError(rates.string() + " has no judged rows; run the judge command first");
  write_figure(points, out / "figure1.svg");
  io.out << "wrote " << (out / "figure1.svg").string() << " with " << points.size() << " points\n";
  return kOk;
}

// ---------------------------------------------------------------------------- tuples

int cmd_tuples(const json& config, const fs::path& out, Streams io) {
  const auto& tc = config.at("tuples");
  const auto seed = seed_of(config);
  std::vector<textlab::TupleRecord> dataset;
  if (tc.contains("dataset") && !tc["dataset"].is_null()) {
    dataset = textlab::load_tuples_csv(tc["dataset"].get<std::string>());
  } else {
    auto rng = derive_rng(seed, {0x7475u});
    dataset = textlab::synthetic_tuples(tc.at("synthetic").get<std::size_t>(), rng);
  }
  auto csv = open_out(out / "tuples.csv");
  csv << "n,dataset,corpus,generations,innovations,hallucinations,innovation_rate,hallucination_rate\n";
  for (auto n : as_list<std::size_t>(tc.at("n_values"))) {
    const auto r = textlab::run_tuple_experiment(dataset, tc.at("corpus_size").get<std::size_t>(), n,
                                                 tc.at("generations").get<std::size_t>(), seed);
    csv << r.order << ',' << r.dataset_size << ',' << r.corpus_size << ',' << r.generations << ',' << r.innovations
        << ',' << r.hallucinations << ',' << fmt(r.innovation_rate) << ',' << fmt(r.hallucination_rate) << '\n';
    io.out << "n=" << n << " innovation " << fmt(r.innovation_rate) << " hallucination " << fmt(r.hallucination_rate)
           << '\n';
  }
  if (!csv) throw IoError("write to tuples.csv failed");
  return kOk;
}

} // namespace innov::cli
