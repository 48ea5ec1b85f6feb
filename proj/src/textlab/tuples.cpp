#include "innov/textlab/tuples.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "innov/csv.hpp"
#include "innov/textlab/ngram.hpp"

namespace innov::textlab {

namespace {

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

template <std::size_t A, std::size_t B>
std::vector<std::string> cross(const std::array<std::string_view, A>& a, const std::array<std::string_view, B>& b,
                               std::string_view sep) {
  std::vector<std::string> out;
  for (auto x : a)
    for (auto y : b) out.push_back(std::string(x) + std::string(sep) + std::string(y));
  return out;
}

constexpr std::array<std::string_view, 50> kFirst{
    "Ada",   "Ben",   "Cara",  "Dev",    "Ella",  "Finn",  "Gia",   "Hugo",  "Ines",  "Jon",
    "Kira",  "Leo",   "Maya",  "Nico",   "Olga",  "Paul",  "Quinn", "Rosa",  "Sam",   "Tara",
    "Uma",   "Vic",   "Wren",  "Xavi",   "Yara",  "Zane",  "Amir",  "Bea",   "Cole",  "Dana",
    "Eli",   "Faye",  "Gus",   "Hana",   "Ivan",  "Jade",  "Kai",   "Lena",  "Milo",  "Nora",
    "Omar",  "Pia",   "Raj",   "Sofia",  "Theo",  "Una",   "Vera",  "Will",  "Yusuf", "Zoe"};
constexpr std::array<std::string_view, 50> kLast{
    "Abbott", "Baker",  "Chen",    "Diaz",   "Evans",  "Fischer", "Garcia", "Hughes", "Ito",    "Jensen",
    "Khan",   "Larsen", "Moreau",  "Novak",  "Okafor", "Patel",   "Quist",  "Rossi",  "Silva",  "Tanaka",
    "Ueda",   "Varga",  "Walsh",   "Xu",     "Young",  "Zeller",  "Adler",  "Brandt", "Costa",  "Dalton",
    "Ekberg", "Ford",   "Grant",   "Haas",   "Iqbal",  "Jovic",   "Kowal",  "Lund",   "Mendes", "Nash",
    "Olsen",  "Perez",  "Ramos",   "Sato",   "Torres", "Ulrich",  "Vance",  "Weber",  "Yilmaz", "Zhou"};

constexpr std::array<std::string_view, 10> kPlacePrefix{"North", "South", "East", "West", "New",
                                                        "Port",  "Lake",  "Fort", "Mount", "Glen"};
constexpr std::array<std::string_view, 20> kPlaceSuffix{"field", "haven", "ford",  "ton",   "bridge",
                                                        "wood",  "dale",  "view",  "ridge", "brook",
                                                        "side",  "mouth", "port",  "vale",  "crest",
                                                        "grove", "hill",  "mill",  "stone", "water"};
constexpr std::array<std::string_view, 10> kDegreeLevel{"BA", "BSc", "BEng", "MA", "MSc",
                                                        "MEng", "MBA", "PhD", "LLB", "MD"};
constexpr std::array<std::string_view, 3> kDegreeArea{"Science", "Arts", "Engineering"};
constexpr std::array<std::string_view, 100> kCollegeStem{
    "Alder",    "Birch",     "Cedar",    "Dunmore",  "Elmwood",  "Fairview", "Granite",  "Harbor",   "Ironwood",
    "Juniper",  "Kingsley",  "Lakeside", "Maple",    "Northgate", "Oakridge", "Pinecrest", "Quarry",  "Riverside",
    "Stonebrook", "Thornton", "Upland",  "Valley",   "Westbrook", "Yardley", "Zephyr",   "Ashford",  "Brookline",
    "Clearwater", "Dover",   "Eastfield", "Foxhall", "Glenwood", "Highland", "Inverness", "Jasper",  "Kenmore",
    "Linden",   "Meadow",    "Newport",  "Orchard",  "Parkside", "Queensway", "Redwood", "Sheffield", "Tidewater",
    "Union",    "Vista",     "Willow",   "Yorkton",  "Zenith",   "Amber",    "Bayview",  "Coral",    "Driftwood",
    "Emerald",  "Falcon",    "Garnet",   "Hawthorn", "Ivory",    "Jadeport", "Kestrel",  "Lark",     "Marble",
    "Nettle",   "Onyx",      "Pebble",   "Quill",    "Raven",    "Sable",    "Topaz",    "Umber",    "Verdant",
    "Wren",     "Yarrow",    "Zinnia",   "Arbor",    "Beacon",   "Canyon",   "Delta",    "Echo",     "Frontier",
    "Gateway",  "Horizon",   "Island",   "Jetty",    "Keystone", "Landmark", "Mesa",     "Nexus",    "Outlook",
    "Prairie",  "Quarterdeck", "Ridge",  "Summit",   "Terrace",  "Uplift",   "Vanguard", "Watershed", "Yonder",
    "Zest"};
constexpr std::array<std::string_view, 3> kCollegeKind{"University", "College", "Institute"};
constexpr std::array<std::string_view, 20> kJobAdjective{
    "Senior", "Junior", "Lead",     "Principal", "Associate", "Chief",   "Staff",   "Assistant", "Head",  "Deputy",
    "Field",  "Remote", "Regional", "Clinical",  "Creative",  "Digital", "Finance", "Quality",   "Sales", "Research"};
constexpr std::array<std::string_view, 10> kJobNoun{"Engineer", "Analyst",  "Manager",   "Designer",   "Consultant",
                                                    "Planner",  "Director", "Scientist", "Technician", "Editor"};
constexpr std::array<std::string_view, 25> kEmployerStem{
    "Acme",    "Blue",    "Crown", "Delta",  "Echo",   "Frost",  "Globe",  "Helix", "Icon",
    "Jolt",    "Kite",    "Lumen", "Metro",  "Nova",   "Orbit",  "Pixel",  "Quanta", "Rivet",
    "Solar",   "Titan",   "Unity", "Vertex", "Wave",   "Xenon",  "Yield"};
constexpr std::array<std::string_view, 20> kEmployerKind{
    "Labs",      "Systems",  "Foods",     "Logistics", "Media",   "Health",  "Energy",
    "Robotics",  "Partners", "Financial", "Motors",    "Textiles", "Airlines", "Pharma",
    "Retail",    "Security", "Analytics", "Studios",   "Holdings", "Networks"};

} // namespace

std::vector<TupleRecord> load_tuples_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open tuple dataset " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty tuple dataset");
  const auto header = split_csv_line(line, 1);
  std::array<std::size_t, 7> column{};
  for (std::size_t f = 0; f < kTupleFields.size(); ++f) {
    auto it = std::find_if(header.begin(), header.end(), [&](const std::string& h) { return lower(h) == kTupleFields[f]; });
    if (it == header.end()) throw IoError(path + ": missing column '" + std::string(kTupleFields[f]) + "'");
    column[f] = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<TupleRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line, row);
    if (fields.size() != header.size())
      throw IoError(path + ": row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                    " fields, expected " + std::to_string(header.size()));
    TupleRecord t;
    for (std::size_t f = 0; f < 7; ++f) {
      t.fields[f] = fields[column[f]];
      if (t.fields[f].empty())
        throw IoError(path + ": row " + std::to_string(row) + " has an empty " + std::string(kTupleFields[f]));
    }
    out.push_back(std::move(t));
  }
  return out;
}

void write_tuples_csv(const std::string& path, const std::vector<TupleRecord>& tuples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t f = 0; f < 7; ++f) out << (f ? "," : "") << kTupleFields[f];
  out << '\n';
  for (const auto& t : tuples) {
    for (std::size_t f = 0; f < 7; ++f) out << (f ? "," : "") << csv_field(t.fields[f]);
    out << '\n';
  }
  if (!out) throw IoError("write to " + path + " failed");
}

std::vector<TupleRecord> synthetic_tuples(std::size_t count, Rng& rng) {
  auto names = cross(kFirst, kLast, " ");
  std::shuffle(names.begin(), names.end(), rng);
  const auto places = cross(kPlacePrefix, kPlaceSuffix, "");
  const auto degrees = cross(kDegreeLevel, kDegreeArea, " ");
  const auto colleges = cross(kCollegeStem, kCollegeKind, " ");
  const auto jobs = cross(kJobAdjective, kJobNoun, " ");
  const auto employers = cross(kEmployerStem, kEmployerKind, " ");

  auto pick = [&](const std::vector<std::string>& v) -> const std::string& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  std::uniform_int_distribution<int> year(1940, 2005), month(1, 12), day(1, 28);
  std::vector<TupleRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string name = names[i % names.size()];
    if (i >= names.size()) name += " " + std::to_string(i / names.size() + 1);
    char dob[16];
    std::snprintf(dob, sizeof dob, "%04d-%02d-%02d", year(rng), month(rng), day(rng));
    out.push_back({{std::move(name), dob, pick(places), pick(degrees), pick(colleges), pick(jobs), pick(employers)}});
  }
  return out;
}

TokenSeq tuple_tokens(const TupleRecord& t, Vocabulary& vocab) {
  TokenSeq out;
  for (std::size_t f = 0; f < 7; ++f) out.push_back(vocab.intern(std::string(kTupleFields[f]) + "=" + t.fields[f]));
  return out;
}

TupleReport run_tuple_experiment(const std::vector<TupleRecord>& dataset, std::size_t corpus_size, std::size_t order,
                                 std::size_t generations, std::uint64_t seed) {
  if (dataset.empty()) throw PreconditionError("tuple experiment needs a nonempty dataset");
  if (order < 2 || order > 5) throw PreconditionError("tuple experiment order must lie in [2, 5]");
  if (corpus_size == 0) throw PreconditionError("tuple experiment needs a nonempty training corpus");
  Vocabulary vocab;
  std::set<TokenSeq> all;
  std::vector<TokenSeq> dataset_tokens;
  for (const auto& t : dataset) {
    dataset_tokens.push_back(tuple_tokens(t, vocab));
    all.insert(dataset_tokens.back());
  }
  auto rng = derive_rng(seed, {order, 0});
  std::uniform_int_distribution<std::size_t> draw(0, dataset.size() - 1);
  NgramModel model(order);
  std::set<TokenSeq> training;
  for (std::size_t i = 0; i < corpus_size; ++i) {
    const auto& seq = dataset_tokens[draw(rng)];
    model.add(seq);
    training.insert(seq);
  }
  TupleReport r{order, dataset.size(), corpus_size, generations};
  auto gen_rng = derive_rng(seed, {order, 1});
  for (std::size_t i = 0; i < generations; ++i) {
    const auto seq = model.sample(gen_rng, kTupleFields.size());
    r.innovations += !training.contains(seq);
    r.hallucinations += !all.contains(seq);
  }
  if (generations > 0) {
    r.innovation_rate = static_cast<double>(r.innovations) / static_cast<double>(generations);
    r.hallucination_rate = static_cast<double>(r.hallucinations) / static_cast<double>(generations);
  }
  return r;
}

void to_json(nlohmann::json& j, const TupleReport& r) {
  j = nlohmann::json{{"n", r.order},
                     {"dataset", r.dataset_size},
                     {"corpus", r.corpus_size},
                     {"generations", r.generations},
                     {"innovations", r.innovations},
                     {"hallucinations", r.hallucinations},
                     {"innovation_rate", r.innovation_rate},
                     {"hallucination_rate", r.hallucination_rate}};
}

} // namespace innov::textlab
