#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "commentcat/errors.hpp"
#include "commentcat/rng.hpp"
#include "commentcat/textnorm.hpp"

using namespace commentcat;

namespace {

struct GoldenCase {
  std::string mode;
  std::string input;
  std::string expected;
};

std::vector<GoldenCase> load_golden() {
  std::ifstream in(std::string(COMMENTCAT_TEST_DIR) + "/data/normalize_golden.tsv");
  REQUIRE(in.good());
  std::vector<GoldenCase> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = line.find('\t', t1 + 1);
    REQUIRE(t1 != std::string::npos);
    REQUIRE(t2 != std::string::npos);
    cases.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1), line.substr(t2 + 1)});
  }
  return cases;
}

}  // namespace

TEST_CASE("golden normalization cases") {
  const NormalizerConfig config = NormalizerConfig::defaults();
  const std::vector<GoldenCase> cases = load_golden();
  CHECK(cases.size() == 30);
  for (const GoldenCase& c : cases) {
    CAPTURE(c.input);
    if (c.mode == "n") {
      CHECK(normalize(c.input, config) == c.expected);
    } else {
      CHECK(expand_contractions(c.input, config.contractions) == c.expected);
    }
  }
}

TEST_CASE("porter stemmer vocabulary") {
  // full-algorithm outputs, traced by hand through every step
  const std::vector<std::pair<const char*, const char*>> pairs = {
      {"caresses", "caress"},   {"ponies", "poni"},        {"ties", "ti"},
      {"caress", "caress"},     {"cats", "cat"},           {"feed", "feed"},
      {"agreed", "agre"},       {"plastered", "plaster"},  {"bled", "bled"},
      {"motoring", "motor"},    {"sing", "sing"},          {"conflated", "conflat"},
      {"troubled", "troubl"},   {"sized", "size"},         {"hopping", "hop"},
      {"tanned", "tan"},        {"falling", "fall"},       {"hissing", "hiss"},
      {"fizzed", "fizz"},       {"failing", "fail"},       {"filing", "file"},
      {"happy", "happi"},       {"sky", "sky"},            {"relational", "relat"},
      {"conditional", "condit"}, {"rational", "ration"},   {"valenci", "valenc"},
      {"hesitanci", "hesit"},   {"digitizer", "digit"},    {"conformabli", "conform"},
      {"radicalli", "radic"},   {"differentli", "differ"}, {"vileli", "vile"},
      {"analogousli", "analog"}, {"vietnamization", "vietnam"}, {"predication", "predic"},
      {"operator", "oper"},     {"feudalism", "feudal"},   {"decisiveness", "decis"},
      {"hopefulness", "hope"},  {"callousness", "callous"}, {"formaliti", "formal"},
      {"sensitiviti", "sensit"}, {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},
      {"formative", "form"},    {"formalize", "formal"},   {"electriciti", "electr"},
      {"electrical", "electr"}, {"hopeful", "hope"},       {"goodness", "good"},
      {"revival", "reviv"},     {"allowance", "allow"},    {"inference", "infer"},
      {"airliner", "airlin"},   {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},
      {"defensible", "defens"}, {"irritant", "irrit"},     {"replacement", "replac"},
      {"adjustment", "adjust"}, {"dependent", "depend"},   {"adoption", "adopt"},
      {"communism", "commun"},  {"activate", "activ"},     {"angulariti", "angular"},
      {"homologou", "homolog"}, {"effective", "effect"},   {"bowdlerize", "bowdler"},
      {"probate", "probat"},    {"rate", "rate"},          {"cease", "ceas"},
      {"controll", "control"},  {"roll", "roll"},          {"running", "run"},
  };
  for (const auto& [word, stem] : pairs) {
    CAPTURE(word);
    CHECK(porter_stem(word) == stem);
  }
}

TEST_CASE("porter short tokens and guards") {
  // length <= 2 inputs are untouched
  CHECK(porter_stem("as") == "as");
  CHECK(porter_stem("js") == "js");
  CHECK(porter_stem("ox") == "ox");
  // results shorter than two characters are rejected
  CHECK(porter_stem("ies") == "ies");
  CHECK(porter_stem("ied") == "ied");
  // digit-bearing tokens pass through sanely
  CHECK(porter_stem("100") == "100");
  CHECK(porter_stem("x86") == "x86");
}

TEST_CASE("sentinel handling") {
  const NormalizerConfig config = NormalizerConfig::defaults();
  CHECK(stem_token("NUM", config) == "NUM");
  CHECK(stem_token("EMT", config) == "EMT");
  CHECK(stem_token("running", config) == "run");
  // sentinels are fixed points of the full pipeline
  CHECK(normalize("NUM", config) == "NUM");
  CHECK(normalize("EMT", config) == "EMT");
  CHECK(normalize("run NUM test", config) == "run NUM test");
}

TEST_CASE("stage order consequences") {
  const NormalizerConfig config = NormalizerConfig::defaults();
  // single digits fall to the single-character filter before the digit
  // sentinel stage can see them
  CHECK(normalize("a 3 b", config) == "EMT");
  CHECK(normalize("3", config) == "EMT");
  CHECK(normalize("33", config) == "NUM");
  // stopword removal precedes stemming, so a stem may itself be a
  // stopword; renormalizing such output is not closed
  CHECK(normalize("haves", config) == "have");
  CHECK(normalize("have", config) == "EMT");
}

TEST_CASE("normalize is idempotent on stopword-free stems") {
  const NormalizerConfig config = NormalizerConfig::defaults();
  const std::vector<std::string> vocab = {"buffer", "index",  "error", "handl",  "pars",
                                          "token",  "stream", "queue", "thread", "NUM"};
  SplitMix64 rng(99);
  for (int round = 0; round < 200; ++round) {
    std::string sentence;
    const std::size_t len = 1 + rng.below(8);
    for (std::size_t i = 0; i < len; ++i) {
      if (i > 0) sentence += ' ';
      sentence += vocab[rng.below(vocab.size())];
    }
    const std::string once = normalize(sentence, config);
    CHECK(normalize(once, config) == once);
  }
}

TEST_CASE("output invariants on noisy input") {
  const NormalizerConfig config = NormalizerConfig::defaults();
  const std::vector<std::string> pieces = {"Running",  "the",   "30",    "!",     "I'm",
                                           "tests",    "a",     "#42",   "HTTP",  "parser,",
                                           "o'clock",  "(x)",   "don't", "белый", "caresses"};
  SplitMix64 rng(7);
  for (int round = 0; round < 300; ++round) {
    std::string sentence;
    const std::size_t len = rng.below(10);
    for (std::size_t i = 0; i < len; ++i) {
      if (i > 0) sentence += ' ';
      sentence += pieces[rng.below(pieces.size())];
    }
    const std::string out = normalize(sentence, config);
    CHECK_FALSE(out.empty());

    std::istringstream stream(out);
    std::string tok;
    while (stream >> tok) {
      CAPTURE(sentence);
      CAPTURE(tok);
      CHECK(tok.size() >= 2);
      CHECK(config.stopwords.count(tok) == 0);
      if (tok != config.sentinel_num && tok != config.sentinel_empty) {
        for (char c : tok) {
          CHECK_FALSE(c >= 'A' && c <= 'Z');
        }
      }
    }
  }
}

TEST_CASE("contraction expansion rules") {
  const NormalizerConfig config = NormalizerConfig::defaults();
  const auto& table = config.contractions;
  // whole-token rule: no expansion inside words
  CHECK(expand_contractions("firmware", table) == "firmware");
  CHECK(expand_contractions("scant", table) == "scant");
  // longest match first
  CHECK(expand_contractions("can't've", table) == "cannot have");
  CHECK(expand_contractions("y'all'd've gone", table) == "you all would have gone");
  // case restoration on the first letter only
  CHECK(expand_contractions("It's done", table) == "It is done");
  CHECK(expand_contractions("it's done", table) == "it is done");
  // leading-apostrophe key
  CHECK(expand_contractions("'cause reasons", table) == "because reasons");
  // trailing punctuation does not block a match
  CHECK(expand_contractions("can't!", table) == "cannot!");
}

TEST_CASE("config validation and file loaders") {
  NormalizerConfig config = NormalizerConfig::defaults();
  CHECK_NOTHROW(config.validate());

  NormalizerConfig empty = config;
  empty.stopwords.clear();
  CHECK_THROWS_AS(empty.validate(), DomainError);

  NormalizerConfig upper = config;
  upper.stopwords.insert("The");
  CHECK_THROWS_AS(upper.validate(), DomainError);

  // shipped data files match the embedded defaults
  const std::string data_dir = COMMENTCAT_DATA_DIR;
  CHECK(load_stopwords(data_dir + "/stopwords.txt") == config.stopwords);
  CHECK(load_contractions(data_dir + "/contractions.tsv") == config.contractions);
  CHECK(config.stopwords.size() == 179);
  CHECK_THROWS_AS(load_stopwords("/nonexistent/stopwords.txt"), IoError);
}
