#include "commentcat/textnorm.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "commentcat/errors.hpp"

namespace commentcat {

namespace {

bool is_ascii_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_word_char(char c) {
  return is_ascii_alnum(c) || c == '\'';
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool matches_key_at(std::string_view text, std::size_t pos, const std::string& key) {
  if (pos + key.size() > text.size()) return false;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (ascii_lower(text[pos + i]) != key[i]) return false;
  }
  // whole-token rule: the match must end at a word boundary
  const std::size_t end = pos + key.size();
  return end == text.size() || !is_word_char(text[end]);
}

}  // namespace

std::string expand_contractions(std::string_view text,
                                const std::map<std::string, std::string>& table) {
  // longest key first so e.g. "can't've" is preferred over "can't"
  std::vector<const std::string*> keys;
  keys.reserve(table.size());
  for (const auto& [k, v] : table) keys.push_back(&k);
  std::stable_sort(keys.begin(), keys.end(), [](const std::string* a, const std::string* b) {
    if (a->size() != b->size()) return a->size() > b->size();
    return *a < *b;
  });

  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  bool at_word_start = true;
  while (pos < text.size()) {
    if (at_word_start) {
      const std::string* matched = nullptr;
      for (const std::string* key : keys) {
        if (matches_key_at(text, pos, *key)) {
          matched = key;
          break;
        }
      }
      if (matched != nullptr) {
        std::string expansion = table.at(*matched);
        if (!expansion.empty() && text[pos] >= 'A' && text[pos] <= 'Z') {
          expansion[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(expansion[0])));
        }
        out += expansion;
        pos += matched->size();
        at_word_start = false;
        continue;
      }
    }
    const char c = text[pos];
    out.push_back(c);
    at_word_start = !is_word_char(c);
    ++pos;
  }
  return out;
}

std::string stem_token(std::string_view token, const NormalizerConfig& config) {
  if (token == config.sentinel_num || token == config.sentinel_empty) return std::string(token);
  return porter_stem(token);
}

std::string normalize(std::string_view sentence, const NormalizerConfig& config) {
  // stage 1: trim
  const std::string_view trimmed = trim(sentence);
  // stage 2: expand contractions
  const std::string expanded = expand_contractions(trimmed, config.contractions);
  // stage 3: non-alphanumeric characters become spaces (never deleted,
  // so "foo.bar" splits into two tokens instead of fusing)
  std::string cleaned = expanded;
  for (char& c : cleaned) {
    if (!is_ascii_alnum(c)) c = ' ';
  }
  // stage 4: tokenize, dropping single-character tokens
  std::vector<std::string> tokens;
  std::istringstream stream(cleaned);
  std::string tok;
  while (stream >> tok) {
    if (tok.size() >= 2) tokens.push_back(tok);
  }

  std::vector<std::string> result;
  result.reserve(tokens.size());
  for (std::string& t : tokens) {
    const bool sentinel = (t == config.sentinel_num || t == config.sentinel_empty);
    if (!sentinel) {
      // stage 5: lowercase
      t = to_lower(t);
      // stage 6: stopwords
      if (config.stopwords.count(t) != 0) continue;
      // stage 7: stem
      t = porter_stem(t);
    }
    // stage 8: all-digit tokens become the numeric sentinel
    if (all_digits(t)) t = config.sentinel_num;
    result.push_back(std::move(t));
  }

  // stage 9: empty result becomes the empty sentinel
  if (result.empty()) return config.sentinel_empty;

  std::string joined;
  for (std::size_t i = 0; i < result.size(); ++i) {
    if (i > 0) joined.push_back(' ');
    joined += result[i];
  }
  return joined;
}

void NormalizerConfig::validate() const {
  if (stopwords.empty()) {
    throw DomainError("normalizer: stopword set must not be empty");
  }
  for (const std::string& w : stopwords) {
    if (w.empty() || std::any_of(w.begin(), w.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) {
      throw DomainError("normalizer: stopword entries must be non-empty lowercase: '" + w + "'");
    }
  }
  for (const auto& [key, value] : contractions) {
    if (key.empty() || std::any_of(key.begin(), key.end(), [](char c) { return c >= 'A' && c <= 'Z'; })) {
      throw DomainError("normalizer: contraction keys must be non-empty lowercase: '" + key + "'");
    }
    (void)value;
  }
  if (sentinel_num.size() < 2 || sentinel_empty.size() < 2) {
    throw DomainError("normalizer: sentinels must have at least two characters");
  }
}

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopword file: " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view w = trim(line);
    if (!w.empty()) words.insert(std::string(w));
  }
  return words;
}

std::map<std::string, std::string> load_contractions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open contraction file: " + path.string());
  std::map<std::string, std::string> table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("contraction file " + path.string() + " line " + std::to_string(lineno) +
                       ": expected <key> TAB <expansion>");
    }
    table[std::string(trim(line.substr(0, tab)))] = std::string(trim(line.substr(tab + 1)));
  }
  return table;
}

NormalizerConfig NormalizerConfig::defaults() {
  NormalizerConfig config;
  {
    std::istringstream in(detail::kDefaultStopwords);
    std::string line;
    while (std::getline(in, line)) {
      const std::string_view w = trim(line);
      if (!w.empty()) config.stopwords.insert(std::string(w));
    }
  }
  {
    std::istringstream in(detail::kDefaultContractions);
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      const std::size_t tab = line.find('\t');
      config.contractions[std::string(trim(line.substr(0, tab)))] =
          std::string(trim(line.substr(tab + 1)));
    }
  }
  config.validate();
  return config;
}

}  // namespace commentcat
