#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>

namespace commentcat {

struct NormalizerConfig {
  std::map<std::string, std::string> contractions;  // lowercase key -> expansion
  std::unordered_set<std::string> stopwords;        // lowercase words
  std::string sentinel_num = "NUM";
  std::string sentinel_empty = "EMT";

  // Embedded English stopword list (179 words) and contraction table.
  static NormalizerConfig defaults();

  // Throws DomainError if the stopword set is empty or contains
  // uppercase characters, or if a contraction key is not lowercase.
  void validate() const;
};

std::unordered_set<std::string> load_stopwords(const std::filesystem::path& path);
std::map<std::string, std::string> load_contractions(const std::filesystem::path& path);

// Full normalization pipeline, applied in this order:
//   1. trim leading/trailing whitespace
//   2. expand contractions (whole-token, longest match first)
//   3. replace non-alphanumeric characters with spaces
//   4. split on whitespace and drop single-character tokens
//   5. lowercase
//   6. remove stopwords
//   7. stem (Porter)
//   8. replace all-digit tokens with sentinel_num
//   9. if nothing is left, emit sentinel_empty
//
// A consequence of this order: single digits are dropped at stage 4 and
// never reach stage 8, so only multi-digit tokens become sentinel_num.
// Sentinel tokens already present in the input pass through stages 5-7
// unchanged. Returns the space-joined token sequence.
std::string normalize(std::string_view sentence, const NormalizerConfig& config);

// Stage 2 in isolation. A key matches as a whole token (delimited by
// characters that are not letters, digits or apostrophes), longest key
// first, case-insensitively. When the matched text starts with an
// uppercase letter the expansion's first letter is uppercased too.
std::string expand_contractions(std::string_view text,
                                const std::map<std::string, std::string>& table);

// Porter (1980) stemmer over a lowercase token. Inputs of length <= 2
// are returned unchanged, as are results that would shrink below two
// characters.
std::string porter_stem(std::string_view word);

// Sentinel-aware stemming: config sentinels bypass the stemmer.
std::string stem_token(std::string_view token, const NormalizerConfig& config);

namespace detail {
extern const char* const kDefaultStopwords;     // newline separated
extern const char* const kDefaultContractions;  // key TAB expansion lines
}  // namespace detail

}  // namespace commentcat
