#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace commentcat {

enum class Language { Java, Pharo, Python };

enum class Partition { Train, Test };

// One labeled comment sentence. `category` holds the canonical id
// (lowercase, underscore-separated, e.g. "key_messages").
struct CommentRecord {
  std::string sentence;
  Language language;
  std::string category;
  int is_member;  // 1 = sentence belongs to the category
  Partition partition;

  bool operator==(const CommentRecord&) const = default;
};

// Column headers of the input CSV. The language column is consulted
// only for combined files (no fixed per-file language).
struct ColumnSchema {
  std::string sentence = "comment_sentence";
  std::string category = "category";
  std::string membership = "instance_type";
  std::string partition = "partition";
  std::string language = "language";
};

struct LabeledSentence {
  std::string sentence;
  int label;

  bool operator==(const LabeledSentence&) const = default;
};

// All records of one (language, category) pair, split by the dataset's
// partition column. Ordering follows the input file, so downstream
// seeding is reproducible.
struct CategoryDataset {
  Language language;
  std::string category;
  std::vector<LabeledSentence> train;
  std::vector<LabeledSentence> test;

  bool operator==(const CategoryDataset&) const = default;
};

std::string to_string(Language language);
std::optional<Language> parse_language(std::string_view text);

// Canonical category ids per language, in the dataset taxonomy order.
const std::vector<std::string>& valid_categories(Language language);

// Case-insensitive after trimming; space/underscore/hyphen separators
// are ignored, so "Key Messages", "Keymessages" and "key_messages" all
// resolve to the same id. Returns nullopt for unknown names.
std::optional<std::string> canonical_category(Language language, std::string_view raw);

// Loads one CSV. `file_language` fixes the language for per-language
// files; pass nullopt for combined files carrying a language column.
// Partition accepts {0,1} and {"train","test"} spellings; membership
// must be exactly 0 or 1.
std::vector<CommentRecord> load_dataset(const std::filesystem::path& path,
                                        const ColumnSchema& schema,
                                        std::optional<Language> file_language);

// Rows matching (language, category), split by partition, labels taken
// from the membership flag. Unknown categories raise a domain error
// listing the valid names.
CategoryDataset filter_category(const std::vector<CommentRecord>& records, Language language,
                                std::string_view category);

// Distinct categories per language in first-appearance order.
std::map<Language, std::vector<std::string>> list_categories(
    const std::vector<CommentRecord>& records);

}  // namespace commentcat
