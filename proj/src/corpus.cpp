#include "commentcat/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "commentcat/csv.hpp"
#include "commentcat/errors.hpp"

namespace commentcat {

namespace {

std::string trim_copy(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower_copy(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Matching key: lowercase with separators removed ("Key Messages",
// "key_messages" and "Keymessages" share one key).
std::string category_key(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : trim_copy(raw)) {
    if (c == ' ' || c == '_' || c == '-') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

const std::vector<std::string> kJavaCategories = {
    "summary", "pointer", "deprecation", "rational", "ownership", "usage", "expand"};
const std::vector<std::string> kPharoCategories = {
    "key_messages",   "intent",           "class_references", "example",
    "key_implementation_points", "responsibilities", "collaborators"};
const std::vector<std::string> kPythonCategories = {
    "summary", "parameters", "usage", "development_notes", "expand"};

std::string joined_names(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  return out;
}

}  // namespace

std::string to_string(Language language) {
  switch (language) {
    case Language::Java:
      return "java";
    case Language::Pharo:
      return "pharo";
    case Language::Python:
      return "python";
  }
  return "unknown";
}

std::optional<Language> parse_language(std::string_view text) {
  const std::string key = lower_copy(trim_copy(text));
  if (key == "java") return Language::Java;
  if (key == "pharo") return Language::Pharo;
  if (key == "python") return Language::Python;
  return std::nullopt;
}

const std::vector<std::string>& valid_categories(Language language) {
  switch (language) {
    case Language::Java:
      return kJavaCategories;
    case Language::Pharo:
      return kPharoCategories;
    default:
      return kPythonCategories;
  }
}

std::optional<std::string> canonical_category(Language language, std::string_view raw) {
  const std::string key = category_key(raw);
  for (const std::string& name : valid_categories(language)) {
    if (category_key(name) == key) return name;
  }
  return std::nullopt;
}

std::vector<CommentRecord> load_dataset(const std::filesystem::path& path,
                                        const ColumnSchema& schema,
                                        std::optional<Language> file_language) {
  const std::vector<std::vector<std::string>> rows = read_csv_file(path);
  if (rows.empty()) {
    throw ParseError("dataset " + path.string() + ": missing header row");
  }

  const std::vector<std::string>& header = rows.front();
  auto find_column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim_copy(header[i]) == name) return i;
    }
    throw SchemaError("dataset " + path.string() + ": missing column '" + name + "'");
  };

  const std::size_t col_sentence = find_column(schema.sentence);
  const std::size_t col_category = find_column(schema.category);
  const std::size_t col_membership = find_column(schema.membership);
  const std::size_t col_partition = find_column(schema.partition);
  std::size_t col_language = 0;
  if (!file_language.has_value()) {
    col_language = find_column(schema.language);
  }

  std::vector<CommentRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::vector<std::string>& row = rows[r];
    const std::string row_tag = "row " + std::to_string(r);  // 1-based data row
    auto cell = [&](std::size_t col) -> std::string {
      if (col >= row.size()) {
        throw ParseError("dataset " + path.string() + " " + row_tag + ": expected at least " +
                         std::to_string(col + 1) + " fields, got " + std::to_string(row.size()));
      }
      return row[col];
    };

    CommentRecord rec;
    rec.sentence = cell(col_sentence);

    if (file_language.has_value()) {
      rec.language = *file_language;
    } else {
      const std::optional<Language> lang = parse_language(cell(col_language));
      if (!lang.has_value()) {
        throw ParseError("dataset " + path.string() + " " + row_tag + ": unknown language '" +
                         cell(col_language) + "'");
      }
      rec.language = *lang;
    }

    const std::string raw_category = cell(col_category);
    const std::optional<std::string> category = canonical_category(rec.language, raw_category);
    if (!category.has_value()) {
      throw ParseError("dataset " + path.string() + " " + row_tag + ": unknown category '" +
                       trim_copy(raw_category) + "' for language " + to_string(rec.language) +
                       " (valid: " + joined_names(valid_categories(rec.language)) + ")");
    }
    rec.category = *category;

    const std::string membership = trim_copy(cell(col_membership));
    if (membership == "0") {
      rec.is_member = 0;
    } else if (membership == "1") {
      rec.is_member = 1;
    } else {
      throw ParseError("dataset " + path.string() + " " + row_tag + ": membership value '" +
                       membership + "' is not 0 or 1");
    }

    const std::string partition = lower_copy(trim_copy(cell(col_partition)));
    if (partition == "0" || partition == "train") {
      rec.partition = Partition::Train;
    } else if (partition == "1" || partition == "test") {
      rec.partition = Partition::Test;
    } else {
      throw ParseError("dataset " + path.string() + " " + row_tag + ": partition value '" +
                       partition + "' is not one of 0/1/train/test");
    }

    records.push_back(std::move(rec));
  }
  return records;
}

CategoryDataset filter_category(const std::vector<CommentRecord>& records, Language language,
                                std::string_view category) {
  const std::optional<std::string> canonical = canonical_category(language, category);
  if (!canonical.has_value()) {
    throw DomainError("unknown category '" + std::string(category) + "' for language " +
                      to_string(language) + " (valid: " +
                      joined_names(valid_categories(language)) + ")");
  }

  CategoryDataset dataset;
  dataset.language = language;
  dataset.category = *canonical;
  for (const CommentRecord& rec : records) {
    if (rec.language != language || rec.category != *canonical) continue;
    LabeledSentence item{rec.sentence, rec.is_member};
    if (rec.partition == Partition::Train) {
      dataset.train.push_back(std::move(item));
    } else {
      dataset.test.push_back(std::move(item));
    }
  }
  return dataset;
}

std::map<Language, std::vector<std::string>> list_categories(
    const std::vector<CommentRecord>& records) {
  std::map<Language, std::vector<std::string>> result;
  for (const CommentRecord& rec : records) {
    std::vector<std::string>& names = result[rec.language];
    if (std::find(names.begin(), names.end(), rec.category) == names.end()) {
      names.push_back(rec.category);
    }
  }
  return result;
}

}  // namespace commentcat
