#include "commentcat/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commentcat/errors.hpp"

namespace commentcat {

namespace {

constexpr const char* kMagic = "commentcat-model";
constexpr int kFormatVersion = 1;

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) {
      throw FormatError("model file truncated after line " + std::to_string(lineno_));
    }
    ++lineno_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  // Splits the next line and checks the leading tag.
  std::vector<std::string> fields(const std::string& tag, std::size_t expected_extra) {
    std::istringstream stream(next());
    std::vector<std::string> out;
    std::string field;
    while (stream >> field) out.push_back(field);
    if (out.empty() || out.front() != tag) {
      throw FormatError("model file line " + std::to_string(lineno_) + ": expected '" + tag +
                        "' section");
    }
    if (expected_extra != kAnyArity && out.size() != expected_extra + 1) {
      throw FormatError("model file line " + std::to_string(lineno_) + ": '" + tag +
                        "' expects " + std::to_string(expected_extra) + " fields");
    }
    return out;
  }

  std::size_t lineno() const { return lineno_; }

  static constexpr std::size_t kAnyArity = static_cast<std::size_t>(-1);

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

std::size_t parse_count(const std::string& text) {
  std::size_t value = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw FormatError("model file: bad count '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& text) {
  std::uint64_t value = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw FormatError("model file: bad integer '" + text + "'");
  }
  return value;
}

std::vector<double> parse_doubles(const std::string& line, std::size_t expected) {
  std::istringstream stream(line);
  std::vector<double> out;
  std::string field;
  while (stream >> field) out.push_back(parse_double(field));
  if (out.size() != expected) {
    throw FormatError("model file: expected " + std::to_string(expected) + " values, got " +
                      std::to_string(out.size()));
  }
  return out;
}

void write_double_lines(std::ostream& out, const std::vector<double>& values) {
  for (double v : values) out << format_double(v) << '\n';
}

std::vector<double> read_double_lines(LineReader& reader, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(parse_double(reader.next()));
  return out;
}

void write_tree(std::ostream& out, const TreePayload& tree) {
  out << "nodes " << tree.nodes.size() << '\n';
  for (const TreeNode& node : tree.nodes) {
    if (node.leaf) {
      out << "leaf " << node.label << ' ' << format_double(node.positive_fraction) << '\n';
    } else {
      out << "split " << node.feature << ' ' << format_double(node.threshold) << ' ' << node.left
          << ' ' << node.right << ' ' << node.label << ' '
          << format_double(node.positive_fraction) << '\n';
    }
  }
}

TreePayload read_tree(LineReader& reader) {
  const auto header = reader.fields("nodes", 1);
  const std::size_t count = parse_count(header[1]);
  TreePayload tree;
  tree.nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::istringstream stream(reader.next());
    std::string kind;
    stream >> kind;
    TreeNode node;
    if (kind == "leaf") {
      std::string label, frac;
      if (!(stream >> label >> frac)) throw FormatError("model file: malformed leaf node");
      node.leaf = true;
      node.label = static_cast<int>(parse_u64(label));
      node.positive_fraction = parse_double(frac);
    } else if (kind == "split") {
      std::string feature, threshold, left, right, label, frac;
      if (!(stream >> feature >> threshold >> left >> right >> label >> frac)) {
        throw FormatError("model file: malformed split node");
      }
      node.leaf = false;
      node.feature = static_cast<std::uint32_t>(parse_u64(feature));
      node.threshold = parse_double(threshold);
      node.left = static_cast<std::int32_t>(parse_u64(left));
      node.right = static_cast<std::int32_t>(parse_u64(right));
      node.label = static_cast<int>(parse_u64(label));
      node.positive_fraction = parse_double(frac);
    } else {
      throw FormatError("model file: unknown tree node kind '" + kind + "'");
    }
    tree.nodes.push_back(node);
  }
  return tree;
}

struct PayloadWriter {
  std::ostream& out;

  void operator()(const LinearPayload& p) const {
    out << "payload linear\n";
    out << "weights " << p.weights.size() << '\n';
    write_double_lines(out, p.weights);
    out << "bias " << format_double(p.bias) << '\n';
  }
  void operator()(const MultinomialNbPayload& p) const {
    out << "payload multinomial_nb\n";
    out << "log_prior " << format_double(p.log_prior[0]) << ' ' << format_double(p.log_prior[1])
        << '\n';
    out << "feature_log_prob " << p.feature_log_prob[0].size() << '\n';
    write_double_lines(out, p.feature_log_prob[0]);
    write_double_lines(out, p.feature_log_prob[1]);
  }
  void operator()(const BernoulliNbPayload& p) const {
    out << "payload bernoulli_nb\n";
    out << "log_prior " << format_double(p.log_prior[0]) << ' ' << format_double(p.log_prior[1])
        << '\n';
    out << "log_theta " << p.log_theta[0].size() << '\n';
    write_double_lines(out, p.log_theta[0]);
    write_double_lines(out, p.log_theta[1]);
    out << "log_one_minus_theta " << p.log_one_minus_theta[0].size() << '\n';
    write_double_lines(out, p.log_one_minus_theta[0]);
    write_double_lines(out, p.log_one_minus_theta[1]);
  }
  void operator()(const TreePayload& p) const {
    out << "payload decision_tree\n";
    write_tree(out, p);
  }
  void operator()(const ForestPayload& p) const {
    out << "payload random_forest\n";
    out << "trees " << p.trees.size() << '\n';
    for (const TreePayload& tree : p.trees) write_tree(out, tree);
  }
  void operator()(const KnnPayload& p) const {
    out << "payload knn\n";
    out << "k " << p.k << '\n';
    out << "rows " << p.train.size() << '\n';
    for (std::size_t i = 0; i < p.train.size(); ++i) {
      out << p.labels[i] << ' ' << p.train[i].entries.size();
      for (const SparseEntry& e : p.train[i].entries) {
        out << ' ' << e.index << ':' << format_double(e.value);
      }
      out << '\n';
    }
  }
  void operator()(const MlpPayload& p) const {
    out << "payload mlp\n";
    out << "dims " << p.input_dim << ' ' << p.hidden << '\n';
    for (std::size_t h = 0; h < p.hidden; ++h) {
      for (std::size_t j = 0; j < p.input_dim; ++j) {
        if (j > 0) out << ' ';
        out << format_double(p.w1[h * p.input_dim + j]);
      }
      out << '\n';
    }
    for (std::size_t h = 0; h < p.hidden; ++h) {
      if (h > 0) out << ' ';
      out << format_double(p.b1[h]);
    }
    out << '\n';
    for (std::size_t h = 0; h < p.hidden; ++h) {
      if (h > 0) out << ' ';
      out << format_double(p.w2[h]);
    }
    out << '\n';
    out << "b2 " << format_double(p.b2) << '\n';
  }
};

ModelPayload read_payload(LineReader& reader, Family family, std::size_t dimension) {
  const auto header = reader.fields("payload", 1);
  const std::string& kind = header[1];

  if (kind == "linear") {
    LinearPayload p;
    const auto w = reader.fields("weights", 1);
    p.weights = read_double_lines(reader, parse_count(w[1]));
    const auto b = reader.fields("bias", 1);
    p.bias = parse_double(b[1]);
    return p;
  }
  if (kind == "multinomial_nb") {
    MultinomialNbPayload p;
    const auto prior = reader.fields("log_prior", 2);
    p.log_prior = {parse_double(prior[1]), parse_double(prior[2])};
    const auto flp = reader.fields("feature_log_prob", 1);
    const std::size_t dim = parse_count(flp[1]);
    p.feature_log_prob[0] = read_double_lines(reader, dim);
    p.feature_log_prob[1] = read_double_lines(reader, dim);
    return p;
  }
  if (kind == "bernoulli_nb") {
    BernoulliNbPayload p;
    const auto prior = reader.fields("log_prior", 2);
    p.log_prior = {parse_double(prior[1]), parse_double(prior[2])};
    const auto lt = reader.fields("log_theta", 1);
    const std::size_t dim1 = parse_count(lt[1]);
    p.log_theta[0] = read_double_lines(reader, dim1);
    p.log_theta[1] = read_double_lines(reader, dim1);
    const auto lo = reader.fields("log_one_minus_theta", 1);
    const std::size_t dim2 = parse_count(lo[1]);
    p.log_one_minus_theta[0] = read_double_lines(reader, dim2);
    p.log_one_minus_theta[1] = read_double_lines(reader, dim2);
    return p;
  }
  if (kind == "decision_tree") {
    return read_tree(reader);
  }
  if (kind == "random_forest") {
    ForestPayload p;
    const auto trees = reader.fields("trees", 1);
    const std::size_t count = parse_count(trees[1]);
    p.trees.reserve(count);
    for (std::size_t i = 0; i < count; ++i) p.trees.push_back(read_tree(reader));
    return p;
  }
  if (kind == "knn") {
    KnnPayload p;
    const auto k = reader.fields("k", 1);
    p.k = parse_count(k[1]);
    const auto rows = reader.fields("rows", 1);
    const std::size_t count = parse_count(rows[1]);
    for (std::size_t i = 0; i < count; ++i) {
      std::istringstream stream(reader.next());
      int label = 0;
      std::size_t nnz = 0;
      if (!(stream >> label >> nnz)) throw FormatError("model file: malformed knn row");
      SparseVector vec;
      vec.dimension = dimension;
      vec.entries.reserve(nnz);
      std::string pair;
      for (std::size_t e = 0; e < nnz; ++e) {
        if (!(stream >> pair)) throw FormatError("model file: malformed knn row");
        const std::size_t colon = pair.find(':');
        if (colon == std::string::npos) throw FormatError("model file: malformed knn entry");
        vec.entries.push_back({static_cast<std::uint32_t>(parse_u64(pair.substr(0, colon))),
                               parse_double(pair.substr(colon + 1))});
      }
      p.train.push_back(std::move(vec));
      p.labels.push_back(label);
    }
    return p;
  }
  if (kind == "mlp") {
    MlpPayload p;
    const auto dims = reader.fields("dims", 2);
    p.input_dim = parse_count(dims[1]);
    p.hidden = parse_count(dims[2]);
    p.w1.reserve(p.input_dim * p.hidden);
    for (std::size_t h = 0; h < p.hidden; ++h) {
      const std::vector<double> row = parse_doubles(reader.next(), p.input_dim);
      p.w1.insert(p.w1.end(), row.begin(), row.end());
    }
    p.b1 = parse_doubles(reader.next(), p.hidden);
    p.w2 = parse_doubles(reader.next(), p.hidden);
    const auto b2 = reader.fields("b2", 1);
    p.b2 = parse_double(b2[1]);
    return p;
  }
  (void)family;
  throw FormatError("model file: unknown payload kind '" + kind + "'");
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw FormatError("cannot format double");
  return std::string(buf, p);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw FormatError("bad number '" + text + "'");
  }
  return value;
}

void save_model(const std::filesystem::path& path, const TrainedModel& model,
                const TfidfModel& tfidf, const NormalizerConfig& normalizer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path.string());

  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "family " << to_string(model.family()) << '\n';
  out << "seed " << model.spec.seed << '\n';
  out << "dimension " << model.dimension << '\n';
  out << "hyperparameters " << model.spec.params.size() << '\n';
  for (const auto& [name, value] : model.spec.params) {
    out << name << ' ' << format_double(value) << '\n';
  }

  out << "normalizer\n";
  out << "sentinels " << normalizer.sentinel_num << ' ' << normalizer.sentinel_empty << '\n';
  out << "stopwords " << normalizer.stopwords.size() << '\n';
  {
    // sorted for stable output; the set itself is unordered
    std::vector<std::string> words(normalizer.stopwords.begin(), normalizer.stopwords.end());
    std::sort(words.begin(), words.end());
    for (const std::string& w : words) out << w << '\n';
  }
  out << "contractions " << normalizer.contractions.size() << '\n';
  for (const auto& [key, expansion] : normalizer.contractions) {
    out << key << '\t' << expansion << '\n';
  }

  out << "tfidf " << tfidf.vocabulary().size() << ' ' << tfidf.doc_count() << '\n';
  for (const std::string& term : tfidf.vocabulary().terms) out << term << '\n';
  out << "idf\n";
  write_double_lines(out, tfidf.idf());

  std::visit(PayloadWriter{out}, model.payload);
  out << "end\n";
  if (!out) throw IoError("failed writing model file: " + path.string());
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path.string());
  LineReader reader(in);

  {
    std::istringstream header(reader.next());
    std::string magic;
    int version = 0;
    if (!(header >> magic >> version) || magic != kMagic) {
      throw FormatError("not a model file: " + path.string());
    }
    if (version != kFormatVersion) {
      throw FormatError("unsupported model format version " + std::to_string(version));
    }
  }

  const auto family_line = reader.fields("family", 1);
  const std::optional<Family> family = parse_family(family_line[1]);
  if (!family.has_value()) {
    throw FormatError("model file: unknown family '" + family_line[1] + "'");
  }

  LearnerSpec spec;
  spec.family = *family;
  spec.seed = parse_u64(reader.fields("seed", 1)[1]);
  const std::size_t dimension = parse_count(reader.fields("dimension", 1)[1]);

  const std::size_t param_count = parse_count(reader.fields("hyperparameters", 1)[1]);
  for (std::size_t i = 0; i < param_count; ++i) {
    std::istringstream stream(reader.next());
    std::string name, value;
    if (!(stream >> name >> value)) throw FormatError("model file: malformed hyperparameter");
    spec.params[name] = parse_double(value);
  }

  NormalizerConfig normalizer;
  reader.fields("normalizer", 0);
  const auto sentinels = reader.fields("sentinels", 2);
  normalizer.sentinel_num = sentinels[1];
  normalizer.sentinel_empty = sentinels[2];
  const std::size_t stopword_count = parse_count(reader.fields("stopwords", 1)[1]);
  for (std::size_t i = 0; i < stopword_count; ++i) normalizer.stopwords.insert(reader.next());
  const std::size_t contraction_count = parse_count(reader.fields("contractions", 1)[1]);
  for (std::size_t i = 0; i < contraction_count; ++i) {
    const std::string line = reader.next();
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError("model file: malformed contraction line");
    normalizer.contractions[line.substr(0, tab)] = line.substr(tab + 1);
  }
  normalizer.validate();

  const auto tfidf_header = reader.fields("tfidf", 2);
  const std::size_t vocab_size = parse_count(tfidf_header[1]);
  const std::size_t doc_count = parse_count(tfidf_header[2]);
  std::vector<std::string> terms;
  terms.reserve(vocab_size);
  for (std::size_t i = 0; i < vocab_size; ++i) terms.push_back(reader.next());
  reader.fields("idf", 0);
  std::vector<double> idf = read_double_lines(reader, vocab_size);

  ModelPayload payload = read_payload(reader, *family, dimension);
  reader.fields("end", 0);

  validate_spec(spec);
  LoadedModel loaded{TrainedModel{std::move(spec), dimension, std::move(payload)},
                     TfidfModel::from_parts(std::move(terms), std::move(idf), doc_count),
                     std::move(normalizer)};
  return loaded;
}

}  // namespace commentcat
