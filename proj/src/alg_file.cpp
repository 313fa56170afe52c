#include "transvector/alg_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace transvector {

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

ComplexRational parse_complex_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty complex number");
  if (text.back() != 'i') return {parse_rational(text), Rational(0)};
  text.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if (text[k] == '+' || text[k] == '-') {
      split = k;
      break;
    }
  }
  std::string_view re_part = split == std::string_view::npos ? std::string_view{} : text.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? text : text.substr(split);
  Rational im;
  if (im_part.empty() || im_part == "+") {
    im = 1;
  } else if (im_part == "-") {
    im = -1;
  } else {
    im = parse_rational(im_part);
  }
  return {re_part.empty() ? Rational(0) : parse_rational(re_part), im};
}

namespace {

struct Token {
  std::string text;
  std::size_t column;   // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == ';' || line[i] == ':') {
      out.push_back({std::string(1, line[i]), i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ';' && line[i] != ':') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool valid_label(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : source_(std::move(source)) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      lines_.push_back(line);
    }
  }

  StructuredLieAlgebra run() {
    std::string section;
    for (std::size_t n = 0; n < lines_.size(); ++n) {
      line_ = n + 1;
      const auto tokens = tokenize(lines_[n]);
      if (tokens.empty()) continue;
      if (tokens[0].text.front() == '[') {
        if (tokens.size() != 1 || tokens[0].text.back() != ']') fail(tokens[0].column, "malformed section header");
        section = tokens[0].text.substr(1, tokens[0].text.size() - 2);
        if (section != "basis" && section != "bracket" && section != "theta" && section != "realization") {
          fail(2, "unknown section [" + section + "]");
        }
        if (!seen_.insert({section, line_}).second) fail(1, "duplicate section [" + section + "]");
        if (section != "basis" && labels_.empty()) fail(1, "[" + section + "] before [basis]");
        continue;
      }
      if (section.empty()) fail(tokens[0].column, "content outside any section");
      if (section == "basis") basis_line(tokens);
      if (section == "bracket") bracket_line(tokens);
      if (section == "theta") theta_line(tokens);
      if (section == "realization") realization_line(tokens);
    }
    line_ = lines_.size() + 1;
    if (labels_.empty()) fail(1, "missing [basis] section (empty definition)");
    if (!seen_.count("theta")) fail(1, "missing [theta] section");
    if (theta_rows_.size() != labels_.size()) {
      fail(1, "[theta] has " + std::to_string(theta_rows_.size()) + " rows, expected " + std::to_string(labels_.size()));
    }
    RationalMatrix theta(labels_.size(), labels_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = 0; j < labels_.size(); ++j) theta(i, j) = theta_rows_[i][j];

    std::vector<BracketTerm> table;
    for (auto& [key, value] : brackets_) table.push_back({key.first, key.second, std::move(value)});

    std::optional<MatrixRealization> real;
    if (seen_.count("realization")) {
      if (real_size_ == 0) fail(1, "[realization] is missing 'size'");
      MatrixRealization r;
      r.size = real_size_;
      for (std::size_t i = 0; i < labels_.size(); ++i) {
        auto it = images_.find(i);
        if (it == images_.end()) fail(1, "[realization] has no matrix for '" + labels_[i] + "'");
        r.images.push_back(it->second);
      }
      real = std::move(r);
    }
    return StructuredLieAlgebra(std::filesystem::path(source_).stem().string(), labels_, std::move(table), std::move(theta), std::move(real));
  }

 private:
  [[noreturn]] void fail(std::size_t column, const std::string& msg) const { throw ParseError(source_, line_, column, msg); }

  Rational rational(const Token& t) const {
    try {
      return parse_rational(t.text);
    } catch (const std::invalid_argument& e) {
      fail(t.column, e.what());
    }
  }

  std::size_t label_index(const Token& t) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == t.text) return i;
    if (!t.text.empty() && std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const auto k = std::stoul(t.text);
      if (k >= 1 && k <= labels_.size()) return k - 1;
      fail(t.column, "basis index " + t.text + " out of range");
    }
    fail(t.column, "unknown basis element '" + t.text + "'");
  }

  void basis_line(const std::vector<Token>& tokens) {
    for (const auto& t : tokens) {
      if (!valid_label(t.text)) fail(t.column, "invalid label '" + t.text + "'");
      for (const auto& l : labels_)
        if (l == t.text) fail(t.column, "duplicate label '" + t.text + "'");
      labels_.push_back(t.text);
    }
  }

  void bracket_line(const std::vector<Token>& tokens) {
    const std::size_t d = labels_.size();
    if (tokens.size() < 3 || tokens[2].text != "->") {
      fail(tokens[0].column, "expected 'X Y -> c_1 ... c_d'");
    }
    if (tokens.size() != 3 + d) {
      fail(tokens.back().column, "expected " + std::to_string(d) + " coefficients, found " + std::to_string(tokens.size() - 3));
    }
    std::size_t i = label_index(tokens[0]);
    std::size_t j = label_index(tokens[1]);
    if (i == j) fail(tokens[1].column, "bracket of an element with itself is zero by definition");
    ExactVector v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = rational(tokens[3 + k]);
    if (i > j) {
      std::swap(i, j);
      v = -v;
    }
    if (!brackets_.emplace(std::pair{i, j}, std::move(v)).second) {
      fail(tokens[0].column, "bracket [" + labels_[i] + ", " + labels_[j] + "] given twice");
    }
  }

  void theta_line(const std::vector<Token>& tokens) {
    const std::size_t d = labels_.size();
    if (tokens.size() != d) fail(tokens.front().column, "theta row needs " + std::to_string(d) + " entries");
    if (theta_rows_.size() == d) fail(tokens.front().column, "too many theta rows");
    std::vector<Rational> row;
    for (const auto& t : tokens) row.push_back(rational(t));
    theta_rows_.push_back(std::move(row));
  }

  void realization_line(const std::vector<Token>& tokens) {
    if (tokens[0].text == "size") {
      if (tokens.size() != 2) fail(tokens[0].column, "expected 'size n'");
      try {
        real_size_ = std::stoul(tokens[1].text);
      } catch (...) {
        fail(tokens[1].column, "invalid size");
      }
      if (real_size_ == 0) fail(tokens[1].column, "size must be positive");
      return;
    }
    if (tokens[0].text == "involution") {
      if (tokens.size() != 2 || tokens[1].text != "inverse-adjoint") {
        fail(tokens.size() > 1 ? tokens[1].column : tokens[0].column, "only 'involution inverse-adjoint' is supported");
      }
      return;
    }
    if (real_size_ == 0) fail(tokens[0].column, "'size' must precede the matrices");
    if (tokens.size() < 2 || tokens[1].text != ":") fail(tokens[0].column, "expected 'label: row ; row ...'");
    const std::size_t idx = label_index(tokens[0]);
    ComplexRationalMatrix m(real_size_, real_size_);
    std::size_t row = 0, col = 0;
    for (std::size_t k = 2; k < tokens.size(); ++k) {
      if (tokens[k].text == ";") {
        if (col != real_size_) fail(tokens[k].column, "row " + std::to_string(row + 1) + " has " + std::to_string(col) + " entries");
        ++row;
        col = 0;
        continue;
      }
      if (row >= real_size_ || col >= real_size_) fail(tokens[k].column, "matrix larger than size");
      try {
        m(row, col) = parse_complex_rational(tokens[k].text);
      } catch (const std::invalid_argument& e) {
        fail(tokens[k].column, e.what());
      }
      ++col;
    }
    if (row != real_size_ - 1 || col != real_size_) fail(tokens.back().column, "matrix must be size x size");
    if (!images_.emplace(idx, std::move(m)).second) fail(tokens[0].column, "matrix for '" + tokens[0].text + "' given twice");
  }

  std::string source_;
  std::vector<std::string> lines_;
  std::size_t line_ = 0;
  std::map<std::string, std::size_t> seen_;
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, ExactVector> brackets_;
  std::vector<std::vector<Rational>> theta_rows_;
  std::size_t real_size_ = 0;
  std::map<std::size_t, ComplexRationalMatrix> images_;
};

std::string format_complex(const ComplexRational& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  std::string im = to_string(z.im);
  if (sgn(z.re) == 0) return im + "i";
  return to_string(z.re) + (sgn(z.im) > 0 ? "+" : "") + im + "i";
}

}  // namespace

StructuredLieAlgebra parse_algebra_text(std::string_view text, const std::string& source) {
  StructuredLieAlgebra alg = Parser(text, source).run();
  ValidationReport rep = validate_algebra(alg);
  if (!rep.passed()) {
    std::string msg = source + ": algebra fails validation:";
    const char* sep = " ";
    for (const auto& e : rep.entries) {
      if (e.passed) continue;
      msg += sep + e.name + (e.detail.empty() ? "" : " " + e.detail);
      sep = "; ";
    }
    throw AlgebraValidationError(msg, std::move(rep));
  }
  return alg;
}

StructuredLieAlgebra parse_algebra_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_algebra_text(buf.str(), path.string());
}

std::string format_algebra(const StructuredLieAlgebra& a) {
  std::ostringstream out;
  out << "[basis]\n";
  for (std::size_t i = 0; i < a.dim(); ++i) out << (i ? " " : "") << a.labels()[i];
  out << "\n\n[bracket]\n";
  for (const auto& t : a.bracket_table()) {
    out << a.labels()[t.i] << ' ' << a.labels()[t.j] << " ->";
    for (std::size_t k = 0; k < a.dim(); ++k) out << ' ' << to_string(t.value[k]);
    out << '\n';
  }
  out << "\n[theta]\n";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out << (j ? " " : "") << to_string(a.theta()(i, j));
    out << '\n';
  }
  if (const auto& r = a.realization()) {
    out << "\n[realization]\nsize " << r->size << "\ninvolution inverse-adjoint\n";
    for (std::size_t k = 0; k < a.dim(); ++k) {
      out << a.labels()[k] << ':';
      for (std::size_t i = 0; i < r->size; ++i) {
        if (i) out << " ;";
        for (std::size_t j = 0; j < r->size; ++j) out << ' ' << format_complex(r->images[k](i, j));
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace transvector
