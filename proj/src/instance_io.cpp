#include "sfmoea/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sfmoea {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t k = i;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > i) out.push_back(line.substr(i, k - i));
    i = k;
  }
  return out;
}

template <class T>
T parse_number(std::string_view token, const std::string& path, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(path, line, "bad number '" + std::string(token) + "'");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// Reads `n` from the first nonblank line.
std::size_t read_count(std::istream& in, const std::string& path, std::size_t& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) throw ParseError(path, line_no, "expected a single count");
    return parse_number<std::size_t>(tokens[0], path, line_no);
  }
  throw ParseError(path, line_no, "missing count line");
}

}  // namespace

std::vector<Coordinate> parse_tsp_objective(const std::string& path) {
  auto in = open_input(path);
  std::size_t line_no = 0;
  const std::size_t n = read_count(in, path, line_no);
  std::vector<Coordinate> points;
  points.reserve(n);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(path, line_no, "expected `x y`");
    if (points.size() == n) throw ParseError(path, line_no, "more coordinates than n");
    points.push_back({parse_number<double>(tokens[0], path, line_no),
                      parse_number<double>(tokens[1], path, line_no)});
  }
  if (points.size() != n)
    throw ParseError(path, line_no,
                     "expected " + std::to_string(n) + " coordinates, found " +
                         std::to_string(points.size()));
  return points;
}

void write_tsp_objective(const std::string& path, std::span<const Coordinate> points) {
  auto out = open_output(path);
  out << points.size() << '\n';
  for (const auto& p : points) out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
}

std::vector<int> euclidean_cost_matrix(std::span<const Coordinate> points) {
  const std::size_t n = points.size();
  std::vector<int> m(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = std::hypot(points[a].x - points[b].x, points[a].y - points[b].y);
      const int c = static_cast<int>(std::floor(d + 0.5));
      m[a * n + b] = m[b * n + a] = c;
    }
  return m;
}

TspInstance load_tsp_instance(std::span<const std::string> objective_files) {
  require(!objective_files.empty(), "need at least one objective file");
  std::vector<std::vector<int>> matrices;
  std::size_t n = 0;
  for (const auto& file : objective_files) {
    const auto pts = parse_tsp_objective(file);
    if (matrices.empty()) n = pts.size();
    else if (pts.size() != n)
      throw ParseError(file, 1, "city count differs from the first objective file");
    matrices.push_back(euclidean_cost_matrix(pts));
  }
  return TspInstance(n, std::move(matrices));
}

std::vector<int> parse_profits(const std::string& path) {
  auto in = open_input(path);
  std::size_t line_no = 0;
  const std::size_t n = read_count(in, path, line_no);
  std::vector<int> profits;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 1) throw ParseError(path, line_no, "expected one profit per line");
    if (profits.size() == n) throw ParseError(path, line_no, "more profits than n");
    const int p = parse_number<int>(tokens[0], path, line_no);
    if (p < 0) throw ParseError(path, line_no, "profit must be nonnegative");
    profits.push_back(p);
  }
  if (profits.size() != n)
    throw ParseError(path, line_no, "expected " + std::to_string(n) + " profits");
  return profits;
}

void write_profits(const std::string& path, std::span<const int> profits) {
  auto out = open_output(path);
  out << profits.size() << '\n';
  for (int p : profits) out << p << '\n';
}

TspwpInstance load_tspwp_instance(const std::string& objective_file,
                                  const std::string& profit_file) {
  const auto pts = parse_tsp_objective(objective_file);
  auto profits = parse_profits(profit_file);
  if (profits.size() != pts.size())
    throw ParseError(profit_file, 1, "profit count differs from city count");
  return TspwpInstance(pts.size(), euclidean_cost_matrix(pts), std::move(profits));
}

namespace {

// Whitespace token stream that remembers line numbers.
class TokenReader {
 public:
  TokenReader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

  template <class T>
  T next(const char* what) {
    while (pos_ >= tokens_.size()) {
      if (!std::getline(in_, line_)) throw ParseError(path_, line_no_, std::string("unexpected end of file, expected ") + what);
      ++line_no_;
      tokens_ = split_ws(line_);
      pos_ = 0;
    }
    return parse_number<T>(tokens_[pos_++], path_, line_no_);
  }

  bool at_end() {
    while (pos_ >= tokens_.size()) {
      if (!std::getline(in_, line_)) return true;
      ++line_no_;
      tokens_ = split_ws(line_);
      pos_ = 0;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }
  const std::string& path() const { return path_; }

 private:
  std::istream& in_;
  std::string path_;
  std::string line_;
  std::vector<std::string_view> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

}  // namespace

ScpInstance parse_scp(const std::string& path) {
  auto in = open_input(path);
  TokenReader reader(in, path);
  const auto rows = reader.next<std::size_t>("row count");
  const auto cols = reader.next<std::size_t>("column count");
  const auto objectives = reader.next<std::size_t>("objective count");
  if (rows == 0 || cols == 0 || objectives < 2)
    throw ParseError(path, reader.line(), "need L >= 1, I >= 1, J >= 2");
  std::vector<std::vector<int>> costs(objectives, std::vector<int>(cols));
  for (auto& c : costs)
    for (auto& v : c) {
      v = reader.next<int>("column cost");
      if (v <= 0) throw ParseError(path, reader.line(), "column costs must be positive");
    }
  std::vector<std::vector<int>> row_columns(rows);
  for (auto& r : row_columns) {
    const auto k = reader.next<std::size_t>("row cover count");
    if (k == 0) throw ParseError(path, reader.line(), "row must be covered by at least one column");
    r.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto c = reader.next<std::size_t>("column index");
      if (c < 1 || c > cols) throw ParseError(path, reader.line(), "column index out of range");
      r.push_back(static_cast<int>(c - 1));
    }
  }
  if (!reader.at_end()) throw ParseError(path, reader.line(), "trailing data after last row");
  return ScpInstance(cols, std::move(row_columns), std::move(costs));
}

void write_scp(const std::string& path, const ScpInstance& inst) {
  auto out = open_output(path);
  out << inst.rows() << ' ' << inst.columns() << ' ' << inst.objectives() << '\n';
  constexpr std::size_t kPerLine = 12;
  for (const auto& costs : inst.costs()) {
    for (std::size_t i = 0; i < costs.size(); ++i)
      out << costs[i] << ((i + 1) % kPerLine == 0 || i + 1 == costs.size() ? '\n' : ' ');
  }
  for (const auto& cols : inst.row_columns()) {
    out << cols.size() << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << cols[i] + 1 << ((i + 1) % kPerLine == 0 || i + 1 == cols.size() ? '\n' : ' ');
  }
}

}  // namespace sfmoea
