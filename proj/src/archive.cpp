#include "sfmoea/archive.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace sfmoea {

bool dominates(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), "dimension mismatch");
  bool strictly_better = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
    if (a[j] < b[j]) strictly_better = true;
  }
  return strictly_better;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

void write_points_csv(std::ostream& out, const std::vector<ObjectivePoint>& points,
                      std::size_t objectives) {
  for (std::size_t j = 0; j < objectives; ++j)
    out << (j ? "," : "") << "obj" << (j + 1);
  out << '\n';
  for (const ObjectivePoint& p : points) {
    require(p.size() == objectives, "point dimension mismatch");
    for (std::size_t j = 0; j < p.size(); ++j)
      out << (j ? "," : "") << format_double(p[j]);
    out << '\n';
  }
}

void write_points_csv(const std::string& path,
                      const std::vector<ObjectivePoint>& points,
                      std::size_t objectives) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_points_csv(out, points, objectives);
}

std::vector<ObjectivePoint> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(path, 1, "missing header");
  const std::size_t objectives =
      static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (line.rfind("obj1", 0) != 0) throw ParseError(path, 1, "expected obj1,... header");

  std::vector<ObjectivePoint> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    ObjectivePoint p;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      std::string_view field = rest.substr(0, comma);
      while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
        field.remove_suffix(1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size())
        throw ParseError(path, line_no, "bad number '" + std::string(field) + "'");
      p.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (p.size() != objectives)
      throw ParseError(path, line_no, "expected " + std::to_string(objectives) + " values");
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<ObjectivePoint> sorted_points(std::vector<ObjectivePoint> points) {
  std::sort(points.begin(), points.end());
  return points;
}

}  // namespace sfmoea
