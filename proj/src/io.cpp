#include "anw/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace anw::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  if (!std::isfinite(v)) throw ValidationError("cannot serialize a non-finite value");
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

json to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    data.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json to_json(const RealMatrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) data.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

namespace {

std::pair<std::size_t, std::size_t> read_shape(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw ValidationError("matrix JSON needs \"rows\", \"cols\" and \"data\"");
  }
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw ValidationError("matrix JSON: rows and cols must be non-negative integers");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const json& data = j["data"];
  if (!data.is_array() || data.size() != rows) throw ValidationError("matrix JSON: data must hold `rows` rows");
  for (const json& row : data)
    if (!row.is_array() || row.size() != cols) throw ValidationError("matrix JSON: every row must hold `cols` entries");
  return {rows, cols};
}

double number(const json& v) {
  if (!v.is_number()) throw ValidationError("matrix JSON: entries must be numbers");
  return v.get<double>();
}

}  // namespace

ComplexMatrix complex_from_json(const json& j) {
  const auto [rows, cols] = read_shape(j);
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const json& v = j["data"][r][c];
      if (v.is_array()) {
        if (v.size() != 2) throw ValidationError("matrix JSON: complex entries are [re, im] pairs");
        m(r, c) = cplx(number(v[0]), number(v[1]));
      } else {
        m(r, c) = number(v);
      }
    }
  return m;
}

RealMatrix real_from_json(const json& j) {
  const auto [rows, cols] = read_shape(j);
  RealMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = number(j["data"][r][c]);
  return m;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw ValidationError("write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_json(const fs::path& path, const json& j) { write_text(path, dump(j)); }

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_csv(const fs::path& path, const RealMatrix& m) {
  std::string text;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) text += ',';
      text += format_double(m(i, j));
    }
    text += '\n';
  }
  write_text(path, text);
}

RealMatrix read_csv(const fs::path& path) {
  const std::string text = read_text(path);
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto first = cell.find_first_not_of(" \t");
      const auto last = cell.find_last_not_of(" \t");
      cell = first == std::string::npos ? std::string() : cell.substr(first, last - first + 1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": '" + cell + "' is not a number");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ValidationError(path.string() + ":" + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("'" + path.string() + "' holds no matrix");
  RealMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  return m;
}

namespace {

fs::path with_suffix(const fs::path& stem, const char* suffix) { return fs::path(stem.string() + suffix); }

}  // namespace

void write_csv_pair(const fs::path& stem, const ComplexMatrix& m) {
  RealMatrix re(m.rows(), m.cols()), im(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      re(i, j) = m(i, j).real();
      im(i, j) = m(i, j).imag();
    }
  write_csv(with_suffix(stem, ".re.csv"), re);
  write_csv(with_suffix(stem, ".im.csv"), im);
}

ComplexMatrix read_csv_pair(const fs::path& stem) {
  const RealMatrix re = read_csv(with_suffix(stem, ".re.csv"));
  const RealMatrix im = read_csv(with_suffix(stem, ".im.csv"));
  require_same_shape(re.rows(), re.cols(), im.rows(), im.cols(), "CSV pair");
  ComplexMatrix m(re.rows(), re.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = cplx(re(i, j), im(i, j));
  return m;
}

ComplexMatrix load_matrix(const fs::path& path) {
  const std::string name = path.string();
  auto ends_with = [&](const std::string& s) {
    return name.size() >= s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".re.csv") || ends_with(".im.csv")) return read_csv_pair(name.substr(0, name.size() - 7));
  if (ends_with(".json")) return complex_from_json(read_json(path));
  if (ends_with(".csv")) {
    const RealMatrix re = read_csv(path);
    ComplexMatrix m(re.rows(), re.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = re(i, j);
    return m;
  }
  if (fs::exists(with_suffix(path, ".re.csv"))) return read_csv_pair(path);
  throw ValidationError("cannot tell the format of '" + name + "' (expected .json, .csv or a CSV pair stem)");
}

}  // namespace anw::io
