#pragma once

// Matrix serialization. JSON stores complex entries as [re, im] pairs; CSV
// keeps one strictly numeric file per real plane (`<stem>.re.csv`,
// `<stem>.im.csv`). CSV numbers use 17 significant digits; JSON numbers use
// the json library's shortest round-trip form. Both read back bit-exactly.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "anw/matrix.hpp"

namespace anw::io {

using nlohmann::json;

/// "%.17g", with non-finite values rejected.
std::string format_double(double v);

json to_json(const ComplexMatrix& m);
json to_json(const RealMatrix& m);
/// Accepts {"rows", "cols", "data"} where data is a row list of [re, im] pairs
/// (complex) or numbers (real, imaginary part zero).
ComplexMatrix complex_from_json(const json& j);
RealMatrix real_from_json(const json& j);

/// Two-space indented, keys sorted, trailing newline.
std::string dump(const json& j);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const json& j);
json read_json(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const RealMatrix& m);
RealMatrix read_csv(const std::filesystem::path& path);

/// Writes `<stem>.re.csv` and `<stem>.im.csv`.
void write_csv_pair(const std::filesystem::path& stem, const ComplexMatrix& m);
ComplexMatrix read_csv_pair(const std::filesystem::path& stem);

/// Loads a matrix from a .json file, a .csv file, or a CSV pair given by its
/// stem (or by either of its two files).
ComplexMatrix load_matrix(const std::filesystem::path& path);

}  // namespace anw::io
