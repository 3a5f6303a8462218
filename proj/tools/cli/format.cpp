#include "cli/format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace vortexlab::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::string text;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) text += ',';
    text += table.header[i];
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += format_double(row[i]);
    }
    text += '\n';
  }
  for (const auto& line : table.footer) text += "# " + line + '\n';
  write_text(path, text);
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (std::getline(in, line)) table.header = split(line);
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      table.footer.push_back(line.substr(2));
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(parse_double(cell));
    if (row.size() != table.header.size()) {
      throw std::runtime_error("row width mismatch in " + path.string());
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace vortexlab::cli
