#ifndef NEARLAP_IO_HPP
#define NEARLAP_IO_HPP

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nearlap/errors.hpp"
#include "nearlap/matrix.hpp"

// Interchange formats.
//
// Matrix CSV: one row per line, comma-separated decimal or scientific tokens,
// no header. Values are written with 17 significant digits so a write/read
// round trip reproduces every double bit-for-bit.
//
// Edge file: a header line "n <N>", then one "i j" pair per line (0-based,
// whitespace-separated). Lines whose first non-blank character is '#' are
// comments. Duplicate pairs collapse; self-loops and out-of-range indices are
// rejected.

namespace nearlap {
namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  if (tok.empty()) throw ParseError(line, "empty value");
  if (tok.front() == '+') tok.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range) throw ParseError(line, "value out of range '" + std::string(tok) + "'");
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "non-numeric token '" + std::string(tok) + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value '" + std::string(tok) + "'");
  return v;
}

template <typename Int>
Int parse_index(std::string_view tok, std::size_t line) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return v;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto b = s.find_first_not_of(" \t\r", pos);
    if (b == std::string_view::npos) break;
    const auto e = s.find_first_of(" \t\r", b);
    out.push_back(s.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
    if (e == std::string_view::npos) break;
    pos = e;
  }
  return out;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw ValidationError("write failed for '" + path.string() + "'");
}

}  // namespace detail

// 17 significant digits; reads back to the identical double.
inline std::string format_double(double v) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

inline DenseMatrix parse_matrix_csv(std::string_view text) {
  std::vector<double> entries;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = detail::trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty()) continue;

    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto tok = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      entries.push_back(detail::parse_double(tok, line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      throw ParseError(line_no, "ragged row: expected " + std::to_string(cols) + " values, got " +
                                    std::to_string(count));
    }
    ++rows;
  }
  if (rows == 0) throw ParseError(line_no, "empty matrix file");
  if (rows != cols) {
    throw ParseError(line_no, "matrix is not square: " + std::to_string(rows) + " rows, " +
                                  std::to_string(cols) + " columns");
  }
  return DenseMatrix(rows, std::move(entries));
}

inline std::string format_matrix_csv(const DenseMatrix& M) {
  std::string out;
  out.reserve(M.n() * M.n() * 12);
  for (std::size_t i = 0; i < M.n(); ++i) {
    const auto row = M.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out.push_back(',');
      out += format_double(row[j]);
    }
    out.push_back('\n');
  }
  return out;
}

inline DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  return parse_matrix_csv(detail::read_file(path));
}

inline void write_matrix_csv(const DenseMatrix& M, const std::filesystem::path& path) {
  detail::write_file(path, format_matrix_csv(M));
}

inline EdgeSet parse_edges(std::string_view text) {
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const auto line = detail::trim(text.substr(pos, eol - pos));
    ++line_no;
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;

    const auto toks = detail::split_ws(line);
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "n") throw ParseError(line_no, "expected header 'n <N>'");
      n = detail::parse_index<std::size_t>(toks[1], line_no);
      if (n < 2) throw ValidationError("line " + std::to_string(line_no) + ": need n >= 2");
      if (n > kMaxDenseNodes) throw ValidationError("line " + std::to_string(line_no) + ": n exceeds cap");
      have_header = true;
      continue;
    }
    if (toks.size() != 2) throw ParseError(line_no, "expected 'i j'");
    const auto i = detail::parse_index<std::size_t>(toks[0], line_no);
    const auto j = detail::parse_index<std::size_t>(toks[1], line_no);
    if (i >= n || j >= n) {
      throw ValidationError("line " + std::to_string(line_no) + ": node index out of range for n = " +
                            std::to_string(n));
    }
    if (i == j) throw ValidationError("line " + std::to_string(line_no) + ": self-loop " + std::to_string(i));
    edges.emplace_back(i, j);
  }
  if (!have_header) throw ParseError(line_no, "missing header 'n <N>'");
  return EdgeSet(n, std::move(edges));
}

inline std::string format_edges(const EdgeSet& E) {
  std::string out = "n " + std::to_string(E.n()) + "\n";
  for (const auto& [i, j] : E.edges()) {
    out += std::to_string(i);
    out.push_back(' ');
    out += std::to_string(j);
    out.push_back('\n');
  }
  return out;
}

inline EdgeSet read_edges(const std::filesystem::path& path) { return parse_edges(detail::read_file(path)); }

inline void write_edges(const EdgeSet& E, const std::filesystem::path& path) {
  detail::write_file(path, format_edges(E));
}

}  // namespace nearlap

#endif  // NEARLAP_IO_HPP
