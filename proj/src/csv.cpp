#include "fnc/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fnc {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0';
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    const std::vector<std::string> cells = split_line(line);
    std::vector<double> row(cells.size());
    bool ok = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(cells[c], row[c])) {
        ok = false;
        bad_col = c;
        break;
      }
    }
    if (!ok) {
      if (first_data_row) continue;  // header row auto-detected and skipped
      throw std::invalid_argument(path + ": row " + std::to_string(lineno) + ", column " +
                                  std::to_string(bad_col + 1) + ": not numeric: '" +
                                  cells[bad_col] + "'");
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument(path + ": row " + std::to_string(lineno) + " has " +
                                  std::to_string(row.size()) + " columns, expected " +
                                  std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
    first_data_row = false;
  }
  if (rows.empty()) throw std::invalid_argument(path + ": empty file (no numeric rows)");
  return rows;
}

// shortest representation that parses back to the same double
void write_cell(std::FILE* f, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::fwrite(buf, 1, static_cast<std::size_t>(res.ptr - buf), f);
}

struct FileCloser {
  std::FILE* f;
  ~FileCloser() {
    if (f) std::fclose(f);
  }
};

std::FILE* open_for_write(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f)
    throw std::runtime_error(path + ": cannot write: " + std::strerror(errno));
  return f;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
  const auto rows = read_rows(path);
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<double> read_vector_csv(const std::string& path) {
  const auto rows = read_rows(path);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& row : rows) {
    if (row.size() != 1)
      throw std::invalid_argument(path + ": expected a single numeric column, found " +
                                  std::to_string(row.size()));
    v.push_back(row.front());
  }
  return v;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
  std::FILE* f = open_for_write(path);
  FileCloser closer{f};
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) std::fputc(',', f);
      write_cell(f, m(i, j));
    }
    std::fputc('\n', f);
  }
}

void write_vector_csv(const std::string& path, const std::vector<double>& v) {
  std::FILE* f = open_for_write(path);
  FileCloser closer{f};
  for (double x : v) {
    write_cell(f, x);
    std::fputc('\n', f);
  }
}

Dataset load_dataset(const std::string& path_x, const std::string& path_y) {
  Dataset d;
  d.x = read_matrix_csv(path_x);
  d.y = read_vector_csv(path_y);
  if (d.x.rows != d.y.size())
    throw std::invalid_argument("dimension mismatch: " + path_x + " has " +
                                std::to_string(d.x.rows) + " rows but " + path_y + " has " +
                                std::to_string(d.y.size()));
  validate(d);
  return d;
}

}  // namespace fnc
