#include "ccur/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "ccur/errors.hpp"

namespace ccur {

namespace {

// Split raw text into records of fields under RFC 4180 rules: fields may be
// quoted, quoted fields may contain the delimiter, doubled quotes, and
// newlines. CRLF and LF records are both accepted.
std::vector<std::vector<std::string>> split_records(const std::string& text,
                                                    char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any_char_in_record = false;

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  const auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    any_char_in_record = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        any_char_in_record = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        if (ch == delimiter) {
          end_field();
        } else {
          field.push_back(ch);
        }
        any_char_in_record = true;
        break;
    }
  }
  if (in_quotes) {
    throw parse_error("unterminated quoted field");
  }
  if (any_char_in_record || !field.empty() || !record.empty()) {
    end_record();
  }
  // A trailing newline would otherwise leave a phantom empty record.
  while (!records.empty() && records.back().size() == 1 && records.back()[0].empty()) {
    records.pop_back();
  }
  return records;
}

double parse_cell(const std::string& cell, std::size_t record, std::size_t column) {
  const auto where = [&] {
    return " at row " + std::to_string(record) + ", column " + std::to_string(column);
  };
  double value = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw parse_error("cannot parse cell '" + cell + "' as a number" + where());
  }
  if (!std::isfinite(value)) {
    throw parse_error("non-finite value '" + cell + "'" + where());
  }
  return value;
}

} // namespace

DataMatrix load_matrix(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw parse_error("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  auto records = split_records(buffer.str(), options.delimiter);

  DataMatrix out;
  std::size_t body_start = 0;
  if (options.has_header) {
    if (records.empty()) {
      throw parse_error("'" + path + "': missing header record");
    }
    out.col_labels = records[0];
    if (options.has_row_labels) {
      if (out.col_labels.empty()) {
        throw parse_error("'" + path + "': header record is empty");
      }
      out.col_labels.erase(out.col_labels.begin());
    }
    body_start = 1;
  }
  if (records.size() <= body_start) {
    throw parse_error("'" + path + "': empty matrix");
  }

  const std::size_t label_offset = options.has_row_labels ? 1 : 0;
  const std::size_t width = records[body_start].size();
  if (width <= label_offset) {
    throw parse_error("'" + path + "': empty matrix");
  }
  const std::size_t p = width - label_offset;
  const std::size_t n = records.size() - body_start;

  out.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  if (options.has_row_labels) {
    out.row_labels.reserve(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& record = records[body_start + i];
    if (record.size() != width) {
      throw parse_error("'" + path + "': row " + std::to_string(body_start + i + 1) +
                        " has " + std::to_string(record.size()) + " fields, expected " +
                        std::to_string(width));
    }
    if (options.has_row_labels) {
      out.row_labels.push_back(record[0]);
    }
    for (std::size_t j = 0; j < p; ++j) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_cell(record[j + label_offset], body_start + i + 1, j + label_offset + 1);
    }
  }
  if (options.has_header &&
      out.col_labels.size() != static_cast<std::size_t>(out.values.cols())) {
    throw parse_error("'" + path + "': header has " + std::to_string(out.col_labels.size()) +
                      " labels for " + std::to_string(out.values.cols()) + " columns");
  }

  if (options.transpose) {
    out.values.transposeInPlace();
    std::swap(out.row_labels, out.col_labels);
  }
  validate(out);
  return out;
}

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string csv_escape(const std::string& field, char delimiter) {
  const bool needs_quotes = field.find_first_of("\"\r\n") != std::string::npos ||
                            field.find(delimiter) != std::string::npos;
  if (!needs_quotes) return field;
  std::string quoted = "\"";
  for (const char ch : field) {
    if (ch == '"') quoted.push_back('"');
    quoted.push_back(ch);
  }
  quoted.push_back('"');
  return quoted;
}

void write_matrix(std::ostream& os, const DataMatrix& matrix) {
  validate(matrix);
  const bool rows_labeled = !matrix.row_labels.empty();
  if (!matrix.col_labels.empty()) {
    std::string line;
    if (rows_labeled) line.push_back(',');
    for (std::size_t j = 0; j < matrix.col_labels.size(); ++j) {
      if (j > 0) line.push_back(',');
      line += csv_escape(matrix.col_labels[j]);
    }
    os << line << '\n';
  }
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    std::string line;
    if (rows_labeled) {
      line += csv_escape(matrix.row_labels[static_cast<std::size_t>(i)]);
      line.push_back(',');
    }
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) line.push_back(',');
      line += format_double(matrix.values(i, j));
    }
    os << line << '\n';
  }
}

void write_matrix(const std::string& path, const DataMatrix& matrix) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw parse_error("cannot open '" + path + "' for writing");
  }
  write_matrix(out, matrix);
}

} // namespace ccur
