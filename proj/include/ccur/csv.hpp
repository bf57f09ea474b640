#ifndef CCUR_CSV_HPP
#define CCUR_CSV_HPP

#include <iosfwd>
#include <string>

#include "ccur/data_matrix.hpp"

namespace ccur {

struct LoadOptions {
  char delimiter = ',';
  bool has_header = false;
  bool has_row_labels = false;
  bool transpose = false;
};

/// Parse a delimited text file into a labeled matrix.
///
/// The body must be rectangular and purely numeric; non-numeric or
/// non-finite cells are rejected with the offending row and column named.
/// With has_header the first record becomes col_labels; with has_row_labels
/// the first field of each body record becomes the row label (and the first
/// header field is ignored). transpose is applied last, labels included.
/// Fields may be RFC 4180 quoted.
DataMatrix load_matrix(const std::string& path, const LoadOptions& options = {});

/// Write a matrix as CSV, emitting a header row and/or a leading label
/// column when the corresponding labels are present. Values are printed in
/// the shortest form that parses back to the identical double.
void write_matrix(std::ostream& os, const DataMatrix& matrix);
void write_matrix(const std::string& path, const DataMatrix& matrix);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

/// Quote a CSV field if it contains the delimiter, a quote, or a newline.
std::string csv_escape(const std::string& field, char delimiter = ',');

} // namespace ccur

#endif
