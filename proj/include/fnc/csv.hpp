#pragma once

#include <string>
#include <vector>

#include "fnc/types.hpp"

namespace fnc {

// Comma-separated numeric files, '.' decimal separator, no locale handling.
// A single non-numeric first row is treated as a header and skipped.
// Parse errors name the file, row and column (1-based, header included).

Matrix read_matrix_csv(const std::string& path);
std::vector<double> read_vector_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const Matrix& m);
void write_vector_csv(const std::string& path, const std::vector<double>& v);

/// Load a dataset from an X matrix file and a single-column y file.
Dataset load_dataset(const std::string& path_x, const std::string& path_y);

}  // namespace fnc
