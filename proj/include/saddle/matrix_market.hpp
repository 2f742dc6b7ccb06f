#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "saddle/sparse.hpp"

namespace saddle {

enum class MatrixMarketSymmetry { General, Symmetric };

/// Reads a `matrix coordinate` file with real or integer field and general or
/// symmetric storage. Symmetric files are expanded to both triangles.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::filesystem::path& path);

/// Symmetric output stores only the lower triangle; the matrix must be
/// symmetric to 1e-12.
void write_matrix_market(std::ostream& out, const CsrMatrix& m,
                         MatrixMarketSymmetry symmetry = MatrixMarketSymmetry::General);
void write_matrix_market(const std::filesystem::path& path, const CsrMatrix& m,
                         MatrixMarketSymmetry symmetry = MatrixMarketSymmetry::General);

/// Dense vectors use the `matrix array real general` layout with one column.
std::vector<double> read_matrix_market_vector(std::istream& in);
std::vector<double> read_matrix_market_vector(const std::filesystem::path& path);
void write_matrix_market_vector(std::ostream& out, std::span<const double> v);
void write_matrix_market_vector(const std::filesystem::path& path, std::span<const double> v);

}  // namespace saddle
