#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "conelap/cone.hpp"
#include "conelap/linalg.hpp"

namespace conelap::io {

/// Text formats shared by every tool. Numbers are printed with 17
/// significant digits so files round-trip bit-exactly.
///
///   matrix:      "n", then n rows of n space-separated values
///   vector set:  "M N", then M rows of N values
///   prior:       "K N", then K rows of N values (orthonormal within 1e-8)

inline constexpr double kSymmetryTolerance = 1e-9;
inline constexpr double kPriorTolerance = 1e-8;

std::string format_number(double x);

void write_matrix(std::ostream& os, const SymMatrix& m);
/// Rejects entries with |a_ij - a_ji| > 1e-9 * max(1, |a_ij|, |a_ji|), then
/// symmetrizes.
SymMatrix read_matrix(std::istream& is);

void write_vectors(std::ostream& os, const std::vector<Vector>& rows);
std::vector<Vector> read_vectors(std::istream& is);

void write_prior(std::ostream& os, const EigenPrior& prior);
EigenPrior read_prior(std::istream& is);

void save_matrix(const std::filesystem::path& path, const SymMatrix& m);
SymMatrix load_matrix(const std::filesystem::path& path);
void save_vectors(const std::filesystem::path& path, const std::vector<Vector>& rows);
std::vector<Vector> load_vectors(const std::filesystem::path& path);
void save_prior(const std::filesystem::path& path, const EigenPrior& prior);
EigenPrior load_prior(const std::filesystem::path& path);

}  // namespace conelap::io
