#include "conelap/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "conelap/errors.hpp"

namespace conelap::io {

namespace {

template <typename T>
T read_value(std::istream& is, const char* what) {
  T v{};
  if (!(is >> v)) throw ValidationError(std::string("parse error: expected ") + what);
  return v;
}

std::size_t read_count(std::istream& is, const char* what) {
  const long long v = read_value<long long>(is, what);
  if (v < 0) throw ValidationError(std::string("parse error: negative ") + what);
  return static_cast<std::size_t>(v);
}

void expect_end(std::istream& is) {
  std::string extra;
  if (is >> extra) throw ValidationError("parse error: unexpected trailing token '" + extra + "'");
}

std::vector<double> read_rows(std::istream& is, std::size_t rows, std::size_t cols) {
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = read_value<double>(is, "matrix entry");
  expect_end(is);
  return v;
}

void write_row(std::ostream& os, std::span<const double> row) {
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (j) os << ' ';
    os << format_number(row[j]);
  }
  os << '\n';
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_matrix(std::ostream& os, const SymMatrix& m) {
  os << m.n() << '\n';
  for (std::size_t i = 0; i < m.n(); ++i) write_row(os, m.data().subspan(i * m.n(), m.n()));
}

SymMatrix read_matrix(std::istream& is) {
  const std::size_t n = read_count(is, "matrix dimension");
  if (n == 0) throw ValidationError("parse error: matrix dimension must be >= 1");
  const auto v = read_rows(is, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = v[i * n + j];
      const double b = v[j * n + i];
      const double scale = std::max({1.0, std::abs(a), std::abs(b)});
      if (!(std::abs(a - b) <= kSymmetryTolerance * scale))
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
    }
  return SymMatrix::from_rows(n, v);
}

void write_vectors(std::ostream& os, const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  os << rows.size() << ' ' << cols << '\n';
  for (const auto& r : rows) {
    if (r.size() != cols) throw ValidationError("write_vectors: ragged rows");
    write_row(os, r);
  }
}

std::vector<Vector> read_vectors(std::istream& is) {
  const std::size_t m = read_count(is, "vector count");
  const std::size_t n = read_count(is, "vector length");
  const auto v = read_rows(is, m, n);
  std::vector<Vector> rows(m);
  for (std::size_t i = 0; i < m; ++i)
    rows[i].assign(v.begin() + static_cast<std::ptrdiff_t>(i * n),
                   v.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
  return rows;
}

void write_prior(std::ostream& os, const EigenPrior& prior) {
  os << prior.k() << ' ' << prior.n() << '\n';
  for (const auto& u : prior.vectors()) write_row(os, u);
}

EigenPrior read_prior(std::istream& is) {
  auto rows = read_vectors(is);
  return EigenPrior(std::move(rows), kPriorTolerance);
}

void save_matrix(const std::filesystem::path& path, const SymMatrix& m) {
  auto out = open_out(path);
  write_matrix(out, m);
}

SymMatrix load_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix(in);
}

void save_vectors(const std::filesystem::path& path, const std::vector<Vector>& rows) {
  auto out = open_out(path);
  write_vectors(out, rows);
}

std::vector<Vector> load_vectors(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_vectors(in);
}

void save_prior(const std::filesystem::path& path, const EigenPrior& prior) {
  auto out = open_out(path);
  write_prior(out, prior);
}

EigenPrior load_prior(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_prior(in);
}

}  // namespace conelap::io
