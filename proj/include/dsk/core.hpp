#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dsk {

using Index = Eigen::Index;

// Dense storage is column-major throughout.
template <typename Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
template <typename Scalar>
using Column = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using DenseMatrix = Dense<double>;
using Vector = Column<double>;
using Complex = std::complex<double>;
using ComplexMatrix = Dense<Complex>;
using ComplexVector = Column<Complex>;

// ---------------------------------------------------------------------------
// Errors. Every failure the library reports is an exception derived from
// dsk::Error; index-carrying errors store 0-based positions.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(Index column)
      : Error("rank deficient at column " + std::to_string(column)), column_(column) {}
  Index column() const { return column_; }

 private:
  Index column_;
};

class SingularTriangular : public Error {
 public:
  explicit SingularTriangular(Index i)
      : Error("zero diagonal entry at row " + std::to_string(i)), index_(i) {}
  Index index() const { return index_; }

 private:
  Index index_;
};

class SingularInterpolation : public Error {
 public:
  explicit SingularInterpolation(Index step)
      : Error("singular interpolation system at step " + std::to_string(step)), step_(step) {}
  Index step() const { return step_; }

 private:
  Index step_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class Exhausted : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& a) {
  return a.allFinite();
}

// Seeded draws on top of std::mt19937_64. The engine's output sequence is
// fixed by the standard but the <random> distributions are not, so every
// seeded quantity in the library goes through these helpers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  // Standard normal by Box-Muller.
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Vector normal_vector(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  DenseMatrix normal_matrix(Index rows, Index cols) {
    DenseMatrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
      for (Index i = 0; i < rows; ++i) a(i, j) = normal();
    return a;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dsk
