#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace mcg
{

using Integer = mpz_class;

/// Dense square matrix over Z, row-major.
class IntMatrix
{
public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : _n(n), _a(n * n) {}

  static IntMatrix identity(std::size_t n);

  std::size_t dim() const { return _n; }

  Integer &operator()(std::size_t i, std::size_t j) { return _a[i * _n + j]; }
  Integer const &operator()(std::size_t i, std::size_t j) const { return _a[i * _n + j]; }

  std::vector<Integer> const &entries() const { return _a; }

  IntMatrix transpose() const;
  bool is_identity() const;

  // Skips zero entries of the left factor; the matrices met here are sparse.
  friend IntMatrix operator*(IntMatrix const &x, IntMatrix const &y);
  friend bool operator==(IntMatrix const &x, IntMatrix const &y)
  {
    return x._n == y._n && x._a == y._a;
  }

  /// Row-major decimal strings.
  std::vector<std::string> to_decimal() const;
  std::string to_string() const;

private:
  std::size_t _n = 0;
  std::vector<Integer> _a;
};

std::vector<Integer> operator*(IntMatrix const &m, std::vector<Integer> const &v);

} // namespace mcg
