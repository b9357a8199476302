#include "mcg/integer_matrix.hpp"

#include <cassert>
#include <sstream>

namespace mcg
{

IntMatrix IntMatrix::identity(std::size_t n)
{
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const
{
  IntMatrix t(_n);
  for (std::size_t i = 0; i < _n; ++i)
    for (std::size_t j = 0; j < _n; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_identity() const
{
  for (std::size_t i = 0; i < _n; ++i)
    for (std::size_t j = 0; j < _n; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0))
        return false;
  return true;
}

IntMatrix operator*(IntMatrix const &x, IntMatrix const &y)
{
  assert(x._n == y._n);
  auto const n = x._n;
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      Integer const &xik = x(i, k);
      if (sgn(xik) == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        Integer const &ykj = y(k, j);
        if (sgn(ykj) != 0)
          mpz_addmul(out(i, j).get_mpz_t(), xik.get_mpz_t(), ykj.get_mpz_t());
      }
    }
  }
  return out;
}

std::vector<Integer> operator*(IntMatrix const &m, std::vector<Integer> const &v)
{
  assert(m.dim() == v.size());
  std::vector<Integer> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (sgn(m(i, j)) != 0 && sgn(v[j]) != 0)
        mpz_addmul(out[i].get_mpz_t(), m(i, j).get_mpz_t(), v[j].get_mpz_t());
  return out;
}

std::vector<std::string> IntMatrix::to_decimal() const
{
  std::vector<std::string> out;
  out.reserve(_a.size());
  for (auto const &e : _a)
    out.push_back(e.get_str());
  return out;
}

std::string IntMatrix::to_string() const
{
  std::ostringstream os;
  for (std::size_t i = 0; i < _n; ++i) {
    os << '[';
    for (std::size_t j = 0; j < _n; ++j)
      os << (j ? " " : "") << (*this)(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

} // namespace mcg
