#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <optional>
#include <string_view>

#include "mcg/checks.hpp"
#include "mcg/compiler.hpp"

namespace mcg
{

bool is_prime(std::int64_t n);

/// Square matrix over F_p, p < 2^31, row-major residues.
class ModPMatrix
{
public:
  ModPMatrix(int genus, std::uint32_t p);
  static ModPMatrix identity(int genus, std::uint32_t p);

  int genus() const { return _genus; }
  std::uint32_t prime() const { return _p; }
  int dim() const { return 2 * _genus; }
  std::uint32_t operator()(int i, int j) const { return _e[i * dim() + j]; }
  std::uint32_t &operator()(int i, int j) { return _e[i * dim() + j]; }

  ModPMatrix operator*(ModPMatrix const &o) const;
  std::vector<std::uint32_t> apply(std::vector<std::uint32_t> const &v) const;
  bool operator==(ModPMatrix const &) const = default;
  bool is_identity() const;
  /// M^T J M == J mod p; the sign of J does not matter.
  bool is_symplectic() const;

private:
  int _genus;
  std::uint32_t _p;
  std::vector<std::uint32_t> _e;
};

/// Entrywise reduction. Throws DomainError unless p is a prime below 2^31.
ModPMatrix reduce_mod(SymplecticMatrix const &m, std::int64_t p);

struct GroupUnderTest
{
  int genus;
  std::uint32_t p;
  std::vector<ModPMatrix> generators;

  /// Throws DomainError if empty, mixed, or not symplectic mod p.
  void validate() const;
  /// Points p^{2g} - 1 of the action on nonzero vectors.
  std::uint64_t point_count() const;
};

/// Images of the set's alphabet words mod p.
GroupUnderTest group_from_set(Representation const &rep, GeneratingSet const &set,
                              std::int64_t p);

/// Resource guard for the finite checks.
struct Budget
{
  std::uint64_t max_points = std::uint64_t{1} << 22;
  std::uint64_t max_sifts = 50'000'000;
};

class BudgetExceeded : public std::runtime_error
{
public:
  BudgetExceeded(std::string const &what, nlohmann::json partial)
      : std::runtime_error(what), _partial(std::move(partial))
  {
  }
  nlohmann::json const &partial() const { return _partial; }

private:
  nlohmann::json _partial;
};

/// Base-p code of a vector, coordinate i weighted by p^i.
std::uint64_t encode(std::vector<std::uint32_t> const &v, std::uint32_t p);
std::vector<std::uint32_t> decode(std::uint64_t code, int dim, std::uint32_t p);

/// Orbit size of v by breadth-first closure. Throws DomainError on v = 0.
std::uint64_t orbit_size_serial(GroupUnderTest const &group, std::vector<std::uint32_t> const &v,
                                Budget const &budget = {});
/// Same result, frontier expanded in parallel.
std::uint64_t orbit_size(GroupUnderTest const &group, std::vector<std::uint32_t> const &v,
                         Budget const &budget = {});

/// Generator actions on the nonzero vectors; point k is code k + 1.
using Permutation = std::vector<std::uint32_t>;
std::vector<Permutation> permutation_action(GroupUnderTest const &group, Budget const &budget = {},
                                           Schedule schedule = Schedule::Parallel);

struct BsgsResult
{
  Integer order;
  std::vector<std::uint32_t> base;
  std::vector<std::uint64_t> orbit_lengths;
  std::uint64_t sifts = 0;
};

/// Deterministic Schreier-Sims on the permutation action.
BsgsResult bsgs(std::vector<Permutation> const &generators, std::size_t points,
                Budget const &budget = {});
BsgsResult bsgs_order(GroupUnderTest const &group, Budget const &budget = {});

/// p^{g^2} prod_{i=1..g} (p^{2i} - 1).
Integer sp_order_formula(int genus, std::int64_t p);

enum class FiniteMethod { Bsgs, Orbit, Auto };
std::string to_string(FiniteMethod m);
FiniteMethod parse_method(std::string_view text);

/// BSGS order against the formula, or orbit transitivity on nonzero vectors
/// plus compiled witnesses for every twist. `compiled` is only consulted on
/// the orbit route. Throws BudgetExceeded.
CheckResult check_group_generates(GroupUnderTest const &group, FiniteMethod method,
                                  Budget const &budget, std::optional<bool> compiled = {});
CheckResult check_full_generation_mod_p(SetName set, int genus, std::int64_t p,
                                        FiniteMethod method, Budget const &budget = {});

} // namespace mcg
