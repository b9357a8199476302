#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "mcg/homology.hpp"

namespace mcg
{

enum class ClaimKind { RelationEq, Involution, CurveTupleImage, ConjugationImage, Generation };
enum class Status { Verified, Failed, Skipped };

std::string to_string(ClaimKind k);
std::string to_string(Status s);

/// Outcome of one exact check. Evidence holds decimal strings only.
struct CheckResult
{
  ClaimKind kind;
  Status status;
  nlohmann::json evidence;

  bool verified() const { return status == Status::Verified; }
};

/// A checked claim as it appears in a certificate.
/// Parallel kernels keep a serial path as the reference for tests and benchmarks.
enum class Schedule { Parallel, Serial };

struct ClaimRecord
{
  std::string id;
  ClaimKind kind;
  Status status;
  std::string anchor;
  nlohmann::json evidence;
};

nlohmann::json matrix_evidence(SymplecticMatrix const &m);

// Failures are reported as statuses; none of these throw on a false claim.

/// M(u) == M(v) entrywise.
CheckResult check_relation(Representation const &rep, Word const &u, Word const &v);
CheckResult check_relation(SymplecticMatrix const &lhs, SymplecticMatrix const &rhs);

/// M(w)^2 == I. Homology-level necessary condition for order two.
CheckResult check_involution(Representation const &rep, Word const &w);
CheckResult check_involution(SymplecticMatrix const &m);

/// M(f)[from_k] == +-[to_k] for every k; the sign vector goes into the
/// evidence. Throws DomainError on a length mismatch.
CheckResult check_curve_tuple_image(Representation const &rep, Word const &f,
                                    std::vector<CurveId> const &from,
                                    std::vector<CurveId> const &to);
CheckResult check_curve_tuple_image(Representation const &rep, SymplecticMatrix const &f,
                                    std::vector<CurveId> const &from,
                                    std::vector<CurveId> const &to);

/// M(f) M(x) M(f)^{-1} == M(y).
CheckResult check_conjugation_image(Representation const &rep, Word const &f, Word const &x,
                                    Word const &y);

/// M(f) T([c]) M(f)^{-1} == T(M(f)[c]).
CheckResult check_naturality(Representation const &rep, Word const &f, CurveId c);

/// Words for curve tuples written as "b2 a3 c4".
std::vector<CurveId> parse_curves(std::string_view text, int genus);

} // namespace mcg
