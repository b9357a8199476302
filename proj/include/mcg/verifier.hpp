#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mcg/checks.hpp"

namespace mcg
{

enum class Suite { All, Conventions, FourElements, ThreeElements, InvolutionChain, Involutions };

std::string to_string(Suite s);
/// Throws DomainError on an unknown name.
Suite parse_suite(std::string_view text);
std::vector<Suite> all_suites(); // excludes All

/// A word-level claim that can be re-evaluated under any representation.
struct Claim
{
  std::string id;
  ClaimKind kind;
  std::string anchor;
  int min_genus = kMinGenus;
  std::function<CheckResult(Representation const &)> run;
};

struct Certificate
{
  std::string suite;
  int genus = 0;
  nlohmann::json sign_model;
  std::vector<ClaimRecord> claims; // sorted by id

  /// No claim failed. Skipped claims do not count against a pass.
  bool pass() const;
  std::size_t count(Status s) const;
  /// Fields exactly: suite, genus, sign_model, claims, pass.
  nlohmann::json to_json() const;
};

nlohmann::json sign_model_record(Representation const &rep, SignSolution const &solution);

/// Evaluates word-level claims concurrently. A failed claim is re-run under
/// every alternative rho/R sign model and the outcome is added to its
/// evidence; its status stays that of the adopted model.
std::vector<ClaimRecord> evaluate_claims(std::vector<Claim> const &claims,
                                         Representation const &rep,
                                         SignSolution const &solution,
                                         Schedule schedule = Schedule::Parallel);

/// Word-level claims of one suite at one genus; claims above the genus come
/// back with min_genus > genus and are reported as skipped.
std::vector<Claim> suite_claims(Suite suite, int genus);

struct SuiteOptions
{
  Pairing pairing = Pairing::Standard;
  std::optional<SignModel> sign_model; // overrides the solver's choice
};

Certificate run_suite(int genus, Suite suite, SuiteOptions const &options = {});

} // namespace mcg
