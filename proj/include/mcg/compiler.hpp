#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcg/checks.hpp"
#include "mcg/program.hpp"

namespace mcg
{

enum class SetName { DehnLickorish, FourElements, ThreeElements, ThreeInvolutions, FourInvolutions };

/// Command-line spelling, e.g. "three-involutions".
std::string to_string(SetName s);
/// Throws DomainError on an unknown name.
SetName parse_set_name(std::string_view text);
std::vector<SetName> all_set_names();

struct GeneratingSet
{
  SetName name;
  int min_genus;
  std::vector<std::pair<std::string, Word>> alphabet; // symbol, base word
};

/// Throws GenusError below the set's minimum genus.
GeneratingSet generating_set(SetName name, int genus);
int minimum_genus(SetName name);

/// A claim the compiler needed turned out false.
class VerificationFailure : public std::runtime_error
{
public:
  VerificationFailure(std::string id, std::string const &what)
      : std::runtime_error(what), _id(std::move(id))
  {
  }
  std::string const &claim_id() const { return _id; }

private:
  std::string _id;
};

/// Witnesses for T_x T_y^{-1}, keyed by the ordered pair (x, y). Offering a
/// second witness keeps the shorter one, ties broken by derivation name.
class PairLedger
{
public:
  using Key = std::pair<CurveId, CurveId>;

  explicit PairLedger(Program const &program) : _program(&program) {}

  bool contains(CurveId x, CurveId y) const { return _entries.count({x, y}) > 0; }
  /// Throws DomainError if absent.
  Element at(CurveId x, CurveId y) const;
  /// Returns true if the witness was stored.
  bool offer(CurveId x, CurveId y, Element w);

  std::size_t size() const { return _entries.size(); }
  std::map<Key, Element> const &entries() const { return _entries; }

private:
  Program const *_program;
  std::map<Key, Element> _entries;
};

struct CompilationResult
{
  GeneratorSymbol target;
  Element element;
  Integer length;           // base-alphabet letters
  Integer generator_length; // letters over the generating set
  std::vector<std::string> trace;
  bool verified = false;
};

/// One derived element of the involution chain with its twist normal form.
struct ChainStep
{
  std::string name;
  Element element;
  Word normal_form;
};

/// Shared state of one derivation: the program, its evaluator and the log
/// of every claim checked along the way.
class Workspace
{
public:
  explicit Workspace(Representation const &rep);
  Workspace(Workspace const &) = delete;
  Workspace &operator=(Workspace const &) = delete;

  Representation const &rep() const { return _rep; }
  int genus() const { return _rep.genus(); }
  Program &program() { return _program; }
  Program const &program() const { return _program; }
  SymplecticMatrix matrix(Element e) { return _eval.matrix(e); }
  std::vector<ClaimRecord> const &claims() const { return _claims; }

  /// Records the claim and throws VerificationFailure if it failed.
  void require(std::string id, std::string anchor, CheckResult result);
  /// Records without throwing.
  void record(std::string id, std::string anchor, CheckResult result);

  /// M(e) == M(w).
  void require_equal(std::string id, std::string anchor, Element e, Word const &w);

  /// R^k with k reduced to (-g/2, g/2], reusing earlier powers.
  Element rotation_power(int k);
  void set_rotation(Element r) { _rotation = r; }
  Element conjugate(std::string name, Element f, Element x);

  /// Names of every derived node feeding e, dependencies first.
  std::vector<std::string> trace(Element e) const;

private:
  Representation const &_rep;
  Program _program;
  ProgramEvaluator _eval;
  std::vector<ClaimRecord> _claims;
  Element _rotation;
  std::map<int, Element> _rotation_powers;
};

/// Elements produced by the involution chain, in the chain's program.
struct ChainOutput
{
  Element rotation;
  Element a_diff; // A1 A2^-1
  Element b_diff; // B1 B2^-1
  Element c_diff; // C1 C2^-1
  std::vector<ChainStep> steps;
};

/// Runs the chain F1 -> ... -> F8 and the differences it yields, given
/// rho2 and F1 = B1 A2 C3 C4^-1 A6^-1 B7^-1. The workspace rotation must
/// already be set. Needs g >= 8.
ChainOutput run_involution_chain(Workspace &ws, Element rho2, Element f1);

/// The chain over the alphabet {p1, p2, F1}. Throws GenusError for g < 8.
/// A failed claim stops the chain; its id is kept and the workspace still
/// holds every record up to it.
struct StandaloneChain
{
  std::unique_ptr<Workspace> workspace;
  ChainOutput output;
  std::optional<std::string> failed_claim;
};
StandaloneChain involution_chain(Representation const &rep);

/// Rewrites every twist generator over a generating set, certifying each
/// step exactly in the representation.
class Compiler
{
public:
  Compiler(Representation const &rep, GeneratingSet set);

  GeneratingSet const &set() const { return _set; }
  Workspace &workspace() { return *_ws; }
  Program const &program() const { return _ws->program(); }
  PairLedger const &ledger() const { return _ledger; }
  std::vector<ClaimRecord> const &claims() const { return _ws->claims(); }
  std::vector<ChainStep> const &chain() const { return _chain; }

  /// Pairs obtainable directly from the alphabet.
  void seed_ledger();
  /// Consecutive pairs by rotation, then every same-family pair.
  void saturate_rotation();
  /// Mixed-family pairs.
  void cross_family_pairs();
  /// A3 as a product of ledger witnesses for d-curves.
  CompilationResult lantern_step();
  CompilationResult compile(GeneratorSymbol target);
  /// Runs every stage and compiles A_i, B_i, C_i for i = 1..g.
  std::vector<CompilationResult> compile_all();

  /// M(w) == T_x T_y^{-1} for every ledger entry.
  CheckResult check_ledger();
  /// Every generator reachable from e is in the set's alphabet.
  bool alphabet_closed(Element e) const;

private:
  Element gen(std::string const &name) const;
  void saturate_family(CurveFamily f);
  Element pair(CurveId x, CurveId y);
  CurveId cv(CurveFamily f, int i) const { return curve(f, i, _ws->genus()); }
  void link_family(CurveFamily f);
  CompilationResult finish(GeneratorSymbol target, Element e);

  GeneratingSet _set;
  std::unique_ptr<Workspace> _ws;
  PairLedger _ledger;
  std::map<std::string, Element> _gens;
  std::vector<ChainStep> _chain;
  Element _rotation;
  std::map<CurveFamily, int> _link; // family -> k with (f_1, a_k) in the ledger
  std::optional<Element> _a3;
  std::map<GeneratorSymbol, CompilationResult> _results;
  bool _seeded = false, _saturated = false, _crossed = false;
};

} // namespace mcg
