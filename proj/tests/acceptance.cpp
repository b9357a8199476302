// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mcg/finite_sp.hpp"
#include "mcg/verifier.hpp"
#include "properties.hpp"

using namespace mcg;

namespace
{

// Wall-clock limits in seconds.
constexpr double kConventionsPerGenus = 5.0;
constexpr double kInvolutionsPerGenus = 1.0;
constexpr double kProofChain = 5.0;
constexpr double kCompilePerGenus = 30.0;
constexpr double kFiniteG3P2 = 10.0;
constexpr double kFiniteG3P3 = 60.0;
constexpr double kFiniteG8P2 = 60.0;
constexpr std::size_t kMinPropertyCases = 10'000;

constexpr int kLowGenus = 3;
constexpr int kHighGenus = 12;
constexpr int kChainGenus = 8;

template <class F>
double timed(F &&f)
{
  auto const t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Verdict
{
  bool pass = true;
  std::vector<std::string> notes;
  // Claim id -> status, for comparing conventions.
  std::vector<std::pair<std::string, Status>> outcome;

  void fail(std::string note)
  {
    pass = false;
    notes.push_back(std::move(note));
  }
};

std::string seconds(double s)
{
  std::ostringstream o;
  o << std::fixed << std::setprecision(3) << s << " s";
  return o.str();
}

void absorb(Verdict &v, Certificate const &cert, std::string const &tag)
{
  for (auto const &c : cert.claims) {
    v.outcome.emplace_back(tag + ":" + c.id, c.status);
    if (c.status == Status::Failed)
      v.fail("failed " + c.id + " at g=" + std::to_string(cert.genus));
  }
}

Verdict suite_sweep(Suite suite, double limit, Pairing pairing, int lo, int hi)
{
  Verdict v;
  double worst = 0;
  for (int g = lo; g <= hi; ++g) {
    Certificate cert;
    double const t = timed([&] { cert = run_suite(g, suite, {pairing, std::nullopt}); });
    worst = std::max(worst, t);
    if (t >= limit)
      v.fail("g=" + std::to_string(g) + " took " + seconds(t));
    if (cert.count(Status::Skipped) != 0 && g >= kChainGenus)
      v.fail("skipped claims at g=" + std::to_string(g));
    absorb(v, cert, std::to_string(g));
  }
  v.notes.insert(v.notes.begin(), "worst " + seconds(worst) + " (limit " + seconds(limit) + ")");
  return v;
}

Verdict conventions(Pairing p)
{
  return suite_sweep(Suite::Conventions, kConventionsPerGenus, p, kLowGenus, kHighGenus);
}

Verdict involutions(Pairing p)
{
  return suite_sweep(Suite::Involutions, kInvolutionsPerGenus, p, kLowGenus, kHighGenus);
}

Verdict proof_chain(Pairing p)
{
  Verdict v;
  double total = 0;
  for (auto [suite, g] : {std::pair{Suite::FourElements, kLowGenus},
                          {Suite::FourElements, kChainGenus},
                          {Suite::ThreeElements, kLowGenus},
                          {Suite::ThreeElements, kChainGenus},
                          {Suite::InvolutionChain, kChainGenus}}) {
    Certificate cert;
    total += timed([&] { cert = run_suite(g, suite, {p, std::nullopt}); });
    if (cert.count(Status::Skipped) != 0)
      v.fail(to_string(suite) + " skipped claims at g=" + std::to_string(g));
    absorb(v, cert, std::to_string(g));
  }
  if (total >= kProofChain)
    v.fail("took " + seconds(total));
  v.notes.insert(v.notes.begin(), "total " + seconds(total) + " (limit " + seconds(kProofChain) + ")");
  return v;
}

// Compiled words re-evaluated through a fresh representation, matrix equal
// to the transvection of the target curve.
Verdict compilation(Pairing p)
{
  Verdict v;
  double worst = 0;
  auto job = [&](SetName set, int g) {
    double const t = timed([&] {
      Representation const rep(g, p);
      Compiler compiler(rep, generating_set(set, g));
      std::vector<CompilationResult> results;
      try {
        results = compiler.compile_all();
      } catch (VerificationFailure const &e) {
        v.fail(to_string(set) + " g=" + std::to_string(g) + " " + e.claim_id());
        return;
      }
      if (results.size() != static_cast<std::size_t>(3 * g))
        v.fail(to_string(set) + " g=" + std::to_string(g) + " compiled " +
               std::to_string(results.size()) + " targets");
      Representation const fresh(g, p);
      ProgramEvaluator eval(compiler.program(), fresh);
      for (auto const &r : results) {
        auto const name = r.target.curve_id().name();
        bool const ok = r.verified && compiler.alphabet_closed(r.element) &&
                        eval.matrix(r.element) == fresh.transvection(r.target.curve_id());
        v.outcome.emplace_back(to_string(set) + ":" + std::to_string(g) + ":" + name,
                               ok ? Status::Verified : Status::Failed);
        if (!ok)
          v.fail(to_string(set) + " g=" + std::to_string(g) + " target " + name);
      }
    });
    worst = std::max(worst, t);
    if (t >= kCompilePerGenus)
      v.fail(to_string(set) + " g=" + std::to_string(g) + " took " + seconds(t));
  };
  job(SetName::ThreeInvolutions, kChainGenus);
  for (int g = kLowGenus; g < kChainGenus; ++g)
    job(SetName::FourInvolutions, g);
  v.notes.insert(v.notes.begin(),
                 "worst " + seconds(worst) + " (limit " + seconds(kCompilePerGenus) + ")");
  return v;
}

Verdict finite()
{
  Verdict v;
  struct Job
  {
    SetName set;
    int genus;
    std::int64_t p;
    FiniteMethod method;
    double limit;
    char const *key;
    char const *expected;
  };
  for (auto const &j : {Job{SetName::FourInvolutions, 3, 2, FiniteMethod::Bsgs, kFiniteG3P2,
                            "order", "1451520"},
                        Job{SetName::FourInvolutions, 3, 3, FiniteMethod::Bsgs, kFiniteG3P3,
                            "order", nullptr},
                        Job{SetName::ThreeInvolutions, 8, 2, FiniteMethod::Orbit, kFiniteG8P2,
                            "orbit", "65535"}}) {
    CheckResult r;
    double const t = timed([&] { r = check_full_generation_mod_p(j.set, j.genus, j.p, j.method); });
    auto const expected = j.expected ? std::string(j.expected)
                                     : sp_order_formula(j.genus, j.p).get_str();
    std::string const got = r.evidence.value(j.key, "");
    std::string const tag = "g=" + std::to_string(j.genus) + " p=" + std::to_string(j.p);
    v.notes.push_back(tag + " " + j.key + " " + got + " in " + seconds(t));
    if (!r.verified() || got != expected)
      v.fail(tag + " expected " + expected);
    if (t >= j.limit)
      v.fail(tag + " over " + seconds(j.limit));
  }
  return v;
}

Verdict flip(std::vector<Verdict> const &standard)
{
  Verdict v;
  std::vector<Verdict> flipped{conventions(Pairing::Flipped), involutions(Pairing::Flipped),
                               proof_chain(Pairing::Flipped), compilation(Pairing::Flipped)};
  bool identical = true;
  for (std::size_t i = 0; i < flipped.size(); ++i) {
    auto const label = "criterion " + std::to_string(i + 1);
    if (flipped[i].outcome != standard[i].outcome) {
      identical = false;
      v.fail(label + " outcomes differ between conventions");
    }
    if (!flipped[i].pass)
      v.fail(label + " does not pass under the flipped convention");
  }
  if (identical)
    v.notes.insert(v.notes.begin(), "claim outcomes identical under both conventions");
  return v;
}

Verdict properties()
{
  Verdict v;
  for (auto const &o : props::all(kMinPropertyCases)) {
    if (o.cases < kMinPropertyCases)
      v.fail(o.name + " ran " + std::to_string(o.cases) + " cases");
    if (!o.ok())
      v.fail(o.name + ": " + std::to_string(o.failures) + " failures, e.g. " + o.counterexample);
  }
  v.notes.push_back(std::to_string(kMinPropertyCases) + " cases per property");
  return v;
}

void report(int n, std::string const &title, Verdict const &v)
{
  std::cout << (v.pass ? "PASS" : "FAIL") << "  " << n << ". " << title;
  for (auto const &note : v.notes)
    std::cout << "; " << note;
  std::cout << std::endl;
}

} // namespace

int main()
{
  std::vector<Verdict> standard{conventions(Pairing::Standard), involutions(Pairing::Standard),
                                proof_chain(Pairing::Standard), compilation(Pairing::Standard)};
  report(1, "conventions suite g=3..12", standard[0]);
  report(2, "involution suite g=3..12", standard[1]);
  report(3, "displayed curve-tuple equations", standard[2]);
  report(4, "compilation of all Lickorish twists", standard[3]);
  auto const fin = finite();
  report(5, "finite symplectic quotients", fin);
  auto const fl = flip(standard);
  report(6, "convention-flip regression", fl);
  auto const pr = properties();
  report(7, "fuzzed property suites", pr);

  bool const all = std::ranges::all_of(standard, &Verdict::pass) && fin.pass && fl.pass && pr.pass;
  std::cout << (all ? "ACCEPTED" : "REJECTED") << std::endl;
  return all ? 0 : 1;
}
