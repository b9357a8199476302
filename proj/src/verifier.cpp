#include "mcg/verifier.hpp"

#include <algorithm>
#include <set>

#include "mcg/compiler.hpp"

namespace mcg
{

using nlohmann::json;

namespace
{

constexpr char kConventionsAnchor[] = "representation conventions";
constexpr char kNaturalityAnchor[] = "conjugating a twist moves its curve";
constexpr char kInvolutionAnchor[] = "involutions from conjugate twist products";
constexpr char kFourAnchor[] = "four-element generation";
constexpr char kThreeAnchor[] = "three-element generation";
constexpr char kChainAnchor[] = "involution chain F1..F8";

constexpr char kF1[] = "B1 A2 C3 C4^-1 A6^-1 B7^-1";
constexpr char kF2[] = "B2 A3 C4 C5^-1 A7^-1 B8^-1";
constexpr char kF3[] = "A2 A3 C4 C5^-1 B7^-1 B8^-1";
constexpr char kF4[] = "A1 A2 C3 C4^-1 B6^-1 B7^-1";
constexpr char kF5[] = "A1 A2 C3 C4^-1 C5^-1 B7^-1";
constexpr char kF6[] = "B1 A2 A6^-1 C6^-1";
constexpr char kF7[] = "B2 A3 A7^-1 C7^-1";
constexpr char kF8[] = "A2 A3 A7^-1 C7^-1";
constexpr char kE[] = "A1 B1 C1 C2^-1 B3^-1 A3^-1";

std::string cat(std::initializer_list<std::string_view> parts)
{
  std::string out;
  for (auto p : parts) {
    if (!out.empty() && !p.empty())
      out += ' ';
    out += p;
  }
  return out;
}

Claim relation(std::string id, std::string anchor, std::string u, std::string v, int min_g = 3)
{
  return {std::move(id), ClaimKind::RelationEq, std::move(anchor), min_g,
          [u, v](Representation const &rep) {
            return check_relation(rep, parse_word(u, rep.genus()), parse_word(v, rep.genus()));
          }};
}

Claim involution(std::string id, std::string anchor, std::string w, int min_g = 3)
{
  return {std::move(id), ClaimKind::Involution, std::move(anchor), min_g,
          [w](Representation const &rep) {
            return check_involution(rep, parse_word(w, rep.genus()));
          }};
}

Claim tuple(std::string id, std::string anchor, std::string f, std::string from, std::string to,
            int min_g = 3)
{
  return {std::move(id), ClaimKind::CurveTupleImage, std::move(anchor), min_g,
          [f, from, to](Representation const &rep) {
            int const g = rep.genus();
            return check_curve_tuple_image(rep, parse_word(f, g), parse_curves(from, g),
                                           parse_curves(to, g));
          }};
}

Claim conjugation(std::string id, std::string anchor, std::string f, std::string x, std::string y,
                  int min_g = 3)
{
  return {std::move(id), ClaimKind::ConjugationImage, std::move(anchor), min_g,
          [f, x, y](Representation const &rep) {
            int const g = rep.genus();
            return check_conjugation_image(rep, parse_word(f, g), parse_word(x, g),
                                           parse_word(y, g));
          }};
}

// An involution rho satisfies rho x rho = y iff rho x rho^-1 = y; the
// displayed form with rho on both sides is checked literally.
Claim sandwich(std::string id, std::string anchor, std::string rho, std::string x, std::string y,
               int min_g = 3)
{
  auto c = relation(std::move(id), std::move(anchor), cat({rho, x, rho}), y, min_g);
  c.kind = ClaimKind::ConjugationImage;
  return c;
}

std::vector<Claim> conventions_claims(int g)
{
  std::vector<Claim> out;
  std::string rg;
  for (int i = 0; i < g; ++i)
    rg = cat({rg, "R"});
  out.push_back(relation("conventions.rotation_order", kConventionsAnchor, rg, ""));
  out.push_back(involution("conventions.rho1_square", kConventionsAnchor, "p1"));
  out.push_back(involution("conventions.rho2_square", kConventionsAnchor, "p2"));
  out.push_back(relation("conventions.rho_product", kConventionsAnchor, "p1 p2", "R"));
  out.push_back(relation("conventions.lantern", kConventionsAnchor, "A1 C1 C2 A3", "A2 D1 D2"));
  out.push_back(tuple("conventions.twist_chain", kConventionsAnchor, "A1 B1 C1", "a1 b1", "b1 c1"));

  std::vector<std::string> letters{"R", "p1", "p2", "D1", "D2"};
  std::vector<std::string> curves{"d1", "d2"};
  for (int i = 1; i <= g; ++i)
    for (char f : {'A', 'B', 'C'}) {
      letters.push_back(f + std::to_string(i));
      curves.push_back(static_cast<char>(f - 'A' + 'a') + std::to_string(i));
    }
  for (auto const &f : letters)
    for (auto const &c : curves)
      out.push_back({"conventions.naturality." + f + "." + c, ClaimKind::ConjugationImage,
                     kNaturalityAnchor, kMinGenus, [f, c](Representation const &rep) {
                       return check_naturality(rep, parse_word(f, rep.genus()),
                                               parse_curve(c, rep.genus()));
                     }});
  return out;
}

std::vector<Claim> involution_claims()
{
  return {
    involution("involutions.I1.square", kInvolutionAnchor, "p2 A1 A2^-1"),
    involution("involutions.I2.square", kInvolutionAnchor, cat({"p1", kE})),
    involution("involutions.I3.square", kInvolutionAnchor, cat({"p3", kF1}), 8),
    sandwich("involutions.rho2.A1", kInvolutionAnchor, "p2", "A1", "A2"),
    sandwich("involutions.rho1.A1B1C1", kInvolutionAnchor, "p1", "A1 B1 C1", "A3 B3 C2"),
    sandwich("involutions.rho3.B1A2C3", kInvolutionAnchor, "p3", "B1 A2 C3", "B7 A6 C4", 8),
  };
}

std::vector<Claim> four_element_claims(int g)
{
  std::string const bg = "B" + std::to_string(g);
  return {
    tuple("four-elements.display.b1a3", kFourAnchor, "A1 A2^-1 B1 B2^-1", "a1 a3", "b1 a3"),
    // Fails: b1 maps to -a1 + a2 - b2.
    tuple("four-elements.display.c1a3", kFourAnchor, "B1 B2^-1 C1 C2^-1", "b1 a3", "c1 a3"),
    tuple("four-elements.corrected.c1a2", kFourAnchor, cat({"B1", bg + "^-1", "C1 C2^-1"}),
          "b1 a2", "c1 a2"),
    tuple("four-elements.display.d1", kFourAnchor, "B2 A1^-1 C1 A1^-1 A1 A2^-1 C2 A1^-1",
          "b2 a1", "d1 a1"),
    tuple("four-elements.display.d2", kFourAnchor, "B3 A1^-1 C2 A1^-1 A3 A1^-1 B3 A1^-1",
          "d1 a1", "d2 a1"),
    relation("four-elements.display.lantern_rewrite", kFourAnchor, "A2 C2^-1 D1 A1^-1 D2 C1^-1",
             "A3"),
  };
}

std::vector<Claim> three_element_claims()
{
  return {
    tuple("three-elements.display.E.a1a2", kThreeAnchor, kE, "a1 a2", "b1 a2"),
    tuple("three-elements.display.E.b1a2", kThreeAnchor, kE, "b1 a2", "c1 a2"),
    tuple("three-elements.display.R.a1a2", kThreeAnchor, "R", "a1 a2", "a2 a3"),
  };
}

std::vector<Claim> chain_claims()
{
  auto const id = [](std::string s) { return "involution-chain.display." + s; };
  int const g8 = 8;
  return {
    conjugation(id("F2"), kChainAnchor, "R", kF1, kF2, g8),
    tuple(id("F2F1"), kChainAnchor, cat({kF2, kF1}), "b2 a3 c4 c5 a7 b8", "a2 a3 c4 c5 b7 b8",
          g8),
    conjugation(id("F3"), kChainAnchor, cat({kF2, kF1}), kF2, kF3, g8),
    conjugation(id("F4"), kChainAnchor, "R^-1", kF3, kF4, g8),
    tuple(id("F4F3"), kChainAnchor, cat({kF4, kF3}), "a1 a2 c3 c4 b6 b7", "a1 a2 c3 c4 c5 b7",
          g8),
    conjugation(id("F5"), kChainAnchor, cat({kF4, kF3}), kF4, kF5, g8),
    relation(id("F4invF5"), kChainAnchor, cat({"B7 B6 C4 C3^-1 A2^-1 A1^-1", kF5}), "B6 C5^-1",
             g8),
    relation(id("B2C1"), kChainAnchor, "R^-1 R^-1 R^-1 R^-1 B6 C5^-1 R R R R", "B2 C1^-1", g8),
    sandwich(id("rho2.B2C1"), kChainAnchor, "p2", "B2 C1^-1", "B1 C1^-1", g8),
    relation(id("B1B2"), kChainAnchor, "B1 C1^-1 C1 B2^-1", "B1 B2^-1", g8),
    relation(id("C1C2"), kChainAnchor, "C1 B2^-1 B2 C2^-1", "C1 C2^-1", g8),
    relation(id("F6"), kChainAnchor, cat({kF1, "C3^-1 C4 B7 C6^-1"}), kF6, g8),
    conjugation(id("F7"), kChainAnchor, "R", kF6, kF7, g8),
    tuple(id("F7F6"), kChainAnchor, cat({kF7, kF6}), "b2 a3 a7 c7", "a2 a3 a7 c7", g8),
    conjugation(id("F8"), kChainAnchor, cat({kF7, kF6}), kF7, kF8, g8),
    relation(id("F8F7inv"), kChainAnchor, cat({kF8, "C7 A7 A3^-1 B2^-1"}), "A2 B2^-1", g8),
    relation(id("A1A2"), kChainAnchor, "A1 B1^-1 B1 B2^-1 B2 A2^-1", "A1 A2^-1", g8),
  };
}

ClaimRecord skipped(std::string id, ClaimKind kind, std::string anchor, int min_genus)
{
  return {std::move(id), kind, Status::Skipped, std::move(anchor),
          json{{"reason", "requires g ≥ " + std::to_string(min_genus)}}};
}

void append_compiled(std::vector<ClaimRecord> &out, std::string const &prefix,
                     Representation const &rep, SetName set)
{
  int const g = rep.genus();
  if (g < minimum_genus(set)) {
    out.push_back(skipped(prefix.substr(0, prefix.size() - 1), ClaimKind::Generation, kInvolutionAnchor,
                          minimum_genus(set)));
    return;
  }
  Compiler c(rep, generating_set(set, g));
  try {
    c.compile_all();
  } catch (VerificationFailure const &) {
    // The failed claim is already the last record.
  }
  for (auto r : c.claims()) {
    r.id = prefix + r.id;
    out.push_back(std::move(r));
  }
}

void append_chain(std::vector<ClaimRecord> &out, Representation const &rep)
{
  std::string const prefix = "involution-chain.derivation.";
  if (rep.genus() < 8) {
    out.push_back(skipped("involution-chain.derivation", ClaimKind::RelationEq, kChainAnchor, 8));
    return;
  }
  auto const chain = involution_chain(rep);
  auto const *ws = chain.workspace.get();
  for (auto r : ws->claims()) {
    r.id = prefix + r.id;
    out.push_back(std::move(r));
  }
}

} // namespace

std::string to_string(Suite s)
{
  switch (s) {
    case Suite::All: return "all";
    case Suite::Conventions: return "conventions";
    case Suite::FourElements: return "four-elements";
    case Suite::ThreeElements: return "three-elements";
    case Suite::InvolutionChain: return "involution-chain";
    default: return "involutions";
  }
}

std::vector<Suite> all_suites()
{
  return {Suite::Conventions, Suite::FourElements, Suite::ThreeElements, Suite::InvolutionChain,
          Suite::Involutions};
}

Suite parse_suite(std::string_view text)
{
  if (text == "all")
    return Suite::All;
  for (auto s : all_suites())
    if (to_string(s) == text)
      return s;
  throw DomainError("unknown suite '" + std::string(text) + "'");
}

bool Certificate::pass() const { return count(Status::Failed) == 0; }

std::size_t Certificate::count(Status s) const
{
  return static_cast<std::size_t>(
    std::ranges::count_if(claims, [s](auto const &c) { return c.status == s; }));
}

json Certificate::to_json() const
{
  json cl = json::array();
  for (auto const &c : claims)
    cl.push_back({{"id", c.id},
                  {"kind", to_string(c.kind)},
                  {"status", to_string(c.status)},
                  {"paper_anchor", c.anchor},
                  {"evidence", c.evidence}});
  return json{{"suite", suite},
              {"genus", std::to_string(genus)},
              {"sign_model", sign_model},
              {"claims", std::move(cl)},
              {"pass", pass()}};
}

json sign_model_record(Representation const &rep, SignSolution const &solution)
{
  auto const &m = rep.sign_model();
  std::string wrap;
  wrap += m.wrap_sign_a > 0 ? '+' : '-';
  wrap += m.wrap_sign_b > 0 ? '+' : '-';
  json alternatives = json::array();
  for (auto const &alt : solution.rho_models)
    alternatives.push_back(alt.rho1_pattern());
  return json{{"pairing", to_string(rep.pairing_convention())},
              {"rho1_signs", m.rho1_pattern()},
              {"rotation_wrap_signs", wrap},
              {"c_signs", m.c_pattern()},
              {"rho_models_satisfying", std::to_string(solution.rho_models.size())},
              {"rho_model_patterns", std::move(alternatives)},
              {"c_models_per_rho_model", solution.c_model_count.get_str()},
              {"adopted", m == solution.chosen ? "lexicographically least" : "override"},
              {"certification_level", "H1; curve images up to sign"}};
}

std::vector<ClaimRecord> evaluate_claims(std::vector<Claim> const &claims,
                                         Representation const &rep,
                                         SignSolution const &solution, Schedule schedule)
{
  int const g = rep.genus();
  std::vector<ClaimRecord> out(claims.size());
  auto const run = [](Claim const &c, Representation const &r) {
    try {
      return c.run(r);
    } catch (std::exception const &e) {
      return CheckResult{c.kind, Status::Failed, json{{"error", e.what()}}};
    }
  };
  long const n = static_cast<long>(claims.size());
#pragma omp parallel for schedule(dynamic) if (schedule == Schedule::Parallel)
  for (long i = 0; i < n; ++i) {
    auto const &c = claims[i];
    if (c.min_genus > g) {
      out[i] = skipped(c.id, c.kind, c.anchor, c.min_genus);
      continue;
    }
    auto r = run(c, rep);
    out[i] = {c.id, c.kind, r.status, c.anchor, std::move(r.evidence)};
  }

  // Re-check failures under the other sign models before reporting them.
  std::vector<Representation> alternatives;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].status != Status::Failed)
      continue;
    if (alternatives.empty())
      for (auto model : solution.rho_models) {
        model.c_signs = rep.sign_model().c_signs;
        if (!(model == rep.sign_model()))
          alternatives.emplace_back(g, rep.pairing_convention(), model);
      }
    json verified_under = json::array();
    for (auto const &alt : alternatives)
      if (run(claims[i], alt).verified())
        verified_under.push_back(alt.sign_model().rho1_pattern());
    out[i].evidence["alternative_sign_models"] = {
      {"checked", std::to_string(alternatives.size())}, {"verified_under", verified_under}};
  }
  return out;
}

std::vector<Claim> suite_claims(Suite suite, int genus)
{
  require_genus(genus);
  switch (suite) {
    case Suite::Conventions: return conventions_claims(genus);
    case Suite::FourElements: return four_element_claims(genus);
    case Suite::ThreeElements: return three_element_claims();
    case Suite::InvolutionChain: return chain_claims();
    case Suite::Involutions: return involution_claims();
    case Suite::All: {
      std::vector<Claim> out;
      for (auto s : all_suites())
        for (auto &c : suite_claims(s, genus))
          out.push_back(std::move(c));
      return out;
    }
  }
  return {};
}

Certificate run_suite(int genus, Suite suite, SuiteOptions const &options)
{
  require_genus(genus);
  auto const solution = solve_sign_models(genus, options.pairing);
  Representation const rep(genus, options.pairing, options.sign_model.value_or(solution.chosen));

  Certificate cert;
  cert.suite = to_string(suite);
  cert.genus = genus;
  cert.sign_model = sign_model_record(rep, solution);
  cert.claims = evaluate_claims(suite_claims(suite, genus), rep, solution);

  auto const wants = [suite](Suite s) { return suite == Suite::All || suite == s; };
  if (wants(Suite::FourElements))
    append_compiled(cert.claims, "four-elements.compile.", rep, SetName::FourElements);
  if (wants(Suite::ThreeElements))
    append_compiled(cert.claims, "three-elements.compile.", rep, SetName::ThreeElements);
  if (wants(Suite::InvolutionChain))
    append_chain(cert.claims, rep);
  if (wants(Suite::Involutions)) {
    append_compiled(cert.claims, "involutions.four-involutions.", rep, SetName::FourInvolutions);
    append_compiled(cert.claims, "involutions.three-involutions.", rep,
                    SetName::ThreeInvolutions);
  }

  std::ranges::stable_sort(cert.claims, {}, &ClaimRecord::id);
  for (std::size_t i = 1; i < cert.claims.size(); ++i)
    if (cert.claims[i].id == cert.claims[i - 1].id)
      throw std::logic_error("duplicate claim id " + cert.claims[i].id);
  return cert;
}

} // namespace mcg
