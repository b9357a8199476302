#include <catch_amalgamated.hpp>

#include <random>

#include "mcg/compiler.hpp"

using namespace mcg;

namespace
{

// Oracle: applies a flat word letter by letter to v, right to left, using the
// transvection formula mod p under rep's form. Shares nothing with the
// program evaluator.
std::vector<long> apply_flat_mod(Representation const &rep, Word const &w,
                                 std::vector<long> v, long p)
{
  int const n = 2 * rep.genus();
  auto const reduce = [p](mpz_class x) {
    x %= p;
    return x < 0 ? x.get_si() + p : x.get_si();
  };
  // Twists: x -> x + sign <x,c> c, stored as (c mod p, functional <., c> mod p).
  // Others: signed permutations, read off their matrices.
  struct Action
  {
    bool twist;
    int sign;
    std::vector<long> c, f;
    std::vector<int> target;
    std::vector<long> factor;
  };
  std::map<Letter, int> index;
  std::vector<Action> actions;
  std::vector<int> seq;
  seq.reserve(w.size());
  for (auto const &l : w.letters()) {
    auto [it, fresh] = index.try_emplace(l, static_cast<int>(actions.size()));
    if (fresh) {
      Action a{l.symbol.is_twist(), l.sign, {}, {}, {}, {}};
      if (a.twist) {
        auto const &cls = rep.curve_class(l.symbol.curve_id());
        a.c.resize(n);
        a.f.assign(n, 0);
        for (int i = 0; i < n; ++i) {
          a.c[i] = reduce(cls.coords()[i]);
          mpz_class acc = 0;
          for (int j = 0; j < n; ++j)
            acc += rep.form()(i, j) * cls.coords()[j];
          a.f[i] = reduce(acc);
        }
      } else {
        auto const &inv = rep.involutions();
        auto base = l.symbol.kind == SymbolKind::RotR   ? inv.rotation
                    : l.symbol.kind == SymbolKind::Rho1 ? inv.rho1
                                                        : inv.rho2;
        auto m = l.sign > 0 ? base : rep.inverse(base);
        a.target.assign(n, -1);
        a.factor.assign(n, 0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (m.matrix()(i, j) != 0) {
              REQUIRE(a.target[j] == -1);
              a.target[j] = i;
              a.factor[j] = reduce(m.matrix()(i, j));
            }
      }
      actions.push_back(std::move(a));
    }
    seq.push_back(it->second);
  }
  std::vector<long> out(n);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    auto const &a = actions[*it];
    if (a.twist) {
      long pair = 0;
      for (int i = 0; i < n; ++i)
        pair = (pair + v[i] * a.f[i]) % p;
      if (a.sign < 0)
        pair = (p - pair) % p;
      for (int i = 0; i < n; ++i)
        v[i] = (v[i] + pair * a.c[i]) % p;
    } else {
      for (int j = 0; j < n; ++j)
        out[a.target[j]] = (a.factor[j] * v[j]) % p;
      v.swap(out);
    }
  }
  return v;
}

std::vector<long> apply_matrix_mod(SymplecticMatrix const &m, std::vector<long> const &v, long p)
{
  int const n = static_cast<int>(v.size());
  std::vector<long> out(n, 0);
  for (int i = 0; i < n; ++i) {
    mpz_class acc = 0;
    for (int j = 0; j < n; ++j)
      acc += m.matrix()(i, j) * v[j];
    acc %= p;
    if (acc < 0)
      acc += p;
    out[i] = acc.get_si();
  }
  return out;
}

void check_flat_oracle(Representation const &rep, Word const &w, SymplecticMatrix const &target)
{
  std::mt19937_64 rng(12345);
  for (long p : {1000003L, 998244353L}) {
    std::uniform_int_distribution<long> d(0, p - 1);
    // One random vector per prime once the word is long.
    int const trials = w.size() > 100000 ? 1 : 3;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<long> v(2 * rep.genus());
      for (auto &x : v)
        x = d(rng);
      CHECK(apply_flat_mod(rep, w, v, p) == apply_matrix_mod(target, v, p));
    }
  }
}

} // namespace

TEST_CASE("generating sets", "[compiler]")
{
  CHECK(to_string(parse_set_name("three-involutions")) == "three-involutions");
  CHECK_THROWS_AS(parse_set_name("two-involutions"), DomainError);
  CHECK_THROWS_AS(generating_set(SetName::ThreeInvolutions, 7), GenusError);
  CHECK_THROWS_AS(generating_set(SetName::FourElements, 2), GenusError);
  auto ti = generating_set(SetName::ThreeInvolutions, 8);
  REQUIRE(ti.alphabet.size() == 3);
  CHECK(format_word(ti.alphabet[2].second) ==
        "R R p1 R^-1 R^-1 B1 A2 C3 C4^-1 A6^-1 B7^-1");
  auto fi = generating_set(SetName::FourInvolutions, 3);
  CHECK(format_word(fi.alphabet[3].second) == "p1 A1 B1 C1 C2^-1 B3^-1 A3^-1");
}

TEST_CASE("program expansion, inversion and powers", "[compiler]")
{
  int const g = 3;
  Program prog(g);
  auto a = prog.generator("a", parse_word("A1 B1", g));
  auto r = prog.generator("r", parse_word("R", g));
  auto x = prog.product("x", {a, r.inv()});
  CHECK(format_word(prog.expand(x, 100)) == "A1 B1 R^-1");
  CHECK(format_word(prog.expand(x.inv(), 100)) == "R B1^-1 A1^-1");
  CHECK(prog.format_generators(x.inv(), 100) == "r a^-1");
  CHECK(prog.expanded_length(x) == 3);
  CHECK(prog.generator_length(x) == 2);
  auto p5 = prog.power("x^5", x, 5);
  CHECK(prog.expanded_length(p5) == 15);
  CHECK(prog.expand(p5, 100) == power(parse_word("A1 B1 R^-1", g), 5));
  CHECK(prog.expand(prog.power("x^-2", x, -2), 100) == power(parse_word("R B1^-1 A1^-1", g), 2));
  CHECK_THROWS_AS(prog.expand(p5, 10), DomainError);
  CHECK(prog.generators_used(x) == std::vector<int>{a.node, r.node});
  CHECK(prog.listing(x).find("result = %2") != std::string::npos);

  Representation rep(g);
  ProgramEvaluator ev(prog, rep);
  CHECK(ev.matrix(p5) == rep.word_matrix(prog.expand(p5, 100)));
  CHECK(ev.matrix(p5.inv()) == rep.word_matrix(invert(prog.expand(p5, 100))));
}

TEST_CASE("ledger keeps the shortest witness", "[compiler]")
{
  int const g = 3;
  Program prog(g);
  auto u = prog.generator("u", parse_word("A1 A2^-1", g));
  auto longer = prog.product("long", {u, u, u.inv()});
  auto other = prog.product("b-name", {u});
  auto earlier = prog.product("a-name", {u});
  PairLedger ledger(prog);
  auto const a1 = parse_curve("a1", g), a2 = parse_curve("a2", g);
  CHECK(ledger.offer(a1, a2, longer));
  CHECK(ledger.offer(a1, a2, other));
  CHECK(ledger.at(a1, a2) == other);
  CHECK(ledger.offer(a1, a2, earlier));
  CHECK_FALSE(ledger.offer(a1, a2, longer));
  CHECK(ledger.at(a1, a2) == earlier);
  CHECK_THROWS_AS(ledger.at(a2, a1), DomainError);
  CHECK_THROWS_AS(ledger.offer(a1, a1, u), DomainError);
}

TEST_CASE("Dehn-Lickorish set compiles by rotation", "[compiler]")
{
  int const g = 4;
  Representation rep(g);
  Compiler c(rep, generating_set(SetName::DehnLickorish, g));
  auto r = c.compile({SymbolKind::TwistA, 3});
  CHECK(format_word(c.program().expand(r.element, 100)) == "R R A1 R^-1 R^-1");
  CHECK(r.verified);
  auto all = c.compile_all();
  CHECK(all.size() == 12);
}

TEST_CASE("four-element set: seeded pairs and saturation", "[compiler]")
{
  int const g = 5;
  Representation rep(g);
  Compiler c(rep, generating_set(SetName::FourElements, g));
  c.seed_ledger();
  CHECK(c.ledger().size() == 3);
  c.saturate_rotation();
  CHECK(c.ledger().size() == 3 * g * (g - 1));
  c.cross_family_pairs();
  CHECK(c.ledger().size() == 3 * g * (3 * g - 1));
  CHECK(c.check_ledger().verified());
  auto a3 = c.lantern_step();
  CHECK(a3.verified);
  CHECK(c.ledger().contains(CurveId{CurveFamily::d, 1}, parse_curve("a1", g)));
  CHECK(c.check_ledger().verified());
}

TEST_CASE("every set compiles every twist, checked against a flat-word oracle", "[compiler]")
{
  struct Case
  {
    SetName set;
    int genus;
  };
  for (auto [set, g] : {Case{SetName::FourElements, 3}, Case{SetName::ThreeElements, 3},
                        Case{SetName::FourInvolutions, 3}, Case{SetName::FourElements, 7},
                        Case{SetName::ThreeElements, 6}, Case{SetName::FourInvolutions, 5},
                        Case{SetName::ThreeInvolutions, 8}}) {
    CAPTURE(to_string(set), g);
    for (auto pairing : {Pairing::Standard, Pairing::Flipped}) {
      Representation rep(g, pairing);
      Compiler c(rep, generating_set(set, g));
      auto results = c.compile_all();
      REQUIRE(results.size() == static_cast<std::size_t>(3 * g));
      for (auto const &r : results) {
        CHECK(r.verified);
        CHECK(c.alphabet_closed(r.element));
        CHECK(c.workspace().matrix(r.element) == rep.transvection(r.target.curve_id()));
      }
      // Flat expansion of a few targets through the independent evaluator.
      std::vector<std::size_t> picks{0, results.size() / 2, results.size() - 1};
      if (set == SetName::ThreeInvolutions)
        picks = {pairing == Pairing::Standard ? std::size_t{0} : results.size() - 1};
      for (std::size_t k : picks) {
        auto const &r = results[k];
        auto flat = c.program().expand(r.element, 5'000'000);
        CHECK(flat.size() == r.length.get_ui());
        check_flat_oracle(rep, flat, rep.transvection(r.target.curve_id()));
      }
      for (auto const &claim : c.claims())
        CHECK(claim.status == Status::Verified);
    }
  }
}

TEST_CASE("compilation is deterministic", "[compiler]")
{
  int const g = 4;
  Representation rep(g);
  Compiler c1(rep, generating_set(SetName::FourInvolutions, g));
  Compiler c2(rep, generating_set(SetName::FourInvolutions, g));
  auto r1 = c1.compile_all();
  auto r2 = c2.compile_all();
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(c1.program().expand(r1[i].element, 100000) ==
          c2.program().expand(r2[i].element, 100000));
    CHECK(r1[i].trace == r2[i].trace);
  }
}

TEST_CASE("involution chain normal forms", "[compiler]")
{
  CHECK_THROWS_AS(involution_chain(Representation(7)), GenusError);
  for (int g : {8, 9, 12}) {
    Representation rep(g);
    auto chain = involution_chain(rep);
    auto const &steps = chain.output.steps;
    std::map<std::string, std::string> nf;
    for (auto const &s : steps)
      nf[s.name] = format_word(s.normal_form);
    CHECK(nf["F3"] == "A2 A3 C4 C5^-1 B7^-1 B8^-1");
    CHECK(nf["F5"] == "A1 A2 C3 C4^-1 C5^-1 B7^-1");
    CHECK(nf["F6"] == "B1 A2 A6^-1 C6^-1");
    CHECK(nf["F8"] == "A2 A3 A7^-1 C7^-1");
    CHECK(nf["A1A2^-1"] == "A1 A2^-1");
    for (auto const &s : steps) {
      CAPTURE(s.name);
      CHECK(chain.workspace->matrix(s.element) == rep.word_matrix(s.normal_form));
    }
    // The chain elements are words over {p1, p2, F1} only.
    auto const &prog = chain.workspace->program();
    auto w = prog.format_generators(steps.back().element, 1'000'000);
    CHECK(w.find("p1") != std::string::npos);
    CHECK(w.find("F1") != std::string::npos);
  }
}

TEST_CASE("F3 expands to the conjugate of F2 by F2 F1", "[compiler]")
{
  int const g = 8;
  Representation rep(g);
  auto chain = involution_chain(rep);
  auto const &prog = chain.workspace->program();
  auto const &steps = chain.output.steps;
  auto it = std::ranges::find_if(steps, [](auto const &s) { return s.name == "F3"; });
  REQUIRE(it != steps.end());
  CHECK(prog.format_generators(it->element, 1000) ==
        "p1 p2 F1 p2^-1 p1^-1 F1 p1 p2 F1 p2^-1 p1^-1 F1^-1 p1 p2 F1^-1 p2^-1 p1^-1");
}
