#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include <omp.h>

#include "mcg/finite_sp.hpp"

using namespace mcg;

namespace
{

// Transvection x -> x + <x,c>c mod p with <a_i,b_i> = 1, built entrywise.
ModPMatrix transvection_mod(int g, std::uint32_t p, std::vector<std::int64_t> const &c)
{
  auto pair = [g](std::vector<std::int64_t> const &x, std::vector<std::int64_t> const &y) {
    std::int64_t s = 0;
    for (int i = 0; i < g; ++i)
      s += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
    return s;
  };
  ModPMatrix m(g, p);
  for (int j = 0; j < 2 * g; ++j) {
    std::vector<std::int64_t> e(2 * g, 0);
    e[j] = 1;
    auto const k = pair(e, c);
    for (int i = 0; i < 2 * g; ++i) {
      auto v = (e[i] + k * c[i]) % std::int64_t{p};
      m(i, j) = static_cast<std::uint32_t>((v + p) % p);
    }
  }
  return m;
}

// Humphries-type chain a1, b1, a1 - a2, b2, ..., enough to generate Sp(2g, p).
GroupUnderTest chain_group(int g, std::uint32_t p)
{
  GroupUnderTest G{g, p, {}};
  for (int i = 0; i < g; ++i) {
    std::vector<std::int64_t> b(2 * g, 0);
    b[2 * i + 1] = 1;
    G.generators.push_back(transvection_mod(g, p, b));
    if (i + 1 < g) {
      std::vector<std::int64_t> c(2 * g, 0);
      c[2 * i] = 1;
      c[2 * i + 2] = -1;
      G.generators.push_back(transvection_mod(g, p, c));
    }
  }
  std::vector<std::int64_t> a(2 * g, 0);
  a[0] = 1;
  G.generators.push_back(transvection_mod(g, p, a));
  return G;
}

// Oracle: enumerate the group as a set of matrices.
std::size_t brute_order(GroupUnderTest const &G)
{
  auto key = [&](ModPMatrix const &m) {
    std::vector<std::uint32_t> k;
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j)
        k.push_back(m(i, j));
    return k;
  };
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<ModPMatrix> queue{ModPMatrix::identity(G.genus, G.p)};
  seen.insert(key(queue[0]));
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &s : G.generators) {
      auto n = queue[i] * s;
      if (seen.insert(key(n)).second)
        queue.push_back(std::move(n));
    }
  return queue.size();
}

} // namespace

TEST_CASE("order formula", "[finite]")
{
  CHECK(sp_order_formula(1, 2) == 6);
  CHECK(sp_order_formula(3, 2) == 1451520);
  CHECK(sp_order_formula(2, 3) == 51840);
  CHECK(sp_order_formula(3, 3) == Integer("9170703360"));
  CHECK_THROWS_AS(sp_order_formula(2, 4), DomainError);
  CHECK_THROWS_AS(sp_order_formula(0, 2), DomainError);
}

TEST_CASE("primality and reduction guard", "[finite]")
{
  CHECK(is_prime(2));
  CHECK(is_prime(2147483647));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  Representation rep(3);
  auto m = rep.word_matrix(parse_word("A1", 3));
  CHECK_THROWS_AS(reduce_mod(m, 4), DomainError);
  CHECK_THROWS_AS(reduce_mod(m, 2147483659LL), DomainError);
  auto t = reduce_mod(m, 2);
  CHECK_FALSE(t.is_identity());
  CHECK((t * t).is_identity());
  CHECK(t.is_symplectic());
}

TEST_CASE("encode and decode are inverse", "[finite]")
{
  for (std::uint32_t p : {2u, 3u, 7u})
    for (std::uint64_t code = 0; code < 500; ++code)
      CHECK(encode(decode(code, 6, p), p) == code % (p * p * p * p * p * p));
}

TEST_CASE("orbit sizes of nonzero vectors", "[finite]")
{
  Representation r3(3);
  auto g3 = group_from_set(r3, generating_set(SetName::FourElements, 3), 2);
  std::vector<std::uint32_t> e1{1, 0, 0, 0, 0, 0};
  CHECK(orbit_size(g3, e1) == 63);
  CHECK(orbit_size_serial(g3, e1) == 63);

  Representation r8(8);
  auto g8 = group_from_set(r8, generating_set(SetName::ThreeInvolutions, 8), 2);
  std::vector<std::uint32_t> v(16, 0);
  v[5] = 1;
  CHECK(orbit_size(g8, v) == 65535);

  GroupUnderTest trivial{3, 5, {ModPMatrix::identity(3, 5)}};
  CHECK(orbit_size(trivial, e1) == 1);
  CHECK(bsgs_order(trivial).order == 1);
  CHECK_THROWS_AS(orbit_size(trivial, std::vector<std::uint32_t>(6, 0)), DomainError);
  CHECK_THROWS_AS(orbit_size(trivial, std::vector<std::uint32_t>{5, 0, 0, 0, 0, 0}), DomainError);
}

TEST_CASE("serial and parallel orbit closures agree", "[finite]")
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint32_t const p = trial % 2 ? 3 : 2;
    int const g = 2 + trial % 2;
    auto full = chain_group(g, p);
    GroupUnderTest sub{g, p, {}};
    for (auto const &m : full.generators)
      if (rng() % 2)
        sub.generators.push_back(m);
    if (sub.generators.empty())
      sub.generators.push_back(full.generators[0]);
    std::vector<std::uint32_t> v(2 * g);
    do
      for (auto &x : v)
        x = static_cast<std::uint32_t>(rng() % p);
    while (encode(v, p) == 0);
    CHECK(orbit_size(sub, v) == orbit_size_serial(sub, v));
  }
}

TEST_CASE("Schreier-Sims against the brute-force closure", "[finite]")
{
  std::mt19937_64 rng(5);
  for (auto [g, p] : {std::pair{1, 2u}, {1, 3u}, {1, 5u}, {2, 2u}})
    CHECK(bsgs_order(chain_group(g, p)).order == brute_order(chain_group(g, p)));
  for (int trial = 0; trial < 30; ++trial) {
    auto full = chain_group(2, trial % 3 ? 2 : 3);
    GroupUnderTest sub{2, full.p, {}};
    for (auto const &m : full.generators)
      if (rng() % 2)
        sub.generators.push_back(m);
    if (sub.generators.empty())
      sub.generators.push_back(full.generators.back());
    auto const order = bsgs_order(sub).order;
    CHECK(order == brute_order(sub));
    CHECK(sp_order_formula(2, sub.p) % order == 0);
    std::vector<std::uint32_t> e1{1, 0, 0, 0};
    CHECK(order % orbit_size(sub, e1) == 0);
  }
}

TEST_CASE("named transvections generate Sp(6, 2)", "[finite]")
{
  Representation rep(3);
  GroupUnderTest G{3, 2, {}};
  for (auto c : rep.named_curves())
    G.generators.push_back(reduce_mod(rep.transvection(c), 2));
  auto r = bsgs_order(G);
  CHECK(r.order == 1451520);
  std::vector<std::uint32_t> e1{1, 0, 0, 0, 0, 0};
  CHECK(r.order % orbit_size(G, e1) == 0);

  GroupUnderTest single{3, 2, {G.generators[0]}};
  CHECK(bsgs_order(single).order == 2);
  auto bad = check_group_generates(single, FiniteMethod::Bsgs, {});
  CHECK(bad.status == Status::Failed);
  CHECK(check_group_generates(single, FiniteMethod::Orbit, {}, true).status == Status::Failed);
}

TEST_CASE("every set generates mod small primes", "[finite]")
{
  for (auto s : {SetName::DehnLickorish, SetName::FourElements, SetName::ThreeElements,
                 SetName::FourInvolutions}) {
    CAPTURE(to_string(s));
    auto r = check_full_generation_mod_p(s, 3, 2, FiniteMethod::Auto);
    CHECK(r.verified());
    CHECK(r.evidence["order"] == "1451520");
    CHECK(check_full_generation_mod_p(s, 5, 3, FiniteMethod::Auto).verified());
  }
  auto r = check_full_generation_mod_p(SetName::ThreeInvolutions, 8, 2, FiniteMethod::Orbit);
  CHECK(r.verified());
  CHECK(r.evidence["compiled_witnesses"] == "all twists");
  CHECK_THROWS_AS(check_full_generation_mod_p(SetName::ThreeInvolutions, 7, 2, FiniteMethod::Auto),
                  GenusError);
  CHECK_THROWS_AS(check_full_generation_mod_p(SetName::FourElements, 3, 9, FiniteMethod::Auto),
                  DomainError);
}

TEST_CASE("budgets are enforced", "[finite]")
{
  Representation rep(3);
  auto G = group_from_set(rep, generating_set(SetName::FourElements, 3), 3);
  Budget tiny{100, 50'000'000};
  CHECK_THROWS_AS(permutation_action(G, tiny), BudgetExceeded);
  Budget few{1 << 22, 10};
  try {
    bsgs_order(G, few);
    FAIL("expected budget exhaustion");
  } catch (BudgetExceeded const &e) {
    CHECK(e.partial().contains("sifts"));
  }
}

TEST_CASE("method names", "[finite]")
{
  for (auto m : {FiniteMethod::Bsgs, FiniteMethod::Orbit, FiniteMethod::Auto})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("fast"), DomainError);
}

TEST_CASE("parallel kernels match the serial references under oversubscription", "[finite]")
{
  int const saved = omp_get_max_threads();
  omp_set_num_threads(4);
  Representation rep(5);
  auto const G = group_from_set(rep, generating_set(SetName::ThreeElements, 5), 3);
  CHECK(permutation_action(G, {}, Schedule::Parallel) ==
        permutation_action(G, {}, Schedule::Serial));
  std::vector<std::uint32_t> v(10, 0);
  v[3] = 2;
  CHECK(orbit_size(G, v) == orbit_size_serial(G, v));
  CHECK(orbit_size(G, v) == 59048);
  omp_set_num_threads(saved);
}
