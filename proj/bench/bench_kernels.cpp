// Serial references against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "mcg/finite_sp.hpp"
#include "mcg/verifier.hpp"

using namespace mcg;

namespace
{

GroupUnderTest const &orbit_group()
{
  static Representation const rep(8);
  static GroupUnderTest const g =
      group_from_set(rep, generating_set(SetName::ThreeInvolutions, 8), 2);
  return g;
}

GroupUnderTest const &table_group()
{
  static Representation const rep(5);
  static GroupUnderTest const g =
      group_from_set(rep, generating_set(SetName::FourInvolutions, 5), 3);
  return g;
}

std::vector<std::uint32_t> e1(int genus)
{
  std::vector<std::uint32_t> v(2 * genus, 0);
  v[0] = 1;
  return v;
}

void BM_orbit_serial(benchmark::State &state)
{
  auto const &g = orbit_group();
  for (auto _ : state)
    benchmark::DoNotOptimize(orbit_size_serial(g, e1(g.genus)));
}

void BM_orbit_parallel(benchmark::State &state)
{
  auto const &g = orbit_group();
  for (auto _ : state)
    benchmark::DoNotOptimize(orbit_size(g, e1(g.genus)));
}

void BM_tabulation(benchmark::State &state)
{
  auto const schedule = state.range(0) ? Schedule::Parallel : Schedule::Serial;
  for (auto _ : state)
    benchmark::DoNotOptimize(permutation_action(table_group(), {}, schedule));
}

void BM_claims(benchmark::State &state)
{
  auto const schedule = state.range(0) ? Schedule::Parallel : Schedule::Serial;
  int const g = 8;
  Representation const rep(g);
  auto const solution = solve_sign_models(g);
  auto const claims = suite_claims(Suite::All, g);
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate_claims(claims, rep, solution, schedule));
}

} // namespace

BENCHMARK(BM_orbit_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_orbit_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tabulation)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_claims)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
