#include "mcg/finite_sp.hpp"

#include <atomic>
#include <cmath>
#include <deque>
#include <algorithm>

#include <omp.h>

namespace mcg
{

using nlohmann::json;

bool is_prime(std::int64_t n)
{
  if (n < 2)
    return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

namespace
{

std::uint32_t checked_prime(std::int64_t p)
{
  if (p >= (std::int64_t{1} << 31) || !is_prime(p))
    throw DomainError(std::to_string(p) + " is not a prime below 2^31");
  return static_cast<std::uint32_t>(p);
}

std::uint64_t ipow(std::uint64_t b, int e)
{
  std::uint64_t r = 1;
  while (e-- > 0)
    r *= b;
  return r;
}

} // namespace

ModPMatrix::ModPMatrix(int genus, std::uint32_t p)
    : _genus(genus), _p(p), _e(static_cast<std::size_t>(4 * genus * genus), 0)
{
}

ModPMatrix ModPMatrix::identity(int genus, std::uint32_t p)
{
  ModPMatrix m(genus, p);
  for (int i = 0; i < m.dim(); ++i)
    m(i, i) = 1 % p;
  return m;
}

ModPMatrix ModPMatrix::operator*(ModPMatrix const &o) const
{
  if (o._genus != _genus || o._p != _p)
    throw DomainError("mod-p matrices differ in genus or prime");
  int const n = dim();
  ModPMatrix r(_genus, _p);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::uint64_t const a = (*this)(i, k);
      if (a == 0)
        continue;
      for (int j = 0; j < n; ++j)
        r(i, j) = static_cast<std::uint32_t>((r(i, j) + a * o(k, j)) % _p);
    }
  return r;
}

std::vector<std::uint32_t> ModPMatrix::apply(std::vector<std::uint32_t> const &v) const
{
  int const n = dim();
  std::vector<std::uint32_t> out(n, 0);
  for (int i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (int j = 0; j < n; ++j)
      acc = (acc + std::uint64_t{(*this)(i, j)} * v[j]) % _p;
    out[i] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

bool ModPMatrix::is_identity() const { return *this == identity(_genus, _p); }

bool ModPMatrix::is_symplectic() const
{
  // Column pairs: <M e_i, M e_j> must equal <e_i, e_j>.
  int const n = dim();
  auto form = [this](int i, int j) -> std::int64_t {
    if (i / 2 != j / 2 || i == j)
      return 0;
    return i % 2 == 0 ? 1 : -1;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::int64_t acc = 0;
      for (int h = 0; h < _genus; ++h) {
        acc += std::int64_t{(*this)(2 * h, i)} * (*this)(2 * h + 1, j);
        acc -= std::int64_t{(*this)(2 * h + 1, i)} * (*this)(2 * h, j);
        acc %= static_cast<std::int64_t>(_p);
      }
      std::int64_t const want = (form(i, j) + _p) % _p;
      if ((acc % _p + _p) % _p != want)
        return false;
    }
  return true;
}

ModPMatrix reduce_mod(SymplecticMatrix const &m, std::int64_t p)
{
  auto const q = checked_prime(p);
  ModPMatrix r(m.genus(), q);
  int const n = r.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mpz_class x = m.matrix()(i, j) % q;
      if (x < 0)
        x += q;
      r(i, j) = static_cast<std::uint32_t>(x.get_ui());
    }
  return r;
}

void GroupUnderTest::validate() const
{
  if (generators.empty())
    throw DomainError("group under test has no generators");
  for (auto const &m : generators) {
    if (m.genus() != genus || m.prime() != p)
      throw DomainError("generator differs in genus or prime");
    if (!m.is_symplectic())
      throw DomainError("generator is not symplectic mod p");
  }
}

std::uint64_t GroupUnderTest::point_count() const { return ipow(p, 2 * genus) - 1; }

GroupUnderTest group_from_set(Representation const &rep, GeneratingSet const &set, std::int64_t p)
{
  GroupUnderTest g{rep.genus(), checked_prime(p), {}};
  for (auto const &[name, word] : set.alphabet)
    g.generators.push_back(reduce_mod(rep.word_matrix(word), p));
  g.validate();
  return g;
}

std::uint64_t encode(std::vector<std::uint32_t> const &v, std::uint32_t p)
{
  std::uint64_t code = 0;
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    code = code * p + *it;
  return code;
}

std::vector<std::uint32_t> decode(std::uint64_t code, int dim, std::uint32_t p)
{
  std::vector<std::uint32_t> v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return v;
}

namespace
{

void guard_points(GroupUnderTest const &group, Budget const &budget)
{
  group.validate();
  if (2 * group.genus * std::log2(static_cast<double>(group.p)) > 62 ||
      group.point_count() > budget.max_points)
    throw BudgetExceeded("point budget exceeded",
                         json{{"points", ipow(group.p, 2 * group.genus) - 1},
                              {"max_points", std::to_string(budget.max_points)}});
}

std::uint64_t start_code(GroupUnderTest const &group, std::vector<std::uint32_t> const &v)
{
  if (static_cast<int>(v.size()) != 2 * group.genus)
    throw DomainError("vector has the wrong dimension");
  std::vector<std::uint32_t> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    r[i] = v[i] % group.p;
  auto const code = encode(r, group.p);
  if (code == 0)
    throw DomainError("orbit of the zero vector requested");
  return code;
}

} // namespace

std::uint64_t orbit_size_serial(GroupUnderTest const &group, std::vector<std::uint32_t> const &v,
                                Budget const &budget)
{
  guard_points(group, budget);
  auto const start = start_code(group, v);
  int const n = 2 * group.genus;
  std::vector<bool> seen(group.point_count() + 1, false);
  std::deque<std::uint64_t> queue{start};
  seen[start] = true;
  std::uint64_t count = 1;
  while (!queue.empty()) {
    auto const x = decode(queue.front(), n, group.p);
    queue.pop_front();
    for (auto const &m : group.generators) {
      auto const y = encode(m.apply(x), group.p);
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        queue.push_back(y);
      }
    }
  }
  return count;
}

std::uint64_t orbit_size(GroupUnderTest const &group, std::vector<std::uint32_t> const &v,
                         Budget const &budget)
{
  guard_points(group, budget);
  auto const start = start_code(group, v);
  int const n = 2 * group.genus;
  std::uint64_t const codes = group.point_count() + 1;
  std::vector<std::atomic<std::uint64_t>> seen((codes + 63) / 64);
  seen[start / 64].fetch_or(std::uint64_t{1} << (start % 64));
  std::vector<std::uint64_t> frontier{start};
  std::uint64_t count = 1;
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint64_t>> found(omp_get_max_threads());
    long const size = static_cast<long>(frontier.size());
#pragma omp parallel
    {
      auto &out = found[omp_get_thread_num()];
#pragma omp for schedule(static)
      for (long i = 0; i < size; ++i) {
        auto const x = decode(frontier[i], n, group.p);
        for (auto const &m : group.generators) {
          auto const y = encode(m.apply(x), group.p);
          auto const bit = std::uint64_t{1} << (y % 64);
          if (!(seen[y / 64].fetch_or(bit) & bit))
            out.push_back(y);
        }
      }
    }
    frontier.clear();
    for (auto &f : found)
      frontier.insert(frontier.end(), f.begin(), f.end());
    count += frontier.size();
  }
  return count;
}

std::vector<Permutation> permutation_action(GroupUnderTest const &group, Budget const &budget,
                                           Schedule schedule)
{
  guard_points(group, budget);
  int const n = 2 * group.genus;
  long const points = static_cast<long>(group.point_count());
  std::vector<Permutation> out;
  for (auto const &m : group.generators) {
    Permutation perm(points);
#pragma omp parallel for schedule(static) if (schedule == Schedule::Parallel)
    for (long k = 0; k < points; ++k)
      perm[k] = static_cast<std::uint32_t>(encode(m.apply(decode(k + 1, n, group.p)), group.p) - 1);
    out.push_back(std::move(perm));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace
{

// x^(ab) = (x^a)^b.
Permutation mul(Permutation const &a, Permutation const &b)
{
  Permutation r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    r[x] = b[a[x]];
  return r;
}

Permutation inverse(Permutation const &a)
{
  Permutation r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    r[a[x]] = static_cast<std::uint32_t>(x);
  return r;
}

bool is_id(Permutation const &a)
{
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != x)
      return false;
  return true;
}

std::uint32_t first_moved(Permutation const &a)
{
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != x)
      return static_cast<std::uint32_t>(x);
  throw std::logic_error("identity has no moved point");
}

struct Level
{
  std::uint32_t point;
  std::vector<std::size_t> gens; // indices into the strong generators
  std::vector<std::int32_t> rep_of;
  std::vector<std::uint32_t> orbit;
  std::vector<Permutation> reps, inv_reps;
};

class StabilizerChain
{
public:
  StabilizerChain(std::size_t points, Budget const &budget) : _n(points), _budget(budget) {}

  BsgsResult run(std::vector<Permutation> const &generators)
  {
    for (auto const &g : generators) {
      if (g.size() != _n)
        throw DomainError("permutation has the wrong degree");
      if (is_id(g))
        continue;
      std::size_t const idx = _strong.size();
      _strong.push_back(g);
      bool fixes_base = true;
      for (auto const &l : _levels)
        if (g[l.point] != l.point)
          fixes_base = false;
      if (fixes_base)
        _levels.push_back(Level{first_moved(g), {}, {}, {}, {}, {}});
      (void)idx;
    }
    for (std::size_t i = 0; i < _levels.size(); ++i) {
      for (std::size_t s = 0; s < _strong.size(); ++s) {
        bool fixes = true;
        for (std::size_t j = 0; j < i; ++j)
          if (_strong[s][_levels[j].point] != _levels[j].point)
            fixes = false;
        if (fixes)
          _levels[i].gens.push_back(s);
      }
      build_orbit(i);
    }

    long i = static_cast<long>(_levels.size()) - 1;
    while (i >= 0) {
      auto const next = schreier_pass(static_cast<std::size_t>(i));
      i = next ? static_cast<long>(*next) : i - 1;
    }

    BsgsResult r;
    r.order = 1;
    for (auto const &l : _levels) {
      r.base.push_back(l.point);
      r.orbit_lengths.push_back(l.orbit.size());
      r.order *= static_cast<unsigned long>(l.orbit.size());
    }
    r.sifts = _sifts;
    return r;
  }

private:
  void build_orbit(std::size_t i)
  {
    auto &l = _levels[i];
    l.rep_of.assign(_n, -1);
    l.orbit.assign(1, l.point);
    l.reps.clear();
    l.inv_reps.clear();
    Permutation id(_n);
    for (std::size_t x = 0; x < _n; ++x)
      id[x] = static_cast<std::uint32_t>(x);
    l.reps.push_back(id);
    l.inv_reps.push_back(id);
    l.rep_of[l.point] = 0;
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      auto const beta = l.orbit[k];
      for (auto s : l.gens) {
        auto const gamma = _strong[s][beta];
        if (l.rep_of[gamma] >= 0)
          continue;
        l.rep_of[gamma] = static_cast<std::int32_t>(l.reps.size());
        auto u = mul(l.reps[l.rep_of[beta]], _strong[s]);
        l.inv_reps.push_back(inverse(u));
        l.reps.push_back(std::move(u));
        l.orbit.push_back(gamma);
      }
    }
  }

  // Sifts h through levels from `start`; returns the residue and the level
  // where it left the chain (levels.size() if it went all the way).
  std::pair<Permutation, std::size_t> strip(Permutation h, std::size_t start) const
  {
    for (std::size_t j = start; j < _levels.size(); ++j) {
      auto const &l = _levels[j];
      auto const idx = l.rep_of[h[l.point]];
      if (idx < 0)
        return {std::move(h), j};
      h = mul(h, l.inv_reps[idx]);
    }
    return {std::move(h), _levels.size()};
  }

  // Checks every Schreier generator at level i. On the first one that does
  // not sift, extends the chain and returns the level to resume from.
  std::optional<std::size_t> schreier_pass(std::size_t i)
  {
    auto const &l = _levels[i];
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      auto const beta = l.orbit[k];
      for (std::size_t gi = 0; gi < _levels[i].gens.size(); ++gi) {
        auto const &lv = _levels[i];
        auto const s = lv.gens[gi];
        auto const gamma = _strong[s][beta];
        if (++_sifts > _budget.max_sifts)
          throw BudgetExceeded("sift budget exceeded", partial());
        auto h = mul(mul(lv.reps[lv.rep_of[beta]], _strong[s]), lv.inv_reps[lv.rep_of[gamma]]);
        if (is_id(h))
          continue;
        auto [res, j] = strip(std::move(h), i + 1);
        if (j == _levels.size() && is_id(res))
          continue;
        std::size_t const idx = _strong.size();
        if (j == _levels.size())
          _levels.push_back(Level{first_moved(res), {}, {}, {}, {}, {}});
        _strong.push_back(std::move(res));
        for (std::size_t m = i + 1; m <= j; ++m) {
          _levels[m].gens.push_back(idx);
          build_orbit(m);
        }
        return j;
      }
    }
    return std::nullopt;
  }

  json partial() const
  {
    json lengths = json::array();
    for (auto const &l : _levels)
      lengths.push_back(std::to_string(l.orbit.size()));
    return json{{"levels", std::to_string(_levels.size())},
                {"orbit_lengths", lengths},
                {"sifts", std::to_string(_sifts)}};
  }

  std::size_t _n;
  Budget _budget;
  std::vector<Permutation> _strong;
  std::vector<Level> _levels;
  std::uint64_t _sifts = 0;
};

} // namespace

BsgsResult bsgs(std::vector<Permutation> const &generators, std::size_t points,
                Budget const &budget)
{
  if (points > budget.max_points)
    throw BudgetExceeded("point budget exceeded", json{{"points", std::to_string(points)}});
  return StabilizerChain(points, budget).run(generators);
}

BsgsResult bsgs_order(GroupUnderTest const &group, Budget const &budget)
{
  return bsgs(permutation_action(group, budget), group.point_count(), budget);
}

Integer sp_order_formula(int genus, std::int64_t p)
{
  if (genus < 1)
    throw DomainError("genus must be at least 1");
  checked_prime(p);
  Integer pp = static_cast<unsigned long>(p);
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(genus * genus));
  for (int i = 1; i <= genus; ++i) {
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), pp.get_mpz_t(), static_cast<unsigned long>(2 * i));
    r *= t - 1;
  }
  return r;
}

std::string to_string(FiniteMethod m)
{
  switch (m) {
    case FiniteMethod::Bsgs: return "bsgs";
    case FiniteMethod::Orbit: return "orbit";
    default: return "auto";
  }
}

FiniteMethod parse_method(std::string_view text)
{
  for (auto m : {FiniteMethod::Bsgs, FiniteMethod::Orbit, FiniteMethod::Auto})
    if (to_string(m) == text)
      return m;
  throw DomainError("unknown method '" + std::string(text) + "'");
}

CheckResult check_group_generates(GroupUnderTest const &group, FiniteMethod method,
                                  Budget const &budget, std::optional<bool> compiled)
{
  group.validate();
  if (method == FiniteMethod::Auto)
    method = group.genus <= 4 ? FiniteMethod::Bsgs : FiniteMethod::Orbit;
  auto const expected = sp_order_formula(group.genus, group.p);
  json ev{{"method", to_string(method)},
          {"genus", std::to_string(group.genus)},
          {"prime", std::to_string(group.p)},
          {"generators", std::to_string(group.generators.size())}};
  bool ok = false;
  if (method == FiniteMethod::Bsgs) {
    auto const r = bsgs_order(group, budget);
    ok = r.order == expected;
    json lengths = json::array();
    for (auto x : r.orbit_lengths)
      lengths.push_back(std::to_string(x));
    ev["order"] = r.order.get_str();
    ev["expected_order"] = expected.get_str();
    ev["base_length"] = std::to_string(r.base.size());
    ev["orbit_lengths"] = std::move(lengths);
    ev["sifts"] = std::to_string(r.sifts);
  } else {
    std::vector<std::uint32_t> e1(2 * group.genus, 0);
    e1[0] = 1;
    auto const size = orbit_size(group, e1, budget);
    bool const transitive = size == group.point_count();
    ok = transitive && compiled.value_or(false);
    ev["orbit"] = std::to_string(size);
    ev["expected_orbit"] = std::to_string(group.point_count());
    ev["transitive"] = transitive ? "true" : "false";
    ev["compiled_witnesses"] = !compiled ? "absent" : (*compiled ? "all twists" : "incomplete");
    ev["expected_order"] = expected.get_str();
  }
  return {ClaimKind::Generation, ok ? Status::Verified : Status::Failed, std::move(ev)};
}

CheckResult check_full_generation_mod_p(SetName set, int genus, std::int64_t p,
                                        FiniteMethod method, Budget const &budget)
{
  checked_prime(p);
  auto const gs = generating_set(set, genus);
  Representation const rep(genus);
  auto const group = group_from_set(rep, gs, p);
  if (method == FiniteMethod::Auto)
    method = genus <= 4 ? FiniteMethod::Bsgs : FiniteMethod::Orbit;
  std::optional<bool> compiled;
  if (method == FiniteMethod::Orbit) {
    Compiler c(rep, gs);
    try {
      auto const results = c.compile_all();
      compiled = std::ranges::all_of(results, [&](auto const &r) {
        return r.verified && c.alphabet_closed(r.element);
      });
    } catch (VerificationFailure const &) {
      compiled = false;
    }
  }
  auto r = check_group_generates(group, method, budget, compiled);
  r.evidence["set"] = to_string(set);
  return r;
}

} // namespace mcg
