#include "mcg/compiler.hpp"

#include <algorithm>

namespace mcg
{

namespace
{

constexpr char kSeedAnchor[] = "generating-set definitions";
constexpr char kHypothesisAnchor[] = "involutions from conjugate twist products";
constexpr char kRotationAnchor[] = "rotation saturation of difference pairs";
constexpr char kCrossAnchor[] = "mixed-family difference pairs";
constexpr char kReductionAnchor[] = "three-element reduction";
constexpr char kLanternAnchor[] = "lantern rewrite of A3";
constexpr char kGenerationAnchor[] = "twist generation";
constexpr char kChainAnchor[] = "involution chain F1..F8";
constexpr char kLedgerAnchor[] = "difference-pair ledger";

constexpr char kF1[] = "B1 A2 C3 C4^-1 A6^-1 B7^-1";
constexpr char kE[] = "A1 B1 C1 C2^-1 B3^-1 A3^-1";

std::string pair_name(CurveId x, CurveId y) { return "(" + x.name() + "," + y.name() + ")"; }

CheckResult syntactic_equal(Word const &u, Word const &v)
{
  bool const ok = u == v;
  return {ClaimKind::RelationEq, ok ? Status::Verified : Status::Failed,
          nlohmann::json{{"level", "syntactic"},
                         {"lhs_word", format_word(u)},
                         {"rhs_word", format_word(v)}}};
}

CurveFamily family_of(SymbolKind k)
{
  switch (k) {
    case SymbolKind::TwistA: return CurveFamily::a;
    case SymbolKind::TwistB: return CurveFamily::b;
    case SymbolKind::TwistC: return CurveFamily::c;
    default: throw DomainError("only A, B and C twists are compilation targets");
  }
}

} // namespace

std::string to_string(SetName s)
{
  switch (s) {
    case SetName::DehnLickorish: return "dehn-lickorish";
    case SetName::FourElements: return "four-elements";
    case SetName::ThreeElements: return "three-elements";
    case SetName::ThreeInvolutions: return "three-involutions";
    default: return "four-involutions";
  }
}

std::vector<SetName> all_set_names()
{
  return {SetName::DehnLickorish, SetName::FourElements, SetName::ThreeElements,
          SetName::ThreeInvolutions, SetName::FourInvolutions};
}

SetName parse_set_name(std::string_view text)
{
  for (auto s : all_set_names())
    if (to_string(s) == text)
      return s;
  throw DomainError("unknown generating set '" + std::string(text) + "'");
}

int minimum_genus(SetName name) { return name == SetName::ThreeInvolutions ? 8 : kMinGenus; }

GeneratingSet generating_set(SetName name, int genus)
{
  require_genus(genus);
  if (genus < minimum_genus(name))
    throw GenusError(to_string(name) + " requires g >= " + std::to_string(minimum_genus(name)));
  auto w = [genus](std::string_view s) { return parse_word(s, genus); };
  GeneratingSet gs{name, minimum_genus(name), {}};
  switch (name) {
    case SetName::DehnLickorish:
      gs.alphabet = {{"R", w("R")}, {"A1", w("A1")}, {"B1", w("B1")}, {"C1", w("C1")}};
      break;
    case SetName::FourElements:
      gs.alphabet = {{"R", w("R")},
                     {"A1A2^-1", w("A1 A2^-1")},
                     {"B1B2^-1", w("B1 B2^-1")},
                     {"C1C2^-1", w("C1 C2^-1")}};
      break;
    case SetName::ThreeElements:
      gs.alphabet = {{"R", w("R")}, {"A1A2^-1", w("A1 A2^-1")}, {"E", w(kE)}};
      break;
    case SetName::ThreeInvolutions:
      gs.alphabet = {{"p1", w("p1")}, {"p2", w("p2")}, {"I3", w("p3") * w(kF1)}};
      break;
    case SetName::FourInvolutions:
      gs.alphabet = {{"p1", w("p1")},
                     {"p2", w("p2")},
                     {"I1", w("p2 A1 A2^-1")},
                     {"I2", w("p1") * w(kE)}};
      break;
  }
  return gs;
}

// ---------------------------------------------------------------------------

Element PairLedger::at(CurveId x, CurveId y) const
{
  auto it = _entries.find({x, y});
  if (it == _entries.end())
    throw DomainError("no witness for " + pair_name(x, y));
  return it->second;
}

bool PairLedger::offer(CurveId x, CurveId y, Element w)
{
  if (x == y)
    throw DomainError("a difference pair needs distinct curves");
  auto [it, inserted] = _entries.try_emplace({x, y}, w);
  if (inserted)
    return true;
  auto const &old = it->second;
  auto const lo = _program->expanded_length(old);
  auto const ln = _program->expanded_length(w);
  if (ln < lo || (ln == lo && _program->name(w.node) < _program->name(old.node))) {
    it->second = w;
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

Workspace::Workspace(Representation const &rep)
    : _rep(rep), _program(rep.genus()), _eval(_program, rep)
{
}

void Workspace::record(std::string id, std::string anchor, CheckResult result)
{
  _claims.push_back(
    {std::move(id), result.kind, result.status, std::move(anchor), std::move(result.evidence)});
}

void Workspace::require(std::string id, std::string anchor, CheckResult result)
{
  bool const ok = result.verified();
  record(id, std::move(anchor), std::move(result));
  if (!ok)
    throw VerificationFailure(id, "claim " + id + " failed");
}

void Workspace::require_equal(std::string id, std::string anchor, Element e, Word const &w)
{
  auto r = check_relation(matrix(e), _rep.word_matrix(w));
  r.evidence["lhs_node"] = _program.name(e.node) + (e.sign < 0 ? " ^-1" : "");
  r.evidence["rhs_word"] = format_word(w);
  require(std::move(id), std::move(anchor), std::move(r));
}

Element Workspace::rotation_power(int k)
{
  if (_rotation.node < 0)
    throw DomainError("rotation element not set");
  int const g = genus();
  k = ((k % g) + g) % g;
  if (2 * k > g)
    k -= g;
  if (k < 0)
    return rotation_power(-k).inv();
  if (k == 1)
    return _rotation;
  if (auto it = _rotation_powers.find(k); it != _rotation_powers.end())
    return it->second;
  Element e = k == 0 ? _program.product("1", {})
                     : _program.product("R^" + std::to_string(k), {rotation_power(k - 1), _rotation});
  _rotation_powers[k] = e;
  return e;
}

Element Workspace::conjugate(std::string name, Element f, Element x)
{
  return _program.conjugate(std::move(name), f, x);
}

std::vector<std::string> Workspace::trace(Element e) const
{
  std::vector<std::string> out;
  for (int i : _program.dependencies(e))
    if (!_program.is_generator(i))
      out.push_back(_program.name(i));
  return out;
}

// ---------------------------------------------------------------------------

ChainOutput run_involution_chain(Workspace &ws, Element rho2, Element f1)
{
  int const g = ws.genus();
  if (g < 8)
    throw GenusError("the involution chain requires g >= 8");
  auto w = [g](std::string_view s) { return parse_word(s, g); };
  auto cs = [g](std::string_view s) { return parse_curves(s, g); };
  auto &prog = ws.program();
  ChainOutput out;
  auto step = [&](std::string name, Element e, std::string_view nf) {
    ws.require_equal("chain." + name, kChainAnchor, e, w(nf));
    out.steps.push_back({std::move(name), e, w(nf)});
  };
  auto image = [&](std::string id, Element f, std::string_view from, std::string_view to) {
    ws.require("chain." + id, kChainAnchor,
               check_curve_tuple_image(ws.rep(), ws.matrix(f), cs(from), cs(to)));
  };

  Element const R = ws.rotation_power(1);
  step("F1", f1, kF1);

  Element const F2 = ws.conjugate("F2 = R F1 R^-1", R, f1);
  ws.require("chain.F2.shift", kChainAnchor,
             syntactic_equal(rotate_shift(w(kF1), 1), w("B2 A3 C4 C5^-1 A7^-1 B8^-1")));
  step("F2", F2, "B2 A3 C4 C5^-1 A7^-1 B8^-1");

  Element const P = prog.product("F2 F1", {F2, f1});
  image("F2F1.image", P, "b2 a3 c4 c5 a7 b8", "a2 a3 c4 c5 b7 b8");
  Element const F3 = ws.conjugate("F3 = (F2 F1) F2 (F2 F1)^-1", P, F2);
  step("F3", F3, "A2 A3 C4 C5^-1 B7^-1 B8^-1");

  Element const F4 = ws.conjugate("F4 = R^-1 F3 R", R.inv(), F3);
  step("F4", F4, "A1 A2 C3 C4^-1 B6^-1 B7^-1");

  Element const Q = prog.product("F4 F3", {F4, F3});
  image("F4F3.image", Q, "a1 a2 c3 c4 b6 b7", "a1 a2 c3 c4 c5 b7");
  Element const F5 = ws.conjugate("F5 = (F4 F3) F4 (F4 F3)^-1", Q, F4);
  step("F5", F5, "A1 A2 C3 C4^-1 C5^-1 B7^-1");

  Element const b6c5 = prog.product("B6C5^-1 = F4^-1 F5", {F4.inv(), F5});
  step("B6C5^-1", b6c5, "B6 C5^-1");
  Element const b2c1 = ws.conjugate("B2C1^-1 = R^-4 B6C5^-1 R^4", ws.rotation_power(-4), b6c5);
  step("B2C1^-1", b2c1, "B2 C1^-1");
  Element const b1c1 = prog.product("B1C1^-1 = p2 B2C1^-1 p2", {rho2, b2c1, rho2});
  step("B1C1^-1", b1c1, "B1 C1^-1");
  Element const bb = prog.product("B1B2^-1 = B1C1^-1 C1B2^-1", {b1c1, b2c1.inv()});
  step("B1B2^-1", bb, "B1 B2^-1");
  Element const b2c2 = ws.conjugate("B2C2^-1 = R B1C1^-1 R^-1", R, b1c1);
  step("B2C2^-1", b2c2, "B2 C2^-1");
  Element const cc = prog.product("C1C2^-1 = C1B2^-1 B2C2^-1", {b2c1.inv(), b2c2});
  step("C1C2^-1", cc, "C1 C2^-1");

  Element const c3c4 = ws.conjugate("C3C4^-1 = R^2 C1C2^-1 R^-2", ws.rotation_power(2), cc);
  step("C3C4^-1", c3c4, "C3 C4^-1");
  Element const b7c6 = ws.conjugate("B7C6^-1 = R B6C5^-1 R^-1", R, b6c5);
  step("B7C6^-1", b7c6, "B7 C6^-1");
  ws.require("chain.F6.commute", kChainAnchor,
             check_relation(ws.rep(), w("C4 C3^-1"), w("C3^-1 C4")));
  Element const F6 = prog.product("F6 = F1 (C3C4^-1)^-1 B7C6^-1", {f1, c3c4.inv(), b7c6});
  step("F6", F6, "B1 A2 A6^-1 C6^-1");

  Element const F7 = ws.conjugate("F7 = R F6 R^-1", R, F6);
  step("F7", F7, "B2 A3 A7^-1 C7^-1");
  Element const S = prog.product("F7 F6", {F7, F6});
  image("F7F6.image", S, "b2 a3 a7 c7", "a2 a3 a7 c7");
  Element const F8 = ws.conjugate("F8 = (F7 F6) F7 (F7 F6)^-1", S, F7);
  step("F8", F8, "A2 A3 A7^-1 C7^-1");

  Element const a2b2 = prog.product("A2B2^-1 = F8 F7^-1", {F8, F7.inv()});
  step("A2B2^-1", a2b2, "A2 B2^-1");
  Element const a1b1 = ws.conjugate("A1B1^-1 = R^-1 A2B2^-1 R", R.inv(), a2b2);
  step("A1B1^-1", a1b1, "A1 B1^-1");
  Element const aa =
    prog.product("A1A2^-1 = A1B1^-1 B1B2^-1 B2A2^-1", {a1b1, bb, a2b2.inv()});
  step("A1A2^-1", aa, "A1 A2^-1");

  out.rotation = R;
  out.a_diff = aa;
  out.b_diff = bb;
  out.c_diff = cc;
  return out;
}

StandaloneChain involution_chain(Representation const &rep)
{
  int const g = rep.genus();
  if (g < 8)
    throw GenusError("the involution chain requires g >= 8");
  auto ws = std::make_unique<Workspace>(rep);
  auto &prog = ws->program();
  Element const p1 = prog.generator("p1", parse_word("p1", g));
  Element const p2 = prog.generator("p2", parse_word("p2", g));
  Element const f1 = prog.generator("F1", parse_word(kF1, g));
  Element const R = prog.product("R = p1 p2", {p1, p2});
  ws->require_equal("chain.R", kChainAnchor, R, parse_word("R", g));
  ws->set_rotation(R);
  StandaloneChain chain;
  try {
    chain.output = run_involution_chain(*ws, p2, f1);
  } catch (VerificationFailure const &e) {
    chain.failed_claim = e.claim_id();
  }
  chain.workspace = std::move(ws);
  return chain;
}

// ---------------------------------------------------------------------------

Compiler::Compiler(Representation const &rep, GeneratingSet set)
    : _set(std::move(set)), _ws(std::make_unique<Workspace>(rep)), _ledger(_ws->program())
{
  if (rep.genus() < _set.min_genus)
    throw GenusError(to_string(_set.name) + " requires g >= " + std::to_string(_set.min_genus));
  for (auto const &[name, word] : _set.alphabet) {
    if (word.genus() != rep.genus())
      throw DomainError("alphabet and representation differ in genus");
    _gens[name] = _ws->program().generator(name, word);
  }
}

Element Compiler::gen(std::string const &name) const { return _gens.at(name); }

Element Compiler::pair(CurveId x, CurveId y)
{
  if (_ledger.contains(x, y))
    return _ledger.at(x, y);
  if (_ledger.contains(y, x))
    return _ledger.at(y, x).inv();
  throw DomainError("no witness for " + pair_name(x, y));
}

bool Compiler::alphabet_closed(Element e) const
{
  auto const &prog = _ws->program();
  return std::ranges::all_of(prog.generators_used(e), [&](int node) {
    return std::ranges::any_of(_set.alphabet,
                               [&](auto const &entry) { return entry.first == prog.name(node); });
  });
}

void Compiler::seed_ledger()
{
  if (_seeded)
    return;
  auto &ws = *_ws;
  auto &prog = ws.program();
  auto const &rep = ws.rep();
  int const g = ws.genus();
  auto w = [g](std::string_view s) { return parse_word(s, g); };
  auto const a1 = cv(CurveFamily::a, 1), a2 = cv(CurveFamily::a, 2);
  auto const b1 = cv(CurveFamily::b, 1), b2 = cv(CurveFamily::b, 2);
  auto const c1 = cv(CurveFamily::c, 1), c2 = cv(CurveFamily::c, 2);

  auto seed = [&](CurveId x, CurveId y, Element e) {
    auto const t = rep.transvection(x) * rep.inverse(rep.transvection(y));
    ws.require("seed." + x.name() + y.name(), kSeedAnchor, check_relation(ws.matrix(e), t));
    _ledger.offer(x, y, e);
  };
  // Certifies rho x rho = y and checks the alphabet entry is rho x y^-1.
  auto hypothesis = [&](std::string const &id, Word const &rho, std::string_view x,
                        std::string_view y, std::string const &symbol) {
    ConjugationCertifier certify = [&](Word const &r, Word const &xx, Word const &yy) {
      auto res = check_relation(rep, compose({r, xx, r}), yy);
      res.kind = ClaimKind::ConjugationImage;
      bool const ok = res.verified();
      ws.record("hypothesis." + id, kHypothesisAnchor, std::move(res));
      return ok;
    };
    Word built = Word::identity(g);
    try {
      built = involution_from_conjugacy(rho, w(x), w(y), certify);
    } catch (DomainError const &) {
      throw VerificationFailure("hypothesis." + id, "conjugacy hypothesis " + id + " failed");
    }
    auto const &alphabet_word =
      std::ranges::find_if(_set.alphabet, [&](auto const &e) { return e.first == symbol; })->second;
    ws.require("hypothesis." + id + ".word", kHypothesisAnchor,
               syntactic_equal(built, alphabet_word));
    ws.require("involution." + symbol, kHypothesisAnchor, check_involution(ws.matrix(gen(symbol))));
  };

  switch (_set.name) {
    case SetName::DehnLickorish:
      _rotation = gen("R");
      break;
    case SetName::FourElements:
      _rotation = gen("R");
      seed(a1, a2, gen("A1A2^-1"));
      seed(b1, b2, gen("B1B2^-1"));
      seed(c1, c2, gen("C1C2^-1"));
      break;
    case SetName::ThreeElements:
      _rotation = gen("R");
      seed(a1, a2, gen("A1A2^-1"));
      break;
    case SetName::FourInvolutions: {
      hypothesis("rho2.A1", w("p2"), "A1", "A2", "I1");
      hypothesis("rho1.A1B1C1", w("p1"), "A1 B1 C1", "A3 B3 C2", "I2");
      _rotation = prog.product("R = p1 p2", {gen("p1"), gen("p2")});
      ws.require_equal("seed.R", kSeedAnchor, _rotation, w("R"));
      Element const aa = prog.product("A1A2^-1 = p2^-1 I1", {gen("p2").inv(), gen("I1")});
      seed(a1, a2, aa);
      Element const e = prog.product("E = p1^-1 I2", {gen("p1").inv(), gen("I2")});
      ws.require_equal("seed.E", kSeedAnchor, e, w(kE));
      _gens["E"] = e;
      break;
    }
    case SetName::ThreeInvolutions: {
      hypothesis("rho3.B1A2C3", rho3_word(g), "B1 A2 C3", "B7 A6 C4", "I3");
      _rotation = prog.product("R = p1 p2", {gen("p1"), gen("p2")});
      ws.require_equal("seed.R", kSeedAnchor, _rotation, w("R"));
      ws.set_rotation(_rotation);
      Element const p3 = ws.conjugate("p3 = R^2 p1 R^-2", ws.rotation_power(2), gen("p1"));
      Element const f1 = prog.product("F1 = p3^-1 I3", {p3.inv(), gen("I3")});
      auto chain = run_involution_chain(ws, gen("p2"), f1);
      _chain = chain.steps;
      seed(a1, a2, chain.a_diff);
      seed(b1, b2, chain.b_diff);
      seed(c1, c2, chain.c_diff);
      break;
    }
  }
  ws.set_rotation(_rotation);
  _seeded = true;
}

void Compiler::saturate_family(CurveFamily f)
{
  auto &ws = *_ws;
  auto &prog = ws.program();
  int const g = ws.genus();
  auto const f1 = cv(f, 1), f2 = cv(f, 2);
  Element const seed = _ledger.at(f1, f2);

  // step[k] witnesses (f_k, f_{k+1}), indices mod g.
  std::vector<Element> step(g + 1);
  for (int k = 1; k <= g; ++k) {
    auto const x = cv(f, k), y = cv(f, k + 1);
    if (k == 1) {
      step[k] = seed;
    } else {
      Element const r = ws.rotation_power(k - 1);
      ws.require("rotation." + x.name() + y.name(), kRotationAnchor,
                 check_curve_tuple_image(ws.rep(), ws.matrix(r), {f1, f2}, {x, y}));
      step[k] = ws.conjugate(pair_name(x, y) + " = R^" + std::to_string(k - 1) + " " +
                               pair_name(f1, f2) + " R^-" + std::to_string(k - 1),
                             r, seed);
    }
    _ledger.offer(x, y, step[k]);
    _ledger.offer(y, x, step[k].inv());
  }
  for (int i = 1; i <= g; ++i) {
    Element acc = step[i];
    for (int m = 2; m < g; ++m) {
      int const j = (i + m - 1) % g + 1;
      int const prev = (i + m - 2) % g + 1;
      auto const x = cv(f, i), y = cv(f, j), mid = cv(f, prev);
      acc = prog.product(pair_name(x, y) + " = " + pair_name(x, mid) + " " + pair_name(mid, y),
                         {acc, step[prev]});
      _ledger.offer(x, y, acc);
      _ledger.offer(y, x, acc.inv());
    }
  }
}

void Compiler::saturate_rotation()
{
  if (_saturated)
    return;
  seed_ledger();
  for (auto f : {CurveFamily::a, CurveFamily::b, CurveFamily::c})
    if (_ledger.contains(cv(f, 1), cv(f, 2)))
      saturate_family(f);
  _saturated = true;
}

void Compiler::link_family(CurveFamily f)
{
  auto &prog = _ws->program();
  int const g = _ws->genus();
  int const k = _link.at(f);
  auto const f1 = cv(f, 1), ak = cv(CurveFamily::a, k);
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= g; ++j) {
      auto const x = cv(f, i), y = cv(CurveFamily::a, j);
      if (i == 1 && j == k)
        continue;
      std::vector<Element> fs;
      std::string name = pair_name(x, y) + " =";
      if (i != 1) {
        fs.push_back(pair(x, f1));
        name += " " + pair_name(x, f1);
      }
      fs.push_back(pair(f1, ak));
      name += " " + pair_name(f1, ak);
      if (j != k) {
        fs.push_back(pair(ak, y));
        name += " " + pair_name(ak, y);
      }
      Element const e = prog.product(name, std::move(fs));
      _ledger.offer(x, y, e);
      _ledger.offer(y, x, e.inv());
    }
  }
}

void Compiler::cross_family_pairs()
{
  if (_crossed)
    return;
  saturate_rotation();
  auto &ws = *_ws;
  auto &prog = ws.program();
  auto const &rep = ws.rep();
  int const g = ws.genus();
  auto const a = [&](int i) { return cv(CurveFamily::a, i); };
  auto const b = [&](int i) { return cv(CurveFamily::b, i); };
  auto const c = [&](int i) { return cv(CurveFamily::c, i); };
  auto image = [&](std::string const &id, Element f, std::vector<CurveId> from,
                   std::vector<CurveId> to) {
    ws.require("cross." + id, kCrossAnchor,
               check_curve_tuple_image(rep, ws.matrix(f), from, to));
  };
  auto offer_both = [&](CurveId x, CurveId y, Element e) {
    _ledger.offer(x, y, e);
    _ledger.offer(y, x, e.inv());
  };

  switch (_set.name) {
    case SetName::DehnLickorish:
      _crossed = true;
      return;
    case SetName::FourElements:
    case SetName::ThreeInvolutions: {
      Element const W = prog.product("A1A2^-1 B1B2^-1", {pair(a(1), a(2)), pair(b(1), b(2))});
      image("b1a3", W, {a(1), a(3)}, {b(1), a(3)});
      Element const b1a3 = ws.conjugate("(b1,a3) = W (a1,a3) W^-1", W, pair(a(1), a(3)));
      offer_both(b(1), a(3), b1a3);
      Element const b1a2 = prog.product("(b1,a2) = (b1,a3) (a3,a2)", {b1a3, pair(a(3), a(2))});
      offer_both(b(1), a(2), b1a2);
      // B1 Bg^-1 fixes a2 and leaves c1 C2^-1 free to carry b1 onto c1.
      Element const V = prog.product("B1Bg^-1 C1C2^-1", {pair(b(1), b(g)), pair(c(1), c(2))});
      image("c1a2", V, {b(1), a(2)}, {c(1), a(2)});
      Element const c1a2 = ws.conjugate("(c1,a2) = V (b1,a2) V^-1", V, b1a2);
      offer_both(c(1), a(2), c1a2);
      _link[CurveFamily::b] = 3;
      _link[CurveFamily::c] = 2;
      break;
    }
    case SetName::ThreeElements:
    case SetName::FourInvolutions: {
      Element const E = gen("E");
      Element const R = _rotation;
      image("E.a1a2", E, {a(1), a(2)}, {b(1), a(2)});
      Element const b1a2 = ws.conjugate("(b1,a2) = E (a1,a2) E^-1", E, pair(a(1), a(2)));
      offer_both(b(1), a(2), b1a2);
      image("E.b1a2", E, {b(1), a(2)}, {c(1), a(2)});
      Element const c1a2 = ws.conjugate("(c1,a2) = E (b1,a2) E^-1", E, b1a2);
      offer_both(c(1), a(2), c1a2);
      image("R.b1a2", R, {b(1), a(2)}, {b(2), a(3)});
      image("R.c1a2", R, {c(1), a(2)}, {c(2), a(3)});
      Element const b2a3 = ws.conjugate("(b2,a3) = R (b1,a2) R^-1", R, b1a2);
      Element const c2a3 = ws.conjugate("(c2,a3) = R (c1,a2) R^-1", R, c1a2);
      offer_both(b(2), a(3), b2a3);
      offer_both(c(2), a(3), c2a3);
      Element const bb = prog.product("B1B2^-1 = (b1,a2) (a2,a3) (a3,b2)",
                                      {b1a2, pair(a(2), a(3)), b2a3.inv()});
      Element const cc = prog.product("C1C2^-1 = (c1,a2) (a2,a3) (a3,c2)",
                                      {c1a2, pair(a(2), a(3)), c2a3.inv()});
      ws.require_equal("reduction.B1B2^-1", kReductionAnchor, bb, parse_word("B1 B2^-1", g));
      ws.require_equal("reduction.C1C2^-1", kReductionAnchor, cc, parse_word("C1 C2^-1", g));
      _ledger.offer(b(1), b(2), bb);
      _ledger.offer(c(1), c(2), cc);
      saturate_family(CurveFamily::b);
      saturate_family(CurveFamily::c);
      _link[CurveFamily::b] = 2;
      _link[CurveFamily::c] = 2;
      break;
    }
  }

  link_family(CurveFamily::b);
  link_family(CurveFamily::c);
  int const kb = _link.at(CurveFamily::b);
  for (int i = 1; i <= g; ++i) {
    for (int j = 1; j <= g; ++j) {
      auto const x = b(i), y = c(j), hub = a(kb);
      Element const e = prog.product(pair_name(x, y) + " = " + pair_name(x, hub) + " " +
                                       pair_name(hub, y),
                                     {pair(x, hub), pair(hub, y)});
      offer_both(x, y, e);
    }
  }
  _crossed = true;
}

CompilationResult Compiler::finish(GeneratorSymbol target, Element e)
{
  if (auto it = _results.find(target); it != _results.end())
    return it->second;
  auto &ws = *_ws;
  auto const cid = target.curve_id();
  auto r = check_relation(ws.matrix(e), ws.rep().transvection(cid));
  r.kind = ClaimKind::Generation;
  auto const &prog = ws.program();
  r.evidence["target"] = format_letter({target, +1});
  r.evidence["set"] = to_string(_set.name);
  r.evidence["length"] = prog.expanded_length(e).get_str();
  r.evidence["generator_length"] = prog.generator_length(e).get_str();
  r.evidence["program_nodes"] = std::to_string(prog.dependencies(e).size());
  r.evidence.erase("matrix");
  bool const closed = alphabet_closed(e);
  r.evidence["alphabet_closed"] = closed ? "true" : "false";
  if (!closed)
    r.status = Status::Failed;
  ws.require("generate." + format_letter({target, +1}), kGenerationAnchor, r);
  CompilationResult out{target, e, prog.expanded_length(e), prog.generator_length(e),
                        ws.trace(e), true};
  _results.emplace(target, out);
  return out;
}

CompilationResult Compiler::lantern_step()
{
  cross_family_pairs();
  auto &ws = *_ws;
  auto &prog = ws.program();
  auto const &rep = ws.rep();
  int const g = ws.genus();
  auto const target = GeneratorSymbol{SymbolKind::TwistA, 3};
  if (_set.name == SetName::DehnLickorish)
    return compile(target);
  if (_a3)
    return finish(target, *_a3);

  auto w = [g](std::string_view s) { return parse_word(s, g); };
  auto const a = [&](int i) { return cv(CurveFamily::a, i); };
  auto const b = [&](int i) { return cv(CurveFamily::b, i); };
  auto const c = [&](int i) { return cv(CurveFamily::c, i); };
  CurveId const d1{CurveFamily::d, 1}, d2{CurveFamily::d, 2};

  Element const W1 =
    prog.product("W1 = (b2,a1) (c1,a1) (a1,a2) (c2,a1)",
                 {pair(b(2), a(1)), pair(c(1), a(1)), pair(a(1), a(2)), pair(c(2), a(1))});
  ws.require_equal("lantern.W1", kLanternAnchor, W1, Representation::d1_mapping_word(g));
  ws.require("lantern.d1a1", kLanternAnchor,
             check_curve_tuple_image(rep, ws.matrix(W1), {b(2), a(1)}, {d1, a(1)}));
  Element const d1a1 = ws.conjugate("(d1,a1) = W1 (b2,a1) W1^-1", W1, pair(b(2), a(1)));
  _ledger.offer(d1, a(1), d1a1);

  Element const W2 =
    prog.product("W2 = (b3,a1) (c2,a1) (a3,a1) (b3,a1)",
                 {pair(b(3), a(1)), pair(c(2), a(1)), pair(a(3), a(1)), pair(b(3), a(1))});
  ws.require_equal("lantern.W2", kLanternAnchor, W2, Representation::d2_mapping_word(g));
  ws.require("lantern.d2a1", kLanternAnchor,
             check_curve_tuple_image(rep, ws.matrix(W2), {d1, a(1)}, {d2, a(1)}));
  Element const d2a1 = ws.conjugate("(d2,a1) = W2 (d1,a1) W2^-1", W2, d1a1);
  _ledger.offer(d2, a(1), d2a1);
  Element const d2c1 = prog.product("(d2,c1) = (d2,a1) (a1,c1)", {d2a1, pair(a(1), c(1))});
  _ledger.offer(d2, c(1), d2c1);

  ws.require("lantern.relation", kLanternAnchor,
             check_relation(rep, w("A1 C1 C2 A3"), w("A2 D1 D2")));
  ws.require("lantern.rewrite", kLanternAnchor,
             check_relation(rep, w("A2 C2^-1 D1 A1^-1 D2 C1^-1"), w("A3")));
  _a3 = prog.product("A3 = (a2,c2) (d1,a1) (d2,c1)", {pair(a(2), c(2)), d1a1, d2c1});
  return finish(target, *_a3);
}

CompilationResult Compiler::compile(GeneratorSymbol target)
{
  auto const cid = target.curve_id();
  auto const fam = family_of(target.kind);
  cross_family_pairs();
  auto &ws = *_ws;
  auto &prog = ws.program();
  if (_set.name == SetName::DehnLickorish) {
    std::string const base = format_letter({{target.kind, 1}, +1});
    if (cid.index == 1)
      return finish(target, gen(base));
    Element const r = ws.rotation_power(cid.index - 1);
    ws.require("rotation." + base + "." + cid.name(), kRotationAnchor,
               check_curve_tuple_image(ws.rep(), ws.matrix(r), {cv(fam, 1)}, {cid}));
    return finish(target, ws.conjugate(format_letter({target, +1}) + " = R^" +
                                         std::to_string(cid.index - 1) + " " + base + " R^-" +
                                         std::to_string(cid.index - 1),
                                       r, gen(base)));
  }
  auto const a3 = cv(CurveFamily::a, 3);
  if (!_a3)
    lantern_step();
  if (cid == a3)
    return finish(target, *_a3);
  Element const e = prog.product(format_letter({target, +1}) + " = " + pair_name(cid, a3) + " A3",
                                 {pair(cid, a3), *_a3});
  return finish(target, e);
}

std::vector<CompilationResult> Compiler::compile_all()
{
  cross_family_pairs();
  std::vector<CompilationResult> out;
  int const g = _ws->genus();
  for (auto k : {SymbolKind::TwistA, SymbolKind::TwistB, SymbolKind::TwistC})
    for (int i = 1; i <= g; ++i)
      out.push_back(compile({k, i}));
  if (_set.name != SetName::DehnLickorish)
    _ws->require("ledger.sound", kLedgerAnchor, check_ledger());
  return out;
}

CheckResult Compiler::check_ledger()
{
  auto &ws = *_ws;
  auto const &rep = ws.rep();
  std::size_t bad = 0;
  std::string first_bad;
  for (auto const &[key, e] : _ledger.entries()) {
    auto const t = rep.transvection(key.first) * rep.inverse(rep.transvection(key.second));
    if (!(ws.matrix(e) == t)) {
      if (bad++ == 0)
        first_bad = pair_name(key.first, key.second);
    }
  }
  nlohmann::json ev{{"level", "H1"}, {"entries", std::to_string(_ledger.size())},
                    {"unsound", std::to_string(bad)}};
  if (bad)
    ev["first_unsound"] = first_bad;
  return {ClaimKind::RelationEq, bad ? Status::Failed : Status::Verified, std::move(ev)};
}

} // namespace mcg
