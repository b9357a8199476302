#include "mcg/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace mcg
{

ParseError::ParseError(std::string const &msg, std::size_t position)
  : std::invalid_argument(msg + " at position " + std::to_string(position)),
    _position(position)
{}

void require_genus(int genus)
{
  if (genus < kMinGenus)
    throw GenusError("genus " + std::to_string(genus) + " < 3 unsupported");
}

namespace
{

int wrap_index(int index, int genus)
{
  int r = (index - 1) % genus;
  if (r < 0)
    r += genus;
  return r + 1;
}

char family_char(CurveFamily f)
{
  switch (f) {
    case CurveFamily::a: return 'a';
    case CurveFamily::b: return 'b';
    case CurveFamily::c: return 'c';
    default: return 'd';
  }
}

void check_symbol(GeneratorSymbol const &s, int genus)
{
  if (!s.is_twist()) {
    if (s.index != 0)
      throw DomainError("rotation symbols carry no index");
    return;
  }
  int const hi = s.kind == SymbolKind::TwistD ? 2 : genus;
  if (s.index < 1 || s.index > hi)
    throw DomainError("twist index " + std::to_string(s.index) +
                      " out of range for genus " + std::to_string(genus));
}

} // namespace

std::string CurveId::name() const
{
  return std::string(1, family_char(family)) + std::to_string(index);
}

CurveId curve(CurveFamily family, int index, int genus)
{
  require_genus(genus);
  if (family == CurveFamily::d) {
    if (index < 1 || index > 2)
      throw DomainError("curve d" + std::to_string(index) + " does not exist");
    return {family, index};
  }
  return {family, wrap_index(index, genus)};
}

CurveId parse_curve(std::string_view text, int genus)
{
  if (text.size() < 2)
    throw ParseError("bad curve name '" + std::string(text) + "'", 0);
  CurveFamily f;
  switch (text[0]) {
    case 'a': f = CurveFamily::a; break;
    case 'b': f = CurveFamily::b; break;
    case 'c': f = CurveFamily::c; break;
    case 'd': f = CurveFamily::d; break;
    default: throw ParseError("bad curve family in '" + std::string(text) + "'", 0);
  }
  int idx = 0;
  auto [ptr, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), idx);
  if (ec != std::errc() || ptr != text.data() + text.size() || idx < 1)
    throw ParseError("bad curve index in '" + std::string(text) + "'", 1);
  if (f != CurveFamily::d && idx > genus)
    throw DomainError("curve index out of range: " + std::string(text));
  return curve(f, idx, genus);
}

CurveId GeneratorSymbol::curve_id() const
{
  switch (kind) {
    case SymbolKind::TwistA: return {CurveFamily::a, index};
    case SymbolKind::TwistB: return {CurveFamily::b, index};
    case SymbolKind::TwistC: return {CurveFamily::c, index};
    case SymbolKind::TwistD: return {CurveFamily::d, index};
    default: throw DomainError("not a twist symbol");
  }
}

GeneratorSymbol twist_symbol(CurveId c)
{
  switch (c.family) {
    case CurveFamily::a: return {SymbolKind::TwistA, c.index};
    case CurveFamily::b: return {SymbolKind::TwistB, c.index};
    case CurveFamily::c: return {SymbolKind::TwistC, c.index};
    default: return {SymbolKind::TwistD, c.index};
  }
}

Word::Word(int genus) : _genus(genus) { require_genus(genus); }

Word::Word(int genus, std::vector<Letter> letters)
  : _genus(genus), _letters(std::move(letters))
{
  require_genus(genus);
  for (auto const &l : _letters) {
    if (l.sign != 1 && l.sign != -1)
      throw DomainError("letter exponent must be +1 or -1");
    check_symbol(l.symbol, genus);
  }
}

Word &Word::operator*=(Word const &rhs)
{
  if (rhs._genus != _genus)
    throw DomainError("genus mismatch in composition");
  _letters.insert(_letters.end(), rhs._letters.begin(), rhs._letters.end());
  return *this;
}

Word rho3_word(int genus)
{
  Letter const r{{SymbolKind::RotR, 0}, +1};
  Letter const p1{{SymbolKind::Rho1, 0}, +1};
  return Word(genus, {r, r, p1, r.inverse(), r.inverse()});
}

Word parse_word(std::string_view text, int genus)
{
  require_genus(genus);
  std::vector<Letter> out;
  std::size_t pos = 0;
  auto const n = text.size();
  while (pos < n) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t const start = pos;
    while (pos < n && !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    std::string_view tok = text.substr(start, pos - start);

    int sign = +1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      if (tok.substr(caret) != "^-1")
        throw ParseError("only the power ^-1 is allowed", start + caret);
      sign = -1;
      tok = tok.substr(0, caret);
    }
    if (tok.empty())
      throw ParseError("empty token", start);

    if (tok == "R") {
      out.push_back({{SymbolKind::RotR, 0}, sign});
      continue;
    }
    if (tok == "p1" || tok == "p2") {
      auto kind = tok == "p1" ? SymbolKind::Rho1 : SymbolKind::Rho2;
      out.push_back({{kind, 0}, sign});
      continue;
    }
    if (tok == "p3") {
      // rho3 is an involution macro, so its inverse expands to the same shape
      // with rho1 inverted.
      auto r3 = rho3_word(genus).letters();
      r3[2].sign = sign;
      out.insert(out.end(), r3.begin(), r3.end());
      continue;
    }

    SymbolKind kind;
    switch (tok[0]) {
      case 'A': kind = SymbolKind::TwistA; break;
      case 'B': kind = SymbolKind::TwistB; break;
      case 'C': kind = SymbolKind::TwistC; break;
      case 'D': kind = SymbolKind::TwistD; break;
      default: throw ParseError("unknown generator '" + std::string(tok) + "'", start);
    }
    if (tok.size() < 2 || tok[1] == '0' || tok[1] == '+' || tok[1] == '-')
      throw ParseError("missing or malformed index", start + 1);
    int idx = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), idx);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ParseError("malformed index", start + 1);
    int const hi = kind == SymbolKind::TwistD ? 2 : genus;
    if (idx < 1 || idx > hi)
      throw DomainError("index " + std::to_string(idx) + " of '" + std::string(tok) +
                        "' out of range for genus " + std::to_string(genus));
    out.push_back({{kind, idx}, sign});
  }
  return Word(genus, std::move(out));
}

std::string format_letter(Letter const &l)
{
  std::string s;
  switch (l.symbol.kind) {
    case SymbolKind::TwistA: s = "A" + std::to_string(l.symbol.index); break;
    case SymbolKind::TwistB: s = "B" + std::to_string(l.symbol.index); break;
    case SymbolKind::TwistC: s = "C" + std::to_string(l.symbol.index); break;
    case SymbolKind::TwistD: s = "D" + std::to_string(l.symbol.index); break;
    case SymbolKind::RotR: s = "R"; break;
    case SymbolKind::Rho1: s = "p1"; break;
    case SymbolKind::Rho2: s = "p2"; break;
  }
  if (l.sign < 0)
    s += "^-1";
  return s;
}

std::string format_word(Word const &w)
{
  std::string out;
  for (auto const &l : w.letters()) {
    if (!out.empty())
      out += ' ';
    out += format_letter(l);
  }
  return out;
}

Word compose(Word const &u, Word const &v)
{
  Word out = u;
  out *= v;
  return out;
}

Word compose(std::initializer_list<Word> factors)
{
  if (factors.size() == 0)
    throw DomainError("compose needs at least one factor");
  Word out = *factors.begin();
  for (auto it = factors.begin() + 1; it != factors.end(); ++it)
    out *= *it;
  return out;
}

Word operator*(Word const &u, Word const &v) { return compose(u, v); }

Word invert(Word const &w)
{
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(it->inverse());
  return Word(w.genus(), std::move(out));
}

Word free_reduce(Word const &w)
{
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (auto const &l : w.letters()) {
    if (!stack.empty() && stack.back() == l.inverse())
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(w.genus(), std::move(stack));
}

Word power(Word const &w, int k)
{
  Word base = k < 0 ? invert(w) : w;
  Word out(w.genus());
  for (int i = 0; i < std::abs(k); ++i)
    out *= base;
  return out;
}

Word conjugate(Word const &f, Word const &w, bool reduce)
{
  Word out = compose({f, w, invert(f)});
  return reduce ? free_reduce(out) : out;
}

Word rotate_shift(Word const &w, int k)
{
  int const g = w.genus();
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto const &l : w.letters()) {
    auto kind = l.symbol.kind;
    if (kind != SymbolKind::TwistA && kind != SymbolKind::TwistB &&
        kind != SymbolKind::TwistC)
      throw DomainError("rotate_shift is undefined on " + format_letter(l));
    out.push_back({{kind, wrap_index(l.symbol.index + k, g)}, l.sign});
  }
  return Word(g, std::move(out));
}

Word involution_from_conjugacy(Word const &rho, Word const &x, Word const &y,
                               ConjugationCertifier const &certify)
{
  int const g = rho.genus();
  if (x.genus() != g || y.genus() != g)
    throw DomainError("genus mismatch");
  bool const known = rho == parse_word("p1", g) || rho == parse_word("p2", g) ||
                     rho == rho3_word(g);
  if (!known)
    throw DomainError("'" + format_word(rho) + "' is not one of rho1, rho2, rho3");
  if (!certify || !certify(rho, x, y))
    throw DomainError("hypothesis rho x rho = y not certified for rho = '" +
                      format_word(rho) + "'");
  return compose({rho, x, invert(y)});
}

} // namespace mcg
