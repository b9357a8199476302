#include "mcg/homology.hpp"

#include <cassert>
#include <functional>
#include <sstream>

namespace mcg
{

std::string to_string(Pairing p)
{
  return p == Pairing::Standard ? "standard" : "flipped";
}

// HomologyClass ---------------------------------------------------------------

HomologyClass::HomologyClass(int genus) : _genus(genus), _coords(2 * genus) {}

HomologyClass::HomologyClass(int genus, std::vector<Integer> coords)
  : _genus(genus), _coords(std::move(coords))
{
  if (_coords.size() != static_cast<std::size_t>(2 * genus))
    throw DomainError("homology class has wrong length for genus " +
                      std::to_string(genus));
}

HomologyClass HomologyClass::basis_a(int genus, int i)
{
  HomologyClass h(genus);
  h._coords[2 * (i - 1)] = 1;
  return h;
}

HomologyClass HomologyClass::basis_b(int genus, int i)
{
  HomologyClass h(genus);
  h._coords[2 * (i - 1) + 1] = 1;
  return h;
}

bool HomologyClass::is_zero() const
{
  for (auto const &c : _coords)
    if (sgn(c) != 0)
      return false;
  return true;
}

HomologyClass HomologyClass::operator-() const
{
  HomologyClass out(*this);
  for (auto &c : out._coords)
    c = -c;
  return out;
}

HomologyClass HomologyClass::operator+(HomologyClass const &o) const
{
  if (o._genus != _genus)
    throw DomainError("genus mismatch");
  HomologyClass out(*this);
  for (std::size_t i = 0; i < _coords.size(); ++i)
    out._coords[i] += o._coords[i];
  return out;
}

HomologyClass HomologyClass::operator-(HomologyClass const &o) const { return *this + (-o); }

std::vector<std::string> HomologyClass::to_decimal() const
{
  std::vector<std::string> out;
  for (auto const &c : _coords)
    out.push_back(c.get_str());
  return out;
}

std::string HomologyClass::to_string() const
{
  std::string s = "(";
  for (std::size_t i = 0; i < _coords.size(); ++i)
    s += (i ? "," : "") + _coords[i].get_str();
  return s + ")";
}

std::optional<int> sign_relation(HomologyClass const &x, HomologyClass const &y)
{
  if (x == y)
    return +1;
  if (x == -y)
    return -1;
  return std::nullopt;
}

// SymplecticMatrix ------------------------------------------------------------

IntMatrix intersection_form(int genus, Pairing pairing)
{
  int const s = pairing == Pairing::Standard ? 1 : -1;
  IntMatrix j(2 * genus);
  for (int k = 0; k < genus; ++k) {
    j(2 * k, 2 * k + 1) = s;
    j(2 * k + 1, 2 * k) = -s;
  }
  return j;
}

bool is_symplectic(IntMatrix const &m, IntMatrix const &form)
{
  return m.transpose() * form * m == form;
}

SymplecticMatrix SymplecticMatrix::identity(int genus)
{
  return SymplecticMatrix(genus, IntMatrix::identity(2 * genus));
}

SymplecticMatrix SymplecticMatrix::checked(int genus, IntMatrix m, IntMatrix const &form)
{
  if (m.dim() != static_cast<std::size_t>(2 * genus) || !is_symplectic(m, form))
    throw DomainError("matrix does not preserve the intersection form");
  return SymplecticMatrix(genus, std::move(m));
}

SymplecticMatrix SymplecticMatrix::operator*(SymplecticMatrix const &o) const
{
  if (o._genus != _genus)
    throw DomainError("genus mismatch");
  return SymplecticMatrix(_genus, _m * o._m);
}

HomologyClass SymplecticMatrix::operator*(HomologyClass const &v) const
{
  if (v.genus() != _genus)
    throw DomainError("genus mismatch");
  return HomologyClass(_genus, _m * v.coords());
}

SymplecticMatrix SymplecticMatrix::inverse(IntMatrix const &form) const
{
  // J^{-1} = -J for either convention.
  IntMatrix jinv = form;
  for (std::size_t i = 0; i < jinv.dim(); ++i)
    for (std::size_t k = 0; k < jinv.dim(); ++k)
      jinv(i, k) = -jinv(i, k);
  return SymplecticMatrix(_genus, jinv * _m.transpose() * form);
}

IntMatrix SignedPermutation::matrix() const
{
  IntMatrix m(target.size());
  for (std::size_t j = 0; j < target.size(); ++j)
    m(target[j], j) = sign[j];
  return m;
}

// Sign models -----------------------------------------------------------------

namespace
{

int wrap(int k, int g)
{
  int r = (k - 1) % g;
  return (r < 0 ? r + g : r) + 1;
}

char sign_char(int s) { return s > 0 ? '+' : '-'; }

} // namespace

std::string SignModel::rho1_pattern() const
{
  std::string s;
  for (int v : rho1_signs)
    s += sign_char(v);
  return s + "|" + sign_char(wrap_sign_a) + sign_char(wrap_sign_b);
}

std::string SignModel::c_pattern() const
{
  std::string s;
  for (int v : c_signs)
    s += sign_char(v);
  return s;
}

SignedPermutation rho1_permutation(int genus, std::vector<int> const &signs)
{
  SignedPermutation p;
  p.target.resize(2 * genus);
  p.sign = signs;
  for (int k = 1; k <= genus; ++k) {
    int const img = wrap(4 - k, genus);
    p.target[2 * (k - 1)] = 2 * (img - 1);
    p.target[2 * (k - 1) + 1] = 2 * (img - 1) + 1;
  }
  return p;
}

SignedPermutation rotation_permutation(int genus, int wrap_a, int wrap_b)
{
  SignedPermutation p;
  p.target.resize(2 * genus);
  p.sign.assign(2 * genus, 1);
  for (int k = 1; k <= genus; ++k) {
    int const img = wrap(k + 1, genus);
    p.target[2 * (k - 1)] = 2 * (img - 1);
    p.target[2 * (k - 1) + 1] = 2 * (img - 1) + 1;
  }
  p.sign[2 * (genus - 1)] = wrap_a;
  p.sign[2 * (genus - 1) + 1] = wrap_b;
  return p;
}

namespace
{

HomologyClass c_class(int g, int i, int sign)
{
  auto v = HomologyClass::basis_a(g, i) - HomologyClass::basis_a(g, wrap(i + 1, g));
  return sign > 0 ? v : -v;
}

bool unsigned_image(IntMatrix const &m, HomologyClass const &from, HomologyClass const &to)
{
  HomologyClass img(from.genus(), m * from.coords());
  return sign_relation(img, to).has_value();
}

bool involution_constraints_hold(int g, IntMatrix const &form, SignModel const &sm)
{
  IntMatrix const r1 = rho1_permutation(g, sm.rho1_signs).matrix();
  IntMatrix const rot = rotation_permutation(g, sm.wrap_sign_a, sm.wrap_sign_b).matrix();
  IntMatrix const id = IntMatrix::identity(2 * g);

  if (!is_symplectic(r1, form) || !is_symplectic(rot, form))
    return false;
  if (!(r1 * r1).is_identity())
    return false;
  IntMatrix rg = id;
  for (int i = 0; i < g; ++i)
    rg = rot * rg;
  if (!rg.is_identity())
    return false;
  // rho2 is induced as rho1^{-1} R; rho1 is a signed permutation, so its
  // inverse is its transpose.
  IntMatrix const r2 = r1.transpose() * rot;
  if (!(r2 * r2).is_identity() || !(r1 * r2 == rot))
    return false;

  auto const a = [g](int i) { return HomologyClass::basis_a(g, i); };
  auto const b = [g](int i) { return HomologyClass::basis_b(g, i); };
  return unsigned_image(r1, a(1), a(3)) && unsigned_image(r1, b(1), b(3)) &&
         unsigned_image(r1, c_class(g, 1, sm.c_signs[0]), c_class(g, 2, sm.c_signs[1])) &&
         unsigned_image(r2, a(1), a(2));
}

} // namespace

SignSolution solve_sign_models(int genus, Pairing pairing)
{
  require_genus(genus);
  int const n = 2 * genus;
  IntMatrix const form = intersection_form(genus, pairing);
  auto const partner = rho1_permutation(genus, std::vector<int>(n, 1)).target;

  SignSolution sol;
  SignModel cur;
  cur.rho1_signs.assign(n, 0);
  cur.c_signs.assign(genus, 1);

  // Depth-first in lexicographic order (+ before -). A handle's a- and
  // b-signs must agree for the image pair to keep <a,b> = 1, and paired
  // vectors of the involution must carry equal signs; both prune early.
  std::function<void(int)> dfs = [&](int pos) {
    if (pos == n) {
      for (int wa : {1, -1})
        for (int wb : {1, -1}) {
          cur.wrap_sign_a = wa;
          cur.wrap_sign_b = wb;
          if (involution_constraints_hold(genus, form, cur))
            sol.rho_models.push_back(cur);
        }
      return;
    }
    for (int s : {1, -1}) {
      cur.rho1_signs[pos] = s;
      bool ok = true;
      if (pos % 2 == 1 && cur.rho1_signs[pos - 1] != s)
        ok = false;
      int const q = partner[pos];
      if (ok && q < pos && cur.rho1_signs[q] * s != 1)
        ok = false;
      if (ok)
        dfs(pos + 1);
      cur.rho1_signs[pos] = 0;
    }
  };
  dfs(0);

  if (sol.rho_models.empty())
    throw DomainError("no sign model satisfies the involution constraints at genus " +
                      std::to_string(genus));

  sol.chosen = sol.rho_models.front();

  // c-signs enter only through transvections and unsigned images, both of
  // which are blind to c -> -c; every choice is admissible once the lantern
  // holds for the chosen one.
  Representation rep(genus, pairing, sol.chosen);
  for (auto const &c : rep.named_curves()) {
    auto const &v = rep.curve_class(c);
    if (!(rep.transvection(v) == rep.transvection(-v)))
      throw DomainError("transvection is not sign-blind on " + c.name());
  }
  if (!(rep.word_matrix(parse_word("A1 C1 C2 A3", genus)) ==
        rep.word_matrix(parse_word("A2 D1 D2", genus))))
    throw DomainError("lantern identity fails for every sign model at genus " +
                      std::to_string(genus));
  mpz_ui_pow_ui(sol.c_model_count.get_mpz_t(), 2, genus);
  return sol;
}

// Representation --------------------------------------------------------------

Word Representation::d1_mapping_word(int genus)
{
  return parse_word("B2 A1^-1 C1 A1^-1 A1 A2^-1 C2 A1^-1", genus);
}

Word Representation::d2_mapping_word(int genus)
{
  return parse_word("B3 A1^-1 C2 A1^-1 A3 A1^-1 B3 A1^-1", genus);
}

Representation::Representation(int genus, Pairing pairing)
  : Representation(genus, pairing, solve_sign_models(genus, pairing).chosen)
{}

Representation::Representation(int genus, Pairing pairing, SignModel model)
  : _genus(genus), _pairing(pairing), _form(intersection_form(genus, pairing)),
    _model(std::move(model))
{
  require_genus(genus);
  if (_model.rho1_signs.size() != static_cast<std::size_t>(2 * genus) ||
      _model.c_signs.size() != static_cast<std::size_t>(genus))
    throw DomainError("sign model has wrong size for genus " + std::to_string(genus));
  build_curves();
  build_involutions();
  build_letters();
}

Integer Representation::pairing(HomologyClass const &x, HomologyClass const &y) const
{
  Integer s = 0;
  auto const &xc = x.coords();
  auto const &yc = y.coords();
  int const sign = _pairing == Pairing::Standard ? 1 : -1;
  for (int k = 0; k < _genus; ++k) {
    s += xc[2 * k] * yc[2 * k + 1];
    s -= xc[2 * k + 1] * yc[2 * k];
  }
  return sign * s;
}

std::vector<CurveId> Representation::named_curves() const
{
  std::vector<CurveId> out;
  for (auto const &[id, cls] : _curves)
    out.push_back(id);
  return out;
}

HomologyClass const &Representation::curve_class(CurveId c) const
{
  auto it = _curves.find(c);
  if (it == _curves.end())
    throw DomainError("unknown curve " + c.name() + " at genus " + std::to_string(_genus));
  return it->second;
}

HomologyClass Representation::apply_letter(Letter const &l, HomologyClass const &x) const
{
  auto const &m = letter_matrix(l);
  return m * x;
}

void Representation::build_curves()
{
  int const g = _genus;
  for (int i = 1; i <= g; ++i) {
    _curves.emplace(CurveId{CurveFamily::a, i}, HomologyClass::basis_a(g, i));
    _curves.emplace(CurveId{CurveFamily::b, i}, HomologyClass::basis_b(g, i));
    _curves.emplace(CurveId{CurveFamily::c, i}, c_class(g, i, _model.c_signs[i - 1]));
  }

  // d-classes come from pushing b_2 through the two mapping words, one
  // twist at a time (the words only use a, b, c twists).
  auto push = [this, g](Word const &w, HomologyClass x) {
    auto const &ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
      auto const &c = curve_class(it->symbol.curve_id());
      Integer k = pairing(x, c) * it->sign;
      x = x + HomologyClass(g, [&] {
            auto v = c.coords();
            for (auto &e : v)
              e *= k;
            return v;
          }());
    }
    return x;
  };
  auto d1 = push(d1_mapping_word(g), HomologyClass::basis_b(g, 2));
  auto d2 = push(d2_mapping_word(g), d1);
  _curves.emplace(CurveId{CurveFamily::d, 1}, d1);
  _curves.emplace(CurveId{CurveFamily::d, 2}, d2);
}

void Representation::build_involutions()
{
  auto r1 = rho1_permutation(_genus, _model.rho1_signs).matrix();
  auto rot = rotation_permutation(_genus, _model.wrap_sign_a, _model.wrap_sign_b).matrix();
  auto r2 = r1.transpose() * rot;
  _involutions = InvolutionModel{
    SymplecticMatrix::checked(_genus, std::move(r1), _form),
    SymplecticMatrix::checked(_genus, std::move(r2), _form),
    SymplecticMatrix::checked(_genus, std::move(rot), _form),
    _model,
  };
}

SymplecticMatrix Representation::transvection(HomologyClass const &c) const
{
  if (c.genus() != _genus)
    throw DomainError("transvection: dimension mismatch");
  auto const n = static_cast<std::size_t>(2 * _genus);
  // T = I + c (Jc)^T, since <x,c> = x^T J c = (J c) . x
  auto const jc = _form * c.coords();
  IntMatrix t = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(c.coords()[i]) == 0)
      continue;
    for (std::size_t j = 0; j < n; ++j)
      t(i, j) += c.coords()[i] * jc[j];
  }
  return SymplecticMatrix(_genus, std::move(t));
}

void Representation::build_letters()
{
  auto add = [this](GeneratorSymbol s, SymplecticMatrix m) {
    auto inv = m.inverse(_form);
    _letters.emplace(Letter{s, +1}, std::move(m));
    _letters.emplace(Letter{s, -1}, std::move(inv));
  };
  for (auto const &[id, cls] : _curves)
    add(twist_symbol(id), transvection(cls));
  add({SymbolKind::RotR, 0}, _involutions->rotation);
  add({SymbolKind::Rho1, 0}, _involutions->rho1);
  add({SymbolKind::Rho2, 0}, _involutions->rho2);
}

SymplecticMatrix const &Representation::letter_matrix(Letter const &l) const
{
  auto it = _letters.find(l);
  if (it == _letters.end())
    throw DomainError("letter " + format_letter(l) + " invalid at genus " +
                      std::to_string(_genus));
  return it->second;
}

void Representation::left_multiply(Letter const &l, IntMatrix &x) const
{
  auto const n = x.dim();
  if (l.symbol.is_twist()) {
    // T^{+-1} X = X +- c ((Jc)^T X)
    auto const &c = curve_class(l.symbol.curve_id()).coords();
    auto const jc = _form * c;
    std::vector<Integer> row(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(jc[k]) == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(x(k, j)) != 0)
          mpz_addmul(row[j].get_mpz_t(), jc[k].get_mpz_t(), x(k, j).get_mpz_t());
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(c[i]) == 0)
        continue;
      Integer const ci = c[i] * l.sign;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(row[j]) != 0)
          mpz_addmul(x(i, j).get_mpz_t(), ci.get_mpz_t(), row[j].get_mpz_t());
    }
    return;
  }
  // Rotations are signed permutations: each column of the letter matrix has
  // exactly one nonzero entry.
  auto const &m = letter_matrix(l).matrix();
  IntMatrix out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(m(i, j)) != 0) {
        for (std::size_t col = 0; col < n; ++col)
          out(i, col) = m(i, j) * x(j, col);
        break;
      }
  x = std::move(out);
}

SymplecticMatrix Representation::word_matrix(Word const &w) const
{
  if (w.genus() != _genus)
    throw DomainError("word genus " + std::to_string(w.genus()) +
                      " does not match representation genus " + std::to_string(_genus));
  IntMatrix x = IntMatrix::identity(2 * _genus);
  auto const &ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it)
    left_multiply(*it, x);
  return SymplecticMatrix(_genus, std::move(x));
}

HomologyClass Representation::apply(Word const &w, HomologyClass const &x) const
{
  HomologyClass v = x;
  auto const &ls = w.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it)
    v = apply_letter(*it, v);
  return v;
}

bool Representation::is_symplectic(SymplecticMatrix const &m) const
{
  return mcg::is_symplectic(m.matrix(), _form);
}

} // namespace mcg
