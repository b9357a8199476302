#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcg
{

inline constexpr int kMinGenus = 3;

/// Base alphabet: right Dehn twists about the named curves, the rotation R
/// and the two pi-rotations rho1, rho2.
enum class SymbolKind { TwistA, TwistB, TwistC, TwistD, RotR, Rho1, Rho2 };

enum class CurveFamily { a, b, c, d };

class GenusError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument
{
public:
  ParseError(std::string const &msg, std::size_t position);
  std::size_t position() const { return _position; }

private:
  std::size_t _position;
};

/// Raised when the ambient genus cannot host an index or when two operands
/// live on different surfaces.
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

void require_genus(int genus);

struct CurveId
{
  CurveFamily family;
  int index;

  auto operator<=>(CurveId const &) const = default;

  std::string name() const;
};

/// Canonical curve id: a,b,c indices are reduced modulo g into 1..g.
CurveId curve(CurveFamily family, int index, int genus);
CurveId parse_curve(std::string_view text, int genus);

struct GeneratorSymbol
{
  SymbolKind kind;
  int index = 0; // 0 for R, rho1, rho2

  auto operator<=>(GeneratorSymbol const &) const = default;

  bool is_twist() const { return kind <= SymbolKind::TwistD; }
  CurveId curve_id() const;
};

GeneratorSymbol twist_symbol(CurveId c);

struct Letter
{
  GeneratorSymbol symbol;
  int sign = +1;

  auto operator<=>(Letter const &) const = default;

  Letter inverse() const { return {symbol, -sign}; }
};

/// A finite product of letters. The leftmost letter is applied last:
/// Word "F H" acts as F(H(x)).
class Word
{
public:
  explicit Word(int genus);
  Word(int genus, std::vector<Letter> letters);

  static Word identity(int genus) { return Word(genus); }

  int genus() const { return _genus; }
  std::vector<Letter> const &letters() const { return _letters; }
  std::size_t size() const { return _letters.size(); }
  bool empty() const { return _letters.empty(); }

  Word &operator*=(Word const &rhs);

  bool operator==(Word const &) const = default;

private:
  int _genus;
  std::vector<Letter> _letters;
};

Word parse_word(std::string_view text, int genus);
std::string format_word(Word const &w);
std::string format_letter(Letter const &l);

Word compose(Word const &u, Word const &v);
Word compose(std::initializer_list<Word> factors);
Word operator*(Word const &u, Word const &v);
Word invert(Word const &w);
Word free_reduce(Word const &w);
Word power(Word const &w, int k);

/// f w f^{-1}, optionally freely reduced.
Word conjugate(Word const &f, Word const &w, bool reduce = false);

/// Syntactic index shift on a/b/c twists, the symbolic form of R^k w R^-k.
Word rotate_shift(Word const &w, int k);

/// rho3 = R^2 rho1 R^-2, expanded.
Word rho3_word(int genus);

/// Decides whether rho x rho = y holds; supplied by the representation layer.
using ConjugationCertifier =
  std::function<bool(Word const &rho, Word const &x, Word const &y)>;

/// Returns rho x y^{-1}. Throws DomainError unless rho is one of rho1, rho2,
/// rho3 and the certifier accepts rho x rho = y.
Word involution_from_conjugacy(Word const &rho, Word const &x, Word const &y,
                        ConjugationCertifier const &certify);

} // namespace mcg
