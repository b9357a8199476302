#include <catch_amalgamated.hpp>

#include "mcg/word.hpp"

using namespace mcg;

namespace
{

Letter L(SymbolKind k, int i, int s) { return {{k, i}, s}; }

} // namespace

TEST_CASE("parse_word maps tokens left to right", "[word]")
{
  auto w = parse_word("A1 A2^-1", 3);
  REQUIRE(w.size() == 2);
  CHECK(w.letters()[0] == L(SymbolKind::TwistA, 1, +1));
  CHECK(w.letters()[1] == L(SymbolKind::TwistA, 2, -1));

  CHECK(parse_word("", 8).empty());
  CHECK(parse_word("   ", 8) == Word::identity(8));

  auto f1 = parse_word("B1 A2 C3 C4^-1 A6^-1 B7^-1", 8);
  REQUIRE(f1.size() == 6);
  CHECK(f1.letters()[3] == L(SymbolKind::TwistC, 4, -1));
  CHECK(format_word(f1) == "B1 A2 C3 C4^-1 A6^-1 B7^-1");
}

TEST_CASE("parse_word rejects malformed input", "[word]")
{
  CHECK_THROWS_AS(parse_word("A1", 2), GenusError);
  CHECK_THROWS_AS(parse_word("A4", 3), DomainError);
  CHECK_THROWS_AS(parse_word("D3", 8), DomainError);
  CHECK_THROWS_AS(parse_word("A0", 8), ParseError);
  CHECK_THROWS_AS(parse_word("X1", 8), ParseError);
  CHECK_THROWS_AS(parse_word("A", 8), ParseError);
  CHECK_THROWS_AS(parse_word("A1^2", 8), ParseError);
  CHECK_THROWS_AS(parse_word("A1x", 8), ParseError);
  CHECK_THROWS_AS(parse_word("p4", 8), ParseError);

  try {
    parse_word("A1  Q2", 3);
    FAIL("expected a parse error");
  } catch (ParseError const &e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("p3 expands to R R p1 R^-1 R^-1", "[word]")
{
  CHECK(format_word(parse_word("p3", 8)) == "R R p1 R^-1 R^-1");
  CHECK(format_word(parse_word("p3^-1", 8)) == "R R p1^-1 R^-1 R^-1");
  CHECK(parse_word("p3", 8) == rho3_word(8));
}

TEST_CASE("compose concatenates without reduction", "[word]")
{
  auto w = parse_word("B1 C2", 3);
  CHECK(compose(Word::identity(3), w) == w);
  CHECK(compose(w, Word::identity(3)) == w);

  auto u = compose(parse_word("A1", 3), parse_word("A1^-1", 3));
  CHECK(format_word(u) == "A1 A1^-1");

  auto f1 = parse_word("B1 A2 C3 C4^-1 A6^-1 B7^-1", 8);
  auto f2 = parse_word("B2 A3 C4 C5^-1 A7^-1 B8^-1", 8);
  auto f21 = compose(f2, f1);
  CHECK(f21.size() == 12);
  CHECK(format_word(f21) ==
        "B2 A3 C4 C5^-1 A7^-1 B8^-1 B1 A2 C3 C4^-1 A6^-1 B7^-1");

  CHECK_THROWS_AS(compose(parse_word("A1", 3), parse_word("A1", 4)), DomainError);
}

TEST_CASE("invert reverses and flips signs", "[word]")
{
  CHECK(invert(Word::identity(5)).empty());
  CHECK(format_word(invert(parse_word("A1 B2^-1", 3))) == "B2 A1^-1");
  CHECK(format_word(invert(parse_word("B1 A2 C3 C4^-1 A6^-1 B7^-1", 8))) ==
        "B7 A6 C4 C3^-1 A2^-1 B1^-1");
}

TEST_CASE("free_reduce cancels adjacent inverse pairs", "[word]")
{
  CHECK(free_reduce(parse_word("A1 A1^-1", 3)).empty());
  CHECK(format_word(free_reduce(parse_word("A1 B1 B1^-1 A2", 3))) == "A1 A2");
  CHECK(format_word(free_reduce(parse_word("A1 B1 C1 C1^-1 B1^-1 A2", 3))) == "A1 A2");
  CHECK(format_word(free_reduce(parse_word("A1 A1", 3))) == "A1 A1");
}

TEST_CASE("conjugate builds f w f^-1", "[word]")
{
  int const g = 8;
  auto const r = parse_word("R", g);
  auto f1 = parse_word("B1 A2 C3 C4^-1 A6^-1 B7^-1", g);
  CHECK(format_word(conjugate(r, f1)) ==
        "R B1 A2 C3 C4^-1 A6^-1 B7^-1 R^-1");
  CHECK(conjugate(Word::identity(g), f1) == f1);
  CHECK(conjugate(Word::identity(g), f1, true) == f1);
  CHECK_THROWS_AS(conjugate(parse_word("R", 3), f1), DomainError);
}

TEST_CASE("rotate_shift shifts indices modulo g", "[word]")
{
  CHECK(format_word(rotate_shift(parse_word("A1", 3), 1)) == "A2");
  CHECK(format_word(rotate_shift(parse_word("B1 A2 C3 C4^-1 A6^-1 B7^-1", 8), 1)) ==
        "B2 A3 C4 C5^-1 A7^-1 B8^-1");
  CHECK(format_word(rotate_shift(parse_word("C3", 5), 5)) == "C3");
  CHECK(format_word(rotate_shift(parse_word("A3 B1", 3), 1)) == "A1 B2");
  CHECK(format_word(rotate_shift(parse_word("A1", 4), -1)) == "A4");

  CHECK_THROWS_AS(rotate_shift(parse_word("R", 3), 1), DomainError);
  CHECK_THROWS_AS(rotate_shift(parse_word("p1", 3), 1), DomainError);
  CHECK_THROWS_AS(rotate_shift(parse_word("D1", 3), 1), DomainError);
}

TEST_CASE("involution_from_conjugacy needs a certified hypothesis", "[word]")
{
  auto yes = [](Word const &, Word const &, Word const &) { return true; };
  auto no = [](Word const &, Word const &, Word const &) { return false; };

  auto w = involution_from_conjugacy(parse_word("p2", 3), parse_word("A1", 3),
                                     parse_word("A2", 3), yes);
  CHECK(format_word(w) == "p2 A1 A2^-1");

  auto w2 = involution_from_conjugacy(parse_word("p1", 3), parse_word("A1 B1 C1", 3),
                                      parse_word("A3 B3 C2", 3), yes);
  CHECK(format_word(w2) == "p1 A1 B1 C1 C2^-1 B3^-1 A3^-1");

  auto w3 = involution_from_conjugacy(rho3_word(8), parse_word("B1 A2 C3", 8),
                                      parse_word("B7 A6 C4", 8), yes);
  CHECK(format_word(w3) == "R R p1 R^-1 R^-1 B1 A2 C3 C4^-1 A6^-1 B7^-1");

  CHECK_THROWS_AS(involution_from_conjugacy(parse_word("p2", 3), parse_word("A1", 3),
                                            parse_word("A2", 3), no),
                  DomainError);
  CHECK_THROWS_AS(involution_from_conjugacy(parse_word("R", 3), parse_word("A1", 3),
                                            parse_word("A2", 3), yes),
                  DomainError);
}

TEST_CASE("curve ids wrap modulo g", "[word]")
{
  CHECK(curve(CurveFamily::a, 4, 3) == CurveId{CurveFamily::a, 1});
  CHECK(curve(CurveFamily::c, 0, 3) == CurveId{CurveFamily::c, 3});
  CHECK_THROWS_AS(curve(CurveFamily::d, 3, 5), DomainError);
  CHECK(parse_curve("b7", 8) == CurveId{CurveFamily::b, 7});
  CHECK(parse_curve("d2", 3).name() == "d2");
  CHECK_THROWS(parse_curve("b9", 8));
  CHECK_THROWS(parse_curve("x1", 8));
}
