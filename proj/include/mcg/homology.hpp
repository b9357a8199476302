#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcg/integer_matrix.hpp"
#include "mcg/word.hpp"

namespace mcg
{

/// Sign of <a_i, b_i>. Flipped is the mirror convention; every twist then
/// evaluates to the inverse transvection.
enum class Pairing { Standard, Flipped };

std::string to_string(Pairing p);

/// Integer vector in the ordered basis (a_1, b_1, a_2, b_2, ..., a_g, b_g).
class HomologyClass
{
public:
  explicit HomologyClass(int genus);
  HomologyClass(int genus, std::vector<Integer> coords);

  static HomologyClass basis_a(int genus, int i);
  static HomologyClass basis_b(int genus, int i);

  int genus() const { return _genus; }
  std::size_t dim() const { return _coords.size(); }
  std::vector<Integer> const &coords() const { return _coords; }
  bool is_zero() const;

  HomologyClass operator-() const;
  HomologyClass operator+(HomologyClass const &o) const;
  HomologyClass operator-(HomologyClass const &o) const;
  bool operator==(HomologyClass const &o) const = default;

  std::vector<std::string> to_decimal() const;
  std::string to_string() const;

private:
  int _genus;
  std::vector<Integer> _coords;
};

/// +1 if x == y, -1 if x == -y, nullopt otherwise.
std::optional<int> sign_relation(HomologyClass const &x, HomologyClass const &y);

/// An exact 2g x 2g integer matrix known to preserve the intersection form.
/// Only products and inverses of such matrices are constructible outside of
/// `checked`.
class SymplecticMatrix
{
public:
  static SymplecticMatrix identity(int genus);
  /// Throws DomainError if m^T J m != J.
  static SymplecticMatrix checked(int genus, IntMatrix m, IntMatrix const &form);

  int genus() const { return _genus; }
  IntMatrix const &matrix() const { return _m; }
  bool is_identity() const { return _m.is_identity(); }

  SymplecticMatrix operator*(SymplecticMatrix const &o) const;
  HomologyClass operator*(HomologyClass const &v) const;
  bool operator==(SymplecticMatrix const &o) const { return _m == o._m; }

  /// J^{-1} M^T J.
  SymplecticMatrix inverse(IntMatrix const &form) const;

private:
  friend class Representation;
  SymplecticMatrix(int genus, IntMatrix m) : _genus(genus), _m(std::move(m)) {}

  int _genus;
  IntMatrix _m;
};

/// Block-diagonal intersection form for the given convention.
IntMatrix intersection_form(int genus, Pairing pairing);
bool is_symplectic(IntMatrix const &m, IntMatrix const &form);

/// Signed permutation of the basis: e_j -> sign[j] * e_{target[j]}.
struct SignedPermutation
{
  std::vector<int> target;
  std::vector<int> sign;

  IntMatrix matrix() const;
};

/// The +/- choices that fix rho1, R and the c-classes.
struct SignModel
{
  std::vector<int> rho1_signs; // per basis vector, length 2g
  int wrap_sign_a = +1;        // R(a_g) = wrap_sign_a * a_1
  int wrap_sign_b = +1;
  std::vector<int> c_signs; // [c_i] = c_signs[i] * ([a_i] - [a_{i+1}])

  bool operator==(SignModel const &) const = default;

  std::string rho1_pattern() const;
  std::string c_pattern() const;
};

struct InvolutionModel
{
  SymplecticMatrix rho1;
  SymplecticMatrix rho2;
  SymplecticMatrix rotation;
  SignModel signs;
};

struct SignSolution
{
  std::vector<SignModel> rho_models; // every satisfying rho1/R assignment, lex order
  Integer c_model_count;             // c-sign choices compatible with each rho model
  SignModel chosen;                  // lexicographically least
};

/// Exhaustive search over the signs of rho1, the wrap-around of R and the
/// c-classes, subject to rho1^2 = rho2^2 = 1, rho1 rho2 = R, R^g = 1,
/// symplecticity, the unsigned images rho1: a1->a3, b1->b3, c1->c2,
/// rho2: a1->a2, and the lantern identity. Throws DomainError if nothing
/// satisfies them.
SignSolution solve_sign_models(int genus, Pairing pairing = Pairing::Standard);

/// Exact symplectic representation of the twist / rotation alphabet at a
/// fixed genus and pairing convention.
class Representation
{
public:
  /// Runs the sign solver and adopts its chosen model.
  explicit Representation(int genus, Pairing pairing = Pairing::Standard);
  Representation(int genus, Pairing pairing, SignModel model);

  int genus() const { return _genus; }
  Pairing pairing_convention() const { return _pairing; }
  IntMatrix const &form() const { return _form; }
  SignModel const &sign_model() const { return _model; }

  Integer pairing(HomologyClass const &x, HomologyClass const &y) const;

  HomologyClass const &curve_class(CurveId c) const;
  std::vector<CurveId> named_curves() const;

  /// Matrix of x -> x + <x,c> c.
  SymplecticMatrix transvection(HomologyClass const &c) const;
  SymplecticMatrix transvection(CurveId c) const { return transvection(curve_class(c)); }

  InvolutionModel const &involutions() const { return *_involutions; }

  SymplecticMatrix const &letter_matrix(Letter const &l) const;
  /// M(fh) = M(f) M(h) on column vectors.
  SymplecticMatrix word_matrix(Word const &w) const;
  HomologyClass apply(Word const &w, HomologyClass const &x) const;
  HomologyClass apply(SymplecticMatrix const &m, HomologyClass const &x) const { return m * x; }

  SymplecticMatrix inverse(SymplecticMatrix const &m) const { return m.inverse(_form); }
  bool is_symplectic(SymplecticMatrix const &m) const;

  /// Words whose images define [d_1] and [d_2]: [d_1] = M(w1)[b_2],
  /// [d_2] = M(w2)[d_1].
  static Word d1_mapping_word(int genus);
  static Word d2_mapping_word(int genus);

private:
  void build_curves();
  void build_involutions();
  void build_letters();
  void left_multiply(Letter const &l, IntMatrix &x) const;
  HomologyClass apply_letter(Letter const &l, HomologyClass const &x) const;

  int _genus;
  Pairing _pairing;
  IntMatrix _form;
  SignModel _model;
  std::map<CurveId, HomologyClass> _curves;
  std::optional<InvolutionModel> _involutions;
  std::map<Letter, SymplecticMatrix> _letters;
};

/// Signed permutation of handles k -> 4-k (mod g) with per-vector signs.
SignedPermutation rho1_permutation(int genus, std::vector<int> const &signs);
/// Handle shift k -> k+1 (mod g), + signs except at the wrap-around.
SignedPermutation rotation_permutation(int genus, int wrap_a, int wrap_b);

} // namespace mcg
