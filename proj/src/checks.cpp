#include "mcg/checks.hpp"

#include <sstream>

namespace mcg
{

using nlohmann::json;

std::string to_string(ClaimKind k)
{
  switch (k) {
    case ClaimKind::RelationEq: return "RelationEq";
    case ClaimKind::Involution: return "Involution";
    case ClaimKind::CurveTupleImage: return "CurveTupleImage";
    case ClaimKind::ConjugationImage: return "ConjugationImage";
    default: return "Generation";
  }
}

std::string to_string(Status s)
{
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Failed: return "failed";
    default: return "skipped";
  }
}

json matrix_evidence(SymplecticMatrix const &m)
{
  return json{{"dim", std::to_string(m.matrix().dim())}, {"rows", m.matrix().to_decimal()}};
}

namespace
{

Status status_of(bool ok) { return ok ? Status::Verified : Status::Failed; }

} // namespace

CheckResult check_relation(SymplecticMatrix const &lhs, SymplecticMatrix const &rhs)
{
  bool const ok = lhs == rhs;
  json ev{{"level", "H1"}};
  if (ok) {
    ev["matrix"] = matrix_evidence(lhs);
  } else {
    ev["lhs"] = matrix_evidence(lhs);
    ev["rhs"] = matrix_evidence(rhs);
  }
  return {ClaimKind::RelationEq, status_of(ok), std::move(ev)};
}

CheckResult check_relation(Representation const &rep, Word const &u, Word const &v)
{
  auto r = check_relation(rep.word_matrix(u), rep.word_matrix(v));
  r.evidence["lhs_word"] = format_word(u);
  r.evidence["rhs_word"] = format_word(v);
  return r;
}

CheckResult check_involution(SymplecticMatrix const &m)
{
  bool const ok = (m * m).is_identity();
  json ev{{"level", "H1"}, {"note", "order two in Sp(2g,Z); necessary for order two in Mod"}};
  ev["matrix"] = matrix_evidence(m);
  return {ClaimKind::Involution, status_of(ok), std::move(ev)};
}

CheckResult check_involution(Representation const &rep, Word const &w)
{
  auto r = check_involution(rep.word_matrix(w));
  r.evidence["word"] = format_word(w);
  return r;
}

CheckResult check_curve_tuple_image(Representation const &rep, SymplecticMatrix const &f,
                                    std::vector<CurveId> const &from,
                                    std::vector<CurveId> const &to)
{
  if (from.size() != to.size())
    throw DomainError("curve tuples differ in length");
  bool ok = true;
  std::string signs;
  json images = json::array();
  for (std::size_t k = 0; k < from.size(); ++k) {
    auto const img = f * rep.curve_class(from[k]);
    auto const s = sign_relation(img, rep.curve_class(to[k]));
    if (!s) {
      ok = false;
      signs += '?';
    } else {
      signs += *s > 0 ? '+' : '-';
    }
    images.push_back(img.to_decimal());
  }
  json ev{{"level", "H1 up to sign"}, {"signs", signs}, {"images", std::move(images)}};
  std::string f_names, t_names;
  for (std::size_t k = 0; k < from.size(); ++k) {
    f_names += (k ? " " : "") + from[k].name();
    t_names += (k ? " " : "") + to[k].name();
  }
  ev["from"] = f_names;
  ev["to"] = t_names;
  return {ClaimKind::CurveTupleImage, status_of(ok), std::move(ev)};
}

CheckResult check_curve_tuple_image(Representation const &rep, Word const &f,
                                    std::vector<CurveId> const &from,
                                    std::vector<CurveId> const &to)
{
  if (from.size() != to.size())
    throw DomainError("curve tuples differ in length");
  auto r = check_curve_tuple_image(rep, rep.word_matrix(f), from, to);
  r.evidence["word"] = format_word(f);
  return r;
}

CheckResult check_conjugation_image(Representation const &rep, Word const &f, Word const &x,
                                    Word const &y)
{
  // M(f x f^-1) = M(f) M(x) M(f)^-1 by multiplicativity.
  auto const lhs = rep.word_matrix(compose({f, x, invert(f)}));
  auto const rhs = rep.word_matrix(y);
  bool const ok = lhs == rhs;
  json ev{{"level", "H1"}, {"conjugator", format_word(f)}, {"x", format_word(x)},
          {"y", format_word(y)}};
  if (ok)
    ev["matrix"] = matrix_evidence(lhs);
  return {ClaimKind::ConjugationImage, status_of(ok), std::move(ev)};
}

CheckResult check_naturality(Representation const &rep, Word const &f, CurveId c)
{
  auto const tc = twist_symbol(c);
  auto const lhs = rep.word_matrix(compose({f, Word(f.genus(), {{tc, +1}}), invert(f)}));
  auto const image = rep.apply(f, rep.curve_class(c));
  bool const ok = lhs == rep.transvection(image);
  json ev{{"level", "H1"}, {"conjugator", format_word(f)}, {"curve", c.name()},
          {"image", image.to_decimal()}};
  return {ClaimKind::ConjugationImage, status_of(ok), std::move(ev)};
}

std::vector<CurveId> parse_curves(std::string_view text, int genus)
{
  std::vector<CurveId> out;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok)
    out.push_back(parse_curve(tok, genus));
  return out;
}

} // namespace mcg
