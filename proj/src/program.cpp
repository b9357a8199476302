#include "mcg/program.hpp"

#include <algorithm>
#include <sstream>

namespace mcg
{

Program::Program(int genus) : _genus(genus) { require_genus(genus); }

Element Program::generator(std::string name, Word base)
{
  if (base.genus() != _genus)
    throw DomainError("generator word has genus " + std::to_string(base.genus()));
  Node n;
  n.name = std::move(name);
  n.generator = static_cast<int>(_generators.size());
  n.base_length = static_cast<unsigned long>(base.size());
  n.gen_length = 1;
  n.base = std::move(base);
  int const id = static_cast<int>(_nodes.size());
  _nodes.push_back(std::move(n));
  _generators.push_back(id);
  return {id, +1};
}

Element Program::product(std::string name, std::vector<Element> factors)
{
  Node n;
  n.name = std::move(name);
  n.base_length = 0;
  n.gen_length = 0;
  for (auto const &f : factors) {
    if (f.node < 0 || f.node >= static_cast<int>(_nodes.size()))
      throw DomainError("product refers to an undefined node");
    n.base_length += _nodes[f.node].base_length;
    n.gen_length += _nodes[f.node].gen_length;
  }
  n.factors = std::move(factors);
  _nodes.push_back(std::move(n));
  return {static_cast<int>(_nodes.size()) - 1, +1};
}

Element Program::conjugate(std::string name, Element f, Element x)
{
  return product(std::move(name), {f, x, f.inv()});
}

Element Program::power(std::string name, Element x, int k)
{
  if (k < 0)
    return power(std::move(name), x.inv(), -k);
  if (k == 0)
    return product(std::move(name), {});
  if (k == 1)
    return product(std::move(name), {x});
  auto const half = power(name + "/2", x, k / 2);
  if (k % 2 == 0)
    return product(std::move(name), {half, half});
  return product(std::move(name), {half, half, x});
}

void Program::expand_into(Element e, std::vector<Element> &out) const
{
  auto const &n = _nodes[e.node];
  if (n.generator >= 0) {
    out.push_back(e);
    return;
  }
  if (e.sign > 0) {
    for (auto const &f : n.factors)
      expand_into(f, out);
  } else {
    for (auto it = n.factors.rbegin(); it != n.factors.rend(); ++it)
      expand_into(it->inv(), out);
  }
}

std::vector<Element> Program::expand_generators(Element e, std::size_t limit) const
{
  if (generator_length(e) > static_cast<unsigned long>(limit))
    throw DomainError("expansion has " + generator_length(e).get_str() +
                      " generator letters, above the limit " + std::to_string(limit));
  std::vector<Element> out;
  expand_into(e, out);
  return out;
}

Word Program::expand(Element e, std::size_t limit) const
{
  if (expanded_length(e) > static_cast<unsigned long>(limit))
    throw DomainError("expansion has " + expanded_length(e).get_str() +
                      " letters, above the limit " + std::to_string(limit));
  std::vector<Element> gens;
  expand_into(e, gens);
  std::vector<Letter> letters;
  letters.reserve(expanded_length(e).get_ui());
  for (auto const &g : gens) {
    auto const &w = _nodes[g.node].base;
    if (g.sign > 0) {
      letters.insert(letters.end(), w.letters().begin(), w.letters().end());
    } else {
      for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
        letters.push_back(it->inverse());
    }
  }
  return Word(_genus, std::move(letters));
}

std::string Program::format_generators(Element e, std::size_t limit) const
{
  std::string out;
  for (auto const &g : expand_generators(e, limit)) {
    if (!out.empty())
      out += ' ';
    out += _nodes[g.node].name;
    if (g.sign < 0)
      out += "^-1";
  }
  return out;
}

std::vector<int> Program::dependencies(Element e) const
{
  std::vector<char> seen(_nodes.size(), 0);
  seen[e.node] = 1;
  // Factors always precede their product, so one backward sweep suffices.
  for (int i = e.node; i >= 0; --i) {
    if (!seen[i])
      continue;
    for (auto const &f : _nodes[i].factors)
      seen[f.node] = 1;
  }
  std::vector<int> out;
  for (int i = 0; i <= e.node; ++i)
    if (seen[i])
      out.push_back(i);
  return out;
}

std::vector<int> Program::generators_used(Element e) const
{
  std::vector<int> out;
  for (int i : dependencies(e))
    if (_nodes[i].generator >= 0)
      out.push_back(i);
  return out;
}

std::string Program::listing(Element e) const
{
  std::ostringstream os;
  auto ref = [this](Element x) {
    return "%" + std::to_string(x.node) + (x.sign < 0 ? "^-1" : "");
  };
  for (int i : dependencies(e)) {
    auto const &n = _nodes[i];
    os << '%' << i << " = ";
    if (n.generator >= 0) {
      os << n.name << "  [" << format_word(n.base) << "]";
    } else {
      if (n.factors.empty())
        os << "1";
      for (std::size_t k = 0; k < n.factors.size(); ++k)
        os << (k ? " " : "") << ref(n.factors[k]);
      os << "  ; " << n.name;
    }
    os << '\n';
  }
  if (e.sign < 0)
    os << "result = %" << e.node << "^-1\n";
  else
    os << "result = %" << e.node << '\n';
  return os.str();
}

ProgramEvaluator::ProgramEvaluator(Program const &program, Representation const &rep)
    : _program(program), _rep(rep)
{
  if (program.genus() != rep.genus())
    throw DomainError("program and representation differ in genus");
}

SymplecticMatrix const &ProgramEvaluator::node_matrix(int node)
{
  if (_forward.size() < _program.size()) {
    _forward.resize(_program.size());
    _backward.resize(_program.size());
  }
  if (_forward[node])
    return *_forward[node];
  SymplecticMatrix m = SymplecticMatrix::identity(_program.genus());
  if (_program.is_generator(node)) {
    Word w = _program.expand({node, +1}, ~std::size_t{0});
    m = _rep.word_matrix(w);
  } else {
    auto const &fs = _program.factors(node);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      auto const &f = fs[k].sign > 0 ? node_matrix(fs[k].node) : node_inverse(fs[k].node);
      m = k == 0 ? f : m * f;
    }
  }
  _forward[node] = std::move(m);
  return *_forward[node];
}

SymplecticMatrix const &ProgramEvaluator::node_inverse(int node)
{
  auto const &m = node_matrix(node);
  if (!_backward[node])
    _backward[node] = _rep.inverse(m);
  return *_backward[node];
}

SymplecticMatrix ProgramEvaluator::matrix(Element e)
{
  return e.sign > 0 ? node_matrix(e.node) : node_inverse(e.node);
}

} // namespace mcg
