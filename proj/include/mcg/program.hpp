#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcg/homology.hpp"

namespace mcg
{

/// Reference to a program node, possibly inverted.
struct Element
{
  int node = -1;
  int sign = +1;

  Element inv() const { return {node, -sign}; }
  bool operator==(Element const &) const = default;
};

/// Straight-line program over a generating alphabet. Generators are leaves
/// carrying their base-alphabet word; every other node is a product of
/// earlier elements, so the node list is always topologically sorted.
class Program
{
public:
  explicit Program(int genus);

  int genus() const { return _genus; }
  std::size_t size() const { return _nodes.size(); }

  Element generator(std::string name, Word base);
  Element product(std::string name, std::vector<Element> factors);
  Element conjugate(std::string name, Element f, Element x);
  /// x^k with k of either sign, built by square-and-multiply.
  Element power(std::string name, Element x, int k);

  std::string const &name(int node) const { return _nodes.at(node).name; }
  bool is_generator(int node) const { return _nodes.at(node).generator >= 0; }
  std::vector<int> const &generators() const { return _generators; }
  std::vector<Element> const &factors(int node) const { return _nodes.at(node).factors; }

  /// Letters after full expansion into the base alphabet.
  Integer expanded_length(Element e) const { return _nodes.at(e.node).base_length; }
  /// Letters after expansion into generator symbols.
  Integer generator_length(Element e) const { return _nodes.at(e.node).gen_length; }

  /// Throws DomainError when the base expansion exceeds `limit` letters.
  Word expand(Element e, std::size_t limit) const;
  /// Expansion into (generator node, sign) pairs, same guard.
  std::vector<Element> expand_generators(Element e, std::size_t limit) const;
  std::string format_generators(Element e, std::size_t limit) const;

  /// Generator nodes reachable from e.
  std::vector<int> generators_used(Element e) const;
  /// Every node reachable from e, in definition order.
  std::vector<int> dependencies(Element e) const;

  /// Definitions reachable from e, one per line, dependencies first.
  std::string listing(Element e) const;

private:
  struct Node
  {
    std::string name;
    int generator = -1; // index into _generators, or -1
    Word base = Word(kMinGenus); // generators only
    std::vector<Element> factors;
    Integer base_length;
    Integer gen_length;
  };

  void expand_into(Element e, std::vector<Element> &out) const;

  int _genus;
  std::vector<Node> _nodes;
  std::vector<int> _generators;
};

/// Memoized evaluation of a program under one representation. Not safe for
/// concurrent use.
class ProgramEvaluator
{
public:
  ProgramEvaluator(Program const &program, Representation const &rep);

  SymplecticMatrix matrix(Element e);
  Representation const &representation() const { return _rep; }

private:
  SymplecticMatrix const &node_matrix(int node);
  SymplecticMatrix const &node_inverse(int node);

  Program const &_program;
  Representation const &_rep;
  std::vector<std::optional<SymplecticMatrix>> _forward;
  std::vector<std::optional<SymplecticMatrix>> _backward;
};

} // namespace mcg
