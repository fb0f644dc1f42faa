#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nilca/configuration.hpp"

namespace nilca {

using Word = std::vector<Symbol>;

// Digits when the alphabet has at most 10 symbols, comma separated otherwise.
std::string word_to_string(const Word& w, Alphabet alphabet);
Word word_from_string(std::string_view text, Alphabet alphabet);

// Subshift of finite type given by forbidden patterns.
class Sft {
 public:
  Sft(int dim, Alphabet alphabet, std::vector<Pattern> forbidden);

  int dimension() const { return dim_; }
  Alphabet alphabet() const { return alphabet_; }
  const std::vector<Pattern>& forbidden() const { return forbidden_; }

 private:
  int dim_;
  Alphabet alphabet_;
  std::vector<Pattern> forbidden_;
};

// True iff no translate of a forbidden pattern occurs in x.
bool sft_contains(const Sft& X, const Configuration& x);

// Does `pattern` occur in x at translate t?
bool pattern_matches(const Pattern& pattern, const Configuration& x, const CellVector& t);

struct Component {
  std::vector<std::size_t> vertices;  // indices into ComponentDecomposition::vertices
  std::size_t edges = 0;
  std::size_t period = 0;
  bool mixing = false;
};

// Edge presentation of a 1-D SFT: vertices are allowed (m-1)-words, edges
// allowed m-words.
struct ComponentDecomposition {
  std::size_t window = 0;
  std::vector<Word> vertices;
  std::vector<Word> edges;
  std::vector<Component> components;
  // (a, b): some path leads from component a to component b (a != b).
  std::set<std::pair<std::size_t, std::size_t>> links;
};

ComponentDecomposition components_1d(const Sft& X, std::size_t guard = std::size_t{1} << 24);

// Words of length n occurring in some configuration of X.
std::set<Word> language_1d(const Sft& X, std::size_t n, std::size_t guard = std::size_t{1} << 24);

// Labeled-graph cover of a 1-D sofic shift.
struct SoficPresentation {
  struct Edge {
    std::size_t from;
    std::size_t to;
    Symbol label;
  };
  std::string name;
  Alphabet alphabet;
  std::size_t states = 0;
  std::vector<Edge> edges;
};

// Is there a bi-infinite path in P reading x?
bool sofic_contains(const SoficPresentation& P, const FiniteConfig& x);

// L^{-1}(0*10*) and L^{-1}((0*l0*r)*) with l = 1, r = 2.
SoficPresentation single_one_presentation();
SoficPresentation lr_presentation();

}  // namespace nilca
