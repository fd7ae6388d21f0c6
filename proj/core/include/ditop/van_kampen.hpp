#ifndef DITOP_VAN_KAMPEN_HPP
#define DITOP_VAN_KAMPEN_HPP

#include "ditop/models.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ditop {

// Closed coordinate window, one [lo, hi] per axis.  On a wrapped axis lo > hi
// means the window crosses the seam.
struct Window {
  std::vector<std::pair<Rat, Rat>> intervals;
};

// Resolve window bounds to grid coordinates; throws Error{input_error} when a
// bound is not a grid coordinate of the kept region.
Region window_region(const GridComplex& g, const Window& w);

// Two-piece cover of the grid with object sets, plus optional intermediate
// B-level sets for chained retracts (A_k subset of B_k subset of X_k).
struct Cover {
  Region x1, x2, x0; // x0 = intersection
  std::vector<GridComplex::Vertex> a1, a2, a0;
  std::vector<GridComplex::Vertex> b1, b2, b0;

  bool has_b() const { return !b1.empty() || !b2.empty(); }
};

// Build and validate a cover: every allowed vertex, edge and 2-face must lie
// in a piece, object sets must sit inside their pieces, and with B-levels
// A_k must be contained in B_k.  Throws Error{cover_invalid}.
Cover make_cover(const GridComplex& g, const Window& w1, const Window& w2,
                 std::vector<GridComplex::Vertex> a1, std::vector<GridComplex::Vertex> a2,
                 std::vector<GridComplex::Vertex> b1 = {},
                 std::vector<GridComplex::Vertex> b2 = {});

// Greedy maximal split of a path into piece-contained segments; overlap edges
// go to piece 1.  Labels are 1 or 2; concatenating the segments restores the
// path.  Throws Error{cover_invalid} when an edge lies in neither piece.
std::vector<std::pair<LatticePath, int>> decompose_path(const GridComplex& g, const Cover& cover,
                                                        const LatticePath& path);

// How a hom-table over the overlap includes into a piece table: object map
// plus, per ordered object pair, the image of every overlap class.
struct PieceInclusion {
  std::vector<int> objects;                         // overlap object -> piece object
  std::map<std::tuple<int, int, int>, int> classes; // (a0, b0, class) -> piece class
};

// Inclusion when overlap and piece tables live on the same grid: objects map
// to themselves and a class maps to the piece class of its canonical path.
// Throws Error{inclusion_not_functorial} when a class escapes or two classes
// merge in the piece.
PieceInclusion inclusion_same_grid(const HomTable& t0, const HomTable& tk);

// Finitely presented category computed as the pushout of two piece tables
// over the overlap table.
struct CatPresentation {
  struct Generator {
    int src = 0, dst = 0;  // pushout object ids
    int piece = 1;         // 1 or 2
    int piece_src = 0, piece_dst = 0, piece_class = 0;
  };
  using Word = std::vector<int>; // generator indices, composed left to right

  int object_count = 0;
  std::vector<std::string> object_labels;
  std::vector<int> object_of_t1, object_of_t2; // piece object -> pushout object
  std::vector<Generator> generators;
  // both sides share endpoints; the empty word is the identity
  std::vector<std::pair<Word, Word>> relations;

  // Generators that are not a composition of two non-identity classes.
  std::vector<int> indecomposable() const;
};

// Objects = A1 + A2 glued along A0; generators = non-identity classes of the
// pieces; relations = the piece composition tables plus the overlap
// identifications.  Checks that the inclusions are functorial (identities,
// injectivity, compatibility with composition) and throws
// Error{inclusion_not_functorial} otherwise.
CatPresentation pushout_presentation(const HomTable& t1, const HomTable& t2, const HomTable& t0,
                                     const PieceInclusion& incl1, const PieceInclusion& incl2);
// Same-grid convenience overload.
CatPresentation pushout_presentation(const HomTable& t1, const HomTable& t2, const HomTable& t0);

struct PresHom {
  std::vector<CatPresentation::Word> classes; // canonical (length, lex)-least words
  bool exact = true;
};

// Words a -> b over the indecomposable generators, graded by word length up
// to max_len, modulo the congruence generated by the relations (bounded
// closure).  Exact only when the closure certifies that every slack word
// reduces below the bound and the partition is stable one level further out.
PresHom hom_from_presentation(const CatPresentation& pres, int a, int b, int max_len);

// Evaluate a word to a lattice path by concatenating the generators' piece
// canonical paths.
LatticePath evaluate_word(const CatPresentation& pres, const HomTable& t1, const HomTable& t2,
                          const CatPresentation::Word& word, GridComplex::Vertex start);

struct PushoutReport {
  bool passed = false;
  bool exact = true; // every compared hom-set certified exact on both sides
  std::vector<std::string> failures;
  CatPresentation presentation;
};

// Compare the pushout presentation's hom-sets against the directly computed
// full subcategory on A1 union A2: evaluation must be injective, and a
// bijection where both sides are exact.  With B-levels present, additionally
// checks that the A-level presentation includes into the B-level one and that
// evaluation commutes with the inclusion.
PushoutReport verify_pushout(const GridComplex& g, const Cover& cover, const Budget& budget,
                             int max_len = 6);

// Glue piecewise retract data into a retract of the glued table.  Overlap
// objects must receive the same target and the same glued witness class from
// both pieces and from the overlap data; otherwise
// Error{incompatible_retracts} with a witness object.
RetractData pushout_retract(const HomTable& glued, const HomTable& t1, const RetractData& d1,
                            const HomTable& t2, const RetractData& d2, const HomTable& t0,
                            const RetractData& d0);

struct PieceChains {
  const HomTable* base1 = nullptr;
  const RetractChain* chain1 = nullptr;
  const HomTable* base2 = nullptr;
  const RetractChain* chain2 = nullptr;
  const HomTable* base0 = nullptr;
  const RetractChain* chain0 = nullptr;
};

// Stepwise pushout_retract over three chains of equal length; the result is
// an explicit-assignment chain on the glued table's grid.
RetractChain pushout_chain(const HomTable& glued, const PieceChains& pieces);

// Piece extremal models glued into an extremal model of the whole grid:
// verifies each piece chain on its region-restricted table, glues, and runs
// the glued chain with the Ext(X) containment check.
ModelReport pushout_extremal_model(const GridComplex& g, const Cover& cover,
                                   const RetractChain& m1, const RetractChain& m2,
                                   const RetractChain& m0, const Budget& budget);

} // namespace ditop

#endif
