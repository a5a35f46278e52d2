#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cubeflag/colouring.hpp"

namespace cubeflag {

// A type: a fully labelled F-free colouring of the s-cube.  Labelled means no
// group quotient is applied; two different words are two different types.
struct FlagType {
  CubeColouring cube;  // dim s
  int s() const { return cube.dim; }
};

// A flag of the basis: an F-free colouring of the m-cube together with the
// standard embedding theta0 of the s-cube (base 0, directions 0..s-1), stored
// in canonical form under the stabilizer of theta0 (direction permutations
// fixing 0..s-1 pointwise, no flips).
struct FlagBasis {
  Mode mode = Mode::VertexRB;
  int l = 0;  // ambient working dimension the basis will be used at
  int m = 0;  // flag dimension
  FlagType sigma;
  std::vector<CubeColouring> flags;  // sorted canonical words
  std::unordered_map<std::string, int> index;  // packed word -> position

  int size() const { return static_cast<int>(flags.size()); }
  // Index of the flag whose stabilizer-canonical word equals `word`; -1 when
  // absent.
  int find(const std::vector<Colour>& word) const;
};

// Symmetric sparse matrix of event counts: entries (a <= b, count) sorted by
// (a, b).  count(a,b) is the number of ordered pair events hitting (a,b) in
// that order; by symmetry it equals count(b,a).  The rational matrix entry is
// count / weight with a shared `weight` denominator.
struct PairCounts {
  std::vector<std::array<uint32_t, 2>> keys;
  std::vector<uint64_t> counts;

  uint64_t at(uint32_t a, uint32_t b) const;  // 0 when absent
};

// All F-free colourings of the l-cube in the mode, one canonical
// representative per symmetry class, sorted by word.  `threads` splits the
// work; the result is independent of it.  Capacity errors beyond the
// supported sizes (vertex l <= 4, edge l <= 4, partial l <= 4).
std::vector<CubeColouring> enumerate_h(Mode mode, int l,
                                       const ForbiddenFamily& family,
                                       int threads = 1);

// All labelled F-free types of dimension s (every word, no quotient).
std::vector<FlagType> enumerate_types(Mode mode, int s,
                                      const ForbiddenFamily& family);

// The flag basis over `sigma` at flag dimension m, for use at working
// dimension l.  Requires sigma.s <= m and 2m - s <= l.
FlagBasis enumerate_flags(const FlagType& sigma, int m,
                          const ForbiddenFamily& family, int l);

// Density of H in the host G: the fraction of dim(H)-subcubes of G whose
// induced colouring is isomorphic to H.  For Partial H the host G is an
// EdgeRB colouring and the events are (subcube, greyed direction) pairs:
// each of the subcube's directions in turn is greyed and the result compared
// to H up to the partial symmetry group.  Requires dim(H) <= dim(G) and
// dim(G) <= kMaxGroupDim.
Rat p_density(const CubeColouring& h, const CubeColouring& g);

// Denominator shared by all pair-density entries of a basis at working
// dimension l: (number of type embeddings of the s-cube into the l-cube,
// direction 0 forced for Partial) * C(l-s, m-s) * C(l-m, m-s).
uint64_t pair_weight(Mode mode, int l, int s, int m);

// Ordered-pair event counts for the basis against host H (dim l): events are
// (type embedding theta with H|theta ~ sigma, ordered disjoint direction sets
// A, B of size m-s); the event lands at (flag index of H over theta+A, flag
// index of H over theta+B).  Matrix entry A[a][b] = count/pair_weight.
PairCounts pair_tensor_row(const FlagBasis& basis, const CubeColouring& h);

// Single matrix entry as an exact rational (count / weight).
Rat pair_coefficient(const FlagBasis& basis, int a, int b,
                     const CubeColouring& h);

// One linear side constraint: coefficients over the H-list, identified by the
// canonical word of the class S it was derived from.  Sparse: (h index,
// value) sorted by index.
struct ConstraintRow {
  CubeColouring s_class;
  std::vector<std::pair<uint32_t, Rat>> entries;
};

// The assembled optimization input: H-list with densities, flag bases, and
// (for Partial) linear constraint rows.  Pair tensors are recomputed on
// demand via pair_tensor_row to keep memory flat.
struct DensityProblem {
  Mode mode = Mode::VertexRB;
  int l = 0;
  ForbiddenFamily family;
  std::vector<CubeColouring> h_list;
  std::vector<Rat> densities;
  std::vector<FlagBasis> bases;
  std::vector<ConstraintRow> constraints;

  int find_h(const std::vector<Colour>& word) const;  // -1 when absent
};

// Builds h_list, densities, and attaches the given bases (validated against
// mode and l).  Constraint rows are attached separately.
DensityProblem assemble_problem(Mode mode, int l, const ForbiddenFamily& family,
                                std::vector<FlagBasis> bases, int threads = 1);

// Exact finite averaging identity linking one pair-density entry to its
// host-level average:
//   sum_H A[a][b](H) p(H;G) == (over all type embeddings into G and disjoint
//   extension pairs) the fraction of events landing at (a,b).
// Returns true iff the two exact rationals agree.  G must be F-free, of the
// basis's host mode (EdgeRB for Partial bases), dim(G) >= l.
bool check_averaging_identity(const DensityProblem& problem, int basis_idx,
                              int a, int b, const CubeColouring& g);

}  // namespace cubeflag
