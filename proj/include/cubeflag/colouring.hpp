#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubeflag/cube.hpp"
#include "cubeflag/rational.hpp"

namespace cubeflag {

enum class Colour : uint8_t { Blue = 0, Red = 1, Grey = 2 };

// What gets coloured, and which edges are forced grey:
//   VertexRB — every vertex is Blue or Red.
//   EdgeRB   — every edge is Blue or Red.
//   Partial  — edges; direction-0 edges are Grey, the rest Blue or Red.
//   TriEdge  — edges; direction-0 and direction-1 edges are Grey.
enum class Mode : uint8_t { VertexRB, EdgeRB, Partial, TriEdge };

bool is_vertex_mode(Mode mode);
// Number of leading directions whose edges are forced grey (0, 0, 1, 2).
int grey_dirs(Mode mode);
std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

char colour_char(Colour c);
Colour colour_from_char(char c);

// A colouring of the dim-cube.  The word lists vertex colours in vertex order
// (VertexRB) or edge colours in canonical edge order (edge modes).  Greys must
// appear exactly on the edges the mode forces grey.
struct CubeColouring {
  Mode mode = Mode::VertexRB;
  int dim = 0;
  std::vector<Colour> word;

  // Validating constructor; throws Error on bad dimension, wrong word length,
  // or a grey pattern that does not match the mode.
  static CubeColouring make(Mode mode, int dim, std::vector<Colour> word);
  // All-`fill` colouring (greys where the mode forces them).
  static CubeColouring uniform(Mode mode, int dim, Colour fill);

  int slots() const { return static_cast<int>(word.size()); }
  int blue_count() const;
  int red_count() const;

  Colour vertex_colour(uint32_t v) const { return word[v]; }
  Colour edge_colour(int dir, uint32_t base) const {
    return word[edge_index(dim, dir, base)];
  }

  // Text form "mode dim word", e.g. "edge 2 BBRB".
  std::string text() const;
  static CubeColouring parse(const std::string& line);

  bool operator==(const CubeColouring& o) const = default;
};

// Word-wise lexicographic comparison with Blue < Red < Grey; mode and dim
// compare first so mixed containers stay well ordered.
bool colouring_less(const CubeColouring& a, const CubeColouring& b);

// Number of word slots for the mode/dimension.
int slot_count(Mode mode, int dim);

// Image of a colouring under a cube automorphism: slot x of the result is the
// colour of g^{-1}(x) in the input.  g must respect the mode's grey pattern
// (direction 0 fixed for Partial, directions 0 and 1 for TriEdge); throws
// Error otherwise.
CubeColouring apply_map(const CubeColouring& c, const SignedPermutation& g);

// Lexicographic minimum of the orbit of `c` under the mode's symmetry group
// (full group; direction-0-fixing for Partial; directions-0,1-fixing for
// TriEdge).  Requires dim <= kMaxGroupDim.
CubeColouring canonical_form(const CubeColouring& c);

// True iff some labelled embedding of the pattern cube into the host maps
// every Blue slot of the pattern onto a Blue slot of the host.  Host and
// pattern must both be VertexRB or both EdgeRB.  A pattern of larger
// dimension than the host is never contained.
bool contains_subcube(const CubeColouring& host, const CubeColouring& pattern);

// A finite set of forbidden Blue/Red colourings, all vertex-mode or all
// edge-mode.  May be empty (nothing forbidden).
struct ForbiddenFamily {
  std::vector<CubeColouring> members;

  bool vertex_mode() const;  // true if vertex family (empty family: matches
                             // whichever mode it is used with)
  int max_dim() const;
  void validate() const;  // throws Error on mixed modes or grey slots
};

// True iff the colouring avoids every family member.  Grey slots are treated
// as Red for the containment test (greys can never supply a pattern Blue).
// The family's mode must match (vertex family for VertexRB, edge family for
// the edge modes); empty families match everything.
bool is_f_free(const CubeColouring& c, const ForbiddenFamily& family);

// Fraction of Blue slots among the non-grey slots:
//   VertexRB: blues / 2^n; EdgeRB: blues / (n 2^{n-1});
//   Partial: blues / ((n-1) 2^{n-1}); TriEdge: blues / ((n-2) 2^{n-1}).
// Errors when the denominator is empty (e.g. Partial with dim < 2).
Rat density(const CubeColouring& c);

// Greys the edges in the first `extra` not-yet-grey directions:
//   EdgeRB -> Partial (extra=1) -> TriEdge (extra=1), EdgeRB -> TriEdge
//   (extra=2).  Blue/Red colours elsewhere are kept.
CubeColouring grey_project(const CubeColouring& c, int extra);

}  // namespace cubeflag
