#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubeflag {

// Raised for invalid input: malformed files, out-of-range parameters,
// incompatible arguments.  The CLI maps it to exit code 2.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Dimensions up to and including this bound get their symmetry groups built
// eagerly and cached.  Larger hosts are supported only by the operations that
// do not need the full group (subcube/embedding enumeration, densities of
// explicit colourings).
inline constexpr int kMaxGroupDim = 5;

// Hard cap for vertex words held in packed form during enumeration.
inline constexpr int kMaxDim = 16;

// Vertices of the n-cube are the integers 0..2^n-1; bit d of a vertex is its
// coordinate in direction d.  Edges run between vertices differing in exactly
// one bit.

inline int vertex_count(int n) { return 1 << n; }
inline int edge_count(int n) { return n << (n - 1 >= 0 ? n - 1 : 0); }

// Number of coordinate-d ones below bit position... (internal helper exposed
// for tests): rank of `base` among the 2^(n-1) vertices with bit d clear.
int edge_rank_in_direction(int n, int dir, uint32_t base);

// Canonical edge order: edges are sorted by direction d = 0..n-1, then by
// their lower endpoint (the endpoint with bit d clear) ascending.
int edge_index(int n, int dir, uint32_t base);

// Inverse of edge_index: returns {lower endpoint, direction}.
std::pair<uint32_t, int> edge_endpoints(int n, int index);

// True iff u and v differ in exactly one bit (coordinates validated).
bool is_edge(int n, uint32_t u, uint32_t v);

// Number of 1-bits; vertex layer within the cube.
int layer(uint32_t v);

// A self-map of the n-cube of the form v -> permute_bits(v XOR flips), where
// bit j of the input moves to position perm[j].  These are exactly the cube's
// automorphisms.
struct SignedPermutation {
  uint8_t dim = 0;
  std::array<uint8_t, kMaxDim> perm{};  // perm[d] = image direction of d
  uint32_t flips = 0;

  static SignedPermutation identity(int n);

  uint32_t apply(uint32_t v) const {
    uint32_t x = v ^ flips;
    uint32_t y = 0;
    for (int d = 0; d < dim; ++d) y |= ((x >> d) & 1u) << perm[d];
    return y;
  }

  // Direction images: an edge in direction d maps to one in direction perm[d].
  int apply_dir(int d) const { return perm[d]; }

  // Composition: (this->then(g))(v) == g(this->apply(v)).
  SignedPermutation then(const SignedPermutation& g) const;
  SignedPermutation inverse() const;

  bool operator==(const SignedPermutation& o) const {
    if (dim != o.dim || flips != o.flips) return false;
    for (int d = 0; d < dim; ++d)
      if (perm[d] != o.perm[d]) return false;
    return true;
  }
};

// An axis-parallel m-dimensional subcube of the n-cube: a base vertex with
// all `dirs` bits clear, spanning the given (strictly increasing) directions.
struct Subcube {
  uint32_t base = 0;
  std::vector<uint8_t> dirs;
};

// A labelled embedding of the s-cube into the n-cube: label vertex i maps to
// base XOR (bits of i scattered onto dirs).  dirs is an *ordered* tuple of
// distinct directions; different orders are different embeddings.
struct LabelledEmbedding {
  uint32_t base = 0;
  std::vector<uint8_t> dirs;

  uint32_t map_vertex(uint32_t label) const {
    uint32_t v = base;
    for (size_t j = 0; j < dirs.size(); ++j)
      if (label >> j & 1u) v ^= 1u << dirs[j];
    return v;
  }
};

// All m-subcubes of the n-cube, ordered by direction set (lexicographic),
// then base ascending.  Errors if m > n or m < 0.
std::vector<Subcube> enumerate_subcubes(int n, int m);

// All labelled embeddings of the s-cube into the n-cube whose first
// `fixed_dirs` directions are forced to be 0,1,...,fixed_dirs-1 in order.
// Errors if s > n or fixed_dirs > s.
std::vector<LabelledEmbedding> enumerate_embeddings(int n, int s,
                                                    int fixed_dirs = 0);

// The automorphisms of the n-cube whose direction permutation fixes each of
// 0..fixed_dirs-1.  Size 2^n * (n-fixed_dirs)!.  Cached per (n, fixed_dirs);
// errors if n > kMaxGroupDim or fixed_dirs > n.
const std::vector<SignedPermutation>& symmetry_group(int n, int fixed_dirs = 0);

// n! / (n-k)! as unsigned; helper shared by counting identities.
uint64_t falling_factorial(uint64_t n, uint64_t k);
uint64_t binomial(uint64_t n, uint64_t k);

}  // namespace cubeflag
