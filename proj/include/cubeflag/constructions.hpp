#pragma once

#include "cubeflag/colouring.hpp"

namespace cubeflag {

enum class ConstructionKind { VertexLayered, EdgeLayered, TwoHalves };

ConstructionKind construction_kind_from_name(const std::string& name);
std::string construction_kind_name(ConstructionKind kind);

// Explicit colourings of the n-cube used as lower-bound witnesses.
//   VertexLayered: vertex v is Red iff layer(v) = z (mod k).
//   EdgeLayered:   edge is Red iff layer(lower endpoint) = z (mod k).
//   TwoHalves:     split the cube along direction `split` (default n-1); in
//                  half i (i = bit value), vertex with local coordinates u is
//                  Red iff layer(relabel_i(u)) = z_i (mod 3), where relabel_i
//                  is a signed permutation of the (n-1)-cube.
struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::VertexLayered;
  int n = 0;
  int k = 3;
  int z = 0;
  // TwoHalves only:
  int z2 = 0;
  int split = -1;  // -1 = use direction n-1
  SignedPermutation relabel1, relabel2;  // default identity (dim n-1)

  void validate() const;  // throws Error (n too small, k < 1, z out of range)
};

CubeColouring build_construction(const ConstructionSpec& spec);

// Density together with F-freeness of an explicit colouring.
struct Evaluation {
  Rat density;
  bool f_free = false;
};
Evaluation evaluate_construction(const CubeColouring& c,
                                 const ForbiddenFamily& family);

}  // namespace cubeflag
