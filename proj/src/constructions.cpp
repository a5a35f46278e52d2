#include "cubeflag/constructions.hpp"

namespace cubeflag {

ConstructionKind construction_kind_from_name(const std::string& name) {
  if (name == "vertex-layered") return ConstructionKind::VertexLayered;
  if (name == "edge-layered") return ConstructionKind::EdgeLayered;
  if (name == "two-halves") return ConstructionKind::TwoHalves;
  throw Error("unknown construction kind: " + name);
}

std::string construction_kind_name(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::VertexLayered: return "vertex-layered";
    case ConstructionKind::EdgeLayered: return "edge-layered";
    case ConstructionKind::TwoHalves: return "two-halves";
  }
  throw Error("bad construction kind");
}

void ConstructionSpec::validate() const {
  if (n < 1 || n > kMaxDim) throw Error("construction dimension out of range");
  switch (kind) {
    case ConstructionKind::VertexLayered:
    case ConstructionKind::EdgeLayered:
      if (k < 2) throw Error("layer period must be at least 2");
      if (z < 0 || z >= k) throw Error("layer residue out of range");
      break;
    case ConstructionKind::TwoHalves: {
      if (n < 2) throw Error("two-halves needs n >= 2");
      if (z < 0 || z > 2 || z2 < 0 || z2 > 2)
        throw Error("two-halves residues must be in {0,1,2}");
      int sd = split < 0 ? n - 1 : split;
      if (sd < 0 || sd >= n) throw Error("split direction out of range");
      if (relabel1.dim != 0 && relabel1.dim != n - 1)
        throw Error("relabel1 dimension mismatch");
      if (relabel2.dim != 0 && relabel2.dim != n - 1)
        throw Error("relabel2 dimension mismatch");
      break;
    }
  }
}

CubeColouring build_construction(const ConstructionSpec& spec) {
  spec.validate();
  const int n = spec.n;
  switch (spec.kind) {
    case ConstructionKind::VertexLayered: {
      CubeColouring c = CubeColouring::uniform(Mode::VertexRB, n, Colour::Blue);
      for (uint32_t v = 0; v < (1u << n); ++v)
        if (layer(v) % spec.k == spec.z) c.word[v] = Colour::Red;
      return c;
    }
    case ConstructionKind::EdgeLayered: {
      CubeColouring c = CubeColouring::uniform(Mode::EdgeRB, n, Colour::Blue);
      for (int d = 0; d < n; ++d)
        for (uint32_t base = 0; base < (1u << n); ++base) {
          if (base >> d & 1u) continue;
          if (layer(base) % spec.k == spec.z)
            c.word[edge_index(n, d, base)] = Colour::Red;
        }
      return c;
    }
    case ConstructionKind::TwoHalves: {
      int sd = spec.split < 0 ? n - 1 : spec.split;
      SignedPermutation maps[2] = {spec.relabel1, spec.relabel2};
      for (auto& g : maps)
        if (g.dim == 0 && n - 1 > 0) g = SignedPermutation::identity(n - 1);
      int residues[2] = {spec.z, spec.z2};
      CubeColouring c = CubeColouring::uniform(Mode::VertexRB, n, Colour::Blue);
      for (uint32_t v = 0; v < (1u << n); ++v) {
        int half = v >> sd & 1u;
        // Local coordinates in the (n-1)-cube: drop the split bit.
        uint32_t low = v & ((1u << sd) - 1);
        uint32_t local = low | ((v >> (sd + 1)) << sd);
        uint32_t relabelled = maps[half].apply(local);
        if (layer(relabelled) % 3 == residues[half]) c.word[v] = Colour::Red;
      }
      return c;
    }
  }
  throw Error("bad construction kind");
}

Evaluation evaluate_construction(const CubeColouring& c,
                                 const ForbiddenFamily& family) {
  return {density(c), is_f_free(c, family)};
}

}  // namespace cubeflag
