#include "cubeflag/constraints.hpp"

#include <algorithm>
#include <map>

namespace cubeflag {

SignedPermutation phi_swap(int n, int a, int b) {
  if (a < 0 || b < 0 || a >= n || b >= n)
    throw Error("phi_swap: direction out of range");
  SignedPermutation g = SignedPermutation::identity(n);
  g.perm[a] = static_cast<uint8_t>(b);
  g.perm[b] = static_cast<uint8_t>(a);
  return g;
}

std::vector<CubeColouring> enumerate_s(int l, const ForbiddenFamily& family) {
  if (l < 2) throw Error("enumerate_s needs l >= 2");
  return enumerate_h(Mode::TriEdge, l, family);
}

namespace {

// Class of H after swapping direction n into the second grey position:
// apply the (1 n) direction swap, grey direction 1, canonicalize.
CubeColouring swapped_projection(const CubeColouring& h, int n) {
  CubeColouring moved = apply_map(h, phi_swap(h.dim, 1, n));
  return canonical_form(grey_project(moved, 1));
}

}  // namespace

Rat p_phi(const CubeColouring& s, const CubeColouring& h) {
  if (s.mode != Mode::TriEdge || h.mode != Mode::Partial)
    throw Error("p_phi wants a TriEdge class and a Partial host");
  if (s.dim != h.dim) throw Error("p_phi: dimension mismatch");
  const int l = h.dim;
  if (l < 2) throw Error("p_phi: dimension too small");
  std::vector<Colour> target = canonical_form(s).word;
  int hits = 0;
  for (int n = 1; n < l; ++n)
    if (swapped_projection(h, n).word == target) ++hits;
  Rat r(hits, l - 1);
  r.canonicalize();
  return r;
}

namespace {

// Projection tallies over the whole H-list: tally[word of projected class][h]
// = number of direction choices landing there.
using SwapTally = std::map<std::vector<Colour>, std::map<uint32_t, int>>;

SwapTally build_swap_tally(int l, const std::vector<CubeColouring>& h_list) {
  SwapTally tally;
  for (size_t hi = 0; hi < h_list.size(); ++hi)
    for (int n = 1; n < l; ++n)
      ++tally[swapped_projection(h_list[hi], n).word]
             [static_cast<uint32_t>(hi)];
  return tally;
}

ConstraintRow row_from_tally(const SwapTally& tally, int l,
                             const CubeColouring& s) {
  ConstraintRow row;
  row.s_class = canonical_form(s);
  CubeColouring partner =
      canonical_form(apply_map(row.s_class, phi_swap(l, 0, 1)));
  std::map<uint32_t, Rat> diff;
  auto share = [l](int c) {
    Rat r(static_cast<long>(c), static_cast<unsigned long>(l - 1));
    r.canonicalize();
    return r;
  };
  if (auto it = tally.find(row.s_class.word); it != tally.end())
    for (const auto& [hi, c] : it->second) diff[hi] += share(c);
  if (auto it = tally.find(partner.word); it != tally.end())
    for (const auto& [hi, c] : it->second) diff[hi] -= share(c);
  for (const auto& [hi, v] : diff)
    if (v != 0) row.entries.emplace_back(hi, v);
  return row;
}

}  // namespace

std::vector<ConstraintRow> constraint_vectors(
    int l, const ForbiddenFamily& family,
    const std::vector<CubeColouring>& h_list) {
  std::vector<CubeColouring> s_classes = enumerate_s(l, family);
  SwapTally tally = build_swap_tally(l, h_list);

  std::vector<ConstraintRow> rows;
  std::map<std::vector<std::pair<uint32_t, Rat>>, bool> seen;
  for (const CubeColouring& s : s_classes) {
    ConstraintRow row = row_from_tally(tally, l, s);
    if (row.entries.empty()) continue;  // swap-invariant or unused class

    // Dedup key: scale so the first entry is 1 (kills sign and scaling).
    std::vector<std::pair<uint32_t, Rat>> norm = row.entries;
    Rat lead = norm.front().second;
    for (auto& [hi, v] : norm) v /= lead;
    if (seen.emplace(std::move(norm), true).second)
      rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ConstraintRow> recompute_rows(
    int l, const std::vector<CubeColouring>& h_list,
    const std::vector<CubeColouring>& s_list) {
  SwapTally tally = build_swap_tally(l, h_list);
  std::vector<ConstraintRow> rows;
  rows.reserve(s_list.size());
  for (const CubeColouring& s : s_list)
    rows.push_back(row_from_tally(tally, l, s));
  return rows;
}

}  // namespace cubeflag
