#pragma once

#include "cubeflag/flags.hpp"

namespace cubeflag {

// The cube automorphism swapping directions a and b (no flips).
SignedPermutation phi_swap(int n, int a, int b);

// All F-free TriEdge colourings of the l-cube, one canonical representative
// per class of the directions-0,1-fixing group, sorted by word.  l >= 2.
std::vector<CubeColouring> enumerate_s(int l, const ForbiddenFamily& family);

// Density of the TriEdge class S in the Partial colouring H (same dimension):
// the fraction, over the l-1 non-grey directions n of H, of greyings
// phi(swap dirs 1,n applied to H, then grey direction 1) landing in the class
// of S.  Exact rational with denominator l-1.
Rat p_phi(const CubeColouring& s, const CubeColouring& h);

// Constraint rows for the Partial problem at dimension l: for each TriEdge
// class S the row  a_H = p_phi(S; H) - p_phi(swap01(S); H)  over the H-list.
// Every such row annihilates the limit object, so sum_H a_H x_H = 0 is a
// valid side constraint.  Zero rows are dropped and rows equal up to sign and
// scaling are deduplicated; each kept row carries the S it came from.
std::vector<ConstraintRow> constraint_vectors(
    int l, const ForbiddenFamily& family,
    const std::vector<CubeColouring>& h_list);

// Fresh row values for given S classes (one output row per input, same
// order, no dropping or dedup): used by verification, which trusts a
// certificate's S words but never cached coefficients.  An S whose class
// never arises projects to the zero row, which is harmlessly sound.
std::vector<ConstraintRow> recompute_rows(
    int l, const std::vector<CubeColouring>& h_list,
    const std::vector<CubeColouring>& s_list);

}  // namespace cubeflag
