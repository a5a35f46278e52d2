#pragma once

#include <iosfwd>
#include <optional>

#include "cubeflag/flags.hpp"

namespace cubeflag {

using RatMatrix = std::vector<std::vector<Rat>>;
using FloatMatrix = std::vector<std::vector<double>>;

// One PSD block of a certificate.  Either a rational upper-triangular factor
// R (the block is R^T R, PSD by construction) or a directly given symmetric
// rational matrix Q whose positive semidefiniteness must be established by
// exact LDL^T during verification.
struct CertificateBlock {
  bool direct = false;
  RatMatrix matrix;  // factor R (upper triangular) or direct Q (symmetric)
};

// A dual certificate: one PSD block per flag basis plus one multiplier per
// constraint row.  The claimed bound is informational; the verifier
// recomputes its own.
struct Certificate {
  Mode mode = Mode::VertexRB;
  int l = 0;
  ForbiddenFamily family;
  struct BasisDesc {
    int s = 0, m = 0, size = 0;
    CubeColouring type;
  };
  std::vector<BasisDesc> bases;
  std::vector<CertificateBlock> blocks;
  std::vector<Rat> mu;
  Rat claimed_bound;
};

// Nearest dyadic rational with denominator 2^k (ties round up).  The double
// is converted exactly before rounding.
Rat round_dyadic(double x, int k);

// Rounds a floating-point symmetric matrix to a rational PSD factor: runs a
// double-precision Cholesky on Q + eps I (eps escalating by factors of 2 from
// 2^-30 up to 2^-10 until it succeeds), then rounds every factor entry to a
// dyadic rational with denominator 2^k.  The returned upper-triangular R
// gives the exact PSD matrix R^T R near Q.  Throws Error when no eps in
// range succeeds.
RatMatrix round_psd(const FloatMatrix& q, int k);

// Exact LDL^T positive-semidefiniteness test for a symmetric rational matrix:
// pivots on diagonal entries in order; a zero diagonal entry must have a zero
// row/column; all pivots must be nonnegative.
bool psd_check_ldl(const RatMatrix& q);

// max_H ( d(H) + sum_i <A_{i,H}, Q_i> + sum_j mu_j a_{j,H} ) over the H-list,
// in exact rational arithmetic, with tensors recomputed from the problem's
// own data.  Throws Error on any shape mismatch between problem and
// certificate.  Ties resolve to the first H in canonical order.
struct BoundResult {
  Rat bound;
  int argmax_h = -1;
};
BoundResult exact_bound(const DensityProblem& problem, const Certificate& cert,
                        int threads = 1);

// Outcome of an end-to-end verification.
struct VerifyReport {
  bool pass = false;
  bool input_ok = true;  // false only when a file cannot be opened at all
  std::string reason;    // filled when !pass
  Rat bound;             // recomputed exact bound (when reached)
  int argmax_h = -1;
  std::string argmax_word;   // text form of the attaining H
  std::string psd_note;      // per-basis PSD audit line
};

// Recomputes everything from first principles — H-list, densities, flag
// bases, pair tensors, constraint-row values — trusting only the problem
// file's declared mode/dimension/family/shapes and the certificate, then
// checks the recomputed H-list against the file's (staleness) and compares
// the exact bound against the target.  Parse and shape failures yield a
// failing report with the reason; only unreadable files mark input_ok false.
// No floating point anywhere on this path.
VerifyReport verify(const std::string& problem_path,
                    const std::string& cert_path, const Rat& target,
                    int threads = 1);

}  // namespace cubeflag
