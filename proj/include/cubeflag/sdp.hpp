#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cubeflag/flags.hpp"

namespace cubeflag {

// Block layout of the emitted semidefinite program.  Blocks, in order: one
// PSD block per flag basis; one diagonal block of slack variables (one per
// H); one diagonal block holding the bound variable split t = t+ - t- and the
// constraint multipliers mu_j = mu_j+ - mu_j-.
struct SdpLayout {
  std::vector<int> basis_sizes;
  int h_count = 0;
  int constraint_count = 0;

  int block_count() const { return static_cast<int>(basis_sizes.size()) + 2; }
  int slack_block() const { return static_cast<int>(basis_sizes.size()) + 1; }
  int scalar_block() const { return static_cast<int>(basis_sizes.size()) + 2; }
  int scalar_size() const { return 2 + 2 * constraint_count; }
  // Positions inside the scalar block (1-based).
  int t_plus() const { return 1; }
  int t_minus() const { return 2; }
  int mu_plus(int j) const { return 3 + 2 * j; }
  int mu_minus(int j) const { return 4 + 2 * j; }
};

SdpLayout sdp_layout(const DensityProblem& problem);

// Writes the problem in SDPA sparse format (.dat-s).  One equality constraint
// per H:  sum_i <A_{i,H}, Q_i> + s_H + sum_j a_{j,H} (mu_j+ - mu_j-)
//         - t+ + t- = -d(H),
// objective max -t+ + t-  (so the reported optimum is -t at the solver's
// sign conventions; the certified quantity is read from the matrices, not
// from the objective).  Deterministic output: fixed entry order, %.17g
// numbers converted from the exact rationals.
void emit_sdp(const DensityProblem& problem, std::ostream& out);

// A parsed solver solution: the dual vector (one entry per H) and the primal
// matrix blocks following the layout above.  PSD basis blocks are dense
// symmetric n x n; the two diagonal blocks are stored as n x 1 columns so a
// large slack block never materializes as a dense square.
struct SolverSolution {
  std::vector<double> dual;
  std::vector<std::vector<std::vector<double>>> blocks;
  double objective = 0.0;  // -t+ + t- recomputed from the scalar block
};

// Parses a solution file: line 1 is the dual vector; remaining lines are
// "matno block i j value" quintuples, matno 2 = primal solution (matno 1,
// the dual slack matrix, is ignored).  Unmentioned entries are zero.
SolverSolution parse_solution(std::istream& in, const SdpLayout& layout);

// Runs `command_template` with {in} and {out} substituted, under a timeout.
// Captures combined stdout/stderr.  Throws Error when the placeholders are
// missing, the command cannot run (exit 127 -> "solver not found"), it times
// out (partial output removed), or it exits nonzero.
struct SolverRun {
  int exit_code = 0;
  std::string output_tail;  // last captured solver chatter, for diagnostics
};
SolverRun run_solver(const std::string& command_template,
                     const std::string& in_path, const std::string& out_path,
                     int timeout_secs);

}  // namespace cubeflag
