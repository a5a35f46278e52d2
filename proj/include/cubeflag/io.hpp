#pragma once

#include <iosfwd>
#include <string>

#include "cubeflag/certify.hpp"
#include "cubeflag/flags.hpp"

namespace cubeflag {

// A file that cannot be opened at all (as opposed to one that parses badly,
// which raises plain Error and fails verification with a reason).
struct FileError : Error {
  explicit FileError(const std::string& what) : Error(what) {}
};

// ---- Family files ----------------------------------------------------------
// One cube text form per line; blank lines and lines starting with '#' are
// ignored.  All members must share a mode (vertex or edge).
ForbiddenFamily read_family(const std::string& path);

// SHA-256 hex of the family's canonical description (member text forms,
// sorted, newline-terminated).  Ties H-list files to the family they were
// enumerated against.
std::string family_hash(const ForbiddenFamily& family);

// ---- H-list files ----------------------------------------------------------
// Line 1: `mode l family-hash count`; then one canonical cube text form per
// line, in sorted order.
void write_h_list(std::ostream& out, Mode mode, int l,
                  const std::string& fam_hash,
                  const std::vector<CubeColouring>& h_list);
struct HListFile {
  Mode mode;
  int l;
  std::string fam_hash;
  std::vector<CubeColouring> h_list;
};
HListFile read_h_list(const std::string& path);

// ---- Constraint files ------------------------------------------------------
// One row per line: `S-word : h:value h:value ...` with exact rationals,
// entries sorted by h index.
void write_constraints(std::ostream& out,
                       const std::vector<ConstraintRow>& rows, Mode s_mode,
                       int l);
std::vector<ConstraintRow> parse_constraint_rows(std::istream& in, int l,
                                                 size_t h_count);

// ---- Problem files ---------------------------------------------------------
// Self-describing text: header, family, H-list with densities, flag bases
// with their flag words, pair tensors as sparse exact rationals, constraint
// rows.  The cached densities/tensors/row values exist for interchange; the
// verifier recomputes them and only trusts the declared shapes.
void write_problem(std::ostream& out, const DensityProblem& problem);

// What a problem file declares (cached numbers are parsed but quarantined).
struct ProblemFile {
  Mode mode = Mode::VertexRB;
  int l = 0;
  ForbiddenFamily family;
  std::vector<CubeColouring> h_list;
  std::vector<Rat> cached_densities;
  struct BasisDecl {
    int s = 0, m = 0;
    CubeColouring type;
    std::vector<CubeColouring> flags;
  };
  std::vector<BasisDecl> bases;
  // cached tensors, indexed [basis] -> rows (h, a, b, value)
  struct TensorEntry {
    uint32_t h, a, b;
    Rat value;
  };
  std::vector<std::vector<TensorEntry>> cached_tensors;
  std::vector<ConstraintRow> constraints;  // values cached, S words trusted
};
ProblemFile read_problem(const std::string& path);

// Rebuilds a DensityProblem from a problem file's declared shapes by fresh
// computation (fresh enumeration, densities, bases, constraint-row values).
// Throws Error when the file's H-list or flag lists disagree with the fresh
// enumeration ("stale problem ...").
DensityProblem rebuild_problem(const ProblemFile& file, int threads = 1);

// ---- Certificate files -----------------------------------------------------
void write_certificate(std::ostream& out, const Certificate& cert,
                       const std::vector<int>& block_sizes);
Certificate read_certificate(const std::string& path);

}  // namespace cubeflag
