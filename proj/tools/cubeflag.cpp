// Command-line front end: enumerate colourings, build density problems, run
// an external SDP solver, round its output into an exact certificate, and
// verify certificates against targets.
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cubeflag/certify.hpp"
#include "cubeflag/constraints.hpp"
#include "cubeflag/constructions.hpp"
#include "cubeflag/io.hpp"
#include "cubeflag/manifest.hpp"
#include "cubeflag/sdp.hpp"

namespace fs = std::filesystem;
using namespace cubeflag;

namespace {

struct Common {
  int threads = 1;
  std::string manifest_path;  // empty = derive from outputs
};

int effective_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Collects manifest data over a run and writes it at scope end (successful
// completion only; the caller aborts by exception on errors).
struct ManifestScope {
  RunManifest manifest;
  std::string override_path;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  ManifestScope(const std::string& subcommand, const Common& common) {
    manifest.subcommand = subcommand;
    override_path = common.manifest_path;
  }
  void param(const std::string& key, const std::string& value) {
    manifest.parameters.emplace_back(key, value);
  }
  void input(const std::string& path) { manifest.inputs.push_back(path); }
  void output(const std::string& path) { manifest.outputs.push_back(path); }
  void write() {
    manifest.elapsed_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::string path = override_path;
    if (path.empty())
      path = manifest.outputs.empty() ? "cubeflag-manifest.json"
                                      : manifest.outputs.front() +
                                            ".manifest.json";
    manifest.write(path);
  }
};

void ensure_parent_dir(const std::string& path) {
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

std::ofstream open_output(const std::string& path) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out.is_open()) throw Error("cannot write " + path);
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

// ---- enumerate --------------------------------------------------------------

int run_enumerate(const Common& common, const std::string& mode_str, int dim,
                  const std::string& forbid, const std::string& out_path) {
  ManifestScope scope("enumerate", common);
  scope.param("mode", mode_str);
  scope.param("dim", std::to_string(dim));
  scope.param("forbid", forbid);
  scope.input(forbid);

  Mode mode = mode_from_name(mode_str);
  ForbiddenFamily family = read_family(forbid);
  auto h_list =
      enumerate_h(mode, dim, family, effective_threads(common.threads));
  std::cout << h_list.size() << "\n";
  if (!out_path.empty()) {
    auto out = open_output(out_path);
    write_h_list(out, mode, dim, family_hash(family), h_list);
    scope.output(out_path);
  }
  scope.write();
  return 0;
}

// ---- flags ------------------------------------------------------------------

int run_flags(const Common& common, const std::string& mode_str, int dim,
              int s, int m, const std::string& forbid) {
  ManifestScope scope("flags", common);
  scope.param("mode", mode_str);
  scope.param("dim", std::to_string(dim));
  scope.param("s", std::to_string(s));
  scope.param("forbid", forbid);
  scope.input(forbid);

  Mode mode = mode_from_name(mode_str);
  ForbiddenFamily family = read_family(forbid);
  if (m < 0) m = (dim + s) / 2;
  scope.param("m", std::to_string(m));
  auto types = enumerate_types(mode, s, family);
  size_t total = 0;
  for (const auto& sigma : types) {
    FlagBasis basis = enumerate_flags(sigma, m, family, dim);
    std::string word;
    for (Colour c : sigma.cube.word) word.push_back(colour_char(c));
    std::cout << "type " << (word.empty() ? "-" : word) << " flags "
              << basis.size() << "\n";
    total += static_cast<size_t>(basis.size());
  }
  std::cout << "types " << types.size() << " total-flags " << total << "\n";
  scope.write();
  return 0;
}

// ---- constraints --------------------------------------------------------------

int run_constraints(const Common& common, int dim, const std::string& forbid,
                    const std::string& out_path) {
  ManifestScope scope("constraints", common);
  scope.param("dim", std::to_string(dim));
  scope.param("forbid", forbid);
  scope.input(forbid);

  ForbiddenFamily family = read_family(forbid);
  auto h_list = enumerate_h(Mode::Partial, dim, family,
                            effective_threads(common.threads));
  auto rows = constraint_vectors(dim, family, h_list);
  std::cout << rows.size() << "\n";
  if (!out_path.empty()) {
    auto out = open_output(out_path);
    write_constraints(out, rows, Mode::TriEdge, dim);
    scope.output(out_path);
  }
  scope.write();
  return 0;
}

// ---- assemble -----------------------------------------------------------------

int run_assemble(const Common& common, const std::string& mode_str, int dim,
                 const std::string& forbid, const std::string& out_path,
                 std::string type_dims, bool no_constraints,
                 bool want_constraints) {
  ManifestScope scope("assemble", common);
  scope.param("mode", mode_str);
  scope.param("dim", std::to_string(dim));
  scope.param("forbid", forbid);
  scope.input(forbid);

  Mode mode = mode_from_name(mode_str);
  ForbiddenFamily family = read_family(forbid);
  int threads = effective_threads(common.threads);

  if (type_dims.empty()) {
    switch (mode) {
      case Mode::VertexRB: type_dims = "0,1"; break;
      case Mode::EdgeRB: type_dims = "1"; break;
      case Mode::Partial: type_dims = "1,2"; break;
      default:
        throw Error("no default flag bases for mode " + mode_str +
                    "; pass --type-dims");
    }
  }
  scope.param("type-dims", type_dims);

  std::vector<FlagBasis> bases;
  for (int s : parse_int_list(type_dims)) {
    if (s < 0 || s > dim) throw Error("type dimension out of range");
    int m = (dim + s) / 2;
    for (const auto& sigma : enumerate_types(mode, s, family))
      bases.push_back(enumerate_flags(sigma, m, family, dim));
  }

  DensityProblem problem = assemble_problem(mode, dim, family, bases, threads);

  bool with_constraints =
      want_constraints || (mode == Mode::Partial && !no_constraints);
  if (with_constraints) {
    if (mode != Mode::Partial)
      throw Error("constraint rows are only defined for partial mode");
    problem.constraints = constraint_vectors(dim, family, problem.h_list);
  }
  scope.param("constraints", with_constraints ? "on" : "off");

  auto out = open_output(out_path);
  write_problem(out, problem);
  scope.output(out_path);
  std::cout << "h " << problem.h_list.size() << " bases "
            << problem.bases.size() << " constraints "
            << problem.constraints.size() << "\n";
  scope.write();
  return 0;
}

// ---- bound --------------------------------------------------------------------

int run_bound(const Common& common, const std::string& problem_path,
              const std::string& solver_cmd, const std::string& target_str,
              int round_k, std::string cert_path, int timeout_secs,
              std::string workdir) {
  ManifestScope scope("bound", common);
  scope.param("problem", problem_path);
  scope.param("solver-cmd", solver_cmd);
  scope.param("target", target_str);
  scope.param("round-k", std::to_string(round_k));
  scope.input(problem_path);

  Rat target = rat_parse(target_str);
  int threads = effective_threads(common.threads);

  ProblemFile file = read_problem(problem_path);
  DensityProblem problem = rebuild_problem(file, threads);

  if (workdir.empty()) {
    std::string tmpl = (fs::temp_directory_path() / "cubeflag-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data())) throw Error("cannot create work directory");
    workdir = buf.data();
  } else {
    fs::create_directories(workdir);
  }
  scope.param("workdir", workdir);

  std::string sdp_path = (fs::path(workdir) / "problem.dat-s").string();
  std::string sol_path = (fs::path(workdir) / "solution.sol").string();
  {
    auto out = open_output(sdp_path);
    emit_sdp(problem, out);
  }
  SdpLayout layout = sdp_layout(problem);
  run_solver(solver_cmd, sdp_path, sol_path, timeout_secs);
  SolverSolution sol;
  {
    std::ifstream in(sol_path);
    if (!in.is_open()) throw Error("solver wrote no solution file");
    sol = parse_solution(in, layout);
  }

  Certificate cert;
  cert.mode = problem.mode;
  cert.l = problem.l;
  cert.family = problem.family;
  std::vector<int> block_sizes;
  for (size_t i = 0; i < problem.bases.size(); ++i) {
    const FlagBasis& basis = problem.bases[i];
    Certificate::BasisDesc desc;
    desc.s = basis.sigma.s();
    desc.m = basis.m;
    desc.size = basis.size();
    desc.type = basis.sigma.cube;
    cert.bases.push_back(desc);
    CertificateBlock blk;
    blk.direct = false;
    blk.matrix = round_psd(sol.blocks[i], round_k);
    cert.blocks.push_back(std::move(blk));
    block_sizes.push_back(basis.size());
  }
  const auto& scalar = sol.blocks[layout.scalar_block() - 1];
  for (int j = 0; j < layout.constraint_count; ++j) {
    double mu = scalar[layout.mu_plus(j) - 1][0] -
                scalar[layout.mu_minus(j) - 1][0];
    cert.mu.push_back(round_dyadic(mu, round_k));
  }

  BoundResult result = exact_bound(problem, cert, threads);
  cert.claimed_bound = result.bound;

  if (cert_path.empty()) cert_path = problem_path + ".cert";
  {
    auto out = open_output(cert_path);
    write_certificate(out, cert, block_sizes);
  }
  scope.output(cert_path);
  scope.write();

  bool pass = result.bound <= target;
  std::cout << (pass ? "PASS" : "FAIL") << " bound "
            << rat_to_string(result.bound) << " ~= "
            << rat_decimal(result.bound, 6) << " target " << target_str
            << "\n";
  return pass ? 0 : 1;
}

// ---- certify ------------------------------------------------------------------

int run_certify(const Common& common, const std::string& problem_path,
                const std::string& cert_path, const std::string& target_str) {
  ManifestScope scope("certify", common);
  scope.param("problem", problem_path);
  scope.param("cert", cert_path);
  scope.param("target", target_str);

  Rat target = rat_parse(target_str);
  VerifyReport report = verify(problem_path, cert_path, target,
                               effective_threads(common.threads));
  if (!report.input_ok) {
    std::cout << "INPUT-ERROR " << report.reason << "\n";
    return 2;
  }
  scope.input(problem_path);
  scope.input(cert_path);
  if (report.pass) {
    std::cout << "PASS bound " << rat_to_string(report.bound) << " ~= "
              << rat_decimal(report.bound, 6) << " target " << target_str
              << " attained-by " << report.argmax_word << "\n";
    if (!report.psd_note.empty()) std::cout << report.psd_note << "\n";
    scope.write();
    return 0;
  }
  std::cout << "FAIL " << report.reason << "\n";
  scope.write();
  return 1;
}

// ---- construct ----------------------------------------------------------------

SignedPermutation parse_relabel(const std::string& perm_str, int flips,
                                int dim) {
  SignedPermutation g = SignedPermutation::identity(dim);
  if (!perm_str.empty()) {
    auto perm = parse_int_list(perm_str);
    if (static_cast<int>(perm.size()) != dim)
      throw Error("relabel permutation needs " + std::to_string(dim) +
                  " entries");
    std::vector<bool> seen(dim, false);
    for (int i = 0; i < dim; ++i) {
      if (perm[i] < 0 || perm[i] >= dim || seen[perm[i]])
        throw Error("relabel is not a permutation");
      seen[perm[i]] = true;
      g.perm[i] = perm[i];
    }
  }
  if (flips < 0 || flips >= (1 << dim))
    throw Error("relabel flips out of range");
  g.flips = static_cast<uint32_t>(flips);
  return g;
}

int run_construct(const Common& common, const std::string& kind_str, int n,
                  int k, int z, int z2, int split, const std::string& relabel1,
                  const std::string& relabel2, int flips1, int flips2,
                  const std::string& forbid, bool dump) {
  ManifestScope scope("construct", common);
  scope.param("kind", kind_str);
  scope.param("n", std::to_string(n));
  scope.param("k", std::to_string(k));
  scope.param("z", std::to_string(z));
  scope.param("forbid", forbid);
  scope.input(forbid);

  ConstructionSpec spec;
  spec.kind = construction_kind_from_name(kind_str);
  spec.n = n;
  spec.k = k;
  spec.z = z;
  spec.z2 = z2;
  spec.split = split;
  if (spec.kind == ConstructionKind::TwoHalves && n >= 1) {
    spec.relabel1 = parse_relabel(relabel1, flips1, n - 1);
    spec.relabel2 = parse_relabel(relabel2, flips2, n - 1);
  }
  spec.validate();

  ForbiddenFamily family = read_family(forbid);
  CubeColouring c = build_construction(spec);
  Evaluation eval = evaluate_construction(c, family);
  std::cout << c.blue_count() << "/" << slot_count(c.mode, c.dim)
            << " f-free=" << (eval.f_free ? "true" : "false") << "\n";
  if (dump) std::cout << c.text() << "\n";
  scope.write();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Turan-density bounds for colourings of the hypercube"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--threads", common.threads,
                 "worker threads (0 = all hardware threads)")
      ->capture_default_str();
  app.add_option("--manifest", common.manifest_path,
                 "run-manifest path (default: <first-output>.manifest.json)");

  int exit_code = 0;

  // enumerate
  auto* cmd_enum = app.add_subcommand(
      "enumerate", "Count (and optionally write) the F-free colouring classes");
  cmd_enum->fallthrough();
  struct {
    std::string mode, forbid, out;
    int dim = 0;
  } en;
  cmd_enum->add_option("--mode", en.mode, "vertex|edge|partial|triedge")
      ->required();
  cmd_enum->add_option("--dim", en.dim, "cube dimension")->required();
  cmd_enum->add_option("--forbid", en.forbid, "forbidden-family file")
      ->required();
  cmd_enum->add_option("--out", en.out, "write the class list here");
  cmd_enum->callback([&]() {
    exit_code = run_enumerate(common, en.mode, en.dim, en.forbid, en.out);
  });

  // flags
  auto* cmd_flags = app.add_subcommand(
      "flags", "List labelled types and their flag-basis sizes");
  cmd_flags->fallthrough();
  struct {
    std::string mode, forbid;
    int dim = 0, s = 0, m = -1;
  } fl;
  cmd_flags->add_option("--mode", fl.mode, "vertex|edge|partial")->required();
  cmd_flags->add_option("--dim", fl.dim, "working dimension l")->required();
  cmd_flags->add_option("--s", fl.s, "type dimension")->required();
  cmd_flags->add_option("--m", fl.m, "flag dimension (default (l+s)/2)");
  cmd_flags->add_option("--forbid", fl.forbid, "forbidden-family file")
      ->required();
  cmd_flags->callback([&]() {
    exit_code = run_flags(common, fl.mode, fl.dim, fl.s, fl.m, fl.forbid);
  });

  // constraints
  auto* cmd_cons = app.add_subcommand(
      "constraints", "Compute the linear side constraints for partial mode");
  cmd_cons->fallthrough();
  struct {
    std::string forbid, out;
    int dim = 0;
  } co;
  cmd_cons->add_option("--dim", co.dim, "cube dimension")->required();
  cmd_cons->add_option("--forbid", co.forbid, "forbidden-family file")
      ->required();
  cmd_cons->add_option("--out", co.out, "write the rows here");
  cmd_cons->callback([&]() {
    exit_code = run_constraints(common, co.dim, co.forbid, co.out);
  });

  // assemble
  auto* cmd_asm = app.add_subcommand(
      "assemble", "Build a density problem file (H-list, bases, tensors)");
  cmd_asm->fallthrough();
  struct {
    std::string mode, forbid, out, type_dims;
    bool no_constraints = false, constraints = false;
  } as;
  int as_dim = 0;
  cmd_asm->add_option("--mode", as.mode, "vertex|edge|partial")->required();
  cmd_asm->add_option("--dim", as_dim, "cube dimension")->required();
  cmd_asm->add_option("--forbid", as.forbid, "forbidden-family file")
      ->required();
  cmd_asm->add_option("--out", as.out, "problem file to write")->required();
  cmd_asm->add_option("--type-dims", as.type_dims,
                      "comma-separated type dimensions (default by mode)");
  cmd_asm->add_flag("--no-constraints", as.no_constraints,
                    "omit side constraints (partial mode)");
  cmd_asm->add_flag("--constraints", as.constraints,
                    "require side constraints (error outside partial mode)");
  cmd_asm->callback([&]() {
    exit_code = run_assemble(common, as.mode, as_dim, as.forbid, as.out,
                             as.type_dims, as.no_constraints, as.constraints);
  });

  // bound
  auto* cmd_bound = app.add_subcommand(
      "bound", "Solve the SDP, round to an exact certificate, check a target");
  cmd_bound->fallthrough();
  struct {
    std::string problem, solver, target, cert, workdir;
    int round_k = 20, timeout = 3600;
  } bo;
  cmd_bound->add_option("--problem", bo.problem, "problem file")->required();
  cmd_bound
      ->add_option("--solver-cmd", bo.solver,
                   "shell command with {in} and {out} placeholders")
      ->required();
  cmd_bound->add_option("--target", bo.target, "exact rational target")
      ->required();
  cmd_bound->add_option("--round-k", bo.round_k,
                        "dyadic rounding denominator exponent")
      ->capture_default_str();
  cmd_bound->add_option("--out-cert", bo.cert,
                        "certificate file (default <problem>.cert)");
  cmd_bound->add_option("--timeout-secs", bo.timeout, "solver timeout")
      ->capture_default_str();
  cmd_bound->add_option("--workdir", bo.workdir,
                        "keep SDP input/output here (default: fresh tmpdir)");
  cmd_bound->callback([&]() {
    exit_code = run_bound(common, bo.problem, bo.solver, bo.target, bo.round_k,
                          bo.cert, bo.timeout, bo.workdir);
  });

  // certify
  auto* cmd_cert = app.add_subcommand(
      "certify", "Verify a certificate against a problem file and target");
  cmd_cert->fallthrough();
  struct {
    std::string problem, cert, target;
  } ce;
  cmd_cert->add_option("--problem", ce.problem, "problem file")->required();
  cmd_cert->add_option("--cert", ce.cert, "certificate file")->required();
  cmd_cert->add_option("--target", ce.target, "exact rational target")
      ->required();
  cmd_cert->callback([&]() {
    exit_code = run_certify(common, ce.problem, ce.cert, ce.target);
  });

  // construct
  auto* cmd_con = app.add_subcommand(
      "construct", "Evaluate an explicit lower-bound colouring");
  cmd_con->fallthrough();
  struct {
    std::string kind, forbid, relabel1, relabel2;
    int n = 0, k = 3, z = 0, z2 = 0, split = -1, flips1 = 0, flips2 = 0;
    bool dump = false;
  } cn;
  cmd_con->add_option("--kind", cn.kind,
                      "vertex-layered|edge-layered|two-halves")
      ->required();
  cmd_con->add_option("--n", cn.n, "cube dimension")->required();
  cmd_con->add_option("--k", cn.k, "layer modulus")->capture_default_str();
  cmd_con->add_option("--z", cn.z, "red layer residue")->capture_default_str();
  cmd_con->add_option("--z2", cn.z2, "second-half residue (two-halves)")
      ->capture_default_str();
  cmd_con->add_option("--split", cn.split,
                      "split direction (two-halves; default n-1)");
  cmd_con->add_option("--relabel1", cn.relabel1,
                      "first-half direction permutation, comma-separated");
  cmd_con->add_option("--relabel2", cn.relabel2,
                      "second-half direction permutation, comma-separated");
  cmd_con->add_option("--flips1", cn.flips1, "first-half coordinate flips");
  cmd_con->add_option("--flips2", cn.flips2, "second-half coordinate flips");
  cmd_con->add_option("--forbid", cn.forbid, "forbidden-family file")
      ->required();
  cmd_con->add_flag("--dump", cn.dump, "also print the colouring text form");
  cmd_con->callback([&]() {
    exit_code =
        run_construct(common, cn.kind, cn.n, cn.k, cn.z, cn.z2, cn.split,
                      cn.relabel1, cn.relabel2, cn.flips1, cn.flips2,
                      cn.forbid, cn.dump);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Solver/rounding/verification failures count as run failures; malformed
    // or missing inputs count as input errors.
    return app.got_subcommand("bound") ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
