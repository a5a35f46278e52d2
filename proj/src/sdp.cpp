#include "cubeflag/sdp.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace cubeflag {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const Rat& v) { return fmt(v.get_d()); }

}  // namespace

SdpLayout sdp_layout(const DensityProblem& problem) {
  SdpLayout layout;
  for (const auto& basis : problem.bases)
    layout.basis_sizes.push_back(basis.size());
  layout.h_count = static_cast<int>(problem.h_list.size());
  layout.constraint_count = static_cast<int>(problem.constraints.size());
  return layout;
}

void emit_sdp(const DensityProblem& problem, std::ostream& out) {
  SdpLayout layout = sdp_layout(problem);
  const int nb = static_cast<int>(layout.basis_sizes.size());

  out << layout.h_count << "\n";
  out << layout.block_count() << "\n";
  for (int i = 0; i < nb; ++i)
    out << (i ? " " : "") << layout.basis_sizes[i];
  out << (nb ? " " : "") << -layout.h_count << " " << -layout.scalar_size()
      << "\n";
  for (int h = 0; h < layout.h_count; ++h)
    out << (h ? " " : "") << fmt(Rat(-problem.densities[h]));
  out << "\n";

  // Objective matrix: maximize -t+ + t- over the solution matrix.
  out << "0 " << layout.scalar_block() << " " << layout.t_plus() << " "
      << layout.t_plus() << " -1.0\n";
  out << "0 " << layout.scalar_block() << " " << layout.t_minus() << " "
      << layout.t_minus() << " 1.0\n";

  // Constraint-row coefficients grouped per H.
  std::vector<std::vector<std::pair<int, Rat>>> by_h(layout.h_count);
  for (int j = 0; j < layout.constraint_count; ++j)
    for (const auto& [hi, v] : problem.constraints[j].entries)
      by_h[hi].emplace_back(j, v);

  for (int h = 0; h < layout.h_count; ++h) {
    const int matno = h + 1;
    for (int i = 0; i < nb; ++i) {
      const FlagBasis& basis = problem.bases[i];
      uint64_t w = pair_weight(problem.mode, problem.l, basis.sigma.s(),
                               basis.m);
      PairCounts row = pair_tensor_row(basis, problem.h_list[h]);
      for (size_t e = 0; e < row.keys.size(); ++e) {
        if (row.counts[e] == 0) continue;
        Rat v(mpz_class(row.counts[e]), mpz_class(w));
        v.canonicalize();
        out << matno << " " << i + 1 << " " << row.keys[e][0] + 1 << " "
            << row.keys[e][1] + 1 << " " << fmt(v) << "\n";
      }
    }
    out << matno << " " << layout.slack_block() << " " << h + 1 << " " << h + 1
        << " 1.0\n";
    out << matno << " " << layout.scalar_block() << " " << layout.t_plus()
        << " " << layout.t_plus() << " -1.0\n";
    out << matno << " " << layout.scalar_block() << " " << layout.t_minus()
        << " " << layout.t_minus() << " 1.0\n";
    for (const auto& [j, v] : by_h[h]) {
      if (v == 0) continue;
      out << matno << " " << layout.scalar_block() << " " << layout.mu_plus(j)
          << " " << layout.mu_plus(j) << " " << fmt(v) << "\n";
      out << matno << " " << layout.scalar_block() << " " << layout.mu_minus(j)
          << " " << layout.mu_minus(j) << " " << fmt(Rat(-v)) << "\n";
    }
  }
}

SolverSolution parse_solution(std::istream& in, const SdpLayout& layout) {
  SolverSolution sol;
  std::string line;
  if (!std::getline(in, line)) throw Error("solution file: empty");
  {
    std::istringstream first(line);
    double v;
    while (first >> v) sol.dual.push_back(v);
    if (static_cast<int>(sol.dual.size()) != layout.h_count)
      throw Error("solution file: dual vector has " +
                  std::to_string(sol.dual.size()) + " entries, expected " +
                  std::to_string(layout.h_count));
  }

  const int nb = static_cast<int>(layout.basis_sizes.size());
  auto block_size = [&](int b) {  // 1-based block number
    if (b <= nb) return layout.basis_sizes[b - 1];
    if (b == layout.slack_block()) return layout.h_count;
    return layout.scalar_size();
  };
  auto diagonal = [&](int b) { return b > nb; };

  sol.blocks.resize(layout.block_count());
  for (int b = 1; b <= layout.block_count(); ++b) {
    int n = block_size(b);
    int cols = diagonal(b) ? 1 : n;
    sol.blocks[b - 1].assign(n, std::vector<double>(cols, 0.0));
  }

  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    int matno, b, i, j;
    double v;
    if (!(row >> matno >> b >> i >> j >> v)) {
      std::string rest;
      std::istringstream probe(line);
      if (probe >> rest)
        throw Error("solution file line " + std::to_string(lineno) +
                    ": expected `matno block i j value`");
      continue;  // blank line
    }
    if (matno != 1 && matno != 2)
      throw Error("solution file line " + std::to_string(lineno) +
                  ": matno must be 1 or 2");
    if (b < 1 || b > layout.block_count())
      throw Error("solution file line " + std::to_string(lineno) +
                  ": block out of range");
    int n = block_size(b);
    if (i < 1 || i > n || j < 1 || j > n)
      throw Error("solution file line " + std::to_string(lineno) +
                  ": index out of range");
    if (diagonal(b) && i != j)
      throw Error("solution file line " + std::to_string(lineno) +
                  ": off-diagonal entry in a diagonal block");
    if (matno == 1) continue;  // dual slack matrix: not needed
    if (diagonal(b)) {
      sol.blocks[b - 1][i - 1][0] = v;
    } else {
      sol.blocks[b - 1][i - 1][j - 1] = v;
      sol.blocks[b - 1][j - 1][i - 1] = v;
    }
  }

  const auto& scalar = sol.blocks[layout.scalar_block() - 1];
  sol.objective = -scalar[layout.t_plus() - 1][0] +
                  scalar[layout.t_minus() - 1][0];
  return sol;
}

namespace {

void substitute_all(std::string& s, const std::string& key,
                    const std::string& value) {
  size_t pos = 0;
  while ((pos = s.find(key, pos)) != std::string::npos) {
    s.replace(pos, key.size(), value);
    pos += value.size();
  }
}

}  // namespace

SolverRun run_solver(const std::string& command_template,
                     const std::string& in_path, const std::string& out_path,
                     int timeout_secs) {
  if (command_template.find("{in}") == std::string::npos ||
      command_template.find("{out}") == std::string::npos)
    throw Error("solver command must contain {in} and {out} placeholders");
  std::string cmd = command_template;
  substitute_all(cmd, "{in}", in_path);
  substitute_all(cmd, "{out}", out_path);

  int fds[2];
  if (pipe(fds) != 0) throw Error("pipe: " + std::string(strerror(errno)));
  pid_t pid = fork();
  if (pid < 0) {
    close(fds[0]);
    close(fds[1]);
    throw Error("fork: " + std::string(strerror(errno)));
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(fds[1], STDOUT_FILENO);
    dup2(fds[1], STDERR_FILENO);
    close(fds[0]);
    close(fds[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(fds[1]);
  fcntl(fds[0], F_SETFL, O_NONBLOCK);

  std::string output;
  auto drain = [&]() {
    char buf[4096];
    while (true) {
      ssize_t got = read(fds[0], buf, sizeof buf);
      if (got > 0)
        output.append(buf, static_cast<size_t>(got));
      else
        break;
    }
  };

  auto deadline =
      std::chrono::steady_clock::now() + std::chrono::seconds(timeout_secs);
  int status = 0;
  bool exited = false;
  while (!exited) {
    drain();
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) {
      exited = true;
      break;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      close(fds[0]);
      std::remove(out_path.c_str());
      throw Error("solver timed out after " + std::to_string(timeout_secs) +
                  "s");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  drain();
  close(fds[0]);

  std::string tail =
      output.size() > 4000 ? output.substr(output.size() - 4000) : output;
  SolverRun run;
  run.output_tail = tail;
  if (WIFEXITED(status)) {
    run.exit_code = WEXITSTATUS(status);
  } else {
    run.exit_code = -1;
  }
  if (run.exit_code == 127)
    throw Error("solver not found: " + cmd + "\n" + tail);
  if (run.exit_code != 0)
    throw Error("solver exited with code " + std::to_string(run.exit_code) +
                "\n" + tail);
  return run;
}

}  // namespace cubeflag
