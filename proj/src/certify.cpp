#include "cubeflag/certify.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "cubeflag/io.hpp"

namespace cubeflag {

Rat round_dyadic(double x, int k) {
  if (!std::isfinite(x)) throw Error("non-finite value in matrix rounding");
  Rat exact(x);  // binary doubles convert exactly
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(k));
  Rat scaled = exact * Rat(scale) + Rat(1, 2);
  mpz_class floor_val;
  mpz_fdiv_q(floor_val.get_mpz_t(), scaled.get_num().get_mpz_t(),
             scaled.get_den().get_mpz_t());
  Rat r(floor_val, scale);
  r.canonicalize();
  return r;
}

namespace {

bool try_cholesky(const FloatMatrix& a, double eps, FloatMatrix& r) {
  const size_t n = a.size();
  r.assign(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    double diag = a[i][i] + eps;
    for (size_t t = 0; t < i; ++t) diag -= r[t][i] * r[t][i];
    if (!(diag > 0.0)) return false;
    r[i][i] = std::sqrt(diag);
    for (size_t j = i + 1; j < n; ++j) {
      double v = 0.5 * (a[i][j] + a[j][i]);
      for (size_t t = 0; t < i; ++t) v -= r[t][i] * r[t][j];
      r[i][j] = v / r[i][i];
    }
  }
  return true;
}

}  // namespace

RatMatrix round_psd(const FloatMatrix& q, int k) {
  if (k < 1 || k > 256) throw Error("rounding denominator exponent out of range");
  const size_t n = q.size();
  for (const auto& row : q)
    if (row.size() != n) throw Error("round_psd: matrix not square");
  FloatMatrix r;
  bool ok = false;
  for (double eps = std::ldexp(1.0, -30); eps <= std::ldexp(1.0, -10);
       eps *= 2.0)
    if (try_cholesky(q, eps, r)) {
      ok = true;
      break;
    }
  if (!ok)
    throw Error("round_psd: matrix too far from PSD (no eps in [2^-30, 2^-10] "
                "admits a Cholesky factor)");
  RatMatrix out(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) out[i][j] = round_dyadic(r[i][j], k);
  return out;
}

bool psd_check_ldl(const RatMatrix& q) {
  const size_t n = q.size();
  RatMatrix a = q;
  for (size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw Error("psd_check_ldl: matrix not square");
    for (size_t j = i + 1; j < n; ++j)
      if (a[i][j] != a[j][i]) throw Error("psd_check_ldl: matrix not symmetric");
  }
  for (size_t i = 0; i < n; ++i) {
    const Rat& pivot = a[i][i];
    if (pivot < 0) return false;
    if (pivot == 0) {
      for (size_t j = i + 1; j < n; ++j)
        if (a[i][j] != 0) return false;  // zero diagonal with nonzero row
      continue;
    }
    // Schur complement of the pivot; the trailing submatrix stays symmetric.
    for (size_t r2 = i + 1; r2 < n; ++r2) {
      if (a[r2][i] == 0) continue;
      Rat f = a[r2][i] / pivot;
      for (size_t c = i; c < n; ++c) a[r2][c] -= f * a[i][c];
    }
  }
  return true;
}

namespace {

// Dense Q blocks from the certificate (factor blocks expanded to R^T R).
std::vector<RatMatrix> certificate_q_blocks(const Certificate& cert) {
  std::vector<RatMatrix> qs;
  qs.reserve(cert.blocks.size());
  for (size_t i = 0; i < cert.blocks.size(); ++i) {
    const CertificateBlock& blk = cert.blocks[i];
    const size_t n = blk.matrix.size();
    if (static_cast<int>(n) != cert.bases[i].size)
      throw Error("certificate block size mismatch");
    for (const auto& row : blk.matrix)
      if (row.size() != n) throw Error("certificate block not square");
    if (blk.direct) {
      qs.push_back(blk.matrix);
      continue;
    }
    RatMatrix q(n, std::vector<Rat>(n, Rat(0)));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = a; b < n; ++b) {
        Rat v = 0;
        for (size_t t = 0; t <= a; ++t) v += blk.matrix[t][a] * blk.matrix[t][b];
        q[a][b] = v;
        q[b][a] = v;
      }
    qs.push_back(std::move(q));
  }
  return qs;
}

void check_shapes(const DensityProblem& problem, const Certificate& cert) {
  if (cert.mode != problem.mode || cert.l != problem.l)
    throw Error("certificate is for a different mode or dimension");
  std::vector<std::string> a, b;
  for (const auto& mem : cert.family.members) a.push_back(mem.text());
  for (const auto& mem : problem.family.members) b.push_back(mem.text());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw Error("certificate is for a different forbidden family");
  if (cert.bases.size() != problem.bases.size() ||
      cert.blocks.size() != problem.bases.size())
    throw Error("certificate basis count mismatch");
  for (size_t i = 0; i < cert.bases.size(); ++i) {
    const auto& desc = cert.bases[i];
    const FlagBasis& basis = problem.bases[i];
    if (desc.s != basis.sigma.s() || desc.m != basis.m ||
        desc.size != basis.size() ||
        desc.type.word != basis.sigma.cube.word)
      throw Error("certificate basis " + std::to_string(i) +
                  " does not match the problem");
  }
  if (cert.mu.size() != problem.constraints.size())
    throw Error("certificate multiplier count mismatch");
}

}  // namespace

BoundResult exact_bound(const DensityProblem& problem, const Certificate& cert,
                        int threads) {
  check_shapes(problem, cert);
  std::vector<RatMatrix> qs = certificate_q_blocks(cert);
  std::vector<uint64_t> weights;
  for (const FlagBasis& basis : problem.bases)
    weights.push_back(
        pair_weight(problem.mode, problem.l, basis.sigma.s(), basis.m));

  // Fold the multipliers into one sparse shift per H.
  std::unordered_map<uint32_t, Rat> shift;
  for (size_t j = 0; j < problem.constraints.size(); ++j)
    for (const auto& [hi, v] : problem.constraints[j].entries)
      shift[hi] += cert.mu[j] * v;

  const size_t count = problem.h_list.size();
  auto value_of = [&](size_t hi) {
    Rat val = problem.densities[hi];
    for (size_t i = 0; i < problem.bases.size(); ++i) {
      PairCounts row = pair_tensor_row(problem.bases[i], problem.h_list[hi]);
      Rat inner = 0;
      for (size_t e = 0; e < row.keys.size(); ++e) {
        auto [a, b] = row.keys[e];
        Rat term = Rat(mpz_class(row.counts[e])) * qs[i][a][b];
        inner += a == b ? term : 2 * term;
      }
      if (inner != 0) val += inner / Rat(mpz_class(weights[i]));
    }
    if (auto it = shift.find(static_cast<uint32_t>(hi)); it != shift.end())
      val += it->second;
    return val;
  };

  int workers = std::max(1, threads);
  std::vector<BoundResult> partial(workers);
  auto run = [&](int t, size_t begin, size_t end) {
    BoundResult local;
    for (size_t hi = begin; hi < end; ++hi) {
      Rat v = value_of(hi);
      if (local.argmax_h < 0 || v > local.bound) {
        local.bound = v;
        local.argmax_h = static_cast<int>(hi);
      }
    }
    partial[t] = std::move(local);
  };
  if (workers == 1 || count < 256) {
    run(0, 0, count);
    if (partial[0].argmax_h < 0) throw Error("exact_bound: empty H-list");
    return partial[0];
  }
  std::vector<std::thread> pool;
  size_t chunk = (count + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    size_t b = std::min(count, t * chunk);
    size_t e = std::min(count, b + chunk);
    pool.emplace_back(run, t, b, e);
  }
  for (auto& th : pool) th.join();
  BoundResult best;
  for (const auto& local : partial) {
    if (local.argmax_h < 0) continue;
    if (best.argmax_h < 0 || local.bound > best.bound) best = local;
  }
  if (best.argmax_h < 0) throw Error("exact_bound: empty H-list");
  return best;
}

VerifyReport verify(const std::string& problem_path,
                    const std::string& cert_path, const Rat& target,
                    int threads) {
  VerifyReport rep;
  ProblemFile pf;
  Certificate cert;
  try {
    pf = read_problem(problem_path);
    cert = read_certificate(cert_path);
  } catch (const FileError& e) {
    rep.input_ok = false;
    rep.reason = e.what();
    return rep;
  } catch (const Error& e) {
    rep.reason = e.what();
    return rep;
  }
  try {
    DensityProblem problem = rebuild_problem(pf, threads);

    // Direct-Q blocks must prove their own positive semidefiniteness; factor
    // blocks are PSD by construction.
    std::string note;
    for (size_t i = 0; i < cert.blocks.size(); ++i) {
      if (!note.empty()) note += "; ";
      if (cert.blocks[i].direct) {
        if (!psd_check_ldl(cert.blocks[i].matrix)) {
          rep.reason = "block " + std::to_string(i) +
                       ": direct Q is not positive semidefinite";
          return rep;
        }
        note += "block " + std::to_string(i) + ": LDL pivots nonnegative";
      } else {
        note += "block " + std::to_string(i) + ": R^T R, PSD by construction";
      }
    }
    rep.psd_note = note;

    BoundResult res = exact_bound(problem, cert, threads);
    rep.bound = res.bound;
    rep.argmax_h = res.argmax_h;
    rep.argmax_word = problem.h_list[res.argmax_h].text();
    rep.pass = res.bound <= target;
    if (!rep.pass)
      rep.reason = "recomputed bound " + rat_to_string(res.bound) +
                   " exceeds target " + rat_to_string(target);
  } catch (const Error& e) {
    rep.pass = false;
    rep.reason = e.what();
  }
  return rep;
}

}  // namespace cubeflag
