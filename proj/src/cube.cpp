#include "cubeflag/cube.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>

namespace cubeflag {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxDim) throw Error("dimension out of range: " + std::to_string(n));
}

}  // namespace

int edge_rank_in_direction(int n, int dir, uint32_t base) {
  // Rank of `base` among vertices with bit `dir` clear: drop bit `dir` and
  // close the gap.
  uint32_t low = base & ((1u << dir) - 1);
  uint32_t high = base >> (dir + 1);
  (void)n;
  return static_cast<int>(low | (high << dir));
}

int edge_index(int n, int dir, uint32_t base) {
  check_dim(n);
  if (dir < 0 || dir >= n) throw Error("edge direction out of range");
  if (base >> n) throw Error("edge base out of range");
  if (base >> dir & 1u) throw Error("edge base must have the direction bit clear");
  return dir * (1 << (n - 1)) + edge_rank_in_direction(n, dir, base);
}

std::pair<uint32_t, int> edge_endpoints(int n, int index) {
  check_dim(n);
  if (n == 0 || index < 0 || index >= edge_count(n))
    throw Error("edge index out of range");
  int half = 1 << (n - 1);
  int dir = index / half;
  uint32_t rank = static_cast<uint32_t>(index % half);
  uint32_t low = rank & ((1u << dir) - 1);
  uint32_t high = rank >> dir;
  return {low | (high << (dir + 1)), dir};
}

bool is_edge(int n, uint32_t u, uint32_t v) {
  check_dim(n);
  if ((u >> n) || (v >> n)) throw Error("vertex out of range");
  return std::popcount(u ^ v) == 1;
}

int layer(uint32_t v) { return std::popcount(v); }

SignedPermutation SignedPermutation::identity(int n) {
  check_dim(n);
  SignedPermutation g;
  g.dim = static_cast<uint8_t>(n);
  for (int d = 0; d < n; ++d) g.perm[d] = static_cast<uint8_t>(d);
  return g;
}

SignedPermutation SignedPermutation::then(const SignedPermutation& g) const {
  if (dim != g.dim) throw Error("composing maps of different dimensions");
  SignedPermutation r;
  r.dim = dim;
  for (int d = 0; d < dim; ++d) r.perm[d] = g.perm[perm[d]];
  // flips of the composite: (g∘f)(v) = permbits_g(permbits_f(v ^ f.flips) ^ g.flips)
  //                                  = permbits_{gf}(v ^ f.flips ^ permbits_f^{-1}(g.flips))
  uint32_t pulled = 0;
  for (int d = 0; d < dim; ++d)
    if (g.flips >> perm[d] & 1u) pulled |= 1u << d;
  r.flips = flips ^ pulled;
  return r;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation r;
  r.dim = dim;
  for (int d = 0; d < dim; ++d) r.perm[perm[d]] = static_cast<uint8_t>(d);
  uint32_t moved = 0;
  for (int d = 0; d < dim; ++d)
    if (flips >> d & 1u) moved |= 1u << perm[d];
  r.flips = moved;
  return r;
}

std::vector<Subcube> enumerate_subcubes(int n, int m) {
  check_dim(n);
  if (m < 0 || m > n) throw Error("subcube dimension out of range");
  std::vector<Subcube> out;
  std::vector<uint8_t> dirs(m);
  // lexicographic m-combinations of {0..n-1}
  std::vector<int> c(m);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    uint32_t span = 0;
    for (int j = 0; j < m; ++j) {
      dirs[j] = static_cast<uint8_t>(c[j]);
      span |= 1u << c[j];
    }
    for (uint32_t base = 0; base < (1u << n); ++base)
      if ((base & span) == 0) out.push_back({base, dirs});
    // next combination
    int i = m - 1;
    while (i >= 0 && c[i] == n - m + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < m; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::vector<LabelledEmbedding> enumerate_embeddings(int n, int s,
                                                    int fixed_dirs) {
  check_dim(n);
  if (s < 0 || s > n) throw Error("embedding dimension out of range");
  if (fixed_dirs < 0 || fixed_dirs > s) throw Error("fixed_dirs out of range");
  std::vector<LabelledEmbedding> out;
  std::vector<uint8_t> dirs(s);
  for (int d = 0; d < fixed_dirs; ++d) dirs[d] = static_cast<uint8_t>(d);
  uint32_t used0 = (1u << fixed_dirs) - 1;
  // ordered tuples of distinct free directions, lexicographic
  auto rec = [&](auto&& self, int pos, uint32_t used) -> void {
    if (pos == s) {
      for (uint32_t base = 0; base < (1u << n); ++base)
        out.push_back({base, dirs});
      return;
    }
    for (int d = 0; d < n; ++d) {
      if (used >> d & 1u) continue;
      dirs[pos] = static_cast<uint8_t>(d);
      self(self, pos + 1, used | (1u << d));
    }
  };
  rec(rec, fixed_dirs, used0);
  return out;
}

const std::vector<SignedPermutation>& symmetry_group(int n, int fixed_dirs) {
  check_dim(n);
  if (n > kMaxGroupDim)
    throw Error("symmetry group capacity: dim " + std::to_string(n) +
                " exceeds " + std::to_string(kMaxGroupDim));
  if (fixed_dirs < 0 || fixed_dirs > n) throw Error("fixed_dirs out of range");
  static std::map<std::pair<int, int>, std::vector<SignedPermutation>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, fixed_dirs);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<SignedPermutation> group;
  std::vector<uint8_t> tail(n - fixed_dirs);
  std::iota(tail.begin(), tail.end(), static_cast<uint8_t>(fixed_dirs));
  do {
    SignedPermutation g;
    g.dim = static_cast<uint8_t>(n);
    for (int d = 0; d < fixed_dirs; ++d) g.perm[d] = static_cast<uint8_t>(d);
    for (int d = fixed_dirs; d < n; ++d) g.perm[d] = tail[d - fixed_dirs];
    for (uint32_t flips = 0; flips < (1u << n); ++flips) {
      g.flips = flips;
      group.push_back(g);
    }
  } while (std::next_permutation(tail.begin(), tail.end()));
  return cache.emplace(key, std::move(group)).first->second;
}

uint64_t falling_factorial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  uint64_t r = 1;
  for (uint64_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace cubeflag
