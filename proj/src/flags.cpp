#include "cubeflag/flags.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <thread>

namespace cubeflag {

namespace {

std::string word_key(const std::vector<Colour>& w) {
  std::string k;
  k.reserve(w.size());
  for (Colour c : w) k.push_back(colour_char(c));
  return k;
}

// Induced vertex word of the subcube given by the embedding (dim = #dirs).
std::vector<Colour> extract_vertex_word(const CubeColouring& host,
                                        const LabelledEmbedding& e) {
  int m = static_cast<int>(e.dirs.size());
  std::vector<Colour> w(1u << m);
  for (uint32_t i = 0; i < w.size(); ++i) w[i] = host.word[e.map_vertex(i)];
  return w;
}

// Induced edge word (canonical edge order of the m-cube); greys of a Partial
// host carry through when the embedding keeps direction 0 first.
std::vector<Colour> extract_edge_word(const CubeColouring& host,
                                      const LabelledEmbedding& e) {
  int m = static_cast<int>(e.dirs.size());
  std::vector<Colour> w(static_cast<size_t>(edge_count(m)));
  for (int d = 0; d < m; ++d) {
    int hd = e.dirs[d];
    for (uint32_t base = 0; base < (1u << m); ++base) {
      if (base >> d & 1u) continue;
      uint32_t u = e.map_vertex(base);
      w[edge_index(m, d, base)] =
          host.word[edge_index(host.dim, hd, u & ~(1u << hd))];
    }
  }
  return w;
}

std::vector<Colour> extract_word(const CubeColouring& host,
                                 const LabelledEmbedding& e) {
  return is_vertex_mode(host.mode) ? extract_vertex_word(host, e)
                                   : extract_edge_word(host, e);
}

// Greys the slots of the first `g` directions of an edge word of the m-cube.
void grey_first_dirs(std::vector<Colour>& w, int m, int g) {
  for (int i = 0; i < g * (1 << (m - 1)); ++i) w[i] = Colour::Grey;
}

// Stabilizer of the standard type embedding theta0 inside the m-cube:
// direction permutations fixing 0..s-1 pointwise, no flips.
std::vector<SignedPermutation> theta0_stabilizer(int m, int s) {
  std::vector<SignedPermutation> stab;
  std::vector<uint8_t> tail(m - s);
  for (int d = s; d < m; ++d) tail[d - s] = static_cast<uint8_t>(d);
  do {
    SignedPermutation g = SignedPermutation::identity(m);
    for (int d = s; d < m; ++d) g.perm[d] = tail[d - s];
    stab.push_back(g);
  } while (std::next_permutation(tail.begin(), tail.end()));
  return stab;
}

// Canonical form of a flag word under the theta0 stabilizer.  The word is a
// full m-cube word of the basis mode.
std::vector<Colour> flag_canonical_word(
    Mode mode, int m, const std::vector<Colour>& word,
    const std::vector<SignedPermutation>& stab) {
  CubeColouring c;
  c.mode = mode;
  c.dim = m;
  c.word = word;
  std::vector<Colour> best = word;
  for (const auto& g : stab) {
    std::vector<Colour> img = apply_map(c, g).word;
    if (img < best) best = img;
  }
  return best;
}

// ---- Packed orbit enumeration ----------------------------------------------
// Words are packed into a uint32 over the non-grey slots, most significant
// bit = slot 0, bit set = Red.  Lexicographically smaller packed value means
// lexicographically smaller word (Blue < Red and the grey slots are the same
// fixed set in every orbit member).

struct PackedSpace {
  Mode mode;
  int l = 0;
  std::vector<int> free_slots;              // host word positions, ascending
  std::vector<int> packed_of_slot;          // -1 for grey slots
  int nfree = 0;
  uint32_t full = 0;
  // Per group element, per input byte of the packed word, the OR-contribution
  // to the permuted packed word.
  std::vector<std::array<std::array<uint32_t, 256>, 4>> tables;
  std::vector<uint32_t> masks;                  // forbidden blue sets
  std::vector<std::vector<uint32_t>> masks_at;  // masks containing bit p

  uint32_t bit(int packed_pos) const { return 1u << (nfree - 1 - packed_pos); }

  uint32_t canon(uint32_t w) const {
    uint32_t best = ~0u;
    for (const auto& t : tables) {
      uint32_t img = t[0][w & 0xff] | t[1][(w >> 8) & 0xff] |
                     t[2][(w >> 16) & 0xff] | t[3][(w >> 24) & 0xff];
      if (img < best) best = img;
    }
    return best;
  }

  CubeColouring to_colouring(uint32_t w) const {
    CubeColouring c = CubeColouring::uniform(mode, l, Colour::Blue);
    for (int p = 0; p < nfree; ++p)
      if (w & bit(p)) c.word[free_slots[p]] = Colour::Red;
    return c;
  }
};

int slot_image(Mode mode, int n, int slot, const SignedPermutation& g) {
  if (is_vertex_mode(mode)) return static_cast<int>(g.apply(static_cast<uint32_t>(slot)));
  auto [base, dir] = edge_endpoints(n, slot);
  int nd = g.perm[dir];
  uint32_t nb = g.apply(base) & ~(1u << nd);
  return edge_index(n, nd, nb);
}

PackedSpace build_packed_space(Mode mode, int l, const ForbiddenFamily& family) {
  PackedSpace sp;
  sp.mode = mode;
  sp.l = l;
  int slots = slot_count(mode, l);
  sp.packed_of_slot.assign(slots, -1);
  CubeColouring blank = CubeColouring::uniform(mode, l, Colour::Blue);
  for (int i = 0; i < slots; ++i) {
    if (blank.word[i] == Colour::Grey) continue;
    sp.packed_of_slot[i] = static_cast<int>(sp.free_slots.size());
    sp.free_slots.push_back(i);
  }
  sp.nfree = static_cast<int>(sp.free_slots.size());
  if (sp.nfree > 32)
    throw Error("enumeration capacity: " + std::to_string(sp.nfree) +
                " colourable slots exceed 32");
  sp.full = sp.nfree == 32 ? ~0u : (1u << sp.nfree) - 1u;

  const auto& group = symmetry_group(l, grey_dirs(mode));
  sp.tables.resize(group.size());
  for (size_t gi = 0; gi < group.size(); ++gi) {
    std::array<int, 32> pperm{};
    for (int p = 0; p < sp.nfree; ++p) {
      int img_slot = slot_image(mode, l, sp.free_slots[p], group[gi]);
      pperm[p] = sp.packed_of_slot[img_slot];
    }
    for (int c = 0; c < 4; ++c) {
      for (int byte = 0; byte < 256; ++byte) {
        uint32_t out = 0;
        for (int j = 0; j < 8; ++j) {
          if (!(byte >> j & 1)) continue;
          int abs_bit = c * 8 + j;
          int p = sp.nfree - 1 - abs_bit;
          if (p < 0 || p >= sp.nfree) continue;
          out |= sp.bit(pperm[p]);
        }
        sp.tables[gi][c][byte] = out;
      }
    }
  }

  // Forbidden blue sets: for every family member and every labelled embedding
  // of it, the set of packed positions its Blue slots occupy.  Embeddings that
  // would put a Blue on a grey slot can never fire.
  family.validate();
  if (!family.members.empty() &&
      family.vertex_mode() != is_vertex_mode(mode))
    throw Error("family mode does not match the enumeration mode");
  std::vector<uint32_t> mask_set;
  for (const auto& p : family.members) {
    if (p.dim > l) continue;
    for (const auto& e : enumerate_embeddings(l, p.dim, 0)) {
      uint32_t mask = 0;
      bool ok = true;
      if (is_vertex_mode(mode)) {
        for (uint32_t v = 0; v < p.word.size() && ok; ++v) {
          if (p.word[v] != Colour::Blue) continue;
          mask |= sp.bit(sp.packed_of_slot[e.map_vertex(v)]);
        }
      } else {
        for (int d = 0; d < p.dim && ok; ++d) {
          for (uint32_t base = 0; base < (1u << p.dim); ++base) {
            if (base >> d & 1u) continue;
            if (p.word[edge_index(p.dim, d, base)] != Colour::Blue) continue;
            int hd = e.dirs[d];
            uint32_t u = e.map_vertex(base);
            int slot = edge_index(l, hd, u & ~(1u << hd));
            if (sp.packed_of_slot[slot] < 0) {
              ok = false;  // would need a Blue on a grey edge
              break;
            }
            mask |= sp.bit(sp.packed_of_slot[slot]);
          }
        }
      }
      if (ok) mask_set.push_back(mask);
    }
  }
  std::sort(mask_set.begin(), mask_set.end());
  mask_set.erase(std::unique(mask_set.begin(), mask_set.end()), mask_set.end());
  sp.masks = std::move(mask_set);
  sp.masks_at.resize(sp.nfree);
  for (uint32_t mask : sp.masks)
    for (int p = 0; p < sp.nfree; ++p)
      if (mask & sp.bit(p)) sp.masks_at[p].push_back(mask);
  return sp;
}

// Breadth-first enumeration of F-free canonical classes, adding blues one at
// a time starting from the all-red word.  F-freeness is monotone under
// recolouring Blue -> Red, so every class is reachable through F-free
// parents; children are checked only against the forbidden sets that use the
// new blue slot.
std::vector<uint32_t> packed_enumerate(const PackedSpace& sp, int threads) {
  std::vector<uint32_t> result;
  // A member with no Blue slots forbids everything.
  for (uint32_t mask : sp.masks)
    if (mask == 0) return result;

  std::vector<uint32_t> level{sp.full};  // all red; fixed by the whole group
  while (!level.empty()) {
    result.insert(result.end(), level.begin(), level.end());
    std::vector<uint32_t> next;
    auto expand = [&sp](const std::vector<uint32_t>& src, size_t begin,
                        size_t end, std::vector<uint32_t>& out) {
      for (size_t i = begin; i < end; ++i) {
        uint32_t w = src[i];
        uint32_t blue = ~w & sp.full;
        for (int p = 0; p < sp.nfree; ++p) {
          uint32_t b = sp.bit(p);
          if (!(w & b)) continue;
          uint32_t child_blue = blue | b;
          bool bad = false;
          for (uint32_t mask : sp.masks_at[p])
            if ((mask & ~child_blue) == 0) {
              bad = true;
              break;
            }
          if (!bad) out.push_back(sp.canon(w & ~b));
        }
      }
    };
    int workers = std::max(1, threads);
    if (workers == 1 || level.size() < 1024) {
      expand(level, 0, level.size(), next);
    } else {
      std::vector<std::vector<uint32_t>> parts(workers);
      std::vector<std::thread> pool;
      size_t chunk = (level.size() + workers - 1) / workers;
      for (int t = 0; t < workers; ++t) {
        size_t b = std::min(level.size(), t * chunk);
        size_t e = std::min(level.size(), b + chunk);
        pool.emplace_back(expand, std::cref(level), b, e, std::ref(parts[t]));
      }
      for (auto& th : pool) th.join();
      for (auto& part : parts)
        next.insert(next.end(), part.begin(), part.end());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    level = std::move(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

void check_enumeration_capacity(Mode mode, int l) {
  int max_l = 4;
  if (l < 1 || (mode == Mode::Partial && l < 2) || (mode == Mode::TriEdge && l < 2))
    throw Error("enumeration dimension too small for " + mode_name(mode));
  if (l > max_l)
    throw Error("enumeration capacity: " + mode_name(mode) + " dim " +
                std::to_string(l) + " not supported (max " +
                std::to_string(max_l) + ")");
}

}  // namespace

int FlagBasis::find(const std::vector<Colour>& word) const {
  auto it = index.find(word_key(word));
  return it == index.end() ? -1 : it->second;
}

uint64_t PairCounts::at(uint32_t a, uint32_t b) const {
  if (a > b) std::swap(a, b);
  std::array<uint32_t, 2> key{a, b};
  auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return 0;
  return counts[static_cast<size_t>(it - keys.begin())];
}

std::vector<CubeColouring> enumerate_h(Mode mode, int l,
                                       const ForbiddenFamily& family,
                                       int threads) {
  check_enumeration_capacity(mode, l);
  PackedSpace sp = build_packed_space(mode, l, family);
  std::vector<uint32_t> packed = packed_enumerate(sp, threads);
  std::vector<CubeColouring> out;
  out.reserve(packed.size());
  for (uint32_t w : packed) out.push_back(sp.to_colouring(w));
  return out;
}

std::vector<FlagType> enumerate_types(Mode mode, int s,
                                      const ForbiddenFamily& family) {
  if (s < 0) throw Error("type dimension out of range");
  if (mode == Mode::Partial && s < 1)
    throw Error("partial types need dimension >= 1");
  CubeColouring blank = CubeColouring::uniform(mode, s, Colour::Blue);
  std::vector<int> free;
  for (int i = 0; i < blank.slots(); ++i)
    if (blank.word[i] != Colour::Grey) free.push_back(i);
  if (free.size() > 20) throw Error("type enumeration capacity exceeded");
  std::vector<FlagType> out;
  for (uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
    CubeColouring c = blank;
    for (size_t j = 0; j < free.size(); ++j)
      if (bits >> j & 1u) c.word[free[j]] = Colour::Red;
    if (is_f_free(c, family)) out.push_back({c});
  }
  std::sort(out.begin(), out.end(), [](const FlagType& a, const FlagType& b) {
    return a.cube.word < b.cube.word;
  });
  return out;
}

FlagBasis enumerate_flags(const FlagType& sigma, int m,
                          const ForbiddenFamily& family, int l) {
  const int s = sigma.s();
  Mode mode = sigma.cube.mode;
  if (m < s || 2 * m - s > l)
    throw Error("flag dimension out of range: need s <= m <= (l+s)/2");

  // Word of the m-cube with the sigma slots fixed at theta0 (base 0,
  // directions 0..s-1) and everything else undecided.
  CubeColouring blank = CubeColouring::uniform(mode, m, Colour::Blue);
  std::vector<int> fixed(blank.slots(), 0);
  if (is_vertex_mode(mode)) {
    for (uint32_t v = 0; v < (1u << s); ++v) {
      blank.word[v] = sigma.cube.word[v];
      fixed[v] = 1;
    }
  } else {
    for (int d = 0; d < s; ++d)
      for (uint32_t base = 0; base < (1u << s); ++base) {
        if (base >> d & 1u) continue;
        blank.word[edge_index(m, d, base)] =
            sigma.cube.word[edge_index(s, d, base)];
        fixed[edge_index(m, d, base)] = 1;
      }
  }
  std::vector<int> free;
  for (int i = 0; i < blank.slots(); ++i)
    if (!fixed[i] && blank.word[i] != Colour::Grey) free.push_back(i);
  if (free.size() > 26) throw Error("flag enumeration capacity exceeded");

  auto stab = theta0_stabilizer(m, s);
  std::map<std::vector<Colour>, bool> seen;
  for (uint32_t bits = 0; bits < (1u << free.size()); ++bits) {
    CubeColouring c = blank;
    for (size_t j = 0; j < free.size(); ++j)
      if (bits >> j & 1u) c.word[free[j]] = Colour::Red;
    if (!is_f_free(c, family)) continue;
    seen.emplace(flag_canonical_word(mode, m, c.word, stab), true);
  }

  FlagBasis basis;
  basis.mode = mode;
  basis.l = l;
  basis.m = m;
  basis.sigma = sigma;
  for (const auto& [word, _] : seen) {
    CubeColouring c;
    c.mode = mode;
    c.dim = m;
    c.word = word;
    basis.index.emplace(word_key(word), static_cast<int>(basis.flags.size()));
    basis.flags.push_back(std::move(c));
  }
  return basis;
}

Rat p_density(const CubeColouring& h, const CubeColouring& g) {
  if (h.dim > g.dim) throw Error("p_density: pattern larger than host");
  const int l = h.dim;
  if (h.mode == Mode::Partial || h.mode == Mode::TriEdge) {
    if (g.mode != Mode::EdgeRB)
      throw Error("p_density: grey-pattern H needs an EdgeRB host");
  } else if (h.mode != g.mode) {
    throw Error("p_density: mode mismatch");
  }

  CubeColouring h_canon = canonical_form(h);
  auto subcubes = enumerate_subcubes(g.dim, l);
  uint64_t hits = 0, events = 0;
  if (h.mode == Mode::VertexRB || h.mode == Mode::EdgeRB) {
    events = subcubes.size();
    for (const auto& sc : subcubes) {
      LabelledEmbedding e{sc.base, sc.dirs};
      CubeColouring ind;
      ind.mode = h.mode;
      ind.dim = l;
      ind.word = extract_word(g, e);
      if (canonical_form(ind).word == h_canon.word) ++hits;
    }
  } else {
    // Partial/TriEdge H: average over the choice of which subcube directions
    // take the grey labels; the remaining label order is a class invariant.
    int gd = grey_dirs(h.mode);
    for (const auto& sc : subcubes) {
      std::vector<int> pick(gd);
      auto rec = [&](auto&& self, int pos) -> void {
        if (pos == gd) {
          std::vector<uint8_t> dirs;
          for (int j : pick) dirs.push_back(sc.dirs[j]);
          for (size_t j = 0; j < sc.dirs.size(); ++j)
            if (std::find(pick.begin(), pick.end(), static_cast<int>(j)) ==
                pick.end())
              dirs.push_back(sc.dirs[j]);
          LabelledEmbedding e{sc.base, dirs};
          CubeColouring ind;
          ind.mode = Mode::EdgeRB;
          ind.dim = l;
          ind.word = extract_edge_word(g, e);
          grey_first_dirs(ind.word, l, gd);
          ind.mode = h.mode;
          ++events;
          if (canonical_form(ind).word == h_canon.word) ++hits;
          return;
        }
        for (int j = 0; j < l; ++j) {
          if (std::find(pick.begin(), pick.begin() + pos, j) !=
              pick.begin() + pos)
            continue;
          pick[pos] = j;
          self(self, pos + 1);
        }
      };
      rec(rec, 0);
    }
  }
  if (events == 0) throw Error("p_density: no events");
  Rat r(static_cast<unsigned long>(hits), static_cast<unsigned long>(events));
  r.canonicalize();
  return r;
}

uint64_t pair_weight(Mode host_mode, int n, int s, int m) {
  uint64_t theta = (1ull << n);
  int fixed = host_mode == Mode::Partial ? 1 : 0;
  theta *= falling_factorial(static_cast<uint64_t>(n - fixed),
                             static_cast<uint64_t>(s - fixed));
  return theta * binomial(n - s, m - s) * binomial(n - m, m - s);
}

PairCounts pair_tensor_row(const FlagBasis& basis, const CubeColouring& host) {
  const int s = basis.sigma.s();
  const int m = basis.m;
  const int n = host.dim;
  Mode mode = basis.mode;
  if (2 * m - s > n) throw Error("pair_tensor_row: host too small");
  bool host_is_partial = host.mode == Mode::Partial;
  if (mode == Mode::Partial) {
    if (!host_is_partial && host.mode != Mode::EdgeRB)
      throw Error("pair_tensor_row: partial basis needs Partial or EdgeRB host");
  } else if (host.mode != mode) {
    throw Error("pair_tensor_row: host mode mismatch");
  }

  auto stab = theta0_stabilizer(m, s);
  const auto& sigma_word = basis.sigma.cube.word;
  auto embeddings = enumerate_embeddings(n, s, host_is_partial ? 1 : 0);

  // (m-s)-subsets of direction indices 0..n-1 are precomputed per theta as
  // subsets of its free directions.
  std::map<std::array<uint32_t, 2>, uint64_t> acc;
  std::vector<uint8_t> free_dirs;
  std::vector<std::vector<uint8_t>> combos;
  std::vector<uint32_t> combo_bits;
  std::vector<int> combo_flag;

  for (const auto& theta : embeddings) {
    // Type check at theta.
    {
      std::vector<Colour> tw = extract_word(host, theta);
      if (mode == Mode::Partial && !host_is_partial)
        grey_first_dirs(tw, s, 1);
      if (tw != sigma_word) continue;
    }
    uint32_t span = 0;
    for (uint8_t d : theta.dirs) span |= 1u << d;
    free_dirs.clear();
    for (int d = 0; d < n; ++d)
      if (!(span >> d & 1u)) free_dirs.push_back(static_cast<uint8_t>(d));

    const int k = m - s;
    combos.clear();
    combo_bits.clear();
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    const int nf = static_cast<int>(free_dirs.size());
    while (k == 0 || c[0] <= nf - k) {
      std::vector<uint8_t> dirs;
      uint32_t bits = 0;
      for (int i = 0; i < k; ++i) {
        dirs.push_back(free_dirs[c[i]]);
        bits |= 1u << free_dirs[c[i]];
      }
      combos.push_back(std::move(dirs));
      combo_bits.push_back(bits);
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && c[i] == nf - k + i) --i;
      if (i < 0) break;
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }

    combo_flag.assign(combos.size(), -1);
    for (size_t ci = 0; ci < combos.size(); ++ci) {
      LabelledEmbedding ext{theta.base, theta.dirs};
      for (uint8_t d : combos[ci]) ext.dirs.push_back(d);
      std::vector<Colour> fw = extract_word(host, ext);
      if (mode == Mode::Partial && !host_is_partial) grey_first_dirs(fw, m, 1);
      int idx = basis.find(flag_canonical_word(mode, m, fw, stab));
      if (idx < 0)
        throw Error("pair_tensor_row: induced flag missing from basis (host "
                    "not F-free for this family?)");
      combo_flag[ci] = idx;
    }

    for (size_t ci = 0; ci < combos.size(); ++ci)
      for (size_t cj = 0; cj < combos.size(); ++cj) {
        // ordered pairs of direction-disjoint extensions; when m == s both
        // sides are the bare type embedding and the single diagonal pair counts
        if (combo_bits[ci] & combo_bits[cj]) continue;
        uint32_t a = static_cast<uint32_t>(combo_flag[ci]);
        uint32_t b = static_cast<uint32_t>(combo_flag[cj]);
        if (a <= b) ++acc[{a, b}];
      }
  }

  PairCounts out;
  out.keys.reserve(acc.size());
  out.counts.reserve(acc.size());
  for (const auto& [key, cnt] : acc) {
    out.keys.push_back(key);
    out.counts.push_back(cnt);
  }
  return out;
}

Rat pair_coefficient(const FlagBasis& basis, int a, int b,
                     const CubeColouring& h) {
  if (a < 0 || b < 0 || a >= basis.size() || b >= basis.size())
    throw Error("pair_coefficient: flag index out of range");
  PairCounts row = pair_tensor_row(basis, h);
  // The embedding-count factor follows the host's structure: a Partial host
  // pins the first embedding direction, a red-blue host does not.
  uint64_t w = pair_weight(h.mode, h.dim, basis.sigma.s(), basis.m);
  Rat r(static_cast<unsigned long>(row.at(a, b)), static_cast<unsigned long>(w));
  r.canonicalize();
  return r;
}

int DensityProblem::find_h(const std::vector<Colour>& word) const {
  auto it = std::lower_bound(
      h_list.begin(), h_list.end(), word,
      [](const CubeColouring& c, const std::vector<Colour>& w) {
        return c.word < w;
      });
  if (it == h_list.end() || it->word != word) return -1;
  return static_cast<int>(it - h_list.begin());
}

DensityProblem assemble_problem(Mode mode, int l, const ForbiddenFamily& family,
                                std::vector<FlagBasis> bases, int threads) {
  if (mode == Mode::Partial && l < 2)
    throw Error("partial problems need l >= 2");
  family.validate();
  DensityProblem p;
  p.mode = mode;
  p.l = l;
  p.family = family;
  for (auto& basis : bases) {
    if (basis.mode != mode) throw Error("basis mode mismatch");
    if (basis.l != l) throw Error("basis built for a different l");
    if (2 * basis.m - basis.sigma.s() > l)
      throw Error("basis flag dimension too large for l");
    if (basis.size() > 0) p.bases.push_back(std::move(basis));
  }
  p.h_list = enumerate_h(mode, l, family, threads);
  p.densities.reserve(p.h_list.size());
  for (const auto& h : p.h_list) p.densities.push_back(density(h));
  return p;
}

bool check_averaging_identity(const DensityProblem& problem, int basis_idx,
                              int a, int b, const CubeColouring& g) {
  if (basis_idx < 0 || basis_idx >= static_cast<int>(problem.bases.size()))
    throw Error("basis index out of range");
  const FlagBasis& basis = problem.bases[basis_idx];
  if (g.dim < problem.l) throw Error("host smaller than l");

  // Host-side mean: events over G with G's own weight (a red-blue host for a
  // Partial basis uses unrestricted embeddings; the 1/l labelling average in
  // p_density makes the two conventions meet).
  PairCounts g_row = pair_tensor_row(basis, g);
  uint64_t wg = pair_weight(g.mode, g.dim, basis.sigma.s(), basis.m);
  Rat lhs(static_cast<unsigned long>(g_row.at(a, b)),
          static_cast<unsigned long>(wg));
  lhs.canonicalize();

  // Sum over the H-list of tensor entry times subcube density.
  uint64_t wl = pair_weight(problem.mode, problem.l, basis.sigma.s(), basis.m);
  Rat rhs = 0;
  for (size_t hi = 0; hi < problem.h_list.size(); ++hi) {
    const CubeColouring& h = problem.h_list[hi];
    PairCounts row = pair_tensor_row(basis, h);
    uint64_t cnt = row.at(a, b);
    if (cnt == 0) continue;
    Rat coeff(static_cast<unsigned long>(cnt), static_cast<unsigned long>(wl));
    coeff.canonicalize();
    rhs += coeff * p_density(h, g);
  }
  return lhs == rhs;
}

}  // namespace cubeflag
