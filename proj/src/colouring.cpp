#include "cubeflag/colouring.hpp"

#include <algorithm>
#include <sstream>

namespace cubeflag {

bool is_vertex_mode(Mode mode) { return mode == Mode::VertexRB; }

int grey_dirs(Mode mode) {
  switch (mode) {
    case Mode::VertexRB:
    case Mode::EdgeRB:
      return 0;
    case Mode::Partial:
      return 1;
    case Mode::TriEdge:
      return 2;
  }
  throw Error("bad mode");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::VertexRB: return "vertex";
    case Mode::EdgeRB: return "edge";
    case Mode::Partial: return "partial";
    case Mode::TriEdge: return "triedge";
  }
  throw Error("bad mode");
}

Mode mode_from_name(const std::string& name) {
  if (name == "vertex") return Mode::VertexRB;
  if (name == "edge") return Mode::EdgeRB;
  if (name == "partial") return Mode::Partial;
  if (name == "triedge") return Mode::TriEdge;
  throw Error("unknown mode: " + name);
}

char colour_char(Colour c) {
  switch (c) {
    case Colour::Blue: return 'B';
    case Colour::Red: return 'R';
    case Colour::Grey: return 'G';
  }
  throw Error("bad colour");
}

Colour colour_from_char(char c) {
  switch (c) {
    case 'B': return Colour::Blue;
    case 'R': return Colour::Red;
    case 'G': return Colour::Grey;
  }
  throw Error(std::string("bad colour character: ") + c);
}

int slot_count(Mode mode, int dim) {
  if (dim < 0 || dim > kMaxDim) throw Error("dimension out of range");
  return is_vertex_mode(mode) ? vertex_count(dim) : edge_count(dim);
}

namespace {

// True iff the slot is an edge the mode forces grey.
bool forced_grey(Mode mode, int dim, int slot) {
  int g = grey_dirs(mode);
  if (g == 0 || is_vertex_mode(mode)) return false;
  // edges are grouped by direction: slots [d*2^{n-1}, (d+1)*2^{n-1})
  return slot < g * (1 << (dim - 1));
}

}  // namespace

CubeColouring CubeColouring::make(Mode mode, int dim, std::vector<Colour> word) {
  if (dim < 0 || dim > kMaxDim) throw Error("dimension out of range");
  if (!is_vertex_mode(mode) && dim < grey_dirs(mode))
    throw Error(mode_name(mode) + " colouring needs dim >= " +
                std::to_string(grey_dirs(mode)));
  if (static_cast<int>(word.size()) != slot_count(mode, dim))
    throw Error("word length " + std::to_string(word.size()) +
                " does not match " + mode_name(mode) + " dim " +
                std::to_string(dim));
  for (int i = 0; i < static_cast<int>(word.size()); ++i) {
    bool grey = word[i] == Colour::Grey;
    if (grey != forced_grey(mode, dim, i))
      throw Error("grey pattern violation at slot " + std::to_string(i) +
                  " for " + mode_name(mode));
  }
  CubeColouring c;
  c.mode = mode;
  c.dim = dim;
  c.word = std::move(word);
  return c;
}

CubeColouring CubeColouring::uniform(Mode mode, int dim, Colour fill) {
  std::vector<Colour> w(slot_count(mode, dim), fill);
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (forced_grey(mode, dim, i)) w[i] = Colour::Grey;
  return make(mode, dim, std::move(w));
}

int CubeColouring::blue_count() const {
  return static_cast<int>(std::count(word.begin(), word.end(), Colour::Blue));
}

int CubeColouring::red_count() const {
  return static_cast<int>(std::count(word.begin(), word.end(), Colour::Red));
}

std::string CubeColouring::text() const {
  std::string w;
  w.reserve(word.size());
  for (Colour c : word) w.push_back(colour_char(c));
  return mode_name(mode) + " " + std::to_string(dim) + " " + w;
}

CubeColouring CubeColouring::parse(const std::string& line) {
  std::istringstream in(line);
  std::string mode_s, word_s;
  int dim = -1;
  if (!(in >> mode_s >> dim >> word_s))
    throw Error("cannot parse cube text form: " + line);
  std::string trailing;
  if (in >> trailing) throw Error("trailing tokens in cube text form: " + line);
  std::vector<Colour> w;
  w.reserve(word_s.size());
  for (char c : word_s) w.push_back(colour_from_char(c));
  return make(mode_from_name(mode_s), dim, std::move(w));
}

bool colouring_less(const CubeColouring& a, const CubeColouring& b) {
  if (a.mode != b.mode) return a.mode < b.mode;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.word < b.word;  // Colour underlying order: B < R < G
}

CubeColouring apply_map(const CubeColouring& c, const SignedPermutation& g) {
  if (g.dim != c.dim) throw Error("map dimension mismatch");
  // The grey direction set must map onto itself (pointwise for Partial; the
  // 0<->1 swap is legal for TriEdge).
  for (int d = 0; d < grey_dirs(c.mode); ++d)
    if (g.perm[d] >= grey_dirs(c.mode))
      throw Error("map does not respect the grey pattern of " +
                  mode_name(c.mode));
  std::vector<Colour> w(c.word.size());
  if (is_vertex_mode(c.mode)) {
    for (uint32_t v = 0; v < c.word.size(); ++v)
      w[g.apply(v)] = c.word[v];
  } else {
    for (int d = 0; d < c.dim; ++d) {
      int dd = g.perm[d];
      for (uint32_t base = 0; base < (1u << c.dim); ++base) {
        if (base >> d & 1u) continue;
        uint32_t u = g.apply(base);
        uint32_t lower = u & ~(1u << dd);
        w[edge_index(c.dim, dd, lower)] =
            c.word[edge_index(c.dim, d, base)];
      }
    }
  }
  CubeColouring r;
  r.mode = c.mode;
  r.dim = c.dim;
  r.word = std::move(w);
  return r;
}

CubeColouring canonical_form(const CubeColouring& c) {
  const auto& group = symmetry_group(c.dim, grey_dirs(c.mode));
  CubeColouring best = apply_map(c, group.front());
  for (size_t i = 1; i < group.size(); ++i) {
    CubeColouring img = apply_map(c, group[i]);
    if (img.word < best.word) best = std::move(img);
  }
  return best;
}

bool contains_subcube(const CubeColouring& host, const CubeColouring& pattern) {
  if (is_vertex_mode(host.mode) != is_vertex_mode(pattern.mode) ||
      host.mode == Mode::Partial || host.mode == Mode::TriEdge ||
      pattern.mode == Mode::Partial || pattern.mode == Mode::TriEdge)
    throw Error("containment needs plain vertex or edge colourings on both sides");
  if (pattern.dim > host.dim) return false;
  if (pattern.blue_count() > host.blue_count()) return false;

  const int s = pattern.dim;
  auto embeddings = enumerate_embeddings(host.dim, s, 0);
  if (is_vertex_mode(host.mode)) {
    std::vector<uint32_t> blue_vertices;
    for (uint32_t v = 0; v < pattern.word.size(); ++v)
      if (pattern.word[v] == Colour::Blue) blue_vertices.push_back(v);
    for (const auto& e : embeddings) {
      bool ok = true;
      for (uint32_t v : blue_vertices)
        if (host.word[e.map_vertex(v)] != Colour::Blue) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
  } else {
    std::vector<std::pair<int, uint32_t>> blue_edges;  // (dir, base) in pattern
    for (int d = 0; d < s; ++d)
      for (uint32_t base = 0; base < (1u << s); ++base)
        if (!(base >> d & 1u) &&
            pattern.word[edge_index(s, d, base)] == Colour::Blue)
          blue_edges.push_back({d, base});
    for (const auto& e : embeddings) {
      bool ok = true;
      for (auto [d, base] : blue_edges) {
        uint32_t u = e.map_vertex(base);
        int dd = e.dirs[d];
        if (host.word[edge_index(host.dim, dd, u & ~(1u << dd))] !=
            Colour::Blue) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

bool ForbiddenFamily::vertex_mode() const {
  return members.empty() || is_vertex_mode(members.front().mode);
}

int ForbiddenFamily::max_dim() const {
  int m = 0;
  for (const auto& c : members) m = std::max(m, c.dim);
  return m;
}

void ForbiddenFamily::validate() const {
  for (const auto& c : members) {
    if (c.mode != Mode::VertexRB && c.mode != Mode::EdgeRB)
      throw Error("family members must be plain vertex or edge colourings");
    if (is_vertex_mode(c.mode) != is_vertex_mode(members.front().mode))
      throw Error("family mixes vertex and edge members");
  }
}

namespace {

CubeColouring greys_to_red(const CubeColouring& c) {
  if (c.mode == Mode::EdgeRB || c.mode == Mode::VertexRB) return c;
  std::vector<Colour> w = c.word;
  for (Colour& x : w)
    if (x == Colour::Grey) x = Colour::Red;
  return CubeColouring::make(Mode::EdgeRB, c.dim, std::move(w));
}

}  // namespace

bool is_f_free(const CubeColouring& c, const ForbiddenFamily& family) {
  family.validate();
  if (!family.members.empty() &&
      family.vertex_mode() != is_vertex_mode(c.mode))
    throw Error("family mode does not match the colouring");
  CubeColouring host = greys_to_red(c);
  for (const auto& p : family.members)
    if (contains_subcube(host, p)) return false;
  return true;
}

Rat density(const CubeColouring& c) {
  int slots = c.slots();
  if (!is_vertex_mode(c.mode)) {
    int non_grey_dirs = c.dim - grey_dirs(c.mode);
    slots = non_grey_dirs * (c.dim >= 1 ? (1 << (c.dim - 1)) : 0);
  }
  if (slots <= 0)
    throw Error("density undefined: no colourable slots in " + c.text());
  Rat r(c.blue_count(), slots);
  r.canonicalize();
  return r;
}

CubeColouring grey_project(const CubeColouring& c, int extra) {
  if (is_vertex_mode(c.mode)) throw Error("grey projection needs an edge colouring");
  if (extra < 0) throw Error("bad projection count");
  int have = grey_dirs(c.mode);
  int want = have + extra;
  Mode target;
  if (want == grey_dirs(c.mode)) return c;
  if (want == 1)
    target = Mode::Partial;
  else if (want == 2)
    target = Mode::TriEdge;
  else
    throw Error("unsupported grey pattern (" + std::to_string(want) +
                " grey directions)");
  if (c.dim < want) throw Error("not enough directions to grey");
  std::vector<Colour> w = c.word;
  for (int i = 0; i < want * (1 << (c.dim - 1)); ++i) w[i] = Colour::Grey;
  return CubeColouring::make(target, c.dim, std::move(w));
}

}  // namespace cubeflag
