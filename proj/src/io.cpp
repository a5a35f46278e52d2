#include "cubeflag/io.hpp"

#include <fstream>
#include <sstream>

#include "cubeflag/constraints.hpp"
#include "cubeflag/manifest.hpp"

namespace cubeflag {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw FileError("cannot open " + path);
  return in;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

// Sequential reader that skips blank lines and # comments and tracks line
// numbers for error messages.
struct LineReader {
  std::istream& in;
  std::string context;
  int lineno = 0;

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      tokens = split(line);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> expect(const std::string& what) {
    std::vector<std::string> tokens;
    if (!next(tokens))
      throw Error(context + ": unexpected end of file, expected " + what);
    return tokens;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(context + " line " + std::to_string(lineno) + ": " + msg);
  }

  void expect_end() {
    std::vector<std::string> tokens;
    if (next(tokens)) fail("trailing content after the declared entries");
  }
};

std::vector<Colour> parse_word_chars(const std::string& word) {
  std::vector<Colour> w;
  w.reserve(word.size());
  for (char c : word) w.push_back(colour_from_char(c));
  return w;
}

std::string word_string(const std::vector<Colour>& w) {
  std::string s;
  s.reserve(w.size());
  for (Colour c : w) s.push_back(colour_char(c));
  return s;
}

int parse_int(LineReader& r, const std::string& tok) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) r.fail("bad integer: " + tok);
    return v;
  } catch (const std::exception&) {
    r.fail("bad integer: " + tok);
  }
}

}  // namespace

ForbiddenFamily read_family(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  LineReader r{in, "family file " + path};
  ForbiddenFamily fam;
  std::vector<std::string> tokens;
  while (r.next(tokens)) {
    if (tokens.size() != 3) r.fail("expected `mode dim word`");
    fam.members.push_back(
        CubeColouring::parse(tokens[0] + " " + tokens[1] + " " + tokens[2]));
  }
  fam.validate();
  return fam;
}

std::string family_hash(const ForbiddenFamily& family) {
  std::vector<std::string> texts;
  for (const auto& m : family.members) texts.push_back(m.text());
  std::sort(texts.begin(), texts.end());
  std::string blob;
  for (const auto& t : texts) blob += t + "\n";
  return sha256_bytes(blob);
}

void write_h_list(std::ostream& out, Mode mode, int l,
                  const std::string& fam_hash,
                  const std::vector<CubeColouring>& h_list) {
  out << mode_name(mode) << " " << l << " " << fam_hash << " "
      << h_list.size() << "\n";
  for (const auto& h : h_list) out << h.text() << "\n";
}

HListFile read_h_list(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  LineReader r{in, "H-list file " + path};
  auto header = r.expect("header `mode l family-hash count`");
  if (header.size() != 4) r.fail("expected `mode l family-hash count`");
  HListFile f;
  f.mode = mode_from_name(header[0]);
  f.l = parse_int(r, header[1]);
  f.fam_hash = header[2];
  int count = parse_int(r, header[3]);
  for (int i = 0; i < count; ++i) {
    auto tokens = r.expect("cube text form");
    if (tokens.size() != 3) r.fail("expected cube text form");
    CubeColouring c =
        CubeColouring::parse(tokens[0] + " " + tokens[1] + " " + tokens[2]);
    if (c.mode != f.mode || c.dim != f.l) r.fail("entry mode/dim mismatch");
    f.h_list.push_back(std::move(c));
  }
  r.expect_end();
  return f;
}

void write_constraints(std::ostream& out,
                       const std::vector<ConstraintRow>& rows, Mode, int) {
  for (const auto& row : rows) {
    out << word_string(row.s_class.word) << " :";
    for (const auto& [hi, v] : row.entries)
      out << " " << hi << ":" << rat_to_string(v);
    out << "\n";
  }
}

std::vector<ConstraintRow> parse_constraint_rows(std::istream& in, int l,
                                                 size_t h_count) {
  LineReader r{in, "constraint rows"};
  std::vector<ConstraintRow> rows;
  std::vector<std::string> tokens;
  while (r.next(tokens)) {
    if (tokens.size() < 2 || tokens[1] != ":")
      r.fail("expected `S-word : h:value ...`");
    ConstraintRow row;
    row.s_class =
        CubeColouring::make(Mode::TriEdge, l, parse_word_chars(tokens[0]));
    for (size_t i = 2; i < tokens.size(); ++i) {
      auto colon = tokens[i].find(':');
      if (colon == std::string::npos) r.fail("expected h:value");
      int hi = parse_int(r, tokens[i].substr(0, colon));
      if (hi < 0 || static_cast<size_t>(hi) >= h_count)
        r.fail("H index out of range");
      row.entries.emplace_back(static_cast<uint32_t>(hi),
                               rat_parse(tokens[i].substr(colon + 1)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---- Problem files ----------------------------------------------------------

void write_problem(std::ostream& out, const DensityProblem& p) {
  out << "cubeflag-problem v1\n";
  out << "mode " << mode_name(p.mode) << "\n";
  out << "dim " << p.l << "\n";
  out << "family " << p.family.members.size() << "\n";
  for (const auto& m : p.family.members) out << m.text() << "\n";
  out << "h " << p.h_list.size() << "\n";
  for (size_t i = 0; i < p.h_list.size(); ++i)
    out << word_string(p.h_list[i].word) << " "
        << rat_to_string(p.densities[i]) << "\n";
  out << "bases " << p.bases.size() << "\n";
  for (size_t i = 0; i < p.bases.size(); ++i) {
    const FlagBasis& basis = p.bases[i];
    out << "basis " << i << " s " << basis.sigma.s() << " m " << basis.m
        << " size " << basis.size() << " type "
        << word_string(basis.sigma.cube.word) << "\n";
    for (const auto& f : basis.flags) out << word_string(f.word) << "\n";
  }
  for (size_t i = 0; i < p.bases.size(); ++i) {
    out << "tensor " << i << "\n";
    uint64_t w = pair_weight(p.mode, p.l, p.bases[i].sigma.s(), p.bases[i].m);
    for (size_t hi = 0; hi < p.h_list.size(); ++hi) {
      PairCounts row = pair_tensor_row(p.bases[i], p.h_list[hi]);
      for (size_t e = 0; e < row.keys.size(); ++e) {
        Rat v(mpz_class(row.counts[e]), mpz_class(w));
        v.canonicalize();
        out << hi << " " << row.keys[e][0] << " " << row.keys[e][1] << " "
            << rat_to_string(v) << "\n";
      }
    }
    out << "end\n";
  }
  out << "constraints " << p.constraints.size() << "\n";
  for (const auto& row : p.constraints) {
    out << word_string(row.s_class.word) << " :";
    for (const auto& [hi, v] : row.entries)
      out << " " << hi << ":" << rat_to_string(v);
    out << "\n";
  }
}

ProblemFile read_problem(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  LineReader r{in, "problem file " + path};
  ProblemFile f;

  auto header = r.expect("header");
  if (header.size() != 2 || header[0] != "cubeflag-problem" ||
      header[1] != "v1")
    r.fail("not a cubeflag-problem v1 file");
  auto mode_line = r.expect("mode");
  if (mode_line.size() != 2 || mode_line[0] != "mode") r.fail("expected mode");
  f.mode = mode_from_name(mode_line[1]);
  auto dim_line = r.expect("dim");
  if (dim_line.size() != 2 || dim_line[0] != "dim") r.fail("expected dim");
  f.l = parse_int(r, dim_line[1]);

  auto fam_line = r.expect("family");
  if (fam_line.size() != 2 || fam_line[0] != "family")
    r.fail("expected family");
  int fam_count = parse_int(r, fam_line[1]);
  for (int i = 0; i < fam_count; ++i) {
    auto t = r.expect("family member");
    if (t.size() != 3) r.fail("expected cube text form");
    f.family.members.push_back(
        CubeColouring::parse(t[0] + " " + t[1] + " " + t[2]));
  }
  f.family.validate();

  auto h_line = r.expect("h");
  if (h_line.size() != 2 || h_line[0] != "h") r.fail("expected h count");
  int h_count = parse_int(r, h_line[1]);
  for (int i = 0; i < h_count; ++i) {
    auto t = r.expect("H entry");
    if (t.size() != 2) r.fail("expected `word density`");
    f.h_list.push_back(
        CubeColouring::make(f.mode, f.l, parse_word_chars(t[0])));
    f.cached_densities.push_back(rat_parse(t[1]));
  }

  auto bases_line = r.expect("bases");
  if (bases_line.size() != 2 || bases_line[0] != "bases")
    r.fail("expected bases count");
  int basis_count = parse_int(r, bases_line[1]);
  for (int i = 0; i < basis_count; ++i) {
    auto t = r.expect("basis header");
    if (t.size() != 10 || t[0] != "basis" || t[2] != "s" || t[4] != "m" ||
        t[6] != "size" || t[8] != "type")
      r.fail("expected `basis i s S m M size K type WORD`");
    if (parse_int(r, t[1]) != i) r.fail("basis index out of order");
    ProblemFile::BasisDecl decl;
    decl.s = parse_int(r, t[3]);
    decl.m = parse_int(r, t[5]);
    int size = parse_int(r, t[7]);
    decl.type = CubeColouring::make(f.mode, decl.s, parse_word_chars(t[9]));
    for (int k = 0; k < size; ++k) {
      auto fw = r.expect("flag word");
      if (fw.size() != 1) r.fail("expected flag word");
      decl.flags.push_back(
          CubeColouring::make(f.mode, decl.m, parse_word_chars(fw[0])));
    }
    f.bases.push_back(std::move(decl));
  }

  f.cached_tensors.resize(basis_count);
  for (int i = 0; i < basis_count; ++i) {
    auto t = r.expect("tensor header");
    if (t.size() != 2 || t[0] != "tensor" || parse_int(r, t[1]) != i)
      r.fail("expected `tensor " + std::to_string(i) + "`");
    while (true) {
      auto e = r.expect("tensor entry or end");
      if (e.size() == 1 && e[0] == "end") break;
      if (e.size() != 4) r.fail("expected `h a b value`");
      ProblemFile::TensorEntry entry;
      entry.h = static_cast<uint32_t>(parse_int(r, e[0]));
      entry.a = static_cast<uint32_t>(parse_int(r, e[1]));
      entry.b = static_cast<uint32_t>(parse_int(r, e[2]));
      if (entry.h >= static_cast<uint32_t>(h_count))
        r.fail("tensor H index out of range");
      if (entry.a >= f.bases[i].flags.size() ||
          entry.b >= f.bases[i].flags.size())
        r.fail("tensor flag index out of range");
      entry.value = rat_parse(e[3]);
      f.cached_tensors[i].push_back(std::move(entry));
    }
  }

  auto c_line = r.expect("constraints");
  if (c_line.size() != 2 || c_line[0] != "constraints")
    r.fail("expected constraints count");
  int c_count = parse_int(r, c_line[1]);
  for (int i = 0; i < c_count; ++i) {
    auto t = r.expect("constraint row");
    if (t.size() < 2 || t[1] != ":") r.fail("expected `S-word : h:value ...`");
    ConstraintRow row;
    row.s_class =
        CubeColouring::make(Mode::TriEdge, f.l, parse_word_chars(t[0]));
    for (size_t k = 2; k < t.size(); ++k) {
      auto colon = t[k].find(':');
      if (colon == std::string::npos) r.fail("expected h:value");
      int hi = parse_int(r, t[k].substr(0, colon));
      if (hi < 0 || hi >= h_count) r.fail("constraint H index out of range");
      row.entries.emplace_back(static_cast<uint32_t>(hi),
                               rat_parse(t[k].substr(colon + 1)));
    }
    f.constraints.push_back(std::move(row));
  }
  r.expect_end();
  return f;
}

DensityProblem rebuild_problem(const ProblemFile& file, int threads) {
  file.family.validate();
  DensityProblem p;
  p.mode = file.mode;
  p.l = file.l;
  p.family = file.family;

  p.h_list = enumerate_h(file.mode, file.l, file.family, threads);
  if (p.h_list.size() != file.h_list.size())
    throw Error("stale problem: H-list has " + std::to_string(file.h_list.size()) +
                " entries, fresh enumeration gives " +
                std::to_string(p.h_list.size()));
  for (size_t i = 0; i < p.h_list.size(); ++i)
    if (p.h_list[i].word != file.h_list[i].word)
      throw Error("stale problem: H-list entry " + std::to_string(i) +
                  " does not match fresh enumeration");
  p.densities.reserve(p.h_list.size());
  for (const auto& h : p.h_list) p.densities.push_back(density(h));

  for (size_t i = 0; i < file.bases.size(); ++i) {
    const auto& decl = file.bases[i];
    if (!is_f_free(decl.type, file.family))
      throw Error("stale problem: basis " + std::to_string(i) +
                  " type is not F-free");
    FlagBasis basis =
        enumerate_flags(FlagType{decl.type}, decl.m, file.family, file.l);
    if (basis.size() != static_cast<int>(decl.flags.size()))
      throw Error("stale problem: basis " + std::to_string(i) +
                  " flag count mismatch");
    for (size_t k = 0; k < decl.flags.size(); ++k)
      if (basis.flags[k].word != decl.flags[k].word)
        throw Error("stale problem: basis " + std::to_string(i) + " flag " +
                    std::to_string(k) + " mismatch");
    p.bases.push_back(std::move(basis));
  }

  if (!file.constraints.empty()) {
    if (file.mode != Mode::Partial)
      throw Error("constraint rows on a non-partial problem");
    std::vector<CubeColouring> s_list;
    for (const auto& row : file.constraints) s_list.push_back(row.s_class);
    p.constraints = recompute_rows(file.l, p.h_list, s_list);
  }
  return p;
}

// ---- Certificate files -------------------------------------------------------

void write_certificate(std::ostream& out, const Certificate& cert,
                       const std::vector<int>& block_sizes) {
  out << "cubeflag-cert v1\n";
  out << "mode " << mode_name(cert.mode) << "\n";
  out << "dim " << cert.l << "\n";
  out << "family " << cert.family.members.size() << "\n";
  for (const auto& m : cert.family.members) out << m.text() << "\n";
  out << "constraints " << cert.mu.size() << "\n";
  out << "blocks " << cert.blocks.size() << "\n";
  for (size_t i = 0; i < cert.bases.size(); ++i) {
    const auto& d = cert.bases[i];
    out << "basis " << i << " s " << d.s << " m " << d.m << " size " << d.size
        << " type " << word_string(d.type.word) << "\n";
  }
  for (size_t i = 0; i < cert.blocks.size(); ++i) {
    const auto& blk = cert.blocks[i];
    out << (blk.direct ? "Q " : "R ") << i << "\n";
    int n = block_sizes[i];
    for (int a = 0; a < n; ++a) {
      for (int b = a; b < n; ++b)
        out << (b > a ? " " : "") << rat_to_string(blk.matrix[a][b]);
      out << "\n";
    }
  }
  out << "mu";
  for (const auto& v : cert.mu) out << " " << rat_to_string(v);
  out << "\n";
  out << "bound " << rat_to_string(cert.claimed_bound) << "\n";
}

Certificate read_certificate(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  LineReader r{in, "certificate file " + path};
  Certificate cert;

  auto header = r.expect("header");
  if (header.size() != 2 || header[0] != "cubeflag-cert" || header[1] != "v1")
    r.fail("not a cubeflag-cert v1 file");
  auto mode_line = r.expect("mode");
  if (mode_line.size() != 2 || mode_line[0] != "mode") r.fail("expected mode");
  cert.mode = mode_from_name(mode_line[1]);
  auto dim_line = r.expect("dim");
  if (dim_line.size() != 2 || dim_line[0] != "dim") r.fail("expected dim");
  cert.l = parse_int(r, dim_line[1]);
  auto fam_line = r.expect("family");
  if (fam_line.size() != 2 || fam_line[0] != "family")
    r.fail("expected family");
  int fam_count = parse_int(r, fam_line[1]);
  for (int i = 0; i < fam_count; ++i) {
    auto t = r.expect("family member");
    if (t.size() != 3) r.fail("expected cube text form");
    cert.family.members.push_back(
        CubeColouring::parse(t[0] + " " + t[1] + " " + t[2]));
  }
  cert.family.validate();
  auto c_line = r.expect("constraints");
  if (c_line.size() != 2 || c_line[0] != "constraints")
    r.fail("expected constraints count");
  int mu_count = parse_int(r, c_line[1]);
  auto b_line = r.expect("blocks");
  if (b_line.size() != 2 || b_line[0] != "blocks")
    r.fail("expected blocks count");
  int block_count = parse_int(r, b_line[1]);
  for (int i = 0; i < block_count; ++i) {
    auto t = r.expect("basis descriptor");
    if (t.size() != 10 || t[0] != "basis" || t[2] != "s" || t[4] != "m" ||
        t[6] != "size" || t[8] != "type")
      r.fail("expected `basis i s S m M size K type WORD`");
    if (parse_int(r, t[1]) != i) r.fail("basis index out of order");
    Certificate::BasisDesc d;
    d.s = parse_int(r, t[3]);
    d.m = parse_int(r, t[5]);
    d.size = parse_int(r, t[7]);
    d.type = CubeColouring::make(cert.mode, d.s, parse_word_chars(t[9]));
    cert.bases.push_back(std::move(d));
  }
  for (int i = 0; i < block_count; ++i) {
    auto t = r.expect("block header `R i` or `Q i`");
    if (t.size() != 2 || (t[0] != "R" && t[0] != "Q") || parse_int(r, t[1]) != i)
      r.fail("expected `R " + std::to_string(i) + "` or `Q " +
             std::to_string(i) + "`");
    CertificateBlock blk;
    blk.direct = t[0] == "Q";
    int n = cert.bases[i].size;
    blk.matrix.assign(n, std::vector<Rat>(n, Rat(0)));
    // upper triangle, row-major, free-form whitespace
    std::vector<Rat> entries;
    int need = n * (n + 1) / 2;
    while (static_cast<int>(entries.size()) < need) {
      auto toks = r.expect("matrix entries");
      for (const auto& tok : toks) entries.push_back(rat_parse(tok));
    }
    if (static_cast<int>(entries.size()) != need)
      r.fail("too many matrix entries");
    int pos = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        blk.matrix[a][b] = entries[pos];
        if (blk.direct) blk.matrix[b][a] = entries[pos];
        ++pos;
      }
    cert.blocks.push_back(std::move(blk));
  }
  auto mu_line = r.expect("mu line");
  if (mu_line[0] != "mu") r.fail("expected mu line");
  if (static_cast<int>(mu_line.size()) != mu_count + 1)
    r.fail("mu line needs " + std::to_string(mu_count) + " entries");
  for (int j = 0; j < mu_count; ++j)
    cert.mu.push_back(rat_parse(mu_line[j + 1]));
  auto bound_line = r.expect("bound line");
  if (bound_line.size() != 2 || bound_line[0] != "bound")
    r.fail("expected `bound p/q`");
  cert.claimed_bound = rat_parse(bound_line[1]);
  r.expect_end();
  return cert;
}

}  // namespace cubeflag
