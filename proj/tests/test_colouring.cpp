#include "cubeflag/colouring.hpp"

#include <random>

#include "doctest.h"
#include "oracle.hpp"

using namespace cubeflag;

namespace {

CubeColouring random_colouring(Mode mode, int dim, std::mt19937& rng) {
  const int slots = slot_count(mode, dim);
  const int greys = is_vertex_mode(mode) ? 0 : grey_dirs(mode) * (1 << (dim - 1));
  std::vector<Colour> w(static_cast<size_t>(slots));
  for (int i = 0; i < slots; ++i)
    w[i] = i < greys ? Colour::Grey
                     : (rng() & 1u ? Colour::Red : Colour::Blue);
  return CubeColouring::make(mode, dim, w);
}

ForbiddenFamily family_of(std::initializer_list<const char*> texts) {
  ForbiddenFamily fam;
  for (const char* t : texts) fam.members.push_back(CubeColouring::parse(t));
  fam.validate();
  return fam;
}

}  // namespace

TEST_CASE("text and parse round-trip") {
  for (const char* t :
       {"vertex 2 BRRB", "edge 2 BBRB", "partial 2 GGBR", "triedge 2 GGGG",
        "vertex 0 B", "edge 3 BBRRRBBRBRBR"}) {
    CubeColouring c = CubeColouring::parse(t);
    CHECK(c.text() == t);
  }
}

TEST_CASE("make validates") {
  CHECK_THROWS_AS(CubeColouring::parse("vertex 2 BRB"), Error);     // length
  CHECK_THROWS_AS(CubeColouring::parse("vertex 2 BRBX"), Error);    // char
  CHECK_THROWS_AS(CubeColouring::parse("vertex 2 BRBG"), Error);    // grey
  CHECK_THROWS_AS(CubeColouring::parse("edge 2 GBRB"), Error);      // grey
  CHECK_THROWS_AS(CubeColouring::parse("partial 2 BGBR"), Error);   // misplaced
  CHECK_THROWS_AS(CubeColouring::parse("partial 2 GGGR"), Error);   // extra grey
  CHECK_THROWS_AS(CubeColouring::parse("bogus 2 BBBB"), Error);     // mode
  CHECK_NOTHROW(CubeColouring::parse("partial 2 GGBR"));
  CHECK_NOTHROW(CubeColouring::parse("triedge 3 GGGGGGGGBRRB"));
}

TEST_CASE("uniform fills non-grey slots") {
  CubeColouring c = CubeColouring::uniform(Mode::Partial, 2, Colour::Blue);
  CHECK(c.text() == "partial 2 GGBB");
  CHECK(c.blue_count() == 2);
  CHECK(CubeColouring::uniform(Mode::VertexRB, 1, Colour::Red).text() ==
        "vertex 1 RR");
}

TEST_CASE("vertex_colour and edge_colour address the word") {
  CubeColouring c = CubeColouring::parse("vertex 2 BRRB");
  CHECK(c.vertex_colour(0) == Colour::Blue);
  CHECK(c.vertex_colour(1) == Colour::Red);
  CHECK(c.vertex_colour(3) == Colour::Blue);
  CubeColouring e = CubeColouring::parse("edge 2 BRBR");
  CHECK(e.edge_colour(0, 0) == Colour::Blue);   // edge 0-1
  CHECK(e.edge_colour(0, 2) == Colour::Red);    // edge 2-3
  CHECK(e.edge_colour(1, 0) == Colour::Blue);   // edge 0-2
  CHECK(e.edge_colour(1, 1) == Colour::Red);    // edge 1-3
}

TEST_CASE("apply_map agrees with the endpoint oracle") {
  std::mt19937 rng(99);
  for (Mode mode :
       {Mode::VertexRB, Mode::EdgeRB, Mode::Partial, Mode::TriEdge}) {
    const int dim = 3;
    auto maps = oracle::all_maps(dim);
    const auto& group = symmetry_group(dim, grey_dirs(mode));
    for (int trial = 0; trial < 30; ++trial) {
      CubeColouring c = random_colouring(mode, dim, rng);
      const auto& g = group[rng() % group.size()];
      CubeColouring mapped = apply_map(c, g);
      // find the oracle map with identical vertex images
      std::vector<uint32_t> img(1u << dim);
      for (uint32_t v = 0; v < (1u << dim); ++v) img[v] = g.apply(v);
      bool found = false;
      for (const auto& m : maps)
        if (m.img == img) {
          CHECK(mapped.word == oracle::apply_word(mode, dim, c.word, m));
          found = true;
          break;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("apply_map rejects maps that move grey directions") {
  CubeColouring c = CubeColouring::uniform(Mode::Partial, 2, Colour::Blue);
  SignedPermutation swap01 = SignedPermutation::identity(2);
  swap01.perm[0] = 1;
  swap01.perm[1] = 0;
  CHECK_THROWS_AS(apply_map(c, swap01), Error);
  // TriEdge tolerates swapping the two grey directions with each other
  SignedPermutation swap01_3 = SignedPermutation::identity(3);
  swap01_3.perm[0] = 1;
  swap01_3.perm[1] = 0;
  CubeColouring t = CubeColouring::uniform(Mode::TriEdge, 3, Colour::Red);
  CHECK_NOTHROW(apply_map(t, swap01_3));
  CHECK_THROWS_AS(
      apply_map(CubeColouring::uniform(Mode::Partial, 3, Colour::Red),
                swap01_3),
      Error);
}

TEST_CASE("canonical_form is idempotent and orbit-invariant") {
  std::mt19937 rng(7);
  for (Mode mode :
       {Mode::VertexRB, Mode::EdgeRB, Mode::Partial, Mode::TriEdge}) {
    const int dim = 3;
    const auto& group = symmetry_group(dim, grey_dirs(mode));
    for (int trial = 0; trial < 20; ++trial) {
      CubeColouring c = random_colouring(mode, dim, rng);
      CubeColouring canon = canonical_form(c);
      CHECK(canonical_form(canon) == canon);
      const auto& g = group[rng() % group.size()];
      CHECK(canonical_form(apply_map(c, g)) == canon);
      CHECK(oracle::word_str(canon.word) ==
            oracle::canonical(mode, dim, c.word, grey_dirs(mode)));
    }
  }
}

TEST_CASE("containment matches the oracle") {
  std::mt19937 rng(2024);
  // vertex patterns in vertex hosts
  for (int trial = 0; trial < 60; ++trial) {
    int pd = 1 + static_cast<int>(rng() % 2);
    int hd = pd + static_cast<int>(rng() % 2) + 1;
    CubeColouring pattern = random_colouring(Mode::VertexRB, pd, rng);
    CubeColouring host = random_colouring(Mode::VertexRB, hd, rng);
    CHECK(contains_subcube(host, pattern) == oracle::contains(pattern, host));
  }
  // edge patterns in edge hosts
  for (int trial = 0; trial < 40; ++trial) {
    int hd = 2 + static_cast<int>(rng() % 2) + 1;
    CubeColouring pattern = random_colouring(Mode::EdgeRB, 2, rng);
    CubeColouring host = random_colouring(Mode::EdgeRB, hd, rng);
    CHECK(contains_subcube(host, pattern) == oracle::contains(pattern, host));
  }
  // oversized patterns are never contained
  CubeColouring big = CubeColouring::uniform(Mode::VertexRB, 3, Colour::Blue);
  CubeColouring small = CubeColouring::uniform(Mode::VertexRB, 2, Colour::Blue);
  CHECK_FALSE(contains_subcube(small, big));
}

TEST_CASE("containment is monotone in blue") {
  // the all-blue host contains everything of its dimension or less
  CubeColouring host = CubeColouring::uniform(Mode::EdgeRB, 3, Colour::Blue);
  CubeColouring c4 = CubeColouring::parse("edge 2 BBBB");
  CHECK(contains_subcube(host, c4));
  CubeColouring one_red = CubeColouring::parse("edge 2 BBBR");
  CHECK(contains_subcube(host, one_red));  // red slots are wildcards
}

TEST_CASE("is_f_free treats grey as red and honours empty families") {
  ForbiddenFamily b = family_of({"edge 2 BBBB"});
  CHECK_FALSE(is_f_free(CubeColouring::uniform(Mode::EdgeRB, 2, Colour::Blue), b));
  CHECK(is_f_free(CubeColouring::parse("edge 2 BBRB"), b));
  // partial host: a blue C4 cannot use a grey edge
  CHECK(is_f_free(CubeColouring::parse("partial 2 GGBB"), b));
  CubeColouring p3 = CubeColouring::uniform(Mode::Partial, 3, Colour::Blue);
  CHECK_FALSE(is_f_free(p3, b));  // all-blue directions 1,2 still hold a C4
  ForbiddenFamily empty;
  empty.validate();
  CHECK(is_f_free(CubeColouring::uniform(Mode::EdgeRB, 2, Colour::Blue), empty));
  // randomized agreement with the oracle
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    CubeColouring host = random_colouring(Mode::Partial, 3, rng);
    CHECK(is_f_free(host, b) == oracle::f_free(host, b));
  }
}

TEST_CASE("blue to red recolouring preserves f-freeness") {
  std::mt19937 rng(31);
  ForbiddenFamily b = family_of({"edge 2 BBBB"});
  int checked = 0;
  while (checked < 25) {
    CubeColouring host = random_colouring(Mode::EdgeRB, 3, rng);
    if (!is_f_free(host, b)) continue;
    ++checked;
    for (int i = 0; i < host.slots(); ++i)
      if (host.word[i] == Colour::Blue) {
        CubeColouring redder = host;
        redder.word[i] = Colour::Red;
        CHECK(is_f_free(redder, b));
      }
  }
}

TEST_CASE("density counts blue over colourable slots") {
  CHECK(density(CubeColouring::parse("vertex 2 BRRB")) == Rat(1, 2));
  CHECK(density(CubeColouring::parse("edge 2 BBBR")) == Rat(3, 4));
  CHECK(density(CubeColouring::parse("partial 2 GGBR")) == Rat(1, 2));
  CHECK(density(CubeColouring::parse("triedge 3 GGGGGGGGBBBR")) == Rat(3, 4));
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    CubeColouring c = random_colouring(Mode::EdgeRB, 4, rng);
    CHECK(density(c) == oracle::blue_density(c));
  }
}

TEST_CASE("grey_project greys leading directions and keeps the rest") {
  CubeColouring e = CubeColouring::parse("edge 2 BRBR");
  CubeColouring p = grey_project(e, 1);
  CHECK(p.text() == "partial 2 GGBR");
  CubeColouring t = grey_project(p, 1);
  CHECK(t.mode == Mode::TriEdge);
  CHECK(grey_project(e, 2) == t);
  // direction-0 edge colours are discarded, the rest survive in order
  CubeColouring e3 = CubeColouring::parse("edge 3 BBRRRBBRBRBR");
  CubeColouring p3 = grey_project(e3, 1);
  CHECK(p3.text() == "partial 3 GGGGRBBRBRBR");
}

TEST_CASE("family validation") {
  ForbiddenFamily mixed;
  mixed.members.push_back(CubeColouring::parse("vertex 2 BBBB"));
  mixed.members.push_back(CubeColouring::parse("edge 2 BBBB"));
  CHECK_THROWS_AS(mixed.validate(), Error);
  ForbiddenFamily greys;
  greys.members.push_back(CubeColouring::parse("partial 2 GGBB"));
  CHECK_THROWS_AS(greys.validate(), Error);
}
