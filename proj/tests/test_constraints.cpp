#include <random>
#include <set>

#include "cubeflag/constraints.hpp"
#include "doctest.h"
#include "hosts.hpp"
#include "oracle.hpp"

using namespace cubeflag;

namespace {

ForbiddenFamily blue_c4() {
  ForbiddenFamily f;
  f.members.push_back(CubeColouring::parse("edge 2 BBBB"));
  f.validate();
  return f;
}

ForbiddenFamily empty_family() {
  ForbiddenFamily f;
  f.validate();
  return f;
}

Rat row_dot_densities(const ConstraintRow& row,
                      const std::vector<CubeColouring>& h_list,
                      const CubeColouring& g) {
  Rat total(0);
  for (const auto& [idx, value] : row.entries)
    total += value * p_density(h_list[idx], g);
  return total;
}

}  // namespace

TEST_CASE("phi_swap exchanges two directions and nothing else") {
  SignedPermutation s = phi_swap(4, 1, 3);
  CHECK(s.flips == 0u);
  CHECK(s.apply_dir(0) == 0);
  CHECK(s.apply_dir(1) == 3);
  CHECK(s.apply_dir(2) == 2);
  CHECK(s.apply_dir(3) == 1);
  // involution
  SignedPermutation twice = s.then(s);
  for (uint32_t v = 0; v < 16; ++v) CHECK(twice.apply(v) == v);
  // swapping a direction with itself is the identity
  SignedPermutation same = phi_swap(3, 1, 1);
  for (uint32_t v = 0; v < 8; ++v) CHECK(same.apply(v) == v);
}

TEST_CASE("enumerate_s lists the two-grey classes") {
  CHECK(enumerate_s(3, blue_c4()).size() ==
        oracle::count_classes(Mode::TriEdge, 3, blue_c4()));
  CHECK(enumerate_s(2, empty_family()).size() == 1);
  auto via_h = enumerate_h(Mode::TriEdge, 3, blue_c4());
  auto via_s = enumerate_s(3, blue_c4());
  REQUIRE(via_h.size() == via_s.size());
  for (size_t i = 0; i < via_h.size(); ++i)
    CHECK(via_h[i].word == via_s[i].word);
}

TEST_CASE("p_phi averages the swapped greyings of a pattern") {
  // pattern with all direction-1 edges blue and all direction-2 edges red:
  // greying direction 1 directly keeps the red block, swapping in direction 2
  // first keeps the blue block
  CubeColouring h = CubeColouring::parse("partial 3 GGGGBBBBRRRR");
  CubeColouring s_red = canonical_form(
      CubeColouring::parse("triedge 3 GGGGGGGGRRRR"));
  CubeColouring s_blue = canonical_form(
      CubeColouring::parse("triedge 3 GGGGGGGGBBBB"));
  CHECK(p_phi(s_red, h) == Rat(1, 2));
  CHECK(p_phi(s_blue, h) == Rat(1, 2));
  // a class hit by neither greying
  CubeColouring s_mixed = canonical_form(
      CubeColouring::parse("triedge 3 GGGGGGGGBRRR"));
  CHECK(p_phi(s_mixed, h) == Rat(0));
  // in dimension 2 there is a single greying and a single class
  CubeColouring h2 = CubeColouring::parse("partial 2 GGBR");
  CubeColouring s2 = canonical_form(CubeColouring::parse("triedge 2 GGGG"));
  CHECK(p_phi(s2, h2) == Rat(1));
}

TEST_CASE("p_phi values over all classes sum to one") {
  ForbiddenFamily family = blue_c4();
  auto s_list = enumerate_s(3, family);
  auto h_list = enumerate_h(Mode::Partial, 3, family);
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 8; ++trial) {
    const CubeColouring& h = h_list[rng() % h_list.size()];
    Rat total(0);
    for (const auto& s : s_list) total += p_phi(s, h);
    CHECK(total == Rat(1));
  }
}

TEST_CASE("constraint rows are deduplicated and never zero") {
  ForbiddenFamily family = blue_c4();
  auto h_list = enumerate_h(Mode::Partial, 3, family);
  auto rows = constraint_vectors(3, family, h_list);
  CHECK(rows.size() > 0);
  std::set<std::vector<std::pair<uint32_t, std::string>>> seen;
  for (const auto& row : rows) {
    REQUIRE(row.entries.size() > 0);
    for (size_t i = 0; i + 1 < row.entries.size(); ++i)
      CHECK(row.entries[i].first < row.entries[i + 1].first);
    for (const auto& [idx, value] : row.entries) {
      CHECK(idx < h_list.size());
      CHECK(value != Rat(0));
    }
    // normalize by the leading coefficient; dedup must have kept one
    // representative per scaled-or-negated class
    Rat lead = row.entries.front().second;
    std::vector<std::pair<uint32_t, std::string>> norm;
    for (const auto& [idx, value] : row.entries) {
      Rat v = value / lead;
      v.canonicalize();
      norm.emplace_back(idx, rat_to_string(v));
    }
    CHECK(seen.insert(norm).second);
  }
  // in dimension 2 the swap is trivial, so every row cancels
  auto h2 = enumerate_h(Mode::Partial, 2, family);
  CHECK(constraint_vectors(2, family, h2).empty());
}

TEST_CASE("constraint rows annihilate densities on blue-c4-free hosts") {
  ForbiddenFamily family = blue_c4();
  auto h_list = enumerate_h(Mode::Partial, 3, family);
  auto rows = constraint_vectors(3, family, h_list);
  REQUIRE(rows.size() > 0);
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 5; ++trial) {
    CubeColouring g = testhosts::random_f_free(Mode::EdgeRB, 4, family, rng);
    CAPTURE(g.text());
    for (const auto& row : rows)
      CHECK(row_dot_densities(row, h_list, g) == Rat(0));
  }
}

TEST_CASE("recompute_rows reproduces rows from their class words") {
  ForbiddenFamily family = blue_c4();
  auto h_list = enumerate_h(Mode::Partial, 3, family);
  auto rows = constraint_vectors(3, family, h_list);
  std::vector<CubeColouring> s_list;
  for (const auto& row : rows) s_list.push_back(row.s_class);
  auto again = recompute_rows(3, h_list, s_list);
  REQUIRE(again.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].s_class.word == rows[i].s_class.word);
    REQUIRE(again[i].entries.size() == rows[i].entries.size());
    for (size_t j = 0; j < rows[i].entries.size(); ++j) {
      CHECK(again[i].entries[j].first == rows[i].entries[j].first);
      CHECK(again[i].entries[j].second == rows[i].entries[j].second);
    }
  }
}
