#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "cremona/graph.hpp"
#include "cremona/pieces.hpp"

using namespace cremona;

namespace {

const Piece& by_name(const std::string& name) {
  const Piece* p = find_piece(name);
  REQUIRE(p != nullptr);
  return *p;
}

std::string arc_text(const LinkWord& w) { return word_to_string(w); }

}  // namespace

TEST_CASE("the catalog holds 27 pieces under 45 alias names") {
  const auto& cat = piece_catalog();
  CHECK(cat.size() == 27);

  std::set<std::string> aliases, figures;
  int total_sides = 0;
  for (const Piece& p : cat) {
    for (const auto& n : p.names) aliases.insert(n);
    figures.insert(p.figure_ref);
    total_sides += p.sides();
    CHECK(!p.over_line);
    CHECK(p.extremal_rays.size() <= static_cast<size_t>(p.sides()));
  }
  CHECK(aliases.size() == 45);
  CHECK(figures.size() == 27);
  CHECK(total_sides == 187);

  SUBCASE("catalog order and canonical names follow the smallest alias") {
    for (size_t i = 0; i + 1 < cat.size(); ++i) CHECK(cat[i].names[0] < cat[i + 1].names[0]);
    for (const Piece& p : cat)
      for (const auto& n : p.names) CHECK(p.names[0] <= n);
    CHECK(by_name("P2_25").names[0] == "D5_12");
    CHECK(by_name("P2_11").names[0] == "F0_1");
    CHECK(by_name("P2_14").names[0] == "P2_14");
  }

  SUBCASE("aliases resolve to one piece each") {
    CHECK(find_piece("P2_25") == find_piece("D8_15"));
    CHECK(find_piece("P2_25") == find_piece("D5_12"));
    CHECK(find_piece("P2_23") == find_piece("D6_11"));
    CHECK(find_piece("P2_15") == find_piece("F0_5"));
    CHECK(find_piece("X_99") == nullptr);
    CHECK(find_piece("") == nullptr);
  }
}

TEST_CASE("center degrees and side counts match the diagrams") {
  // canonical name -> {center degree, sides}
  const std::map<std::string, std::pair<int, int>> expected = {
      {"F0_1", {7, 5}},   {"D8_11", {6, 5}},  {"F0_3", {5, 6}},   {"P2_14", {4, 6}},
      {"D5_11", {3, 7}},  {"P2_16", {2, 8}},  {"F0_7", {1, 12}},  {"D8_12", {5, 5}},
      {"D6_11", {4, 5}},  {"D8_14", {3, 6}},  {"D5_12", {2, 6}},  {"D8_16", {1, 8}},
      {"P2_33", {3, 6}},  {"P2_34", {2, 8}},  {"D5_13", {1, 8}},  {"P2_44", {1, 12}},
      {"D8_22", {4, 6}},  {"D6_12", {3, 6}},  {"D8_24", {2, 8}},  {"D5_22", {1, 10}},
      {"D6_13", {2, 6}},  {"D6_14", {1, 8}},  {"D6_22", {2, 4}},  {"D6_23", {1, 4}},
      {"F0_2", {6, 6}},   {"F0_4", {4, 8}},   {"F0_6", {2, 8}},
  };
  CHECK(expected.size() == 27);
  for (const auto& [name, want] : expected) {
    const Piece& p = by_name(name);
    CHECK_MESSAGE(p.center_degree == want.first, name);
    CHECK_MESSAGE(p.sides() == want.second, name);
  }

  SUBCASE("every alias repeats the center arithmetic of its root") {
    // e.g. the degree 1 center reached from X6 by orbits of sizes 2 and 3
    CHECK(by_name("D6_23").center_degree == 6 - 2 - 3);
    CHECK(by_name("D8_15").center_degree == 8 - 1 - 5);
    CHECK(by_name("F0_5").center_degree == 8 - 5);
  }
}

TEST_CASE("boundaries are closed walks in the standard graph") {
  LinkGraph g = standard_graph();
  for (const Piece& p : piece_catalog()) {
    LinkWord w = p.boundary_word();
    CHECK(w.closed());
    CHECK(w.length() == p.sides());
    CHECK(validate_word(g, w));
    CHECK(validate_piece(p, g));
  }

  SUBCASE("the pentagon with one crossing and a ruling swap") {
    const Piece& p = by_name("P2_11");
    CHECK(arc_text(p.boundary_word()) ==
          "P2 -I1-> C8 -1,1-> C8 -IV-> C8 -1,1-> C8 -III1-> P2");
    CHECK(corner_name(p.corners[1]) == "F1/P1");
    CHECK(corner_name(p.corners[2]) == "F0/P1");
    CHECK(corner_degree(p.corners[0]) == 9);
    CHECK(corner_degree(p.corners[1]) == 8);
  }

  SUBCASE("the 12-gon over the smallest center") {
    const Piece& p = by_name("P2_17");
    CHECK(p.center_degree == 1);
    CHECK(p.sides() == 12);
    LinkWord w = p.boundary_word(6);  // based at the second plane corner
    CHECK(w.start == VertexClass::P2);
    CHECK(w.closed());
  }

  SUBCASE("rotating the base corner rotates the word") {
    const Piece& p = by_name("D6_23");
    CHECK(arc_text(p.boundary_word(1)) ==
          "D6 -3,3-> D6 -2,2-> D6 -3,3-> D6 -2,2-> D6");
    CHECK_THROWS_AS(p.boundary_word(4), std::invalid_argument);
  }

  SUBCASE("a corrupted orbit size fails validation") {
    Piece p = by_name("P2_24");
    // the X8 loop of this hexagon blows up a 4-orbit on both ends
    REQUIRE(p.edges[1].d == 4);
    p.edges[1].d = 5;
    CHECK(!validate_piece(p, g));
    p.edges[1].d = 4;
    CHECK(validate_piece(p, g));
    p.center_degree = 2;
    CHECK(!validate_piece(p, g));
  }

  SUBCASE("a broken corner chain fails validation") {
    Piece p = by_name("D6_22");
    p.corners[2].cls = VertexClass::D8;
    CHECK(!validate_piece(p, g));
  }
}

TEST_CASE("Hirzebruch corners keep consistent classes along the boundary") {
  for (const Piece& p : piece_catalog()) {
    for (int i = 0; i < p.sides(); ++i) {
      const LinkEdge& e = p.edges[i];
      const PieceCorner& a = p.corners[i];
      const PieceCorner& b = p.corners[(i + 1) % p.sides()];
      if (a.cls == VertexClass::C8) CHECK(a.hirzebruch >= 0);
      if (e.type == LinkType::IV) {
        CHECK(a.hirzebruch == 0);
        CHECK(b.hirzebruch == 0);
      }
      if (e.type == LinkType::I && e.to == VertexClass::C8) CHECK(b.hirzebruch == 1);
      if (e.type == LinkType::III && e.from == VertexClass::C8) CHECK(a.hirzebruch == 1);
      if (e.type == LinkType::IILine && e.from == VertexClass::C8)
        CHECK((a.hirzebruch + e.d + b.hirzebruch) % 2 == 0);
    }
  }

  SUBCASE("the pentagon stores F1, F0, F0, F1 between its plane corners") {
    const Piece& p = by_name("F0_1");
    std::vector<int> hirz;
    for (const auto& c : p.corners) hirz.push_back(c.hirzebruch);
    CHECK(hirz == std::vector<int>{-1, 1, 0, 0, 1});
  }
}

TEST_CASE("central symmetries exist exactly on the 14 small centers") {
  std::set<std::string> geiser, bertini;
  for (const Piece& p : piece_catalog()) {
    auto s = central_symmetry(p);
    if (!s) {
      CHECK(p.center_degree > 2);
      continue;
    }
    CHECK(s->half_turn * 2 == p.sides());
    (s->kind == SymmetryKind::Geiser ? geiser : bertini).insert(p.names[0]);
  }
  CHECK(geiser == std::set<std::string>{"D5_12", "D6_13", "D6_22", "D8_24", "F0_6",
                                        "P2_16", "P2_34"});
  CHECK(bertini == std::set<std::string>{"D5_13", "D5_22", "D6_14", "D6_23", "D8_16",
                                         "F0_7", "P2_44"});

  SUBCASE("the half turn pairs equal corners and equal edges") {
    const Piece& p = by_name("P2_25");
    auto s = central_symmetry(p);
    REQUIRE(s.has_value());
    CHECK(s->kind == SymmetryKind::Geiser);
    CHECK(s->half_turn == 3);
    for (int i = 0; i < p.sides(); ++i) {
      CHECK(p.corners[i] == p.corners[(i + s->half_turn) % p.sides()]);
      CHECK(p.edges[i] == p.edges[(i + s->half_turn) % p.sides()]);
    }
    // plane, X8 and X5 corners swap with their antipodes
    CHECK(p.corners[0].cls == VertexClass::P2);
    CHECK(p.corners[1].cls == VertexClass::D8);
    CHECK(p.corners[2].cls == VertexClass::D5);
  }

  SUBCASE("large centers have none, degree one gives Bertini") {
    CHECK(!central_symmetry(by_name("P2_11")).has_value());
    CHECK(!central_symmetry(by_name("P2_33")).has_value());
    auto s = central_symmetry(by_name("D6_23"));
    REQUIRE(s.has_value());
    CHECK(s->kind == SymmetryKind::Bertini);
  }

  SUBCASE("an antipodally patterned boundary is not enough by itself") {
    // hexagon over a degree 4 center: labels repeat antipodally, yet there
    // is no involution attached because the center is too big
    CHECK(!central_symmetry(by_name("D8_22")).has_value());
  }

  SUBCASE("a small center with mismatched antipodes is corrupted data") {
    Piece p = by_name("D6_23");
    p.edges[3] = {LinkType::IIPoint, VertexClass::D6, VertexClass::D6, 2, 2};
    CHECK_THROWS_AS(central_symmetry(p), std::logic_error);
  }
}

TEST_CASE("cutting a boundary yields the two arcs of a relation") {
  LinkGraph g = standard_graph();

  SUBCASE("the hexagon through X8 and X6 cut at its two plane corners") {
    const Piece& p = by_name("P2_23");
    REQUIRE(p.corners[0].cls == VertexClass::P2);
    REQUIRE(p.corners[4].cls == VertexClass::P2);
    auto [arc1, arc2] = boundary_relation(p, 0, 4);
    CHECK(arc_text(arc1) == "P2 -2,1-> D8 -3,1-> D6 -1,3-> D8 -1,2-> P2");
    CHECK(arc_text(arc2) == "P2 -3,3-> P2");
    // the long way around factors the quadratic map that the single
    // cubic-cubic step performs in one link
    CHECK(arc1.length() + arc2.length() == p.sides());
    CHECK(validate_word(g, arc1));
    CHECK(validate_word(g, arc2));
  }

  SUBCASE("the heptagon cut between the plane and X5") {
    const Piece& p = by_name("P2_15");
    REQUIRE(p.corners[0].cls == VertexClass::P2);
    REQUIRE(p.corners[6].cls == VertexClass::D5);
    auto [arc1, arc2] = boundary_relation(p, 0, 6);
    CHECK(arc_text(arc1) ==
          "P2 -I1-> C8 -5,5-> C8 -IV-> C8 -5,5-> C8 -III1-> P2 -5,1-> D5");
    CHECK(arc_text(arc2) == "D5 -1,5-> P2");
  }

  SUBCASE("equal cut corners give an empty arc and the full boundary") {
    const Piece& p = by_name("D6_22");
    auto [arc1, arc2] = boundary_relation(p, 2, 2);
    CHECK(arc1.length() == 0);
    CHECK(arc1.start == VertexClass::D6);
    CHECK(arc2 == p.boundary_word(2));
  }

  SUBCASE("adjacent cut corners split off a single link") {
    const Piece& p = by_name("D8_22");
    auto [arc1, arc2] = boundary_relation(p, 1, 2);
    CHECK(arc1.length() == 1);
    CHECK(arc2.length() == p.sides() - 1);
  }

  SUBCASE("the two arcs always compose to the boundary based at the cut") {
    for (const Piece& p : piece_catalog()) {
      for (int at : {0, 1}) {
        for (int to = 0; to < p.sides(); ++to) {
          auto [arc1, arc2] = boundary_relation(p, at, to);
          LinkWord joined = arc1;
          joined.edges.insert(joined.edges.end(), arc2.edges.begin(), arc2.edges.end());
          CHECK(joined == p.boundary_word(at));
          // reversing arc2 gives the second word of the relation: same
          // endpoints walked the other way
          LinkWord back = word_reverse(arc2);
          CHECK(back.start == arc1.start);
          CHECK(back.end() == arc1.end());
        }
      }
    }
    CHECK_THROWS_AS(boundary_relation(by_name("P2_33"), 0, 6), std::invalid_argument);
    CHECK_THROWS_AS(boundary_relation(by_name("P2_33"), -1, 0), std::invalid_argument);
  }
}

TEST_CASE("conic bundle squares form the parameterized family over the line") {
  LinkGraph g = standard_graph();

  Piece sq = square_relation(VertexClass::C6, 1, 2);
  CHECK(sq.names[0] == "sq(C6,1,2)");
  CHECK(sq.over_line);
  CHECK(sq.sides() == 4);
  CHECK(sq.center_degree == 3);
  CHECK(arc_text(sq.boundary_word()) ==
        "C6 -1,1-> C6 -2,2-> C6 -1,1-> C6 -2,2-> C6");
  CHECK(validate_piece(sq, g));

  SUBCASE("all three conic classes work, with any positive orbit sizes") {
    for (VertexClass v : {VertexClass::C5, VertexClass::C6, VertexClass::C8}) {
      for (int d1 : {1, 3}) {
        for (int d2 : {2, 7}) {
          Piece p = square_relation(v, d1, d2);
          CHECK(p.center_degree == vertex_degree(v) - d1 - d2);
          CHECK(validate_piece(p, g));
          // squares never carry the point-center involutions, whatever
          // their relative degree
          CHECK(!central_symmetry(p).has_value());
        }
      }
    }
  }

  SUBCASE("degenerate parameters are rejected") {
    CHECK_THROWS_AS(square_relation(VertexClass::P2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(square_relation(VertexClass::D8, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(square_relation(VertexClass::C6, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(square_relation(VertexClass::C8, 1, -2), std::invalid_argument);
  }

  SUBCASE("a square cut at opposite corners says the two links commute") {
    Piece p = square_relation(VertexClass::C8, 2, 3);
    auto [arc1, arc2] = boundary_relation(p, 0, 2);
    CHECK(arc_text(arc1) == "C8 -2,2-> C8 -3,3-> C8");
    CHECK(arc_text(word_reverse(arc2)) == "C8 -3,3-> C8 -2,2-> C8");
  }
}

TEST_CASE("documented ray lists ride along as annotation") {
  const Piece& p15 = by_name("P2_15");
  REQUIRE(p15.extremal_rays.size() == 7);
  CHECK(p15.extremal_rays.size() == static_cast<size_t>(p15.sides()));
  CHECK(p15.extremal_rays[0].substr(0, 2) == "E1");

  const Piece& p23 = by_name("P2_23");
  CHECK(p23.extremal_rays.size() == 5);

  const Piece& p25 = by_name("P2_25");
  REQUIRE(p25.extremal_rays.size() == 6);
  CHECK(p25.extremal_rays.back().substr(0, 2) == "E2");

  int annotated = 0;
  for (const Piece& p : piece_catalog())
    if (!p.extremal_rays.empty()) ++annotated;
  CHECK(annotated == 3);
}
