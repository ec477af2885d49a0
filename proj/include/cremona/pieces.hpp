#pragma once

// Two-dimensional elementary relations between Sarkisov links over a point:
// polygons whose corners are rank 1 fibrations, whose sides are links, and
// whose interior is the rank 3 surface dominating the whole boundary. The
// catalog holds the 27 point-centered pieces; conic bundle squares over the
// line come as a parameterized family on top. Walking a boundary from one
// cut corner to another in both directions yields the relation used to
// rewrite one chain of links into another.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cremona/graph.hpp"

namespace cremona {

// A corner of a piece. Hirzebruch corners carry which F_n they are (0 or 1
// in the catalog); every other class needs no extra data. Primed corners of
// the source diagrams (X4 vs X4') are separate boundary positions of equal
// class, so the prime itself is not stored.
struct PieceCorner {
  VertexClass cls = VertexClass::P2;
  int hirzebruch = -1;  // n of an F_n corner, -1 when not a Hirzebruch slot

  bool operator==(const PieceCorner&) const = default;
};

// Display name in the style of the diagrams: X8, F1/P1, X5/P1, ...
std::string corner_name(const PieceCorner& c);

// Degree of the surface sitting at the corner.
int corner_degree(const PieceCorner& c);

struct Piece {
  // Alias names like "P2_23": root surface tag plus the orbit sizes blown
  // up from it to reach the center. Sorted; names[0] is the canonical name.
  std::vector<std::string> names;
  std::string figure_ref;   // tag of the source diagram, empty for squares
  int center_degree = 0;
  bool over_line = false;   // square relations run over the line
  std::vector<PieceCorner> corners;
  std::vector<LinkEdge> edges;  // edges[i] joins corners[i] to corners[(i+1) % n]

  // Documented extremal ray lists of the center, in cyclic order. Carried
  // as annotation on the three pieces that come with one; never recomputed.
  std::vector<std::string> extremal_rays;

  int sides() const { return static_cast<int>(edges.size()); }

  // The boundary as a closed word based at the given corner.
  LinkWord boundary_word(int start = 0) const;
};

// Center degree 2 pieces carry the Geiser involution of the center, degree 1
// pieces the Bertini involution; both act on the polygon as the half turn.
enum class SymmetryKind { Geiser, Bertini };

struct PieceSymmetry {
  int half_turn = 0;  // corner i pairs with corner i + half_turn, same for edges
  SymmetryKind kind = SymmetryKind::Geiser;
};

// The 27 pieces, sorted by canonical name, fully validated at load.
const std::vector<Piece>& piece_catalog();

// Lookup by any alias; null when the name is unknown.
const Piece* find_piece(std::string_view name);

// Boundary chains and closes, every edge lies in the graph, the center
// arithmetic of every alias holds, and the Hirzebruch bookkeeping along the
// boundary is consistent.
bool validate_piece(const Piece& p, const LinkGraph& g);

// The half-turn symmetry for center degree 1 or 2; nullopt for larger
// centers and for squares. A catalog piece with small center whose labels
// fail to repeat antipodally is corrupted data: throws std::logic_error.
std::optional<PieceSymmetry> central_symmetry(const Piece& p);

// Cut the boundary at two corners and read both arcs forward, each from one
// cut corner to the other. Together they spell the full boundary; reversing
// one of them gives the two sides of the relation. Equal positions yield an
// empty arc and the whole boundary. Throws std::invalid_argument on corner
// positions outside the boundary.
std::pair<LinkWord, LinkWord> boundary_relation(const Piece& p, int at, int to);

// The commuting square of two conic bundle links with disjoint base orbits:
// four corners of the given conic class, sides alternating (d1,d1) and
// (d2,d2). The center is the rank 3 conic bundle blowing up both orbits, of
// degree deg - d1 - d2, possibly nonpositive. Throws std::invalid_argument
// unless the class is a conic bundle and both orbit sizes are positive.
Piece square_relation(VertexClass conic, int d1, int d2);

}  // namespace cremona
