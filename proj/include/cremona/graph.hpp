#pragma once

// The link graph of rational surfaces over a perfect field: seven vertex
// classes (the plane, del Pezzo surfaces of degree 5, 6, 8 and conic bundles
// with K^2 = 5, 6, 8), the Sarkisov links joining them, words in the graph,
// the catalog of irreducible word shapes, and rational point bookkeeping
// along words over finite fields. Everything here is combinatorial; no
// geometry is constructed and no existence over a particular field is
// claimed. Words describe candidate factorization types only.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cremona {

// D-classes fiber over the point, C-classes over the line. P2 counts as a
// D-class of degree 9 for everything below except its name.
enum class VertexClass { P2, D5, D6, D8, C5, C6, C8 };

enum class BaseKind { Point, Line };

BaseKind vertex_base(VertexClass v);
int vertex_degree(VertexClass v);
std::string vertex_name(VertexClass v);
std::optional<VertexClass> vertex_from_name(std::string_view name);

// Type II links blow up a d-orbit and contract a d'-orbit without changing
// the base kind; type I moves from a point base to a conic bundle, III is
// its inverse, and IV is the change of ruling on the quadric, the only link
// keeping the surface and swapping the fibration.
enum class LinkType { I, IIPoint, IILine, III, IV };

// One step of a word. Orbit sizes: II carries (d, d'), equal on conic
// bundles; I and III carry d alone (dprime stays 0); IV carries none.
// d == 0 on a IILine step is a free parameter, printed as the letter d.
struct LinkEdge {
  LinkType type = LinkType::IIPoint;
  VertexClass from = VertexClass::P2;
  VertexClass to = VertexClass::P2;
  int d = 0;
  int dprime = 0;

  bool operator==(const LinkEdge&) const = default;
};

// A path in the link graph; the number of edges is the Sarkisov length of
// any map factored along it.
struct LinkWord {
  VertexClass start = VertexClass::P2;
  std::vector<LinkEdge> edges;

  VertexClass end() const { return edges.empty() ? start : edges.back().to; }
  bool closed() const { return end() == start; }
  int length() const { return static_cast<int>(edges.size()); }

  bool operator==(const LinkWord&) const = default;
};

// The same path walked backwards: I and III exchange, the two orbit sizes
// of a II step swap. Factors the inverse map.
LinkWord word_reverse(const LinkWord& w);

// Text form, e.g. "P2 -2,1-> D8 -1,2-> P2" or "P2 -I1-> C8 -IV-> C8".
std::string word_to_string(const LinkWord& w);

// Inverse of word_to_string. Whitespace-separated vertices and arrows;
// base-kind constraints on the link types are enforced here, graph
// membership is not. Throws std::invalid_argument on malformed text.
LinkWord parse_word(const std::string& text);

// An edge family of the standard graph. Concrete families pin the orbit
// sizes; d == 0 on a IILine family leaves the size free (the conic bundle
// loops exist for every orbit size the field can offer).
struct EdgeFamily {
  LinkType type;
  VertexClass from;
  VertexClass to;
  int d;
  int dprime;
};

// RealType restricts to fields whose algebraic closure has degree 2, where
// only orbits of size 1 and 2 exist: four vertices survive.
enum class GraphMode { General, RealType };

struct LinkGraph {
  GraphMode mode = GraphMode::General;
  std::vector<VertexClass> vertices;
  std::vector<EdgeFamily> families;
  std::optional<int> max_orbit;  // largest orbit a point can have, if bounded

  bool has_vertex(VertexClass v) const;

  // The family matching a concrete step. Type, source and blown-up orbit
  // size determine the target, so at most one family matches.
  std::optional<EdgeFamily> find_family(LinkType type, VertexClass from, int d) const;
};

LinkGraph standard_graph(GraphMode mode = GraphMode::General);

// Edge-count distance from root to every reachable vertex, loops ignored.
std::map<VertexClass, int> graph_distances(const LinkGraph& g, VertexClass root);

// True iff consecutive edges chain and every step matches a family.
bool validate_word(const LinkGraph& g, const LinkWord& w);

enum class WordKind { DelPezzo, Fibering };

// The pencil a closed fibering word runs over. Lines words ride the
// Hirzebruch chain; Quartet and TwinPairs words visit the degree 5 resp.
// degree 6 conic bundles. Mirrors FibKind.
enum class PencilShape { Lines, Quartet, TwinPairs };

struct WordReport {
  int length = 0;
  WordKind kind = WordKind::DelPezzo;
  bool has_type_iv = false;
  bool iii_after_i = false;     // a III step directly after a I step
  bool revisits_start = false;  // the start vertex reappears strictly inside
  bool unimodal = false;        // distance profile climbs, optional middle plateau, descends
  std::optional<PencilShape> shape;
  int ruled_steps = 0;  // II steps of a Lines word
  std::optional<std::string> catalog_row;

  // No IV, no III after I, no internal start revisit, and unimodal.
  // Lines-shape words are exempt from unimodality: they idle at distance 1
  // while hopping along the Hirzebruch chain.
  bool minimal_irreducible_candidate() const;
};

// Classification of a closed word based anywhere; throws on open or
// invalid words.
WordReport classify_word(const LinkGraph& g, const LinkWord& w);

// Candidate minimal factorizations of irreducible maps, based at P2. The
// catalog is a superset of what a given field realizes: no existence claim
// is attached to a row.
struct IrreducibleCatalog {
  std::vector<LinkWord> del_pezzo;
  std::vector<LinkWord> fibering;  // free d on conic bundle steps
};

// All closed words at P2 with at most max_sl links, no internal P2 visit,
// no type IV, no III after I, and unimodal (Lines words exempt as above).
// Sorted by length then text. max_sl is capped at 8.
IrreducibleCatalog enumerate_irreducible_types(const LinkGraph& g, int max_sl);

// Rational point counts at the vertices visited by a point-base word over
// F_q, starting from the closed form of the start vertex: blowing up an
// orbit of size one gains q points, contracting one loses q, and larger
// orbits leave the count alone. Each running value is checked against the
// closed form of the vertex it lands on. Rejects fibering words and q
// that is not a prime power.
std::vector<long long> point_count_along(const LinkGraph& g, const LinkWord& w, long long q);

}  // namespace cremona
