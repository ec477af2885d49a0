#include "cremona/pieces.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cremona {
namespace {

// Raw catalog rows. Aliases are space separated; the boundary is the closed
// walk corner, arrow, corner, ..., ending on the starting corner, written in
// the vocabulary of the source diagrams. Transcription safety comes from the
// load-time checks, not from proofreading: every boundary must validate in
// the standard graph, every alias must give the same center degree, and the
// Hirzebruch and midpoint bookkeeping must come out consistent.
struct PieceRow {
  const char* aliases;
  const char* figure;
  const char* boundary;
};

constexpr PieceRow kCatalog[] = {
    {"P2_11 F0_1", "P2_11",
     "P2 -I1-> F1/P1 -1,1-> F0/P1 -IV-> F0/P1 -1,1-> F1/P1 -III1-> P2"},
    {"P2_12 D8_11", "P2_12",
     "P2 -I1-> F1/P1 -2,2-> F1/P1 -III1-> P2 -2,1-> X8 -1,2-> P2"},
    {"P2_13 F0_3", "P2_13",
     "P2 -I1-> F1/P1 -3,3-> F0/P1 -IV-> F0/P1 -3,3-> F1/P1 -III1-> P2 -3,3-> P2"},
    {"P2_14", "P2_14",
     "P2 -I1-> F1/P1 -4,4-> F1/P1 -III1-> P2 -I4-> X5/P1 -1,1-> X5/P1 -III4-> P2"},
    {"P2_15 D5_11 F0_5", "P2_15",
     "P2 -I1-> F1/P1 -5,5-> F0/P1 -IV-> F0/P1 -5,5-> F1/P1 -III1-> P2 -5,1-> X5 "
     "-1,5-> P2"},
    {"P2_16", "P2_16",
     "P2 -I1-> F1/P1 -6,6-> F1/P1 -III1-> P2 -6,6-> P2 -I1-> F1/P1 -6,6-> F1/P1 "
     "-III1-> P2 -6,6-> P2"},
    {"P2_17 F0_7", "P2_17",
     "P2 -I1-> F1/P1 -7,7-> F0/P1 -IV-> F0/P1 -7,7-> F1/P1 -III1-> P2 -7,7-> P2 "
     "-I1-> F1/P1 -7,7-> F0/P1 -IV-> F0/P1 -7,7-> F1/P1 -III1-> P2 -7,7-> P2"},
    {"P2_22 D8_12", "P2_22",
     "P2 -2,1-> X8 -I2-> X6/P1 -1,1-> X6/P1 -III2-> X8 -1,2-> P2"},
    {"P2_23 D8_13 D6_11", "P2_23",
     "P2 -2,1-> X8 -3,1-> X6 -1,3-> X8 -1,2-> P2 -3,3-> P2"},
    {"P2_24 D8_14", "P2_24",
     "P2 -2,1-> X8 -4,4-> X8 -1,2-> P2 -I4-> X5/P1 -2,2-> X5/P1 -III4-> P2"},
    {"P2_25 D8_15 D5_12", "P2_25",
     "P2 -2,1-> X8 -5,2-> X5 -1,5-> P2 -2,1-> X8 -5,2-> X5 -1,5-> P2"},
    {"P2_26 D8_16", "P2_26",
     "P2 -2,1-> X8 -6,6-> X8 -1,2-> P2 -6,6-> P2 -2,1-> X8 -6,6-> X8 -1,2-> P2 "
     "-6,6-> P2"},
    {"P2_33", "P2_33",
     "P2 -3,3-> P2 -3,3-> P2 -3,3-> P2 -3,3-> P2 -3,3-> P2 -3,3-> P2"},
    {"P2_34", "P2_34",
     "P2 -3,3-> P2 -I4-> X5/P1 -3,3-> X5/P1 -III4-> P2 -3,3-> P2 -I4-> X5/P1 "
     "-3,3-> X5/P1 -III4-> P2"},
    {"P2_35 D5_13", "P2_35",
     "P2 -3,3-> P2 -5,1-> X5 -3,3-> X5 -1,5-> P2 -3,3-> P2 -5,1-> X5 -3,3-> X5 "
     "-1,5-> P2"},
    {"P2_44", "P2_44",
     "P2 -I4-> X5/P1 -4,4-> X5/P1 -III4-> P2 -I4-> X5/P1 -4,4-> X5/P1 -III4-> P2 "
     "-I4-> X5/P1 -4,4-> X5/P1 -III4-> P2 -I4-> X5/P1 -4,4-> X5/P1 -III4-> P2"},
    {"D8_22", "D8_22",
     "X8 -I2-> X6/P1 -2,2-> X6/P1 -III2-> X8 -I2-> X6/P1 -2,2-> X6/P1 -III2-> X8"},
    {"D8_23 D6_12", "D8_23",
     "X8 -I2-> X6/P1 -3,3-> X6/P1 -III2-> X8 -3,1-> X6 -2,2-> X6 -1,3-> X8"},
    {"D8_24", "D8_24",
     "X8 -I2-> X6/P1 -4,4-> X6/P1 -III2-> X8 -4,4-> X8 -I2-> X6/P1 -4,4-> X6/P1 "
     "-III2-> X8 -4,4-> X8"},
    {"D8_25 D5_22", "D8_25",
     "X8 -I2-> X6/P1 -5,5-> X6/P1 -III2-> X8 -5,2-> X5 -2,5-> X8 -I2-> X6/P1 "
     "-5,5-> X6/P1 -III2-> X8 -5,2-> X5 -2,5-> X8"},
    {"D8_33 D6_13", "D8_33",
     "X8 -3,1-> X6 -3,3-> X6 -1,3-> X8 -3,1-> X6 -3,3-> X6 -1,3-> X8"},
    {"D8_34 D6_14", "D8_34",
     "X8 -3,1-> X6 -4,4-> X6 -1,3-> X8 -4,4-> X8 -3,1-> X6 -4,4-> X6 -1,3-> X8 "
     "-4,4-> X8"},
    {"D6_22", "D6_22", "X6 -2,2-> X6 -2,2-> X6 -2,2-> X6 -2,2-> X6"},
    {"D6_23", "D6_23", "X6 -2,2-> X6 -3,3-> X6 -2,2-> X6 -3,3-> X6"},
    {"F0_2", "F0_2",
     "F0/P1 -IV-> F0/P1 -2,2-> F0/P1 -IV-> F0/P1 -2,2-> F0/P1 -IV-> F0/P1 -2,2-> "
     "F0/P1"},
    {"F0_4", "F0_4",
     "F0/P1 -IV-> F0/P1 -4,4-> F0/P1 -IV-> F0/P1 -4,4-> F0/P1 -IV-> F0/P1 -4,4-> "
     "F0/P1 -IV-> F0/P1 -4,4-> F0/P1"},
    {"F0_6", "F0_6",
     "F0/P1 -IV-> F0/P1 -6,6-> F0/P1 -IV-> F0/P1 -6,6-> F0/P1 -IV-> F0/P1 -6,6-> "
     "F0/P1 -IV-> F0/P1 -6,6-> F0/P1"},
};

// Extremal rays of the three centers that come with a documented ray list,
// in the documented cyclic order (consecutive rays meet trivially). Pure
// annotation: nothing downstream recomputes or checks these.
struct RayRow {
  const char* figure;
  std::vector<const char*> rays;
};

const RayRow kRays[] = {
    {"P2_15",
     {"E1: exceptional divisor of the rational point",
      "E5: exceptional divisor of the 5-orbit",
      "pencil of lines through the rational point",
      "L5: the five lines through the rational point and one branch of the 5-orbit",
      "pencil of cubics through both orbits, double at the rational point",
      "O5: the five conics through the rational point and four branches of the 5-orbit",
      "O1: the conic through the 5-orbit"}},
    {"P2_23",
     {"E3: exceptional divisor of the 3-orbit",
      "E1: exceptional divisor of the rational point",
      "D1: the diagonal through the 3-orbit",
      "D3: the three diagonals through the rational point and two branches of the 3-orbit",
      "R2: the horizontal and vertical rulings through the rational point"}},
    {"P2_25",
     {"E5: exceptional divisor of the 5-orbit",
      "L1: the line through the 2-orbit",
      "C2: the cubics through both orbits, singular at one branch of the 2-orbit",
      "C5: the cubics through both orbits, singular at one branch of the 5-orbit",
      "O1: the conic through the 5-orbit",
      "E2: exceptional divisor of the 2-orbit"}},
};

std::optional<PieceCorner> corner_from_token(const std::string& t) {
  if (t == "P2") return PieceCorner{VertexClass::P2, -1};
  if (t == "X8") return PieceCorner{VertexClass::D8, -1};
  if (t == "X6") return PieceCorner{VertexClass::D6, -1};
  if (t == "X5") return PieceCorner{VertexClass::D5, -1};
  if (t == "X6/P1") return PieceCorner{VertexClass::C6, -1};
  if (t == "X5/P1") return PieceCorner{VertexClass::C5, -1};
  if (t == "F0/P1") return PieceCorner{VertexClass::C8, 0};
  if (t == "F1/P1") return PieceCorner{VertexClass::C8, 1};
  return std::nullopt;
}

// Arrow token "-I1->", "-IV->", "-2,1->"; endpoints are filled by the caller.
std::optional<LinkEdge> edge_from_token(const std::string& t, BaseKind base) {
  if (t.size() < 4 || t.front() != '-' || t.substr(t.size() - 2) != "->")
    return std::nullopt;
  std::string body = t.substr(1, t.size() - 3);
  LinkEdge e;
  if (body == "IV") {
    e.type = LinkType::IV;
    return e;
  }
  auto digits = [](const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (body.rfind("III", 0) == 0 && digits(body.substr(3))) {
    e.type = LinkType::III;
    e.d = std::stoi(body.substr(3));
    return e;
  }
  if (body.rfind("I", 0) == 0 && digits(body.substr(1))) {
    e.type = LinkType::I;
    e.d = std::stoi(body.substr(1));
    return e;
  }
  auto comma = body.find(',');
  if (comma == std::string::npos || !digits(body.substr(0, comma)) ||
      !digits(body.substr(comma + 1)))
    return std::nullopt;
  e.d = std::stoi(body.substr(0, comma));
  e.dprime = std::stoi(body.substr(comma + 1));
  e.type = base == BaseKind::Line ? LinkType::IILine : LinkType::IIPoint;
  if (e.type == LinkType::IILine && e.d != e.dprime) return std::nullopt;
  return e;
}

[[noreturn]] void broken(const std::string& where, const std::string& what) {
  throw std::logic_error("piece catalog: " + where + ": " + what);
}

// Center degree an alias name promises: root degree minus the orbit sizes
// blown up from the root. F0 aliases carry a single orbit size.
std::optional<int> alias_center(const std::string& name) {
  auto us = name.find('_');
  if (us == std::string::npos || us + 1 >= name.size()) return std::nullopt;
  std::string root = name.substr(0, us);
  std::string digits = name.substr(us + 1);
  for (unsigned char c : digits)
    if (!std::isdigit(c)) return std::nullopt;
  int base = 0;
  if (root == "P2") base = 9;
  else if (root == "D8" || root == "F0") base = 8;
  else if (root == "D6") base = 6;
  else if (root == "D5") base = 5;
  else return std::nullopt;
  if (root == "F0") {
    if (digits.size() != 1) return std::nullopt;
    return base - (digits[0] - '0');
  }
  if (digits.size() != 2) return std::nullopt;
  return base - (digits[0] - '0') - (digits[1] - '0');
}

// The corner class an alias root names; the root surface must sit on the
// boundary of its own piece.
std::optional<PieceCorner> alias_root_corner(const std::string& name) {
  std::string root = name.substr(0, name.find('_'));
  if (root == "F0") return PieceCorner{VertexClass::C8, 0};
  if (auto v = vertex_from_name(root); v && vertex_base(*v) == BaseKind::Point)
    return PieceCorner{*v, -1};
  return std::nullopt;
}

Piece parse_row(const PieceRow& row) {
  Piece p;
  {
    std::istringstream in(row.aliases);
    std::string a;
    while (in >> a) p.names.push_back(a);
    std::sort(p.names.begin(), p.names.end());
  }
  p.figure_ref = row.figure;

  std::vector<std::string> tok;
  {
    std::istringstream in(row.boundary);
    std::string t;
    while (in >> t) tok.push_back(t);
  }
  if (tok.size() < 3 || tok.size() % 2 == 0) broken(row.figure, "truncated boundary");
  std::vector<PieceCorner> walk;
  for (size_t i = 0; i < tok.size(); i += 2) {
    auto c = corner_from_token(tok[i]);
    if (!c) broken(row.figure, "unknown corner " + tok[i]);
    walk.push_back(*c);
  }
  if (!(walk.front() == walk.back())) broken(row.figure, "boundary does not close");
  walk.pop_back();
  p.corners = walk;
  for (size_t i = 1; i < tok.size(); i += 2) {
    const PieceCorner& a = p.corners[(i - 1) / 2];
    const PieceCorner& b = p.corners[((i + 1) / 2) % p.corners.size()];
    auto e = edge_from_token(tok[i], vertex_base(a.cls));
    if (!e) broken(row.figure, "unknown arrow " + tok[i]);
    e->from = a.cls;
    e->to = b.cls;
    p.edges.push_back(*e);
  }

  auto c0 = alias_center(p.names[0]);
  if (!c0) broken(row.figure, "bad alias " + p.names[0]);
  p.center_degree = *c0;
  return p;
}

const std::vector<Piece>& catalog_storage() {
  static const std::vector<Piece> pieces = [] {
    std::vector<Piece> out;
    for (const PieceRow& row : kCatalog) out.push_back(parse_row(row));
    for (const RayRow& rr : kRays) {
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const Piece& p) { return p.figure_ref == rr.figure; });
      if (it == out.end()) broken(rr.figure, "ray list without a piece");
      it->extremal_rays.assign(rr.rays.begin(), rr.rays.end());
      if (it->sides() != static_cast<int>(it->extremal_rays.size()))
        broken(rr.figure, "ray count disagrees with side count");
    }
    std::sort(out.begin(), out.end(),
              [](const Piece& a, const Piece& b) { return a.names[0] < b.names[0]; });

    std::set<std::string> seen;
    for (const Piece& p : out)
      for (const std::string& n : p.names)
        if (!seen.insert(n).second) broken(n, "alias used twice");

    LinkGraph g = standard_graph();
    for (const Piece& p : out) {
      if (!validate_piece(p, g)) broken(p.figure_ref, "failed validation");
      central_symmetry(p);  // throws on a corrupted small center
    }
    return out;
  }();
  return pieces;
}

}  // namespace

std::string corner_name(const PieceCorner& c) {
  switch (c.cls) {
    case VertexClass::P2: return "P2";
    case VertexClass::D8: return "X8";
    case VertexClass::D6: return "X6";
    case VertexClass::D5: return "X5";
    case VertexClass::C6: return "X6/P1";
    case VertexClass::C5: return "X5/P1";
    case VertexClass::C8:
      if (c.hirzebruch >= 0) return "F" + std::to_string(c.hirzebruch) + "/P1";
      return "F/P1";
  }
  return "?";
}

int corner_degree(const PieceCorner& c) { return vertex_degree(c.cls); }

LinkWord Piece::boundary_word(int start) const {
  int n = sides();
  if (start < 0 || start >= n)
    throw std::invalid_argument("boundary_word: no corner " + std::to_string(start));
  LinkWord w;
  w.start = corners[start].cls;
  for (int k = 0; k < n; ++k) w.edges.push_back(edges[(start + k) % n]);
  return w;
}

const std::vector<Piece>& piece_catalog() { return catalog_storage(); }

const Piece* find_piece(std::string_view name) {
  for (const Piece& p : piece_catalog())
    for (const std::string& n : p.names)
      if (n == name) return &p;
  return nullptr;
}

bool validate_piece(const Piece& p, const LinkGraph& g) {
  int n = p.sides();
  if (n == 0 || static_cast<int>(p.corners.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    if (p.edges[i].from != p.corners[i].cls) return false;
    if (p.edges[i].to != p.corners[(i + 1) % n].cls) return false;
    if (p.corners[i].hirzebruch >= 0 && p.corners[i].cls != VertexClass::C8) return false;
  }
  if (!validate_word(g, p.boundary_word())) return false;

  if (p.over_line) {
    if (n != 4) return false;
    if (p.center_degree !=
        vertex_degree(p.corners[0].cls) - p.edges[0].d - p.edges[1].d)
      return false;
  } else {
    if (p.center_degree < 1) return false;
    for (const std::string& a : p.names) {
      if (alias_center(a) != p.center_degree) return false;
      auto root = alias_root_corner(a);
      if (!root) return false;
      if (std::find(p.corners.begin(), p.corners.end(), *root) == p.corners.end())
        return false;
    }
  }

  for (int i = 0; i < n; ++i) {
    const LinkEdge& e = p.edges[i];
    const PieceCorner& a = p.corners[i];
    const PieceCorner& b = p.corners[(i + 1) % n];
    // Degrees blown up at the two ends of the side; the side's midpoint
    // surface must come out the same from either corner.
    int da = 0, db = 0;
    switch (e.type) {
      case LinkType::IIPoint: da = e.d; db = e.dprime; break;
      case LinkType::IILine: da = e.d; db = e.d; break;
      case LinkType::I: da = e.d; break;
      case LinkType::III: db = e.d; break;
      case LinkType::IV: break;
    }
    int mid = corner_degree(a) - da;
    if (mid != corner_degree(b) - db) return false;
    if (e.type != LinkType::IILine && mid < 1) return false;

    // Hirzebruch slots: the ruling swap needs the quadric on both sides, a
    // crossing from a point base enters next to the exceptional section, and
    // a fiberwise move shifts the class by the orbit size.
    if (e.type == LinkType::IV) {
      if (a.hirzebruch > 0 || b.hirzebruch > 0) return false;
    }
    if (e.type == LinkType::I && e.to == VertexClass::C8 && b.hirzebruch >= 0 &&
        b.hirzebruch != 1)
      return false;
    if (e.type == LinkType::III && e.from == VertexClass::C8 && a.hirzebruch >= 0 &&
        a.hirzebruch != 1)
      return false;
    if (e.type == LinkType::IILine && e.from == VertexClass::C8 &&
        a.hirzebruch >= 0 && b.hirzebruch >= 0 &&
        (a.hirzebruch + e.d + b.hirzebruch) % 2 != 0)
      return false;
  }
  return true;
}

std::optional<PieceSymmetry> central_symmetry(const Piece& p) {
  if (p.over_line || p.center_degree > 2) return std::nullopt;
  int n = p.sides();
  if (n % 2 != 0)
    throw std::logic_error("central_symmetry: odd boundary on a small center");
  int h = n / 2;
  for (int i = 0; i < h; ++i) {
    if (!(p.corners[i] == p.corners[i + h]) || !(p.edges[i] == p.edges[i + h]))
      throw std::logic_error("central_symmetry: boundary of " + p.names[0] +
                             " is not antipodally symmetric");
  }
  return PieceSymmetry{h, p.center_degree == 2 ? SymmetryKind::Geiser
                                               : SymmetryKind::Bertini};
}

std::pair<LinkWord, LinkWord> boundary_relation(const Piece& p, int at, int to) {
  int n = p.sides();
  if (at < 0 || at >= n || to < 0 || to >= n)
    throw std::invalid_argument("boundary_relation: cut corners must lie on the boundary");
  auto arc = [&](int a, int b) {
    LinkWord w;
    w.start = p.corners[a].cls;
    for (int i = a; i != b; i = (i + 1) % n) w.edges.push_back(p.edges[i]);
    return w;
  };
  if (at == to) {
    LinkWord rest;
    rest.start = p.corners[at].cls;
    return {rest, p.boundary_word(at)};
  }
  return {arc(at, to), arc(to, at)};
}

Piece square_relation(VertexClass conic, int d1, int d2) {
  if (vertex_base(conic) != BaseKind::Line)
    throw std::invalid_argument("square_relation: corners must be conic bundles");
  if (d1 < 1 || d2 < 1)
    throw std::invalid_argument("square_relation: orbit sizes must be positive");
  Piece p;
  p.names = {"sq(" + vertex_name(conic) + "," + std::to_string(d1) + "," +
             std::to_string(d2) + ")"};
  p.center_degree = vertex_degree(conic) - d1 - d2;
  p.over_line = true;
  p.corners.assign(4, PieceCorner{conic, -1});
  for (int i = 0; i < 4; ++i) {
    int d = i % 2 == 0 ? d1 : d2;
    p.edges.push_back({LinkType::IILine, conic, conic, d, d});
  }
  return p;
}

}  // namespace cremona
