#include "cremona/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace cremona {
namespace {

struct VertexInfo {
  VertexClass v;
  const char* name;
  int degree;
  BaseKind base;
};

constexpr VertexInfo kVertexTable[] = {
    {VertexClass::P2, "P2", 9, BaseKind::Point}, {VertexClass::D5, "D5", 5, BaseKind::Point},
    {VertexClass::D6, "D6", 6, BaseKind::Point}, {VertexClass::D8, "D8", 8, BaseKind::Point},
    {VertexClass::C5, "C5", 5, BaseKind::Line},  {VertexClass::C6, "C6", 6, BaseKind::Line},
    {VertexClass::C8, "C8", 8, BaseKind::Line},
};

const VertexInfo& info(VertexClass v) {
  for (const auto& row : kVertexTable)
    if (row.v == v) return row;
  throw std::logic_error("unknown vertex class");
}

// Both directions of a type II link between point-base classes; loops are
// their own inverse and get pushed once.
void pt_link(std::vector<EdgeFamily>& out, VertexClass a, int da, VertexClass b, int db) {
  out.push_back({LinkType::IIPoint, a, b, da, db});
  if (a != b) out.push_back({LinkType::IIPoint, b, a, db, da});
}

// A type I link and its type III inverse.
void crossing(std::vector<EdgeFamily>& out, VertexClass dp, int d, VertexClass cb) {
  out.push_back({LinkType::I, dp, cb, d, 0});
  out.push_back({LinkType::III, cb, dp, d, 0});
}

int parse_orbit(const std::string& s, bool allow_free) {
  if (allow_free && s == "d") return 0;
  if (s.empty() || s.size() > 4 || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad orbit size '" + s + "'");
  int d = std::stoi(s);
  if (d < 1) throw std::invalid_argument("orbit sizes are positive");
  return d;
}

std::string orbit_str(int d) { return d == 0 ? "d" : std::to_string(d); }

// Up by one to the middle, down by one from the middle, with one flat step
// in between when the number of edges is odd.
bool unimodal_profile(const std::vector<int>& dist) {
  int m = static_cast<int>(dist.size()) - 1;
  for (int i = 1; i <= m; ++i) {
    int step;
    if (2 * i <= m)
      step = 1;
    else if (2 * i == m + 1)
      step = 0;
    else
      step = -1;
    if (dist[i] != dist[i - 1] + step) return false;
  }
  return true;
}

bool is_prime_power(long long q) {
  if (q < 2) return false;
  long long p = q;
  for (long long f = 2; f * f <= q; ++f)
    if (q % f == 0) {
      p = f;
      break;
    }
  while (q % p == 0) q /= p;
  return q == 1;
}

long long closed_count(VertexClass v, long long q) {
  switch (v) {
    case VertexClass::P2: return q * q + q + 1;
    case VertexClass::D8:
    case VertexClass::D5: return q * q + 1;
    case VertexClass::D6: return q * q - q + 1;
    default: throw std::invalid_argument("point counting works along point-base words only");
  }
}

std::vector<VertexClass> vertex_sequence(const LinkWord& w) {
  std::vector<VertexClass> seq{w.start};
  for (const auto& e : w.edges) seq.push_back(e.to);
  return seq;
}

// The three closed fibering shapes. Every conic bundle II step keeps a free
// orbit size; only the entry and exit crossings are pinned.
LinkWord shape_word(PencilShape s, int ruled_steps) {
  using V = VertexClass;
  LinkWord w;
  switch (s) {
    case PencilShape::Lines:
      w.edges.push_back({LinkType::I, V::P2, V::C8, 1, 0});
      for (int i = 0; i < ruled_steps; ++i) w.edges.push_back({LinkType::IILine, V::C8, V::C8, 0, 0});
      w.edges.push_back({LinkType::III, V::C8, V::P2, 1, 0});
      break;
    case PencilShape::Quartet:
      w.edges.push_back({LinkType::I, V::P2, V::C5, 4, 0});
      w.edges.push_back({LinkType::IILine, V::C5, V::C5, 0, 0});
      w.edges.push_back({LinkType::III, V::C5, V::P2, 4, 0});
      break;
    case PencilShape::TwinPairs:
      w.edges.push_back({LinkType::IIPoint, V::P2, V::D8, 2, 1});
      w.edges.push_back({LinkType::I, V::D8, V::C6, 2, 0});
      w.edges.push_back({LinkType::IILine, V::C6, V::C6, 0, 0});
      w.edges.push_back({LinkType::III, V::C6, V::D8, 2, 0});
      w.edges.push_back({LinkType::IIPoint, V::D8, V::P2, 1, 2});
      break;
  }
  return w;
}

// Same word up to the value of free conic bundle parameters: a shape row
// with d == 0 matches any concrete size there.
bool matches_up_to_parameter(const LinkWord& w, const LinkWord& row) {
  if (w.start != row.start || w.edges.size() != row.edges.size()) return false;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    const LinkEdge &a = w.edges[i], &b = row.edges[i];
    if (a.type != b.type || a.from != b.from || a.to != b.to) return false;
    if (b.type == LinkType::IILine && b.d == 0) continue;
    if (a.d != b.d || a.dprime != b.dprime) return false;
  }
  return true;
}

std::optional<PencilShape> detect_shape(const LinkWord& w) {
  if (matches_up_to_parameter(w, shape_word(PencilShape::Quartet, 0))) return PencilShape::Quartet;
  if (matches_up_to_parameter(w, shape_word(PencilShape::TwinPairs, 0))) return PencilShape::TwinPairs;
  if (w.length() >= 3 && matches_up_to_parameter(w, shape_word(PencilShape::Lines, w.length() - 2)))
    return PencilShape::Lines;
  return std::nullopt;
}

}  // namespace

BaseKind vertex_base(VertexClass v) { return info(v).base; }
int vertex_degree(VertexClass v) { return info(v).degree; }
std::string vertex_name(VertexClass v) { return info(v).name; }

std::optional<VertexClass> vertex_from_name(std::string_view name) {
  for (const auto& row : kVertexTable)
    if (name == row.name) return row.v;
  return std::nullopt;
}

LinkWord word_reverse(const LinkWord& w) {
  LinkWord r;
  r.start = w.end();
  for (auto it = w.edges.rbegin(); it != w.edges.rend(); ++it) {
    LinkEdge e = *it;
    std::swap(e.from, e.to);
    switch (e.type) {
      case LinkType::IIPoint:
      case LinkType::IILine: std::swap(e.d, e.dprime); break;
      case LinkType::I: e.type = LinkType::III; break;
      case LinkType::III: e.type = LinkType::I; break;
      case LinkType::IV: break;
    }
    r.edges.push_back(e);
  }
  return r;
}

std::string word_to_string(const LinkWord& w) {
  std::string out = vertex_name(w.start);
  for (const auto& e : w.edges) {
    out += " -";
    switch (e.type) {
      case LinkType::I: out += "I" + orbit_str(e.d); break;
      case LinkType::III: out += "III" + orbit_str(e.d); break;
      case LinkType::IV: out += "IV"; break;
      default: out += orbit_str(e.d) + "," + orbit_str(e.dprime); break;
    }
    out += "-> " + vertex_name(e.to);
  }
  return out;
}

LinkWord parse_word(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  if (toks.empty() || toks.size() % 2 == 0)
    throw std::invalid_argument("a word alternates vertices and arrows, starting and ending on a vertex");
  auto vertex_at = [&](std::size_t i) {
    auto v = vertex_from_name(toks[i]);
    if (!v) throw std::invalid_argument("unknown vertex class '" + toks[i] + "'");
    return *v;
  };
  LinkWord w;
  w.start = vertex_at(0);
  VertexClass at = w.start;
  for (std::size_t i = 1; i < toks.size(); i += 2) {
    const std::string& a = toks[i];
    VertexClass to = vertex_at(i + 1);
    if (a.size() < 4 || a.front() != '-' || a.substr(a.size() - 2) != "->")
      throw std::invalid_argument("malformed arrow '" + a + "'");
    std::string body = a.substr(1, a.size() - 3);
    LinkEdge e;
    e.from = at;
    e.to = to;
    if (body == "IV") {
      e.type = LinkType::IV;
      if (!(at == VertexClass::C8 && to == VertexClass::C8))
        throw std::invalid_argument("IV is the change of ruling and stays on C8");
    } else if (body.rfind("III", 0) == 0 || (body.rfind("I", 0) == 0 && body.rfind("II", 0) != 0)) {
      bool third = body.rfind("III", 0) == 0;
      e.type = third ? LinkType::III : LinkType::I;
      e.d = parse_orbit(body.substr(third ? 3 : 1), false);
      BaseKind from_base = third ? BaseKind::Line : BaseKind::Point;
      if (vertex_base(at) != from_base || vertex_base(to) == from_base)
        throw std::invalid_argument(std::string(third ? "III" : "I") +
                                    " must cross from " + (third ? "line to point" : "point to line") + " base");
    } else {
      auto comma = body.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("malformed arrow '" + a + "'");
      if (vertex_base(at) != vertex_base(to))
        throw std::invalid_argument("a II step keeps the base kind");
      bool line = vertex_base(at) == BaseKind::Line;
      e.type = line ? LinkType::IILine : LinkType::IIPoint;
      e.d = parse_orbit(body.substr(0, comma), line);
      e.dprime = parse_orbit(body.substr(comma + 1), line);
      if (line && e.d != e.dprime)
        throw std::invalid_argument("orbit sizes agree on a conic bundle II step");
    }
    w.edges.push_back(e);
    at = to;
  }
  return w;
}

bool LinkGraph::has_vertex(VertexClass v) const {
  return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

std::optional<EdgeFamily> LinkGraph::find_family(LinkType type, VertexClass from, int d) const {
  for (const auto& f : families) {
    if (f.type != type || f.from != from) continue;
    if (f.type != LinkType::IV) {
      if (f.d == 0) {
        if (d < 0) continue;  // 0 passes: a free parameter matches itself
      } else if (f.d != d) {
        continue;
      }
      if (max_orbit && d > *max_orbit) continue;
    }
    return f;
  }
  return std::nullopt;
}

LinkGraph standard_graph(GraphMode mode) {
  using V = VertexClass;
  LinkGraph g;
  g.mode = mode;
  auto& fam = g.families;
  if (mode == GraphMode::General) {
    g.vertices = {V::P2, V::D5, V::D6, V::D8, V::C5, V::C6, V::C8};
    pt_link(fam, V::P2, 2, V::D8, 1);
    pt_link(fam, V::P2, 5, V::D5, 1);
    pt_link(fam, V::D8, 3, V::D6, 1);
    pt_link(fam, V::D8, 5, V::D5, 2);
    for (int d : {3, 6, 7, 8}) pt_link(fam, V::P2, d, V::P2, d);
    for (int d : {4, 6, 7}) pt_link(fam, V::D8, d, V::D8, d);
    for (int d : {2, 3, 4, 5}) pt_link(fam, V::D6, d, V::D6, d);
    for (int d : {3, 4}) pt_link(fam, V::D5, d, V::D5, d);
    crossing(fam, V::P2, 1, V::C8);
    crossing(fam, V::P2, 4, V::C5);
    crossing(fam, V::D8, 2, V::C6);
    // Every II loop over the line carries a free orbit size: blowing up an
    // orbit with at most one point per fiber and contracting the old fibers
    // is a single link whatever the orbit size.
    fam.push_back({LinkType::IILine, V::C8, V::C8, 0, 0});
    fam.push_back({LinkType::IILine, V::C5, V::C5, 0, 0});
    fam.push_back({LinkType::IILine, V::C6, V::C6, 0, 0});
    fam.push_back({LinkType::IV, V::C8, V::C8, 0, 0});
  } else {
    // Galois orbits have size 1 or 2, so every family with a larger orbit
    // disappears and with it the vertices D5, D6, C5.
    g.vertices = {V::P2, V::D8, V::C6, V::C8};
    g.max_orbit = 2;
    pt_link(fam, V::P2, 2, V::D8, 1);
    crossing(fam, V::P2, 1, V::C8);
    crossing(fam, V::D8, 2, V::C6);
    fam.push_back({LinkType::IILine, V::C8, V::C8, 0, 0});
    fam.push_back({LinkType::IILine, V::C6, V::C6, 0, 0});
    fam.push_back({LinkType::IV, V::C8, V::C8, 0, 0});
  }
  return g;
}

std::map<VertexClass, int> graph_distances(const LinkGraph& g, VertexClass root) {
  std::map<VertexClass, int> dist;
  if (!g.has_vertex(root)) return dist;
  dist[root] = 0;
  std::deque<VertexClass> queue{root};
  while (!queue.empty()) {
    VertexClass v = queue.front();
    queue.pop_front();
    for (const auto& f : g.families) {
      VertexClass next;
      if (f.from == v)
        next = f.to;
      else if (f.to == v)
        next = f.from;
      else
        continue;
      if (!dist.count(next)) {
        dist[next] = dist[v] + 1;
        queue.push_back(next);
      }
    }
  }
  return dist;
}

bool validate_word(const LinkGraph& g, const LinkWord& w) {
  if (!g.has_vertex(w.start)) return false;
  VertexClass at = w.start;
  for (const auto& e : w.edges) {
    if (e.from != at) return false;
    auto f = g.find_family(e.type, e.from, e.d);
    if (!f || f->to != e.to) return false;
    switch (e.type) {
      case LinkType::IIPoint:
        if (e.dprime != f->dprime) return false;
        break;
      case LinkType::IILine:
        if (e.dprime != e.d) return false;
        break;
      default:
        if (e.dprime != 0) return false;
        if (e.type == LinkType::IV && e.d != 0) return false;
    }
    at = e.to;
  }
  return true;
}

bool WordReport::minimal_irreducible_candidate() const {
  if (has_type_iv || iii_after_i || revisits_start) return false;
  if (shape == PencilShape::Lines) return true;
  return unimodal;
}

WordReport classify_word(const LinkGraph& g, const LinkWord& w) {
  if (!validate_word(g, w)) throw std::invalid_argument("word does not validate against the graph");
  if (!w.closed()) throw std::invalid_argument("classification needs a closed word");
  WordReport r;
  r.length = w.length();
  auto seq = vertex_sequence(w);
  for (VertexClass v : seq)
    if (vertex_base(v) == BaseKind::Line) r.kind = WordKind::Fibering;
  for (std::size_t i = 0; i < w.edges.size(); ++i) {
    if (w.edges[i].type == LinkType::IV) r.has_type_iv = true;
    if (i > 0 && w.edges[i].type == LinkType::III && w.edges[i - 1].type == LinkType::I)
      r.iii_after_i = true;
  }
  for (std::size_t i = 1; i + 1 < seq.size(); ++i)
    if (seq[i] == w.start) r.revisits_start = true;
  auto dist = graph_distances(g, w.start);
  std::vector<int> profile;
  profile.reserve(seq.size());
  for (VertexClass v : seq) profile.push_back(dist.at(v));
  r.unimodal = unimodal_profile(profile);
  if (r.kind == WordKind::Fibering && w.start == VertexClass::P2) {
    r.shape = detect_shape(w);
    if (r.shape == PencilShape::Lines) r.ruled_steps = r.length - 2;
    if (r.shape) r.catalog_row = word_to_string(shape_word(*r.shape, r.ruled_steps));
  } else if (r.kind == WordKind::DelPezzo && w.start == VertexClass::P2 && r.length <= 5) {
    for (const auto& row : enumerate_irreducible_types(g, r.length).del_pezzo)
      if (row == w) r.catalog_row = word_to_string(row);
  }
  return r;
}

IrreducibleCatalog enumerate_irreducible_types(const LinkGraph& g, int max_sl) {
  if (max_sl < 0 || max_sl > 8) throw std::invalid_argument("enumeration bound must lie in 0..8");
  IrreducibleCatalog out;
  if (!g.has_vertex(VertexClass::P2)) return out;
  auto dist = graph_distances(g, VertexClass::P2);
  LinkWord cur;
  cur.start = VertexClass::P2;

  auto record = [&] {
    auto seq = vertex_sequence(cur);
    bool fibering = false, lines = false;
    for (VertexClass v : seq) {
      if (vertex_base(v) == BaseKind::Line) fibering = true;
      if (v == VertexClass::C8) lines = true;
    }
    if (!lines) {
      std::vector<int> profile;
      for (VertexClass v : seq) profile.push_back(dist.at(v));
      if (!unimodal_profile(profile)) return;
    }
    (fibering ? out.fibering : out.del_pezzo).push_back(cur);
  };

  std::function<void(VertexClass)> grow = [&](VertexClass at) {
    if (cur.length() >= max_sl) return;
    for (const auto& f : g.families) {
      if (f.from != at || f.type == LinkType::IV) continue;
      if (f.type == LinkType::III && !cur.edges.empty() && cur.edges.back().type == LinkType::I)
        continue;
      LinkEdge e{f.type, f.from, f.to, f.d, 0};
      if (f.type == LinkType::IIPoint) e.dprime = f.dprime;
      if (f.type == LinkType::IILine) e.dprime = f.d;
      cur.edges.push_back(e);
      if (f.to == VertexClass::P2)
        record();
      else
        grow(f.to);
      cur.edges.pop_back();
    }
  };
  grow(VertexClass::P2);

  auto order = [](const LinkWord& a, const LinkWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return word_to_string(a) < word_to_string(b);
  };
  std::sort(out.del_pezzo.begin(), out.del_pezzo.end(), order);
  std::sort(out.fibering.begin(), out.fibering.end(), order);
  return out;
}

std::vector<long long> point_count_along(const LinkGraph& g, const LinkWord& w, long long q) {
  if (!is_prime_power(q) || q > 1000000000LL)
    throw std::invalid_argument("q must be a prime power at most 10^9");
  if (!validate_word(g, w)) throw std::invalid_argument("word does not validate against the graph");
  for (const auto& e : w.edges)
    if (e.type != LinkType::IIPoint)
      throw std::invalid_argument("point counting works along point-base words only");
  long long c = closed_count(w.start, q);
  std::vector<long long> out{c};
  for (const auto& e : w.edges) {
    if (e.d == 1) c += q;
    if (e.dprime == 1) c -= q;
    out.push_back(c);
    if (c != closed_count(e.to, q))
      throw std::logic_error("running point count disagrees with the closed form");
  }
  return out;
}

}  // namespace cremona
