#include "cremona/reducer.hpp"

#include <algorithm>
#include <stdexcept>

namespace cremona {
namespace {

using Output = std::vector<std::variant<Token, LinkWord>>;

Token plain(TokenKind k, const std::string& rule) { return Token{k, rule, 0, 0}; }

// A quadratic map splits as an involution and the plane automorphism that
// realigns the three base points.
void add_quadratic(Output& out, const std::string& rule) {
  out.push_back(plain(TokenKind::QuadraticInvolution, rule));
  out.push_back(plain(TokenKind::AutomorphismResidual, rule));
}

// The descent through the quadric and the sextic with two rational points:
// three quadratic maps in a row.
void add_double_descent(Output& out, const std::string& rule) {
  add_quadratic(out, rule);
  add_quadratic(out, rule);
  add_quadratic(out, rule);
}

Token central_token(const Piece& p, const std::string& rule) {
  auto s = central_symmetry(p);
  if (!s) throw std::logic_error("rewrite expected a centrally symmetric piece");
  TokenKind k = s->kind == SymmetryKind::Geiser ? TokenKind::Geiser : TokenKind::Bertini;
  return Token{k, rule, p.center_degree, 3};
}

LinkEdge edge_reverse(const LinkEdge& e) {
  LinkWord w;
  w.start = e.from;
  w.edges.push_back(e);
  return word_reverse(w).edges[0];
}

bool on_boundary(const Piece& p, const LinkEdge& e) {
  LinkEdge r = edge_reverse(e);
  for (const LinkEdge& b : p.edges)
    if (b == e || b == r) return true;
  return false;
}

// The ten shapes that split off a single involution: the two quadratic
// words, and the words carrying one loop whose midpoint is a del Pezzo
// surface of degree 2 (Geiser) or 1 (Bertini). Remainders are the words
// left after the involution; all of them resolve further down the table.
struct EasyRule {
  const char* rule;
  const char* shape;
  const char* remainder;  // null when the leftover is an automorphism
  int midpoint;           // 0 marks the quadratic rules
};

const EasyRule kEasy[] = {
    {"Q1", "P2 -3,3-> P2", nullptr, 0},
    {"Q2", "P2 -2,1-> D8 -1,2-> P2", nullptr, 0},
    {"G1", "P2 -7,7-> P2", nullptr, 2},
    {"G2", "P2 -2,1-> D8 -6,6-> D8 -1,2-> P2", "P2 -2,1-> D8 -1,2-> P2", 2},
    {"G3", "P2 -5,1-> D5 -3,3-> D5 -1,5-> P2", "P2 -5,1-> D5 -1,5-> P2", 2},
    {"G4", "P2 -2,1-> D8 -3,1-> D6 -4,4-> D6 -1,3-> D8 -1,2-> P2",
     "P2 -2,1-> D8 -3,1-> D6 -1,3-> D8 -1,2-> P2", 2},
    {"B1", "P2 -8,8-> P2", nullptr, 1},
    {"B2", "P2 -2,1-> D8 -7,7-> D8 -1,2-> P2", "P2 -2,1-> D8 -1,2-> P2", 1},
    {"B3", "P2 -5,1-> D5 -4,4-> D5 -1,5-> P2", "P2 -5,1-> D5 -1,5-> P2", 1},
    {"B4", "P2 -2,1-> D8 -3,1-> D6 -5,5-> D6 -1,3-> D8 -1,2-> P2",
     "P2 -2,1-> D8 -3,1-> D6 -1,3-> D8 -1,2-> P2", 1},
};

// The seven shapes resolved through pieces. The anchor is the edge of the
// shape word that lies on the designated piece's boundary; it is the part
// of the word the piece was built around.
struct CaseRule {
  const char* rule;
  const char* shape;
  const char* piece;  // canonical name
  int anchor;
};

const CaseRule kCases[] = {
    {"case-i", "P2 -5,1-> D5 -1,5-> P2", "D5_11", 0},
    {"case-ii", "P2 -2,1-> D8 -3,1-> D6 -1,3-> D8 -1,2-> P2", "D6_11", 0},
    {"case-iii", "P2 -2,1-> D8 -4,4-> D8 -1,2-> P2", "D8_14", 1},
    {"case-iv", "P2 -2,1-> D8 -3,1-> D6 -3,3-> D6 -1,3-> D8 -1,2-> P2", "D6_13", 2},
    {"case-v", "P2 -2,1-> D8 -3,1-> D6 -2,2-> D6 -1,3-> D8 -1,2-> P2", "D6_12", 2},
    {"case-vi", "P2 -5,1-> D5 -2,5-> D8 -1,2-> P2", "D5_12", 1},
    {"case-vii", "P2 -6,6-> P2", "P2_16", 0},
};

// General position hypotheses, shared across rules.
const char* kGen56 =
    "any two rational points on a del Pezzo surface of degree 5 or 6 are general";
const char* kGen84 =
    "any rational point on the degree 8 quadric is general with a general 4-orbit";
const char* kGen63 =
    "over a field with at least three elements, the degree 6 surface has a rational "
    "point general with a general 3-orbit";
const char* kGen62 =
    "any rational point on the degree 6 surface is general with a general 2-orbit";
const char* kGen52 =
    "any rational point on the degree 5 surface is general with a general 2-orbit";
const char* kGen96 =
    "all but finitely many rational points of the plane are general with a general "
    "6-orbit, and all but at most one over a finite field";

const LinkWord& parsed(const char* text) {
  static std::map<const char*, LinkWord> cache;
  auto it = cache.find(text);
  if (it == cache.end()) it = cache.emplace(text, parse_word(text)).first;
  return it->second;
}

void require_closed_valid(const LinkWord& w) {
  if (!w.closed()) throw std::invalid_argument("reducer: word must be closed");
  if (!validate_word(standard_graph(), w))
    throw std::invalid_argument("reducer: word is not a path in the link graph");
}

// Forward or reversed match of w against a shape; nullopt when neither.
std::optional<bool> match_shape(const LinkWord& w, const char* shape) {
  const LinkWord& s = parsed(shape);
  if (w == s) return false;
  if (word_reverse(w) == s) return true;
  return std::nullopt;
}

RewriteStep fibering_step(const LinkWord& w, PencilShape shape) {
  RewriteStep st;
  st.input = w;
  switch (shape) {
    case PencilShape::Lines:
      st.rule = "fibering-lines";
      st.output.push_back(plain(TokenKind::Jonquieres1, st.rule));
      st.note = "self-map over the pencil of lines through the blown-up rational point";
      break;
    case PencilShape::Quartet:
      st.rule = "fibering-quartet";
      st.output.push_back(plain(TokenKind::Jonquieres4, st.rule));
      st.note = "self-map over the conics through the 4-orbit";
      break;
    case PencilShape::TwinPairs:
      st.rule = "fibering-twin-pairs";
      add_quadratic(st.output, st.rule);
      st.output.push_back(plain(TokenKind::Jonquieres22, st.rule));
      add_quadratic(st.output, st.rule);
      st.note =
          "self-map over the conics through the two 2-orbits; quadratic patches "
          "align the entry and exit through the quadric";
      break;
  }
  return st;
}

}  // namespace

std::string token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::LinearInvolutionProduct: return "linear-involution-product";
    case TokenKind::QuadraticInvolution: return "quadratic-involution";
    case TokenKind::Geiser: return "geiser";
    case TokenKind::Bertini: return "bertini";
    case TokenKind::Jonquieres1: return "jonquieres-1";
    case TokenKind::Jonquieres22: return "jonquieres-2+2";
    case TokenKind::Jonquieres4: return "jonquieres-4";
    case TokenKind::AutomorphismResidual: return "automorphism-residual";
    case TokenKind::AlreadyInvolution: return "already-involution";
  }
  return "?";
}

std::optional<RewriteStep> simplify_once(const LinkWord& w) {
  if (w.length() == 0) return std::nullopt;
  require_closed_valid(w);
  for (const EasyRule& r : kEasy) {
    if (!match_shape(w, r.shape)) continue;
    RewriteStep st;
    st.rule = r.rule;
    st.input = w;
    if (r.midpoint == 0) {
      add_quadratic(st.output, st.rule);
      st.note = "the base points of the map and of its inverse agree up to a plane "
                "automorphism";
    } else {
      TokenKind k = r.midpoint == 2 ? TokenKind::Geiser : TokenKind::Bertini;
      st.output.push_back(Token{k, st.rule, r.midpoint, 2});
      if (r.remainder) {
        st.output.push_back(parsed(r.remainder));
        st.note = "the central involution of the loop midpoint absorbs the loop";
      } else {
        st.output.push_back(plain(TokenKind::AutomorphismResidual, st.rule));
        st.note = "the loop is the involution itself, up to a plane automorphism";
      }
    }
    return st;
  }
  return std::nullopt;
}

RewriteStep rewrite_via_piece(const LinkWord& w, const Piece& p, int pos) {
  require_closed_valid(w);
  if (pos < 0 || pos >= w.length())
    throw std::invalid_argument("rewrite_via_piece: position outside the word");
  if (!on_boundary(p, w.edges[pos]))
    throw std::invalid_argument("rewrite_via_piece: subword does not lie on the piece boundary");

  for (const CaseRule& c : kCases) {
    auto rev = match_shape(w, c.shape);
    if (!rev) continue;
    if (p.names.empty() || p.names[0] != c.piece)
      throw std::invalid_argument(std::string("rewrite_via_piece: ") + c.rule +
                                  " resolves through piece " + c.piece + ", not " +
                                  (p.names.empty() ? "?" : p.names[0]));
    RewriteStep st;
    st.rule = c.rule;
    st.input = w;
    const std::string& rule = st.rule;
    if (rule == "case-i") {
      st.output.push_back(plain(TokenKind::Jonquieres1, rule));
      st.output.push_back(plain(TokenKind::Jonquieres1, rule));
      st.output.push_back(plain(TokenKind::AutomorphismResidual, rule));
      st.assumptions = {kGen56};
      st.note = "glues the heptagon to the pentagon along the ruling swap of the "
                "quadric; road not taken: two rank 3 Geiser involutions around a "
                "quadratic map, under a general 2-orbit";
    } else if (rule == "case-ii") {
      add_double_descent(st.output, rule);
      st.assumptions = {kGen56};
      st.note = "the hexagon turns the middle into one quadratic map between two "
                "others";
    } else if (rule == "case-iii") {
      add_quadratic(st.output, rule);
      st.output.push_back(plain(TokenKind::Jonquieres4, rule));
      add_quadratic(st.output, rule);
      st.assumptions = {kGen84};
      st.note = "the opposite plane corners of the hexagon carry a fibering map "
                "over the conics through the 4-orbit; roads not taken: Geiser with "
                "a twin-pair fibering map, or Bertini followed by the degree 2 "
                "loop simplification";
    } else if (rule == "case-iv") {
      add_double_descent(st.output, rule);
      st.output.push_back(central_token(p, rule));
      add_double_descent(st.output, rule);
      st.assumptions = {kGen63, kGen56};
      st.note = "central symmetry of the degree 2 center, with one double descent "
                "on each side; road not taken: Bertini through the orbit-2 loop "
                "form, under a general 2-orbit";
    } else if (rule == "case-v") {
      add_double_descent(st.output, rule);
      st.output.push_back(plain(TokenKind::Jonquieres22, rule));
      add_double_descent(st.output, rule);
      st.assumptions = {kGen62, kGen56};
      st.note = "opposite plane corners carry a fibering map over the conics "
                "through the two 2-orbits; road not taken: Bertini through the "
                "degree 1 center, then the orbit-3 loop form";
    } else if (rule == "case-vi") {
      st.output.push_back(plain(TokenKind::Jonquieres1, rule));
      st.output.push_back(plain(TokenKind::Jonquieres1, rule));
      st.output.push_back(plain(TokenKind::AutomorphismResidual, rule));
      st.output.push_back(central_token(p, rule));
      add_quadratic(st.output, rule);
      st.assumptions = {kGen52, kGen56};
      st.note = "central symmetry of the hexagon; a crossing pair patches the "
                "plane end and a quadratic patches the quadric end";
    } else {  // case-vii
      st.output.push_back(central_token(p, rule));
      st.output.push_back(plain(TokenKind::Jonquieres1, rule));
      st.output.push_back(plain(TokenKind::AutomorphismResidual, rule));
      st.assumptions = {kGen96};
      st.note = "central symmetry of the octagon against a line pencil map; road "
                "not taken: Bertini then the degree 8 loop simplification, under "
                "a general 2-orbit";
    }
    if (*rev) st.note += "; matched in the reversed orientation";
    return st;
  }
  throw std::invalid_argument("rewrite_via_piece: no rewrite known for this word");
}

ReduceResult reduce_to_involutions(const LinkWord& w, const ReduceOptions& opts) {
  LinkGraph g = standard_graph();
  if (w.length() > 0) {
    require_closed_valid(w);
    if (w.start != VertexClass::P2)
      throw std::invalid_argument("reducer: word must be based at P2");
  }

  ReduceResult res;
  Output seq;
  if (w.length() > 0) seq.push_back(w);

  for (;;) {
    auto it = std::find_if(seq.begin(), seq.end(), [](const auto& v) {
      return std::holds_alternative<LinkWord>(v);
    });
    if (it == seq.end()) break;
    LinkWord u = std::get<LinkWord>(*it);
    if (u.length() == 0) {
      seq.erase(it);
      continue;
    }
    if (static_cast<int>(res.steps.size()) >= opts.max_steps) {
      res.error = "step budget exhausted";
      return res;
    }

    std::optional<RewriteStep> step = simplify_once(u);
    if (!step) {
      WordReport rep = classify_word(g, u);
      if (rep.kind == WordKind::Fibering && rep.shape) {
        step = fibering_step(u, *rep.shape);
      } else {
        for (const CaseRule& c : kCases) {
          auto rev = match_shape(u, c.shape);
          if (!rev) continue;
          if (c.rule == std::string("case-iv") && opts.field_f2) {
            RewriteStep st;
            st.rule = "case-iv-f2";
            st.input = u;
            st.output.push_back(plain(TokenKind::AlreadyInvolution, st.rule));
            st.note = "over the field with two elements no rational point is "
                      "general with the 3-orbit, and this factorization type is "
                      "itself an involution";
            step = std::move(st);
            break;
          }
          const Piece* p = find_piece(c.piece);
          int anchor = *rev ? u.length() - 1 - c.anchor : c.anchor;
          step = rewrite_via_piece(u, *p, anchor);
          break;
        }
      }
    }
    if (!step) {
      res.error = "no rule matches the factorization type " + word_to_string(u);
      return res;
    }

    auto at = it - seq.begin();
    seq.erase(seq.begin() + at);
    seq.insert(seq.begin() + at, step->output.begin(), step->output.end());
    res.steps.push_back(std::move(*step));
  }

  for (const auto& v : seq) res.tokens.push_back(std::get<Token>(v));
  for (const auto& s : res.steps)
    for (const auto& a : s.assumptions)
      if (std::find(res.assumptions.begin(), res.assumptions.end(), a) ==
          res.assumptions.end())
        res.assumptions.push_back(a);

  if (opts.expand_automorphisms) {
    bool any = false;
    for (Token& t : res.tokens) {
      if (t.kind != TokenKind::AutomorphismResidual) continue;
      t.kind = TokenKind::LinearInvolutionProduct;
      t.rule = "automorphism-expansion";
      any = true;
    }
    if (any)
      res.assumptions.push_back(
          "plane automorphisms are involution generated inside the birational "
          "group, dilatations splitting as two involutions");
  }

  res.ok = true;
  return res;
}

}  // namespace cremona
