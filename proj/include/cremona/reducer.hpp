#pragma once

// Rewriting closed factorization-type words at P2 into certified involution
// tokens. The easy shapes (a single big loop, or a loop framed by the
// standard descent to P2) split off one quadratic, Geiser or Bertini
// involution directly; the seven residual del Pezzo shapes are resolved
// through the piece catalog, whose small centers carry the involutions; the
// three fibering shapes route to the Jonquieres groups, which are involution
// generated by the fibration and quadratic form machinery. Every step
// records which general position hypothesis it leans on. The engine works
// on factorization types only: no coordinates, no existence claims.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cremona/graph.hpp"
#include "cremona/pieces.hpp"

namespace cremona {

// Factors certified to be involutions, or generated by involutions, by a
// known recipe. automorphism-residual is a plane automorphism left behind
// by a rewrite; it is involution generated inside the birational group (not
// inside the linear group, which may lack involutions enough), and can be
// expanded to a linear-involution-product token on request.
// already-involution marks the one shape over the field with two elements
// that is an involution as it stands.
enum class TokenKind {
  LinearInvolutionProduct,
  QuadraticInvolution,
  Geiser,
  Bertini,
  Jonquieres1,
  Jonquieres22,
  Jonquieres4,
  AutomorphismResidual,
  AlreadyInvolution,
};

std::string token_kind_name(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::AutomorphismResidual;
  std::string rule;       // the rewrite rule that emitted this factor
  int center_degree = 0;  // geiser/bertini: degree of the carrying surface
  int picard_rank = 0;    // geiser/bertini: 2 for link midpoints, 3 for piece centers
};

// One rewrite. Output lists tokens and residual words in application order:
// output[0] acts first. Either the output carries no words at all, or the
// words are strictly shorter in total than the input.
struct RewriteStep {
  std::string rule;
  LinkWord input;
  std::vector<std::variant<Token, LinkWord>> output;
  std::vector<std::string> assumptions;  // general position hypotheses used
  std::string note;                      // other remarks (alternative routes, reversal)
};

// Match against the ten one-involution shapes: the quadratic words, and the
// loop words whose midpoint is a degree 2 or 1 del Pezzo. Returns the split
// f = (rest) after (involution), or nothing when no easy shape fits.
// Throws std::invalid_argument on open or ill-formed words.
std::optional<RewriteStep> simplify_once(const LinkWord& w);

// Resolve one of the seven residual shapes through its piece: the word (or
// its reverse) must match a shape whose designated piece is p, and the edge
// at position pos must lie on the boundary of p. Emits the full token
// factorization of that case. Throws std::invalid_argument otherwise.
RewriteStep rewrite_via_piece(const LinkWord& w, const Piece& p, int pos);

struct ReduceOptions {
  bool field_f2 = false;  // the degree 6 orbit-3 loop is already an involution here
  bool expand_automorphisms = false;  // turn residuals into linear products
  int max_steps = 64;
};

struct ReduceResult {
  bool ok = false;
  std::vector<Token> tokens;  // application order
  std::vector<RewriteStep> steps;
  std::vector<std::string> assumptions;  // union over steps, first use order
  std::string error;  // set when ok is false; steps then hold the partial trace
};

// Drive a closed valid word based at P2 down to tokens. Fails with a
// partial trace when no rule matches or the step budget runs out. Throws
// std::invalid_argument on invalid input words.
ReduceResult reduce_to_involutions(const LinkWord& w, const ReduceOptions& opts = {});

}  // namespace cremona
