#pragma once

// Small helpers on top of GMP rationals: parsing, printing, residues mod p,
// and perfect-square tests. Everything downstream stores scalars as mpq_class
// and relies on these for canonical forms.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace cremona {

// Parse "3", "-3", "3/4", "-3/4". Rejects zero denominators.
inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational: " + s);
  }
  q.canonicalize();
  return q;
}

// "num" when the denominator is 1, otherwise "num/den".
inline std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_prime_small(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Canonical residue of q modulo p, as an integer in [0, p). The denominator
// must be invertible mod p (it is, whenever q came from F_p arithmetic).
inline mpz_class residue_mod(const mpq_class& q, long p) {
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = q.get_den() % p;
  if (den < 0) den += p;
  if (den == 0) throw std::domain_error("denominator vanishes mod p");
  if (den == 1) return num;
  mpz_class inv;
  mpz_class pz(p);
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0) {
    throw std::domain_error("denominator not invertible mod p");
  }
  return (num * inv) % pz;
}

// Exact square root of a rational if it is a perfect square.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(rn) / mpq_class(rd);
}

}  // namespace cremona
