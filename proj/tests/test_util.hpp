#pragma once

// Shared randomized-input helpers for the test binaries. Every suite seeds
// its own mt19937 so failures reproduce.

#include <random>
#include <vector>

#include "cremona/field.hpp"

namespace testutil {

inline cremona::FElem random_element(const cremona::FieldPtr& F, std::mt19937& rng) {
  std::vector<mpq_class> c(F->dim());
  if (F->characteristic() > 0) {
    std::uniform_int_distribution<long> d(0, F->characteristic() - 1);
    for (auto& q : c) q = d(rng);
  } else {
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    for (auto& q : c) q = mpq_class(num(rng), den(rng));
  }
  return F->element(std::move(c));
}

inline cremona::FElem random_nonzero(const cremona::FieldPtr& F, std::mt19937& rng) {
  for (;;) {
    auto x = random_element(F, rng);
    if (!x.is_zero()) return x;
  }
}

}  // namespace testutil
