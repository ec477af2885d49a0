#include "cremona/quadform.hpp"

#include <functional>

namespace cremona {
namespace {

// Walk all tuples over the field of the given length, calling fn with each.
// Returns false if the count would exceed the cap.
bool for_each_tuple(const FieldPtr& K, std::size_t len, std::uint64_t cap,
                    const std::function<bool(const std::vector<FElem>&)>& fn) {
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < len; ++i) {
    total *= static_cast<unsigned __int128>(K->order());
    if (total > cap) return false;
  }
  std::vector<unsigned long> idx(len, 0);
  std::vector<FElem> v(len, K->zero());
  const unsigned long q = static_cast<unsigned long>(K->order());
  while (true) {
    for (std::size_t i = 0; i < len; ++i) v[i] = K->nth(idx[i]);
    if (!fn(v)) return true;  // fn asked to stop early
    std::size_t pos = 0;
    while (pos < len && ++idx[pos] == q) idx[pos++] = 0;
    if (pos == len) return true;
  }
}

}  // namespace

namespace detail {

bool span_has_isotropic(const QuadSpace<FElem>& sp, const std::vector<std::vector<FElem>>& basis) {
  const FieldPtr& K = sp.upper().at(0, 0).field();
  bool found = false;
  bool complete = for_each_tuple(K, basis.size(), 1u << 20, [&](const std::vector<FElem>& coeffs) {
    std::vector<FElem> v(sp.dim(), K->zero());
    bool nonzero = false;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (!coeffs[b].is_zero()) nonzero = true;
      for (std::size_t i = 0; i < sp.dim(); ++i) v[i] = v[i] + coeffs[b] * basis[b][i];
    }
    if (nonzero && sp.eval(v).is_zero()) {
      found = true;
      return false;
    }
    return true;
  });
  if (!complete) throw FieldError("radical too large for exhaustive isotropy check");
  return found;
}

}  // namespace detail

IsotropyCertificate<FElem> isotropy_search(const QuadSpace<FElem>& sp, const SearchBudget& budget) {
  const FieldPtr& K = sp.upper().at(0, 0).field();
  IsotropyCertificate<FElem> cert;
  if (K->finite()) {
    bool complete = for_each_tuple(K, sp.dim(), budget.max_vectors, [&](const std::vector<FElem>& v) {
      bool nonzero = false;
      for (const auto& x : v)
        if (!x.is_zero()) nonzero = true;
      if (nonzero && sp.eval(v).is_zero()) {
        cert.status = IsotropyStatus::IsotropicWitness;
        cert.witness = v;
        return false;
      }
      return true;
    });
    if (cert.status == IsotropyStatus::IsotropicWitness) return cert;
    cert.status = complete ? IsotropyStatus::AnisotropicProved : IsotropyStatus::Unknown;
    return cert;
  }

  // Characteristic zero: search integer coordinate vectors up to the height
  // bound. Finding nothing proves nothing, so the fallback is Unknown.
  if (K->dim() != 1) {
    cert.status = IsotropyStatus::Unknown;
    return cert;
  }

  // A definite form over the rationals is anisotropic; Sylvester's minor
  // criterion decides definiteness exactly.
  {
    const std::size_t n = sp.dim();
    bool pos = true, neg = true;
    for (std::size_t k = 1; k <= n && (pos || neg); ++k) {
      Mat<FElem> minor(k, k, K->zero());
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor.at(i, j) = sp.gram().at(i, j);
      int s = sgn(minor.det().base_value());
      if (s <= 0) pos = false;
      if ((k % 2 == 1 && s >= 0) || (k % 2 == 0 && s <= 0)) neg = false;
    }
    if (pos || neg) {
      cert.status = IsotropyStatus::AnisotropicProved;
      return cert;
    }
  }

  const long B = budget.height_bound;
  const std::size_t n = sp.dim();
  std::vector<long> c(n, -B);
  std::uint64_t seen = 0;
  while (true) {
    bool nonzero = false;
    for (long x : c)
      if (x != 0) nonzero = true;
    if (nonzero) {
      if (++seen > budget.max_vectors) {
        cert.status = IsotropyStatus::Unknown;
        return cert;
      }
      std::vector<FElem> v;
      v.reserve(n);
      for (long x : c) v.push_back(K->from_int(x));
      if (sp.eval(v).is_zero()) {
        cert.status = IsotropyStatus::IsotropicWitness;
        cert.witness = std::move(v);
        return cert;
      }
    }
    std::size_t pos = 0;
    while (pos < n && ++c[pos] > B) c[pos++] = -B;
    if (pos == n) break;
  }
  cert.status = IsotropyStatus::Unknown;
  return cert;
}

}  // namespace cremona
