#include "mlat/classify.hpp"

namespace mlat {

PrincipalFlags principal_profile(const Lattice& L, Element x) {
  const std::size_t n = L.size();
  PrincipalFlags f{true, true};
  for (Element a = 0; a < n && f.meet_principal; ++a) {
    const Element ax = L.residual(a, x);
    for (Element b = 0; b < n; ++b) {
      if (L.meet(a, L.mul(b, x)) != L.mul(L.meet(ax, b), x)) {
        f.meet_principal = false;
        break;
      }
    }
  }
  for (Element a = 0; a < n && f.join_principal; ++a) {
    const Element axm = L.mul(a, x);
    for (Element b = 0; b < n; ++b) {
      if (L.join(a, L.residual(b, x)) != L.residual(L.join(axm, b), x)) {
        f.join_principal = false;
        break;
      }
    }
  }
  return f;
}

bool is_principal(const Lattice& L, Element x) {
  return principal_profile(L, x).principal();
}

std::vector<Element> principal_elements(const Lattice& L) {
  std::vector<Element> out;
  for (Element x = 0; x < L.size(); ++x) {
    if (is_principal(L, x)) out.push_back(x);
  }
  return out;
}

bool is_prime(const Lattice& L, Element p) {
  if (p == L.top()) return false;
  for (Element a = 0; a < L.size(); ++a) {
    if (L.leq(a, p)) continue;
    for (Element b = 0; b < L.size(); ++b) {
      if (!L.leq(b, p) && L.leq(L.mul(a, b), p)) return false;
    }
  }
  return true;
}

Spectrum classify_spectrum(const Lattice& L) {
  Spectrum s;
  const std::size_t n = L.size();
  for (Element p = 0; p < n; ++p) {
    if (is_prime(L, p)) s.primes.push_back(p);
    if (p == L.top()) continue;
    bool maximal = true;
    for (Element q = 0; q < n && maximal; ++q) {
      if (q != L.top() && L.lt(p, q)) maximal = false;
    }
    if (maximal) s.maximals.push_back(p);
  }
  s.maximal_above.assign(n, std::nullopt);
  for (Element a = 0; a < n; ++a) {
    if (a == L.top()) continue;
    for (Element m : s.maximals) {
      if (L.leq(a, m)) {
        s.maximal_above[a] = m;
        break;
      }
    }
  }
  return s;
}

bool is_regular(const Lattice& L, Element x) {
  if (!is_principal(L, x)) {
    throw PredicateUndefined("regularity is defined for principal elements; " +
                             L.label(x) + " is not principal");
  }
  return L.residual(L.bottom(), x) == L.bottom();
}

CancellationResult is_cancellation(const Lattice& L, Element q) {
  for (Element a = 0; a < L.size(); ++a) {
    for (Element b = 0; b < L.size(); ++b) {
      if (a != b && L.mul(q, a) == L.mul(q, b)) {
        return {false, std::pair{a, b}};
      }
    }
  }
  return {true, std::nullopt};
}

std::vector<ElementProfile> profile_all(const Lattice& L) {
  const Spectrum spec = classify_spectrum(L);
  std::vector<bool> maximal(L.size(), false);
  for (Element m : spec.maximals) maximal[m] = true;

  std::vector<ElementProfile> out;
  out.reserve(L.size());
  for (Element x = 0; x < L.size(); ++x) {
    ElementProfile p;
    p.element = x;
    const PrincipalFlags f = principal_profile(L, x);
    p.is_meet_principal = f.meet_principal;
    p.is_join_principal = f.join_principal;
    p.is_principal = f.principal();
    p.is_prime = is_prime(L, x);
    p.is_maximal = maximal[x];
    if (p.is_principal) p.is_regular = L.residual(L.bottom(), x) == L.bottom();
    const CancellationResult c = is_cancellation(L, x);
    p.is_cancellation = c.cancellation;
    p.cancellation_witness = c.witness;
    out.push_back(p);
  }
  return out;
}

}  // namespace mlat
