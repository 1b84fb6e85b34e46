#pragma once

// Element-level predicates decided by exhaustive scans.

#include <optional>
#include <utility>
#include <vector>

#include "mlat/lattice.hpp"

namespace mlat {

struct PrincipalFlags {
  bool meet_principal = false;
  bool join_principal = false;
  bool principal() const { return meet_principal && join_principal; }
};

/// meet principal: a ∧ bx = ((a : x) ∧ b)x for all a, b.
/// join principal: a ∨ (b : x) = ((ax ∨ b) : x) for all a, b.
PrincipalFlags principal_profile(const Lattice& L, Element x);
bool is_principal(const Lattice& L, Element x);
std::vector<Element> principal_elements(const Lattice& L);

bool is_prime(const Lattice& L, Element p);

struct Spectrum {
  std::vector<Element> primes;
  std::vector<Element> maximals;
  /// Least-index maximal element above each non-top element; nullopt at top.
  std::vector<std::optional<Element>> maximal_above;
};

Spectrum classify_spectrum(const Lattice& L);

/// (0 : x) = 0. Throws PredicateUndefined when x is not principal.
bool is_regular(const Lattice& L, Element x);

struct CancellationResult {
  bool cancellation = false;
  /// Lexicographically least (a, b) with a != b and Qa = Qb.
  std::optional<std::pair<Element, Element>> witness;
};

CancellationResult is_cancellation(const Lattice& L, Element q);

struct ElementProfile {
  Element element = 0;
  bool is_meet_principal = false;
  bool is_join_principal = false;
  bool is_principal = false;
  bool is_prime = false;
  bool is_maximal = false;
  /// Undefined (nullopt) for non-principal elements.
  std::optional<bool> is_regular;
  bool is_cancellation = false;
  std::optional<std::pair<Element, Element>> cancellation_witness;
};

std::vector<ElementProfile> profile_all(const Lattice& L);

}  // namespace mlat
