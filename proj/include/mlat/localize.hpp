#pragma once

// Localization L_S of a finite multiplicative lattice at a multiplicatively
// closed set S, materialized as a lattice of its own.

#include <optional>
#include <vector>

#include "mlat/lattice.hpp"

namespace mlat {

/// Multiplicatively closed set of elements. Always contains top.
class MultSet {
 public:
  /// Throws InputError if an index is out of range or the set (with top
  /// added) is not closed under multiplication.
  MultSet(const Lattice& L, std::vector<Element> members);

  /// {c : c ≰ p}. Closure under multiplication is checked; it holds exactly
  /// when p is prime or p is top.
  static MultSet complement_of(const Lattice& L, Element p);

  const std::vector<Element>& members() const { return members_; }
  bool contains(Element e) const;

 private:
  std::vector<Element> members_;
};

/// a_S = ⋁ {(a : s) : s ∈ S}.
Element closure(const Lattice& L, Element a, const MultSet& S);

struct LocalizationResult {
  Lattice localized;
  /// Parent index -> localized index (a ↦ a_S).
  std::vector<Element> project;
  /// Localized index -> parent index of the fixed point.
  std::vector<Element> embed;

  Element image(Element parent_element) const { return project[parent_element]; }
};

LocalizationResult build_localization(const Lattice& L, const MultSet& S);

/// L_p with T = {c : c ≰ p}. Throws InputError when p is not prime.
LocalizationResult localize_at_prime(const Lattice& L, Element p);

/// A maximal element at which a and b localize differently, if one exists.
std::optional<Element> distinguishing_maximal(const Lattice& L, Element a,
                                              Element b);

/// a_m = b_m for every maximal m.
inline bool equal_locally(const Lattice& L, Element a, Element b) {
  return !distinguishing_maximal(L, a, b).has_value();
}

}  // namespace mlat
