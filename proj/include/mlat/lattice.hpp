#pragma once

// Finite multiplicative lattices: a finite lattice carrying a commutative
// monoid product whose identity is the top element and which distributes
// over joins. Elements are dense indices 0..size-1 and every operation is a
// table lookup.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlat {

using Element = std::size_t;

template <typename T>
using Table = std::vector<std::vector<T>>;

/// Malformed input: shapes, indices, text, unknown names.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A predicate was evaluated outside the domain where it is defined.
class PredicateUndefined : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A checked mathematical fact failed; indicates a bug or a false theorem.
class InternalContradiction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Where a localized lattice came from. Carried through serialization.
struct Provenance {
  std::string parent;
  std::vector<std::string> multiplicative_set;

  bool operator==(const Provenance&) const = default;
};

/// Raw tables. No axioms are implied; see validate().
struct LatticeTables {
  std::string name;
  std::vector<std::string> names;
  Table<bool> leq;
  Table<Element> join;
  Table<Element> meet;
  Table<Element> mul;
  Element bottom = 0;
  Element top = 0;
  std::optional<Provenance> provenance;

  bool operator==(const LatticeTables&) const = default;
};

class FiniteMultiplicativeLattice {
 public:
  /// Takes ownership of the tables after a shape/range check. Throws
  /// InputError on malformed tables; lattice axioms are not checked here.
  explicit FiniteMultiplicativeLattice(LatticeTables tables);

  /// Builds join/meet from an order relation. `leq_pairs` need not contain
  /// reflexive pairs. bottom/top are derived; supplied values must agree.
  static FiniteMultiplicativeLattice from_order(
      std::string name, std::vector<std::string> names,
      std::span<const std::pair<Element, Element>> leq_pairs,
      Table<Element> mul, std::optional<Element> bottom = std::nullopt,
      std::optional<Element> top = std::nullopt);

  std::size_t size() const { return t_.names.size(); }
  const std::string& name() const { return t_.name; }
  const std::string& label(Element a) const { return t_.names[a]; }
  const std::vector<std::string>& labels() const { return t_.names; }
  Element bottom() const { return t_.bottom; }
  Element top() const { return t_.top; }
  const std::optional<Provenance>& provenance() const { return t_.provenance; }
  const LatticeTables& tables() const { return t_; }

  bool leq(Element a, Element b) const { return t_.leq[a][b]; }
  bool lt(Element a, Element b) const { return a != b && t_.leq[a][b]; }
  Element join(Element a, Element b) const { return t_.join[a][b]; }
  Element meet(Element a, Element b) const { return t_.meet[a][b]; }
  Element mul(Element a, Element b) const { return t_.mul[a][b]; }
  /// (a : b), precomputed.
  Element residual(Element a, Element b) const { return residual_[a][b]; }

  Element square(Element a) const { return mul(a, a); }

  /// Index of the element labelled `label`; throws InputError if absent.
  Element find(const std::string& label) const;

  bool operator==(const FiniteMultiplicativeLattice& o) const {
    return t_ == o.t_;
  }

 private:
  LatticeTables t_;
  Table<Element> residual_;
};

using Lattice = FiniteMultiplicativeLattice;

/// Join of an arbitrary finite subset; bottom for the empty set.
Element join_set(const Lattice& L, std::span<const Element> elements);
Element meet_set(const Lattice& L, std::span<const Element> elements);

inline Element multiply(const Lattice& L, Element a, Element b) {
  return L.mul(a, b);
}

/// (a : b) = join of {c : bc <= a}, computed by scanning every c.
Element residual_by_scan(const Lattice& L, Element a, Element b);

inline Element residual(const Lattice& L, Element a, Element b) {
  return L.residual(a, b);
}

struct AxiomFailure {
  std::string axiom;
  std::vector<Element> witness;
  std::vector<std::string> witness_names;
};

struct ValidationReport {
  std::vector<AxiomFailure> failures;
  bool passed() const { return failures.empty(); }
};

struct ValidateOptions {
  std::uint64_t seed = 0x5eedULL;
  /// Random subsets used to spot-check distributivity over arbitrary joins.
  std::size_t subset_samples = 64;
};

/// Checks order, lattice, and monoid axioms. Each violated axiom contributes
/// its first witness in index order.
ValidationReport validate(const Lattice& L, const ValidateOptions& opts = {});

/// Re-evaluates a failure's axiom on its witness tuple; true iff the
/// violation is reproduced by the tables.
bool replays(const Lattice& L, const AxiomFailure& failure);

/// Names of every axiom validate() checks, in report order.
std::span<const std::string_view> axiom_names();

}  // namespace mlat
