#pragma once

// Hypothesis checks (modularity, principal generation, property delta) and
// exhaustive instantiation of the cancellation theorem and its lemmas.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlat/lattice.hpp"

namespace mlat {

/// a >= b with a ∧ (b ∨ c) != b ∨ (a ∧ c).
struct ModularityWitness {
  Element a = 0, b = 0, c = 0;
  bool operator==(const ModularityWitness&) const = default;
};

std::optional<ModularityWitness> check_modularity(const Lattice& L);
bool replays(const Lattice& L, const ModularityWitness& w);

/// Every element is the join of the members of G below it.
bool generates(const Lattice& L, std::span<const Element> G);

struct RLatticeCheck {
  bool modular = false;
  bool principals_generate = false;
  std::optional<ModularityWitness> modularity_witness;
  /// An element that is not a join of principal elements.
  std::optional<Element> ungenerated;

  bool holds() const { return modular && principals_generate; }
  std::string reason(const Lattice& L) const;
};

/// Finite carriers are C-lattices automatically (every element compact), so
/// only modularity and principal generation are decided.
RLatticeCheck is_r_lattice(const Lattice& L);

struct DeltaCertificate {
  std::vector<Element> delta_set;
  /// Ordered pair (x, y) of members -> δ with x²∨y² = x²∨δ = y²∨δ.
  std::map<std::pair<Element, Element>, Element> witness;
};

enum class DeltaStatus { Found, NotFound, Unknown };
const char* to_string(DeltaStatus s);

struct DeltaSearch {
  DeltaStatus status = DeltaStatus::Unknown;
  std::optional<DeltaCertificate> certificate;
  /// 1: all principals; 2: subset search.
  int phase = 0;
  std::size_t subsets_examined = 0;
};

struct DeltaOptions {
  /// Maximum number of subsets examined during the subset search.
  std::size_t budget = std::size_t{1} << 16;
};

/// Attempts to certify `delta_set`. For each pair the witness x²∨y² is
/// preferred when it lies in the set, otherwise the least index works.
std::optional<DeltaCertificate> certify_delta(const Lattice& L,
                                             std::span<const Element> delta_set);

/// Independent re-check of a certificate's invariants.
bool check_certificate(const Lattice& L, const DeltaCertificate& cert);

DeltaSearch find_delta(const Lattice& L, const DeltaOptions& opts = {});

struct Hypotheses {
  bool modular = false;
  bool principals_generate = false;
  DeltaStatus delta = DeltaStatus::Unknown;
  bool hold() const {
    return modular && principals_generate && delta == DeltaStatus::Found;
  }
};

struct TheoremRow {
  Element q = 0;
  /// Q is a cancellation element.
  bool lhs = false;
  /// Q_m is principal and regular in L_m for every maximal m.
  bool rhs = false;
  std::optional<std::pair<Element, Element>> cancellation_witness;
  std::optional<Element> failing_maximal;
  /// "not principal" or "not regular" at failing_maximal.
  std::string failing_reason;
};

struct TheoremReport {
  Hypotheses hypotheses;
  std::vector<TheoremRow> rows;
  /// Elements with lhs != rhs.
  std::vector<Element> mismatches;
  /// Elements with rhs true and lhs false. This direction needs no delta.
  std::vector<Element> converse_violations;

  std::vector<Element> cancellation_set() const;
  /// Mismatches under satisfied hypotheses, or any converse violation.
  bool failed() const {
    return (hypotheses.hold() && !mismatches.empty()) ||
           !converse_violations.empty();
  }
};

TheoremReport verify_theorem(const Lattice& L, const DeltaOptions& opts = {});

/// Greedy minimal B ⊆ {g ∈ G : g <= Q} with ⋁B ∨ mQ = Q. Candidates are
/// discarded in descending index order. Returns {} when Q = mQ. Throws
/// InputError when G does not generate L or m is not maximal.
std::vector<Element> minimal_generating_mod(const Lattice& L, Element q,
                                            Element m,
                                            std::span<const Element> G);

enum class CheckStatus { Pass, Fail, Skip, Exhibit };
const char* to_string(CheckStatus s);

struct LemmaCheck {
  std::string name;
  bool hypotheses_hold = false;
  bool skipped = false;
  std::string note;
  std::size_t instances = 0;
  std::size_t violation_count = 0;
  /// First few violating tuples, in scan order.
  std::vector<std::vector<Element>> violations;

  CheckStatus status() const;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool failed() const;
};

LemmaReport lemma_suite(const Lattice& L, const DeltaOptions& opts = {});

}  // namespace mlat
