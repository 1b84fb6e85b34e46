#pragma once

// Finitely generated ideals of the semiring ℕ: sets of nonnegative integer
// combinations of the generators. Membership is a coin-change reachability
// table bounded by the query.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlat::nat {

using Value = std::uint64_t;

/// gcd, conductor, and the members strictly between 0 and the conductor.
/// Every multiple of gcd that is >= conductor is a member.
struct NormalForm {
  Value gcd = 0;
  Value conductor = 0;
  std::vector<Value> sporadic;

  bool contains(Value n) const;
};

class NatIdeal {
 public:
  /// The zero ideal.
  NatIdeal() = default;
  /// Minimizes the generators; zeros are dropped.
  explicit NatIdeal(std::span<const Value> generators);
  NatIdeal(std::initializer_list<Value> generators);

  const std::vector<Value>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  std::size_t rank() const { return gens_.size(); }

  NormalForm normal_form() const;
  std::string to_string() const;

  bool operator==(const NatIdeal&) const = default;
  auto operator<=>(const NatIdeal&) const = default;

 private:
  std::vector<Value> gens_;
};

/// "4,9" -> (4,9). Empty text or "0" is the zero ideal.
NatIdeal parse_ideal(std::string_view text);

/// reachable[v] for v in 0..limit.
std::vector<bool> membership_table(std::span<const Value> generators, Value limit);

bool nat_contains(const NatIdeal& I, Value n);
NatIdeal nat_product(const NatIdeal& I, const NatIdeal& J);
NatIdeal nat_join(const NatIdeal& I, const NatIdeal& J);
NatIdeal nat_meet(const NatIdeal& I, const NatIdeal& J);
NatIdeal nat_scale(Value d, const NatIdeal& I);
/// J ⊆ I.
bool nat_includes(const NatIdeal& I, const NatIdeal& J);
bool nat_equals(const NatIdeal& I, const NatIdeal& J);

std::vector<Value> nat_minimal_generators(std::span<const Value> generators);
bool nat_is_principal(const NatIdeal& I);

struct CancellationRefutation {
  Value a = 0;
  Value b = 0;
  std::vector<Value> h;
  /// (a², b², aH, bH, H²).
  NatIdeal j;
  /// a·b: lies in Q² but not in J, while Q³ = QJ.
  Value witness = 0;
};

/// nullopt for principal ideals. For Q = (a, b, H) builds J and checks ab ∈ Q²,
/// ab ∉ J and Q³ = QJ; throws InternalContradiction if any check fails.
std::optional<CancellationRefutation> nat_refute_cancellation(const NatIdeal& Q);

/// Least c in 1..max(x², y²) with (x², y²) = (x², c) = (c, y²).
std::optional<Value> nat_delta_witness_search(Value x, Value y);

struct ModularityViolation {
  NatIdeal a, b, c;
};

/// Ideals with at most two generators, each <= bound, plus the zero ideal,
/// sorted by generator list.
std::vector<NatIdeal> small_ideals(Value bound);

/// First (A, B, C) over small_ideals(bound), lexicographically, with B ⊆ A and
/// A ∧ (B ∨ C) != B ∨ (A ∧ C). The returned triple is re-verified.
std::optional<ModularityViolation> nat_modularity_witness(Value bound);
bool replays(const ModularityViolation& v);

struct ModularitySearch {
  /// Bounds tried, in order; the last one produced the result.
  std::vector<Value> bounds;
  std::optional<ModularityViolation> violation;
};

/// Runs nat_modularity_witness at `start`, doubling the bound up to
/// `max_bound` until a violation is found.
ModularitySearch nat_modularity_search(Value start, Value max_bound);

}  // namespace mlat::nat
