#include "mlat/natsemiring.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "mlat/lattice.hpp"

namespace mlat::nat {

namespace {

Value checked_mul(Value a, Value b) {
  if (a != 0 && b > std::numeric_limits<Value>::max() / a) {
    throw std::overflow_error("ideal generator overflow");
  }
  return a * b;
}

Value max_generator(const NatIdeal& I) {
  return I.is_zero() ? 0 : I.generators().back();
}

}  // namespace

bool NormalForm::contains(Value n) const {
  if (n == 0) return true;
  if (gcd == 0 || n % gcd != 0) return false;
  if (n >= conductor) return true;
  return std::binary_search(sporadic.begin(), sporadic.end(), n);
}

std::vector<bool> membership_table(std::span<const Value> generators, Value limit) {
  std::vector<bool> reach(limit + 1, false);
  reach[0] = true;
  for (Value g : generators) {
    if (g == 0 || g > limit) continue;
    for (Value v = g; v <= limit; ++v) {
      if (reach[v - g]) reach[v] = true;
    }
  }
  return reach;
}

std::vector<Value> nat_minimal_generators(std::span<const Value> generators) {
  std::vector<Value> sorted;
  for (Value g : generators) {
    if (g != 0) sorted.push_back(g);
  }
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.empty()) return {};

  // A generator can only be expressed through smaller ones.
  const Value limit = sorted.back();
  std::vector<bool> reach(limit + 1, false);
  reach[0] = true;
  std::vector<Value> kept;
  for (Value g : sorted) {
    if (reach[g]) continue;
    kept.push_back(g);
    for (Value v = g; v <= limit; ++v) {
      if (reach[v - g]) reach[v] = true;
    }
  }
  return kept;
}

NatIdeal::NatIdeal(std::span<const Value> generators)
    : gens_(nat_minimal_generators(generators)) {}

NatIdeal::NatIdeal(std::initializer_list<Value> generators)
    : NatIdeal(std::span<const Value>(generators.begin(), generators.size())) {}

NormalForm NatIdeal::normal_form() const {
  NormalForm nf;
  if (gens_.empty()) return nf;
  Value d = 0;
  for (Value g : gens_) d = std::gcd(d, g);
  nf.gcd = d;
  std::vector<Value> reduced;
  for (Value g : gens_) reduced.push_back(g / d);
  const Value smallest = reduced.front();

  // Once `smallest` consecutive multiples are reachable, all later ones are.
  std::vector<bool> reach;
  Value run = 0;
  for (Value k = 0;; ++k) {
    bool r = k == 0;
    for (Value g : reduced) {
      if (g <= k && reach[k - g]) {
        r = true;
        break;
      }
    }
    reach.push_back(r);
    run = r ? run + 1 : 0;
    if (run == smallest) {
      const Value start = k + 1 - smallest;
      nf.conductor = start * d;
      for (Value i = 1; i < start; ++i) {
        if (reach[i]) nf.sporadic.push_back(i * d);
      }
      return nf;
    }
  }
}

std::string NatIdeal::to_string() const {
  if (gens_.empty()) return "(0)";
  std::string out = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    out += (i ? "," : "") + std::to_string(gens_[i]);
  }
  return out + ")";
}

NatIdeal parse_ideal(std::string_view text) {
  std::vector<Value> gens;
  std::size_t pos = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '(')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == ')')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return NatIdeal{};
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view tok =
        trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    Value v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw InputError("bad ideal generator '" + std::string(tok) + "'");
    }
    gens.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return NatIdeal(gens);
}

bool nat_contains(const NatIdeal& I, Value n) {
  if (n == 0) return true;
  return membership_table(I.generators(), n)[n];
}

NatIdeal nat_product(const NatIdeal& I, const NatIdeal& J) {
  std::vector<Value> gens;
  for (Value a : I.generators()) {
    for (Value b : J.generators()) gens.push_back(checked_mul(a, b));
  }
  return NatIdeal(gens);
}

NatIdeal nat_join(const NatIdeal& I, const NatIdeal& J) {
  std::vector<Value> gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return NatIdeal(gens);
}

NatIdeal nat_meet(const NatIdeal& I, const NatIdeal& J) {
  if (I.is_zero() || J.is_zero()) return NatIdeal{};
  const NormalForm a = I.normal_form();
  const NormalForm b = J.normal_form();
  const Value step = std::lcm(a.gcd, b.gcd);
  const Value tail = std::max(a.conductor, b.conductor);

  // With s the least positive common member, every common member
  // n >= tail + s splits as s + (n - s); generators lie below tail + s.
  Value first = 0;
  std::vector<Value> members;
  for (Value n = step;; n += step) {
    if (first != 0 && n >= tail + first) break;
    if (a.contains(n) && b.contains(n)) {
      if (first == 0) first = n;
      members.push_back(n);
    }
  }
  return NatIdeal(members);
}

NatIdeal nat_scale(Value d, const NatIdeal& I) {
  return nat_product(NatIdeal{d}, I);
}

bool nat_includes(const NatIdeal& I, const NatIdeal& J) {
  if (J.is_zero()) return true;
  const auto reach = membership_table(I.generators(), max_generator(J));
  return std::all_of(J.generators().begin(), J.generators().end(),
                     [&](Value g) { return reach[g]; });
}

bool nat_equals(const NatIdeal& I, const NatIdeal& J) {
  return nat_includes(I, J) && nat_includes(J, I);
}

bool nat_is_principal(const NatIdeal& I) { return I.rank() <= 1; }

std::optional<CancellationRefutation> nat_refute_cancellation(const NatIdeal& Q) {
  if (nat_is_principal(Q)) return std::nullopt;
  const auto& g = Q.generators();
  CancellationRefutation r;
  r.a = g[0];
  r.b = g[1];
  r.h.assign(g.begin() + 2, g.end());
  if (!(r.a < r.b) || r.b % r.a == 0 ||
      std::any_of(r.h.begin(), r.h.end(), [&](Value h) { return h <= r.b; })) {
    throw InternalContradiction("generators of " + Q.to_string() +
                                " do not have the shape (a, b, H)");
  }

  std::vector<Value> jg{checked_mul(r.a, r.a), checked_mul(r.b, r.b)};
  for (Value h : r.h) {
    jg.push_back(checked_mul(r.a, h));
    jg.push_back(checked_mul(r.b, h));
    for (Value h2 : r.h) jg.push_back(checked_mul(h, h2));
  }
  r.j = NatIdeal(jg);
  r.witness = checked_mul(r.a, r.b);

  const NatIdeal q2 = nat_product(Q, Q);
  if (!nat_contains(q2, r.witness)) {
    throw InternalContradiction("ab is not in Q^2 for Q = " + Q.to_string());
  }
  if (nat_contains(r.j, r.witness)) {
    throw InternalContradiction("ab lies in J for Q = " + Q.to_string());
  }
  if (!nat_equals(nat_product(Q, q2), nat_product(Q, r.j))) {
    throw InternalContradiction("Q^3 != QJ for Q = " + Q.to_string());
  }
  return r;
}

std::optional<Value> nat_delta_witness_search(Value x, Value y) {
  if (x == 0 || y == 0) throw InputError("nat_delta_witness_search needs x, y >= 1");
  const Value x2 = checked_mul(x, x), y2 = checked_mul(y, y);
  const NatIdeal target{x2, y2};
  for (Value c = 1; c <= std::max(x2, y2); ++c) {
    if (nat_equals(NatIdeal{x2, c}, target) && nat_equals(NatIdeal{c, y2}, target)) {
      return c;
    }
  }
  return std::nullopt;
}

std::vector<NatIdeal> small_ideals(Value bound) {
  std::set<NatIdeal> out{NatIdeal{}};
  for (Value g1 = 1; g1 <= bound; ++g1) {
    out.insert(NatIdeal{g1});
    for (Value g2 = g1 + 1; g2 <= bound; ++g2) out.insert(NatIdeal{g1, g2});
  }
  return {out.begin(), out.end()};
}

bool replays(const ModularityViolation& v) {
  return nat_includes(v.a, v.b) &&
         !nat_equals(nat_meet(v.a, nat_join(v.b, v.c)),
                     nat_join(v.b, nat_meet(v.a, v.c)));
}

std::optional<ModularityViolation> nat_modularity_witness(Value bound) {
  const auto ideals = small_ideals(bound);
  const std::size_t n = ideals.size();
  std::vector<std::vector<std::optional<NatIdeal>>> meets(
      n, std::vector<std::optional<NatIdeal>>(n));
  auto meet = [&](std::size_t i, std::size_t j) -> const NatIdeal& {
    if (!meets[i][j]) meets[i][j] = nat_meet(ideals[i], ideals[j]);
    return *meets[i][j];
  };
  for (std::size_t ai = 0; ai < n; ++ai) {
    for (std::size_t bi = 0; bi < n; ++bi) {
      if (!nat_includes(ideals[ai], ideals[bi])) continue;
      for (std::size_t ci = 0; ci < n; ++ci) {
        const NatIdeal lhs = nat_meet(ideals[ai], nat_join(ideals[bi], ideals[ci]));
        const NatIdeal rhs = nat_join(ideals[bi], meet(ai, ci));
        if (!nat_equals(lhs, rhs)) {
          ModularityViolation v{ideals[ai], ideals[bi], ideals[ci]};
          if (!replays(v)) {
            throw InternalContradiction("modularity violation does not replay");
          }
          return v;
        }
      }
    }
  }
  return std::nullopt;
}

ModularitySearch nat_modularity_search(Value start, Value max_bound) {
  ModularitySearch s;
  for (Value bound = std::max<Value>(start, 1); bound <= max_bound; bound *= 2) {
    s.bounds.push_back(bound);
    s.violation = nat_modularity_witness(bound);
    if (s.violation) break;
  }
  return s;
}

}  // namespace mlat::nat
