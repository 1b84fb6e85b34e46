#include "mlat/lattice.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>

namespace mlat {

namespace {

void check_square(const char* what, std::size_t rows,
                  const auto& table, std::size_t n) {
  if (rows != n) {
    throw InputError(std::string(what) + " table has " + std::to_string(rows) +
                     " rows, expected " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw InputError(std::string(what) + " table row " + std::to_string(i) +
                       " has " + std::to_string(table[i].size()) +
                       " entries, expected " + std::to_string(n));
    }
  }
}

void check_range(const char* what, const Table<Element>& table, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) {
        throw InputError(std::string(what) + "[" + std::to_string(i) + "][" +
                         std::to_string(j) + "] = " +
                         std::to_string(table[i][j]) + " is out of range");
      }
    }
  }
}

}  // namespace

FiniteMultiplicativeLattice::FiniteMultiplicativeLattice(LatticeTables tables)
    : t_(std::move(tables)) {
  const std::size_t n = t_.names.size();
  if (n == 0) throw InputError("lattice has no elements");
  check_square("leq", t_.leq.size(), t_.leq, n);
  check_square("join", t_.join.size(), t_.join, n);
  check_square("meet", t_.meet.size(), t_.meet, n);
  check_square("mul", t_.mul.size(), t_.mul, n);
  check_range("join", t_.join, n);
  check_range("meet", t_.meet, n);
  check_range("mul", t_.mul, n);
  if (t_.bottom >= n || t_.top >= n) {
    throw InputError("bottom/top index out of range");
  }

  residual_.assign(n, std::vector<Element>(n, t_.bottom));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      Element acc = t_.bottom;
      for (Element c = 0; c < n; ++c) {
        if (t_.leq[t_.mul[b][c]][a]) acc = t_.join[acc][c];
      }
      residual_[a][b] = acc;
    }
  }
}

FiniteMultiplicativeLattice FiniteMultiplicativeLattice::from_order(
    std::string name, std::vector<std::string> names,
    std::span<const std::pair<Element, Element>> leq_pairs, Table<Element> mul,
    std::optional<Element> bottom, std::optional<Element> top) {
  const std::size_t n = names.size();
  if (n == 0) throw InputError("lattice has no elements");

  Table<bool> leq(n, std::vector<bool>(n, false));
  for (Element i = 0; i < n; ++i) leq[i][i] = true;
  for (auto [i, j] : leq_pairs) {
    if (i >= n || j >= n) {
      throw InputError("leq pair [" + std::to_string(i) + "," +
                       std::to_string(j) + "] is out of range");
    }
    leq[i][j] = true;
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) {
        throw InputError("order is not antisymmetric: " + names[a] + " and " +
                         names[b]);
      }
      if (!leq[a][b]) continue;
      for (Element c = 0; c < n; ++c) {
        if (leq[b][c] && !leq[a][c]) {
          throw InputError("order is not transitive: " + names[a] + " <= " +
                           names[b] + " <= " + names[c]);
        }
      }
    }
  }

  auto extreme = [&](bool least) -> Element {
    for (Element c = 0; c < n; ++c) {
      bool all = true;
      for (Element x = 0; x < n && all; ++x) all = least ? leq[c][x] : leq[x][c];
      if (all) return c;
    }
    throw InputError(least ? "order has no least element"
                           : "order has no greatest element");
  };
  const Element bot = extreme(true);
  const Element tp = extreme(false);
  if (bottom && *bottom != bot) throw InputError("supplied bottom disagrees with order");
  if (top && *top != tp) throw InputError("supplied top disagrees with order");

  Table<Element> join(n, std::vector<Element>(n));
  Table<Element> meet(n, std::vector<Element>(n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      std::optional<Element> lub, glb;
      for (Element c = 0; c < n; ++c) {
        if (leq[a][c] && leq[b][c] && (!lub || leq[c][*lub])) lub = c;
        if (leq[c][a] && leq[c][b] && (!glb || leq[*glb][c])) glb = c;
      }
      // The candidates found above are only the least/greatest if comparable
      // to every other bound.
      for (Element c = 0; c < n; ++c) {
        if (leq[a][c] && leq[b][c] && !leq[*lub][c]) {
          throw InputError("not a lattice: " + names[a] + " and " + names[b] +
                           " have no least upper bound");
        }
        if (leq[c][a] && leq[c][b] && !leq[c][*glb]) {
          throw InputError("not a lattice: " + names[a] + " and " + names[b] +
                           " have no greatest lower bound");
        }
      }
      join[a][b] = *lub;
      meet[a][b] = *glb;
    }
  }

  LatticeTables t;
  t.name = std::move(name);
  t.names = std::move(names);
  t.leq = std::move(leq);
  t.join = std::move(join);
  t.meet = std::move(meet);
  t.mul = std::move(mul);
  t.bottom = bot;
  t.top = tp;
  return FiniteMultiplicativeLattice(std::move(t));
}

Element FiniteMultiplicativeLattice::find(const std::string& label) const {
  auto it = std::find(t_.names.begin(), t_.names.end(), label);
  if (it == t_.names.end()) {
    throw InputError("no element named '" + label + "' in " + t_.name);
  }
  return static_cast<Element>(it - t_.names.begin());
}

Element join_set(const Lattice& L, std::span<const Element> elements) {
  Element acc = L.bottom();
  for (Element e : elements) acc = L.join(acc, e);
  return acc;
}

Element meet_set(const Lattice& L, std::span<const Element> elements) {
  Element acc = L.top();
  for (Element e : elements) acc = L.meet(acc, e);
  return acc;
}

Element residual_by_scan(const Lattice& L, Element a, Element b) {
  Element acc = L.bottom();
  for (Element c = 0; c < L.size(); ++c) {
    if (L.leq(L.mul(b, c), a)) acc = L.join(acc, c);
  }
  return acc;
}

namespace {

using Witness = std::span<const Element>;

struct Axiom {
  std::string_view name;
  // 0 means variable arity (subset spot-check).
  std::size_t arity;
  std::function<bool(const Lattice&, Witness)> holds;
};

bool subset_distributes(const Lattice& L, Witness w) {
  if (w.empty()) return true;
  const Element a = w[0];
  auto rest = w.subspan(1);
  Element rhs = L.bottom();
  for (Element x : rest) rhs = L.join(rhs, L.mul(a, x));
  return L.mul(a, join_set(L, rest)) == rhs;
}

const std::vector<Axiom>& axioms() {
  static const std::vector<Axiom> all = {
      {"leq-reflexive", 1, [](const Lattice& L, Witness w) { return L.leq(w[0], w[0]); }},
      {"leq-antisymmetric", 2,
       [](const Lattice& L, Witness w) {
         return w[0] == w[1] || !(L.leq(w[0], w[1]) && L.leq(w[1], w[0]));
       }},
      {"leq-transitive", 3,
       [](const Lattice& L, Witness w) {
         return !(L.leq(w[0], w[1]) && L.leq(w[1], w[2])) || L.leq(w[0], w[2]);
       }},
      {"bottom-least", 1, [](const Lattice& L, Witness w) { return L.leq(L.bottom(), w[0]); }},
      {"top-greatest", 1, [](const Lattice& L, Witness w) { return L.leq(w[0], L.top()); }},
      {"join-upper-bound", 2,
       [](const Lattice& L, Witness w) {
         const Element j = L.join(w[0], w[1]);
         return L.leq(w[0], j) && L.leq(w[1], j);
       }},
      {"join-least", 3,
       [](const Lattice& L, Witness w) {
         return !(L.leq(w[0], w[2]) && L.leq(w[1], w[2])) ||
                L.leq(L.join(w[0], w[1]), w[2]);
       }},
      {"meet-lower-bound", 2,
       [](const Lattice& L, Witness w) {
         const Element m = L.meet(w[0], w[1]);
         return L.leq(m, w[0]) && L.leq(m, w[1]);
       }},
      {"meet-greatest", 3,
       [](const Lattice& L, Witness w) {
         return !(L.leq(w[2], w[0]) && L.leq(w[2], w[1])) ||
                L.leq(w[2], L.meet(w[0], w[1]));
       }},
      {"mul-commutative", 2,
       [](const Lattice& L, Witness w) { return L.mul(w[0], w[1]) == L.mul(w[1], w[0]); }},
      {"mul-associative", 3,
       [](const Lattice& L, Witness w) {
         return L.mul(L.mul(w[0], w[1]), w[2]) == L.mul(w[0], L.mul(w[1], w[2]));
       }},
      {"mul-identity-top", 1, [](const Lattice& L, Witness w) { return L.mul(w[0], L.top()) == w[0]; }},
      {"mul-bottom-annihilates", 1,
       [](const Lattice& L, Witness w) { return L.mul(w[0], L.bottom()) == L.bottom(); }},
      {"mul-distributes-over-join", 3,
       [](const Lattice& L, Witness w) {
         return L.mul(w[0], L.join(w[1], w[2])) ==
                L.join(L.mul(w[0], w[1]), L.mul(w[0], w[2]));
       }},
      {"mul-below-factors", 2,
       [](const Lattice& L, Witness w) {
         const Element p = L.mul(w[0], w[1]);
         return L.leq(p, w[0]) && L.leq(p, w[1]);
       }},
      {"mul-distributes-over-subset-join", 0, subset_distributes},
  };
  return all;
}

std::vector<std::string_view> make_axiom_names() {
  std::vector<std::string_view> out;
  for (const auto& ax : axioms()) out.push_back(ax.name);
  return out;
}

AxiomFailure make_failure(const Lattice& L, std::string_view axiom,
                          std::vector<Element> witness) {
  AxiomFailure f;
  f.axiom = std::string(axiom);
  for (Element e : witness) f.witness_names.push_back(L.label(e));
  f.witness = std::move(witness);
  return f;
}

// First tuple (lexicographic) of the given arity violating the axiom.
std::optional<std::vector<Element>> first_violation(const Lattice& L,
                                                    const Axiom& ax) {
  const std::size_t n = L.size();
  std::vector<Element> t(ax.arity, 0);
  while (true) {
    if (!ax.holds(L, t)) return t;
    std::size_t k = ax.arity;
    while (k > 0) {
      --k;
      if (++t[k] < n) break;
      t[k] = 0;
      if (k == 0) return std::nullopt;
    }
  }
}

}  // namespace

std::span<const std::string_view> axiom_names() {
  static const std::vector<std::string_view> names = make_axiom_names();
  return names;
}

ValidationReport validate(const Lattice& L, const ValidateOptions& opts) {
  ValidationReport report;
  std::mt19937_64 rng(opts.seed);
  for (const auto& ax : axioms()) {
    if (ax.arity > 0) {
      if (auto w = first_violation(L, ax)) {
        report.failures.push_back(make_failure(L, ax.name, std::move(*w)));
      }
      continue;
    }
    std::uniform_int_distribution<Element> pick(0, L.size() - 1);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < opts.subset_samples; ++s) {
      std::vector<Element> w{pick(rng)};
      for (Element x = 0; x < L.size(); ++x) {
        if (coin(rng)) w.push_back(x);
      }
      if (!ax.holds(L, w)) {
        report.failures.push_back(make_failure(L, ax.name, std::move(w)));
        break;
      }
    }
  }
  return report;
}

bool replays(const Lattice& L, const AxiomFailure& failure) {
  for (const auto& ax : axioms()) {
    if (ax.name != failure.axiom) continue;
    if (ax.arity != 0 && failure.witness.size() != ax.arity) return false;
    for (Element e : failure.witness) {
      if (e >= L.size()) return false;
    }
    for (std::size_t i = 0; i < failure.witness.size(); ++i) {
      if (failure.witness_names.size() != failure.witness.size() ||
          L.label(failure.witness[i]) != failure.witness_names[i]) {
        return false;
      }
    }
    return !ax.holds(L, failure.witness);
  }
  return false;
}

}  // namespace mlat
