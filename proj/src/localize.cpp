#include "mlat/localize.hpp"

#include <algorithm>

#include "mlat/classify.hpp"

namespace mlat {

MultSet::MultSet(const Lattice& L, std::vector<Element> members)
    : members_(std::move(members)) {
  for (Element e : members_) {
    if (e >= L.size()) throw InputError("multiplicative set member out of range");
  }
  members_.push_back(L.top());
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (Element s : members_) {
    for (Element t : members_) {
      if (!contains(L.mul(s, t))) {
        throw InputError("set is not multiplicatively closed: " + L.label(s) +
                         " * " + L.label(t) + " = " + L.label(L.mul(s, t)) +
                         " is missing");
      }
    }
  }
}

MultSet MultSet::complement_of(const Lattice& L, Element p) {
  std::vector<Element> out;
  for (Element c = 0; c < L.size(); ++c) {
    if (!L.leq(c, p)) out.push_back(c);
  }
  return MultSet(L, std::move(out));
}

bool MultSet::contains(Element e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

Element closure(const Lattice& L, Element a, const MultSet& S) {
  Element acc = L.bottom();
  for (Element s : S.members()) acc = L.join(acc, L.residual(a, s));
  return acc;
}

LocalizationResult build_localization(const Lattice& L, const MultSet& S) {
  const std::size_t n = L.size();
  std::vector<Element> closed(n);
  for (Element a = 0; a < n; ++a) closed[a] = closure(L, a, S);

  std::vector<Element> embed;
  std::vector<Element> local_index(n, n);
  for (Element a = 0; a < n; ++a) {
    if (closed[a] == a) {
      local_index[a] = embed.size();
      embed.push_back(a);
    }
  }
  std::vector<Element> project(n);
  for (Element a = 0; a < n; ++a) {
    if (closed[closed[a]] != closed[a]) {
      throw InternalContradiction("closure is not idempotent at " + L.label(a));
    }
    project[a] = local_index[closed[a]];
  }

  const std::size_t k = embed.size();
  LatticeTables t;
  t.name = L.name() + "_S{";
  Provenance prov;
  prov.parent = L.name();
  for (std::size_t i = 0; i < S.members().size(); ++i) {
    const std::string& lbl = L.label(S.members()[i]);
    t.name += (i ? "," : "") + lbl;
    prov.multiplicative_set.push_back(lbl);
  }
  t.name += "}";
  t.provenance = std::move(prov);
  t.leq.assign(k, std::vector<bool>(k));
  t.join.assign(k, std::vector<Element>(k));
  t.meet.assign(k, std::vector<Element>(k));
  t.mul.assign(k, std::vector<Element>(k));
  for (Element i = 0; i < k; ++i) {
    t.names.push_back(L.label(embed[i]));
    for (Element j = 0; j < k; ++j) {
      const Element a = embed[i], b = embed[j];
      t.leq[i][j] = L.leq(a, b);
      t.join[i][j] = project[L.join(a, b)];
      const Element m = L.meet(a, b);
      if (closed[m] != m) {
        throw InternalContradiction("meet of closed elements " + L.label(a) +
                                    ", " + L.label(b) + " is not closed");
      }
      t.meet[i][j] = local_index[m];
      t.mul[i][j] = project[L.mul(a, b)];
    }
  }
  t.bottom = project[L.bottom()];
  t.top = project[L.top()];

  LocalizationResult result{Lattice(std::move(t)), std::move(project),
                            std::move(embed)};
  const ValidationReport report = validate(result.localized);
  if (!report.passed()) {
    throw InternalContradiction("localized lattice " + result.localized.name() +
                                " fails " + report.failures.front().axiom);
  }
  return result;
}

LocalizationResult localize_at_prime(const Lattice& L, Element p) {
  if (p >= L.size()) throw InputError("element out of range");
  if (!is_prime(L, p)) {
    throw InputError(L.label(p) + " is not a prime element of " + L.name());
  }
  std::vector<Element> outside;
  for (Element c = 0; c < L.size(); ++c) {
    if (!L.leq(c, p)) outside.push_back(c);
  }
  for (Element s : outside) {
    for (Element t : outside) {
      if (L.leq(L.mul(s, t), p)) {
        throw InternalContradiction("complement of prime " + L.label(p) +
                                    " is not multiplicatively closed");
      }
    }
  }
  return build_localization(L, MultSet(L, std::move(outside)));
}

std::optional<Element> distinguishing_maximal(const Lattice& L, Element a,
                                              Element b) {
  for (Element m : classify_spectrum(L).maximals) {
    const MultSet T = MultSet::complement_of(L, m);
    if (closure(L, a, T) != closure(L, b, T)) return m;
  }
  return std::nullopt;
}

}  // namespace mlat
