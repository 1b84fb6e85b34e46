#include "mlat/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "mlat/classify.hpp"
#include "mlat/localize.hpp"

namespace mlat {

std::optional<ModularityWitness> check_modularity(const Lattice& L) {
  const std::size_t n = L.size();
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (!L.leq(b, a)) continue;
      for (Element c = 0; c < n; ++c) {
        if (L.meet(a, L.join(b, c)) != L.join(b, L.meet(a, c))) {
          return ModularityWitness{a, b, c};
        }
      }
    }
  }
  return std::nullopt;
}

bool replays(const Lattice& L, const ModularityWitness& w) {
  const std::size_t n = L.size();
  if (w.a >= n || w.b >= n || w.c >= n) return false;
  return L.leq(w.b, w.a) &&
         L.meet(w.a, L.join(w.b, w.c)) != L.join(w.b, L.meet(w.a, w.c));
}

namespace {

std::optional<Element> first_ungenerated(const Lattice& L,
                                         std::span<const Element> G) {
  for (Element e = 0; e < L.size(); ++e) {
    Element acc = L.bottom();
    for (Element g : G) {
      if (L.leq(g, e)) acc = L.join(acc, g);
    }
    if (acc != e) return e;
  }
  return std::nullopt;
}

}  // namespace

bool generates(const Lattice& L, std::span<const Element> G) {
  return !first_ungenerated(L, G).has_value();
}

std::string RLatticeCheck::reason(const Lattice& L) const {
  if (holds()) return "modular and generated by principal elements";
  std::string out;
  if (!modular) {
    out = "not modular";
    if (modularity_witness) {
      const auto& w = *modularity_witness;
      out += " (a=" + L.label(w.a) + ", b=" + L.label(w.b) +
             ", c=" + L.label(w.c) + ")";
    }
  }
  if (!principals_generate) {
    if (!out.empty()) out += "; ";
    out += "principal elements do not generate";
    if (ungenerated) out += " (" + L.label(*ungenerated) + ")";
  }
  return out;
}

RLatticeCheck is_r_lattice(const Lattice& L) {
  RLatticeCheck r;
  r.modularity_witness = check_modularity(L);
  r.modular = !r.modularity_witness;
  const auto P = principal_elements(L);
  r.ungenerated = first_ungenerated(L, P);
  r.principals_generate = !r.ungenerated;
  return r;
}

const char* to_string(DeltaStatus s) {
  switch (s) {
    case DeltaStatus::Found: return "found";
    case DeltaStatus::NotFound: return "not-found";
    case DeltaStatus::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<DeltaCertificate> certify_delta(const Lattice& L,
                                             std::span<const Element> delta_set) {
  if (!generates(L, delta_set)) return std::nullopt;
  for (Element d : delta_set) {
    if (!is_principal(L, d)) return std::nullopt;
  }
  std::vector<bool> member(L.size(), false);
  for (Element d : delta_set) member[d] = true;

  DeltaCertificate cert;
  cert.delta_set.assign(delta_set.begin(), delta_set.end());
  std::sort(cert.delta_set.begin(), cert.delta_set.end());
  for (Element x : cert.delta_set) {
    const Element x2 = L.square(x);
    for (Element y : cert.delta_set) {
      const Element y2 = L.square(y);
      const Element target = L.join(x2, y2);
      auto works = [&](Element d) {
        return L.join(x2, d) == target && L.join(y2, d) == target;
      };
      std::optional<Element> delta;
      if (member[target] && works(target)) {
        delta = target;
      } else {
        for (Element d : cert.delta_set) {
          if (works(d)) {
            delta = d;
            break;
          }
        }
      }
      if (!delta) return std::nullopt;
      cert.witness[{x, y}] = *delta;
    }
  }
  return cert;
}

bool check_certificate(const Lattice& L, const DeltaCertificate& cert) {
  for (Element d : cert.delta_set) {
    if (d >= L.size() || !is_principal(L, d)) return false;
  }
  if (!generates(L, cert.delta_set)) return false;
  for (Element x : cert.delta_set) {
    for (Element y : cert.delta_set) {
      auto it = cert.witness.find({x, y});
      if (it == cert.witness.end()) return false;
      const Element d = it->second;
      if (std::find(cert.delta_set.begin(), cert.delta_set.end(), d) ==
          cert.delta_set.end()) {
        return false;
      }
      const Element x2 = L.mul(x, x), y2 = L.mul(y, y);
      const Element lhs = L.join(x2, y2);
      if (L.join(x2, d) != lhs || L.join(y2, d) != lhs) return false;
    }
  }
  return true;
}

DeltaSearch find_delta(const Lattice& L, const DeltaOptions& opts) {
  DeltaSearch result;
  const auto P = principal_elements(L);
  result.phase = 1;
  if (auto cert = certify_delta(L, P)) {
    result.status = DeltaStatus::Found;
    result.certificate = std::move(cert);
    return result;
  }
  result.phase = 2;
  constexpr std::size_t kMaxSubsetSearch = 16;
  if (P.size() > kMaxSubsetSearch) {
    result.status = DeltaStatus::Unknown;
    return result;
  }
  const std::uint32_t full = (std::uint32_t{1} << P.size()) - 1;
  std::vector<Element> subset;
  // The full set was already tried in phase 1.
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (result.subsets_examined >= opts.budget) {
      result.status = DeltaStatus::Unknown;
      return result;
    }
    ++result.subsets_examined;
    subset.clear();
    for (std::size_t i = 0; i < P.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) subset.push_back(P[i]);
    }
    if (auto cert = certify_delta(L, subset)) {
      result.status = DeltaStatus::Found;
      result.certificate = std::move(cert);
      return result;
    }
  }
  result.status = DeltaStatus::NotFound;
  return result;
}

std::vector<Element> TheoremReport::cancellation_set() const {
  std::vector<Element> out;
  for (const auto& r : rows) {
    if (r.lhs) out.push_back(r.q);
  }
  return out;
}

namespace {

struct LocalData {
  Element maximal;
  LocalizationResult loc;
  std::vector<bool> principal;
  std::vector<bool> regular;
};

LocalData local_data(const Lattice& L, Element p) {
  LocalData d{p, localize_at_prime(L, p), {}, {}};
  const Lattice& Lm = d.loc.localized;
  d.principal.resize(Lm.size());
  d.regular.resize(Lm.size());
  for (Element x = 0; x < Lm.size(); ++x) {
    d.principal[x] = is_principal(Lm, x);
    d.regular[x] = d.principal[x] && Lm.residual(Lm.bottom(), x) == Lm.bottom();
  }
  return d;
}

std::vector<LocalData> local_data_at_maximals(const Lattice& L,
                                              const Spectrum& spec) {
  std::vector<LocalData> out;
  out.reserve(spec.maximals.size());
  for (Element m : spec.maximals) out.push_back(local_data(L, m));
  return out;
}

}  // namespace

TheoremReport verify_theorem(const Lattice& L, const DeltaOptions& opts) {
  TheoremReport report;
  const RLatticeCheck r = is_r_lattice(L);
  report.hypotheses.modular = r.modular;
  report.hypotheses.principals_generate = r.principals_generate;
  report.hypotheses.delta = find_delta(L, opts).status;

  const Spectrum spec = classify_spectrum(L);
  const auto locals = local_data_at_maximals(L, spec);

  for (Element q = 0; q < L.size(); ++q) {
    TheoremRow row;
    row.q = q;
    const CancellationResult c = is_cancellation(L, q);
    row.lhs = c.cancellation;
    row.cancellation_witness = c.witness;
    row.rhs = true;
    for (const LocalData& d : locals) {
      const Element image = d.loc.image(q);
      if (!d.principal[image]) {
        row.rhs = false;
        row.failing_maximal = d.maximal;
        row.failing_reason = "not principal";
        break;
      }
      if (!d.regular[image]) {
        row.rhs = false;
        row.failing_maximal = d.maximal;
        row.failing_reason = "not regular";
        break;
      }
    }
    if (row.lhs != row.rhs) report.mismatches.push_back(q);
    if (row.rhs && !row.lhs) report.converse_violations.push_back(q);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<Element> minimal_generating_mod(const Lattice& L, Element q,
                                            Element m,
                                            std::span<const Element> G) {
  if (q >= L.size() || m >= L.size()) throw InputError("element out of range");
  if (!generates(L, G)) throw InputError("G does not generate the lattice");
  const auto maximals = classify_spectrum(L).maximals;
  if (std::find(maximals.begin(), maximals.end(), m) == maximals.end()) {
    throw InputError(L.label(m) + " is not a maximal element");
  }
  const Element mq = L.mul(m, q);
  if (mq == q) return {};

  std::vector<Element> B;
  for (Element g : G) {
    if (L.leq(g, q)) B.push_back(g);
  }
  std::sort(B.begin(), B.end());
  B.erase(std::unique(B.begin(), B.end()), B.end());

  auto spans_q = [&](const std::vector<Element>& set) {
    return L.join(join_set(L, set), mq) == q;
  };
  if (!spans_q(B)) {
    throw InternalContradiction("candidates below Q do not join to Q");
  }
  for (std::size_t i = B.size(); i-- > 0;) {
    std::vector<Element> without = B;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (spans_q(without)) B = std::move(without);
  }
  return B;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
    case CheckStatus::Exhibit: return "exhibit";
  }
  return "fail";
}

CheckStatus LemmaCheck::status() const {
  if (skipped) return CheckStatus::Skip;
  if (violation_count == 0) return CheckStatus::Pass;
  return hypotheses_hold ? CheckStatus::Fail : CheckStatus::Exhibit;
}

bool LemmaReport::failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const LemmaCheck& c) {
    return c.status() == CheckStatus::Fail;
  });
}

namespace {

constexpr std::size_t kKeptViolations = 8;

LemmaCheck make_check(std::string name, bool hypotheses_hold) {
  LemmaCheck c;
  c.name = std::move(name);
  c.hypotheses_hold = hypotheses_hold;
  return c;
}

void record(LemmaCheck& check, std::vector<Element> tuple) {
  ++check.violation_count;
  if (check.violations.size() < kKeptViolations) {
    check.violations.push_back(std::move(tuple));
  }
}

// Bit i set iff element i is representable as x*a' ∨ b for some a'.
std::vector<bool> absorbed_joins(const Lattice& L, Element x, Element b) {
  std::vector<bool> reach(L.size(), false);
  for (Element a2 = 0; a2 < L.size(); ++a2) reach[L.join(L.mul(x, a2), b)] = true;
  return reach;
}

}  // namespace

LemmaReport lemma_suite(const Lattice& L, const DeltaOptions& opts) {
  LemmaReport report;
  const std::size_t n = L.size();
  const RLatticeCheck r = is_r_lattice(L);
  const DeltaSearch delta = find_delta(L, opts);
  const bool r_lattice = r.holds();
  const bool with_delta = r_lattice && delta.status == DeltaStatus::Found;
  const Spectrum spec = classify_spectrum(L);
  const auto locals = local_data_at_maximals(L, spec);
  const auto P = principal_elements(L);

  std::vector<Element> cancellation;
  for (Element q = 0; q < n; ++q) {
    if (is_cancellation(L, q).cancellation) cancellation.push_back(q);
  }

  {
    LemmaCheck c = make_check("principal-absorption", r_lattice);
    for (Element x : P) {
      for (Element b = 0; b < n; ++b) {
        const auto reach = absorbed_joins(L, x, b);
        const Element xb = L.join(x, b);
        for (Element a = 0; a < n; ++a) {
          if (!L.leq(a, xb)) continue;
          ++c.instances;
          if (!reach[L.join(a, b)]) record(c, {x, a, b});
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck c = make_check("local-agreement", r_lattice);
    for (Element q : cancellation) {
      for (const LocalData& d : locals) {
        const Element mq = L.mul(d.maximal, q);
        for (Element a = 0; a < n; ++a) {
          if (L.join(a, mq) != q) continue;
          ++c.instances;
          if (d.loc.image(q) != d.loc.image(a)) record(c, {q, a, d.maximal});
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck c = make_check("minimal-generating-set", r.principals_generate);
    if (!r.principals_generate) {
      c.skipped = true;
      c.note = "principal elements do not generate";
    } else {
      std::size_t with_cancellation = 0;
      for (Element q = 0; q < n; ++q) {
        for (Element m : spec.maximals) {
          const Element mq = L.mul(m, q);
          if (mq == q) continue;
          ++c.instances;
          if (std::binary_search(cancellation.begin(), cancellation.end(), q) &&
              L.leq(q, m)) {
            ++with_cancellation;
          }
          const auto B = minimal_generating_mod(L, q, m, P);
          bool ok = L.join(join_set(L, B), mq) == q;
          for (std::size_t i = 0; ok && i < B.size(); ++i) {
            if (!L.leq(B[i], q)) ok = false;
            auto without = B;
            without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
            if (L.join(join_set(L, without), mq) == q) ok = false;
          }
          if (!ok) record(c, {q, m});
        }
      }
      c.note = std::to_string(with_cancellation) +
               " instances with Q a cancellation element below m";
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck c = make_check("delta-splitting", with_delta);
    if (!delta.certificate) {
      c.skipped = true;
      c.note = std::string("no delta certificate (") + to_string(delta.status) + ")";
    } else {
      const auto& D = delta.certificate->delta_set;
      for (Element q : cancellation) {
        for (Element x : D) {
          for (Element y : D) {
            const Element xy = L.join(x, y);
            for (Element a = 0; a < n; ++a) {
              if (L.join(xy, a) != q) continue;
              for (Element m : spec.maximals) {
                if (!L.leq(L.mul(m, xy), a)) continue;
                ++c.instances;
                if (L.join(x, a) != q && L.join(y, a) != q) {
                  record(c, {q, x, y, a, m});
                }
              }
            }
          }
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck c = make_check("local-regularity", r_lattice);
    for (Element q : cancellation) {
      for (const LocalData& d : locals) {
        if (!L.leq(q, d.maximal)) continue;
        ++c.instances;
        const Lattice& Lm = d.loc.localized;
        if (Lm.residual(Lm.bottom(), d.loc.image(q)) != Lm.bottom()) {
          record(c, {q, d.maximal});
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck c = make_check("single-generator", with_delta);
    if (!delta.certificate) {
      c.skipped = true;
      c.note = "no delta certificate";
    } else {
      const auto& D = delta.certificate->delta_set;
      for (Element q : cancellation) {
        for (Element m : spec.maximals) {
          if (!L.leq(q, m)) continue;
          ++c.instances;
          if (minimal_generating_mod(L, q, m, D).size() != 1) record(c, {q, m});
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck c = make_check("principal-regular", with_delta);
    for (Element q : cancellation) {
      ++c.instances;
      if (!is_principal(L, q) || L.residual(L.bottom(), q) != L.bottom()) {
        record(c, {q});
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck c = make_check("meet-distributes", with_delta);
    for (Element q : cancellation) {
      for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
          ++c.instances;
          if (L.mul(q, L.meet(a, b)) != L.meet(L.mul(q, a), L.mul(q, b))) {
            record(c, {q, a, b});
          }
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    LemmaCheck transfer = make_check("localization-transfer", with_delta);
    LemmaCheck charact = make_check("localization-characterization", with_delta);
    LemmaCheck inherit = make_check("localization-hypotheses-inherited", with_delta);

    std::map<Element, LocalData> at_prime;
    auto local_at = [&](Element p) -> const LocalData& {
      auto it = at_prime.find(p);
      if (it == at_prime.end()) it = at_prime.emplace(p, local_data(L, p)).first;
      return it->second;
    };

    for (Element p : spec.primes) {
      const LocalizationResult& loc = local_at(p).loc;
      const Lattice& LS = loc.localized;
      const MultSet S = MultSet::complement_of(L, p);

      ++inherit.instances;
      if (!is_r_lattice(LS).holds() ||
          find_delta(LS, opts).status != DeltaStatus::Found) {
        record(inherit, {p});
      }

      for (Element q : cancellation) {
        ++transfer.instances;
        if (!is_cancellation(LS, loc.image(q)).cancellation) record(transfer, {q, p});
      }

      // Primes of L avoiding S, and the maximal ones among them.
      std::vector<Element> avoiding;
      for (Element q : spec.primes) {
        bool avoids = true;
        for (Element s : S.members()) {
          if (L.leq(s, q)) avoids = false;
        }
        if (avoids) avoiding.push_back(q);
      }
      std::vector<Element> top_avoiding;
      for (Element q : avoiding) {
        bool maximal = true;
        for (Element q2 : avoiding) {
          if (L.lt(q, q2)) maximal = false;
        }
        if (maximal) top_avoiding.push_back(q);
      }

      for (Element local_q = 0; local_q < LS.size(); ++local_q) {
        ++charact.instances;
        const Element q = loc.embed[local_q];
        const bool lhs = is_cancellation(LS, local_q).cancellation;
        bool rhs = true;
        for (Element p2 : top_avoiding) {
          const LocalData& d = local_at(p2);
          rhs = rhs && d.regular[d.loc.image(q)];
        }
        if (lhs != rhs) record(charact, {q, p});
      }
    }
    report.checks.push_back(std::move(transfer));
    report.checks.push_back(std::move(charact));
    report.checks.push_back(std::move(inherit));
  }

  return report;
}

}  // namespace mlat
