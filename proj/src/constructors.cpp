#include "mlat/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace mlat {

Lattice zn_ideal_lattice(std::uint64_t n) {
  if (n == 0) throw InputError("zn_ideal_lattice: n must be positive");
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    divisors.push_back(d);
    if (d != n / d) divisors.push_back(n / d);
  }
  std::sort(divisors.begin(), divisors.end());
  const std::size_t k = divisors.size();
  auto index_of = [&](std::uint64_t d) {
    return static_cast<Element>(
        std::lower_bound(divisors.begin(), divisors.end(), d) - divisors.begin());
  };

  LatticeTables t;
  t.name = "zn(" + std::to_string(n) + ")";
  t.leq.assign(k, std::vector<bool>(k));
  t.join.assign(k, std::vector<Element>(k));
  t.meet.assign(k, std::vector<Element>(k));
  t.mul.assign(k, std::vector<Element>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t d = divisors[i];
    t.names.push_back("(" + std::to_string(d) + ")");
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint64_t e = divisors[j];
      t.leq[i][j] = d % e == 0;
      t.join[i][j] = index_of(std::gcd(d, e));
      t.meet[i][j] = index_of(std::lcm(d, e));
      // d, e | n: gcd(d*e, n) = d * gcd(e, n/d) avoids overflow.
      t.mul[i][j] = index_of(d * std::gcd(e, n / d));
    }
  }
  t.top = index_of(1);
  t.bottom = index_of(n);
  return Lattice(std::move(t));
}

Lattice chain_mod(std::size_t k) {
  const std::size_t size = k + 1;
  LatticeTables t;
  t.name = "chain_mod(" + std::to_string(k) + ")";
  t.leq.assign(size, std::vector<bool>(size));
  t.join.assign(size, std::vector<Element>(size));
  t.meet.assign(size, std::vector<Element>(size));
  t.mul.assign(size, std::vector<Element>(size));
  for (Element i = 0; i < size; ++i) {
    t.names.push_back("x^" + std::to_string(i));
    for (Element j = 0; j < size; ++j) {
      t.leq[i][j] = i >= j;
      t.join[i][j] = std::min(i, j);
      t.meet[i][j] = std::max(i, j);
      t.mul[i][j] = std::min(i + j, k);
    }
  }
  t.top = 0;
  t.bottom = k;
  return Lattice(std::move(t));
}

Lattice direct_product(const Lattice& L1, const Lattice& L2) {
  const std::size_t n1 = L1.size(), n2 = L2.size(), n = n1 * n2;
  auto idx = [n2](Element i, Element j) { return i * n2 + j; };
  LatticeTables t;
  t.name = L1.name() + " x " + L2.name();
  t.leq.assign(n, std::vector<bool>(n));
  t.join.assign(n, std::vector<Element>(n));
  t.meet.assign(n, std::vector<Element>(n));
  t.mul.assign(n, std::vector<Element>(n));
  for (Element a1 = 0; a1 < n1; ++a1) {
    for (Element a2 = 0; a2 < n2; ++a2) {
      const Element a = idx(a1, a2);
      t.names.push_back("<" + L1.label(a1) + "," + L2.label(a2) + ">");
      for (Element b1 = 0; b1 < n1; ++b1) {
        for (Element b2 = 0; b2 < n2; ++b2) {
          const Element b = idx(b1, b2);
          t.leq[a][b] = L1.leq(a1, b1) && L2.leq(a2, b2);
          t.join[a][b] = idx(L1.join(a1, b1), L2.join(a2, b2));
          t.meet[a][b] = idx(L1.meet(a1, b1), L2.meet(a2, b2));
          t.mul[a][b] = idx(L1.mul(a1, b1), L2.mul(a2, b2));
        }
      }
    }
  }
  t.bottom = idx(L1.bottom(), L2.bottom());
  t.top = idx(L1.top(), L2.top());
  return Lattice(std::move(t));
}

Lattice pentagon_control() {
  enum : Element { kZero, kA, kB, kC, kOnePrime, kTop };
  std::vector<std::pair<Element, Element>> leq;
  for (Element x = kA; x <= kTop; ++x) leq.emplace_back(kZero, x);
  leq.insert(leq.end(), {{kA, kC}, {kA, kOnePrime}, {kC, kOnePrime}, {kB, kOnePrime}});
  for (Element x = kZero; x < kTop; ++x) leq.emplace_back(x, kTop);

  Table<Element> mul(6, std::vector<Element>(6, kZero));
  for (Element x = 0; x < 6; ++x) {
    mul[x][kTop] = x;
    mul[kTop][x] = x;
  }
  return Lattice::from_order("pentagon_control", {"0", "a", "b", "c", "1'", "1"},
                             leq, std::move(mul));
}

bool is_isomorphism(const Lattice& L1, const Lattice& L2,
                    std::span<const Element> map) {
  const std::size_t n = L1.size();
  if (L2.size() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Element e : map) {
    if (e >= n || hit[e]) return false;
    hit[e] = true;
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (L1.leq(a, b) != L2.leq(map[a], map[b])) return false;
      if (map[L1.mul(a, b)] != L2.mul(map[a], map[b])) return false;
    }
  }
  return true;
}

namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + key + "' must be " + what);
  }
}

}  // namespace

Lattice parse_lattice(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed lattice text: ") + e.what());
  }
  if (!j.is_object()) throw InputError("lattice text must be a JSON object");

  auto name = field<std::string>(j, "name", "a string");
  auto elements = field<std::vector<std::string>>(j, "elements", "an array of strings");
  auto pairs = field<std::vector<std::vector<long long>>>(j, "leq", "an array of [i,j] pairs");
  auto mul_raw = field<std::vector<std::vector<long long>>>(j, "mul", "an array of index rows");

  const std::size_t n = elements.size();
  {
    auto sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InputError("duplicate element label");
    }
  }
  std::vector<std::pair<Element, Element>> leq;
  for (const auto& p : pairs) {
    if (p.size() != 2 || p[0] < 0 || p[1] < 0) {
      throw InputError("leq entries must be pairs of nonnegative indices");
    }
    leq.emplace_back(static_cast<Element>(p[0]), static_cast<Element>(p[1]));
  }
  if (mul_raw.size() != n) {
    throw InputError("mul has " + std::to_string(mul_raw.size()) + " rows, expected " +
                     std::to_string(n));
  }
  Table<Element> mul(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (mul_raw[i].size() != n) {
      throw InputError("mul row " + std::to_string(i) + " has " +
                       std::to_string(mul_raw[i].size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (long long v : mul_raw[i]) {
      if (v < 0 || static_cast<std::size_t>(v) >= n) {
        throw InputError("mul entry " + std::to_string(v) + " out of range");
      }
      mul[i].push_back(static_cast<Element>(v));
    }
  }
  std::optional<Element> bottom, top;
  if (j.contains("bottom")) bottom = field<Element>(j, "bottom", "an index");
  if (j.contains("top")) top = field<Element>(j, "top", "an index");

  Lattice L = Lattice::from_order(std::move(name), std::move(elements), leq,
                                  std::move(mul), bottom, top);
  if (j.contains("provenance")) {
    const json& p = j.at("provenance");
    if (!p.is_object()) throw InputError("provenance must be an object");
    LatticeTables t = L.tables();
    t.provenance = Provenance{
        field<std::string>(p, "parent", "a string"),
        field<std::vector<std::string>>(p, "multiplicative_set", "an array of strings")};
    return Lattice(std::move(t));
  }
  return L;
}

std::string serialize_lattice(const Lattice& L) {
  auto str = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream out;
  out << "{\n  \"name\": " << str(L.name()) << ",\n  \"elements\": [";
  for (Element i = 0; i < L.size(); ++i) out << (i ? ", " : "") << str(L.label(i));
  out << "],\n  \"bottom\": " << L.bottom() << ",\n  \"top\": " << L.top()
      << ",\n  \"leq\": [";
  bool first = true;
  for (Element i = 0; i < L.size(); ++i) {
    for (Element j = 0; j < L.size(); ++j) {
      if (i == j || !L.leq(i, j)) continue;
      out << (first ? "" : ", ") << "[" << i << "," << j << "]";
      first = false;
    }
  }
  out << "],\n  \"mul\": [\n";
  for (Element i = 0; i < L.size(); ++i) {
    out << "    [";
    for (Element j = 0; j < L.size(); ++j) out << (j ? "," : "") << L.mul(i, j);
    out << "]" << (i + 1 < L.size() ? "," : "") << "\n";
  }
  out << "  ]";
  if (const auto& p = L.provenance()) {
    out << ",\n  \"provenance\": {\"parent\": " << str(p->parent)
        << ", \"multiplicative_set\": [";
    for (std::size_t i = 0; i < p->multiplicative_set.size(); ++i) {
      out << (i ? ", " : "") << str(p->multiplicative_set[i]);
    }
    out << "]}";
  }
  out << "\n}\n";
  return out.str();
}

std::vector<CorpusEntry> build_corpus(std::uint64_t zn_max) {
  std::vector<CorpusEntry> corpus;
  for (std::uint64_t n = 2; n <= zn_max; ++n) {
    corpus.push_back({"zn_ideal_lattice(" + std::to_string(n) + ")", zn_ideal_lattice(n)});
  }
  for (std::size_t k = 0; k <= 12; ++k) {
    corpus.push_back({"chain_mod(" + std::to_string(k) + ")", chain_mod(k)});
  }
  for (std::uint64_t n = 2; n <= 30; ++n) {
    const Lattice zn = zn_ideal_lattice(n);
    for (std::size_t k = 0; k <= 4; ++k) {
      corpus.push_back({"direct_product(zn_ideal_lattice(" + std::to_string(n) +
                            "), chain_mod(" + std::to_string(k) + "))",
                        direct_product(zn, chain_mod(k))});
    }
  }
  corpus.push_back({"pentagon_control()", pentagon_control()});
  return corpus;
}

std::string corpus_manifest(std::span<const CorpusEntry> corpus) {
  json entries = json::array();
  for (const auto& e : corpus) {
    entries.push_back({{"call", e.call}, {"name", e.lattice.name()},
                       {"size", e.lattice.size()}});
  }
  return json{{"corpus", entries}}.dump(2) + "\n";
}

}  // namespace mlat
