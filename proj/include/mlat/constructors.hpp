#pragma once

// The verification corpus and the lattice interchange format.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlat/lattice.hpp"

namespace mlat {

/// Ideals of Z_n: divisors of n ascending, "(d)" labelled. (d) <= (e) iff
/// e | d; join = gcd, meet = lcm, (d)(e) = (gcd(de, n)). Throws on n = 0.
Lattice zn_ideal_lattice(std::uint64_t n);

/// x^0 > x^1 > ... > x^k with x^i x^j = x^min(i+j, k).
Lattice chain_mod(std::size_t k);

/// Componentwise tables; element (i, j) has index i * |L2| + j.
Lattice direct_product(const Lattice& L1, const Lattice& L2);

/// The pentagon 0 < a < c < 1', 0 < b < 1' with a new top 1 above 1';
/// every product of two non-top elements is 0.
Lattice pentagon_control();

/// `map[i]` is the image in L2 of element i of L1; true iff it is a bijection
/// preserving order and product.
bool is_isomorphism(const Lattice& L1, const Lattice& L2,
                    std::span<const Element> map);

/// Parses the JSON interchange format: name, elements, leq pairs, mul table,
/// optional bottom/top/provenance. join/meet are derived from leq. Checks
/// structure and that the order is a lattice; axioms are left to validate().
Lattice parse_lattice(std::string_view text);

/// Canonical form: every strict leq pair in lexicographic order, one mul row
/// per line.
std::string serialize_lattice(const Lattice& L);

struct CorpusEntry {
  /// Constructor call that produced the lattice, e.g. "zn_ideal_lattice(12)".
  std::string call;
  Lattice lattice;
};

/// zn(n) for 2 <= n <= zn_max, chain_mod(k) for k <= 12, zn(n) x chain_mod(k)
/// for 2 <= n <= 30 and k <= 4, and the pentagon control.
std::vector<CorpusEntry> build_corpus(std::uint64_t zn_max = 500);

/// JSON manifest listing each corpus entry's call and lattice name.
std::string corpus_manifest(std::span<const CorpusEntry> corpus);

}  // namespace mlat
