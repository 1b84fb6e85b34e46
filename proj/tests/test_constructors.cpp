#include <numeric>

#include "gtest/gtest.h"
#include "mlat/classify.hpp"
#include "mlat/constructors.hpp"
#include "mlat/verify.hpp"
#include "oracles.hpp"

using namespace mlat;

TEST(ZnIdealLattice, Sizes) {
  EXPECT_EQ(zn_ideal_lattice(12).labels(),
            (std::vector<std::string>{"(1)", "(2)", "(3)", "(4)", "(6)", "(12)"}));
  EXPECT_EQ(zn_ideal_lattice(13).size(), 2u);
  EXPECT_EQ(zn_ideal_lattice(1).size(), 1u);
  EXPECT_THROW(zn_ideal_lattice(0), InputError);
  for (std::uint64_t n = 1; n <= 200; ++n) {
    EXPECT_EQ(zn_ideal_lattice(n).size(), oracle::divisors(n).size());
  }
}

TEST(ZnIdealLattice, TablesMatchArithmetic) {
  for (std::uint64_t n : {12u, 60u, 210u, 256u}) {
    const Lattice L = zn_ideal_lattice(n);
    const auto d = oracle::divisors(n);
    for (Element i = 0; i < L.size(); ++i) {
      for (Element j = 0; j < L.size(); ++j) {
        EXPECT_EQ(L.leq(i, j), d[i] % d[j] == 0);
        EXPECT_EQ(d[L.join(i, j)], std::gcd(d[i], d[j]));
        EXPECT_EQ(d[L.meet(i, j)], std::lcm(d[i], d[j]));
        EXPECT_EQ(d[L.mul(i, j)], std::gcd(d[i] * d[j], n));
      }
    }
    EXPECT_EQ(d[L.top()], 1u);
    EXPECT_EQ(d[L.bottom()], n);
  }
}

TEST(ChainMod, Examples) {
  EXPECT_EQ(chain_mod(0).size(), 1u);
  const Lattice C1 = chain_mod(1);
  EXPECT_EQ(C1.size(), 2u);
  EXPECT_EQ(C1.mul(C1.find("x^1"), C1.find("x^1")), C1.bottom());
  const Lattice C3 = chain_mod(3);
  EXPECT_EQ(C3.size(), 4u);
  EXPECT_EQ(C3.mul(C3.find("x^1"), C3.find("x^2")), C3.find("x^3"));
  std::vector<Element> cancel;
  for (const auto& p : profile_all(C3)) {
    if (p.is_cancellation) cancel.push_back(p.element);
  }
  EXPECT_EQ(cancel, std::vector<Element>{C3.top()});
}

TEST(Constructors, OutputsValidateAndAreRLattices) {
  for (std::uint64_t n = 1; n <= 100; ++n) {
    const Lattice L = zn_ideal_lattice(n);
    EXPECT_TRUE(validate(L).passed()) << n;
    EXPECT_TRUE(is_r_lattice(L).holds()) << n;
  }
  for (std::size_t k = 0; k <= 12; ++k) {
    EXPECT_TRUE(validate(chain_mod(k)).passed()) << k;
    EXPECT_TRUE(is_r_lattice(chain_mod(k)).holds()) << k;
  }
  const Lattice P = pentagon_control();
  EXPECT_TRUE(validate(P).passed());
  EXPECT_FALSE(is_r_lattice(P).holds());
  const DeltaStatus d = find_delta(P).status;
  EXPECT_TRUE(d == DeltaStatus::NotFound || d == DeltaStatus::Unknown);
}

TEST(DirectProduct, WithOneElementLatticeIsIsomorphic) {
  for (const Lattice& L : {zn_ideal_lattice(12), chain_mod(3), pentagon_control()}) {
    const Lattice P = direct_product(L, chain_mod(0));
    std::vector<Element> id(L.size());
    std::iota(id.begin(), id.end(), Element{0});
    EXPECT_TRUE(is_isomorphism(L, P, id));
  }
}

TEST(DirectProduct, ChineseRemainderRelabeling) {
  const Lattice A = zn_ideal_lattice(4), B = zn_ideal_lattice(9);
  const Lattice P = direct_product(A, B);
  const Lattice Z = zn_ideal_lattice(36);
  const auto da = oracle::divisors(4), db = oracle::divisors(9);
  std::vector<Element> map(P.size());
  for (Element i = 0; i < A.size(); ++i) {
    for (Element j = 0; j < B.size(); ++j) {
      map[i * B.size() + j] = Z.find("(" + std::to_string(da[i] * db[j]) + ")");
    }
  }
  EXPECT_TRUE(is_isomorphism(P, Z, map));

  // A non-bijective map is rejected.
  std::vector<Element> bad = map;
  bad[1] = bad[0];
  EXPECT_FALSE(is_isomorphism(P, Z, bad));
  // So is a bijection that ignores the order.
  std::vector<Element> swapped = map;
  std::swap(swapped[0], swapped[1]);
  EXPECT_FALSE(is_isomorphism(P, Z, swapped));
}

TEST(DirectProduct, PentagonFactorBreaksModularity) {
  const Lattice L = direct_product(pentagon_control(), zn_ideal_lattice(2));
  EXPECT_TRUE(validate(L).passed());
  EXPECT_TRUE(check_modularity(L).has_value());
}

TEST(DirectProduct, PrimesComeFromComponents) {
  const std::vector<std::pair<Lattice, Lattice>> cases{
      {zn_ideal_lattice(12), chain_mod(2)},
      {zn_ideal_lattice(30), zn_ideal_lattice(4)},
      {chain_mod(1), pentagon_control()}};
  for (const auto& [L1, L2] : cases) {
    const Lattice P = direct_product(L1, L2);
    EXPECT_TRUE(validate(P).passed());
    std::vector<Element> expected;
    for (Element a = 0; a < P.size(); ++a) {
      const Element i = a / L2.size(), j = a % L2.size();
      if ((is_prime(L1, i) && j == L2.top()) || (i == L1.top() && is_prime(L2, j))) {
        expected.push_back(a);
      }
    }
    EXPECT_EQ(classify_spectrum(P).primes, expected) << P.name();
  }
}

TEST(Interchange, RoundTrip) {
  for (const Lattice& L : {zn_ideal_lattice(12), chain_mod(4), pentagon_control(),
                           direct_product(zn_ideal_lattice(6), chain_mod(2))}) {
    const std::string text = serialize_lattice(L);
    const Lattice back = parse_lattice(text);
    EXPECT_EQ(back.tables(), L.tables()) << L.name();
    EXPECT_EQ(serialize_lattice(back), text);
  }
}

TEST(Interchange, ProvenanceSurvives) {
  const Lattice L = zn_ideal_lattice(12);
  LatticeTables t = L.tables();
  t.provenance = Provenance{"zn(12)", {"(1)", "(3)"}};
  const Lattice tagged(t);
  EXPECT_EQ(parse_lattice(serialize_lattice(tagged)).provenance(), t.provenance);
}

TEST(Interchange, MalformedTextIsAnInputError) {
  EXPECT_THROW(parse_lattice("not json"), InputError);
  EXPECT_THROW(parse_lattice("[]"), InputError);
  EXPECT_THROW(parse_lattice(R"({"name": "x", "elements": ["0", "1"], "leq": [[0, 1]],
                                 "mul": [[0, 0]]})"),
               InputError);
  EXPECT_THROW(parse_lattice(R"({"name": "x", "elements": ["0", "0"], "leq": [[0, 1]],
                                 "mul": [[0, 0], [0, 1]]})"),
               InputError);
  EXPECT_THROW(parse_lattice(R"({"name": "x", "elements": ["0", "1"], "leq": [[0, 7]],
                                 "mul": [[0, 0], [0, 1]]})"),
               InputError);
  // Antichain: not a lattice.
  EXPECT_THROW(parse_lattice(R"({"name": "x", "elements": ["a", "b"], "leq": [],
                                 "mul": [[0, 0], [0, 1]]})"),
               InputError);
}

TEST(Interchange, HandWrittenPentagon) {
  // leq must list the whole relation; a cover relation alone is rejected.
  EXPECT_THROW(parse_lattice(R"({"name": "p", "elements": ["0", "a", "c", "1"],
                                 "leq": [[0,1],[1,2],[2,3]],
                                 "mul": [[0,0,0,0],[0,0,0,1],[0,0,0,2],[0,1,2,3]]})"),
               InputError);
  const Lattice P = parse_lattice(R"({
    "name": "pentagon",
    "elements": ["0", "a", "b", "c", "1'", "1"],
    "leq": [[0,1],[0,2],[0,3],[0,4],[0,5],[1,3],[1,4],[1,5],
            [2,4],[2,5],[3,4],[3,5],[4,5]],
    "mul": [[0,0,0,0,0,0],[0,0,0,0,0,1],[0,0,0,0,0,2],
            [0,0,0,0,0,3],[0,0,0,0,0,4],[0,1,2,3,4,5]]
  })");
  EXPECT_TRUE(validate(P).passed());
  std::vector<Element> id(P.size());
  std::iota(id.begin(), id.end(), Element{0});
  EXPECT_TRUE(is_isomorphism(P, pentagon_control(), id));
}

TEST(Corpus, Composition) {
  const auto corpus = build_corpus(40);
  // zn 2..40, 13 chains, 29 x 5 products, pentagon.
  EXPECT_EQ(corpus.size(), 39u + 13u + 145u + 1u);
  EXPECT_EQ(corpus.front().call, "zn_ideal_lattice(2)");
  EXPECT_EQ(corpus.back().lattice.name(), "pentagon_control");
  EXPECT_NE(corpus_manifest(corpus).find("\"chain_mod(12)\""), std::string::npos);
}
