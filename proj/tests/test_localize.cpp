#include <numeric>

#include "gtest/gtest.h"
#include "mlat/classify.hpp"
#include "mlat/constructors.hpp"
#include "mlat/localize.hpp"
#include "oracles.hpp"

using namespace mlat;

namespace {

MultSet mset(const Lattice& L, std::initializer_list<const char*> labels) {
  std::vector<Element> m;
  for (const char* l : labels) m.push_back(L.find(l));
  return MultSet(L, m);
}

std::vector<std::string> carrier(const LocalizationResult& r) {
  return r.localized.labels();
}

std::vector<Lattice> sample_lattices() {
  std::vector<Lattice> out;
  for (std::uint64_t n : {2u, 12u, 30u, 72u, 180u}) out.push_back(zn_ideal_lattice(n));
  for (std::size_t k : {0u, 2u, 5u}) out.push_back(chain_mod(k));
  out.push_back(direct_product(zn_ideal_lattice(12), chain_mod(2)));
  out.push_back(pentagon_control());
  return out;
}

}  // namespace

TEST(MultSet, ChecksClosureAndAddsTop) {
  const Lattice L = zn_ideal_lattice(12);
  const MultSet s = mset(L, {"(3)"});
  EXPECT_TRUE(s.contains(L.top()));
  EXPECT_EQ(s.members().size(), 2u);
  // (2)(2) = (4) is missing.
  EXPECT_THROW(mset(L, {"(2)"}), InputError);
}

TEST(Closure, Examples) {
  const Lattice L = zn_ideal_lattice(12);
  const MultSet top_only(L, {});
  for (Element a = 0; a < L.size(); ++a) EXPECT_EQ(closure(L, a, top_only), a);
  const MultSet S = mset(L, {"(1)", "(3)"});
  EXPECT_EQ(L.label(closure(L, L.find("(6)"), S)), "(2)");
  EXPECT_EQ(L.label(closure(L, L.find("(12)"), S)), "(4)");
}

TEST(Closure, MatchesDivisorOracle) {
  // a_S = gcd over s of a / gcd(a, s).
  for (std::uint64_t n : {12u, 36u, 60u, 360u}) {
    const Lattice L = zn_ideal_lattice(n);
    const auto divs = oracle::divisors(n);
    for (Element p : classify_spectrum(L).primes) {
      const MultSet S = MultSet::complement_of(L, p);
      for (Element a = 0; a < L.size(); ++a) {
        std::uint64_t g = 0;
        for (Element s : S.members()) g = std::gcd(g, oracle::zn_residual(divs[a], divs[s]));
        EXPECT_EQ(L.label(closure(L, a, S)), "(" + std::to_string(g) + ")");
      }
    }
  }
}

TEST(Closure, IsExtensiveMonotoneIdempotent) {
  for (const Lattice& L : sample_lattices()) {
    for (Element p : classify_spectrum(L).primes) {
      const MultSet S = MultSet::complement_of(L, p);
      for (Element a = 0; a < L.size(); ++a) {
        const Element ca = closure(L, a, S);
        EXPECT_TRUE(L.leq(a, ca));
        EXPECT_EQ(closure(L, ca, S), ca);
        for (Element b = 0; b < L.size(); ++b) {
          if (L.leq(a, b)) EXPECT_TRUE(L.leq(ca, closure(L, b, S)));
        }
      }
    }
  }
}

TEST(BuildLocalization, Zn12Examples) {
  const Lattice L = zn_ideal_lattice(12);
  const auto at2 = build_localization(L, mset(L, {"(1)", "(3)"}));
  EXPECT_EQ(carrier(at2), (std::vector<std::string>{"(1)", "(2)", "(4)"}));
  EXPECT_EQ(at2.localized.label(at2.localized.bottom()), "(4)");
  EXPECT_TRUE(validate(at2.localized).passed());

  const auto at3 = build_localization(L, mset(L, {"(1)", "(2)", "(4)"}));
  EXPECT_EQ(carrier(at3), (std::vector<std::string>{"(1)", "(3)"}));
  ASSERT_TRUE(at3.localized.provenance().has_value());
  EXPECT_EQ(at3.localized.provenance()->parent, "zn(12)");
  EXPECT_EQ(at3.localized.provenance()->multiplicative_set,
            (std::vector<std::string>{"(1)", "(2)", "(4)"}));
}

TEST(BuildLocalization, TrivialSetIsIdentity) {
  for (const Lattice& L : sample_lattices()) {
    const auto r = build_localization(L, MultSet(L, {}));
    std::vector<Element> id(L.size());
    std::iota(id.begin(), id.end(), Element{0});
    EXPECT_EQ(r.project, id);
    EXPECT_TRUE(is_isomorphism(L, r.localized, id));
  }
}

TEST(BuildLocalization, LocalBottomIsTheClosureOfTheParentBottom) {
  // Regression: reusing the parent bottom would make (12) the local zero.
  const Lattice L = zn_ideal_lattice(12);
  const auto r = localize_at_prime(L, L.find("(2)"));
  EXPECT_EQ(r.embed[r.localized.bottom()], L.find("(4)"));
  EXPECT_NE(r.embed[r.localized.bottom()], L.bottom());
  const Lattice& Lm = r.localized;
  // Locally (2)(2) = (4) is zero, so (0 : (2)) = (2).
  EXPECT_EQ(Lm.residual(Lm.bottom(), Lm.find("(2)")), Lm.find("(2)"));
}

TEST(LocalizeAtPrime, Examples) {
  const Lattice L = zn_ideal_lattice(12);
  EXPECT_EQ(carrier(localize_at_prime(L, L.find("(2)"))),
            (std::vector<std::string>{"(1)", "(2)", "(4)"}));
  EXPECT_EQ(carrier(localize_at_prime(L, L.find("(3)"))),
            (std::vector<std::string>{"(1)", "(3)"}));
  EXPECT_THROW(localize_at_prime(L, L.find("(6)")), InputError);
  EXPECT_THROW(localize_at_prime(L, L.top()), InputError);

  for (std::size_t k = 1; k <= 6; ++k) {
    const Lattice C = chain_mod(k);
    const auto r = localize_at_prime(C, C.find("x^1"));
    EXPECT_EQ(r.localized.size(), C.size());
    EXPECT_TRUE(is_isomorphism(C, r.localized, r.project));
  }
}

TEST(LocalizeAtPrime, ZnLocalizesToThePrimaryComponent) {
  // zn(n) at (p) is the chain (1) > (p) > ... > (p^k) with p^k || n.
  for (std::uint64_t n = 2; n <= 300; ++n) {
    const Lattice L = zn_ideal_lattice(n);
    for (Element p : classify_spectrum(L).primes) {
      const std::uint64_t prime = oracle::divisors(n)[p];
      std::vector<std::string> expected;
      for (std::uint64_t q = 1; n % q == 0; q *= prime) {
        expected.push_back("(" + std::to_string(q) + ")");
      }
      EXPECT_EQ(carrier(localize_at_prime(L, p)), expected) << n;
    }
  }
}

TEST(EqualLocally, Examples) {
  const Lattice L = zn_ideal_lattice(12);
  EXPECT_TRUE(equal_locally(L, L.find("(6)"), L.find("(6)")));
  EXPECT_EQ(distinguishing_maximal(L, L.find("(2)"), L.find("(4)")), L.find("(2)"));
  // (3) and (12) agree at (3) but differ at (2): (1) vs (4).
  EXPECT_EQ(distinguishing_maximal(L, L.find("(3)"), L.find("(12)")), L.find("(2)"));
}

TEST(LocalizationProperties, HoldOnSampleLattices) {
  for (const Lattice& L : sample_lattices()) {
    SCOPED_TRACE(L.name());
    const Spectrum spec = classify_spectrum(L);
    for (Element a = 0; a < L.size(); ++a) {
      for (Element b = 0; b < L.size(); ++b) {
        EXPECT_EQ(equal_locally(L, a, b), a == b);
      }
    }
    for (Element p : spec.primes) {
      const MultSet S = MultSet::complement_of(L, p);
      const auto r = build_localization(L, S);
      const Lattice& LS = r.localized;
      EXPECT_EQ(r.image(L.top()), LS.top());
      for (Element i = 0; i < LS.size(); ++i) EXPECT_EQ(r.image(r.embed[i]), i);
      for (Element a = 0; a < L.size(); ++a) {
        for (Element b = 0; b < L.size(); ++b) {
          EXPECT_EQ(r.image(L.mul(a, b)), LS.mul(r.image(a), r.image(b)));
          EXPECT_EQ(r.image(L.residual(a, b)), LS.residual(r.image(a), r.image(b)));
          if (L.leq(a, b)) EXPECT_TRUE(LS.leq(r.image(a), r.image(b)));
        }
      }

      // Maximal elements of L_S are the maximal primes of L avoiding S.
      std::vector<Element> avoiding, expected;
      for (Element q : spec.primes) {
        bool avoids = true;
        for (Element s : S.members()) avoids = avoids && !L.leq(s, q);
        if (avoids) avoiding.push_back(q);
      }
      for (Element q : avoiding) {
        bool maximal = true;
        for (Element q2 : avoiding) maximal = maximal && !L.lt(q, q2);
        if (maximal) expected.push_back(q);
      }
      std::vector<Element> got;
      for (Element m : classify_spectrum(LS).maximals) got.push_back(r.embed[m]);
      EXPECT_EQ(got, expected);
    }

    std::vector<LocalizationResult> locals;
    for (Element m : spec.maximals) locals.push_back(localize_at_prime(L, m));
    for (Element x = 0; x < L.size(); ++x) {
      bool locally = true;
      for (const auto& r : locals) locally = locally && is_principal(r.localized, r.image(x));
      EXPECT_EQ(is_principal(L, x), locally) << L.label(x);
    }
  }
}
