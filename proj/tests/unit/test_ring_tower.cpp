#include <set>

#include <gtest/gtest.h>

#include "mfpm/errors.hpp"
#include "mfpm/ring_tower.hpp"

namespace mfpm {
namespace {

TEST(Gamma, Values) {
  EXPECT_EQ(gamma(1, 7), 1);
  EXPECT_EQ(gamma(2, 2), 3);
  EXPECT_EQ(gamma(3, 4), 9);
  EXPECT_THROW(gamma(0, 1), PreconditionError);
}

TEST(ModRing, CardinalityMatchesEnumeration) {
  for (const auto& spec : {LocalFieldSpec::rationals(3), LocalFieldSpec::cyclotomic(3, 1),
                           LocalFieldSpec::unramified(2, 2), LocalFieldSpec::cyclotomic(2, 2)}) {
    for (int m = 1; m <= 3; ++m) {
      RingPtr r = ModRing::create(spec, m);
      EXPECT_EQ(Integer(static_cast<long>(r->elements().size())), r->cardinality())
          << r->describe();
      EXPECT_EQ(r->gamma(), (m - 1) * r->e() + 1);
    }
  }
  EXPECT_EQ(ModRing::parse("ring p=3 m=2 cyclotomic s=1")->cardinality(), 27);
}

TEST(ModRing, ParseAndDescribeRoundTrip) {
  for (std::string text : {"ring p=3 m=2 cyclotomic s=1", "ring p=5 m=2",
                           "ring p=5 m=1 unramified f=2 poly=2,4,1",
                           "ring p=3 m=2 unramified f=2 poly=2,2,1 cyclotomic s=1"}) {
    EXPECT_EQ(ModRing::parse(text)->describe(), text);
  }
  EXPECT_THROW(ModRing::parse("ring p=4 m=2"), InputError);
  EXPECT_THROW(ModRing::parse("ring p=3 m=1 unramified f=2 poly=2,0,1"), InputError);
  EXPECT_THROW(ModRing::parse("field p=3 m=1"), InputError);
}

TEST(ModRing, ShippedPolynomialsAreIrreducible) {
  for (int64_t p : {2, 3, 5, 7}) {
    for (int f = 2; f <= 4; ++f) {
      auto poly = shipped_unramified_poly(p, f);
      ASSERT_TRUE(poly.has_value());
      EXPECT_TRUE(irreducible_mod_p(*poly, p)) << "p=" << p << " f=" << f;
    }
  }
  EXPECT_FALSE(irreducible_mod_p({1, 0, 1}, 2));  // (x+1)^2
  EXPECT_FALSE(irreducible_mod_p({1, 0, 1}, 5));  // x^2 + 1 has roots 2, 3
  EXPECT_TRUE(irreducible_mod_p({1, 0, 1}, 3));
}

TEST(EmbedBase, HomomorphismAndInjectivity) {
  RingPtr r = ModRing::parse("ring p=3 m=2 cyclotomic s=1");
  EXPECT_TRUE(embed_base(0, 9, r).is_zero());
  EXPECT_TRUE(embed_base(1, 9, r).is_one());
  RingElement three = embed_base(3, 9, r);
  EXPECT_TRUE((three * three).is_zero());
  EXPECT_THROW(embed_base(1, 27, r), PreconditionError);

  for (const auto& spec : {LocalFieldSpec::cyclotomic(3, 1), LocalFieldSpec::cyclotomic(5, 1),
                           LocalFieldSpec::unramified(3, 2)}) {
    for (int m = 1; m <= 3; ++m) {
      RingPtr ring = ModRing::create(spec, m);
      const int64_t pm = ring->working_modulus();
      if (pm > 10000) continue;
      std::set<std::vector<int64_t>> images;
      for (int64_t x = 0; x < pm; ++x) {
        images.insert(embed_base(x, pm, ring).coords());
        for (int64_t y = 0; y < pm; y += 7) {
          EXPECT_EQ(embed_base(x, pm, ring) * embed_base(y, pm, ring),
                    embed_base(x * y % pm, pm, ring));
          EXPECT_EQ(embed_base(x, pm, ring) + embed_base(y, pm, ring),
                    embed_base((x + y) % pm, pm, ring));
        }
        EXPECT_EQ(in_base_subring(embed_base(x, pm, ring)), x);
      }
      EXPECT_EQ(static_cast<int64_t>(images.size()), pm);
    }
  }
}

// Oracle: in Z[zeta_3], v_pi(a + b zeta) = v_3(a^2 - ab + b^2).
int norm_valuation(int64_t a, int64_t b) {
  int64_t n = a * a - a * b + b * b;
  if (n == 0) return 1000;
  int v = 0;
  while (n % 3 == 0) {
    n /= 3;
    ++v;
  }
  return v;
}

TEST(Congruence, CyclotomicThreeValuationsMatchNormOracle) {
  RingPtr r = ModRing::parse("ring p=3 m=2 cyclotomic s=1");
  RingElement pi = r->one() - r->cyclotomic_zeta();
  EXPECT_TRUE(congruent_mod_pm(pi.pow(3), r->zero()));
  EXPECT_FALSE(congruent_mod_pm(pi.pow(2), r->zero()));
  EXPECT_TRUE(congruent_mod_pm(r->one(), r->from_integer(1 + 9)));

  const RingElement zeta = r->cyclotomic_zeta();
  for (int64_t a = -9; a <= 9; ++a) {
    for (int64_t b = -9; b <= 9; ++b) {
      RingElement x = r->from_integer(a) + zeta.scaled(b);
      const int v = norm_valuation(a, b);
      EXPECT_EQ(x.is_zero(), v >= 3) << a << " " << b;
      EXPECT_EQ(x.valuation(), std::min<int64_t>(v, 3)) << a << " " << b;
    }
  }
}

TEST(Teichmuller, BruteForceRoots) {
  auto brute = [](int64_t a, int64_t p, int64_t pm) {
    std::vector<int64_t> hits;
    for (int64_t x = 0; x < pm; ++x) {
      int64_t y = 1;
      for (int64_t i = 0; i < p - 1; ++i) y = y * x % pm;
      if (y == 1 && x % p == a % p) hits.push_back(x);
    }
    return hits;
  };
  EXPECT_EQ(brute(2, 3, 9), std::vector<int64_t>{8});
  EXPECT_EQ(brute(2, 5, 25), std::vector<int64_t>{7});
  EXPECT_EQ(in_base_subring(teichmuller(2, ModRing::integers_mod(3, 2))), 8);
  EXPECT_EQ(in_base_subring(teichmuller(2, ModRing::integers_mod(5, 2))), 7);
  EXPECT_TRUE(teichmuller(1, ModRing::parse("ring p=5 m=3 cyclotomic s=1")).is_one());
  EXPECT_THROW(teichmuller(5, ModRing::integers_mod(5, 2)), PreconditionError);

  for (int64_t p : {3, 5, 7}) {
    RingPtr r = ModRing::create(LocalFieldSpec::cyclotomic(p, 1), 3);
    for (int64_t a = 1; a < p; ++a) {
      EXPECT_TRUE(teichmuller(a, r).pow(static_cast<uint64_t>(p - 1)).is_one());
      EXPECT_EQ(brute(a, p, r->working_modulus()).front(),
                *in_base_subring(teichmuller(a, r)));
      for (int64_t b = 1; b < p; ++b) {
        EXPECT_EQ(teichmuller(a, r) * teichmuller(b, r), teichmuller(a * b % p, r));
      }
    }
  }
}

TEST(InBaseSubring, ZetaThree) {
  RingPtr r2 = ModRing::parse("ring p=3 m=2 cyclotomic s=1");
  EXPECT_FALSE(in_base_subring(r2->cyclotomic_zeta()).has_value());
  EXPECT_EQ(in_base_subring(r2->from_integer(5)), 5);
  RingPtr r1 = ModRing::parse("ring p=3 m=1 cyclotomic s=1");
  EXPECT_EQ(in_base_subring(r1->cyclotomic_zeta()), 1);

  std::set<std::vector<int64_t>> image;
  int in_base = 0;
  for (const auto& x : r2->elements()) {
    if (in_base_subring(x)) ++in_base;
  }
  for (int64_t x = 0; x < 9; ++x) image.insert(r2->from_integer(x).coords());
  EXPECT_EQ(r2->elements().size(), 27u);
  EXPECT_EQ(image.size(), 9u);
  EXPECT_EQ(in_base, 9);
}

TEST(Tower, CyclotomicInclusionIsInjectiveHomomorphism) {
  for (int m = 1; m <= 2; ++m) {
    RingPtr k = ModRing::create(LocalFieldSpec::cyclotomic(3, 1), m);
    RingPtr l = ModRing::create(LocalFieldSpec::cyclotomic(3, 2), m);
    const auto elems = k->elements();
    std::set<std::vector<int64_t>> images;
    for (const auto& x : elems) {
      images.insert(embed_into(x, l).coords());
      for (const auto& y : elems) {
        EXPECT_EQ(embed_into(x * y, l), embed_into(x, l) * embed_into(y, l));
        EXPECT_EQ(embed_into(x + y, l), embed_into(x, l) + embed_into(y, l));
      }
    }
    EXPECT_EQ(images.size(), elems.size());
    EXPECT_TRUE(embed_into(k->one(), l).is_one());
  }
  RingPtr base = ModRing::integers_mod(5, 2);
  RingPtr cyc = ModRing::create(LocalFieldSpec::cyclotomic(5, 1), 2);
  for (const auto& x : base->elements()) {
    EXPECT_EQ(embed_into(x, cyc), cyc->from_integer(x.coords()[0]));
  }
}

TEST(RootOfUnity, OrdersAreExact) {
  RingPtr r = ModRing::create(LocalFieldSpec::compositum(3, 2, {}, 1), 2);
  for (int64_t n : {1, 2, 3, 4, 6, 8, 12, 24}) {
    auto z = r->root_of_unity(n);
    ASSERT_TRUE(z.has_value()) << n;
    EXPECT_TRUE(z->pow(static_cast<uint64_t>(n)).is_one());
    for (auto [l, k] : arith::factor(n)) {
      EXPECT_FALSE(z->pow(static_cast<uint64_t>(n / l)).is_one()) << n;
    }
  }
  EXPECT_FALSE(r->root_of_unity(5).has_value());
  EXPECT_FALSE(r->root_of_unity(9).has_value());
  EXPECT_TRUE(ModRing::integers_mod(2, 3)->root_of_unity(2).has_value());
}

TEST(ChainRing, DivisionAndRemainderByPiPowers) {
  for (std::string text : {"ring p=3 m=3 cyclotomic s=1", "ring p=2 m=2 cyclotomic s=3",
                           "ring p=5 m=2", "ring p=3 m=2 unramified f=2 cyclotomic s=1"}) {
    RingPtr r = ModRing::parse(text);
    const auto elems = r->elements();
    const std::size_t stride = std::max<std::size_t>(1, elems.size() / 200);
    for (std::size_t i = 0; i < elems.size(); i += stride) {
      const RingElement& a = elems[i];
      const int64_t v = a.valuation();
      if (v < r->gamma()) {
        const RingElement t = a.divide_by_pi_power(v);
        EXPECT_EQ(r->pi_power(v) * t, a) << text << " " << a.to_string();
        EXPECT_TRUE(t.is_unit());
        if (a.is_unit()) EXPECT_TRUE((a * a.inverse()).is_one());
      }
      for (int64_t k = 0; k <= r->gamma(); ++k) {
        const RingElement rem = a.remainder_mod_pi_power(k);
        EXPECT_GE((a - rem).valuation(), k);
        EXPECT_EQ(rem.remainder_mod_pi_power(k), rem);
      }
    }
    EXPECT_EQ(r->residues_mod_pi_power(1).size(),
              static_cast<std::size_t>(arith::ipow(r->p(), r->f())));
  }
}

TEST(RingElement, MixedParentsRejected) {
  RingPtr a = ModRing::integers_mod(3, 2);
  RingPtr b = ModRing::integers_mod(3, 3);
  EXPECT_THROW(a->one() + b->one(), RingMismatchError);
  EXPECT_THROW(congruent_mod_pm(a->one(), b->one()), RingMismatchError);
  // Structurally equal rings are interchangeable.
  EXPECT_EQ(a->one(), ModRing::integers_mod(3, 2)->one());
}

}  // namespace
}  // namespace mfpm
