#include <gtest/gtest.h>

#include "mfpm/errors.hpp"
#include "mfpm/nebentypus.hpp"

using namespace mfpm;

namespace {

const std::string kFixtures = MFPM_FIXTURE_DIR;

// chi(a) as an element of Q/Z.
Rational angle(const DirichletCharacter& chi, int64_t a) {
  Rational x(*chi.log_value(a), chi.order());
  x.canonicalize();
  return x;
}

Rational frac(Rational x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  x -= fl;
  return x;
}

std::vector<DirichletCharacter> all_characters(int64_t modulus) {
  auto gens = DirichletCharacter::standard_generators(modulus);
  std::vector<DirichletCharacter> out;
  std::vector<int64_t> e(gens.size(), 0);
  while (true) {
    out.push_back(DirichletCharacter::from_exponents(modulus, e));
    std::size_t k = 0;
    while (k < e.size() && ++e[k] == gens[k].order) e[k++] = 0;
    if (k == e.size()) break;
  }
  return out;
}

}  // namespace

TEST(Decompose, Examples) {
  auto t = decompose_character(DirichletCharacter::trivial(63), 3);
  EXPECT_TRUE(t.psi.is_trivial());
  EXPECT_EQ(t.teichmuller_exponent, 0);
  EXPECT_TRUE(t.eta.is_trivial());
  EXPECT_EQ(t.s, 0);
  EXPECT_EQ(t.level_prime_to_p, 7);
  EXPECT_EQ(t.r, 2);

  // (Z/9)^x is cyclic of order 6 generated by 2.
  auto order3 = decompose_character(DirichletCharacter::from_exponents(9, {2}), 3);
  EXPECT_TRUE(order3.psi.is_trivial());
  EXPECT_EQ(order3.teichmuller_exponent, 0);
  EXPECT_EQ(order3.eta.order(), 3);
  EXPECT_EQ(order3.s, 1);
  auto order2 = decompose_character(DirichletCharacter::from_exponents(9, {3}), 3);
  EXPECT_EQ(order2.teichmuller_exponent, 1);
  EXPECT_TRUE(order2.eta.is_trivial());

  EXPECT_THROW(decompose_character(DirichletCharacter::trivial(8), 2), PreconditionError);
  EXPECT_THROW(decompose_character(DirichletCharacter::trivial(9), 9), InputError);
}

TEST(Decompose, RoundTripOnAllUnits) {
  for (auto [modulus, p] : {std::pair<int64_t, int64_t>{9, 3}, {27, 3}, {45, 3}, {63, 3}, {81, 3}, {100, 5},
                            {125, 5}, {75, 5}, {99, 3}, {49, 7}, {7 * 36, 3}, {13 * 25, 5}}) {
    for (const auto& chi : all_characters(modulus)) {
      auto d = decompose_character(chi, p);
      const int64_t q = arith::ipow(p, d.r);
      EXPECT_EQ(d.level_prime_to_p * q, modulus);
      EXPECT_EQ(arith::gcd(d.level_prime_to_p, p), 1);
      const auto omega = teichmuller_character(p, d.r);
      for (int64_t a = 1; a < modulus; ++a) {
        if (arith::gcd(a, modulus) != 1) continue;
        Rational sum = angle(d.psi, a % d.level_prime_to_p) + angle(d.eta, a % q) +
                       angle(omega, a % q) * d.teichmuller_exponent;
        EXPECT_EQ(frac(sum), frac(angle(chi, a))) << chi.to_string() << " a=" << a;
      }
      EXPECT_EQ(arith::ipow(p, d.s), d.eta.order());
      EXPECT_LT(d.teichmuller_exponent, p - 1);
    }
  }
}

TEST(Decompose, TeichmullerValues) {
  for (int64_t p : {3, 5, 7, 11}) {
    auto ring = ModRing::integers_mod(p, 3);
    for (int r : {1, 2}) {
      auto omega = teichmuller_character(p, r);
      const int64_t q = arith::ipow(p, r);
      for (int64_t a = 1; a < q; ++a) {
        if (a % p == 0) continue;
        EXPECT_EQ(omega.value(a, ring), teichmuller(a % p, ring)) << p << " " << a;
      }
    }
  }
}

TEST(Obstruction, ShortcutAgreesWithMaterializedTest) {
  for (int64_t p : {3, 5}) {
    for (int s : {1, 2}) {
      // eta of order p^s on (Z/p^(s+1))^x, generator order (p-1) p^s
      const int64_t q = arith::ipow(p, s + 1);
      auto eta = DirichletCharacter::from_exponents(q, {p - 1});
      auto d = decompose_character(eta, p);
      ASSERT_EQ(d.s, s);
      for (int64_t m : {1, 2, 3}) {
        auto v = obstruction_check(d, m);
        EXPECT_EQ(v.blocked, m >= 2) << p << " " << s << " " << m;
        EXPECT_EQ(v.blocked, v.shortcut);
      }
    }
    auto trivial = decompose_character(DirichletCharacter::from_exponents(p * p, {(p - 1) / 2 * p}), p);
    for (int64_t m : {1, 2, 3}) EXPECT_FALSE(obstruction_check(trivial, m).blocked);
  }
  auto d = decompose_character(DirichletCharacter::from_exponents(9, {2}), 3);
  auto blocked = obstruction_check(d, 2);
  EXPECT_TRUE(blocked.blocked);
  EXPECT_EQ(blocked.ambient_size, 27);
  EXPECT_EQ(blocked.base_image_size, 9);
  auto open = obstruction_check(d, 1);
  EXPECT_FALSE(open.blocked);
  EXPECT_EQ(open.ambient_size, 3);
}

TEST(DetData, ValuesAndStrokeConsistency) {
  auto z9 = ModRing::integers_mod(3, 2);
  EigenSystem e{1, 1, z9, {{1, z9->one()}}, "weak"};
  EXPECT_EQ(det_data(e, 2, DirichletCharacter::trivial(52), 5).value, z9->from_integer(5));
  EXPECT_EQ(det_data(e, 4, DirichletCharacter::trivial(52), 53).value, z9->from_integer(53 * 53 * 53));
  EXPECT_THROW(det_data(e, 2, DirichletCharacter::trivial(52), 13), PreconditionError);
  EXPECT_THROW(det_data(e, 2, DirichletCharacter::trivial(52), 9), PreconditionError);

  auto s = SpaceBasis::from_file(read_space_file(kFixtures + "/S_2_G0_52.basis"));
  auto forms = read_space_file(kFixtures + "/newforms_26_52.forms").integer_rows();
  auto gt = read_space_file(kFixtures + "/gtilde_52.forms").integer_rows().at(0);
  for (const auto& fq : {forms[0], gt}) {
    auto f = reduce_form(s, *s->coordinates_of(fq), z9);
    auto sys = *is_weak_eigenform(f, 52, 14);
    // [ell] needs ell^2 * 14 coefficients out of 600
    for (int64_t ell : {3, 5}) {
      auto dd = det_data(sys, 2, DirichletCharacter::trivial(52), ell, f);
      ASSERT_TRUE(dd.consistent);
      EXPECT_TRUE(*dd.consistent) << ell;
      EXPECT_EQ(*dd.stroke_eigenvalue, z9->from_integer(ell * ell));
    }
  }
  auto s26 = SpaceBasis::from_file(read_space_file(kFixtures + "/S_2_G0_26.basis"));
  for (std::size_t i : {1u, 2u}) {
    auto fq = forms[i];
    fq.set_level(26);
    auto f = reduce_form(s26, *s26->coordinates_of(fq), z9);
    auto sys = *is_weak_eigenform(f, 26, 7);
    for (int64_t ell : {3, 5, 7}) {
      auto dd = det_data(sys, 2, DirichletCharacter::trivial(26), ell, f);
      EXPECT_TRUE(*dd.consistent) << ell;
    }
    EXPECT_THROW(det_data(sys, 2, DirichletCharacter::trivial(26), 11, f), TruncationError);
  }
  auto f = reduce_form(s, *s->coordinates_of(forms[0]), z9);
  auto dd = det_data(*is_weak_eigenform(f, 52, 14), 2, DirichletCharacter::trivial(52), 3, f);
  EXPECT_EQ(dd.value, z9->from_integer(3));
  EXPECT_EQ(*dd.stroke_eigenvalue, z9->zero());
}
