#include <gtest/gtest.h>

#include <random>

#include "mfpm/divided_congruence.hpp"

using namespace mfpm;

namespace {

const std::string kFixtures = MFPM_FIXTURE_DIR;

IntQExpansion form(const std::string& file, std::size_t i) {
  return read_space_file(kFixtures + "/" + file).integer_rows().at(i);
}

IntQExpansion truncate(const IntQExpansion& f, int64_t b) { return f.truncated(b); }

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer sigma(int64_t n, int k) {
  Integer s = 0;
  for (int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += arith::ipow(Integer(d), k);
  }
  return s;
}

IntQExpansion with_level(IntQExpansion f, int64_t level) {
  f.set_level(level);
  f.set_character(DirichletCharacter::trivial(level));
  return f;
}

}  // namespace

TEST(Bernoulli, RecurrenceIdentity) {
  auto b = bernoulli_numbers(40);
  EXPECT_EQ(b[0], 1);
  EXPECT_EQ(b[1], Rational(-1, 2));
  EXPECT_EQ(b[4], Rational(-1, 30));
  EXPECT_EQ(b[6], Rational(1, 42));
  EXPECT_EQ(b[12], Rational(-691, 2730));
  // sum_{j<=n} C(n+1, j) B_j = 0 for n >= 1
  for (int n = 1; n < 40; ++n) {
    Rational s = 0;
    for (int j = 0; j <= n; ++j) s += Rational(binomial(n + 1, j)) * b[j];
    EXPECT_EQ(s, 0) << n;
  }
  for (int n = 3; n <= 40; n += 2) EXPECT_EQ(b[n], 0);
}

TEST(Eisenstein, ClassicalNormalizations) {
  auto e4 = eisenstein_series(5, 30);
  auto e6 = eisenstein_series(7, 30);
  EXPECT_EQ(e4[0], 1);
  EXPECT_EQ(e4[1], 240);
  EXPECT_EQ(e6[1], -504);
  for (int n = 1; n <= 30; ++n) {
    EXPECT_EQ(e4[n], 240 * sigma(n, 3));
    EXPECT_EQ(e6[n], -504 * sigma(n, 5));
  }
  EXPECT_EQ(eisenstein_series(11, 5)[1], -264);
  EXPECT_EQ(e4.weight(), 4);
  EXPECT_THROW(eisenstein_series(3, 10), PreconditionError);
  EXPECT_THROW(eisenstein_series(13, 10), PreconditionError);  // 65520/691
  EXPECT_THROW(eisenstein_series_weight(5, 10), PreconditionError);
}

TEST(Eisenstein, EqualizingSeriesIsOneModPm) {
  for (int64_t p : {5, 7, 11}) {
    for (int64_t m : {1, 2, 3}) {
      auto e = equalizing_series(p, m, 50);
      EXPECT_EQ(e.weight(), arith::ipow(p, static_cast<int>(m - 1)) * (p - 1));
      const Integer pm = arith::ipow(Integer(p), static_cast<unsigned long>(m));
      EXPECT_EQ(e[0], 1);
      for (int n = 1; n <= 50; ++n) EXPECT_EQ(Integer(e[n] % pm), 0) << p << " " << m << " " << n;
      // not congruent one level higher
      bool all = true;
      for (int n = 1; n <= 50; ++n) all = all && Integer(e[n] % (pm * p)) == 0;
      EXPECT_FALSE(all);
    }
  }
  EXPECT_EQ(equalizing_series(3, 2, 20).weight(), 6);
  EXPECT_EQ(equalizing_series(3, 3, 20).weight(), 18);
  EXPECT_THROW(equalizing_series(3, 1, 20), PreconditionError);
}

TEST(Equalize, WeightTwoTimesEtilde) {
  auto g = truncate(with_level(form("newforms_26_52.forms", 1), 26), 80);
  auto d = truncate(form("S_22_G0_1.basis", 0), 80);
  auto res = equalize_weights({g, d}, 5, 2);
  EXPECT_EQ(res.target_weight, 22);
  EXPECT_EQ(res.powers, (std::vector<int64_t>{1, 0}));
  EXPECT_EQ(res.forms[0].weight(), 22);
  EXPECT_EQ(res.forms[0].level(), 26);
  EXPECT_EQ(res.forms[1].coeffs(), d.coeffs());
  EXPECT_EQ(res.audited_truncation, 80);
  for (int n = 0; n <= 80; ++n) EXPECT_EQ(Integer((res.forms[0][n] - g[n]) % 25), 0);
  EXPECT_NE(res.forms[0][2], g[2]);
  EXPECT_THROW(equalize_weights({g, truncate(form("S_12_G0_1.basis", 0), 80)}, 5, 2), PreconditionError);
}

TEST(Divide, Examples) {
  auto f = form("newforms_26_52.forms", 0);
  auto gt = form("gtilde_52.forms", 0);
  auto w = divide_congruence({f, gt.scaled_int(-1)}, 3, 1);
  for (int n = 0; n <= 600; ++n) EXPECT_EQ(w.f[n] * 3, f[n] - gt[n]);
  EXPECT_EQ(w.audited_truncation, 600);

  auto nine = divide_congruence({f.scaled_int(9)}, 3, 2);
  EXPECT_EQ(nine.f.coeffs(), f.coeffs());

  std::vector<Integer> a(5, 0), b(5, 0);
  a[1] = 1;
  b[1] = -1;
  b[2] = 25;
  auto q2 = divide_congruence({IntQExpansion(a, 1, {2}), IntQExpansion(b, 1, {4})}, 5, 2);
  EXPECT_EQ(q2.f.coeffs(), (std::vector<Integer>{0, 0, 1, 0, 0}));
  EXPECT_EQ(q2.f.weights(), (std::vector<int64_t>{2, 4}));

  auto g = form("newforms_26_52.forms", 1);
  try {
    divide_congruence({f, g.scaled_int(-1)}, 3, 1);
    FAIL();
  } catch (const CongruenceFailure& e) {
    EXPECT_EQ(e.index(), 2);
  }
  EXPECT_THROW(divide_congruence({f, gt.scaled_int(-1)}, 3, 2), CongruenceFailure);

  // number field coefficients: (1 + sqrt(-3)) q + (2 - sqrt(-3)) q^2 - (1 - 2 sqrt(-3)) q ... over 3
  auto field = NumberField::parse("nf:3,0,1");
  std::vector<NfElement> x(3, field->zero()), y(3, field->zero());
  x[1] = field->parse_element("(1 1)");
  y[1] = field->parse_element("(2 -1)");
  x[2] = field->parse_element("(3 6)");
  auto nf = divide_congruence({NfQExpansion(x, 1, {2}), NfQExpansion(y, 1, {2})}, 3, 1);
  EXPECT_EQ(nf.f[1], field->one());
  EXPECT_EQ(nf.f[2], field->parse_element("(1 2)"));
}

TEST(StripLevel, PlantedInstancesAreRecovered) {
  std::mt19937_64 rng(2024);
  auto level_one = directory_bases(kFixtures, 1);
  auto level_26 = directory_bases(kFixtures, 26);
  const std::vector<int64_t> weights{12, 16, 18, 20, 22, 24, 26};
  int planted = 0;
  for (int t = 0; t < 20; ++t) {
    const int64_t p = t % 2 ? 7 : 5;
    const int64_t m = 1 + t % 3 % 2 + (t % 5 == 0);
    const bool use26 = t % 4 == 3;
    const int64_t k = use26 ? 2 : weights[rng() % weights.size()];
    SpacePtr s = use26 ? level_26(2) : level_one(k);
    ASSERT_TRUE(s);
    const int64_t level = use26 ? 26 : 1;
    std::vector<Integer> coords;
    for (std::size_t i = 0; i < s->dimension(); ++i) coords.push_back(static_cast<long>(rng() % 50) - 25);
    coords[0] = 1;
    std::vector<Integer> a(121, 0);
    for (std::size_t i = 0; i < s->dimension(); ++i) {
      for (int n = 1; n <= 120; ++n) a[n] += coords[i] * s->coefficients()(i, n - 1);
    }
    IntQExpansion g(a, level, {k}, DirichletCharacter::trivial(level));
    auto eq = equalizing_series(p, m, 120);
    IntQExpansion f = multiply(g, eq);
    f.set_level(level * p);
    auto ring = ModRing::integers_mod(p, static_cast<int>(m));
    auto fr = reduce_mod(f, ring);
    auto res = strip_level_search(fr, level, 30, 100, use26 ? level_26 : level_one);
    ASSERT_TRUE(res.weight) << t;
    EXPECT_LE(*res.weight, k);
    auto vals = res.form->values(100);
    for (int n = 1; n <= 100; ++n) EXPECT_EQ(vals[n - 1], fr[n]) << t << " n=" << n;
    ++planted;
  }
  EXPECT_EQ(planted, 20);
}

TEST(StripLevel, HonestNegativesAndErrors) {
  auto level_one = directory_bases(kFixtures, 1);
  auto ring = ModRing::integers_mod(5, 2);
  std::vector<RingElement> c(201, ring->zero());
  for (int n = 1; n <= 200; ++n) c[n] = ring->from_integer(n * n % 7);
  RingQExpansion f(c, 5, {2});
  auto res = strip_level_search(f, 1, 26, 150, level_one);
  EXPECT_FALSE(res.weight);
  ASSERT_FALSE(res.notes.empty());
  EXPECT_EQ(res.notes.back(), "search exhausted");
  EXPECT_EQ(res.searched, (std::vector<int64_t>{12, 16, 18, 20, 22, 24, 26}));
  EXPECT_EQ(res.missing.size(), 19u);
  EXPECT_THROW(strip_level_search(f, 1, 10, 150, level_one), InputError);
  EXPECT_THROW(strip_level_search(f, 1, 26, 201, level_one), TruncationError);
  RingQExpansion wrong(c, 10, {2});
  EXPECT_THROW(strip_level_search(wrong, 1, 26, 100, level_one), PreconditionError);
  // Delta itself at level 5
  auto delta = reduce_mod(form("S_12_G0_1.basis", 0), ring);
  delta.set_level(5);
  auto found = strip_level_search(delta, 1, 30, 200, level_one);
  EXPECT_EQ(found.weight, 12);
}

TEST(WeightCongruence, Verdicts) {
  auto z9 = ModRing::integers_mod(3, 2);
  auto g = with_level(form("newforms_26_52.forms", 1), 26).truncated(100);
  auto g1 = with_level(form("newforms_26_52.forms", 2), 26).truncated(100);
  auto e6 = equalizing_series(3, 2, 100);
  auto g1e = multiply(g1, e6);
  g1e.set_level(26);
  auto r = [&](const IntQExpansion& x) { return reduce_mod(x, z9); };
  const auto triv = DirichletCharacter::trivial(26);

  auto ok = weight_congruence_check({{r(g), 2, triv}, {r(g1e), 8, triv}}, 3, 2, 26);
  EXPECT_TRUE(ok.consistent());
  EXPECT_TRUE(ok.stroke_eigen);
  EXPECT_EQ(ok.h, 1);
  EXPECT_EQ(ok.modulus, 6);
  EXPECT_FALSE(ok.primes_checked.empty());

  auto bad = weight_congruence_check({{r(g), 2, triv}, {r(g1e), 5, triv}}, 3, 2, 26);
  EXPECT_FALSE(bad.consistent());
  EXPECT_FALSE(bad.stroke_eigen);
  ASSERT_EQ(bad.violations.size(), 1u);

  auto single = weight_congruence_check({{r(g), 2, triv}}, 3, 2, 26);
  EXPECT_TRUE(single.consistent());

  EXPECT_THROW(weight_congruence_check({{r(g), 2, triv}, {r(g.scaled_int(4)), 8, triv}}, 3, 2, 26),
               PreconditionError);
  // congruent weights but a quadratic twist in the character: not a stroke eigenform
  auto chi4 = DirichletCharacter::from_exponents(4, {1}).extend(52);
  EXPECT_THROW(weight_congruence_check({{r(g), 2, triv}, {r(g1e), 14, chi4}}, 3, 2, 26),
               PreconditionError);

  // eta of order 3 on (Z/9)^x: h = 3, modulus phi(9)/3 = 2
  auto ring = ModRing::create(LocalFieldSpec::cyclotomic(3, 1), 2);
  auto eta = DirichletCharacter::from_exponents(9, {2}).extend(26 * 9);
  auto rr = [&](const IntQExpansion& x) { return reduce_mod(x, ring); };
  auto with_eta = weight_congruence_check({{rr(g), 2, triv}, {rr(g1e), 5, eta}}, 3, 2, 26);
  EXPECT_EQ(with_eta.h, 3);
  EXPECT_EQ(with_eta.modulus, 2);
  EXPECT_FALSE(with_eta.consistent());
}

TEST(WeightCongruence, Variant) {
  auto z9 = ModRing::integers_mod(3, 2);
  auto z3 = ModRing::integers_mod(3, 1);
  auto f = form("newforms_26_52.forms", 0).truncated(100);
  auto gt = form("gtilde_52.forms", 0).truncated(100);
  const auto triv = DirichletCharacter::trivial(52);
  auto two = variant_congruence_check({{reduce_mod(f, z3), 2, triv}, {reduce_mod(gt.scaled_int(-1), z3), 2, triv}},
                                      3, 1, 52);
  EXPECT_TRUE(two.consistent());
  EXPECT_EQ(two.omitted, 0u);

  auto g = with_level(form("newforms_26_52.forms", 1), 26).truncated(100);
  auto ge = multiply(g, equalizing_series(3, 2, 100)).scaled_int(-1);
  ge.set_level(26);
  const auto t26 = DirichletCharacter::trivial(26);
  auto ok = variant_congruence_check({{reduce_mod(g, z9), 2, t26}, {reduce_mod(ge, z9), 8, t26}}, 3, 2, 26);
  EXPECT_TRUE(ok.consistent());
  auto bad = variant_congruence_check({{reduce_mod(g, z9), 2, t26}, {reduce_mod(ge, z9), 5, t26}}, 3, 2, 26);
  EXPECT_FALSE(bad.consistent());
  EXPECT_FALSE(bad.stroke_eigen);

  auto zero = variant_congruence_check({{reduce_mod(g.scaled_int(9), z9), 2, t26}}, 3, 2, 26);
  EXPECT_TRUE(zero.consistent());
  EXPECT_THROW(variant_congruence_check({{reduce_mod(g, z9), 2, t26}}, 3, 2, 26), CongruenceFailure);
}
