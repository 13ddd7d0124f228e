#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>
#include <thread>

#include "mfpm/errors.hpp"
#include "mfpm/hecke_algebra.hpp"

using namespace mfpm;

namespace {

const std::string kFixtures = MFPM_FIXTURE_DIR;

SpacePtr space(const std::string& name) {
  return SpaceBasis::from_file(read_space_file(kFixtures + "/" + name));
}

IntQExpansion form(const std::string& file, std::size_t i) {
  return read_space_file(kFixtures + "/" + file).integer_rows().at(i);
}

std::vector<Integer> times(const std::vector<Integer>& x, const IntMatrix& m) {
  std::vector<Integer> out(m.cols(), 0);
  for (std::size_t j = 0; j < m.rows(); ++j) {
    for (std::size_t i = 0; i < m.cols(); ++i) out[i] += x[j] * m(j, i);
  }
  return out;
}

std::vector<Integer> scaled(std::vector<Integer> x, const Integer& c) {
  for (auto& v : x) v *= c;
  return x;
}

}  // namespace

TEST(SpaceBasis, Fixtures) {
  auto s52 = space("S_2_G0_52.basis");
  EXPECT_EQ(s52->dimension(), 5u);
  EXPECT_EQ(s52->injectivity_bound(), 14);
  EXPECT_TRUE(s52->warnings().empty());
  auto s26 = space("S_2_G0_26.basis");
  EXPECT_EQ(s26->dimension(), 2u);
  EXPECT_EQ(s26->injectivity_bound(), 7);
  auto g = form("newforms_26_52.forms", 1);
  g.set_level(26);
  EXPECT_TRUE(s26->coordinates_of(g));
}

TEST(SpaceBasis, SaturationRepair) {
  // g and g1 are congruent mod 2, so Z g + Z g1 has index 2 in its saturation.
  auto g = form("newforms_26_52.forms", 1), g1 = form("newforms_26_52.forms", 2);
  for (auto* f : {&g, &g1}) {
    f->set_level(26);
    f->set_character(DirichletCharacter::trivial(26));
  }
  auto s = SpaceBasis::from_forms({g, g1}, Group::Gamma0);
  ASSERT_EQ(s->warnings().size(), 1u);
  EXPECT_EQ(elementary_divisors(s->coefficients()), (std::vector<Integer>{1, 1}));
  auto half = (g + g1);
  auto coords = s->coordinates_of(IntQExpansion(
      [&] {
        auto c = half.coeffs();
        for (auto& x : c) x /= 2;
        return c;
      }(),
      26, {2}));
  EXPECT_TRUE(coords);
  SpaceBasis::Options strict;
  strict.repair_saturation = false;
  std::vector<BasisRow> rows(2);
  rows[0].components[2] = g.coeffs();
  rows[1].components[2] = g1.coeffs();
  EXPECT_THROW(SpaceBasis::create(26, Group::Gamma0, DirichletCharacter::trivial(26), rows, strict),
               InputError);
  rows[1] = rows[0];
  EXPECT_THROW(SpaceBasis::create(26, Group::Gamma0, DirichletCharacter::trivial(26), rows),
               InputError);
}

TEST(HeckeMatrix, IdentityAndEigenvectors) {
  auto s52 = space("S_2_G0_52.basis");
  EXPECT_EQ(hecke_matrix(*s52, 1).matrix, IntMatrix::identity(5));
  auto f = form("newforms_26_52.forms", 0);
  auto x = s52->coordinates_of(f);
  ASSERT_TRUE(x);
  EXPECT_EQ(times(*x, hecke_matrix(*s52, 5).matrix), scaled(*x, 2));

  auto s26 = space("S_2_G0_26.basis");
  auto g = form("newforms_26_52.forms", 1);
  g.set_level(26);
  auto y = s26->coordinates_of(g);
  ASSERT_TRUE(y);
  EXPECT_EQ(times(*y, hecke_matrix(*s26, 7).matrix), scaled(*y, 1));

  EXPECT_THROW(hecke_matrix(*s52, 50), TruncationError);
}

TEST(HeckeMatrix, ReproducesExpansionsAndMultiplicativity) {
  auto s = space("S_2_G0_52.basis");
  for (int64_t n = 1; n <= 14; ++n) {
    auto op = hecke_matrix(*s, n);
    for (std::size_t j = 0; j < s->dimension(); ++j) {
      auto direct = hecke_Tn(s->row_expansion(j), n);
      std::vector<Integer> comb(static_cast<std::size_t>(op.audited_truncation) + 1, 0);
      for (std::size_t i = 0; i < s->dimension(); ++i) {
        for (int64_t k = 1; k <= op.audited_truncation; ++k) {
          comb[static_cast<std::size_t>(k)] += op.matrix(j, i) * s->coefficients()(i, static_cast<std::size_t>(k - 1));
        }
      }
      EXPECT_EQ(comb, direct.coeffs());
    }
  }
  for (int64_t n = 1; n <= 7; ++n) {
    for (int64_t r = 1; r <= 7; ++r) {
      if (arith::gcd(n, r) != 1 || n * r > 40) continue;
      EXPECT_EQ(hecke_matrix(*s, n).matrix * hecke_matrix(*s, r).matrix,
                hecke_matrix(*s, n * r).matrix);
    }
  }
  // [3] = 3^2 on weight 2 with trivial character
  EXPECT_EQ(stroke_matrix(*s, 3).matrix, IntMatrix::identity(5).scaled(9));
}

TEST(AlgebraRank, Fixtures) {
  EXPECT_EQ(algebra_rank(*space("S_2_G0_52.basis"), 14), 5u);
  EXPECT_EQ(algebra_rank(*space("S_2_G0_26.basis"), 7), 2u);
  auto f = form("newforms_26_52.forms", 0);
  auto one = SpaceBasis::from_forms({f}, Group::Gamma0);
  EXPECT_EQ(algebra_rank(*one, 14), 1u);
}

TEST(Pairing, FullRank) {
  auto s = space("S_2_G0_52.basis");
  auto p = pairing_matrix(*s, 14);
  EXPECT_EQ(p.rows(), 14u);
  EXPECT_EQ(rank(p), 5u);
  for (std::size_t j = 0; j < 5; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < 14; ++i) nonzero = nonzero || p(i, j) != 0;
    EXPECT_TRUE(nonzero);
  }
  auto f = form("newforms_26_52.forms", 0);
  auto one = SpaceBasis::from_forms({f}, Group::Gamma0);
  auto q = pairing_matrix(*one, 14);
  for (int64_t i = 1; i <= 14; ++i) EXPECT_EQ(q(static_cast<std::size_t>(i - 1), 0), f[i]);
}

TEST(Cache, ConcurrentAndPersistent) {
  auto s = space("S_2_G0_52.basis");
  const auto dir = std::filesystem::temp_directory_path() / "mfpm_cache_test";
  std::filesystem::remove_all(dir);
  {
    HeckeCache cache(dir);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&] {
        for (int64_t n = 1; n <= 14; ++n) EXPECT_EQ(cache.get(*s, OperatorKind::T, n).index, n);
      });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(cache.size(), 14u);
  }
  HeckeCache again(dir);
  EXPECT_EQ(again.get(*s, OperatorKind::T, 5).matrix, hecke_matrix(*s, 5).matrix);
  EXPECT_EQ(again.disk_hits(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(CoefficientForms, MembershipAndLift) {
  auto s = space("S_2_G0_52.basis");
  auto z9 = ModRing::integers_mod(3, 2);
  // reduction of a basis row -> unit coordinate vector
  auto row = reduce_form(s, {0, 0, 1, 0, 0}, z9);
  auto back = form_with_coefficients(s, row.values(14));
  EXPECT_EQ(back.coords, row.coords);

  // h = (f + gtilde) / 2 mod 9
  auto f = form("newforms_26_52.forms", 0);
  auto gt = form("gtilde_52.forms", 0);
  RingVector h;
  const auto half = z9->from_integer(5);
  for (int n = 1; n <= 14; ++n) h.push_back(z9->from_integer(f[n] + gt[n]) * half);
  auto hf = form_with_coefficients(s, h);
  EXPECT_EQ(hf.values(14), h);

  RingVector ones(14, z9->one());
  EXPECT_FALSE(try_form_with_coefficients(s, ones));
  EXPECT_THROW(form_with_coefficients(s, ones), PreconditionError);

  // The integral lift of h mod 9 is not an eigenvector of T_5 over Q.
  auto lifted = lift_form(hf);
  auto t5 = hecke_matrix(*s, 5).matrix;
  auto image = times(lifted.coords, t5);
  bool proportional = true;
  for (std::size_t i = 0; i < 5 && proportional; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (image[i] * lifted.coords[j] != image[j] * lifted.coords[i]) proportional = false;
    }
  }
  EXPECT_FALSE(proportional);

  std::mt19937_64 rng(50);
  for (int t = 0; t < 50; ++t) {
    CoefficientForm r{s, {}};
    for (int i = 0; i < 5; ++i) r.coords.push_back(z9->from_integer(static_cast<int64_t>(rng() % 9)));
    auto l = lift_form(r);
    EXPECT_EQ(reduce_form(s, l.coords, z9).coords, r.coords);
    for (int n = 1; n <= 14; ++n) EXPECT_EQ(z9->from_integer(l.expansion[n]), r.values(14)[static_cast<std::size_t>(n - 1)]);
  }
}

TEST(CoefficientForms, BaseChangeIsBijective) {
  // Z-coordinates mod p^m give pairwise distinct coefficient vectors, and the
  // span of the reduced rows has p^(m dim) elements.
  for (auto [file, p, m] : {std::tuple{"S_2_G0_26.basis", 3, 2}, std::tuple{"S_2_G0_52.basis", 3, 1},
                            std::tuple{"S_2_G0_52.basis", 2, 2}}) {
    auto s = space(file);
    auto ring = ModRing::integers_mod(p, m);
    const int64_t pm = ring->working_modulus();
    const std::size_t d = s->dimension();
    std::set<std::vector<std::vector<int64_t>>> seen;
    std::vector<int64_t> x(d, 0);
    int64_t total = 0;
    while (true) {
      std::vector<Integer> xi(x.begin(), x.end());
      auto vals = reduce_form(s, xi, ring).values(s->injectivity_bound());
      std::vector<std::vector<int64_t>> key;
      for (const auto& v : vals) key.push_back(v.coords());
      seen.insert(key);
      ++total;
      std::size_t k = 0;
      while (k < d && ++x[k] == pm) x[k++] = 0;
      if (k == d) break;
    }
    EXPECT_EQ(static_cast<int64_t>(seen.size()), total) << file;
    std::vector<RingVector> gens;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Integer> e(d, 0);
      e[i] = 1;
      gens.push_back(reduce_form(s, e, ring).values(s->injectivity_bound()));
    }
    EXPECT_EQ(span_cardinality(ring, static_cast<std::size_t>(s->injectivity_bound()), gens),
              arith::ipow(Integer(pm), d));
  }
}

TEST(DirectSum, DividedCongruenceRowIsFound) {
  // Weight 2 and weight 4 forms congruent mod 3: q + 3 q^2 and q. Their
  // difference divided by 3 is integral, so saturation adds it.
  const int64_t b = 30;
  std::vector<Integer> a(b + 1, 0), c(b + 1, 0);
  a[1] = 1;
  a[2] = 3;
  c[1] = 1;
  std::vector<BasisRow> rows(2);
  rows[0].components[2] = a;
  rows[1].components[4] = c;
  auto s = SpaceBasis::create(1, Group::Gamma1, DirichletCharacter::trivial(1), rows);
  EXPECT_EQ(s->weights(), (std::vector<int64_t>{2, 4}));
  EXPECT_EQ(s->warnings().size(), 1u);
  std::vector<Integer> q2(b, 0);
  q2[1] = 1;
  auto x = s->rational_coordinates_of(q2);
  ASSERT_TRUE(x);
  for (const auto& v : *x) EXPECT_EQ(v.get_den(), 1);
}
