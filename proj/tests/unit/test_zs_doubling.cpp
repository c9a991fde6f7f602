#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sodlib/od_converter.hpp"
#include "sodlib/zs_doubling.hpp"

using namespace sod;
using sodtest::circ;

namespace {

SignedPerm t3(const SignedPerm& a, const SignedPerm& b, const SignedPerm& c) { return sp_tensor(sp_tensor(a, b), c); }

FoldResult example_fold() { return fold_real(sodtest::example_rows(), SodType{12, {4, 4, 4}}); }

}  // namespace

TEST(ZsDouble, FirstExampleStep) {
  const auto rows = sodtest::example_rows();
  const auto r = zs_double(rows[0], rows[1], RemrepChain::real());
  EXPECT_EQ(r.chain.top_degree(), 2u);
  ASSERT_EQ(r.step.generators.size(), 1u);
  const SignedPerm delta = r.step.generators[0];
  EXPECT_EQ(delta, mats::P());
  // circ(1a, 0, 0, da, 0, 0, 1a, 0, 0, -da, 0, 0)
  const auto& d = r.d;
  EXPECT_EQ(support(d), (std::set<std::size_t>{0, 3, 6, 9}));
  EXPECT_EQ(d[0]->coeff, mats::I(2));
  EXPECT_EQ(d[6]->coeff, mats::I(2));
  EXPECT_EQ(d[3]->coeff, delta);
  EXPECT_EQ(d[9]->coeff, -delta);
  EXPECT_EQ(r.chain.top().relations.square, (std::vector<int>{1}));
}

TEST(ZsDouble, SecondExampleStepRelations) {
  const auto rows = sodtest::example_rows();
  auto r1 = zs_double(rows[0], rows[1], RemrepChain::real());
  const auto r2 = zs_double(r1.d, rows[2], r1.chain);
  const auto& g = r2.step.generators;
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(r2.chain.top().relations.square, (std::vector<int>{1, -1, 1}));
  const std::set<SignedPerm> want{sp_tensor(mats::P(), mats::I(2)).canonical(), sp_tensor(mats::R(), mats::I(2)).canonical(),
                                  sp_tensor(mats::Q(), mats::P()).canonical()};
  EXPECT_EQ(std::set<SignedPerm>(g.begin(), g.end()), want);
}

TEST(ZsDouble, WorkedExampleFold) {
  const auto f = example_fold();
  EXPECT_EQ(f.chain.top_degree(), 8u);
  const auto& top = f.chain.top();
  ASSERT_EQ(top.generators.size(), 5u);
  EXPECT_EQ(top.relations.square, (std::vector<int>{1, -1, 1, 1, -1}));
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b)
      if (a != b) {
        EXPECT_EQ(top.relations.commutation[a][b], -1);
      }
  // images up to sign: e1 -> Q P I, e2 -> Q R I, e3 -> Q Q P, e4 -> P I I, e5 -> R I I
  const auto I = mats::I(2), P = mats::P(), Q = mats::Q(), R = mats::R();
  const std::vector<SignedPerm> expected{t3(Q, P, I), t3(Q, R, I), t3(Q, Q, P), t3(P, I, I), t3(R, I, I)};
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(top.generators[k].canonical(), expected[k].canonical()) << k;
  // first row circ(1a, e1b, e2c, e3a, e4c, -e5b, 1a, -e5b, -e4c, -e3a, e2c, -e1b) up to generator signs
  const auto& row = f.sod.first_row();
  const std::vector<std::pair<int, int>> pattern{{-1, 1}, {0, 2}, {1, 3}, {2, 1}, {3, 3}, {4, 2},
                                                 {-1, 1}, {4, 2}, {3, 3}, {2, 1}, {1, 3}, {0, 2}};
  for (std::size_t j = 0; j < 12; ++j) {
    ASSERT_TRUE(row[j]);
    EXPECT_EQ(row[j]->var, pattern[j].second);
    if (pattern[j].first < 0) {
      EXPECT_EQ(row[j]->coeff, mats::I(8));
    } else {
      EXPECT_EQ(row[j]->coeff.canonical(), top.generators[pattern[j].first].canonical());
    }
  }
  // relative signs between mirrored positions
  EXPECT_EQ(row[1]->coeff, -row[11]->coeff);
  EXPECT_EQ(row[2]->coeff, row[10]->coeff);
  EXPECT_EQ(row[3]->coeff, -row[9]->coeff);
  EXPECT_EQ(row[4]->coeff, -row[8]->coeff);
  EXPECT_EQ(row[5]->coeff, row[7]->coeff);
}

TEST(ZsDouble, OutputIsAVerifiedQuasisymmetricNormalSod) {
  const auto f = example_fold();
  const SodType t{12, {4, 4, 4}};
  EXPECT_TRUE(verify_sod(f.sod, t));
  EXPECT_TRUE(is_quasisymmetric(f.sod));
  EXPECT_TRUE(is_normal(f.sod));
  EXPECT_TRUE(check_decomposition(decompose(f.sod), t));
  EXPECT_TRUE(is_signed_hadamard(f.sod));
}

TEST(ZsDouble, BlownUpVerdictAgrees) {
  const auto f = example_fold();
  EXPECT_TRUE(verify_sod(blow_up(f.sod), SodType{96, {4, 4, 4}}));
}

TEST(ZsDouble, ZeroB) {
  const auto a = circ({"x1", "0", "0", "0"}, 1, 1);
  const CirculantDesign zero(4, 1, 1);
  const auto r = zs_double(a, zero, RemrepChain::real());
  EXPECT_EQ(support(r.d), support(a));
  EXPECT_EQ(r.chain.top_degree(), 2u);
  const auto gd = gram(r.d), ga = gram(a);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(same_image(gd[j], ga[j].lifted()));
}

TEST(ZsDouble, InputGuards) {
  const auto a = circ({"x1", "0", "0", "0"}, 1, 1);
  try {
    zs_double(a, a, RemrepChain::real());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDisjoint);
  }
  try {
    zs_double(a, circ({"0", "x1", "0", "0"}, 1, 1), RemrepChain::real());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotQuasisymmetric);
  }
  EXPECT_THROW(zs_double(circ({"x1", "0"}, 1, 2), circ({"0", "x1"}, 1, 2), RemrepChain::real()), Error);
}

TEST(ZsDouble, NonCommutingCoefficientsAreRejected) {
  const auto q = RemrepChain::quaternion();
  const auto& g = q.top().generators;  // j, k
  const CirculantDesign b1({Entry{g[0], 1}, std::nullopt}, 2, 4);
  const CirculantDesign b2({std::nullopt, Entry{g[1], 2}}, 2, 4);
  try {
    zs_double(b1, b2, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCentral);
  }
}

TEST(ZsDouble, ComplexInputs) {
  const auto a = circ({"x1", "0", "0", "0"}, 2, 2);
  const auto b = circ({"0", "ix2", "0", "ix2"}, 2, 2);
  const auto r = zs_double(a, b, RemrepChain::complex());
  EXPECT_EQ(r.chain.top_degree(), 4u);
  const auto gd = gram(r.d), ga = gram(a), gb = gram(b);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(same_image(gd[j], (ga[j] + gb[j]).lifted()));
}

TEST(Fold, SingleCirculant) {
  const auto c = circ({"x1", "ix2"}, 2, 2);
  const auto f = fold_complex({c}, SodType{2, {1, 1}});
  EXPECT_EQ(f.chain.top_degree(), 2u);
  EXPECT_EQ(f.sod, c);
}

TEST(Fold, TwoRealCirculants) {
  const auto f = fold_real({circ({"x1", "0"}, 2, 1), circ({"0", "x2"}, 2, 1)}, SodType{2, {1, 1}});
  EXPECT_EQ(f.chain.top_degree(), 2u);
  EXPECT_TRUE(verify_sod(f.sod, SodType{2, {1, 1}}));
}

TEST(Fold, WrongDegreeIsRejected) {
  EXPECT_THROW(fold_real({circ({"x1", "0"}, 1, 2)}, SodType{2, {1}}), Error);
}

TEST(Chain, BasesAndExtension) {
  EXPECT_EQ(RemrepChain::complex().top().generators[0], mats::R());
  EXPECT_EQ(RemrepChain::real().top_degree(), 1u);
  const auto f = example_fold();
  for (std::size_t r = 1; r < f.chain.levels().size(); ++r)
    EXPECT_EQ(f.chain.levels()[r].degree, 2 * f.chain.levels()[r - 1].degree);
  for (const auto& lv : f.chain.levels()) EXPECT_EQ(compute_relations(lv.generators), lv.relations);
}

TEST(Chain, ExtendRejectsInconsistentStep) {
  const auto rows = sodtest::example_rows();
  auto r = zs_double(rows[0], rows[1], RemrepChain::real());
  DoublingStep bad = r.step;
  bad.generators[0] = -bad.generators[0];
  EXPECT_THROW(extend_remrep(RemrepChain::real(), bad), Error);
  EXPECT_THROW(extend_remrep(RemrepChain::complex(), r.step), Error);
}

TEST(DegreeExponent, PowersOfTwo) {
  EXPECT_EQ(degree_exponent(1), 0);
  EXPECT_EQ(degree_exponent(4096), 12);
  EXPECT_THROW(degree_exponent(6), Error);
}
