#include <gtest/gtest.h>

#include <random>

#include "gctoric/form.hpp"
#include "gctoric/form_json.hpp"
#include "oracle/oracle.hpp"

using namespace gct;
using namespace gct::algebra;

namespace {

using EF = ExactForm;
using GR = GaussianRational;

EF e(int m, std::initializer_list<int> idx, GR c = GR(1)) { return EF::monomial(m, idx, c); }
EF one(int m) { return EF::constant(m, GR(1)); }
const GR I = GR::i();

}  // namespace

TEST(Wedge, BasisProducts) {
    EXPECT_EQ(wedge(e(2, {1}), e(2, {2})), e(2, {1, 2}));
    EXPECT_TRUE(wedge(e(2, {1}), e(2, {1})).is_zero());
    EXPECT_EQ(wedge(e(3, {2}), e(3, {1})), e(3, {1, 2}, GR(-1)));
}

TEST(Wedge, OnePlusE1TimesOnePlusE2) {
    EF lhs = wedge(one(2) + e(2, {1}), one(2) + e(2, {2}));
    EF expected = one(2) + e(2, {1}) + e(2, {2}) + e(2, {1, 2});
    EXPECT_EQ(lhs, expected);
    EXPECT_EQ(oracle::to_form(2, oracle::wedge(oracle::from_form(one(2) + e(2, {1})), oracle::from_form(one(2) + e(2, {2})))),
              expected);
}

TEST(Wedge, DimensionMismatchThrows) {
    EXPECT_THROW(wedge(e(2, {1}), e(3, {1})), DimensionError);
    EXPECT_THROW(EF(9), DimensionError);
    EXPECT_THROW(EF(0), DimensionError);
}

TEST(Contract, Examples) {
    EXPECT_EQ(contract_basis(1, e(2, {1})), one(2));
    EXPECT_TRUE(contract_basis(1, one(2)).is_zero());
    EXPECT_EQ(contract_basis(2, e(2, {1, 2})), e(2, {1}, GR(-1)));
    EXPECT_EQ(oracle::to_form(2, oracle::contract(2, oracle::from_form(e(2, {1, 2})))), e(2, {1}, GR(-1)));
}

TEST(Reversal, Examples) {
    EXPECT_EQ(reversal(e(3, {1})), e(3, {1}));
    EXPECT_EQ(reversal(e(3, {1, 2})), e(3, {1, 2}, GR(-1)));
    EXPECT_EQ(reversal(e(3, {1, 2, 3})), e(3, {1, 2, 3}, GR(-1)));
    EXPECT_EQ(oracle::to_form(3, oracle::reversal(oracle::from_form(e(3, {1, 2, 3})))), e(3, {1, 2, 3}, GR(-1)));
}

TEST(Mukai, Examples) {
    EXPECT_EQ(mukai(one(2), e(2, {1, 2})), GR(1));
    EXPECT_EQ(mukai(e(2, {1, 2}), one(2)), GR(-1));
    EF phi = exp_form(e(2, {1, 2}, I));
    EXPECT_EQ(mukai(phi, phi.conj()), GR(0, -2));
    EXPECT_EQ(oracle::mukai(2, oracle::from_form(phi), oracle::from_form(phi.conj())), GR(0, -2));
}

TEST(Clifford, Examples) {
    EXPECT_EQ(clifford(GVector<GR>::partial(2, 1), e(2, {1})), one(2));
    EXPECT_EQ(clifford(GVector<GR>::dual(2, 1), one(2)), e(2, {1}));
    EXPECT_EQ(clifford(GVector<GR>::partial(2, 1) + GVector<GR>::dual(2, 1), e(2, {1})), one(2));
}

TEST(NaturalPairing, Examples) {
    EXPECT_EQ(natural_pairing(GVector<GR>::partial(2, 1), GVector<GR>::dual(2, 1)), GR(Rational(1, 2)));
    EXPECT_EQ(natural_pairing(GVector<GR>::partial(2, 1), GVector<GR>::partial(2, 2)), GR(0));
}

TEST(ExpForm, Examples) {
    EXPECT_EQ(exp_form(EF(2)), one(2));
    EXPECT_EQ(exp_form(e(2, {1, 2})), one(2) + e(2, {1, 2}));
    EXPECT_EQ(exp_form(e(4, {1, 2}) + e(4, {3, 4})), one(4) + e(4, {1, 2}) + e(4, {3, 4}) + e(4, {1, 2, 3, 4}));
    EXPECT_THROW(exp_form(e(2, {1})), PreconditionError);
    EXPECT_THROW(exp_form(one(2) + e(2, {1, 2})), PreconditionError);
}

TEST(Pullback, SwapOfCoordinates) {
    // y = (x2, x1): dy1 ^ dy2 pulls back to -dx1 ^ dx2.
    std::vector<std::vector<double>> jac{{0, 1}, {1, 0}};
    FloatForm w = to_float(e(2, {1, 2}));
    EXPECT_EQ(pullback(w, jac, 2), to_float(e(2, {1, 2}, GR(-1))));
}

TEST(FormJson, RoundTrip) {
    EF f = one(3) + e(3, {1, 3}, GR(Rational(-3, 2), Rational(1, 5)));
    auto j = to_json(f);
    EXPECT_EQ(j[1]["subset"], nlohmann::ordered_json::array({1, 3}));
    EXPECT_EQ(j[1]["re"], "-3/2");
    EXPECT_EQ(j[1]["im"], "1/5");
    EXPECT_EQ(exact_form_from_json(3, nlohmann::json::parse(j.dump())), f);
}

// Randomized properties against the index-list oracle.
class AlgebraProperties : public ::testing::TestWithParam<int> {};

TEST_P(AlgebraProperties, AgreeWithOracleAndIdentities) {
    const int m = GetParam();
    std::mt19937_64 rng(1000 + m);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> deg(0, m);
        int p = deg(rng), q = deg(rng);
        EF a = oracle::random_homogeneous(rng, m, p);
        EF b = oracle::random_homogeneous(rng, m, q);
        EF c = oracle::random_form(rng, m);
        auto v = oracle::random_gvector(rng, m);
        auto w = oracle::random_gvector(rng, m);

        // Implementation equals brute force.
        ASSERT_EQ(wedge(a, c), oracle::to_form(m, oracle::wedge(oracle::from_form(a), oracle::from_form(c))));
        ASSERT_EQ(reversal(c), oracle::to_form(m, oracle::reversal(oracle::from_form(c))));
        ASSERT_EQ(clifford(v, c), oracle::to_form(m, oracle::clifford(v.vec, v.cov, oracle::from_form(c))));
        ASSERT_EQ(mukai(a, c), oracle::mukai(m, oracle::from_form(a), oracle::from_form(c)));

        // Graded commutativity and associativity.
        GR sign((p * q) % 2 ? -1 : 1);
        ASSERT_EQ(wedge(a, b), wedge(b, a) * sign);
        ASSERT_EQ(wedge(wedge(a, b), c), wedge(a, wedge(b, c)));

        // Anti-derivation.
        EF lhs = contract(v.vec, wedge(a, b));
        EF rhs = wedge(contract(v.vec, a), b) + wedge(a, contract(v.vec, b)) * GR(p % 2 ? -1 : 1);
        ASSERT_EQ(lhs, rhs);

        ASSERT_EQ(reversal(reversal(c)), c);

        // Clifford relation: v.(v.a) = <v,v> a, and its polarization.
        ASSERT_EQ(clifford(v, clifford(v, c)), c * natural_pairing(v, v));
        ASSERT_EQ(clifford(v, clifford(w, c)) + clifford(w, clifford(v, c)), c * (GR(2) * natural_pairing(v, w)));

        // Mukai symmetry.
        GR msign(((m * (m - 1) / 2) % 2) ? -1 : 1);
        ASSERT_EQ(mukai(a, c), mukai(c, a) * msign);
    }
}

INSTANTIATE_TEST_SUITE_P(Dims, AlgebraProperties, ::testing::Values(1, 2, 3, 4, 5, 6));
