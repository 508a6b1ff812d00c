#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "bpdep/pmf.hpp"
#include "bpdep/pmf_ops.hpp"

using namespace bpdep;

namespace {

JointPmf diag_heavy() {
    const std::vector<double> w{0.4, 0.1, 0.1, 0.4};
    return JointPmf::from_dense({Label(0), Label(1)}, {Label(0), Label(1)}, w);
}

JointPmf example2() {
    std::vector<JointPmf::Entry> e;
    for (int x = 1; x <= 4; ++x) e.push_back({x, x % 2, 0.25});
    return JointPmf::from_entries(e);
}

}  // namespace

TEST(Label, OrdersIntegersBeforeStringsAndByValue) {
    EXPECT_LT(Label(2), Label(10));
    EXPECT_LT(Label(10), Label("10"));
    EXPECT_LT(Label("a"), Label("b"));
    EXPECT_EQ(Label(3).to_string(), "3");
    EXPECT_DOUBLE_EQ(*Label("2.5").numeric(), 2.5);
    EXPECT_FALSE(Label("x1").numeric().has_value());
}

TEST(MarginalPmf, NormalizesAndSorts) {
    const std::vector<std::pair<Label, double>> w{{Label("b"), 3.0}, {Label("a"), 1.0}, {Label("c"), 0.0}};
    const auto m = MarginalPmf::from_weights(w);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.labels()[0], Label("a"));
    EXPECT_DOUBLE_EQ(m.prob(Label("b")), 0.75);
    EXPECT_DOUBLE_EQ(m.prob(Label("c")), 0.0);
}

TEST(MarginalPmf, RejectsNegativeAndEmpty) {
    const std::vector<std::pair<Label, double>> neg{{Label(1), -0.1}, {Label(2), 1.1}};
    EXPECT_THROW(MarginalPmf::from_weights(neg), InvalidPmfError);
    const std::vector<std::pair<Label, double>> zero{{Label(1), 0.0}};
    EXPECT_THROW(MarginalPmf::from_weights(zero), InvalidPmfError);
}

TEST(JointPmf, DropsEmptyRowsAndKeepsMarginals) {
    const std::vector<double> w{0.5, 0.0, 0.0, 0.0, 0.25, 0.25};
    const auto j = JointPmf::from_dense({Label(0), Label(1), Label(2)}, {Label("u"), Label("v")}, w);
    EXPECT_EQ(j.rows(), 2u);
    EXPECT_DOUBLE_EQ(j.marginal_x().prob(Label(0)), 0.5);
    EXPECT_DOUBLE_EQ(j.marginal_y().prob(Label("u")), 0.75);
    EXPECT_DOUBLE_EQ(j.prob(Label(2), Label("v")), 0.25);
}

TEST(JointPmf, RejectsDuplicateLabels) {
    const std::vector<double> w{0.25, 0.25, 0.25, 0.25};
    EXPECT_THROW(JointPmf::from_dense({Label(0), Label(0)}, {Label(0), Label(1)}, w), InvalidPmfError);
}

// Hand values: the 2x2 table deviates by 0.15 in every cell, so UD = 0.6.
TEST(UdDiscrete, HandComputedTable) {
    const auto j = diag_heavy();
    EXPECT_NEAR(ud_discrete(j), 0.6, 1e-15);
    EXPECT_NEAR(ud_sup_form(j), 0.6, 1e-15);
    EXPECT_NEAR(ud_self(j.marginal_y()), 1.0, 1e-15);
    EXPECT_NEAR(*bp_dep(j).score, 0.6, 1e-15);
    EXPECT_NEAR(max_cell_deviation(j), 0.15, 1e-15);
}

TEST(BpDep, Example2BothDirections) {
    const auto j = example2();
    const auto yx = bp_dep(j, Direction::YonX);
    const auto xy = bp_dep(j, Direction::XonY);
    EXPECT_NEAR(yx.ud, 1.0, 1e-15);
    EXPECT_NEAR(yx.ud_max, 1.0, 1e-15);
    EXPECT_NEAR(xy.ud_max, 1.5, 1e-15);
    EXPECT_NEAR(*yx.score, 1.0, 1e-12);
    EXPECT_NEAR(*xy.score, 2.0 / 3.0, 1e-12);
    EXPECT_EQ(yx.method, Method::ExactPmf);
}

TEST(BpDep, ConstantTargetIsUndefined) {
    const std::vector<JointPmf::Entry> e{{1, 7, 0.5}, {2, 7, 0.5}};
    const auto j = JointPmf::from_entries(e);
    const auto r = bp_dep(j, Direction::YonX);
    EXPECT_FALSE(r.defined());
    EXPECT_EQ(r.ud, 0.0);
    EXPECT_EQ(r.ud_max, 0.0);
    EXPECT_TRUE(bp_dep(j, Direction::XonY).defined());
    EXPECT_EQ(*bp_dep(j, Direction::XonY).score, 0.0);
}

TEST(BpDep, ProductIsZero) {
    const std::vector<std::pair<Label, double>> a{{Label(0), 0.2}, {Label(1), 0.8}};
    const std::vector<std::pair<Label, double>> b{{Label("p"), 0.3}, {Label("q"), 0.3}, {Label("r"), 0.4}};
    const auto j = JointPmf::product(MarginalPmf::from_weights(a), MarginalPmf::from_weights(b));
    EXPECT_NEAR(*bp_dep(j).score, 0.0, 1e-15);
    EXPECT_NEAR(*bp_dep(j, Direction::XonY).score, 0.0, 1e-15);
}

TEST(PmfOps, TransposeSwapsDirections) {
    const auto j = example2();
    const auto t = transpose(j);
    EXPECT_NEAR(*bp_dep(t, Direction::YonX).score, *bp_dep(j, Direction::XonY).score, 1e-15);
    EXPECT_EQ(marginalize(j, Axis::X), j.marginal_x());
}

TEST(PmfOps, ApplyFunctionMergesRows) {
    const auto j = example2();
    // Merging x=1 with x=2 loses the parity information.
    const auto g = apply_function_x(j, [](const Label& l) { return Label(l.as_integer() <= 2 ? 0 : 1); });
    EXPECT_EQ(g.rows(), 2u);
    EXPECT_NEAR(*bp_dep(g).score, 0.0, 1e-15);
}

TEST(PmfOps, PermuteRejectsNonInjective) {
    const auto j = example2();
    EXPECT_THROW(permute_labels(j, [](const Label&) { return Label(0); }, [](const Label& l) { return l; }),
                 std::invalid_argument);
    const auto p = permute_labels(j, [](const Label& l) { return Label("s" + l.to_string()); },
                                  [](const Label& l) { return Label(1 - l.as_integer()); });
    EXPECT_NEAR(*bp_dep(p, Direction::XonY).score, 2.0 / 3.0, 1e-12);
}
