#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "relayrate/prob_table.hpp"
#include "relayrate/random.hpp"

using namespace relayrate;

namespace {

JointPmf uniform_binary(const std::string& name) {
    return JointPmf::from_entries({{name, 2}}, {0.5, 0.5});
}

Factor marginal_factor(const JointPmf& pmf) {
    return Factor{pmf.variables(), {pmf.entries().begin(), pmf.entries().end()}, {}};
}

JointPmf random_table(const std::vector<VariableId>& vars, Rng& rng) {
    return JointPmf::from_entries(vars, rng.simplex(table_size(vars)));
}

}  // namespace

TEST_CASE("product of independent uniform binary factors") {
    auto p = product({marginal_factor(uniform_binary("A")), marginal_factor(uniform_binary("B"))});
    REQUIRE(p.size() == 4);
    for (double v : p.entries()) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("product chains a conditional onto a marginal") {
    Factor pa = marginal_factor(uniform_binary("A"));
    Factor pba{{{"A", 2}, {"B", 2}}, {0.9, 0.1, 0.1, 0.9}, {"A"}};
    auto joint = product({pa, pba});
    REQUIRE(joint.size() == 4);
    const double expected[] = {0.45, 0.05, 0.05, 0.45};
    for (int i = 0; i < 4; ++i) {
        CHECK(joint.entries()[static_cast<std::size_t>(i)] ==
              doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("product rejects inconsistent alphabet sizes") {
    Factor f1 = marginal_factor(JointPmf::from_entries({{"X1", 2}}, {0.5, 0.5}));
    Factor f2{{{"X1", 3}, {"B", 2}}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5}, {"X1"}};
    CHECK_THROWS_AS(product({f1, f2}), StructuralError);
}

TEST_CASE("product rejects conditionals that do not normalize") {
    Factor pa = marginal_factor(uniform_binary("A"));
    Factor bad{{{"A", 2}, {"B", 2}}, {0.9, 0.2, 0.1, 0.9}, {"A"}};
    CHECK_THROWS_AS(product({pa, bad}), ValidationError);
}

TEST_CASE("product rejects dangling conditioning variables") {
    Factor pba{{{"A", 2}, {"B", 2}}, {0.9, 0.1, 0.1, 0.9}, {"A"}};
    CHECK_THROWS_AS(product({pba}), StructuralError);
}

TEST_CASE("marginalize sums out rows") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.45, 0.05, 0.05, 0.45});
    auto m = marginalize(joint, {"A"});
    REQUIRE(m.size() == 2);
    CHECK(m.entries()[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.entries()[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("marginalize keeping everything is the identity") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.45, 0.05, 0.05, 0.45});
    auto m = marginalize(joint, {"A", "B"});
    REQUIRE(m.size() == joint.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(m.entries()[i] == doctest::Approx(joint.entries()[i]).epsilon(1e-12));
    }
}

TEST_CASE("marginalize to the empty set leaves total probability") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.45, 0.05, 0.05, 0.45});
    auto m = marginalize(joint, {});
    REQUIRE(m.size() == 1);
    CHECK(m.entries()[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("marginalize rejects unknown variables") {
    auto joint = JointPmf::from_entries({{"A", 2}}, {0.5, 0.5});
    CHECK_THROWS_AS(marginalize(joint, {"Z"}), StructuralError);
}

TEST_CASE("entropy of a uniform binary variable is one bit") {
    CHECK(entropy(uniform_binary("A"), {"A"}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("joint entropy matches the direct-summation oracle") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.45, 0.05, 0.05, 0.45});
    const double oracle = test_oracle::entropy_bits(joint.entries());
    CHECK(entropy(joint, {"A", "B"}) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(entropy(joint, {"A", "B"}) == doctest::Approx(1.46900).epsilon(1e-5));
}

TEST_CASE("conditional entropy of a deterministic copy is zero") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.5, 0.0, 0.0, 0.5});
    CHECK(entropy(joint, {"B"}, {"A"}) == doctest::Approx(0.0));
    // 0 log 0 terms are dropped rather than propagating NaN.
    CHECK(std::isfinite(entropy(joint, {"A", "B"})));
}

TEST_CASE("entropy rejects overlapping target and conditioning sets") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.25, 0.25, 0.25, 0.25});
    CHECK_THROWS_AS(entropy(joint, {"A"}, {"A"}), StructuralError);
}

TEST_CASE("mutual information of independent variables is zero") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.25, 0.25, 0.25, 0.25});
    CHECK(cond_mutual_info(joint, {"A"}, {"B"}) == doctest::Approx(0.0));
}

TEST_CASE("mutual information with a perfect copy is the full entropy") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"A2", 2}}, {0.5, 0.0, 0.0, 0.5});
    CHECK(cond_mutual_info(joint, {"A"}, {"A2"}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("binary symmetric channel at crossover 0.1 matches the oracle") {
    Factor px = marginal_factor(uniform_binary("X"));
    Factor pyx{{{"X", 2}, {"Y", 2}}, {0.9, 0.1, 0.1, 0.9}, {"X"}};
    auto joint = product({px, pyx});
    const double oracle = test_oracle::cmi_bits(joint, {"X"}, {"Y"}, {});
    CHECK(cond_mutual_info(joint, {"X"}, {"Y"}) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(cond_mutual_info(joint, {"X"}, {"Y"}) == doctest::Approx(0.53100).epsilon(1e-5));
}

TEST_CASE("cond_mutual_info rejects overlapping sets") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.25, 0.25, 0.25, 0.25});
    CHECK_THROWS_AS(cond_mutual_info(joint, {"A"}, {"A"}), StructuralError);
    CHECK_THROWS_AS(cond_mutual_info(joint, {"A"}, {"B"}, {"B"}), StructuralError);
}

TEST_CASE("random tables satisfy the information identities") {
    Rng rng(20240811);
    const std::vector<VariableId> vars{{"A", 2}, {"B", 3}, {"C", 2}, {"D", 2}};
    for (int trial = 0; trial < 25; ++trial) {
        auto pmf = random_table(vars, rng);

        // Chain rule: I(A,B;D|C) = I(A;D|C) + I(B;D|A,C).
        const double lhs = cond_mutual_info(pmf, {"A", "B"}, {"D"}, {"C"});
        const double rhs =
            cond_mutual_info(pmf, {"A"}, {"D"}, {"C"}) + cond_mutual_info(pmf, {"B"}, {"D"}, {"A", "C"});
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));

        // Symmetry.
        CHECK(cond_mutual_info(pmf, {"A"}, {"B"}, {"C"}) ==
              doctest::Approx(cond_mutual_info(pmf, {"B"}, {"A"}, {"C"})).epsilon(1e-9));

        // Nonnegativity.
        CHECK(cond_mutual_info(pmf, {"A"}, {"D"}, {"B", "C"}) >= 0.0);

        // Marginalization consistency: entropy from the full table equals
        // entropy from the reduced table.
        const double h_full = entropy(pmf, {"A", "B"});
        const double h_marg = entropy(marginalize(pmf, {"A", "B"}), {"A", "B"});
        CHECK(h_full == doctest::Approx(h_marg).epsilon(1e-9));

        // Against the independent oracle.
        CHECK(cond_mutual_info(pmf, {"A"}, {"B"}, {"C", "D"}) ==
              doctest::Approx(test_oracle::cmi_bits(pmf, {"A"}, {"B"}, {"C", "D"})).epsilon(1e-9));

        // Every produced table stays normalized.
        const auto reduced = marginalize(pmf, {"B", "D"});
        double sum = 0.0;
        for (double p : reduced.entries()) sum += p;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("natural-log base is a consistent rescale") {
    auto joint = JointPmf::from_entries({{"A", 2}, {"B", 2}}, {0.45, 0.05, 0.05, 0.45});
    const double bits = cond_mutual_info(joint, {"A"}, {"B"});
    const double nats = cond_mutual_info(joint, {"A"}, {"B"}, {}, LogBase::e);
    CHECK(nats == doctest::Approx(bits * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("from_entries validates its input") {
    CHECK_THROWS_AS(JointPmf::from_entries({{"A", 2}}, {0.5, -0.5}), ValidationError);
    CHECK_THROWS_AS(JointPmf::from_entries({{"A", 2}}, {0.6, 0.6}), ValidationError);
    CHECK_THROWS_AS(JointPmf::from_entries({{"A", 2}}, {0.5, 0.5, 0.5}), StructuralError);
    CHECK_THROWS_AS(JointPmf::from_entries({{"A", 2}, {"A", 2}}, {0.25, 0.25, 0.25, 0.25}),
                    StructuralError);
    CHECK_THROWS_AS(JointPmf::from_entries({{"A", 0}}, {}), StructuralError);

    // Explicit normalization is opt-in, never silent.
    auto p = JointPmf::from_entries({{"A", 2}}, {0.6, 0.6}, /*normalize=*/true);
    CHECK(p.entries()[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("tables beyond the size guard are refused") {
    std::vector<VariableId> vars;
    for (int i = 0; i < 9; ++i) vars.push_back({"V" + std::to_string(i), 10});
    CHECK_THROWS_AS(table_size(vars), ResourceError);
}
