#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "helpers.hpp"
#include "relayrate/instances.hpp"
#include "relayrate/network_model.hpp"

using namespace relayrate;

namespace {

DmRelayNetwork bsc_network() {
    // N=1, binary everywhere: Y1 and Y2 are independent crossover-0.1
    // observations of X0 and of X0 xor X1 respectively.
    DmRelayNetwork net;
    net.relay_count = 1;
    net.input_alphabets = {2, 2};
    net.output_alphabets = {2, 2};
    Factor& ch = net.channel;
    ch.variables = {{"X0", 2}, {"X1", 2}, {"Y1", 2}, {"Y2", 2}};
    ch.given = {"X0", "X1"};
    ch.entries.resize(16);
    for (int x0 = 0; x0 < 2; ++x0) {
        for (int x1 = 0; x1 < 2; ++x1) {
            for (int y1 = 0; y1 < 2; ++y1) {
                for (int y2 = 0; y2 < 2; ++y2) {
                    const double p1 = (y1 == x0) ? 0.9 : 0.1;
                    const double p2 = (y2 == (x0 ^ x1)) ? 0.9 : 0.1;
                    ch.entries[static_cast<std::size_t>(((x0 * 2 + x1) * 2 + y1) * 2 + y2)] =
                        p1 * p2;
                }
            }
        }
    }
    return net;
}

Permutation nominal(int n) {
    Permutation p;
    for (int k = 1; k <= n; ++k) p.order.push_back(k);
    return p;
}

}  // namespace

TEST_CASE("a valid network passes validation") {
    CHECK(validate_network(bsc_network()).empty());
}

TEST_CASE("an unnormalized channel slice is reported with its input index") {
    auto net = bsc_network();
    net.channel.entries[0] -= 0.02;  // slice (X0=0, X1=0) now sums to 0.98
    auto bad = validate_network(net);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("X0=0") != std::string::npos);
    CHECK(bad[0].find("X1=0") != std::string::npos);
    CHECK(bad[0].find("0.98") != std::string::npos);
}

TEST_CASE("zero alphabet sizes are violations") {
    auto net = bsc_network();
    net.input_alphabets[1] = 0;
    auto bad = validate_network(net);
    REQUIRE(!bad.empty());
    CHECK(bad[0].find("X1") != std::string::npos);
}

TEST_CASE("uniform-independent distributions validate") {
    auto net = bsc_network();
    auto dist = uniform_independent_distribution(net, {2, 2}, {2}, nominal(1));
    CHECK(validate_distribution(dist, net).empty());
}

TEST_CASE("a private factor missing conditioning variables is a structural violation") {
    auto net = bsc_network();
    auto dist = uniform_independent_distribution(net, {2, 2}, {2}, nominal(1));
    // Replace p(U1 | W0, W1, X1) with p(U1 | W0).
    Factor& f = dist.private_factors[0];
    f.variables = {{"W0", 2}, {"U1", 2}};
    f.given = {"W0"};
    f.entries = {0.5, 0.5, 0.5, 0.5};
    auto bad = validate_distribution(dist, net);
    REQUIRE(!bad.empty());
    CHECK(bad[0].find("U1") != std::string::npos);
    CHECK(bad[0].find("conditioning") != std::string::npos);
}

TEST_CASE("an unnormalized factor slice is reported with the factor name") {
    auto net = bsc_network();
    auto dist = uniform_independent_distribution(net, {2, 2}, {2}, nominal(1));
    dist.common_factors[0].entries[0] = 0.7;  // p(W1) now sums to 1.2
    auto bad = validate_distribution(dist, net);
    REQUIRE(!bad.empty());
    CHECK(bad[0].find("W1") != std::string::npos);
    CHECK(bad[0].find("sums to") != std::string::npos);
}

TEST_CASE("all-uniform assembly is the uniform joint") {
    DmRelayNetwork net = bsc_network();
    // Replace the channel with independent uniform outputs.
    std::fill(net.channel.entries.begin(), net.channel.entries.end(), 0.25);
    auto dist = uniform_independent_distribution(net, {2, 2}, {2}, nominal(1));
    auto joint = assemble_joint(net, dist);
    REQUIRE(joint.size() == 128);  // seven binary variables
    for (double p : joint.entries()) CHECK(p == doctest::Approx(1.0 / 128).epsilon(1e-12));
}

TEST_CASE("channel consistency: input marginal times channel reproduces the joint") {
    Rng rng(7);
    auto [net, dist] = random_binary_instance(1, rng);
    auto joint = assemble_joint(net, dist);

    auto xy = marginalize(joint, {"X0", "X1", "Y1", "Y2"});
    auto x = marginalize(joint, {"X0", "X1"});
    for (int x0 = 0; x0 < 2; ++x0) {
        for (int x1 = 0; x1 < 2; ++x1) {
            for (int y1 = 0; y1 < 2; ++y1) {
                for (int y2 = 0; y2 < 2; ++y2) {
                    std::map<std::string, int> val{{"X0", x0}, {"X1", x1}, {"Y1", y1}, {"Y2", y2}};
                    auto assignment_for = [&](const std::vector<VariableId>& vars) {
                        std::vector<int> a;
                        for (const auto& v : vars) a.push_back(val.at(v.name));
                        return a;
                    };
                    const double lhs = xy.value(assignment_for(xy.variables()));
                    const double rhs = x.value(assignment_for(x.variables())) *
                                       net.channel.value(assignment_for(net.channel.variables));
                    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("assembly rejects invalid distributions") {
    auto net = bsc_network();
    auto dist = uniform_independent_distribution(net, {2, 2}, {2}, nominal(1));
    dist.common_factors[0].entries[0] = 0.7;
    CHECK_THROWS_AS(assemble_joint(net, dist), ValidationError);
}

TEST_CASE("assembled joint reproduces every factor as a conditional") {
    Rng rng(99);
    auto [net, dist] = random_binary_instance(2, rng);
    auto joint = assemble_joint(net, dist);

    std::vector<const Factor*> factors;
    for (const auto& f : dist.common_factors) factors.push_back(&f);
    for (const auto& f : dist.relay_input_factors) factors.push_back(&f);
    for (const auto& f : dist.private_factors) factors.push_back(&f);
    factors.push_back(&dist.source_factor);

    for (const Factor* f : factors) {
        std::vector<std::string> names;
        for (const auto& v : f->variables) names.push_back(v.name);
        auto marg = marginalize(joint, names);
        auto given_marg = f->given.empty() ? marginalize(joint, {}) : marginalize(joint, f->given);

        // Walk the factor table; compare p(outputs|given) where p(given) > 0.
        std::vector<int> assign(f->variables.size());
        for (std::size_t flat = 0; flat < f->size(); ++flat) {
            std::size_t rem = flat;
            for (std::size_t i = f->variables.size(); i-- > 0;) {
                auto sz = static_cast<std::size_t>(f->variables[i].alphabet_size);
                assign[i] = static_cast<int>(rem % sz);
                rem /= sz;
            }
            std::vector<int> marg_assign;
            for (const auto& v : marg.variables()) {
                marg_assign.push_back(assign[static_cast<std::size_t>(f->index_of(v.name))]);
            }
            std::vector<int> given_assign;
            for (const auto& v : given_marg.variables()) {
                given_assign.push_back(assign[static_cast<std::size_t>(f->index_of(v.name))]);
            }
            const double pg = given_marg.value(given_assign);
            if (pg < 1e-12) continue;
            CHECK(marg.value(marg_assign) / pg ==
                  doctest::Approx(f->entries[flat]).epsilon(1e-9));
        }
    }
}

TEST_CASE("relay relabeling leaves the joint invariant up to renaming") {
    Rng rng(1234);
    auto [net, dist] = random_binary_instance(2, rng);
    auto joint = assemble_joint(net, dist);

    // Swap relays 1 and 2 everywhere.
    auto rename = [](const std::string& name) {
        if (name == "W1") return std::string("W2");
        if (name == "W2") return std::string("W1");
        if (name == "U1") return std::string("U2");
        if (name == "U2") return std::string("U1");
        if (name == "X1") return std::string("X2");
        if (name == "X2") return std::string("X1");
        if (name == "Y1") return std::string("Y2");
        if (name == "Y2") return std::string("Y1");
        return name;
    };
    auto rename_factor = [&](Factor f) {
        for (auto& v : f.variables) v.name = rename(v.name);
        for (auto& g : f.given) g = rename(g);
        return f;
    };

    DmRelayNetwork net2 = net;
    net2.channel = rename_factor(net.channel);
    CodingDistribution dist2;
    dist2.permutation = Permutation{{2, 1}};
    dist2.w_alphabets = dist.w_alphabets;
    dist2.u_alphabets = dist.u_alphabets;
    std::swap(dist2.w_alphabets[1], dist2.w_alphabets[2]);
    std::swap(dist2.u_alphabets[0], dist2.u_alphabets[1]);
    for (const auto& f : dist.common_factors) dist2.common_factors.push_back(rename_factor(f));
    for (const auto& f : dist.relay_input_factors) {
        dist2.relay_input_factors.push_back(rename_factor(f));
    }
    for (const auto& f : dist.private_factors) dist2.private_factors.push_back(rename_factor(f));
    dist2.source_factor = rename_factor(dist.source_factor);

    REQUIRE(validate_distribution(dist2, net2).empty());
    auto joint2 = assemble_joint(net2, dist2);

    REQUIRE(joint2.size() == joint.size());
    std::vector<int> assign(joint.variables().size());
    std::vector<int> assign2(joint2.variables().size());
    for (std::size_t flat = 0; flat < joint.size(); ++flat) {
        std::size_t rem = flat;
        const auto& vars = joint.variables();
        for (std::size_t i = vars.size(); i-- > 0;) {
            auto sz = static_cast<std::size_t>(vars[i].alphabet_size);
            assign[i] = static_cast<int>(rem % sz);
            rem /= sz;
        }
        for (std::size_t i = 0; i < joint2.variables().size(); ++i) {
            const std::string orig = rename(joint2.variables()[i].name);
            assign2[i] = assign[static_cast<std::size_t>(joint.index_of(orig))];
        }
        CHECK(joint2.value(assign2) == doctest::Approx(joint.entries()[flat]).epsilon(1e-9));
    }
}

TEST_CASE("cut subset enumeration is ordered and sized correctly") {
    auto proper = enumerate_cut_subsets(2, true);
    REQUIRE(proper.size() == 3);
    CHECK(proper[0].members.empty());
    CHECK(proper[1].members == std::vector<int>{1});
    CHECK(proper[2].members == std::vector<int>{2});

    auto all = enumerate_cut_subsets(2, false);
    REQUIRE(all.size() == 4);
    CHECK(all[3].members == std::vector<int>{1, 2});

    CHECK(enumerate_cut_subsets(3, true).size() == 7);
    CHECK(enumerate_cut_subsets(3, false).size() == 8);

    CHECK(all[0].tag() == "S={}");
    CHECK(all[3].tag() == "S={1,2}");
    CHECK(all[1].complement(2) == std::vector<int>{2});
}

TEST_CASE("permutation enumeration is lexicographic and guarded") {
    auto p1 = enumerate_permutations(1);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0].order == std::vector<int>{1});

    auto p2 = enumerate_permutations(2);
    REQUIRE(p2.size() == 2);
    CHECK(p2[0].order == std::vector<int>{1, 2});
    CHECK(p2[1].order == std::vector<int>{2, 1});

    CHECK(enumerate_permutations(3).size() == 6);
    CHECK_THROWS_AS(enumerate_permutations(7), ResourceError);
}

TEST_CASE("non-nominal permutations assemble and validate") {
    Rng rng(5);
    DmRelayNetwork net = random_dm_network(2, {2, 2, 2}, {2, 2, 2}, rng);
    Permutation p{{2, 1}};
    auto dist = random_coding_distribution(net, {2, 2, 2}, {2, 2}, p, rng);
    CHECK(validate_distribution(dist, net).empty());
    auto joint = assemble_joint(net, dist);
    CHECK(joint.size() == 2048);
}
