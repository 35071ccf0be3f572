#include "relayrate/network_model.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace relayrate {

namespace {

std::vector<std::string> all_w_names(int n) {
    std::vector<std::string> v;
    for (int k = 0; k <= n; ++k) v.push_back(w_name(k));
    return v;
}

// Builds a factor whose table is ordered conditioning-first, so each
// conditioning slice is a contiguous block over the output variables.
Factor build_factor(const std::vector<VariableId>& outputs, const std::vector<VariableId>& given,
                    std::vector<double> entries) {
    Factor f;
    f.variables = given;
    f.variables.insert(f.variables.end(), outputs.begin(), outputs.end());
    for (const auto& g : given) f.given.push_back(g.name);
    f.entries = std::move(entries);
    return f;
}

Factor uniform_factor(const std::vector<VariableId>& outputs, const std::vector<VariableId>& given) {
    const std::size_t out_block = table_size(outputs);
    std::vector<VariableId> all = given;
    all.insert(all.end(), outputs.begin(), outputs.end());
    std::vector<double> entries(table_size(all), 1.0 / static_cast<double>(out_block));
    return build_factor(outputs, given, std::move(entries));
}

Factor random_factor(const std::vector<VariableId>& outputs, const std::vector<VariableId>& given,
                     Rng& rng) {
    const std::size_t out_block = table_size(outputs);
    std::vector<VariableId> all = given;
    all.insert(all.end(), outputs.begin(), outputs.end());
    std::vector<double> entries(table_size(all));
    for (std::size_t slice = 0; slice < entries.size() / out_block; ++slice) {
        auto probs = rng.simplex(out_block);
        std::copy(probs.begin(), probs.end(), entries.begin() + static_cast<long>(slice * out_block));
    }
    return build_factor(outputs, given, std::move(entries));
}

struct ShapeResolver {
    const DmRelayNetwork& net;
    const std::vector<int>& w_alphabets;
    const std::vector<int>& u_alphabets;

    VariableId resolve(const std::string& name) const {
        const int idx = std::stoi(name.substr(1));
        switch (name[0]) {
            case 'W': return {name, w_alphabets[static_cast<std::size_t>(idx)]};
            case 'U': return {name, u_alphabets[static_cast<std::size_t>(idx - 1)]};
            case 'X': return {name, net.input_alphabets[static_cast<std::size_t>(idx)]};
            default: return {name, net.output_alphabets[static_cast<std::size_t>(idx - 1)]};
        }
    }
    std::vector<VariableId> resolve_all(const std::vector<std::string>& names) const {
        std::vector<VariableId> out;
        for (const auto& n : names) out.push_back(resolve(n));
        return out;
    }
};

CodingDistribution make_distribution(const DmRelayNetwork& net, std::vector<int> w_alphabets,
                                     std::vector<int> u_alphabets, const Permutation& p,
                                     Rng* rng) {
    require_valid_permutation(p, net.relay_count);
    if (static_cast<int>(w_alphabets.size()) != net.relay_count + 1 ||
        static_cast<int>(u_alphabets.size()) != net.relay_count) {
        throw StructuralError("auxiliary alphabet lists must have sizes N+1 (W) and N (U)");
    }
    const ShapeResolver res{net, w_alphabets, u_alphabets};
    const auto shapes = distribution_factor_shapes(net.relay_count, p);

    CodingDistribution dist;
    dist.permutation = p;
    dist.w_alphabets = std::move(w_alphabets);
    dist.u_alphabets = std::move(u_alphabets);

    const int n = net.relay_count;
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const auto outs = res.resolve_all(shapes[i].outputs);
        const auto giv = res.resolve_all(shapes[i].given);
        Factor f = rng ? random_factor(outs, giv, *rng) : uniform_factor(outs, giv);
        if (i < static_cast<std::size_t>(n + 1)) {
            dist.common_factors.push_back(std::move(f));
        } else if (i < static_cast<std::size_t>(2 * n + 1)) {
            dist.relay_input_factors.push_back(std::move(f));
        } else if (i < static_cast<std::size_t>(3 * n + 1)) {
            dist.private_factors.push_back(std::move(f));
        } else {
            dist.source_factor = std::move(f);
        }
    }
    return dist;
}

}  // namespace

void require_valid_permutation(const Permutation& p, int n) {
    std::vector<int> sorted = p.order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(static_cast<std::size_t>(n));
    std::iota(expected.begin(), expected.end(), 1);
    if (sorted != expected) {
        std::string s;
        for (int v : p.order) s += (s.empty() ? "" : ",") + std::to_string(v);
        throw StructuralError("order [" + s + "] is not a permutation of 1.." + std::to_string(n));
    }
}

std::vector<int> CutSubset::complement(int n) const {
    std::unordered_set<int> in(members.begin(), members.end());
    std::vector<int> out;
    for (int k = 1; k <= n; ++k) {
        if (!in.count(k)) out.push_back(k);
    }
    return out;
}

std::string CutSubset::tag() const {
    std::string s = "S={";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0) s += ",";
        s += std::to_string(members[i]);
    }
    return s + "}";
}

std::vector<FactorShape> distribution_factor_shapes(int relay_count, const Permutation& p) {
    const int n = relay_count;
    std::vector<FactorShape> shapes;

    for (int k = 1; k <= n; ++k) {
        FactorShape s;
        s.label = "common factor p(W" + std::to_string(p.relay_at(k)) + "|...)";
        s.outputs = {w_name(p.relay_at(k))};
        for (int j = k + 1; j <= n; ++j) s.given.push_back(w_name(p.relay_at(j)));
        shapes.push_back(std::move(s));
    }
    {
        FactorShape s;
        s.label = "common factor p(W0|...)";
        s.outputs = {w_name(0)};
        for (int k = 1; k <= n; ++k) s.given.push_back(w_name(k));
        shapes.push_back(std::move(s));
    }
    for (int k = 1; k <= n; ++k) {
        FactorShape s;
        s.label = "relay input factor p(X" + std::to_string(p.relay_at(k)) + "|...)";
        s.outputs = {x_name(p.relay_at(k))};
        for (int j = k; j <= n; ++j) s.given.push_back(w_name(p.relay_at(j)));
        shapes.push_back(std::move(s));
    }
    for (int k = 1; k <= n; ++k) {
        FactorShape s;
        s.label = "private factor p(U" + std::to_string(p.relay_at(k)) + "|...)";
        s.outputs = {u_name(p.relay_at(k))};
        s.given = all_w_names(n);
        s.given.push_back(x_name(p.relay_at(k)));
        shapes.push_back(std::move(s));
    }
    {
        FactorShape s;
        s.label = "source factor p(X0|...)";
        s.outputs = {x_name(0)};
        for (int k = 1; k <= n; ++k) s.given.push_back(u_name(k));
        for (int k = 0; k <= n; ++k) s.given.push_back(w_name(k));
        for (int k = 1; k <= n; ++k) s.given.push_back(x_name(k));
        shapes.push_back(std::move(s));
    }
    return shapes;
}

std::vector<std::string> validate_network(const DmRelayNetwork& net) {
    std::vector<std::string> bad;
    const int n = net.relay_count;
    if (n < 1) {
        bad.push_back("relay_count must be >= 1, got " + std::to_string(n));
        return bad;
    }
    if (static_cast<int>(net.input_alphabets.size()) != n + 1) {
        bad.push_back("input_alphabets must list sizes for X0..X" + std::to_string(n));
    }
    if (static_cast<int>(net.output_alphabets.size()) != n + 1) {
        bad.push_back("output_alphabets must list sizes for Y1..Y" + std::to_string(n + 1));
    }
    for (std::size_t i = 0; i < net.input_alphabets.size(); ++i) {
        if (net.input_alphabets[i] < 1) {
            bad.push_back("alphabet of X" + std::to_string(i) + " must be >= 1");
        }
    }
    for (std::size_t i = 0; i < net.output_alphabets.size(); ++i) {
        if (net.output_alphabets[i] < 1) {
            bad.push_back("alphabet of Y" + std::to_string(i + 1) + " must be >= 1");
        }
    }
    if (!bad.empty()) return bad;

    // The channel must be exactly p(Y1..YN+1 | X0..XN) with matching sizes.
    std::vector<std::string> want_given;
    for (int k = 0; k <= n; ++k) want_given.push_back(x_name(k));
    std::vector<std::string> want_outputs;
    for (int k = 1; k <= n + 1; ++k) want_outputs.push_back(y_name(k));

    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    if (sorted(net.channel.given) != sorted(want_given) ||
        sorted(net.channel.outputs()) != sorted(want_outputs)) {
        bad.push_back("channel must condition on X0..X" + std::to_string(n) +
                      " and produce Y1..Y" + std::to_string(n + 1));
        return bad;
    }
    for (const auto& v : net.channel.variables) {
        const int idx = std::stoi(v.name.substr(1));
        const int want = v.name[0] == 'X' ? net.input_alphabets[static_cast<std::size_t>(idx)]
                                          : net.output_alphabets[static_cast<std::size_t>(idx - 1)];
        if (v.alphabet_size != want) {
            bad.push_back("channel variable " + v.name + " has alphabet size " +
                          std::to_string(v.alphabet_size) + ", network declares " +
                          std::to_string(want));
        }
    }
    if (!bad.empty()) return bad;

    return conditional_violations(net.channel, "channel");
}

std::vector<std::string> validate_distribution(const CodingDistribution& dist,
                                               const DmRelayNetwork& net) {
    std::vector<std::string> bad;
    const int n = net.relay_count;
    try {
        require_valid_permutation(dist.permutation, n);
    } catch (const StructuralError& e) {
        bad.emplace_back(e.what());
        return bad;
    }
    if (static_cast<int>(dist.w_alphabets.size()) != n + 1) {
        bad.push_back("w_alphabets must list sizes for W0..W" + std::to_string(n));
    }
    if (static_cast<int>(dist.u_alphabets.size()) != n) {
        bad.push_back("u_alphabets must list sizes for U1..U" + std::to_string(n));
    }
    for (std::size_t i = 0; i < dist.w_alphabets.size(); ++i) {
        if (dist.w_alphabets[i] < 1) bad.push_back("alphabet of W" + std::to_string(i) + " must be >= 1");
    }
    for (std::size_t i = 0; i < dist.u_alphabets.size(); ++i) {
        if (dist.u_alphabets[i] < 1) bad.push_back("alphabet of U" + std::to_string(i + 1) + " must be >= 1");
    }
    if (!bad.empty()) return bad;

    if (static_cast<int>(dist.common_factors.size()) != n + 1 ||
        static_cast<int>(dist.relay_input_factors.size()) != n ||
        static_cast<int>(dist.private_factors.size()) != n) {
        bad.push_back("distribution must carry N+1 common, N relay-input and N private factors");
        return bad;
    }

    std::vector<const Factor*> factors;
    for (const auto& f : dist.common_factors) factors.push_back(&f);
    for (const auto& f : dist.relay_input_factors) factors.push_back(&f);
    for (const auto& f : dist.private_factors) factors.push_back(&f);
    factors.push_back(&dist.source_factor);

    const ShapeResolver res{net, dist.w_alphabets, dist.u_alphabets};
    const auto shapes = distribution_factor_shapes(n, dist.permutation);

    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        const Factor& f = *factors[i];
        const FactorShape& shape = shapes[i];
        if (sorted(f.outputs()) != sorted(shape.outputs)) {
            bad.push_back(shape.label + ": outputs do not match the required structure");
            continue;
        }
        if (sorted(f.given) != sorted(shape.given)) {
            std::string want;
            for (const auto& g : shape.given) want += (want.empty() ? "" : ",") + g;
            bad.push_back(shape.label + ": conditioning set must be exactly {" + want + "}");
            continue;
        }
        bool sizes_ok = true;
        for (const auto& v : f.variables) {
            const VariableId want = res.resolve(v.name);
            if (v.alphabet_size != want.alphabet_size) {
                bad.push_back(shape.label + ": variable " + v.name + " has alphabet size " +
                              std::to_string(v.alphabet_size) + ", expected " +
                              std::to_string(want.alphabet_size));
                sizes_ok = false;
            }
        }
        if (!sizes_ok) continue;
        auto slice_bad = conditional_violations(f, shape.label);
        bad.insert(bad.end(), slice_bad.begin(), slice_bad.end());
    }
    return bad;
}

JointPmf assemble_joint(const DmRelayNetwork& net, const CodingDistribution& dist) {
    auto bad = validate_network(net);
    auto bad2 = validate_distribution(dist, net);
    bad.insert(bad.end(), bad2.begin(), bad2.end());
    if (!bad.empty()) {
        std::string msg = "cannot assemble joint:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw ValidationError(msg);
    }

    const int n = net.relay_count;
    std::vector<Factor> chain;
    // Common layers from the last position down, so conditioning variables
    // always appear before the factors that use them.
    for (int k = n; k >= 1; --k) {
        chain.push_back(dist.common_factors[static_cast<std::size_t>(k - 1)]);
    }
    chain.push_back(dist.common_factors[static_cast<std::size_t>(n)]);
    for (const auto& f : dist.relay_input_factors) chain.push_back(f);
    for (const auto& f : dist.private_factors) chain.push_back(f);
    chain.push_back(dist.source_factor);
    chain.push_back(net.channel);
    return product(chain);
}

std::vector<CutSubset> enumerate_cut_subsets(int n, bool proper_only) {
    if (n < 1) throw StructuralError("relay count must be >= 1");
    std::vector<CutSubset> subsets;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (proper_only && mask == (1u << n) - 1) continue;
        CutSubset s;
        for (int k = 1; k <= n; ++k) {
            if (mask & (1u << (k - 1))) s.members.push_back(k);
        }
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end(), [](const CutSubset& a, const CutSubset& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    });
    return subsets;
}

std::vector<Permutation> enumerate_permutations(int n, int guard) {
    if (n < 1) throw StructuralError("relay count must be >= 1");
    if (n > guard) {
        throw ResourceError("enumerating " + std::to_string(n) +
                            "! relay orders exceeds the guard of " + std::to_string(guard) +
                            "; pass an explicit order list instead");
    }
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 1);
    std::vector<Permutation> perms;
    do {
        perms.push_back(Permutation{order});
    } while (std::next_permutation(order.begin(), order.end()));
    return perms;
}

CodingDistribution uniform_independent_distribution(const DmRelayNetwork& net,
                                                    std::vector<int> w_alphabets,
                                                    std::vector<int> u_alphabets,
                                                    const Permutation& p) {
    return make_distribution(net, std::move(w_alphabets), std::move(u_alphabets), p, nullptr);
}

CodingDistribution random_coding_distribution(const DmRelayNetwork& net,
                                              std::vector<int> w_alphabets,
                                              std::vector<int> u_alphabets, const Permutation& p,
                                              Rng& rng) {
    return make_distribution(net, std::move(w_alphabets), std::move(u_alphabets), p, &rng);
}

}  // namespace relayrate
