#include "relayrate/instances.hpp"

#include <algorithm>
#include <cmath>

namespace relayrate {

namespace {

// Channel factor p(Y1..YN+1 | X0..XN) with random conditional slices, table
// ordered conditioning-first.
Factor random_channel(int n, const std::vector<int>& input_alphabets,
                      const std::vector<int>& output_alphabets, Rng& rng) {
    Factor f;
    for (int k = 0; k <= n; ++k) {
        f.variables.push_back({x_name(k), input_alphabets[static_cast<std::size_t>(k)]});
        f.given.push_back(x_name(k));
    }
    std::size_t out_block = 1;
    for (int k = 1; k <= n + 1; ++k) {
        f.variables.push_back({y_name(k), output_alphabets[static_cast<std::size_t>(k - 1)]});
        out_block *= static_cast<std::size_t>(output_alphabets[static_cast<std::size_t>(k - 1)]);
    }
    const std::size_t total = table_size(f.variables);
    f.entries.resize(total);
    for (std::size_t slice = 0; slice < total / out_block; ++slice) {
        auto probs = rng.simplex(out_block);
        std::copy(probs.begin(), probs.end(),
                  f.entries.begin() + static_cast<long>(slice * out_block));
    }
    return f;
}

Factor deterministic_copy(const VariableId& output, const std::vector<VariableId>& given,
                          int copy_of) {
    // p(output | given) = 1 iff output equals the value of given[copy_of].
    Factor f;
    f.variables = given;
    f.variables.push_back(output);
    for (const auto& g : given) f.given.push_back(g.name);
    const std::size_t total = table_size(f.variables);
    f.entries.assign(total, 0.0);

    std::vector<int> assign(f.variables.size());
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t i = f.variables.size(); i-- > 0;) {
            auto sz = static_cast<std::size_t>(f.variables[i].alphabet_size);
            assign[i] = static_cast<int>(rem % sz);
            rem /= sz;
        }
        if (assign.back() == assign[static_cast<std::size_t>(copy_of)]) f.entries[flat] = 1.0;
    }
    return f;
}

Factor random_marginal(const VariableId& output, const std::vector<VariableId>& given, Rng& rng) {
    Factor f;
    f.variables = given;
    f.variables.push_back(output);
    for (const auto& g : given) f.given.push_back(g.name);
    const std::size_t out_block = static_cast<std::size_t>(output.alphabet_size);
    const std::size_t total = table_size(f.variables);
    f.entries.resize(total);
    for (std::size_t slice = 0; slice < total / out_block; ++slice) {
        auto probs = rng.simplex(out_block);
        std::copy(probs.begin(), probs.end(),
                  f.entries.begin() + static_cast<long>(slice * out_block));
    }
    return f;
}

}  // namespace

DmRelayNetwork random_dm_network(int relay_count, const std::vector<int>& input_alphabets,
                                 const std::vector<int>& output_alphabets, Rng& rng) {
    DmRelayNetwork net;
    net.relay_count = relay_count;
    net.input_alphabets = input_alphabets;
    net.output_alphabets = output_alphabets;
    net.channel = random_channel(relay_count, input_alphabets, output_alphabets, rng);
    return net;
}

std::pair<DmRelayNetwork, CodingDistribution> random_binary_instance(int relay_count, Rng& rng) {
    const std::vector<int> twos_in(static_cast<std::size_t>(relay_count) + 1, 2);
    DmRelayNetwork net = random_dm_network(relay_count, twos_in, twos_in, rng);
    Permutation nominal;
    for (int k = 1; k <= relay_count; ++k) nominal.order.push_back(k);
    CodingDistribution dist = random_coding_distribution(
        net, std::vector<int>(static_cast<std::size_t>(relay_count) + 1, 2),
        std::vector<int>(static_cast<std::size_t>(relay_count), 2), nominal, rng);
    return {std::move(net), std::move(dist)};
}

std::pair<DmRelayNetwork, CodingDistribution> random_df_instance(Rng& rng) {
    DmRelayNetwork net = random_dm_network(1, {2, 2}, {2, 2}, rng);
    const Permutation order{{1}};

    CodingDistribution dist;
    dist.permutation = order;
    dist.w_alphabets = {2, 2};  // W0, W1
    dist.u_alphabets = {1};     // degenerate U1

    const VariableId w0{"W0", 2}, w1{"W1", 2}, u1{"U1", 1}, x0{"X0", 2}, x1{"X1", 2};

    dist.common_factors.push_back(random_marginal(w1, {}, rng));   // p(W1)
    dist.common_factors.push_back(random_marginal(w0, {w1}, rng)); // p(W0|W1)
    dist.relay_input_factors.push_back(deterministic_copy(x1, {w1}, 0));  // X1 = W1
    {
        // Degenerate private layer: single-letter alphabet.
        Factor f;
        f.variables = {w0, w1, x1, u1};
        f.given = {"W0", "W1", "X1"};
        f.entries.assign(table_size(f.variables), 1.0);
        dist.private_factors.push_back(std::move(f));
    }
    dist.source_factor = deterministic_copy(x0, {u1, w0, w1, x1}, 1);  // X0 = W0
    return {std::move(net), std::move(dist)};
}

GaussianTwoLevel random_gaussian_network(Rng& rng) {
    GaussianTwoLevel net;
    net.g01 = rng.uniform(-2.0, 2.0);
    net.g02 = rng.uniform(-2.0, 2.0);
    net.g03 = rng.uniform(-2.0, 2.0);
    net.g12 = rng.uniform(-2.0, 2.0);
    net.g13 = rng.uniform(-2.0, 2.0);
    net.g23 = rng.uniform(-2.0, 2.0);
    net.p0 = net.p1 = net.p2 = 1.0;
    return net;
}

namespace {

void scale_block(double* begin, std::size_t len, double power) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < len; ++i) norm2 += begin[i] * begin[i];
    if (power <= 0.0 || norm2 <= 0.0) {
        for (std::size_t i = 0; i < len; ++i) begin[i] = 0.0;
        return;
    }
    const double s = std::sqrt(power / norm2);
    for (std::size_t i = 0; i < len; ++i) begin[i] *= s;
}

}  // namespace

PowerAllocation random_allocation(const GaussianTwoLevel& net, Rng& rng) {
    std::array<double, 13> v{};
    for (auto& x : v) x = rng.normal();
    scale_block(v.data(), 8, net.p0);
    scale_block(v.data() + 8, 3, net.p1);
    scale_block(v.data() + 11, 2, net.p2);
    return PowerAllocation::from_array(v);
}

PowerAllocation random_zero_private_allocation(const GaussianTwoLevel& net, Rng& rng) {
    std::array<double, 13> v{};
    v[0] = rng.normal();   // alpha00
    v[1] = rng.normal();   // alpha01
    v[2] = rng.normal();   // alpha02
    v[8] = rng.normal();   // alpha11
    v[9] = rng.normal();   // alpha12
    v[11] = rng.normal();  // alpha22
    scale_block(v.data(), 8, net.p0);
    scale_block(v.data() + 8, 3, net.p1);
    scale_block(v.data() + 11, 2, net.p2);
    return PowerAllocation::from_array(v);
}

}  // namespace relayrate
