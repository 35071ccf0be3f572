#ifndef RELAYRATE_INSTANCES_HPP
#define RELAYRATE_INSTANCES_HPP

#include <utility>
#include <vector>

#include "relayrate/gaussian_relay.hpp"
#include "relayrate/network_model.hpp"
#include "relayrate/random.hpp"

namespace relayrate {

// Seeded instance builders shared by the verify command and the test suites.

// Network with every alphabet of the given sizes and a channel whose
// conditional slices are drawn uniformly from the simplex.
DmRelayNetwork random_dm_network(int relay_count, const std::vector<int>& input_alphabets,
                                 const std::vector<int>& output_alphabets, Rng& rng);

// All-binary network plus a random coding distribution for the nominal order.
std::pair<DmRelayNetwork, CodingDistribution> random_binary_instance(int relay_count, Rng& rng);

// Single-relay instance shaped for the full decode-forward reduction: the
// private layer is degenerate, the relay input copies its common layer and
// the source input copies the fresh common layer, so the private parts carry
// nothing and the common layers are equivalent to the channel inputs.
std::pair<DmRelayNetwork, CodingDistribution> random_df_instance(Rng& rng);

// Gains uniform in [-2, 2], unit powers.
GaussianTwoLevel random_gaussian_network(Rng& rng);

// Standard-normal amplitudes with each node block rescaled to spend exactly
// the node's power.
PowerAllocation random_allocation(const GaussianTwoLevel& net, Rng& rng);

// Same, with all beta/phi amplitudes pinned to zero (full-decoding signaling).
PowerAllocation random_zero_private_allocation(const GaussianTwoLevel& net, Rng& rng);

}  // namespace relayrate

#endif  // RELAYRATE_INSTANCES_HPP
