#ifndef RELAYRATE_NETWORK_MODEL_HPP
#define RELAYRATE_NETWORK_MODEL_HPP

#include <string>
#include <vector>

#include "relayrate/prob_table.hpp"
#include "relayrate/random.hpp"

namespace relayrate {

// Canonical variable names: W0..WN (common-message layers), U1..UN (private
// layers), X0..XN (channel inputs), Y1..YN+1 (channel outputs).
inline std::string w_name(int k) { return "W" + std::to_string(k); }
inline std::string u_name(int k) { return "U" + std::to_string(k); }
inline std::string x_name(int k) { return "X" + std::to_string(k); }
inline std::string y_name(int k) { return "Y" + std::to_string(k); }

// Single-source single-destination discrete memoryless network with N relays.
// Node 0 is the source, nodes 1..N relays, node N+1 the destination. The
// channel factor has outputs Y1..YN+1 given X0..XN.
struct DmRelayNetwork {
    int relay_count = 0;
    std::vector<int> input_alphabets;   // sizes of X0..XN
    std::vector<int> output_alphabets;  // sizes of Y1..YN+1
    Factor channel;
};

// Processing order of the relays: order[k-1] is the relay at position k.
struct Permutation {
    std::vector<int> order;

    int size() const { return static_cast<int>(order.size()); }
    int relay_at(int position) const { return order[static_cast<std::size_t>(position - 1)]; }

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.order == b.order;
    }
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.order < b.order;
    }
};

// Throws StructuralError unless `p` is a permutation of {1..n}.
void require_valid_permutation(const Permutation& p, int n);

// A subset of relay positions {1..N}; members kept sorted.
struct CutSubset {
    std::vector<int> members;

    std::vector<int> complement(int n) const;
    std::string tag() const;  // "S={}", "S={1,3}", ...

    friend bool operator==(const CutSubset& a, const CutSubset& b) {
        return a.members == b.members;
    }
};

// The factor set of the block-Markov coding distribution for one relay
// permutation:
//   common_factors[k-1] = p(W_{pi_k} | W_{pi_{k+1}}..W_{pi_N})  for k = 1..N
//   common_factors[N]   = p(W0 | W1..WN)
//   relay_input_factors[k-1] = p(X_{pi_k} | W_{pi_k}..W_{pi_N})
//   private_factors[k-1]     = p(U_{pi_k} | W0..WN, X_{pi_k})
//   source_factor            = p(X0 | U1..UN, W0..WN, X1..XN)
struct CodingDistribution {
    Permutation permutation;
    std::vector<int> w_alphabets;  // sizes of W0..WN
    std::vector<int> u_alphabets;  // sizes of U1..UN
    std::vector<Factor> common_factors;
    std::vector<Factor> relay_input_factors;
    std::vector<Factor> private_factors;
    Factor source_factor;
};

// Expected (outputs, given) variable sets of each factor slot, in the order
// common_factors, relay_input_factors, private_factors, source_factor.
struct FactorShape {
    std::string label;
    std::vector<std::string> outputs;
    std::vector<std::string> given;
};
std::vector<FactorShape> distribution_factor_shapes(int relay_count, const Permutation& p);

// Empty result means ok; otherwise one message per violation.
std::vector<std::string> validate_network(const DmRelayNetwork& net);
std::vector<std::string> validate_distribution(const CodingDistribution& dist,
                                               const DmRelayNetwork& net);

// Full joint over {W0..WN, U1..UN, X0..XN, Y1..YN+1}. Throws ValidationError
// listing the violations when either input fails validation.
JointPmf assemble_joint(const DmRelayNetwork& net, const CodingDistribution& dist);

// All subsets of {1..N} ordered by size then lexicographically; ∅ included.
// With `proper_only` the full set is omitted.
std::vector<CutSubset> enumerate_cut_subsets(int n, bool proper_only);

// All N! relay orders, lexicographic. Guarded because the caller almost
// certainly wants an explicit order list beyond the guard.
std::vector<Permutation> enumerate_permutations(int n, int guard = kPermutationGuard);

// Every factor uniform over its output alphabet regardless of conditioning.
CodingDistribution uniform_independent_distribution(const DmRelayNetwork& net,
                                                    std::vector<int> w_alphabets,
                                                    std::vector<int> u_alphabets,
                                                    const Permutation& p);

// Each conditional slice drawn uniformly from the probability simplex.
CodingDistribution random_coding_distribution(const DmRelayNetwork& net,
                                              std::vector<int> w_alphabets,
                                              std::vector<int> u_alphabets,
                                              const Permutation& p, Rng& rng);

}  // namespace relayrate

#endif  // RELAYRATE_NETWORK_MODEL_HPP
