#ifndef RELAYRATE_PDF_RATE_HPP
#define RELAYRATE_PDF_RATE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relayrate/network_model.hpp"
#include "relayrate/prob_table.hpp"

namespace relayrate {

// One decoding constraint: sum of the selected rate components is bounded by
// a mutual-information value. Coefficients are 0/1 over (R0..R_{N+1}) with
// order-relative indexing: R_k is the private rate of the relay at position k.
struct RateConstraint {
    std::vector<int> coeffs;
    double bound = 0.0;
    std::string tag;
};

struct RateConstraintSet {
    int relay_count = 0;
    std::vector<RateConstraint> constraints;
};

// An optimal message split: rates R0..R_{N+1} and their sum.
struct RateSplit {
    std::vector<double> rates;
    double total = 0.0;
};

// The evaluated achievable-rate expression: the full-decoding bound plus one
// composite bound per proper cut subset, their minimum and its argmin.
struct RateBreakdown {
    double rate = 0.0;
    std::string argmin;  // "full-decoding bound" or a subset tag "S={...}"
    std::vector<std::pair<std::string, double>> term_values;
    Permutation order;
};

inline constexpr const char* kFullDecodingTag = "full-decoding bound";

// Decoding constraints of the scheme for the given relay order, evaluated on
// the assembled joint: per relay position k the private bound and the
// private+common bound; at the destination the total bound, one bound per
// subset S of relay positions (including the empty and full sets), and the
// all-but-common bound.
RateConstraintSet constraint_set(const JointPmf& joint, const Permutation& order,
                                 LogBase base = LogBase::two);

// The achievable rate for a fixed coding distribution and order: the minimum
// over the full-decoding bound and, for each proper subset S of relay
// positions, A_S + min_{j in S^c} C_j + sum_{i in S^c} D_i.
RateBreakdown theorem_rate(const JointPmf& joint, const Permutation& order,
                           LogBase base = LogBase::two);

// Maximizes R0 + ... + R_{N+1} over the constraint polytope (with R >= 0) by
// enumerating basic feasible points: every choice of N+2 active constraints
// is solved and tested. Exact at desk scale and independent of any general
// LP machinery. Ties broken toward the lexicographically largest split.
RateSplit rate_split_lp(const RateConstraintSet& cs);

// Evaluates theorem_rate for every relay order, with distributions supplied
// per order; returns the maximizer (ties toward the lexicographically first
// order). A provider returning nullopt for an enumerated order is an error.
using DistributionProvider = std::function<std::optional<CodingDistribution>(const Permutation&)>;
std::pair<Permutation, RateBreakdown> best_over_permutations(const DmRelayNetwork& net,
                                                             const DistributionProvider& provider,
                                                             LogBase base = LogBase::two);

// Full decode-forward value of the same expression: requires every U variable
// degenerate (alphabet size 1) and a deterministic source factor, and returns
// min over relay positions of the common-decoding bound and the destination
// bound.
double df_reduction_rate(const JointPmf& joint, const Permutation& order,
                         LogBase base = LogBase::two);

namespace detail {
// Shared between theorem_rate, constraint_set and the verify command.
struct TheoremTerms {
    double full = 0.0;                // I(U,X,W;Y_dest)
    std::vector<double> common;       // C_k per position: I(W0,W_<k;Y_k|X_k,W_>=k)
    std::vector<double> private_;     // D_k per position: I(U_k;Y_k|W_all,X_k)
    std::vector<double> joint_k;      // E_k per position: I(U_k,W0,W_<k;Y_k|X_k,W_>=k)
    std::vector<double> joint_k_no_w0;  // appendix variant of E_k (W0 omitted)
    std::vector<double> subset;       // A_S per subset, aligned with subsets
    std::vector<CutSubset> subsets;   // all subsets of {1..N}
    double all_given_common = 0.0;    // I(U,X;Y_dest|W_all)
};
TheoremTerms evaluate_theorem_terms(const JointPmf& joint, const Permutation& order, LogBase base);
}  // namespace detail

}  // namespace relayrate

#endif  // RELAYRATE_PDF_RATE_HPP
