#ifndef RELAYRATE_GAUSSIAN_RELAY_HPP
#define RELAYRATE_GAUSSIAN_RELAY_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relayrate/common.hpp"

namespace relayrate {

// Gaussian two-level network: amplitude gains g_ik from node i to node k and
// per-node transmit powers, with unit-variance receiver noise.
//   Y1 = g01 X0 + Z1
//   Y2 = g02 X0 + g12 X1 + Z2
//   Y3 = g03 X0 + g13 X1 + g23 X2 + Z3
struct GaussianTwoLevel {
    double g01 = 0, g02 = 0, g03 = 0, g12 = 0, g13 = 0, g23 = 0;
    double p0 = 0, p1 = 0, p2 = 0;
};

void require_valid_powers(const GaussianTwoLevel& net);

// Signed signaling amplitudes. Node blocks must spend exactly the node power:
//   node 2: alpha22^2 + beta22^2 = P2
//   node 1: alpha11^2 + alpha12^2 + beta11^2 = P1
//   node 0: alpha00^2 + alpha01^2 + alpha02^2 + beta01^2 + beta02^2
//           + phi01^2 + phi02^2 + phi03^2 = P0
struct PowerAllocation {
    double alpha00 = 0, alpha01 = 0, alpha02 = 0;
    double beta01 = 0, beta02 = 0;
    double phi01 = 0, phi02 = 0, phi03 = 0;
    double alpha11 = 0, alpha12 = 0, beta11 = 0;
    double alpha22 = 0, beta22 = 0;

    double node0_power() const;
    double node1_power() const;
    double node2_power() const;

    // Canonical coordinate order: the node-0 block
    // [alpha00, alpha01, alpha02, beta01, beta02, phi01, phi02, phi03],
    // then node 1 [alpha11, alpha12, beta11], then node 2 [alpha22, beta22].
    std::array<double, 13> as_array() const;
    static PowerAllocation from_array(const std::array<double, 13>& v);
};

// First violated node ("node 0" / "node 1" / "node 2" with the imbalance), or
// nullopt when the allocation spends each node's power within `tol`.
std::optional<std::string> power_violation(const GaussianTwoLevel& net,
                                           const PowerAllocation& alloc, double tol = kProbTol);

struct CorollaryTerms {
    double i1 = 0, i2 = 0, i3 = 0, i4 = 0, i5 = 0, i6 = 0, i7 = 0, i8 = 0;

    std::array<double, 8> as_array() const { return {i1, i2, i3, i4, i5, i6, i7, i8}; }
    double& term(int k);  // 1-based
    double term(int k) const;
};

// Which value of the fourth term feeds rate evaluation: the printed closed
// form or the log-determinant oracle (they differ; see oracle_terms).
enum class I4Source { printed, oracle };

// The printed closed forms of the eight terms, evaluated verbatim.
CorollaryTerms corollary_terms(const GaussianTwoLevel& net, const PowerAllocation& alloc,
                               LogBase base = LogBase::two);

struct CorollaryRate {
    double rate = 0.0;
    std::string argmin;
    std::vector<std::pair<std::string, double>> combinations;
};

// rate = min{I1+I4+I5, I2+I3+I5, I2+I7, I4+I6, I8}; argmin is the first
// minimizer in that (lexicographic) order.
CorollaryRate corollary_rate(const CorollaryTerms& t);

// Printed terms with I4 replaced by the log-det oracle value when requested.
CorollaryTerms effective_terms(const GaussianTwoLevel& net, const PowerAllocation& alloc,
                               I4Source i4, LogBase base = LogBase::two);

// Named zero-mean jointly Gaussian variables as linear combinations of an
// orthonormal latent basis (independent unit-variance components).
class LinearGaussianSystem {
public:
    explicit LinearGaussianSystem(int basis_dim) : dim_(basis_dim) {}

    void add_variable(const std::string& name, std::vector<double> coeffs);
    int basis_dim() const { return dim_; }
    bool has_variable(const std::string& name) const;
    const std::vector<double>& coefficients(const std::string& name) const;
    std::vector<std::string> names() const;
    double covariance(const std::string& a, const std::string& b) const;
    double variance(const std::string& a) const { return covariance(a, a); }

private:
    int dim_;
    std::vector<std::pair<std::string, std::vector<double>>> vars_;
};

// The two-level signaling as a linear system over the latent basis
// {W0, W1, W2, V1, V2, U1, U2, U3, Z1, Z2, Z3}; exposes X0..X2, Y1..Y3 and
// the latent variables themselves.
LinearGaussianSystem build_linear_system(const GaussianTwoLevel& net,
                                         const PowerAllocation& alloc);

// Exact conditional mutual information for jointly Gaussian variables:
// I(A;B|C) = 1/2 log(det S_{A|C} / det S_{A|BC}) via Schur complements.
// Singular conditioning is handled by pseudo-determinants over the
// eigenvalues above a relative threshold; a rank drop caused by B alone
// yields +infinity.
double gaussian_cond_mi(const LinearGaussianSystem& sys, const std::vector<std::string>& a,
                        const std::vector<std::string>& b,
                        const std::vector<std::string>& c = {}, LogBase base = LogBase::two);

// The eight terms evaluated as conditional mutual informations of the
// linear system (the rate expression's constraint terms specialized to two
// levels), independent of the printed closed forms:
//   I1 = I(U1;Y1|W0,W1,W2,X1)        I2 = I(U1,W0;Y1|X1,W1,W2)
//   I3 = I(U2;Y2|W0,W1,W2,X2)        I4 = I(U2,W0,W1;Y2|X2,W2)
//   I5 = I(X0;Y3|U1,U2,X1,X2,W0..W2) I6 = I(X0,X1,U1;Y3|X2,U2,W0..W2)
//   I7 = I(X0,X2,U2;Y3|X1,U1,W0..W2) I8 = I(U1,U2,X0,X1,X2,W0..W2;Y3)
CorollaryTerms oracle_terms(const LinearGaussianSystem& sys, LogBase base = LogBase::two);

using Cov3 = std::array<std::array<double, 3>, 3>;

// Input covariance of (X0, X1, X2) induced by an allocation.
Cov3 input_covariance(const PowerAllocation& alloc);

struct CutsetBreakdown {
    double value = 0.0;
    std::string argmin;
    std::vector<std::pair<std::string, double>> cuts;
};

// Standard cut-set diagnostic at a fixed jointly Gaussian input covariance:
// min over the four source-side cuts of I(X_cut; Y_rest | X_rest). The
// covariance must be PSD with diagonal within the power caps.
CutsetBreakdown cutset_cuts(const GaussianTwoLevel& net, const Cov3& input_cov,
                            LogBase base = LogBase::two);
double cutset_upper_bound(const GaussianTwoLevel& net, const Cov3& input_cov,
                          LogBase base = LogBase::two);

}  // namespace relayrate

#endif  // RELAYRATE_GAUSSIAN_RELAY_HPP
