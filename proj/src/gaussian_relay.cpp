#include "relayrate/gaussian_relay.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace relayrate {

namespace {

double sq(double x) { return x * x; }

double half_log(double x, LogBase base) { return 0.5 * log_in_base(x, base); }

// Latent basis indices for the two-level signaling system.
enum Basis : int { bW0 = 0, bW1, bW2, bV1, bV2, bU1, bU2, bU3, bZ1, bZ2, bZ3, kBasis };

Eigen::MatrixXd coeff_matrix(const LinearGaussianSystem& sys,
                             const std::vector<std::string>& names) {
    Eigen::MatrixXd m(static_cast<long>(names.size()), sys.basis_dim());
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& c = sys.coefficients(names[i]);
        for (int j = 0; j < sys.basis_dim(); ++j) m(static_cast<long>(i), j) = c[static_cast<std::size_t>(j)];
    }
    return m;
}

// Covariance of A given C, via the Schur complement with an
// eigenvalue-thresholded pseudo-inverse of the conditioning block.
Eigen::MatrixXd conditional_covariance(const Eigen::MatrixXd& fa, const Eigen::MatrixXd& fc) {
    Eigen::MatrixXd saa = fa * fa.transpose();
    if (fc.rows() == 0) return saa;
    Eigen::MatrixXd scc = fc * fc.transpose();
    Eigen::MatrixXd sac = fa * fc.transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scc);
    const double scale = std::max(es.eigenvalues().maxCoeff(), 0.0);
    const double cutoff = kEigTol * std::max(scale, 1e-300);
    Eigen::VectorXd inv = es.eigenvalues();
    for (long i = 0; i < inv.size(); ++i) inv(i) = inv(i) > cutoff ? 1.0 / inv(i) : 0.0;
    Eigen::MatrixXd pinv = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
    return saa - sac * pinv * sac.transpose();
}

void require_disjoint_names(const std::vector<std::string>& a, const std::vector<std::string>& b,
                            const char* what) {
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (x == y) throw StructuralError(std::string(what) + ": sets overlap on '" + x + "'");
        }
    }
}

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

void require_valid_powers(const GaussianTwoLevel& net) {
    if (net.p0 < 0 || net.p1 < 0 || net.p2 < 0) {
        throw ValidationError("transmit powers must be nonnegative");
    }
}

double PowerAllocation::node0_power() const {
    return sq(alpha00) + sq(alpha01) + sq(alpha02) + sq(beta01) + sq(beta02) + sq(phi01) +
           sq(phi02) + sq(phi03);
}
double PowerAllocation::node1_power() const { return sq(alpha11) + sq(alpha12) + sq(beta11); }
double PowerAllocation::node2_power() const { return sq(alpha22) + sq(beta22); }

std::array<double, 13> PowerAllocation::as_array() const {
    return {alpha00, alpha01, alpha02, beta01, beta02, phi01, phi02, phi03,
            alpha11, alpha12, beta11, alpha22, beta22};
}

PowerAllocation PowerAllocation::from_array(const std::array<double, 13>& v) {
    PowerAllocation a;
    a.alpha00 = v[0];
    a.alpha01 = v[1];
    a.alpha02 = v[2];
    a.beta01 = v[3];
    a.beta02 = v[4];
    a.phi01 = v[5];
    a.phi02 = v[6];
    a.phi03 = v[7];
    a.alpha11 = v[8];
    a.alpha12 = v[9];
    a.beta11 = v[10];
    a.alpha22 = v[11];
    a.beta22 = v[12];
    return a;
}

std::optional<std::string> power_violation(const GaussianTwoLevel& net,
                                           const PowerAllocation& alloc, double tol) {
    const double d0 = std::abs(alloc.node0_power() - net.p0);
    const double d1 = std::abs(alloc.node1_power() - net.p1);
    const double d2 = std::abs(alloc.node2_power() - net.p2);
    if (d0 > tol) return "node 0 spends " + std::to_string(alloc.node0_power()) +
                         ", power constraint is " + std::to_string(net.p0);
    if (d1 > tol) return "node 1 spends " + std::to_string(alloc.node1_power()) +
                         ", power constraint is " + std::to_string(net.p1);
    if (d2 > tol) return "node 2 spends " + std::to_string(alloc.node2_power()) +
                         ", power constraint is " + std::to_string(net.p2);
    return std::nullopt;
}

double& CorollaryTerms::term(int k) {
    switch (k) {
        case 1: return i1;
        case 2: return i2;
        case 3: return i3;
        case 4: return i4;
        case 5: return i5;
        case 6: return i6;
        case 7: return i7;
        case 8: return i8;
        default: throw StructuralError("term index must be 1..8");
    }
}

double CorollaryTerms::term(int k) const { return const_cast<CorollaryTerms*>(this)->term(k); }

CorollaryTerms corollary_terms(const GaussianTwoLevel& net, const PowerAllocation& alloc,
                               LogBase base) {
    require_valid_powers(net);
    if (auto bad = power_violation(net, alloc)) {
        throw ValidationError("power allocation violates the constraint at " + *bad);
    }
    const auto& a = alloc;
    const double den1 = sq(net.g01) * (sq(a.beta02) + sq(a.phi02) + sq(a.phi03)) + 1.0;
    const double den2 = sq(net.g02 * a.beta01 + net.g12 * a.beta11) +
                        sq(net.g02) * (sq(a.phi01) + sq(a.phi03)) + 1.0;

    CorollaryTerms t;
    t.i1 = half_log(1.0 + sq(net.g01) * sq(a.phi01) / den1, base);
    t.i2 = half_log(1.0 + sq(net.g01) * (sq(a.alpha00) + sq(a.phi01)) / den1, base);
    t.i3 = half_log(1.0 + sq(net.g02) * sq(a.phi02) / den2, base);
    t.i4 = half_log(1.0 + (sq(net.g02) * sq(a.alpha00 + a.phi02) +
                           sq(net.g02 * a.alpha01 + net.g12 * a.alpha11)) /
                              den2,
                    base);
    t.i5 = half_log(1.0 + sq(net.g03) * sq(a.phi03), base);
    t.i6 = half_log(1.0 + sq(net.g03 * a.beta01 + net.g13 * a.beta11) +
                        sq(net.g03) * (sq(a.phi01) + sq(a.phi03)),
                    base);
    t.i7 = half_log(1.0 + sq(net.g03 * a.beta02 + net.g23 * a.beta22) +
                        sq(net.g03) * (sq(a.phi02) + sq(a.phi03)),
                    base);
    t.i8 = half_log(
        1.0 + sq(net.g03) * net.p0 + sq(net.g13) * net.p1 + sq(net.g23) * net.p2 +
            2.0 * net.g03 * net.g13 * (a.alpha01 * a.alpha11 + a.alpha02 * a.alpha12 + a.beta01 * a.beta11) +
            2.0 * net.g03 * net.g23 * (a.alpha02 * a.alpha22 + a.beta02 * a.beta22) +
            2.0 * net.g13 * net.g23 * a.alpha12 * a.alpha22,
        base);
    return t;
}

CorollaryRate corollary_rate(const CorollaryTerms& t) {
    CorollaryRate r;
    r.combinations = {{"I1+I4+I5", t.i1 + t.i4 + t.i5},
                      {"I2+I3+I5", t.i2 + t.i3 + t.i5},
                      {"I2+I7", t.i2 + t.i7},
                      {"I4+I6", t.i4 + t.i6},
                      {"I8", t.i8}};
    r.rate = r.combinations.front().second;
    r.argmin = r.combinations.front().first;
    for (const auto& [tag, value] : r.combinations) {
        if (value < r.rate) {
            r.rate = value;
            r.argmin = tag;
        }
    }
    return r;
}

CorollaryTerms effective_terms(const GaussianTwoLevel& net, const PowerAllocation& alloc,
                               I4Source i4, LogBase base) {
    CorollaryTerms t = corollary_terms(net, alloc, base);
    if (i4 == I4Source::oracle) {
        const auto sys = build_linear_system(net, alloc);
        t.i4 = gaussian_cond_mi(sys, {"U2", "W0", "W1"}, {"Y2"}, {"X2", "W2"}, base);
    }
    return t;
}

void LinearGaussianSystem::add_variable(const std::string& name, std::vector<double> coeffs) {
    if (has_variable(name)) throw StructuralError("variable '" + name + "' already defined");
    if (static_cast<int>(coeffs.size()) != dim_) {
        throw StructuralError("variable '" + name + "' has " + std::to_string(coeffs.size()) +
                              " coefficients, basis dimension is " + std::to_string(dim_));
    }
    vars_.emplace_back(name, std::move(coeffs));
}

bool LinearGaussianSystem::has_variable(const std::string& name) const {
    for (const auto& [n, c] : vars_) {
        if (n == name) return true;
    }
    return false;
}

const std::vector<double>& LinearGaussianSystem::coefficients(const std::string& name) const {
    for (const auto& [n, c] : vars_) {
        if (n == name) return c;
    }
    throw StructuralError("unknown system variable '" + name + "'");
}

std::vector<std::string> LinearGaussianSystem::names() const {
    std::vector<std::string> out;
    for (const auto& [n, c] : vars_) out.push_back(n);
    return out;
}

double LinearGaussianSystem::covariance(const std::string& a, const std::string& b) const {
    const auto& ca = coefficients(a);
    const auto& cb = coefficients(b);
    double s = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i) s += ca[i] * cb[i];
    return s;
}

LinearGaussianSystem build_linear_system(const GaussianTwoLevel& net,
                                         const PowerAllocation& alloc) {
    require_valid_powers(net);
    if (auto bad = power_violation(net, alloc)) {
        throw ValidationError("power allocation violates the constraint at " + *bad);
    }

    LinearGaussianSystem sys(kBasis);
    auto unit = [](int at) {
        std::vector<double> v(kBasis, 0.0);
        v[static_cast<std::size_t>(at)] = 1.0;
        return v;
    };
    sys.add_variable("W0", unit(bW0));
    sys.add_variable("W1", unit(bW1));
    sys.add_variable("W2", unit(bW2));
    sys.add_variable("V1", unit(bV1));
    sys.add_variable("V2", unit(bV2));
    sys.add_variable("U1", unit(bU1));
    sys.add_variable("U2", unit(bU2));
    sys.add_variable("U3", unit(bU3));

    std::vector<double> x2(kBasis, 0.0);
    x2[bW2] = alloc.alpha22;
    x2[bV2] = alloc.beta22;
    std::vector<double> x1(kBasis, 0.0);
    x1[bW1] = alloc.alpha11;
    x1[bW2] = alloc.alpha12;
    x1[bV1] = alloc.beta11;
    std::vector<double> x0(kBasis, 0.0);
    x0[bW0] = alloc.alpha00;
    x0[bW1] = alloc.alpha01;
    x0[bW2] = alloc.alpha02;
    x0[bV1] = alloc.beta01;
    x0[bV2] = alloc.beta02;
    x0[bU1] = alloc.phi01;
    x0[bU2] = alloc.phi02;
    x0[bU3] = alloc.phi03;

    auto receive = [&](std::initializer_list<std::pair<double, const std::vector<double>*>> gains,
                       int noise) {
        std::vector<double> y(kBasis, 0.0);
        for (const auto& [g, x] : gains) {
            for (int i = 0; i < kBasis; ++i) y[static_cast<std::size_t>(i)] += g * (*x)[static_cast<std::size_t>(i)];
        }
        y[static_cast<std::size_t>(noise)] = 1.0;
        return y;
    };
    sys.add_variable("Y1", receive({{net.g01, &x0}}, bZ1));
    sys.add_variable("Y2", receive({{net.g02, &x0}, {net.g12, &x1}}, bZ2));
    sys.add_variable("Y3", receive({{net.g03, &x0}, {net.g13, &x1}, {net.g23, &x2}}, bZ3));
    sys.add_variable("X0", std::move(x0));
    sys.add_variable("X1", std::move(x1));
    sys.add_variable("X2", std::move(x2));
    return sys;
}

double gaussian_cond_mi(const LinearGaussianSystem& sys, const std::vector<std::string>& a,
                        const std::vector<std::string>& b, const std::vector<std::string>& c,
                        LogBase base) {
    require_disjoint_names(a, b, "gaussian_cond_mi A/B");
    require_disjoint_names(a, c, "gaussian_cond_mi A/C");
    require_disjoint_names(b, c, "gaussian_cond_mi B/C");
    if (a.empty() || b.empty()) return 0.0;

    const Eigen::MatrixXd fa = coeff_matrix(sys, a);
    const Eigen::MatrixXd fc = coeff_matrix(sys, c);
    const Eigen::MatrixXd fbc = coeff_matrix(sys, cat(b, c));

    const Eigen::MatrixXd s1 = conditional_covariance(fa, fc);
    const Eigen::MatrixXd s2 = conditional_covariance(fa, fbc);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(s1);
    const double scale = std::max(es1.eigenvalues().maxCoeff(), 0.0);
    if (scale <= 0.0) return 0.0;  // A is deterministic given C
    const double cutoff = kEigTol * scale;

    int rank1 = 0;
    double logdet1 = 0.0;
    for (long i = 0; i < es1.eigenvalues().size(); ++i) {
        if (es1.eigenvalues()(i) > cutoff) {
            ++rank1;
            logdet1 += std::log(es1.eigenvalues()(i));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(s2);
    int rank2 = 0;
    double logdet2 = 0.0;
    for (long i = 0; i < es2.eigenvalues().size(); ++i) {
        if (es2.eigenvalues()(i) > cutoff) {
            ++rank2;
            logdet2 += std::log(es2.eigenvalues()(i));
        }
    }
    if (rank2 < rank1) return std::numeric_limits<double>::infinity();

    const double nats = 0.5 * (logdet1 - logdet2);
    const double value = base == LogBase::two ? nats / std::log(2.0) : nats;
    if (value < -kMiClampTol) {
        throw NumericalConsistencyError("gaussian conditional mutual information " +
                                        std::to_string(value) + " below the -1e-9 rounding bound");
    }
    return std::max(value, 0.0);
}

CorollaryTerms oracle_terms(const LinearGaussianSystem& sys, LogBase base) {
    const std::vector<std::string> all_w = {"W0", "W1", "W2"};
    CorollaryTerms t;
    t.i1 = gaussian_cond_mi(sys, {"U1"}, {"Y1"}, {"W0", "W1", "W2", "X1"}, base);
    t.i2 = gaussian_cond_mi(sys, {"U1", "W0"}, {"Y1"}, {"X1", "W1", "W2"}, base);
    t.i3 = gaussian_cond_mi(sys, {"U2"}, {"Y2"}, {"W0", "W1", "W2", "X2"}, base);
    t.i4 = gaussian_cond_mi(sys, {"U2", "W0", "W1"}, {"Y2"}, {"X2", "W2"}, base);
    t.i5 = gaussian_cond_mi(sys, {"X0"}, {"Y3"}, {"U1", "U2", "X1", "X2", "W0", "W1", "W2"}, base);
    t.i6 = gaussian_cond_mi(sys, {"X0", "X1", "U1"}, {"Y3"}, {"X2", "U2", "W0", "W1", "W2"}, base);
    t.i7 = gaussian_cond_mi(sys, {"X0", "X2", "U2"}, {"Y3"}, {"X1", "U1", "W0", "W1", "W2"}, base);
    t.i8 = gaussian_cond_mi(sys, {"U1", "U2", "X0", "X1", "X2", "W0", "W1", "W2"}, {"Y3"}, {}, base);
    return t;
}

Cov3 input_covariance(const PowerAllocation& a) {
    const double c01 = a.alpha01 * a.alpha11 + a.alpha02 * a.alpha12 + a.beta01 * a.beta11;
    const double c02 = a.alpha02 * a.alpha22 + a.beta02 * a.beta22;
    const double c12 = a.alpha12 * a.alpha22;
    return Cov3{{{a.node0_power(), c01, c02}, {c01, a.node1_power(), c12}, {c02, c12, a.node2_power()}}};
}

CutsetBreakdown cutset_cuts(const GaussianTwoLevel& net, const Cov3& input_cov, LogBase base) {
    require_valid_powers(net);
    Eigen::Matrix3d q;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) q(i, j) = input_cov[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    if ((q - q.transpose()).cwiseAbs().maxCoeff() > kProbTol) {
        throw ValidationError("input covariance must be symmetric");
    }
    q = 0.5 * (q + q.transpose().eval());

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(q);
    if (es.eigenvalues().minCoeff() < -kProbTol) {
        throw ValidationError("input covariance is not positive semidefinite (min eigenvalue " +
                              std::to_string(es.eigenvalues().minCoeff()) + ")");
    }
    const double caps[3] = {net.p0, net.p1, net.p2};
    for (int i = 0; i < 3; ++i) {
        if (q(i, i) > caps[i] + kProbTol) {
            throw ValidationError("input covariance exceeds the power cap at node " +
                                  std::to_string(i) + ": " + std::to_string(q(i, i)) + " > " +
                                  std::to_string(caps[i]));
        }
    }

    // Factor q = L L^T and express X0..X2 over a 3-dim latent basis + noise.
    Eigen::Vector3d lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::Matrix3d l = es.eigenvectors() * lam.asDiagonal();

    constexpr int kDim = 6;  // S1 S2 S3 Z1 Z2 Z3
    LinearGaussianSystem sys(kDim);
    auto xrow = [&](int i) {
        std::vector<double> v(kDim, 0.0);
        for (int j = 0; j < 3; ++j) v[static_cast<std::size_t>(j)] = l(i, j);
        return v;
    };
    const auto x0 = xrow(0), x1 = xrow(1), x2 = xrow(2);
    auto yrow = [&](std::initializer_list<std::pair<double, const std::vector<double>*>> gains,
                    int noise) {
        std::vector<double> y(kDim, 0.0);
        for (const auto& [g, x] : gains) {
            for (int i = 0; i < kDim; ++i) y[static_cast<std::size_t>(i)] += g * (*x)[static_cast<std::size_t>(i)];
        }
        y[static_cast<std::size_t>(noise)] = 1.0;
        return y;
    };
    sys.add_variable("X0", x0);
    sys.add_variable("X1", x1);
    sys.add_variable("X2", x2);
    sys.add_variable("Y1", yrow({{net.g01, &x0}}, 3));
    sys.add_variable("Y2", yrow({{net.g02, &x0}, {net.g12, &x1}}, 4));
    sys.add_variable("Y3", yrow({{net.g03, &x0}, {net.g13, &x1}, {net.g23, &x2}}, 5));

    CutsetBreakdown out;
    out.cuts = {
        {"cut{0}", gaussian_cond_mi(sys, {"X0"}, {"Y1", "Y2", "Y3"}, {"X1", "X2"}, base)},
        {"cut{0,1}", gaussian_cond_mi(sys, {"X0", "X1"}, {"Y2", "Y3"}, {"X2"}, base)},
        {"cut{0,2}", gaussian_cond_mi(sys, {"X0", "X2"}, {"Y1", "Y3"}, {"X1"}, base)},
        {"cut{0,1,2}", gaussian_cond_mi(sys, {"X0", "X1", "X2"}, {"Y3"}, {}, base)},
    };
    out.value = out.cuts.front().second;
    out.argmin = out.cuts.front().first;
    for (const auto& [tag, value] : out.cuts) {
        if (value < out.value) {
            out.value = value;
            out.argmin = tag;
        }
    }
    return out;
}

double cutset_upper_bound(const GaussianTwoLevel& net, const Cov3& input_cov, LogBase base) {
    return cutset_cuts(net, input_cov, base).value;
}

}  // namespace relayrate
