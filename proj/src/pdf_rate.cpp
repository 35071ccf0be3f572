#include "relayrate/pdf_rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relayrate {

namespace {

int relay_count_from(const Permutation& order) {
    const int n = order.size();
    require_valid_permutation(order, n);
    return n;
}

void require_variables(const JointPmf& joint, int n) {
    auto need = [&](const std::string& name) {
        if (!joint.has_variable(name)) {
            throw StructuralError("joint table is missing variable '" + name + "'");
        }
    };
    for (int k = 0; k <= n; ++k) need(w_name(k));
    for (int k = 1; k <= n; ++k) need(u_name(k));
    for (int k = 0; k <= n; ++k) need(x_name(k));
    for (int k = 1; k <= n + 1; ++k) need(y_name(k));
}

// Solves a d x d system by Gaussian elimination with partial pivoting.
// Returns false when the system is (near-)singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
    const std::size_t d = b.size();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const double m = a[r][col] / a[col][col];
            if (m == 0.0) continue;
            for (std::size_t c = col; c < d; ++c) a[r][c] -= m * a[col][c];
            b[r] -= m * b[col];
        }
    }
    x.resize(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = b[i] / a[i][i];
    return true;
}

}  // namespace

namespace detail {

TheoremTerms evaluate_theorem_terms(const JointPmf& joint, const Permutation& order,
                                    LogBase base) {
    const int n = relay_count_from(order);
    require_variables(joint, n);

    std::vector<std::string> all_w;
    for (int k = 0; k <= n; ++k) all_w.push_back(w_name(k));
    std::vector<std::string> all_u;
    for (int k = 1; k <= n; ++k) all_u.push_back(u_name(k));
    std::vector<std::string> all_x;
    for (int k = 0; k <= n; ++k) all_x.push_back(x_name(k));
    const std::string y_dest = y_name(n + 1);

    TheoremTerms t;

    // Destination full bound: I(U1..UN, X0..XN, W0..WN; Y_{N+1}).
    {
        std::vector<std::string> msg = all_u;
        msg.insert(msg.end(), all_x.begin(), all_x.end());
        msg.insert(msg.end(), all_w.begin(), all_w.end());
        t.full = cond_mutual_info(joint, msg, {y_dest}, {}, base);
    }
    // All-but-common bound: I(U1..UN, X0..XN; Y_{N+1} | W0..WN).
    {
        std::vector<std::string> msg = all_u;
        msg.insert(msg.end(), all_x.begin(), all_x.end());
        t.all_given_common = cond_mutual_info(joint, msg, {y_dest}, all_w, base);
    }

    // Relay-side terms, order-relative position k.
    for (int k = 1; k <= n; ++k) {
        const int relay = order.relay_at(k);
        const std::string yk = y_name(relay);
        const std::string xk = x_name(relay);
        const std::string uk = u_name(relay);

        std::vector<std::string> later_w;  // W at positions >= k, conditioning side
        for (int j = k; j <= n; ++j) later_w.push_back(w_name(order.relay_at(j)));
        std::vector<std::string> earlier_w;  // W0 plus W at positions < k, message side
        earlier_w.push_back(w_name(0));
        for (int j = 1; j < k; ++j) earlier_w.push_back(w_name(order.relay_at(j)));

        std::vector<std::string> cond_dk = all_w;
        cond_dk.push_back(xk);
        t.private_.push_back(cond_mutual_info(joint, {uk}, {yk}, cond_dk, base));

        std::vector<std::string> cond_ck = later_w;
        cond_ck.push_back(xk);
        t.common.push_back(cond_mutual_info(joint, earlier_w, {yk}, cond_ck, base));

        std::vector<std::string> msg_ek = earlier_w;
        msg_ek.push_back(uk);
        t.joint_k.push_back(cond_mutual_info(joint, msg_ek, {yk}, cond_ck, base));

        std::vector<std::string> msg_ek2(earlier_w.begin() + 1, earlier_w.end());
        msg_ek2.push_back(uk);
        t.joint_k_no_w0.push_back(cond_mutual_info(joint, msg_ek2, {yk}, cond_ck, base));
    }

    // Destination subset bounds A_S over all subsets of positions.
    t.subsets = enumerate_cut_subsets(n, /*proper_only=*/false);
    for (const CutSubset& s : t.subsets) {
        std::vector<std::string> msg = {x_name(0)};
        for (int pos : s.members) {
            msg.push_back(x_name(order.relay_at(pos)));
            msg.push_back(u_name(order.relay_at(pos)));
        }
        std::vector<std::string> cond = all_w;
        for (int pos : s.complement(n)) {
            cond.push_back(x_name(order.relay_at(pos)));
            cond.push_back(u_name(order.relay_at(pos)));
        }
        t.subset.push_back(cond_mutual_info(joint, msg, {y_dest}, cond, base));
    }
    return t;
}

}  // namespace detail

RateConstraintSet constraint_set(const JointPmf& joint, const Permutation& order, LogBase base) {
    const int n = order.size();
    const auto t = detail::evaluate_theorem_terms(joint, order, base);
    const int dim = n + 2;

    RateConstraintSet cs;
    cs.relay_count = n;

    auto coeffs_of = [&](std::initializer_list<int> idx) {
        std::vector<int> c(static_cast<std::size_t>(dim), 0);
        for (int i : idx) c[static_cast<std::size_t>(i)] = 1;
        return c;
    };

    for (int k = 1; k <= n; ++k) {
        const std::string eq_priv = k == 1 ? "eq3" : "eq5";
        const std::string eq_joint = k == 1 ? "eq4" : "eq6";
        cs.constraints.push_back({coeffs_of({k}), t.private_[static_cast<std::size_t>(k - 1)],
                                  eq_priv + " relay" + std::to_string(k)});
        cs.constraints.push_back({coeffs_of({0, k}), t.joint_k[static_cast<std::size_t>(k - 1)],
                                  eq_joint + " relay" + std::to_string(k)});
    }
    {
        std::vector<int> all(static_cast<std::size_t>(dim), 1);
        cs.constraints.push_back({all, t.full, "eq7"});
    }
    for (std::size_t si = 0; si < t.subsets.size(); ++si) {
        const CutSubset& s = t.subsets[si];
        std::vector<int> c(static_cast<std::size_t>(dim), 0);
        for (int pos : s.members) c[static_cast<std::size_t>(pos)] = 1;
        c[static_cast<std::size_t>(n + 1)] = 1;
        const std::string eq = s.members.empty() ? "eq9" : "eq8";
        cs.constraints.push_back({std::move(c), t.subset[si], eq + " " + s.tag()});
    }
    {
        std::vector<int> c(static_cast<std::size_t>(dim), 1);
        c[0] = 0;
        cs.constraints.push_back({std::move(c), t.all_given_common, "eq10"});
    }
    return cs;
}

RateBreakdown theorem_rate(const JointPmf& joint, const Permutation& order, LogBase base) {
    const int n = order.size();
    const auto t = detail::evaluate_theorem_terms(joint, order, base);

    RateBreakdown out;
    out.order = order;
    out.term_values.emplace_back(kFullDecodingTag, t.full);

    for (std::size_t si = 0; si < t.subsets.size(); ++si) {
        const CutSubset& s = t.subsets[si];
        if (static_cast<int>(s.members.size()) == n) continue;  // proper subsets only
        const auto comp = s.complement(n);
        double min_common = std::numeric_limits<double>::infinity();
        double sum_private = 0.0;
        for (int pos : comp) {
            min_common = std::min(min_common, t.common[static_cast<std::size_t>(pos - 1)]);
            sum_private += t.private_[static_cast<std::size_t>(pos - 1)];
        }
        out.term_values.emplace_back(s.tag(), t.subset[si] + min_common + sum_private);
    }

    out.rate = out.term_values.front().second;
    out.argmin = out.term_values.front().first;
    for (const auto& [tag, value] : out.term_values) {
        if (value < out.rate) {
            out.rate = value;
            out.argmin = tag;
        }
    }
    return out;
}

RateSplit rate_split_lp(const RateConstraintSet& cs) {
    if (cs.constraints.empty()) throw StructuralError("constraint set is empty");
    const std::size_t d = static_cast<std::size_t>(cs.relay_count) + 2;

    // Rows a.x <= b: the rate constraints followed by -x_i <= 0.
    std::vector<std::vector<double>> rows;
    std::vector<double> bounds;
    for (const auto& c : cs.constraints) {
        if (c.coeffs.size() != d) {
            throw StructuralError("constraint '" + c.tag + "' has " +
                                  std::to_string(c.coeffs.size()) + " coefficients, expected " +
                                  std::to_string(d));
        }
        rows.emplace_back(c.coeffs.begin(), c.coeffs.end());
        bounds.push_back(c.bound);
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> r(d, 0.0);
        r[i] = -1.0;
        rows.push_back(std::move(r));
        bounds.push_back(0.0);
    }
    const std::size_t m = rows.size();

    auto feasible = [&](const std::vector<double>& x) {
        for (std::size_t r = 0; r < m; ++r) {
            double lhs = 0.0;
            for (std::size_t i = 0; i < d; ++i) lhs += rows[r][i] * x[i];
            if (lhs > bounds[r] + 1e-9) return false;
        }
        return true;
    };

    // The origin is always feasible (bounds are nonnegative).
    std::vector<double> best(d, 0.0);
    double best_obj = 0.0;

    constexpr double kTieEps = 1e-12;
    auto lexicographically_larger = [&](const std::vector<double>& x) {
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] > best[i] + kTieEps) return true;
            if (x[i] < best[i] - kTieEps) return false;
        }
        return false;
    };

    // Visit every basic point: solve each choice of d rows as equalities.
    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i) pick[i] = i;
    auto next_combination = [&]() {
        std::size_t i = d;
        while (i-- > 0) {
            if (pick[i] + (d - i) < m) {
                ++pick[i];
                for (std::size_t j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    std::vector<double> x;
    do {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (std::size_t i : pick) {
            a.push_back(rows[i]);
            b.push_back(bounds[i]);
        }
        if (solve_square(std::move(a), std::move(b), x) && feasible(x)) {
            double obj = 0.0;
            for (double v : x) obj += v;
            if (obj > best_obj + kTieEps ||
                (std::abs(obj - best_obj) <= kTieEps && lexicographically_larger(x))) {
                best = x;
                best_obj = obj;
            }
        }
    } while (next_combination());

    RateSplit split;
    split.rates = best;
    for (double& r : split.rates) {
        if (r < 0.0) r = 0.0;  // rounding from the linear solves
    }
    split.total = 0.0;
    for (double r : split.rates) split.total += r;
    return split;
}

std::pair<Permutation, RateBreakdown> best_over_permutations(const DmRelayNetwork& net,
                                                             const DistributionProvider& provider,
                                                             LogBase base) {
    const auto perms = enumerate_permutations(net.relay_count);
    std::optional<std::pair<Permutation, RateBreakdown>> best;
    for (const Permutation& p : perms) {
        auto dist = provider(p);
        if (!dist) {
            std::string s;
            for (int v : p.order) s += (s.empty() ? "" : ",") + std::to_string(v);
            throw StructuralError("distribution provider has no entry for order [" + s + "]");
        }
        RateBreakdown rb = theorem_rate(assemble_joint(net, *dist), p, base);
        if (!best || rb.rate > best->second.rate) best = {p, std::move(rb)};
    }
    return *best;
}

double df_reduction_rate(const JointPmf& joint, const Permutation& order, LogBase base) {
    const int n = relay_count_from(order);
    require_variables(joint, n);

    for (int k = 1; k <= n; ++k) {
        const auto& vars = joint.variables();
        const int idx = joint.index_of(u_name(k));
        if (vars[static_cast<std::size_t>(idx)].alphabet_size != 1) {
            throw ValidationError("df reduction requires degenerate private variables; " +
                                  u_name(k) + " has alphabet size " +
                                  std::to_string(vars[static_cast<std::size_t>(idx)].alphabet_size));
        }
    }
    // The destination's private part is degenerate iff the source input is
    // determined by the variables it is superimposed on.
    std::vector<std::string> parents;
    for (int k = 1; k <= n; ++k) parents.push_back(u_name(k));
    for (int k = 0; k <= n; ++k) parents.push_back(w_name(k));
    for (int k = 1; k <= n; ++k) parents.push_back(x_name(k));
    const double h_src = entropy(joint, {x_name(0)}, parents, base);
    if (h_src > kProbTol) {
        throw ValidationError("df reduction requires a degenerate destination private part; "
                              "H(X0 | U,W,X) = " + std::to_string(h_src));
    }

    const auto t = detail::evaluate_theorem_terms(joint, order, base);
    double rate = t.full;
    for (double c : t.common) rate = std::min(rate, c);
    return rate;
}

}  // namespace relayrate
