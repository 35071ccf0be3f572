#ifndef RELAYRATE_TESTS_HELPERS_HPP
#define RELAYRATE_TESTS_HELPERS_HPP

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "relayrate/prob_table.hpp"

// Independent oracles used to freeze expected values: straight summation over
// dense tables, sharing no code path with the library implementations.
namespace test_oracle {

inline double entropy_bits(std::span<const double> probs) {
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

// I(A;B|C) by direct summation of p(abc) log [p(abc)p(c) / (p(ac)p(bc))].
inline double cmi_bits(const relayrate::JointPmf& pmf, const std::vector<std::string>& a,
                       const std::vector<std::string>& b, const std::vector<std::string>& c) {
    const auto& vars = pmf.variables();
    std::vector<int> in_a(vars.size(), 0), in_b(vars.size(), 0), in_c(vars.size(), 0);
    auto mark = [&](const std::vector<std::string>& names, std::vector<int>& flag) {
        for (const auto& n : names) {
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i].name == n) flag[i] = 1;
            }
        }
    };
    mark(a, in_a);
    mark(b, in_b);
    mark(c, in_c);

    auto decode = [&](std::size_t flat, std::vector<int>& assign) {
        assign.resize(vars.size());
        for (std::size_t i = vars.size(); i-- > 0;) {
            auto sz = static_cast<std::size_t>(vars[i].alphabet_size);
            assign[i] = static_cast<int>(flat % sz);
            flat /= sz;
        }
    };
    auto project = [&](const std::vector<int>& assign, const std::vector<int>& f1,
                       const std::vector<int>& f2) {
        std::vector<int> key;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (f1[i] || f2[i]) key.push_back(assign[i]);
        }
        return key;
    };

    std::map<std::vector<int>, double> p_abc, p_ac, p_bc, p_c;
    const std::vector<int> none(vars.size(), 0);
    std::vector<int> assign;
    std::vector<int> in_ab(vars.size(), 0);
    for (std::size_t i = 0; i < vars.size(); ++i) in_ab[i] = in_a[i] | in_b[i];

    for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
        const double p = pmf.entries()[flat];
        if (p == 0.0) continue;
        decode(flat, assign);
        p_abc[project(assign, in_ab, in_c)] += p;
        p_ac[project(assign, in_a, in_c)] += p;
        p_bc[project(assign, in_b, in_c)] += p;
        p_c[project(assign, in_c, none)] += p;
    }

    double mi = 0.0;
    for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
        const double p = pmf.entries()[flat];
        if (p == 0.0) continue;
        decode(flat, assign);
        const double pabc = p_abc[project(assign, in_ab, in_c)];
        const double pac = p_ac[project(assign, in_a, in_c)];
        const double pbc = p_bc[project(assign, in_b, in_c)];
        const double pc = p_c[project(assign, in_c, none)];
        mi += p * std::log2(pabc * pc / (pac * pbc));
    }
    return mi;
}

}  // namespace test_oracle

#endif  // RELAYRATE_TESTS_HELPERS_HPP
