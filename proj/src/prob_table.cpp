#include "relayrate/prob_table.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace relayrate {

namespace {

void decode_assignment(std::size_t flat, const std::vector<VariableId>& vars,
                       std::vector<int>& out) {
    out.resize(vars.size());
    for (std::size_t i = vars.size(); i-- > 0;) {
        auto sz = static_cast<std::size_t>(vars[i].alphabet_size);
        out[i] = static_cast<int>(flat % sz);
        flat /= sz;
    }
}

std::size_t flat_index_in(const std::vector<VariableId>& vars, std::span<const int> assignment) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        flat = flat * static_cast<std::size_t>(vars[i].alphabet_size) +
               static_cast<std::size_t>(assignment[i]);
    }
    return flat;
}

int index_of_in(const std::vector<VariableId>& vars, const std::string& name) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

double plain_entropy(std::span<const double> entries, LogBase base) {
    double h = 0.0;
    for (double p : entries) {
        if (p > 0.0) h -= p * std::log(p);
    }
    h = std::max(h, 0.0);
    return base == LogBase::two ? h / std::log(2.0) : h;
}

void require_known_subset(const JointPmf& pmf, const std::vector<std::string>& names,
                          const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (!pmf.has_variable(n)) {
            throw StructuralError(std::string(what) + ": unknown variable '" + n + "'");
        }
        if (!seen.insert(n).second) {
            throw StructuralError(std::string(what) + ": duplicate variable '" + n + "'");
        }
    }
}

void require_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b,
                      const char* what) {
    std::unordered_set<std::string> sa(a.begin(), a.end());
    for (const auto& n : b) {
        if (sa.count(n)) {
            throw StructuralError(std::string(what) + ": sets overlap on '" + n + "'");
        }
    }
}

std::vector<std::string> set_union(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
    std::vector<std::string> u = a;
    u.insert(u.end(), b.begin(), b.end());
    return u;
}

}  // namespace

std::size_t table_size(const std::vector<VariableId>& vars) {
    std::size_t n = 1;
    for (const auto& v : vars) {
        if (v.alphabet_size < 1) {
            throw StructuralError("variable '" + v.name + "' has alphabet size " +
                                  std::to_string(v.alphabet_size));
        }
        auto sz = static_cast<std::size_t>(v.alphabet_size);
        if (n > kMaxTableEntries / sz) {
            throw ResourceError("table over variables including '" + v.name +
                                "' exceeds the " + std::to_string(kMaxTableEntries) +
                                "-entry guard");
        }
        n *= sz;
    }
    return n;
}

JointPmf JointPmf::from_entries(std::vector<VariableId> vars, std::vector<double> entries,
                                bool normalize) {
    std::unordered_set<std::string> names;
    for (const auto& v : vars) {
        if (!names.insert(v.name).second) {
            throw StructuralError("duplicate variable name '" + v.name + "' in table");
        }
    }
    const std::size_t expected = table_size(vars);
    if (entries.size() != expected) {
        throw StructuralError("table has " + std::to_string(entries.size()) +
                              " entries, expected " + std::to_string(expected));
    }
    double sum = 0.0;
    for (double p : entries) {
        if (p < 0.0) throw ValidationError("negative probability entry " + std::to_string(p));
        sum += p;
    }
    if (normalize) {
        if (sum <= 0.0) throw ValidationError("cannot normalize a table with zero mass");
        for (double& p : entries) p /= sum;
    } else if (std::abs(sum - 1.0) > kProbTol) {
        throw ValidationError("table sums to " + std::to_string(sum) +
                              ", outside the 1e-9 normalization tolerance");
    }
    JointPmf pmf;
    pmf.vars_ = std::move(vars);
    pmf.entries_ = std::move(entries);
    return pmf;
}

int JointPmf::index_of(const std::string& name) const { return index_of_in(vars_, name); }

std::size_t JointPmf::flat_index(std::span<const int> assignment) const {
    return flat_index_in(vars_, assignment);
}

double JointPmf::value(std::span<const int> assignment) const {
    return entries_[flat_index(assignment)];
}

std::vector<std::string> Factor::outputs() const {
    std::unordered_set<std::string> g(given.begin(), given.end());
    std::vector<std::string> out;
    for (const auto& v : variables) {
        if (!g.count(v.name)) out.push_back(v.name);
    }
    return out;
}

int Factor::index_of(const std::string& name) const { return index_of_in(variables, name); }

std::size_t Factor::flat_index(std::span<const int> assignment) const {
    return flat_index_in(variables, assignment);
}

double Factor::value(std::span<const int> assignment) const {
    return entries[flat_index(assignment)];
}

std::vector<std::string> conditional_violations(const Factor& f, const std::string& label) {
    std::vector<std::string> bad;
    for (const auto& g : f.given) {
        if (!f.has_variable(g)) {
            bad.push_back(label + ": conditioning variable '" + g + "' not in table");
        }
    }
    std::unordered_set<std::string> names;
    for (const auto& v : f.variables) {
        if (v.alphabet_size < 1) {
            bad.push_back(label + ": variable '" + v.name + "' has alphabet size " +
                          std::to_string(v.alphabet_size));
        }
        if (!names.insert(v.name).second) {
            bad.push_back(label + ": duplicate variable '" + v.name + "'");
        }
    }
    if (!bad.empty()) return bad;

    if (f.entries.size() != table_size(f.variables)) {
        bad.push_back(label + ": table has " + std::to_string(f.entries.size()) +
                      " entries, expected " + std::to_string(table_size(f.variables)));
        return bad;
    }
    for (double p : f.entries) {
        if (p < 0.0) {
            bad.push_back(label + ": negative entry " + std::to_string(p));
            return bad;
        }
    }

    std::vector<int> given_pos;
    for (const auto& g : f.given) given_pos.push_back(f.index_of(g));

    std::size_t n_slices = 1;
    for (int p : given_pos) {
        n_slices *= static_cast<std::size_t>(f.variables[static_cast<std::size_t>(p)].alphabet_size);
    }
    std::vector<double> slice_sum(n_slices, 0.0);

    std::vector<int> assign;
    for (std::size_t flat = 0; flat < f.entries.size(); ++flat) {
        decode_assignment(flat, f.variables, assign);
        std::size_t key = 0;
        for (int p : given_pos) {
            auto pi = static_cast<std::size_t>(p);
            key = key * static_cast<std::size_t>(f.variables[pi].alphabet_size) +
                  static_cast<std::size_t>(assign[pi]);
        }
        slice_sum[key] += f.entries[flat];
    }
    for (std::size_t k = 0; k < n_slices; ++k) {
        if (std::abs(slice_sum[k] - 1.0) > kProbTol) {
            // Name the offending conditioning assignment.
            std::vector<int> gv(given_pos.size());
            std::size_t rem = k;
            for (std::size_t i = given_pos.size(); i-- > 0;) {
                auto sz = static_cast<std::size_t>(
                    f.variables[static_cast<std::size_t>(given_pos[i])].alphabet_size);
                gv[i] = static_cast<int>(rem % sz);
                rem /= sz;
            }
            std::string where;
            for (std::size_t i = 0; i < given_pos.size(); ++i) {
                if (i > 0) where += ", ";
                where += f.variables[static_cast<std::size_t>(given_pos[i])].name + "=" +
                         std::to_string(gv[i]);
            }
            bad.push_back(label + ": slice (" + where + ") sums to " +
                          std::to_string(slice_sum[k]));
        }
    }
    return bad;
}

JointPmf product(const std::vector<Factor>& factors) {
    std::unordered_map<std::string, int> alphabet;   // name -> size
    std::unordered_set<std::string> produced;        // names output so far
    std::vector<VariableId> result_vars;

    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        const Factor& f = factors[fi];
        const std::string label = "factor " + std::to_string(fi);
        std::unordered_set<std::string> given_set(f.given.begin(), f.given.end());

        for (const auto& g : f.given) {
            if (!f.has_variable(g)) {
                throw StructuralError(label + ": conditioning variable '" + g + "' not in table");
            }
        }
        for (const auto& v : f.variables) {
            auto it = alphabet.find(v.name);
            if (it != alphabet.end() && it->second != v.alphabet_size) {
                throw StructuralError(label + ": variable '" + v.name + "' has alphabet size " +
                                      std::to_string(v.alphabet_size) + " but was declared with " +
                                      std::to_string(it->second));
            }
            alphabet.emplace(v.name, v.alphabet_size);

            if (given_set.count(v.name)) {
                if (!produced.count(v.name)) {
                    throw StructuralError(label + ": conditioning variable '" + v.name +
                                          "' is not an output of any earlier factor");
                }
            } else {
                if (!produced.insert(v.name).second) {
                    throw StructuralError(label + ": variable '" + v.name +
                                          "' is already an output of an earlier factor");
                }
                result_vars.push_back(v);
            }
        }
        auto bad = conditional_violations(f, label);
        if (!bad.empty()) throw ValidationError(bad.front());
    }

    const std::size_t n = table_size(result_vars);

    // Per-factor: where each of its variables sits in the result order.
    struct Lookup {
        const Factor* factor;
        std::vector<std::size_t> result_pos;
    };
    std::vector<Lookup> lookups;
    auto result_index = [&](const std::string& name) {
        return static_cast<std::size_t>(index_of_in(result_vars, name));
    };
    for (const Factor& f : factors) {
        Lookup lk{&f, {}};
        for (const auto& v : f.variables) lk.result_pos.push_back(result_index(v.name));
        lookups.push_back(std::move(lk));
    }

    std::vector<double> entries(n);
    std::vector<int> assign;
    std::vector<int> sub;
    for (std::size_t flat = 0; flat < n; ++flat) {
        decode_assignment(flat, result_vars, assign);
        double p = 1.0;
        for (const Lookup& lk : lookups) {
            sub.resize(lk.result_pos.size());
            for (std::size_t i = 0; i < lk.result_pos.size(); ++i) {
                sub[i] = assign[lk.result_pos[i]];
            }
            p *= lk.factor->value(sub);
            if (p == 0.0) break;
        }
        entries[flat] = p;
    }

    double sum = 0.0;
    for (double p : entries) sum += p;
    if (std::abs(sum - 1.0) > kProbTol) {
        throw NumericalConsistencyError("factor product sums to " + std::to_string(sum));
    }
    return JointPmf::from_entries(std::move(result_vars), std::move(entries));
}

JointPmf marginalize(const JointPmf& pmf, const std::vector<std::string>& keep) {
    require_known_subset(pmf, keep, "marginalize");
    std::unordered_set<std::string> keep_set(keep.begin(), keep.end());

    const auto& vars = pmf.variables();
    std::vector<VariableId> kept_vars;
    std::vector<std::size_t> kept_pos;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (keep_set.count(vars[i].name)) {
            kept_vars.push_back(vars[i]);
            kept_pos.push_back(i);
        }
    }

    std::vector<double> out(table_size(kept_vars), 0.0);
    std::vector<int> assign;
    for (std::size_t flat = 0; flat < pmf.size(); ++flat) {
        decode_assignment(flat, vars, assign);
        std::size_t key = 0;
        for (std::size_t i = 0; i < kept_pos.size(); ++i) {
            key = key * static_cast<std::size_t>(kept_vars[i].alphabet_size) +
                  static_cast<std::size_t>(assign[kept_pos[i]]);
        }
        out[key] += pmf.entries()[flat];
    }
    return JointPmf::from_entries(std::move(kept_vars), std::move(out));
}

double entropy(const JointPmf& pmf, const std::vector<std::string>& targets,
               const std::vector<std::string>& given, LogBase base) {
    require_known_subset(pmf, targets, "entropy targets");
    require_known_subset(pmf, given, "entropy given");
    require_disjoint(targets, given, "entropy");

    const double h_joint =
        plain_entropy(marginalize(pmf, set_union(targets, given)).entries(), base);
    if (given.empty()) return h_joint;
    const double h_given = plain_entropy(marginalize(pmf, given).entries(), base);
    return std::max(h_joint - h_given, 0.0);
}

double cond_mutual_info(const JointPmf& pmf, const std::vector<std::string>& a,
                        const std::vector<std::string>& b, const std::vector<std::string>& c,
                        LogBase base) {
    require_known_subset(pmf, a, "cond_mutual_info A");
    require_known_subset(pmf, b, "cond_mutual_info B");
    require_known_subset(pmf, c, "cond_mutual_info C");
    require_disjoint(a, b, "cond_mutual_info A/B");
    require_disjoint(a, c, "cond_mutual_info A/C");
    require_disjoint(b, c, "cond_mutual_info B/C");

    auto h = [&](const std::vector<std::string>& s) {
        if (s.empty()) return 0.0;
        return plain_entropy(marginalize(pmf, s).entries(), base);
    };
    // I(A;B|C) = H(A,C) - H(C) - H(A,B,C) + H(B,C)
    const double mi =
        h(set_union(a, c)) - h(c) - h(set_union(set_union(a, b), c)) + h(set_union(b, c));
    if (mi < -kMiClampTol) {
        throw NumericalConsistencyError("conditional mutual information " + std::to_string(mi) +
                                        " below the -1e-9 rounding bound");
    }
    return std::max(mi, 0.0);
}

}  // namespace relayrate
