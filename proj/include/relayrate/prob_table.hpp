#ifndef RELAYRATE_PROB_TABLE_HPP
#define RELAYRATE_PROB_TABLE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "relayrate/common.hpp"

namespace relayrate {

struct VariableId {
    std::string name;
    int alphabet_size = 0;

    friend bool operator==(const VariableId& a, const VariableId& b) {
        return a.name == b.name && a.alphabet_size == b.alphabet_size;
    }
};

// Entry count of a dense table over `vars`; enforces the size guard and
// positive alphabet sizes.
std::size_t table_size(const std::vector<VariableId>& vars);

// Dense joint probability table over named finite-alphabet variables.
// Entries are row-major in the declared variable order (first variable has
// the largest stride). Immutable after construction.
class JointPmf {
public:
    JointPmf() = default;

    // Validates and adopts the table. Entries must be nonnegative and sum to
    // 1 within kProbTol unless `normalize` is set, in which case they are
    // rescaled (sum must be positive).
    static JointPmf from_entries(std::vector<VariableId> vars,
                                 std::vector<double> entries,
                                 bool normalize = false);

    const std::vector<VariableId>& variables() const { return vars_; }
    std::span<const double> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    // Position of `name` in the variable list, or -1.
    int index_of(const std::string& name) const;
    bool has_variable(const std::string& name) const { return index_of(name) >= 0; }

    std::size_t flat_index(std::span<const int> assignment) const;
    double value(std::span<const int> assignment) const;

private:
    std::vector<VariableId> vars_;
    std::vector<double> entries_;
};

// A conditional pmf p(outputs | given) stored densely over all its variables
// (row-major in `variables`). `given` names the conditioning subset; the
// remaining variables are the outputs. Valid when every conditioning slice
// sums to 1 within kProbTol.
struct Factor {
    std::vector<VariableId> variables;
    std::vector<double> entries;
    std::vector<std::string> given;

    std::vector<std::string> outputs() const;
    int index_of(const std::string& name) const;
    bool has_variable(const std::string& name) const { return index_of(name) >= 0; }
    std::size_t flat_index(std::span<const int> assignment) const;
    double value(std::span<const int> assignment) const;
    std::size_t size() const { return entries.size(); }
};

// Human-readable descriptions of every way `f` fails to be a valid
// conditional pmf (bad entry count, negative entries, unknown conditioning
// names, slices not summing to 1). `label` prefixes each message; slices are
// named by their conditioning assignment. Empty result means valid.
std::vector<std::string> conditional_violations(const Factor& f, const std::string& label);

// Multiplies a chain of conditionals into a joint table. Every conditioning
// variable of each factor must be an output of an earlier factor; each
// variable may be an output of exactly one factor. The result's variable
// order is the concatenation of first appearances.
JointPmf product(const std::vector<Factor>& factors);

// Sums out all variables not named in `keep` (order-insensitive set).
JointPmf marginalize(const JointPmf& pmf, const std::vector<std::string>& keep);

// H(targets | given) with the 0 log 0 = 0 convention; the two sets must be
// disjoint subsets of the table's variables.
double entropy(const JointPmf& pmf,
               const std::vector<std::string>& targets,
               const std::vector<std::string>& given = {},
               LogBase base = LogBase::two);

// I(A;B|C) = H(A|C) - H(A|B,C). Negatives within kMiClampTol are rounding
// and clamp to zero; anything lower is a consistency failure.
double cond_mutual_info(const JointPmf& pmf,
                        const std::vector<std::string>& a,
                        const std::vector<std::string>& b,
                        const std::vector<std::string>& c = {},
                        LogBase base = LogBase::two);

}  // namespace relayrate

#endif  // RELAYRATE_PROB_TABLE_HPP
