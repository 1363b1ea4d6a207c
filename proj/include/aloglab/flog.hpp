#ifndef ALOGLAB_FLOG_HPP
#define ALOGLAB_FLOG_HPP

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "aloglab/ast.hpp"

namespace aloglab::flog {

// One element of a ground set: a constant tuple guarded by a conjunction of
// ground atoms.
struct GroundSetPair {
    std::vector<Constant> tuple;
    std::vector<RegularLiteral> conj;

    auto operator<=>(const GroundSetPair&) const = default;
};

struct GroundSet {
    std::vector<GroundSetPair> pairs;  // distinct, sorted

    auto operator<=>(const GroundSet&) const = default;
};

struct AggregateAtomF {
    AggFunc func = AggFunc::Count;
    GroundSet set;
    Rel rel = Rel::Eq;
    long long guard = 0;

    auto operator<=>(const AggregateAtomF&) const = default;
};

struct ELiteralF {
    bool default_neg = false;
    std::variant<RegularLiteral, AggregateAtomF> atom;

    bool is_regular() const { return atom.index() == 0; }
    const RegularLiteral& regular() const { return std::get<RegularLiteral>(atom); }
    const AggregateAtomF& aggregate() const { return std::get<AggregateAtomF>(atom); }

    auto operator<=>(const ELiteralF&) const = default;
};

struct RuleF {
    std::vector<RegularLiteral> head;  // non-negated atoms
    std::vector<ELiteralF> body;

    auto operator<=>(const RuleF&) const = default;
};

using ProgramF = std::vector<RuleF>;

std::string to_string(const GroundSet& gs);
std::string to_string(const AggregateAtomF& a);
std::string to_string(const ELiteralF& e);
std::string to_string(const RuleF& r);
std::string to_string(const ProgramF& p);

// Tuples whose guard conjunction holds in A.
std::set<std::vector<Constant>> extent(const GroundSet& gs, const LiteralSet& a);

// Two-valued satisfaction. A negated aggregate e-atom requires the function to
// be defined and the relation to fail ("not" does not hold on undefined).
bool sat(const ELiteralF& e, const LiteralSet& a);
bool rule_satisfied(const RuleF& r, const LiteralSet& a);
bool is_model(const ProgramF& p, const LiteralSet& a);

// Rules whose every body member A satisfies.
ProgramF reduct(const ProgramF& p, const LiteralSet& a);

// A is an answer set iff it is a subset-minimal model of reduct(p, A).
bool is_answer_set(const ProgramF& p, const LiteralSet& a, const Caps& caps);

std::set<LiteralSet> enumerate_answer_sets(const ProgramF& p, const Caps& caps);

}  // namespace aloglab::flog

#endif
