#ifndef ALOGLAB_AST_HPP
#define ALOGLAB_AST_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "aloglab/errors.hpp"

namespace aloglab {

// ---------------------------------------------------------------------------
// Constants and terms
// ---------------------------------------------------------------------------

// An object constant: an integer or a lowercase-initial symbol. Integers order
// before symbols; both compare structurally.
struct Constant {
    std::variant<long long, std::string> value;

    static Constant integer(long long v) { return Constant{v}; }
    static Constant symbol(std::string s) { return Constant{std::move(s)}; }

    bool is_int() const { return value.index() == 0; }
    long long as_int() const { return std::get<long long>(value); }
    const std::string& as_symbol() const { return std::get<std::string>(value); }

    auto operator<=>(const Constant&) const = default;
};

// A term: constant, variable (uppercase-initial), or arithmetic expression.
// Arithmetic appears only in non-ground rules and aggregate guards.
class Term {
public:
    enum class Kind : std::uint8_t { Const, Var, Binary };

    Term() : kind_(Kind::Const) {}

    static Term constant(Constant c) {
        Term t;
        t.kind_ = Kind::Const;
        t.const_ = std::move(c);
        return t;
    }
    static Term variable(std::string name) {
        Term t;
        t.kind_ = Kind::Var;
        t.var_ = std::move(name);
        return t;
    }
    static Term binary(char op, Term lhs, Term rhs) {
        Term t;
        t.kind_ = Kind::Binary;
        t.op_ = op;
        t.lhs_ = std::make_shared<const Term>(std::move(lhs));
        t.rhs_ = std::make_shared<const Term>(std::move(rhs));
        return t;
    }

    Kind kind() const { return kind_; }
    const Constant& as_constant() const { return const_; }
    const std::string& var_name() const { return var_; }
    char op() const { return op_; }
    const Term& lhs() const { return *lhs_; }
    const Term& rhs() const { return *rhs_; }

    bool is_ground() const { return kind_ == Kind::Const; }

private:
    Kind kind_;
    Constant const_{};
    std::string var_;
    char op_ = 0;
    std::shared_ptr<const Term> lhs_, rhs_;
};

std::strong_ordering operator<=>(const Term& a, const Term& b);
inline bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

// ---------------------------------------------------------------------------
// Relations and aggregate functions
// ---------------------------------------------------------------------------

enum class Rel : std::uint8_t { Lt, Le, Gt, Ge, Eq, Ne };
enum class AggFunc : std::uint8_t { Count, Sum, Min, Max };

const char* to_string(Rel r);
const char* to_string(AggFunc f);

// Complement relation: the positive form of a classically negated comparison.
Rel rel_complement(Rel r);

bool rel_holds(long long lhs, Rel r, long long rhs);
bool rel_holds(const Constant& lhs, Rel r, const Constant& rhs);

// ---------------------------------------------------------------------------
// Literals, set names, atoms
// ---------------------------------------------------------------------------

struct RegularLiteral {
    bool negated = false;  // classical '-'
    std::string pred;
    std::vector<Term> args;

    bool is_ground() const;
    auto operator<=>(const RegularLiteral&) const = default;
};

// A comparison between two terms, usable inside set-name conditions
// (e.g. "X != b").
struct Comparison {
    Term lhs;
    Rel rel;
    Term rhs;

    bool is_ground() const { return lhs.is_ground() && rhs.is_ground(); }
    auto operator<=>(const Comparison&) const = default;
};

using CondLiteral = std::variant<RegularLiteral, Comparison>;

// {X1,...,Xk : cond} — bound variables plus the defining condition.
struct SetName {
    std::vector<std::string> bound_vars;
    std::vector<CondLiteral> cond;

    auto operator<=>(const SetName&) const = default;
};

struct AggregateAtom {
    bool negated = false;  // classical negation of the whole atom
    AggFunc func = AggFunc::Count;
    SetName set;
    Rel rel = Rel::Eq;
    Term guard;

    auto operator<=>(const AggregateAtom&) const = default;
};

struct SetAtom {
    SetName lhs;
    Rel rel = Rel::Le;  // Eq, Le, Lt only
    SetName rhs;

    auto operator<=>(const SetAtom&) const = default;
};

struct ELiteral {
    bool default_neg = false;  // 'not' prefix
    std::variant<RegularLiteral, AggregateAtom, SetAtom> atom;

    bool is_regular() const { return atom.index() == 0; }
    bool is_aggregate() const { return atom.index() == 1; }
    bool is_set_atom() const { return atom.index() == 2; }
    const RegularLiteral& regular() const { return std::get<RegularLiteral>(atom); }
    const AggregateAtom& aggregate() const { return std::get<AggregateAtom>(atom); }
    const SetAtom& set_atom() const { return std::get<SetAtom>(atom); }

    auto operator<=>(const ELiteral&) const = default;
};

// Head of a subset introduction rule: p ⊙ {X̄ : q(X̄)}.
struct SubsetIntroHead {
    std::string pred;
    Rel rel = Rel::Le;  // Le, Lt, Eq
    SetName rhs;

    auto operator<=>(const SubsetIntroHead&) const = default;
};

struct Rule {
    std::vector<RegularLiteral> head;  // disjunction; empty head = constraint
    std::optional<SubsetIntroHead> intro_head;
    std::vector<ELiteral> body;

    bool is_constraint() const { return head.empty() && !intro_head; }
    auto operator<=>(const Rule&) const = default;
};

struct Program {
    std::vector<Rule> rules;

    auto operator<=>(const Program&) const = default;
};

// A consistent set of ground regular literals (candidate answer set).
using LiteralSet = std::set<RegularLiteral>;

enum class TruthValue : std::uint8_t { False, Undefined, True };

enum class Occurrence : std::uint8_t { None, Explicit, Implicit };

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

// Positive form of a classically negated aggregate atom: complement the
// relation and drop the negation. Throws ValidationError on non-negated input.
AggregateAtom positive_form(const AggregateAtom& a);

// How ground literal l occurs in ground rule r: explicitly (l or not-l in head
// or body), implicitly (l instantiates a set-name condition literal), or not.
Occurrence literal_occurs_in_rule(const RegularLiteral& l, const Rule& r);

bool is_ground(const Rule& r);
bool is_ground(const Program& p);
bool is_consistent(const LiteralSet& s);

// Predicate -> arity, over every occurrence in the program.
// Throws ValidationError on an arity conflict.
std::map<std::string, int> predicate_arities(const Program& p);

// Constants appearing in literal arguments anywhere in the program
// (aggregate guards excluded).
std::set<Constant> program_constants(const Program& p);

// Evaluates a variable-free term; throws EvalError on overflow or on
// arithmetic over a symbol.
Constant eval_term(const Term& t);

// ---------------------------------------------------------------------------
// Printing (canonical text form; parse(format(p)) == p)
// ---------------------------------------------------------------------------

std::string to_string(const Constant& c);
std::string to_string(const Term& t);
std::string to_string(const RegularLiteral& l);
std::string to_string(const Comparison& c);
std::string to_string(const CondLiteral& c);
std::string to_string(const SetName& s);
std::string to_string(const AggregateAtom& a);
std::string to_string(const SetAtom& a);
std::string to_string(const ELiteral& e);
std::string to_string(const SubsetIntroHead& h);
std::string to_string(const Rule& r);
std::string to_string(const LiteralSet& s);

std::ostream& operator<<(std::ostream& os, const Constant& c);
std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const RegularLiteral& l);
std::ostream& operator<<(std::ostream& os, const Rule& r);

}  // namespace aloglab

#endif
