#include "aloglab/ast.hpp"

#include <limits>
#include <sstream>

namespace aloglab {

std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
        case Term::Kind::Const:
            return a.as_constant() <=> b.as_constant();
        case Term::Kind::Var:
            return a.var_name() <=> b.var_name();
        case Term::Kind::Binary:
            if (auto c = a.op() <=> b.op(); c != 0) return c;
            if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
            return a.rhs() <=> b.rhs();
    }
    return std::strong_ordering::equal;
}

const char* to_string(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Gt: return ">";
        case Rel::Ge: return ">=";
        case Rel::Eq: return "=";
        case Rel::Ne: return "!=";
    }
    return "?";
}

const char* to_string(AggFunc f) {
    switch (f) {
        case AggFunc::Count: return "count";
        case AggFunc::Sum: return "sum";
        case AggFunc::Min: return "min";
        case AggFunc::Max: return "max";
    }
    return "?";
}

Rel rel_complement(Rel r) {
    switch (r) {
        case Rel::Lt: return Rel::Ge;
        case Rel::Le: return Rel::Gt;
        case Rel::Gt: return Rel::Le;
        case Rel::Ge: return Rel::Lt;
        case Rel::Eq: return Rel::Ne;
        case Rel::Ne: return Rel::Eq;
    }
    return r;
}

bool rel_holds(long long lhs, Rel r, long long rhs) {
    switch (r) {
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Gt: return lhs > rhs;
        case Rel::Ge: return lhs >= rhs;
        case Rel::Eq: return lhs == rhs;
        case Rel::Ne: return lhs != rhs;
    }
    return false;
}

bool rel_holds(const Constant& lhs, Rel r, const Constant& rhs) {
    auto c = lhs <=> rhs;
    switch (r) {
        case Rel::Lt: return c < 0;
        case Rel::Le: return c <= 0;
        case Rel::Gt: return c > 0;
        case Rel::Ge: return c >= 0;
        case Rel::Eq: return c == 0;
        case Rel::Ne: return c != 0;
    }
    return false;
}

bool RegularLiteral::is_ground() const {
    for (const auto& t : args)
        if (!t.is_ground()) return false;
    return true;
}

AggregateAtom positive_form(const AggregateAtom& a) {
    if (!a.negated) throw ValidationError("positive_form: atom is not classically negated");
    AggregateAtom out = a;
    out.negated = false;
    out.rel = rel_complement(a.rel);
    return out;
}

namespace {

bool cond_literal_matches(const RegularLiteral& pattern, const RegularLiteral& l) {
    // l is a ground instance of pattern if predicates/signs agree and every
    // ground argument of the pattern coincides with l's.
    if (pattern.negated != l.negated || pattern.pred != l.pred) return false;
    if (pattern.args.size() != l.args.size()) return false;
    std::map<std::string, Constant> binding;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& pt = pattern.args[i];
        const Term& lt = l.args[i];
        if (lt.kind() != Term::Kind::Const) return false;
        switch (pt.kind()) {
            case Term::Kind::Const:
                if (!(pt.as_constant() == lt.as_constant())) return false;
                break;
            case Term::Kind::Var: {
                auto [it, inserted] = binding.emplace(pt.var_name(), lt.as_constant());
                if (!inserted && !(it->second == lt.as_constant())) return false;
                break;
            }
            case Term::Kind::Binary:
                return false;  // arithmetic never matches a ground instance
        }
    }
    return true;
}

void for_each_set_name(const Rule& r, const auto& fn) {
    if (r.intro_head) fn(r.intro_head->rhs);
    for (const auto& e : r.body) {
        if (e.is_aggregate()) {
            fn(e.aggregate().set);
        } else if (e.is_set_atom()) {
            fn(e.set_atom().lhs);
            fn(e.set_atom().rhs);
        }
    }
}

}  // namespace

Occurrence literal_occurs_in_rule(const RegularLiteral& l, const Rule& r) {
    for (const auto& h : r.head)
        if (h == l) return Occurrence::Explicit;
    for (const auto& e : r.body)
        if (e.is_regular() && e.regular() == l) return Occurrence::Explicit;

    bool implicit = false;
    for_each_set_name(r, [&](const SetName& sn) {
        for (const auto& c : sn.cond) {
            if (const auto* lit = std::get_if<RegularLiteral>(&c)) {
                if (cond_literal_matches(*lit, l)) implicit = true;
            }
        }
    });
    return implicit ? Occurrence::Implicit : Occurrence::None;
}

bool is_ground(const Rule& r) {
    // Free occurrences substituted, arithmetic evaluated; bound variables
    // inside set names are fine.
    for (const auto& h : r.head)
        if (!h.is_ground()) return false;
    auto set_name_ground = [](const SetName& sn) {
        std::set<std::string> bound(sn.bound_vars.begin(), sn.bound_vars.end());
        auto term_ok = [&](const Term& t) {
            switch (t.kind()) {
                case Term::Kind::Const: return true;
                case Term::Kind::Var: return bound.count(t.var_name()) > 0;
                case Term::Kind::Binary: return false;
            }
            return false;
        };
        for (const auto& c : sn.cond) {
            if (const auto* lit = std::get_if<RegularLiteral>(&c)) {
                for (const auto& t : lit->args)
                    if (!term_ok(t)) return false;
            } else {
                const auto& cmp = std::get<Comparison>(c);
                if (!term_ok(cmp.lhs) || !term_ok(cmp.rhs)) return false;
            }
        }
        return true;
    };
    if (r.intro_head && !set_name_ground(r.intro_head->rhs)) return false;
    for (const auto& e : r.body) {
        if (e.is_regular()) {
            if (!e.regular().is_ground()) return false;
        } else if (e.is_aggregate()) {
            const auto& a = e.aggregate();
            if (!set_name_ground(a.set)) return false;
            if (a.guard.kind() != Term::Kind::Const || !a.guard.as_constant().is_int())
                return false;
        } else {
            const auto& sa = e.set_atom();
            if (!set_name_ground(sa.lhs) || !set_name_ground(sa.rhs)) return false;
        }
    }
    return true;
}

bool is_ground(const Program& p) {
    for (const auto& r : p.rules)
        if (!is_ground(r)) return false;
    return true;
}

bool is_consistent(const LiteralSet& s) {
    for (const auto& l : s) {
        if (l.negated) continue;
        RegularLiteral neg = l;
        neg.negated = true;
        if (s.count(neg)) return false;
    }
    return true;
}

std::map<std::string, int> predicate_arities(const Program& p) {
    std::map<std::string, int> arities;
    auto record = [&](const std::string& pred, int arity) {
        auto [it, inserted] = arities.emplace(pred, arity);
        if (!inserted && it->second != arity)
            throw ValidationError("predicate '" + pred + "' used with arities " +
                                  std::to_string(it->second) + " and " + std::to_string(arity));
    };
    auto record_cond = [&](const SetName& sn) {
        for (const auto& c : sn.cond)
            if (const auto* lit = std::get_if<RegularLiteral>(&c))
                record(lit->pred, static_cast<int>(lit->args.size()));
    };
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) record(h.pred, static_cast<int>(h.args.size()));
        if (r.intro_head) {
            record(r.intro_head->pred, static_cast<int>(r.intro_head->rhs.bound_vars.size()));
            record_cond(r.intro_head->rhs);
        }
        for (const auto& e : r.body) {
            if (e.is_regular()) {
                record(e.regular().pred, static_cast<int>(e.regular().args.size()));
            } else if (e.is_aggregate()) {
                record_cond(e.aggregate().set);
            } else {
                record_cond(e.set_atom().lhs);
                record_cond(e.set_atom().rhs);
            }
        }
    }
    return arities;
}

namespace {

void collect_term_constants(const Term& t, std::set<Constant>& out) {
    switch (t.kind()) {
        case Term::Kind::Const: out.insert(t.as_constant()); break;
        case Term::Kind::Var: break;
        case Term::Kind::Binary:
            collect_term_constants(t.lhs(), out);
            collect_term_constants(t.rhs(), out);
            break;
    }
}

void collect_cond_constants(const SetName& sn, std::set<Constant>& out) {
    for (const auto& c : sn.cond) {
        if (const auto* lit = std::get_if<RegularLiteral>(&c)) {
            for (const auto& t : lit->args) collect_term_constants(t, out);
        } else {
            const auto& cmp = std::get<Comparison>(c);
            collect_term_constants(cmp.lhs, out);
            collect_term_constants(cmp.rhs, out);
        }
    }
}

}  // namespace

std::set<Constant> program_constants(const Program& p) {
    std::set<Constant> out;
    for (const auto& r : p.rules) {
        for (const auto& h : r.head)
            for (const auto& t : h.args) collect_term_constants(t, out);
        if (r.intro_head) collect_cond_constants(r.intro_head->rhs, out);
        for (const auto& e : r.body) {
            if (e.is_regular()) {
                for (const auto& t : e.regular().args) collect_term_constants(t, out);
            } else if (e.is_aggregate()) {
                collect_cond_constants(e.aggregate().set, out);
            } else {
                collect_cond_constants(e.set_atom().lhs, out);
                collect_cond_constants(e.set_atom().rhs, out);
            }
        }
    }
    return out;
}

Constant eval_term(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Const:
            return t.as_constant();
        case Term::Kind::Var:
            throw EvalError("cannot evaluate variable '" + t.var_name() + "'");
        case Term::Kind::Binary: {
            Constant l = eval_term(t.lhs());
            Constant r = eval_term(t.rhs());
            if (!l.is_int() || !r.is_int())
                throw EvalError("arithmetic over non-integer constant");
            long long a = l.as_int(), b = r.as_int(), res = 0;
            bool overflow = false;
            switch (t.op()) {
                case '+': overflow = __builtin_add_overflow(a, b, &res); break;
                case '-': overflow = __builtin_sub_overflow(a, b, &res); break;
                case '*': overflow = __builtin_mul_overflow(a, b, &res); break;
                default: throw EvalError("unknown arithmetic operator");
            }
            if (overflow) throw ArithmeticOverflow("arithmetic overflow");
            return Constant::integer(res);
        }
    }
    throw EvalError("malformed term");
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string to_string(const Constant& c) {
    return c.is_int() ? std::to_string(c.as_int()) : c.as_symbol();
}

namespace {

int precedence(char op) { return op == '*' ? 2 : 1; }

void print_term(std::ostream& os, const Term& t, int parent_prec) {
    switch (t.kind()) {
        case Term::Kind::Const:
            os << to_string(t.as_constant());
            break;
        case Term::Kind::Var:
            os << t.var_name();
            break;
        case Term::Kind::Binary: {
            int prec = precedence(t.op());
            if (prec < parent_prec) os << "(";
            print_term(os, t.lhs(), prec);
            os << " " << t.op() << " ";
            // right operand of - needs a strictly tighter subexpression
            print_term(os, t.rhs(), t.op() == '*' ? prec : prec + 1);
            if (prec < parent_prec) os << ")";
            break;
        }
    }
}

}  // namespace

std::string to_string(const Term& t) {
    std::ostringstream os;
    print_term(os, t, 0);
    return os.str();
}

std::string to_string(const RegularLiteral& l) {
    std::string out = l.negated ? "-" : "";
    out += l.pred;
    if (!l.args.empty()) {
        out += "(";
        for (std::size_t i = 0; i < l.args.size(); ++i) {
            if (i) out += ",";
            out += to_string(l.args[i]);
        }
        out += ")";
    }
    return out;
}

std::string to_string(const Comparison& c) {
    return to_string(c.lhs) + " " + to_string(c.rel) + " " + to_string(c.rhs);
}

std::string to_string(const CondLiteral& c) {
    if (const auto* lit = std::get_if<RegularLiteral>(&c)) return to_string(*lit);
    return to_string(std::get<Comparison>(c));
}

std::string to_string(const SetName& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.bound_vars.size(); ++i) {
        if (i) out += ",";
        out += s.bound_vars[i];
    }
    out += " : ";
    for (std::size_t i = 0; i < s.cond.size(); ++i) {
        if (i) out += ", ";
        out += to_string(s.cond[i]);
    }
    out += "}";
    return out;
}

std::string to_string(const AggregateAtom& a) {
    std::string out = a.negated ? "-" : "";
    out += to_string(a.func);
    out += to_string(a.set);
    out += " ";
    out += to_string(a.rel);
    out += " ";
    out += to_string(a.guard);
    return out;
}

std::string to_string(const SetAtom& a) {
    return to_string(a.lhs) + " " + to_string(a.rel) + " " + to_string(a.rhs);
}

std::string to_string(const ELiteral& e) {
    std::string out = e.default_neg ? "not " : "";
    if (e.is_regular())
        out += to_string(e.regular());
    else if (e.is_aggregate())
        out += to_string(e.aggregate());
    else
        out += to_string(e.set_atom());
    return out;
}

std::string to_string(const SubsetIntroHead& h) {
    return h.pred + " " + to_string(h.rel) + " " + to_string(h.rhs);
}

std::string to_string(const Rule& r) {
    std::string out;
    if (r.intro_head) {
        out += to_string(*r.intro_head);
    } else {
        for (std::size_t i = 0; i < r.head.size(); ++i) {
            if (i) out += " or ";
            out += to_string(r.head[i]);
        }
    }
    if (!r.body.empty()) {
        out += out.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) out += ", ";
            out += to_string(r.body[i]);
        }
    }
    out += ".";
    return out;
}

std::string to_string(const LiteralSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : s) {
        if (!first) out += ", ";
        first = false;
        out += to_string(l);
    }
    out += "}";
    return out;
}

std::ostream& operator<<(std::ostream& os, const Constant& c) { return os << to_string(c); }
std::ostream& operator<<(std::ostream& os, const Term& t) { return os << to_string(t); }
std::ostream& operator<<(std::ostream& os, const RegularLiteral& l) { return os << to_string(l); }
std::ostream& operator<<(std::ostream& os, const Rule& r) { return os << to_string(r); }

}  // namespace aloglab
