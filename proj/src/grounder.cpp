#include "aloglab/grounder.hpp"

#include <algorithm>
#include <map>

namespace aloglab {

namespace {

using Subst = std::map<std::string, Constant>;

void collect_term_vars(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Const: break;
        case Term::Kind::Var: out.insert(t.var_name()); break;
        case Term::Kind::Binary:
            collect_term_vars(t.lhs(), out);
            collect_term_vars(t.rhs(), out);
            break;
    }
}

std::set<std::string> set_name_vars(const SetName& sn) {
    std::set<std::string> vars(sn.bound_vars.begin(), sn.bound_vars.end());
    for (const auto& c : sn.cond) {
        if (const auto* lit = std::get_if<RegularLiteral>(&c)) {
            for (const auto& t : lit->args) collect_term_vars(t, vars);
        } else {
            const auto& cmp = std::get<Comparison>(c);
            collect_term_vars(cmp.lhs, vars);
            collect_term_vars(cmp.rhs, vars);
        }
    }
    return vars;
}

// Free occurrences inside a set name: condition variables outside bound_vars.
void collect_set_name_free(const SetName& sn, std::set<std::string>& out) {
    std::set<std::string> bound(sn.bound_vars.begin(), sn.bound_vars.end());
    std::set<std::string> all = set_name_vars(sn);
    for (const auto& v : all)
        if (!bound.count(v)) out.insert(v);
}

Term subst_term(const Term& t, const Subst& s, const std::set<std::string>& skip) {
    switch (t.kind()) {
        case Term::Kind::Const:
            return t;
        case Term::Kind::Var: {
            if (skip.count(t.var_name())) return t;
            auto it = s.find(t.var_name());
            return it == s.end() ? t : Term::constant(it->second);
        }
        case Term::Kind::Binary:
            return Term::binary(t.op(), subst_term(t.lhs(), s, skip),
                                subst_term(t.rhs(), s, skip));
    }
    return t;
}

bool term_has_vars(const Term& t) {
    std::set<std::string> vars;
    collect_term_vars(t, vars);
    return !vars.empty();
}

enum class ArgKind { LiteralArg, CondArg, Guard };

// Grounds one term under the substitution. Returns false when the instance
// must be dropped (symbolic arithmetic, out-of-range result, non-integer
// guard); fills `why` with the warning reason.
bool ground_term(Term& t, const Subst& s, const std::set<std::string>& bound,
                 ArgKind kind, const std::set<Constant>& consts, std::string& why) {
    t = subst_term(t, s, bound);
    if (t.kind() == Term::Kind::Var) {
        if (kind == ArgKind::CondArg && bound.count(t.var_name())) return true;
        throw GroundingError("unsubstituted variable '" + t.var_name() + "'");
    }
    if (t.kind() == Term::Kind::Binary) {
        if (term_has_vars(t)) {
            if (kind == ArgKind::CondArg)
                throw GroundingError("arithmetic over bound variable in " + to_string(t));
            throw GroundingError("unsubstituted variable in " + to_string(t));
        }
        try {
            t = Term::constant(eval_term(t));
        } catch (const ArithmeticOverflow&) {
            throw GroundingError("arithmetic overflow in " + to_string(t));
        } catch (const EvalError&) {
            why = "arithmetic over a symbolic constant";
            return false;
        }
        if (kind == ArgKind::LiteralArg && !consts.count(t.as_constant())) {
            why = "value " + to_string(t.as_constant()) + " escapes the constant range";
            return false;
        }
    }
    if (kind == ArgKind::Guard && !t.as_constant().is_int()) {
        why = "guard " + to_string(t.as_constant()) + " is not an integer";
        return false;
    }
    return true;
}

bool ground_literal(RegularLiteral& l, const Subst& s, const std::set<std::string>& bound,
                    ArgKind kind, const std::set<Constant>& consts, std::string& why) {
    for (auto& t : l.args)
        if (!ground_term(t, s, bound, kind, consts, why)) return false;
    return true;
}

bool ground_set_name(SetName& sn, const Subst& s, const std::set<Constant>& consts,
                     std::string& why) {
    std::set<std::string> bound(sn.bound_vars.begin(), sn.bound_vars.end());
    for (auto& c : sn.cond) {
        if (auto* lit = std::get_if<RegularLiteral>(&c)) {
            if (!ground_literal(*lit, s, bound, ArgKind::CondArg, consts, why)) return false;
        } else {
            auto& cmp = std::get<Comparison>(c);
            if (!ground_term(cmp.lhs, s, bound, ArgKind::CondArg, consts, why)) return false;
            if (!ground_term(cmp.rhs, s, bound, ArgKind::CondArg, consts, why)) return false;
        }
    }
    return true;
}

template <class Fn>
void for_each_assignment(const std::vector<std::string>& vars,
                         const std::vector<Constant>& consts, Fn&& fn) {
    if (vars.empty()) {
        fn(Subst{});
        return;
    }
    if (consts.empty()) return;
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
        Subst s;
        for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = consts[idx[i]];
        fn(s);
        std::size_t k = 0;
        while (k < vars.size()) {
            if (++idx[k] < consts.size()) break;
            idx[k] = 0;
            ++k;
        }
        if (k == vars.size()) break;
    }
}

void check_safety(const Rule& r, const std::set<std::string>& vars_to_ground,
                  std::size_t rule_index) {
    std::set<std::string> covered;
    for (const auto& e : r.body)
        if (!e.default_neg && e.is_regular())
            for (const auto& t : e.regular().args) collect_term_vars(t, covered);
    for (const auto& v : vars_to_ground)
        if (!covered.count(v))
            throw GroundingError("unsafe rule " + std::to_string(rule_index + 1) + " (" +
                                 to_string(r) + "): variable '" + v +
                                 "' does not occur in a positive regular body literal");
}

void warn(std::vector<std::string>* warnings, std::set<std::string>& seen,
          const std::string& msg) {
    if (!warnings) return;
    if (seen.insert(msg).second) warnings->push_back(msg);
}

}  // namespace

std::set<Constant> herbrand_constants(const Program& p, const std::optional<IntRange>& range) {
    std::set<Constant> consts = program_constants(p);
    if (range) {
        if (range->min > range->max) throw GroundingError("empty integer range");
        for (long long v = range->min; v <= range->max; ++v)
            consts.insert(Constant::integer(v));
    }
    return consts;
}

std::set<std::string> free_variables(const Rule& r) {
    std::set<std::string> out;
    for (const auto& h : r.head)
        for (const auto& t : h.args) collect_term_vars(t, out);
    if (r.intro_head) collect_set_name_free(r.intro_head->rhs, out);
    for (const auto& e : r.body) {
        if (e.is_regular()) {
            for (const auto& t : e.regular().args) collect_term_vars(t, out);
        } else if (e.is_aggregate()) {
            collect_term_vars(e.aggregate().guard, out);
            collect_set_name_free(e.aggregate().set, out);
        } else {
            collect_set_name_free(e.set_atom().lhs, out);
            collect_set_name_free(e.set_atom().rhs, out);
        }
    }
    return out;
}

std::set<std::string> global_variables(const Rule& r) {
    std::set<std::string> outside;
    for (const auto& h : r.head)
        for (const auto& t : h.args) collect_term_vars(t, outside);
    if (r.intro_head) collect_set_name_free(r.intro_head->rhs, outside);
    std::map<std::string, int> agg_occurrences;
    for (const auto& e : r.body) {
        if (e.is_regular()) {
            for (const auto& t : e.regular().args) collect_term_vars(t, outside);
        } else if (e.is_aggregate()) {
            collect_term_vars(e.aggregate().guard, outside);
            for (const auto& v : set_name_vars(e.aggregate().set)) ++agg_occurrences[v];
        } else {
            collect_set_name_free(e.set_atom().lhs, outside);
            collect_set_name_free(e.set_atom().rhs, outside);
        }
    }
    std::set<std::string> out = outside;
    for (const auto& [v, n] : agg_occurrences)
        if (n >= 2) out.insert(v);
    return out;
}

Program ground_alog(const Program& p, const std::optional<IntRange>& range,
                    std::vector<std::string>* warnings) {
    std::set<Constant> cset = herbrand_constants(p, range);
    std::vector<Constant> consts(cset.begin(), cset.end());
    std::set<std::string> seen_warnings;
    std::set<Rule> seen;
    Program out;

    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const Rule& r = p.rules[ri];
        std::set<std::string> fv = free_variables(r);
        check_safety(r, fv, ri);
        std::vector<std::string> vars(fv.begin(), fv.end());
        std::set<Rule> instances;
        for_each_assignment(vars, consts, [&](const Subst& s) {
            Rule g;
            std::string why;
            static const std::set<std::string> no_bound;
            for (const auto& h : r.head) {
                RegularLiteral hl = h;
                if (!ground_literal(hl, s, no_bound, ArgKind::LiteralArg, cset, why)) {
                    warn(warnings, seen_warnings,
                         "rule " + std::to_string(ri + 1) + ": dropped instance (" + why + ")");
                    return;
                }
                g.head.push_back(std::move(hl));
            }
            if (r.intro_head) {
                SubsetIntroHead ih = *r.intro_head;
                if (!ground_set_name(ih.rhs, s, cset, why)) {
                    warn(warnings, seen_warnings,
                         "rule " + std::to_string(ri + 1) + ": dropped instance (" + why + ")");
                    return;
                }
                g.intro_head = std::move(ih);
            }
            for (const auto& e : r.body) {
                ELiteral ge = e;
                bool ok = true;
                if (ge.is_regular()) {
                    auto lit = ge.regular();
                    ok = ground_literal(lit, s, no_bound, ArgKind::LiteralArg, cset, why);
                    ge.atom = std::move(lit);
                } else if (ge.is_aggregate()) {
                    auto agg = ge.aggregate();
                    ok = ground_set_name(agg.set, s, cset, why) &&
                         ground_term(agg.guard, s, no_bound, ArgKind::Guard, cset, why);
                    ge.atom = std::move(agg);
                } else {
                    auto sa = ge.set_atom();
                    ok = ground_set_name(sa.lhs, s, cset, why) &&
                         ground_set_name(sa.rhs, s, cset, why);
                    ge.atom = std::move(sa);
                }
                if (!ok) {
                    warn(warnings, seen_warnings,
                         "rule " + std::to_string(ri + 1) + ": dropped instance (" + why + ")");
                    return;
                }
                g.body.push_back(std::move(ge));
            }
            instances.insert(std::move(g));
        });
        for (auto& g : instances)
            if (seen.insert(g).second) out.rules.push_back(g);
    }
    return out;
}

namespace {

flog::GroundSet expand_set_name(const SetName& sn, const std::vector<Constant>& consts,
                                const std::set<Constant>& cset, std::size_t rule_index,
                                std::vector<std::string>* warnings,
                                std::set<std::string>& seen_warnings) {
    std::set<std::string> locals = set_name_vars(sn);
    std::vector<std::string> vars(locals.begin(), locals.end());
    std::set<flog::GroundSetPair> pairs;
    static const std::set<std::string> no_bound;
    for_each_assignment(vars, consts, [&](const Subst& s) {
        flog::GroundSetPair pair;
        std::string why;
        for (const auto& v : sn.bound_vars) pair.tuple.push_back(s.at(v));
        for (const auto& c : sn.cond) {
            if (const auto* lit = std::get_if<RegularLiteral>(&c)) {
                RegularLiteral g = *lit;
                if (!ground_literal(g, s, no_bound, ArgKind::CondArg, cset, why)) {
                    warn(warnings, &seen_warnings == nullptr ? nullptr : warnings, "");
                    return;
                }
                pair.conj.push_back(std::move(g));
            } else {
                Comparison cmp = std::get<Comparison>(c);
                if (!ground_term(cmp.lhs, s, no_bound, ArgKind::CondArg, cset, why) ||
                    !ground_term(cmp.rhs, s, no_bound, ArgKind::CondArg, cset, why)) {
                    warn(warnings, seen_warnings,
                         "rule " + std::to_string(rule_index + 1) +
                             ": dropped ground-set element (" + why + ")");
                    return;
                }
                if (!rel_holds(cmp.lhs.as_constant(), cmp.rel, cmp.rhs.as_constant()))
                    return;  // statically false guard: element vanishes
            }
        }
        pairs.insert(std::move(pair));
    });
    flog::GroundSet gs;
    gs.pairs.assign(pairs.begin(), pairs.end());
    return gs;
}

}  // namespace

flog::ProgramF ground_flog(const Program& p, const std::optional<IntRange>& range,
                           std::vector<std::string>* warnings) {
    for (const auto& r : p.rules) {
        if (r.intro_head)
            throw ValidationError("subset introduction is not part of the common fragment");
        for (const auto& h : r.head)
            if (h.negated)
                throw ValidationError("classical negation is not part of the common fragment");
        for (const auto& e : r.body) {
            if (e.is_set_atom())
                throw ValidationError("set atoms are not part of the common fragment");
            if (e.is_regular() && e.regular().negated)
                throw ValidationError("classical negation is not part of the common fragment");
            if (e.is_aggregate() && e.aggregate().negated)
                throw ValidationError("classical negation is not part of the common fragment");
            if (e.is_aggregate())
                for (const auto& c : e.aggregate().set.cond)
                    if (const auto* lit = std::get_if<RegularLiteral>(&c); lit && lit->negated)
                        throw ValidationError(
                            "classical negation is not part of the common fragment");
        }
    }

    std::set<Constant> cset = herbrand_constants(p, range);
    std::vector<Constant> consts(cset.begin(), cset.end());
    std::set<std::string> seen_warnings;
    std::set<flog::RuleF> seen;
    flog::ProgramF out;
    static const std::set<std::string> no_bound;

    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const Rule& r = p.rules[ri];
        std::set<std::string> gv = global_variables(r);
        check_safety(r, gv, ri);
        std::vector<std::string> vars(gv.begin(), gv.end());
        std::set<flog::RuleF> instances;
        for_each_assignment(vars, consts, [&](const Subst& s) {
            flog::RuleF g;
            std::string why;
            for (const auto& h : r.head) {
                RegularLiteral hl = h;
                if (!ground_literal(hl, s, no_bound, ArgKind::LiteralArg, cset, why)) {
                    warn(warnings, seen_warnings,
                         "rule " + std::to_string(ri + 1) + ": dropped instance (" + why + ")");
                    return;
                }
                g.head.push_back(std::move(hl));
            }
            for (const auto& e : r.body) {
                flog::ELiteralF ge;
                ge.default_neg = e.default_neg;
                if (e.is_regular()) {
                    RegularLiteral lit = e.regular();
                    if (!ground_literal(lit, s, no_bound, ArgKind::LiteralArg, cset, why)) {
                        warn(warnings, seen_warnings,
                             "rule " + std::to_string(ri + 1) + ": dropped instance (" + why +
                                 ")");
                        return;
                    }
                    ge.atom = std::move(lit);
                } else {
                    const auto& a = e.aggregate();
                    flog::AggregateAtomF fa;
                    fa.func = a.func;
                    fa.rel = a.rel;
                    Term guard = a.guard;
                    if (!ground_term(guard, s, no_bound, ArgKind::Guard, cset, why)) {
                        warn(warnings, seen_warnings,
                             "rule " + std::to_string(ri + 1) + ": dropped instance (" + why +
                                 ")");
                        return;
                    }
                    fa.guard = guard.as_constant().as_int();
                    SetName sn = a.set;
                    // apply the global substitution inside the symbolic name,
                    // then expand the remaining (local) variables
                    std::string sub_why;
                    SetName substituted = sn;
                    {
                        std::set<std::string> keep;  // locals survive this pass
                        std::set<std::string> all = set_name_vars(sn);
                        for (const auto& v : all)
                            if (!s.count(v)) keep.insert(v);
                        for (auto& c : substituted.cond) {
                            if (auto* lit = std::get_if<RegularLiteral>(&c)) {
                                for (auto& t : lit->args) t = subst_term(t, s, {});
                            } else {
                                auto& cmp = std::get<Comparison>(c);
                                cmp.lhs = subst_term(cmp.lhs, s, {});
                                cmp.rhs = subst_term(cmp.rhs, s, {});
                            }
                        }
                    }
                    fa.set = expand_set_name(substituted, consts, cset, ri, warnings,
                                             seen_warnings);
                    ge.atom = std::move(fa);
                }
                g.body.push_back(std::move(ge));
            }
            instances.insert(std::move(g));
        });
        for (auto& g : instances)
            if (seen.insert(g).second) out.push_back(g);
    }
    return out;
}

}  // namespace aloglab
