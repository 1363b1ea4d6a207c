#include "aloglab/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace aloglab {

namespace {

enum class Tok : std::uint8_t {
    Ident,     // lowercase-initial
    Variable,  // uppercase-initial
    Integer,
    LParen, RParen, LBrace, RBrace,
    Comma, Colon, If /* :- */, Dot, Pipe,
    Lt, Le, Gt, Ge, Eq, Ne,
    Plus, Minus, Star,
    KwNot, KwOr,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    long long number = 0;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_ws();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::End) break;
        }
        return out;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                line_start_ = pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    SourceSpan span_from(std::size_t begin) const {
        SourceSpan s;
        s.begin = begin;
        s.end = pos_;
        s.line = line_;
        s.column = static_cast<int>(begin - line_start_) + 1;
        return s;
    }

    [[noreturn]] void fail(std::size_t begin, const std::string& msg) {
        throw ParseError(msg, span_from(begin));
    }

    Token next() {
        std::size_t begin = pos_;
        auto make = [&](Tok k, std::string text = {}) {
            return Token{k, std::move(text), 0, span_from(begin)};
        };
        if (pos_ >= text_.size()) return make(Tok::End);
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            Token t = make(Tok::Integer, std::string(text_.substr(start, pos_ - start)));
            try {
                t.number = std::stoll(t.text);
            } catch (const std::exception&) {
                fail(begin, "integer literal out of range");
            }
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string word(text_.substr(start, pos_ - start));
            if (word == "not") return make(Tok::KwNot, word);
            if (word == "or") return make(Tok::KwOr, word);
            if (std::isupper(static_cast<unsigned char>(word[0])))
                return make(Tok::Variable, word);
            if (word[0] == '_') fail(begin, "identifiers may not start with '_'");
            return make(Tok::Ident, word);
        }
        ++pos_;
        auto two = [&](char second) {
            if (pos_ < text_.size() && text_[pos_] == second) {
                ++pos_;
                return true;
            }
            return false;
        };
        switch (c) {
            case '(': return make(Tok::LParen);
            case ')': return make(Tok::RParen);
            case '{': return make(Tok::LBrace);
            case '}': return make(Tok::RBrace);
            case ',': return make(Tok::Comma);
            case '.': return make(Tok::Dot);
            case '|': return make(Tok::Pipe);
            case ':': return two('-') ? make(Tok::If) : make(Tok::Colon);
            case '<': return two('=') ? make(Tok::Le) : make(Tok::Lt);
            case '>': return two('=') ? make(Tok::Ge) : make(Tok::Gt);
            case '=': return make(Tok::Eq);
            case '!':
                if (two('=')) return make(Tok::Ne);
                fail(begin, "expected '=' after '!'");
            case '+': return make(Tok::Plus);
            case '-': return make(Tok::Minus);
            case '*': return make(Tok::Star);
            default: break;
        }
        fail(begin, std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
};

bool is_rel(Tok k) {
    return k == Tok::Lt || k == Tok::Le || k == Tok::Gt || k == Tok::Ge || k == Tok::Eq ||
           k == Tok::Ne;
}

Rel to_rel(Tok k) {
    switch (k) {
        case Tok::Lt: return Rel::Lt;
        case Tok::Le: return Rel::Le;
        case Tok::Gt: return Rel::Gt;
        case Tok::Ge: return Rel::Ge;
        case Tok::Eq: return Rel::Eq;
        default: return Rel::Ne;
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    Program parse() {
        Program p;
        while (!at(Tok::End)) p.rules.push_back(rule());
        validate(p);
        return p;
    }

    LiteralSet literal_list() {
        LiteralSet out;
        if (at(Tok::End)) return out;
        for (;;) {
            RegularLiteral l = regular_literal();
            if (!l.is_ground()) err("expected a ground literal");
            out.insert(std::move(l));
            if (!accept(Tok::Comma)) break;
        }
        expect(Tok::End, "end of literal list");
        return out;
    }

private:
    const Token& peek(int n = 0) const {
        std::size_t i = pos_ + static_cast<std::size_t>(n);
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(Tok k, int n = 0) const { return peek(n).kind == k; }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(Tok k) {
        if (at(k)) {
            ++pos_;
            return true;
        }
        return false;
    }
    const Token& expect(Tok k, const char* what) {
        if (!at(k)) err(std::string("expected ") + what);
        return advance();
    }
    [[noreturn]] void err(const std::string& msg) const { throw ParseError(msg, peek().span); }

    bool agg_func_ahead() const {
        if (!at(Tok::Ident) || !at(Tok::LBrace, 1)) return false;
        const std::string& w = peek().text;
        return w == "count" || w == "card" || w == "sum" || w == "min" || w == "max";
    }

    Rule rule() {
        Rule r;
        if (!at(Tok::If)) {
            if (at(Tok::KwNot)) err("'not' may not prefix a head literal");
            // subset-introduction head: ident rel '{'
            if (at(Tok::Ident) && is_rel(peek(1).kind) && at(Tok::LBrace, 2)) {
                SubsetIntroHead h;
                h.pred = advance().text;
                Tok rk = advance().kind;
                if (rk != Tok::Le && rk != Tok::Lt && rk != Tok::Eq)
                    err("subset introduction uses <=, < or =");
                h.rel = to_rel(rk);
                h.rhs = set_name();
                r.intro_head = std::move(h);
            } else {
                r.head.push_back(regular_literal());
                while (accept(Tok::KwOr) || accept(Tok::Pipe)) {
                    if (at(Tok::KwNot)) err("'not' may not prefix a head literal");
                    r.head.push_back(regular_literal());
                }
            }
        }
        if (accept(Tok::If)) {
            if (at(Tok::Dot)) err("empty body after ':-'");
            r.body.push_back(e_literal());
            while (accept(Tok::Comma)) r.body.push_back(e_literal());
        }
        expect(Tok::Dot, "'.' at end of rule");
        return r;
    }

    ELiteral e_literal() {
        ELiteral e;
        e.default_neg = accept(Tok::KwNot);
        if (at(Tok::LBrace)) {
            if (e.default_neg) err("'not' may not prefix a set atom");
            e.atom = set_atom_from(set_name());
            return e;
        }
        if (agg_func_ahead() || (at(Tok::Minus) && at(Tok::Ident, 1) && at(Tok::LBrace, 2))) {
            e.atom = aggregate_atom();
            return e;
        }
        // abbreviated set atom: p <= {X : q(X)}
        if (at(Tok::Ident) && is_rel(peek(1).kind) && at(Tok::LBrace, 2)) {
            if (e.default_neg) err("'not' may not prefix a set atom");
            std::string pred = advance().text;
            Tok rk = advance().kind;
            if (rk != Tok::Le && rk != Tok::Lt && rk != Tok::Eq)
                err("set atoms use <=, < or =");
            SetName rhs = set_name();
            // p <= {X : q(X)} abbreviates {X : p(X)} <= {X : q(X)}
            SetName lhs;
            RegularLiteral l;
            l.pred = pred;
            for (const auto& v : rhs.bound_vars) {
                lhs.bound_vars.push_back(v);
                l.args.push_back(Term::variable(v));
            }
            lhs.cond.push_back(std::move(l));
            e.atom = SetAtom{std::move(lhs), to_rel(rk), std::move(rhs)};
            return e;
        }
        e.atom = regular_literal();
        return e;
    }

    SetAtom set_atom_from(SetName lhs) {
        Tok rk = peek().kind;
        if (rk != Tok::Le && rk != Tok::Lt && rk != Tok::Eq)
            err("set atoms use <=, < or =");
        advance();
        SetAtom a;
        a.lhs = std::move(lhs);
        a.rel = to_rel(rk);
        a.rhs = set_name();
        return a;
    }

    AggregateAtom aggregate_atom() {
        AggregateAtom a;
        a.negated = accept(Tok::Minus);
        const Token& f = expect(Tok::Ident, "aggregate function");
        if (f.text == "count" || f.text == "card")
            a.func = AggFunc::Count;
        else if (f.text == "sum")
            a.func = AggFunc::Sum;
        else if (f.text == "min")
            a.func = AggFunc::Min;
        else if (f.text == "max")
            a.func = AggFunc::Max;
        else
            err("unknown aggregate function '" + f.text + "'");
        a.set = set_name();
        if (!is_rel(peek().kind)) err("expected arithmetic relation after aggregate term");
        a.rel = to_rel(advance().kind);
        a.guard = term();
        return a;
    }

    SetName set_name() {
        expect(Tok::LBrace, "'{'");
        SetName s;
        s.bound_vars.push_back(expect(Tok::Variable, "bound variable").text);
        while (accept(Tok::Comma))
            s.bound_vars.push_back(expect(Tok::Variable, "bound variable").text);
        expect(Tok::Colon, "':' in set name");
        s.cond.push_back(cond_literal());
        while (accept(Tok::Comma)) s.cond.push_back(cond_literal());
        expect(Tok::RBrace, "'}'");
        return s;
    }

    CondLiteral cond_literal() {
        // regular literal, or a comparison such as "X != b"
        if (at(Tok::Ident) && !is_rel(peek(1).kind)) return regular_literal();
        if (at(Tok::Minus) && at(Tok::Ident, 1)) return regular_literal();
        Comparison c;
        c.lhs = term();
        if (!is_rel(peek().kind)) err("expected comparison in set condition");
        c.rel = to_rel(advance().kind);
        c.rhs = term();
        return c;
    }

    RegularLiteral regular_literal() {
        RegularLiteral l;
        l.negated = accept(Tok::Minus);
        l.pred = expect(Tok::Ident, "predicate name").text;
        if (accept(Tok::LParen)) {
            l.args.push_back(term());
            while (accept(Tok::Comma)) l.args.push_back(term());
            expect(Tok::RParen, "')'");
        }
        return l;
    }

    // term := add; add := mul (('+'|'-') mul)*; mul := primary ('*' primary)*
    Term term() { return add_term(); }

    Term add_term() {
        Term t = mul_term();
        for (;;) {
            if (accept(Tok::Plus))
                t = Term::binary('+', std::move(t), mul_term());
            else if (accept(Tok::Minus))
                t = Term::binary('-', std::move(t), mul_term());
            else
                return t;
        }
    }

    Term mul_term() {
        Term t = primary_term();
        while (accept(Tok::Star)) t = Term::binary('*', std::move(t), primary_term());
        return t;
    }

    Term primary_term() {
        if (accept(Tok::LParen)) {
            Term t = add_term();
            expect(Tok::RParen, "')'");
            return t;
        }
        if (at(Tok::Minus) && at(Tok::Integer, 1)) {
            advance();
            return Term::constant(Constant::integer(-advance().number));
        }
        if (at(Tok::Integer)) return Term::constant(Constant::integer(advance().number));
        if (at(Tok::Variable)) return Term::variable(advance().text);
        if (at(Tok::Ident)) return Term::constant(Constant::symbol(advance().text));
        err("expected term");
    }

    void validate(const Program& p) const {
        predicate_arities(p);  // throws on arity conflicts
        for (const auto& r : p.rules) {
            auto check_set_name = [&](const SetName& sn) {
                std::set<std::string> seen;
                for (const auto& v : sn.bound_vars)
                    if (!seen.insert(v).second)
                        throw ValidationError("duplicate bound variable '" + v +
                                              "' in set name " + to_string(sn));
                std::set<std::string> in_cond;
                for (const auto& c : sn.cond) {
                    if (const auto* lit = std::get_if<RegularLiteral>(&c))
                        for (const auto& t : lit->args) collect_vars(t, in_cond);
                }
                for (const auto& v : sn.bound_vars)
                    if (!in_cond.count(v))
                        throw ValidationError("bound variable '" + v +
                                              "' does not occur in the condition of " +
                                              to_string(sn));
            };
            if (r.intro_head) check_set_name(r.intro_head->rhs);
            for (const auto& e : r.body) {
                if (e.is_aggregate()) {
                    const auto& a = e.aggregate();
                    check_set_name(a.set);
                    if (a.func != AggFunc::Count && a.set.bound_vars.size() != 1)
                        throw ValidationError(std::string(to_string(a.func)) +
                                              " requires a single bound variable");
                } else if (e.is_set_atom()) {
                    check_set_name(e.set_atom().lhs);
                    check_set_name(e.set_atom().rhs);
                    if (e.set_atom().lhs.bound_vars.size() != e.set_atom().rhs.bound_vars.size())
                        throw ValidationError("set atom sides have different tuple lengths");
                }
            }
        }
    }

    static void collect_vars(const Term& t, std::set<std::string>& out) {
        switch (t.kind()) {
            case Term::Kind::Const: break;
            case Term::Kind::Var: out.insert(t.var_name()); break;
            case Term::Kind::Binary:
                collect_vars(t.lhs(), out);
                collect_vars(t.rhs(), out);
                break;
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).parse(); }

LiteralSet parse_literal_list(std::string_view text) { return Parser(text).literal_list(); }

std::string format_program(const Program& p) {
    std::ostringstream os;
    for (const auto& r : p.rules) os << to_string(r) << "\n";
    return os.str();
}

}  // namespace aloglab
