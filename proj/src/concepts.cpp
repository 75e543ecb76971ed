/*
 * Copyright 2026 the alcforget authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "alcf/concepts.hpp"
#include "alcf/errors.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <unordered_map>

namespace alcf {

namespace {

struct Key {
    Ctor ctor;
    ConceptId a, b;
    std::string name;
    bool operator==(const Key& o) const {
        return ctor == o.ctor && a == o.a && b == o.b && name == o.name;
    }
};

struct KeyHash {
    size_t operator()(const Key& k) const {
        size_t h = static_cast<size_t>(k.ctor);
        h = h * 1000003u + k.a;
        h = h * 1000003u + k.b;
        h = h * 1000003u + std::hash<std::string>{}(k.name);
        return h;
    }
};

// Interning store.  push-only; a deque keeps node references stable.
class Store {
public:
    ConceptId intern(Ctor ctor, ConceptId a, ConceptId b, const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        Key k{ctor, a, b, name};
        auto it = index_.find(k);
        if (it != index_.end()) return it->second;
        ConceptId id = static_cast<ConceptId>(nodes_.size());
        nodes_.push_back(ConceptNode{ctor, a, b, name});
        index_.emplace(std::move(k), id);
        return id;
    }

    const ConceptNode& get(ConceptId id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return nodes_[id];
    }

    static Store& instance() {
        static Store s;
        return s;
    }

private:
    mutable std::mutex mu_;
    std::deque<ConceptNode> nodes_;
    std::unordered_map<Key, ConceptId, KeyHash> index_;
};

} // namespace

ConceptId top() { return Store::instance().intern(Ctor::Top, 0, 0, ""); }
ConceptId bot() { return Store::instance().intern(Ctor::Bot, 0, 0, ""); }
ConceptId name(const std::string& n) { return Store::instance().intern(Ctor::Name, 0, 0, n); }
ConceptId not_(ConceptId c) { return Store::instance().intern(Ctor::Not, c, 0, ""); }
ConceptId and_(ConceptId a, ConceptId b) { return Store::instance().intern(Ctor::And, a, b, ""); }
ConceptId or_(ConceptId a, ConceptId b) { return Store::instance().intern(Ctor::Or, a, b, ""); }
ConceptId exists(const std::string& r, ConceptId c) {
    return Store::instance().intern(Ctor::Exists, c, 0, r);
}
ConceptId forall(const std::string& r, ConceptId c) {
    return Store::instance().intern(Ctor::Forall, c, 0, r);
}

const ConceptNode& node(ConceptId c) { return Store::instance().get(c); }

ConceptId big_and(const std::vector<ConceptId>& cs) {
    if (cs.empty()) return top();
    ConceptId r = cs.back();
    for (size_t i = cs.size() - 1; i-- > 0;) r = and_(cs[i], r);
    return r;
}

ConceptId big_or(const std::vector<ConceptId>& cs) {
    if (cs.empty()) return bot();
    ConceptId r = cs.back();
    for (size_t i = cs.size() - 1; i-- > 0;) r = or_(cs[i], r);
    return r;
}

void TBox::add(ConceptId lhs, ConceptId rhs) {
    Inclusion inc{lhs, rhs};
    for (const auto& e : inclusions)
        if (e == inc) return;
    inclusions.push_back(inc);
}

void TBox::add(const TBox& o) {
    for (const auto& inc : o.inclusions) add(inc.lhs, inc.rhs);
}

Signature Signature::unite(const Signature& o) const {
    Signature s = *this;
    s.concept_names.insert(o.concept_names.begin(), o.concept_names.end());
    s.role_names.insert(o.role_names.begin(), o.role_names.end());
    return s;
}

bool Signature::subset_of(const Signature& o) const {
    for (const auto& n : concept_names)
        if (!o.contains_concept(n)) return false;
    for (const auto& n : role_names)
        if (!o.contains_role(n)) return false;
    return true;
}

// ----- lexer / parser -------------------------------------------------------

namespace {

enum class Tok { LParen, RParen, Dot, Ident, KwTop, KwBot, KwNot, KwAnd, KwOr,
                 KwExists, KwForall, KwSub, KwEquiv, End };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    Lexer(const std::string& text, int first_line) : s_(text), line_(first_line) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= s_.size()) return {Tok::End, "", line, col};
        char c = s_[pos_];
        if (c == '(') { advance(); return {Tok::LParen, "(", line, col}; }
        if (c == ')') { advance(); return {Tok::RParen, ")", line, col}; }
        if (c == '.') { advance(); return {Tok::Dot, ".", line, col}; }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                word += s_[pos_];
                advance();
            }
            static const std::map<std::string, Tok> kw = {
                {"top", Tok::KwTop},       {"bot", Tok::KwBot},
                {"not", Tok::KwNot},       {"and", Tok::KwAnd},
                {"or", Tok::KwOr},         {"exists", Tok::KwExists},
                {"forall", Tok::KwForall}, {"sub", Tok::KwSub},
                {"equiv", Tok::KwEquiv}};
            auto it = kw.find(word);
            if (it != kw.end()) return {it->second, word, line, col};
            return {Tok::Ident, word, line, col};
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }

private:
    void skip_ws() {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }
    void advance() {
        if (s_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_, col_ = 1;
};

class Parser {
public:
    Parser(const std::string& text, int first_line = 1) : lex_(text, first_line) { shift(); }

    ConceptId concept_() {
        switch (cur_.kind) {
        case Tok::KwTop: shift(); return top();
        case Tok::KwBot: shift(); return bot();
        case Tok::KwNot: shift(); return not_(concept_());
        case Tok::Ident: {
            std::string n = cur_.text;
            if (!std::isupper(static_cast<unsigned char>(n[0])))
                fail("concept name must start with an uppercase letter: " + n);
            shift();
            return name(n);
        }
        case Tok::KwExists:
        case Tok::KwForall: {
            bool ex = cur_.kind == Tok::KwExists;
            shift();
            std::string r = role_name();
            expect(Tok::Dot, "'.'");
            ConceptId c = concept_();
            return ex ? exists(r, c) : forall(r, c);
        }
        case Tok::LParen: {
            shift();
            ConceptId first = concept_();
            if (cur_.kind != Tok::KwAnd && cur_.kind != Tok::KwOr)
                fail("expected 'and' or 'or'");
            Tok op = cur_.kind;
            std::vector<ConceptId> parts{first};
            while (cur_.kind == op) {
                shift();
                parts.push_back(concept_());
            }
            if (cur_.kind == Tok::KwAnd || cur_.kind == Tok::KwOr)
                fail("mixed 'and'/'or' chains need parentheses");
            expect(Tok::RParen, "')'");
            return op == Tok::KwAnd ? big_and(parts) : big_or(parts);
        }
        default:
            fail("expected a concept");
        }
        return 0; // unreachable
    }

    Inclusion statement(bool* is_equiv) {
        ConceptId lhs = concept_();
        if (cur_.kind == Tok::KwSub) {
            shift();
            ConceptId rhs = concept_();
            *is_equiv = false;
            return {lhs, rhs};
        }
        if (cur_.kind == Tok::KwEquiv) {
            shift();
            ConceptId rhs = concept_();
            *is_equiv = true;
            return {lhs, rhs};
        }
        fail("expected 'sub' or 'equiv'");
        return {0, 0}; // unreachable
    }

    void end() {
        if (cur_.kind != Tok::End) fail("trailing input");
    }

private:
    std::string role_name() {
        if (cur_.kind != Tok::Ident)
            fail("expected a role name");
        std::string n = cur_.text;
        if (!std::islower(static_cast<unsigned char>(n[0])))
            fail("role name must start with a lowercase letter: " + n);
        shift();
        return n;
    }

    void expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) fail("expected " + what);
        shift();
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(cur_.line, cur_.col, msg + " (got '" + cur_.text + "')");
    }
    void shift() { cur_ = lex_.next(); }

    Lexer lex_;
    Token cur_;
};

} // namespace

ConceptId parse_concept(const std::string& text) {
    Parser p(text);
    ConceptId c = p.concept_();
    p.end();
    return c;
}

Inclusion parse_inclusion(const std::string& text) {
    Parser p(text);
    bool eq = false;
    Inclusion inc = p.statement(&eq);
    p.end();
    if (eq) throw ParseError(1, 1, "expected a single inclusion, not 'equiv'");
    return inc;
}

TBox parse_tbox(const std::string& text) {
    TBox t;
    size_t pos = 0;
    int line_no = 1;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        // blank or comment-only lines carry no statement
        bool blank = true;
        for (char c : line) {
            if (c == '#') break;
            if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
        }
        if (!blank) {
            Parser p(line, line_no);
            bool eq = false;
            Inclusion inc = p.statement(&eq);
            p.end();
            t.add(inc.lhs, inc.rhs);
            if (eq) t.add(inc.rhs, inc.lhs);
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
        ++line_no;
    }
    return t;
}

Signature parse_signature(const std::string& text) {
    Signature s;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b != std::string::npos) {
            item = item.substr(b, e - b + 1);
            bool ok = std::isalpha(static_cast<unsigned char>(item[0]));
            for (char c : item)
                if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') ok = false;
            if (!ok) throw ParseError(1, static_cast<int>(pos + 1), "bad name: " + item);
            if (std::isupper(static_cast<unsigned char>(item[0])))
                s.concept_names.insert(item);
            else
                s.role_names.insert(item);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return s;
}

// ----- printing -------------------------------------------------------------

std::string render(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top: return "top";
    case Ctor::Bot: return "bot";
    case Ctor::Name: return n.name;
    case Ctor::Not: return "not " + render(n.a);
    case Ctor::And: return "(" + render(n.a) + " and " + render(n.b) + ")";
    case Ctor::Or: return "(" + render(n.a) + " or " + render(n.b) + ")";
    case Ctor::Exists: return "exists " + n.name + ". " + render(n.a);
    case Ctor::Forall: return "forall " + n.name + ". " + render(n.a);
    }
    return "";
}

std::string render(const TBox& t) {
    std::string out;
    for (const auto& inc : t.inclusions)
        out += render(inc.lhs) + " sub " + render(inc.rhs) + "\n";
    return out;
}

// ----- syntactic operations -------------------------------------------------

ConceptId neg(ConceptId c) {
    const ConceptNode& n = node(c);
    if (n.ctor == Ctor::Not) return n.a;
    return not_(c);
}

ConceptId strip_double_negation(ConceptId c) {
    while (true) {
        const ConceptNode& n = node(c);
        if (n.ctor != Ctor::Not) return c;
        const ConceptNode& m = node(n.a);
        if (m.ctor != Ctor::Not) return c;
        c = m.a;
    }
}

ConceptId nnf(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top:
    case Ctor::Bot:
    case Ctor::Name: return c;
    case Ctor::And: return and_(nnf(n.a), nnf(n.b));
    case Ctor::Or: return or_(nnf(n.a), nnf(n.b));
    case Ctor::Exists: return exists(n.name, nnf(n.a));
    case Ctor::Forall: return forall(n.name, nnf(n.a));
    case Ctor::Not: {
        const ConceptNode& m = node(n.a);
        switch (m.ctor) {
        case Ctor::Top: return bot();
        case Ctor::Bot: return top();
        case Ctor::Name: return c;
        case Ctor::Not: return nnf(m.a);
        case Ctor::And: return or_(nnf(not_(m.a)), nnf(not_(m.b)));
        case Ctor::Or: return and_(nnf(not_(m.a)), nnf(not_(m.b)));
        case Ctor::Exists: return forall(m.name, nnf(not_(m.a)));
        case Ctor::Forall: return exists(m.name, nnf(not_(m.a)));
        }
    }
    }
    return c;
}

unsigned role_depth(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top:
    case Ctor::Bot:
    case Ctor::Name: return 0;
    case Ctor::Not: return role_depth(n.a);
    case Ctor::And:
    case Ctor::Or: return std::max(role_depth(n.a), role_depth(n.b));
    case Ctor::Exists:
    case Ctor::Forall: return 1 + role_depth(n.a);
    }
    return 0;
}

uint64_t concept_size(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top:
    case Ctor::Bot:
    case Ctor::Name: return 1;
    case Ctor::Not:
    case Ctor::Exists:
    case Ctor::Forall: return 1 + concept_size(n.a);
    case Ctor::And:
    case Ctor::Or: return 1 + concept_size(n.a) + concept_size(n.b);
    }
    return 1;
}

namespace {
void collect_sig(ConceptId c, Signature& s) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Name: s.concept_names.insert(n.name); break;
    case Ctor::Not: collect_sig(n.a, s); break;
    case Ctor::And:
    case Ctor::Or:
        collect_sig(n.a, s);
        collect_sig(n.b, s);
        break;
    case Ctor::Exists:
    case Ctor::Forall:
        s.role_names.insert(n.name);
        collect_sig(n.a, s);
        break;
    default: break;
    }
}
} // namespace

Signature signature_of(ConceptId c) {
    Signature s;
    collect_sig(c, s);
    return s;
}

Signature signature_of(const Inclusion& inc) {
    Signature s;
    collect_sig(inc.lhs, s);
    collect_sig(inc.rhs, s);
    return s;
}

Signature signature_of(const TBox& t) {
    Signature s;
    for (const auto& inc : t.inclusions) {
        collect_sig(inc.lhs, s);
        collect_sig(inc.rhs, s);
    }
    return s;
}

namespace {

ConceptId strip2(ConceptId c) { return strip_double_negation(c); }

void collect_sub(ConceptId c, std::set<ConceptId>& out) {
    c = strip2(c);
    if (!out.insert(c).second) return;
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Not:
    case Ctor::Exists:
    case Ctor::Forall: collect_sub(n.a, out); break;
    case Ctor::And:
    case Ctor::Or:
        collect_sub(n.a, out);
        collect_sub(n.b, out);
        break;
    default: break;
    }
}

} // namespace

std::vector<ConceptId> closure(const TBox& t, const std::vector<ConceptId>& extra,
                               bool with_top) {
    std::set<ConceptId> subs;
    for (const auto& inc : t.inclusions) {
        collect_sub(inc.lhs, subs);
        collect_sub(inc.rhs, subs);
    }
    for (ConceptId e : extra) collect_sub(e, subs);
    if (with_top) collect_sub(top(), subs);
    std::set<ConceptId> all = subs;
    for (ConceptId c : subs) all.insert(strip2(neg(c)));
    std::vector<ConceptId> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), [](ConceptId a, ConceptId b) {
        uint64_t sa = concept_size(a), sb = concept_size(b);
        if (sa != sb) return sa < sb;
        std::string ra = render(a), rb = render(b);
        if (ra != rb) return ra < rb;
        return a < b;
    });
    return out;
}

ConceptId internalize(const TBox& t) {
    std::vector<ConceptId> parts;
    for (const auto& inc : t.inclusions)
        parts.push_back(nnf(or_(not_(inc.lhs), inc.rhs)));
    return big_and(parts);
}

namespace {

void flatten(Ctor op, ConceptId c, std::vector<ConceptId>& out) {
    const ConceptNode& n = node(c);
    if (n.ctor == op) {
        flatten(op, n.a, out);
        flatten(op, n.b, out);
    } else {
        out.push_back(c);
    }
}

std::vector<ConceptId> sorted_dedup(std::vector<ConceptId> cs) {
    std::sort(cs.begin(), cs.end(), [](ConceptId a, ConceptId b) {
        std::string ra = render(a), rb = render(b);
        if (ra != rb) return ra < rb;
        return a < b;
    });
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

} // namespace

ConceptId canonical(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top:
    case Ctor::Bot:
    case Ctor::Name: return c;
    case Ctor::Not: return not_(canonical(n.a));
    case Ctor::Exists: return exists(n.name, canonical(n.a));
    case Ctor::Forall: return forall(n.name, canonical(n.a));
    case Ctor::And:
    case Ctor::Or: {
        std::vector<ConceptId> parts;
        flatten(n.ctor, c, parts);
        for (auto& p : parts) p = canonical(p);
        parts = sorted_dedup(parts);
        if (parts.size() == 1) return parts[0];
        return n.ctor == Ctor::And ? big_and(parts) : big_or(parts);
    }
    }
    return c;
}

ConceptId simplify(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top:
    case Ctor::Bot:
    case Ctor::Name: return c;
    case Ctor::Not: {
        ConceptId a = simplify(n.a);
        const ConceptNode& m = node(a);
        if (m.ctor == Ctor::Top) return bot();
        if (m.ctor == Ctor::Bot) return top();
        if (m.ctor == Ctor::Not) return m.a;
        return not_(a);
    }
    case Ctor::Exists: {
        ConceptId a = simplify(n.a);
        if (node(a).ctor == Ctor::Bot) return bot();
        return exists(n.name, a);
    }
    case Ctor::Forall: {
        ConceptId a = simplify(n.a);
        if (node(a).ctor == Ctor::Top) return top();
        return forall(n.name, a);
    }
    case Ctor::And:
    case Ctor::Or: {
        bool is_and = n.ctor == Ctor::And;
        std::vector<ConceptId> raw, parts;
        flatten(n.ctor, c, raw);
        for (ConceptId p : raw) {
            ConceptId q = simplify(p);
            const ConceptNode& m = node(q);
            if (is_and) {
                if (m.ctor == Ctor::Bot) return bot();
                if (m.ctor == Ctor::Top) continue;
            } else {
                if (m.ctor == Ctor::Top) return top();
                if (m.ctor == Ctor::Bot) continue;
            }
            // a simplified junct may itself be a flat and/or chain
            flatten(n.ctor, q, parts);
        }
        parts = sorted_dedup(parts);
        // complementary pair
        for (ConceptId p : parts) {
            ConceptId np = node(p).ctor == Ctor::Not ? node(p).a : not_(p);
            if (std::find(parts.begin(), parts.end(), np) != parts.end())
                return is_and ? bot() : top();
        }
        // absorption: X among juncts makes (X op' ...) redundant
        std::vector<ConceptId> kept;
        for (ConceptId p : parts) {
            const ConceptNode& m = node(p);
            if ((is_and && m.ctor == Ctor::Or) || (!is_and && m.ctor == Ctor::And)) {
                std::vector<ConceptId> inner;
                flatten(m.ctor, p, inner);
                bool redundant = false;
                for (ConceptId q : inner)
                    if (std::find(parts.begin(), parts.end(), q) != parts.end())
                        redundant = true;
                if (redundant) continue;
            }
            kept.push_back(p);
        }
        if (kept.empty()) return is_and ? top() : bot();
        if (kept.size() == 1) return kept[0];
        return is_and ? big_and(kept) : big_or(kept);
    }
    }
    return c;
}

} // namespace alcf
