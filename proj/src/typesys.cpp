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

#include "alcf/typesys.hpp"
#include "alcf/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace alcf {

bool TypeSet::leads_to(int t, const std::string& role, int t2) const {
    auto it = arrows.find(role);
    if (it == arrows.end()) return true; // no modal members on this role
    const Arrow& a = it->second[t];
    return types[t2].contains(a.required) && !types[t2].intersects(a.forbidden);
}

std::vector<int> TypeSet::succ(int t, const std::string& role) const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(types.size()); ++u)
        if (leads_to(t, role, u)) out.push_back(u);
    return out;
}

namespace {

enum class Val : uint8_t { Unknown, True, False };

struct Decomp {
    Ctor ctor;
    int a = -1, b = -1;        // child closure indices
    std::string role;
};

// Enumerate all assignments of the decision atoms (names and modal
// members), propagating boolean structure, and keep those that make
// every marked requirement true.
class TypeEnumerator {
public:
    TypeEnumerator(const ClosureTable& cl, const std::vector<Decomp>& dec,
                   const std::vector<int>& required)
        : cl_(cl), dec_(dec), required_(required) {}

    std::vector<Bits> run() {
        size_t n = cl_.members.size();
        for (size_t i = 0; i < n; ++i)
            if (dec_[i].ctor == Ctor::Name || dec_[i].ctor == Ctor::Exists ||
                dec_[i].ctor == Ctor::Forall)
                atoms_.push_back(static_cast<int>(i));
        if (atoms_.size() > 28)
            throw std::runtime_error("closure too large for type enumeration (" +
                                     std::to_string(atoms_.size()) + " decision atoms)");
        vals_.assign(n, Val::Unknown);
        assign(0);
        return std::move(out_);
    }

private:
    // evaluate compound members from currently known values
    Val eval(int i) const {
        const Decomp& d = dec_[i];
        switch (d.ctor) {
        case Ctor::Top: return Val::True;
        case Ctor::Bot: return Val::False;
        case Ctor::Name:
        case Ctor::Exists:
        case Ctor::Forall: return vals_[i];
        case Ctor::Not: {
            Val v = vals_[d.a];
            if (v == Val::Unknown) return Val::Unknown;
            return v == Val::True ? Val::False : Val::True;
        }
        case Ctor::And: {
            Val va = vals_[d.a], vb = vals_[d.b];
            if (va == Val::False || vb == Val::False) return Val::False;
            if (va == Val::True && vb == Val::True) return Val::True;
            return Val::Unknown;
        }
        case Ctor::Or: {
            Val va = vals_[d.a], vb = vals_[d.b];
            if (va == Val::True || vb == Val::True) return Val::True;
            if (va == Val::False && vb == Val::False) return Val::False;
            return Val::Unknown;
        }
        }
        return Val::Unknown;
    }

    // propagate until stable; false when a requirement is already violated
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < vals_.size(); ++i) {
                if (vals_[i] != Val::Unknown) continue;
                Val v = eval(static_cast<int>(i));
                if (v != Val::Unknown) {
                    vals_[i] = v;
                    changed = true;
                }
            }
        }
        for (int r : required_)
            if (vals_[r] == Val::False) return false;
        return true;
    }

    void assign(size_t k) {
        std::vector<Val> saved = vals_;
        if (!propagate()) {
            vals_ = saved;
            return;
        }
        // find next unassigned atom
        while (k < atoms_.size() && vals_[atoms_[k]] != Val::Unknown) ++k;
        if (k == atoms_.size()) {
            emit();
            vals_ = saved;
            return;
        }
        std::vector<Val> after = vals_;
        vals_[atoms_[k]] = Val::True;
        assign(k + 1);
        vals_ = after;
        vals_[atoms_[k]] = Val::False;
        assign(k + 1);
        vals_ = saved;
    }

    void emit() {
        for (int r : required_)
            if (vals_[r] != Val::True) return;
        Bits b(vals_.size());
        for (size_t i = 0; i < vals_.size(); ++i)
            if (vals_[i] == Val::True) b.set(i);
        out_.push_back(b);
    }

    const ClosureTable& cl_;
    const std::vector<Decomp>& dec_;
    const std::vector<int>& required_;
    std::vector<int> atoms_;
    std::vector<Val> vals_;
    std::vector<Bits> out_;
};

ClosureTable make_closure_table(const std::vector<ConceptId>& members) {
    ClosureTable cl;
    cl.members = members;
    for (size_t i = 0; i < members.size(); ++i)
        cl.pos[members[i]] = static_cast<int>(i);
    cl.complement.resize(members.size());
    for (size_t i = 0; i < members.size(); ++i) {
        ConceptId c = members[i];
        ConceptId nc = node(c).ctor == Ctor::Not ? node(c).a : not_(c);
        int j = cl.index_of(nc);
        if (j < 0) throw std::logic_error("closure not complement-closed");
        cl.complement[i] = j;
    }
    return cl;
}

std::vector<Decomp> decompose(const ClosureTable& cl) {
    std::vector<Decomp> dec(cl.members.size());
    for (size_t i = 0; i < cl.members.size(); ++i) {
        const ConceptNode& n = node(cl.members[i]);
        Decomp d;
        d.ctor = n.ctor;
        // children live in the closure modulo double negation
        switch (n.ctor) {
        case Ctor::Not:
            d.a = cl.index_of(strip_double_negation(n.a));
            break;
        case Ctor::And:
        case Ctor::Or:
            d.a = cl.index_of(strip_double_negation(n.a));
            d.b = cl.index_of(strip_double_negation(n.b));
            break;
        case Ctor::Exists:
        case Ctor::Forall:
            d.a = cl.index_of(strip_double_negation(n.a));
            d.role = n.name;
            break;
        default: break;
        }
        if ((n.ctor == Ctor::Not || n.ctor == Ctor::And || n.ctor == Ctor::Or ||
             n.ctor == Ctor::Exists || n.ctor == Ctor::Forall) &&
            (d.a < 0 || ((n.ctor == Ctor::And || n.ctor == Ctor::Or) && d.b < 0)))
            throw std::logic_error("closure not subconcept-closed");
        dec[i] = d;
    }
    return dec;
}

struct CacheKey {
    std::vector<Inclusion> incs;
    std::vector<ConceptId> extra;
    bool operator<(const CacheKey& o) const {
        if (incs.size() != o.incs.size()) return incs.size() < o.incs.size();
        for (size_t i = 0; i < incs.size(); ++i)
            if (!(incs[i] == o.incs[i])) return incs[i] < o.incs[i];
        return extra < o.extra;
    }
};

std::mutex cache_mu;
std::map<CacheKey, std::shared_ptr<const TypeSet>> cache;

} // namespace

TypeSet compute_types(const TBox& t, const std::vector<ConceptId>& extra) {
    // extras enter the closure together with their nnf forms so that
    // satisfiability can be read off type membership of nnf(c)
    std::vector<ConceptId> ex = extra;
    for (ConceptId e : extra) ex.push_back(nnf(e));
    ConceptId ct = nnf(internalize(t));
    ex.push_back(ct);

    {
        CacheKey key{t.inclusions, ex};
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }

    TypeSet ts;
    ts.cl = make_closure_table(closure(t, ex, /*with_top=*/true));
    std::vector<Decomp> dec = decompose(ts.cl);
    std::vector<int> required{ts.cl.index_of(ct)};

    TypeEnumerator en(ts.cl, dec, required);
    ts.types = en.run();
    std::sort(ts.types.begin(), ts.types.end());

    for (size_t i = 0; i < ts.cl.members.size(); ++i)
        if (dec[i].ctor == Ctor::Exists || dec[i].ctor == Ctor::Forall)
            ts.roles.insert(dec[i].role);

    // arrow masks per role: required = children of boxes present,
    // forbidden = children of diamonds absent
    auto build_arrows = [&](size_t ntypes) {
        ts.arrows.clear();
        for (const auto& role : ts.roles) {
            std::vector<TypeSet::Arrow> per;
            per.reserve(ntypes);
            for (size_t ti = 0; ti < ntypes; ++ti) {
                TypeSet::Arrow a{Bits(ts.cl.members.size()), Bits(ts.cl.members.size())};
                for (size_t i = 0; i < ts.cl.members.size(); ++i) {
                    if (dec[i].role != role) continue;
                    if (dec[i].ctor == Ctor::Forall && ts.types[ti].test(i))
                        a.required.set(dec[i].a);
                    if (dec[i].ctor == Ctor::Exists && !ts.types[ti].test(i))
                        a.forbidden.set(dec[i].a);
                }
                per.push_back(std::move(a));
            }
            ts.arrows[role] = std::move(per);
        }
    };
    auto build_demands = [&]() {
        ts.demands.assign(ts.types.size(), {});
        for (size_t ti = 0; ti < ts.types.size(); ++ti) {
            for (size_t i = 0; i < ts.cl.members.size(); ++i) {
                if (!ts.types[ti].test(i)) continue;
                if (dec[i].ctor == Ctor::Exists)
                    ts.demands[ti].push_back({dec[i].role, dec[i].a, true});
                // a negated box is an existential demand for the complement
                if (dec[i].ctor == Ctor::Not && dec[dec[i].a].ctor == Ctor::Forall &&
                    !ts.types[ti].test(dec[i].a))
                    ts.demands[ti].push_back(
                        {dec[dec[i].a].role, dec[dec[i].a].a, false});
            }
        }
    };

    // elimination: drop types whose demands lack a surviving witness
    bool changed = true;
    while (changed) {
        build_arrows(ts.types.size());
        build_demands();
        changed = false;
        std::vector<Bits> kept;
        for (size_t ti = 0; ti < ts.types.size(); ++ti) {
            bool ok = true;
            for (const Demand& d : ts.demands[ti]) {
                bool found = false;
                for (size_t ui = 0; ui < ts.types.size(); ++ui) {
                    if (!ts.leads_to(static_cast<int>(ti), d.role, static_cast<int>(ui)))
                        continue;
                    if (ts.types[ui].test(d.target) == d.want) { found = true; break; }
                }
                if (!found) { ok = false; break; }
            }
            if (ok) kept.push_back(ts.types[ti]);
            else changed = true;
        }
        ts.types = std::move(kept);
    }
    build_arrows(ts.types.size());
    build_demands();

    {
        CacheKey key{t.inclusions, ex};
        std::lock_guard<std::mutex> lock(cache_mu);
        if (cache.size() > 512) cache.clear();
        cache[key] = std::make_shared<TypeSet>(ts);
    }
    return ts;
}

bool satisfiable(ConceptId c, const TBox& t) {
    TypeSet ts = compute_types(t, {c});
    int p = ts.cl.index_of(nnf(c));
    if (p < 0) throw std::logic_error("nnf(c) missing from closure");
    for (const Bits& ty : ts.types)
        if (ty.test(p)) return true;
    return false;
}

bool entails(const TBox& t, const Inclusion& inc) {
    return !satisfiable(and_(inc.lhs, not_(inc.rhs)), t);
}

bool entails(const TBox& t, const TBox& consequences) {
    for (const auto& inc : consequences.inclusions)
        if (!entails(t, inc)) return false;
    return true;
}

PointedInterpretation model_from_type(const TypeSet& ts, int t0) {
    if (t0 < 0 || t0 >= static_cast<int>(ts.types.size()))
        throw std::invalid_argument("type index not in type set");
    PointedInterpretation p;
    for (size_t i = 0; i < ts.types.size(); ++i)
        p.interp.add_element("t" + std::to_string(i));
    for (size_t i = 0; i < ts.types.size(); ++i) {
        for (size_t m = 0; m < ts.cl.members.size(); ++m) {
            if (!ts.types[i].test(m)) continue;
            if (node(ts.cl.members[m]).ctor == Ctor::Name)
                p.interp.set_label("t" + std::to_string(i), node(ts.cl.members[m]).name);
        }
        for (const Demand& d : ts.demands[i]) {
            for (size_t u = 0; u < ts.types.size(); ++u) {
                if (!ts.leads_to(static_cast<int>(i), d.role, static_cast<int>(u)))
                    continue;
                if (ts.types[u].test(d.target) != d.want) continue;
                p.interp.add_edge(d.role, "t" + std::to_string(i), "t" + std::to_string(u));
                break; // lowest witness in type order
            }
        }
    }
    p.point = "t" + std::to_string(t0);
    p.check();
    return p;
}

std::string render_types(const TypeSet& ts) {
    std::string out;
    for (const Bits& ty : ts.types) {
        std::vector<std::string> parts;
        for (size_t m = 0; m < ts.cl.members.size(); ++m)
            if (ty.test(m)) parts.push_back(render(ts.cl.members[m]));
        std::sort(parts.begin(), parts.end());
        std::string line;
        for (const auto& s : parts) {
            if (!line.empty()) line += ", ";
            line += s;
        }
        out += line + "\n";
    }
    return out;
}

} // namespace alcf
