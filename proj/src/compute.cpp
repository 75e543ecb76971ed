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

#include "alcf/compute.hpp"
#include "alcf/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace alcf {

// ----- canonical families -------------------------------------------------------

namespace {

uint64_t checked_mul(uint64_t a, uint64_t b, uint64_t cap) {
    if (a != 0 && b > cap / a)
        throw ResourceError(ResourceError::Kind::FamilyTooLarge,
                            "canonical family exceeds the configured cap");
    return a * b;
}

uint64_t checked_pow2(uint64_t e, uint64_t cap) {
    if (e > 62)
        throw ResourceError(ResourceError::Kind::FamilyTooLarge,
                            "canonical family exceeds the configured cap");
    uint64_t v = uint64_t{1} << e;
    if (v > cap)
        throw ResourceError(ResourceError::Kind::FamilyTooLarge,
                            "canonical family exceeds the configured cap");
    return v;
}

} // namespace

CanonicalFamily canonical_concepts(const Signature& s, unsigned m,
                                   const ComputeLimits& limits) {
    // size estimate: N_0 = 2^names, N_{j+1} = N_0 * 2^(roles * N_j)
    uint64_t cap = limits.max_family;
    uint64_t n0 = checked_pow2(s.concept_names.size(), cap);
    uint64_t nj = n0;
    for (unsigned j = 1; j <= m; ++j) {
        uint64_t subsets = checked_pow2(checked_mul(s.role_names.size(), nj, 62), cap);
        nj = checked_mul(n0, subsets, cap);
    }

    CanonicalFamily f;
    f.sigma = s;
    f.depth = m;
    std::vector<std::string> names(s.concept_names.begin(), s.concept_names.end());
    std::vector<std::string> roles(s.role_names.begin(), s.role_names.end());

    // level 0: valuations
    std::vector<CanonicalFamily::MType> level;
    for (uint64_t mask = 0; mask < n0; ++mask) {
        CanonicalFamily::MType t;
        for (size_t i = 0; i < names.size(); ++i)
            t.valuation.push_back(((mask >> i) & 1) != 0);
        level.push_back(std::move(t));
    }
    f.levels.push_back(level);

    for (unsigned j = 1; j <= m; ++j) {
        const auto& prev = f.levels.back();
        std::vector<CanonicalFamily::MType> cur;
        // enumerate valuation x per-role subsets of prev
        std::vector<uint64_t> subset_mask(roles.size(), 0);
        uint64_t nprev = prev.size();
        std::function<void(size_t, CanonicalFamily::MType&)> rec =
            [&](size_t ri, CanonicalFamily::MType& proto) {
                if (ri == roles.size()) {
                    cur.push_back(proto);
                    if (cur.size() > limits.max_family)
                        throw ResourceError(ResourceError::Kind::FamilyTooLarge,
                                            "canonical family exceeds the configured cap");
                    return;
                }
                for (uint64_t mask = 0; mask < (uint64_t{1} << nprev); ++mask) {
                    std::set<int> sub;
                    for (uint64_t i = 0; i < nprev; ++i)
                        if ((mask >> i) & 1) sub.insert(static_cast<int>(i));
                    proto.succ[roles[ri]] = std::move(sub);
                    rec(ri + 1, proto);
                }
                proto.succ.erase(roles[ri]);
            };
        for (const auto& base : f.levels[0]) {
            CanonicalFamily::MType proto;
            proto.valuation = base.valuation;
            rec(0, proto);
        }
        f.levels.push_back(std::move(cur));
    }

    // characteristic concepts, built level by level
    std::vector<std::vector<ConceptId>> concepts(m + 1);
    for (unsigned j = 0; j <= m; ++j) {
        for (const auto& t : f.levels[j]) {
            std::vector<ConceptId> conj;
            for (size_t i = 0; i < names.size(); ++i)
                conj.push_back(t.valuation[i] ? name(names[i]) : not_(name(names[i])));
            if (j > 0) {
                for (const auto& r : roles) {
                    const std::set<int>& sub = t.succ.at(r);
                    std::vector<ConceptId> kids;
                    for (int kid : sub) kids.push_back(concepts[j - 1][kid]);
                    for (ConceptId kid : kids) conj.push_back(exists(r, kid));
                    // the full set one level down is universally true
                    if (sub.size() < f.levels[j - 1].size())
                        conj.push_back(forall(r, big_or(kids)));
                }
            }
            concepts[j].push_back(canonical(big_and(conj)));
        }
    }
    f.atoms = concepts[m];
    return f;
}

namespace {

// does c hold at the given depth-j type?  (rd(c) <= j required)
bool holds_at_mtype(const CanonicalFamily& f, ConceptId c, unsigned j, int idx,
                    const std::vector<std::string>& names) {
    const CanonicalFamily::MType& t = f.levels[j][idx];
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top: return true;
    case Ctor::Bot: return false;
    case Ctor::Name: {
        auto it = std::find(names.begin(), names.end(), n.name);
        if (it == names.end())
            throw std::invalid_argument("concept uses a name outside the family signature");
        return t.valuation[static_cast<size_t>(it - names.begin())];
    }
    case Ctor::Not: return !holds_at_mtype(f, n.a, j, idx, names);
    case Ctor::And:
        return holds_at_mtype(f, n.a, j, idx, names) && holds_at_mtype(f, n.b, j, idx, names);
    case Ctor::Or:
        return holds_at_mtype(f, n.a, j, idx, names) || holds_at_mtype(f, n.b, j, idx, names);
    case Ctor::Exists:
    case Ctor::Forall: {
        auto it = t.succ.find(n.name);
        if (it == t.succ.end())
            throw std::invalid_argument("concept uses a role outside the family signature");
        if (j == 0) throw std::invalid_argument("role depth exceeds the family depth");
        bool is_exists = n.ctor == Ctor::Exists;
        for (int kid : it->second) {
            bool h = holds_at_mtype(f, n.a, j - 1, kid, names);
            if (is_exists && h) return true;
            if (!is_exists && !h) return false;
        }
        return !is_exists;
    }
    }
    return false;
}

} // namespace

std::vector<int> CanonicalFamily::canonize_atoms(ConceptId c) const {
    if (role_depth(c) > depth)
        throw std::invalid_argument("role depth exceeds the family depth");
    std::vector<std::string> names(sigma.concept_names.begin(), sigma.concept_names.end());
    std::vector<int> out;
    for (size_t i = 0; i < levels[depth].size(); ++i)
        if (holds_at_mtype(*this, c, depth, static_cast<int>(i), names))
            out.push_back(static_cast<int>(i));
    return out;
}

ConceptId CanonicalFamily::canonize(ConceptId c) const {
    std::vector<ConceptId> parts;
    for (int i : canonize_atoms(c)) parts.push_back(atoms[i]);
    return canonical(big_or(parts));
}

std::vector<bool> CanonicalFamily::realizable_atoms(const TypeSet& ts) const {
    std::vector<std::string> names(sigma.concept_names.begin(), sigma.concept_names.end());
    std::vector<int> tracked; // closure index per family name, -1 if foreign
    for (const auto& nm : names) tracked.push_back(ts.cl.index_of(name(nm)));

    size_t nt = ts.types.size();
    // real[j][idx] = set of types realizing the depth-j mtype, as bitset
    std::vector<std::vector<std::vector<bool>>> real(levels.size());
    for (unsigned j = 0; j < levels.size(); ++j) {
        real[j].assign(levels[j].size(), std::vector<bool>(nt, false));
        for (size_t idx = 0; idx < levels[j].size(); ++idx) {
            const MType& t = levels[j][idx];
            for (size_t ty = 0; ty < nt; ++ty) {
                bool ok = true;
                // names the TBox does not mention are interpreted freely
                for (size_t i = 0; i < names.size() && ok; ++i) {
                    if (tracked[i] < 0) continue;
                    if (ts.types[ty].test(tracked[i]) != t.valuation[i]) ok = false;
                }
                if (ok && j > 0) {
                    for (const auto& [r, sub] : t.succ) {
                        // every child type must be realizable by a compatible
                        // successor type
                        for (int kid : sub) {
                            bool found = false;
                            for (size_t u = 0; u < nt && !found; ++u)
                                if (real[j - 1][kid][u] &&
                                    ts.leads_to(static_cast<int>(ty), r, static_cast<int>(u)))
                                    found = true;
                            if (!found) { ok = false; break; }
                        }
                        if (!ok) break;
                        // every demand on r must be witnessed inside the
                        // prescribed child set
                        for (const Demand& d : ts.demands[ty]) {
                            if (d.role != r) continue;
                            bool found = false;
                            for (int kid : sub) {
                                for (size_t u = 0; u < nt && !found; ++u) {
                                    if (!real[j - 1][kid][u]) continue;
                                    if (!ts.leads_to(static_cast<int>(ty), r,
                                                     static_cast<int>(u)))
                                        continue;
                                    if (ts.types[u].test(d.target) == d.want) found = true;
                                }
                                if (found) break;
                            }
                            if (!found) { ok = false; break; }
                        }
                        if (!ok) break;
                    }
                    // demands on roles outside the family are witnessed
                    // freely in the model; roles of the family with empty
                    // child sets forbid all demands on them
                }
                real[j][idx][ty] = ok;
            }
        }
    }
    std::vector<bool> out(levels[depth].size(), false);
    for (size_t idx = 0; idx < levels[depth].size(); ++idx)
        for (size_t ty = 0; ty < nt; ++ty)
            if (real[depth][idx][ty]) { out[idx] = true; break; }
    return out;
}

// ----- approximants -------------------------------------------------------------

TBox approximant(const TBox& t, const Signature& s, unsigned m,
                 const ComputeLimits& limits) {
    CanonicalFamily f = canonical_concepts(s, m, limits);
    TypeSet ts = compute_types(t, {});
    std::vector<bool> real = f.realizable_atoms(ts);
    // distinct depth-m types have disjoint extensions, so the approximant
    // says exactly: the unrealizable ones are impossible
    TBox out;
    for (size_t i = 0; i < f.atoms.size(); ++i)
        if (!real[i]) out.add(f.atoms[i], bot());
    return out;
}

bool bounded_inseparable(const TBox& t1, const TBox& t2, const Signature& s, unsigned m,
                         const ComputeLimits& limits) {
    CanonicalFamily f = canonical_concepts(s, m, limits);
    TypeSet ts1 = compute_types(t1, {});
    TypeSet ts2 = compute_types(t2, {});
    return f.realizable_atoms(ts1) == f.realizable_atoms(ts2);
}

// ----- concept interpolants -------------------------------------------------------

namespace {

struct Disjunct {
    std::map<std::string, bool> literals;
    std::vector<std::pair<std::string, ConceptId>> exists_parts;
    std::map<std::string, std::vector<ConceptId>> forall_parts;
};

bool merge_into(Disjunct& d, const Disjunct& o) {
    for (const auto& [n, v] : o.literals) {
        auto it = d.literals.find(n);
        if (it != d.literals.end() && it->second != v) return false;
        d.literals[n] = v;
    }
    d.exists_parts.insert(d.exists_parts.end(), o.exists_parts.begin(), o.exists_parts.end());
    for (const auto& [r, cs] : o.forall_parts) {
        auto& dst = d.forall_parts[r];
        dst.insert(dst.end(), cs.begin(), cs.end());
    }
    return true;
}

// disjunctive normal form layers of an NNF concept
std::vector<Disjunct> dnf(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top: return {Disjunct{}};
    case Ctor::Bot: return {};
    case Ctor::Name: {
        Disjunct d;
        d.literals[n.name] = true;
        return {d};
    }
    case Ctor::Not: {
        Disjunct d;
        d.literals[node(n.a).name] = false;
        return {d};
    }
    case Ctor::Or: {
        std::vector<Disjunct> out = dnf(n.a), r = dnf(n.b);
        out.insert(out.end(), r.begin(), r.end());
        return out;
    }
    case Ctor::And: {
        std::vector<Disjunct> l = dnf(n.a), r = dnf(n.b), out;
        for (const Disjunct& x : l)
            for (const Disjunct& y : r) {
                Disjunct z = x;
                if (merge_into(z, y)) out.push_back(std::move(z));
            }
        return out;
    }
    case Ctor::Exists: {
        Disjunct d;
        d.exists_parts.push_back({n.name, n.a});
        return {d};
    }
    case Ctor::Forall: {
        Disjunct d;
        d.forall_parts[n.name].push_back(n.a);
        return {d};
    }
    }
    return {};
}

ConceptId forall_merge(const std::vector<ConceptId>& cs) { return big_and(cs); }

// satisfiability w.r.t. the empty TBox, by the same layer decomposition
bool dnf_satisfiable(ConceptId c, std::map<ConceptId, bool>& memo) {
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    bool sat = false;
    for (const Disjunct& d : dnf(c)) {
        bool ok = true;
        for (const auto& [r, e] : d.exists_parts) {
            std::vector<ConceptId> parts{e};
            auto fit = d.forall_parts.find(r);
            if (fit != d.forall_parts.end())
                parts.insert(parts.end(), fit->second.begin(), fit->second.end());
            if (!dnf_satisfiable(nnf(big_and(parts)), memo)) { ok = false; break; }
        }
        if (ok) { sat = true; break; }
    }
    memo[c] = sat;
    return sat;
}

ConceptId interpolant_rec(ConceptId c, const Signature& s,
                          std::map<ConceptId, ConceptId>& memo,
                          std::map<ConceptId, bool>& sat_memo) {
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;

    std::vector<ConceptId> out_disjuncts;
    for (const Disjunct& d : dnf(c)) {
        // drop inconsistent disjuncts entirely (projection would otherwise
        // weaken bot into top)
        bool consistent = true;
        for (const auto& [r, e] : d.exists_parts) {
            std::vector<ConceptId> parts{e};
            auto fit = d.forall_parts.find(r);
            if (fit != d.forall_parts.end())
                parts.insert(parts.end(), fit->second.begin(), fit->second.end());
            if (!dnf_satisfiable(nnf(big_and(parts)), sat_memo)) { consistent = false; break; }
        }
        if (!consistent) continue;

        std::vector<ConceptId> conj;
        for (const auto& [nm, v] : d.literals)
            if (s.contains_concept(nm)) conj.push_back(v ? name(nm) : not_(name(nm)));
        for (const auto& [r, e] : d.exists_parts) {
            if (!s.contains_role(r)) continue;
            std::vector<ConceptId> parts{e};
            auto fit = d.forall_parts.find(r);
            if (fit != d.forall_parts.end())
                parts.insert(parts.end(), fit->second.begin(), fit->second.end());
            conj.push_back(
                exists(r, interpolant_rec(nnf(big_and(parts)), s, memo, sat_memo)));
        }
        for (const auto& [r, us] : d.forall_parts) {
            if (!s.contains_role(r)) continue;
            conj.push_back(forall(r, interpolant_rec(nnf(forall_merge(us)), s, memo, sat_memo)));
        }
        out_disjuncts.push_back(big_and(conj));
    }
    ConceptId res = simplify(big_or(out_disjuncts));
    memo[c] = res;
    return res;
}

} // namespace

ConceptId concept_interpolant(ConceptId c, const Signature& s) {
    std::map<ConceptId, ConceptId> memo;
    std::map<ConceptId, bool> sat_memo;
    return interpolant_rec(nnf(c), s, memo, sat_memo);
}

ConceptId bounded_universal(const std::set<std::string>& roles, unsigned n, ConceptId c) {
    if (n == 0) return c;
    ConceptId inner = bounded_universal(roles, n - 1, c);
    std::vector<ConceptId> conj{c};
    for (const auto& r : roles) conj.push_back(forall(r, inner));
    return big_and(conj);
}

TBox tbox_interpolant(const TBox& t, const Signature& s, std::optional<unsigned> m,
                      const ComputeLimits& limits) {
    (void)limits;
    ConceptId ct = nnf(internalize(t));
    unsigned depth;
    if (m) {
        depth = *m;
    } else {
        // 2^(2^(|C_T|+1)) + 2^|C_T| + 2 fits no desk run beyond trivial sizes
        uint64_t len = concept_size(ct);
        if (len > 4)
            throw ResourceError(ResourceError::Kind::DepthInfeasible,
                                "default internalization depth is infeasible for this input; "
                                "pass an explicit depth");
        depth = static_cast<unsigned>((uint64_t{1} << (uint64_t{1} << (len + 1))) +
                                      (uint64_t{1} << len) + 2);
    }
    std::set<std::string> roles = signature_of(t).role_names;
    ConceptId internal = bounded_universal(roles, depth, ct);
    TBox out;
    out.add(top(), concept_interpolant(internal, s));
    return out;
}

TBox stratified_forget(const TBox& t, const Signature& s, const ComputeLimits& limits) {
    Signature st = signature_of(t);
    // collect occurrence depths of each forgotten name across conc(T)
    std::map<std::string, std::set<unsigned>> depths;
    std::function<void(ConceptId, unsigned)> scan = [&](ConceptId c, unsigned d) {
        const ConceptNode& n = node(c);
        switch (n.ctor) {
        case Ctor::Name:
            if (!s.contains_concept(n.name)) depths[n.name].insert(d);
            break;
        case Ctor::Not: scan(n.a, d); break;
        case Ctor::And:
        case Ctor::Or:
            scan(n.a, d);
            scan(n.b, d);
            break;
        case Ctor::Exists:
        case Ctor::Forall: scan(n.a, d + 1); break;
        default: break;
        }
    };
    unsigned maxrd = 0;
    for (const auto& inc : t.inclusions) {
        scan(inc.lhs, 0);
        scan(inc.rhs, 0);
        maxrd = std::max(maxrd, std::max(role_depth(inc.lhs), role_depth(inc.rhs)));
    }
    for (const auto& r : st.role_names)
        if (!s.contains_role(r))
            throw NotStratified(r, {});
    for (const auto& [nm, ds] : depths)
        if (ds.size() > 1)
            throw NotStratified(nm, std::vector<unsigned>(ds.begin(), ds.end()));
    return approximant(t, s, maxrd, limits);
}

// ----- lower-bound family -----------------------------------------------------------

ConceptId k2_concept(unsigned i) {
    if (i == 0) return not_(name("B"));
    ConceptId inner = k2_concept(i - 1);
    return and_(exists("r", inner), exists("s", inner));
}

uint64_t k2_size(unsigned i) {
    // node count of the expansion: size(0) = 2, size(i+1) = 2 size(i) + 3
    uint64_t v = 2;
    for (unsigned k = 0; k < i; ++k) v = 2 * v + 3;
    return v;
}

namespace {

// forall over all words of length i from {r,s}, fully expanded
ConceptId forall_words(unsigned i, ConceptId c) {
    if (i == 0) return c;
    ConceptId inner = forall_words(i - 1, c);
    return and_(forall("r", inner), forall("s", inner));
}

// bit i of the concatenation of all values of a 2^n-wide counter counting
// 0 .. 2^(2^n)-1, lowest bit first, each value padded to 2^n bits
bool counter_bit(unsigned n, uint64_t i) {
    uint64_t width = uint64_t{1} << n;
    uint64_t value = i / width;
    uint64_t bitpos = i % width;
    return ((value >> bitpos) & 1) != 0;
}

} // namespace

std::pair<TBox, TBox> lower_bound_family(unsigned n, const ComputeLimits& limits) {
    if (n == 0) throw std::invalid_argument("the family starts at n = 1");
    uint64_t width = uint64_t{1} << n;                 // 2^n
    if (width > 20)
        throw ResourceError(ResourceError::Kind::FamilyTooLarge,
                            "lower-bound family exceeds the configured cap");
    uint64_t m = width * (uint64_t{1} << width);       // 2^n * 2^(2^n)
    // expansion sizes: K2 doubles per level, K1 holds 2^i paths per level
    if (m > 30 || k2_size(static_cast<unsigned>(m)) > limits.max_family ||
        (uint64_t{1} << m) > limits.max_family)
        throw ResourceError(ResourceError::Kind::FamilyTooLarge,
                            "lower-bound family exceeds the configured cap");

    TBox t_minus;
    t_minus.add(top(), and_(forall("r", not_(name("A"))), forall("s", not_(name("A")))));
    {
        std::vector<ConceptId> conj{not_(name("X"))};
        for (uint64_t i = 0; i < width; ++i)
            conj.push_back(forall_words(static_cast<unsigned>(i), not_(name("X"))));
        t_minus.add(name("A"), big_and(conj));
    }

    std::vector<ConceptId> k1_parts;
    for (uint64_t i = 0; i < m; ++i) {
        ConceptId lit = counter_bit(n, i) ? name("X") : not_(name("X"));
        k1_parts.push_back(forall_words(static_cast<unsigned>(i), lit));
    }
    ConceptId k1 = big_and(k1_parts);
    ConceptId k2 = k2_concept(static_cast<unsigned>(m));

    TBox t_sigma = t_minus;
    t_sigma.add(name("A"), or_(not_(k1), not_(k2)));
    return {t_minus, t_sigma};
}

} // namespace alcf
