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

#include "alcf/interp.hpp"
#include "alcf/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace alcf {

int Interpretation::add_element(const std::string& id) {
    int i = index_of(id);
    if (i >= 0) return i;
    domain.push_back(id);
    return static_cast<int>(domain.size()) - 1;
}

int Interpretation::index_of(const std::string& id) const {
    for (size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == id) return static_cast<int>(i);
    return -1;
}

void Interpretation::set_label(const std::string& id, const std::string& concept_name) {
    concept_ext[concept_name].insert(add_element(id));
}

void Interpretation::add_edge(const std::string& role, const std::string& from,
                              const std::string& to) {
    int f = add_element(from), t = add_element(to);
    role_ext[role].insert({f, t});
}

bool Interpretation::has_label(int e, const std::string& concept_name) const {
    auto it = concept_ext.find(concept_name);
    return it != concept_ext.end() && it->second.count(e) > 0;
}

std::vector<int> Interpretation::successors(int e, const std::string& role) const {
    std::vector<int> out;
    auto it = role_ext.find(role);
    if (it == role_ext.end()) return out;
    for (const auto& [f, t] : it->second)
        if (f == e) out.push_back(t);
    return out;
}

std::vector<std::pair<std::string, int>> Interpretation::successors_any(
    int e, const std::set<std::string>& rs) const {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& [r, edges] : role_ext) {
        if (!rs.count(r)) continue;
        for (const auto& [f, t] : edges)
            if (f == e) out.push_back({r, t});
    }
    return out;
}

void Interpretation::check() const {
    if (domain.empty()) throw std::invalid_argument("interpretation domain is empty");
    int n = static_cast<int>(domain.size());
    for (const auto& [name, ext] : concept_ext)
        for (int e : ext)
            if (e < 0 || e >= n)
                throw std::invalid_argument("extension of " + name + " outside domain");
    for (const auto& [name, ext] : role_ext)
        for (const auto& [f, t] : ext)
            if (f < 0 || f >= n || t < 0 || t >= n)
                throw std::invalid_argument("extension of " + name + " outside domain");
    std::set<std::string> seen(domain.begin(), domain.end());
    if (seen.size() != domain.size())
        throw std::invalid_argument("duplicate element id in domain");
}

int PointedInterpretation::point_index() const { return interp.index_of(point); }

void PointedInterpretation::check() const {
    interp.check();
    if (point_index() < 0)
        throw std::invalid_argument("point " + point + " not in domain");
}

// ----- semantics --------------------------------------------------------------

std::vector<bool> eval_bits(const Interpretation& i, ConceptId c) {
    size_t n = i.domain.size();
    const ConceptNode& nd = node(c);
    switch (nd.ctor) {
    case Ctor::Top: return std::vector<bool>(n, true);
    case Ctor::Bot: return std::vector<bool>(n, false);
    case Ctor::Name: {
        std::vector<bool> out(n, false);
        auto it = i.concept_ext.find(nd.name);
        if (it != i.concept_ext.end())
            for (int e : it->second) out[e] = true;
        return out;
    }
    case Ctor::Not: {
        std::vector<bool> out = eval_bits(i, nd.a);
        out.flip();
        return out;
    }
    case Ctor::And: {
        std::vector<bool> a = eval_bits(i, nd.a), b = eval_bits(i, nd.b);
        for (size_t k = 0; k < n; ++k) a[k] = a[k] && b[k];
        return a;
    }
    case Ctor::Or: {
        std::vector<bool> a = eval_bits(i, nd.a), b = eval_bits(i, nd.b);
        for (size_t k = 0; k < n; ++k) a[k] = a[k] || b[k];
        return a;
    }
    case Ctor::Exists:
    case Ctor::Forall: {
        std::vector<bool> ch = eval_bits(i, nd.a);
        std::vector<bool> out(n, nd.ctor == Ctor::Forall);
        auto it = i.role_ext.find(nd.name);
        if (it != i.role_ext.end()) {
            for (const auto& [f, t] : it->second) {
                if (nd.ctor == Ctor::Exists) {
                    if (ch[t]) out[f] = true;
                } else {
                    if (!ch[t]) out[f] = false;
                }
            }
        }
        return out;
    }
    }
    return std::vector<bool>(n, false);
}

std::set<std::string> eval_concept(const Interpretation& i, ConceptId c) {
    std::vector<bool> bits = eval_bits(i, c);
    std::set<std::string> out;
    for (size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) out.insert(i.domain[k]);
    return out;
}

bool holds_at(const Interpretation& i, ConceptId c, const std::string& elem) {
    int e = i.index_of(elem);
    if (e < 0) throw std::invalid_argument("element " + elem + " not in domain");
    return eval_bits(i, c)[e];
}

bool is_model(const Interpretation& i, const TBox& t) {
    for (const auto& inc : t.inclusions) {
        std::vector<bool> l = eval_bits(i, inc.lhs), r = eval_bits(i, inc.rhs);
        for (size_t k = 0; k < l.size(); ++k)
            if (l[k] && !r[k]) return false;
    }
    return true;
}

namespace {

bool atoms_agree(const Interpretation& i1, int d1, const Interpretation& i2, int d2,
                 const Signature& s) {
    for (const auto& a : s.concept_names)
        if (i1.has_label(d1, a) != i2.has_label(d2, a)) return false;
    return true;
}

} // namespace

bool sigma_bisimilar(const PointedInterpretation& p1, const PointedInterpretation& p2,
                     const Signature& s) {
    p1.check();
    p2.check();
    size_t n1 = p1.interp.domain.size(), n2 = p2.interp.domain.size();
    std::vector<bool> rel(n1 * n2, false);
    for (size_t a = 0; a < n1; ++a)
        for (size_t b = 0; b < n2; ++b)
            rel[a * n2 + b] = atoms_agree(p1.interp, static_cast<int>(a), p2.interp,
                                          static_cast<int>(b), s);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t a = 0; a < n1; ++a) {
            for (size_t b = 0; b < n2; ++b) {
                if (!rel[a * n2 + b]) continue;
                bool ok = true;
                for (const auto& r : s.role_names) {
                    for (int e1 : p1.interp.successors(static_cast<int>(a), r)) {
                        bool found = false;
                        for (int e2 : p2.interp.successors(static_cast<int>(b), r))
                            if (rel[e1 * n2 + e2]) { found = true; break; }
                        if (!found) { ok = false; break; }
                    }
                    if (!ok) break;
                    for (int e2 : p2.interp.successors(static_cast<int>(b), r)) {
                        bool found = false;
                        for (int e1 : p1.interp.successors(static_cast<int>(a), r))
                            if (rel[e1 * n2 + e2]) { found = true; break; }
                        if (!found) { ok = false; break; }
                    }
                    if (!ok) break;
                }
                if (!ok) {
                    rel[a * n2 + b] = false;
                    changed = true;
                }
            }
        }
    }
    return rel[p1.point_index() * n2 + p2.point_index()];
}

bool m_bisimilar(const PointedInterpretation& p1, const PointedInterpretation& p2,
                 const Signature& s, unsigned m) {
    p1.check();
    p2.check();
    size_t n1 = p1.interp.domain.size(), n2 = p2.interp.domain.size();
    std::vector<bool> cur(n1 * n2, false);
    for (size_t a = 0; a < n1; ++a)
        for (size_t b = 0; b < n2; ++b)
            cur[a * n2 + b] = atoms_agree(p1.interp, static_cast<int>(a), p2.interp,
                                          static_cast<int>(b), s);
    for (unsigned level = 0; level < m; ++level) {
        std::vector<bool> next(n1 * n2, false);
        for (size_t a = 0; a < n1; ++a) {
            for (size_t b = 0; b < n2; ++b) {
                if (!cur[a * n2 + b]) continue;
                // zero-level agreement is part of every level
                bool ok = atoms_agree(p1.interp, static_cast<int>(a), p2.interp,
                                      static_cast<int>(b), s);
                for (const auto& r : s.role_names) {
                    if (!ok) break;
                    for (int e1 : p1.interp.successors(static_cast<int>(a), r)) {
                        bool found = false;
                        for (int e2 : p2.interp.successors(static_cast<int>(b), r))
                            if (cur[e1 * n2 + e2]) { found = true; break; }
                        if (!found) { ok = false; break; }
                    }
                    if (!ok) break;
                    for (int e2 : p2.interp.successors(static_cast<int>(b), r)) {
                        bool found = false;
                        for (int e1 : p1.interp.successors(static_cast<int>(a), r))
                            if (cur[e1 * n2 + e2]) { found = true; break; }
                        if (!found) { ok = false; break; }
                    }
                }
                next[a * n2 + b] = ok;
            }
        }
        cur.swap(next);
    }
    return cur[p1.point_index() * n2 + p2.point_index()];
}

TreeSegment unravel_segment(const PointedInterpretation& p, unsigned m) {
    p.check();
    TreeSegment seg;
    seg.depth = m;
    Interpretation& out = seg.pi.interp;

    std::set<std::string> all_roles;
    for (const auto& [r, _] : p.interp.role_ext) all_roles.insert(r);

    struct Item { int orig; unsigned depth; std::string id; };
    std::vector<Item> queue;
    auto label_node = [&](const std::string& id, int orig) {
        out.add_element(id);
        for (const auto& [a, ext] : p.interp.concept_ext)
            if (ext.count(orig)) out.set_label(id, a);
    };
    std::string root_id = "v0";
    label_node(root_id, p.point_index());
    queue.push_back({p.point_index(), 0, root_id});
    seg.pi.point = root_id;
    size_t next_id = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Item it = queue[qi];
        if (it.depth == m) continue;
        // deterministic child order: role name, then target index
        for (const auto& r : all_roles) {
            std::vector<int> succ = p.interp.successors(it.orig, r);
            std::sort(succ.begin(), succ.end());
            for (int tgt : succ) {
                std::string cid = "v" + std::to_string(next_id++);
                label_node(cid, tgt);
                out.add_edge(r, it.id, cid);
                queue.push_back({tgt, it.depth + 1, cid});
            }
        }
    }
    return seg;
}

namespace {

// Canonical encoding of the depth-m unravelling restricted to s.
std::string segment_code(const Interpretation& i, int e, const Signature& s, unsigned m) {
    std::string code = "{";
    for (const auto& a : s.concept_names)
        if (i.has_label(e, a)) code += a + ";";
    code += "}";
    if (m == 0) return code;
    std::vector<std::string> kids;
    for (const auto& r : s.role_names)
        for (int t : i.successors(e, r))
            kids.push_back(r + ":" + segment_code(i, t, s, m - 1));
    std::sort(kids.begin(), kids.end());
    code += "[";
    for (const auto& k : kids) code += k + ",";
    code += "]";
    return code;
}

} // namespace

bool segments_equal(const PointedInterpretation& p1, const PointedInterpretation& p2,
                    const Signature& s, unsigned m) {
    p1.check();
    p2.check();
    return segment_code(p1.interp, p1.point_index(), s, m) ==
           segment_code(p2.interp, p2.point_index(), s, m);
}

namespace {

ConceptId char_rec(const Interpretation& i, int e, const Signature& s, unsigned m) {
    std::vector<ConceptId> conj;
    for (const auto& a : s.concept_names)
        conj.push_back(i.has_label(e, a) ? name(a) : not_(name(a)));
    if (m > 0) {
        for (const auto& r : s.role_names) {
            std::set<ConceptId> kids; // distinct child characterizations
            for (int t : i.successors(e, r))
                kids.insert(canonical(char_rec(i, t, s, m - 1)));
            for (ConceptId k : kids) conj.push_back(exists(r, k));
            conj.push_back(forall(r, big_or(std::vector<ConceptId>(kids.begin(), kids.end()))));
        }
    }
    // drop top conjuncts (forall r. top arises when the child disjunction
    // covers everything; literal part is empty for empty s)
    std::vector<ConceptId> kept;
    for (ConceptId c : conj)
        if (node(c).ctor != Ctor::Top &&
            !(node(c).ctor == Ctor::Forall && node(node(c).a).ctor == Ctor::Top))
            kept.push_back(c);
    return big_and(kept);
}

} // namespace

ConceptId char_concept(const PointedInterpretation& p, const Signature& s, unsigned m) {
    p.check();
    return char_rec(p.interp, p.point_index(), s, m);
}

// ----- file format --------------------------------------------------------------

std::string save_interpretation(const Interpretation& i, const std::string* point) {
    nlohmann::ordered_json j;
    j["domain"] = i.domain;
    nlohmann::ordered_json cj = nlohmann::ordered_json::object();
    for (const auto& [name, ext] : i.concept_ext) {
        if (ext.empty()) continue;
        std::vector<std::string> ids;
        for (int e : ext) ids.push_back(i.domain[e]);
        cj[name] = ids;
    }
    j["concepts"] = cj;
    nlohmann::ordered_json rj = nlohmann::ordered_json::object();
    for (const auto& [name, ext] : i.role_ext) {
        if (ext.empty()) continue;
        std::vector<std::vector<std::string>> pairs;
        for (const auto& [f, t] : ext) pairs.push_back({i.domain[f], i.domain[t]});
        rj[name] = pairs;
    }
    j["roles"] = rj;
    if (point) j["point"] = *point;
    return j.dump(2) + "\n";
}

std::string save_pointed(const PointedInterpretation& p) {
    return save_interpretation(p.interp, &p.point);
}

namespace {

Interpretation load_core(const nlohmann::json& j, std::string* point_out) {
    Interpretation i;
    if (!j.contains("domain") || !j["domain"].is_array())
        throw ParseError(1, 1, "interpretation file needs a 'domain' array");
    for (const auto& d : j["domain"]) i.add_element(d.get<std::string>());
    if (j.contains("concepts"))
        for (const auto& [name, ids] : j["concepts"].items())
            for (const auto& id : ids) {
                std::string sid = id.get<std::string>();
                if (i.index_of(sid) < 0)
                    throw ParseError(1, 1, "concept " + name + " uses unknown element " + sid);
                i.set_label(sid, name);
            }
    if (j.contains("roles"))
        for (const auto& [name, pairs] : j["roles"].items())
            for (const auto& pr : pairs) {
                if (!pr.is_array() || pr.size() != 2)
                    throw ParseError(1, 1, "role " + name + " needs [from,to] pairs");
                std::string f = pr[0].get<std::string>(), t = pr[1].get<std::string>();
                if (i.index_of(f) < 0 || i.index_of(t) < 0)
                    throw ParseError(1, 1, "role " + name + " uses unknown element");
                i.add_edge(name, f, t);
            }
    if (point_out) {
        if (!j.contains("point"))
            throw ParseError(1, 1, "interpretation file needs a 'point'");
        *point_out = j["point"].get<std::string>();
    }
    i.check();
    return i;
}

nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, 1, e.what());
    }
}

} // namespace

PointedInterpretation load_pointed(const std::string& text) {
    nlohmann::json j = parse_json(text);
    PointedInterpretation p;
    p.interp = load_core(j, &p.point);
    p.check();
    return p;
}

Interpretation load_interpretation(const std::string& text) {
    nlohmann::json j = parse_json(text);
    return load_core(j, nullptr);
}

} // namespace alcf
