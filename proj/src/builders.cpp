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

#include "alcf/builders.hpp"
#include "alcf/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace alcf {

std::string track_concept_name(const std::string& base, int track) {
    return base + "__trk" + std::to_string(track);
}

std::string track_role_name(const std::string& base, int track) {
    return base + (track == 0 ? "__trk12" : "__trk" + std::to_string(track));
}

std::string counter_name(unsigned bit) { return "Ctr__" + std::to_string(bit); }

// ----- type quotient -----------------------------------------------------------

TypeQuotient quotient_types(const TypeSet& ts, const Signature& s) {
    size_t n = ts.types.size();
    TypeQuotient q;
    q.class_of.assign(n, 0);

    std::vector<std::string> names;
    for (const auto& nm : s.concept_names)
        if (ts.cl.index_of(name(nm)) >= 0) names.push_back(nm);
    std::vector<std::string> roles;
    for (const auto& r : s.role_names)
        if (ts.roles.count(r)) roles.push_back(r);

    // initial partition by tracked label
    {
        std::map<std::vector<bool>, int> classes;
        for (size_t t = 0; t < n; ++t) {
            std::vector<bool> lab;
            for (const auto& nm : names)
                lab.push_back(ts.types[t].test(ts.cl.index_of(name(nm))));
            auto it = classes.find(lab);
            if (it == classes.end()) it = classes.emplace(lab, static_cast<int>(classes.size())).first;
            q.class_of[t] = it->second;
        }
        q.num_classes = static_cast<int>(classes.size());
    }

    // refine by successor classes and demand target classes until stable
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, std::string>, int> sigs;
        std::vector<int> next(n);
        for (size_t t = 0; t < n; ++t) {
            std::string sig;
            for (const auto& r : roles) {
                std::set<int> cls;
                for (size_t u = 0; u < n; ++u)
                    if (ts.leads_to(static_cast<int>(t), r, static_cast<int>(u)))
                        cls.insert(q.class_of[u]);
                sig += "[" + r + ":";
                for (int c : cls) sig += std::to_string(c) + ",";
                sig += "]";
            }
            std::set<std::string> dsigs;
            for (const Demand& d : ts.demands[t]) {
                if (!s.role_names.count(d.role)) continue;
                std::set<int> cls;
                for (size_t u = 0; u < n; ++u) {
                    if (!ts.leads_to(static_cast<int>(t), d.role, static_cast<int>(u)))
                        continue;
                    if (ts.types[u].test(d.target) == d.want) cls.insert(q.class_of[u]);
                }
                std::string ds = "<" + d.role + ":";
                for (int c : cls) ds += std::to_string(c) + ",";
                dsigs.insert(ds + ">");
            }
            for (const auto& ds : dsigs) sig += ds;
            auto key = std::make_pair(q.class_of[t], sig);
            auto it = sigs.find(key);
            if (it == sigs.end()) it = sigs.emplace(key, static_cast<int>(sigs.size())).first;
            next[t] = it->second;
        }
        if (static_cast<int>(sigs.size()) != q.num_classes) changed = true;
        q.class_of = std::move(next);
        q.num_classes = static_cast<int>(sigs.size());
    }
    return q;
}

// ----- bisimilarity automaton ----------------------------------------------------

Apta build_bisim_apta(const TBox& t, const Signature& s) {
    TypeSet ts = compute_types(t, {});
    TypeQuotient tq = quotient_types(ts, s);
    size_t nc = static_cast<size_t>(tq.num_classes);

    std::vector<std::string> tracked;
    for (const auto& nm : s.concept_names)
        if (ts.cl.index_of(name(nm)) >= 0) tracked.push_back(nm);

    // a representative type per class
    std::vector<int> rep(nc, -1);
    for (size_t ty = 0; ty < ts.types.size(); ++ty)
        if (rep[tq.class_of[ty]] < 0) rep[tq.class_of[ty]] = static_cast<int>(ty);

    // state 0 = initial, states 1..nc = classes
    std::vector<TF> formulas(1 + nc);
    std::vector<unsigned> prio(1 + nc, 0);
    {
        std::vector<TF> ds;
        for (size_t c = 0; c < nc; ++c) ds.push_back(tf_state(static_cast<StateId>(1 + c)));
        formulas[0] = tf_or(std::move(ds));
    }
    for (size_t c = 0; c < nc; ++c) {
        int ty = rep[c];
        std::vector<TF> conj;
        for (const auto& nm : tracked)
            conj.push_back(ts.types[ty].test(ts.cl.index_of(name(nm))) ? tf_atom(nm)
                                                                       : tf_neg_atom(nm));
        for (const auto& r : s.role_names) {
            std::set<int> cls;
            for (size_t u = 0; u < ts.types.size(); ++u)
                if (ts.leads_to(ty, r, static_cast<int>(u))) cls.insert(tq.class_of[u]);
            std::vector<TF> ds;
            for (int cc : cls) ds.push_back(tf_state(static_cast<StateId>(1 + cc)));
            conj.push_back(tf_box(r, tf_or(std::move(ds))));
        }
        std::set<std::pair<std::string, std::set<int>>> demand_targets;
        for (const Demand& d : ts.demands[ty]) {
            if (!s.role_names.count(d.role)) continue;
            std::set<int> cls;
            for (size_t u = 0; u < ts.types.size(); ++u) {
                if (!ts.leads_to(ty, d.role, static_cast<int>(u))) continue;
                if (ts.types[u].test(d.target) == d.want) cls.insert(tq.class_of[u]);
            }
            demand_targets.insert({d.role, std::move(cls)});
        }
        for (const auto& [role, cls] : demand_targets) {
            std::vector<TF> ds;
            for (int cc : cls) ds.push_back(tf_state(static_cast<StateId>(1 + cc)));
            conj.push_back(tf_dia(role, tf_or(std::move(ds))));
        }
        formulas[1 + c] = tf_and(std::move(conj));
    }

    std::vector<std::string> node_alpha(s.concept_names.begin(), s.concept_names.end());
    std::vector<std::string> edge_alpha(s.role_names.begin(), s.role_names.end());
    return from_formulas(formulas, node_alpha, edge_alpha, 0, prio);
}

// ----- models-of-T automaton -----------------------------------------------------

Apta build_model_apta(const TBox& t, const Signature& s) {
    ConceptId ct = nnf(internalize(t));
    Signature cs = signature_of(ct).unite(s);
    std::vector<TF> conj{tf_of_concept(ct)};
    for (const auto& r : s.role_names) conj.push_back(tf_box(r, tf_state(0)));
    std::vector<TF> formulas{tf_and(std::move(conj))};
    std::vector<std::string> node_alpha(cs.concept_names.begin(), cs.concept_names.end());
    std::vector<std::string> edge_alpha(cs.role_names.begin(), cs.role_names.end());
    return from_formulas(formulas, node_alpha, edge_alpha, 0, {0});
}

// ----- two-track machinery --------------------------------------------------------

namespace {

// rewrite an automaton over s to run on one track of the combined
// alphabet: atoms move to (A,track), diamonds may take private or shared
// edges, boxes must cover both
Apta retarget(const Apta& a, int track) {
    Apta out = a;
    std::vector<std::string> node_alpha, edge_alpha;
    for (const auto& n : a.node_alphabet) {
        node_alpha.push_back(track_concept_name(n, 1));
        node_alpha.push_back(track_concept_name(n, 2));
    }
    for (const auto& r : a.edge_alphabet) {
        edge_alpha.push_back(track_role_name(r, 1));
        edge_alpha.push_back(track_role_name(r, 2));
        edge_alpha.push_back(track_role_name(r, 0));
    }
    std::sort(node_alpha.begin(), node_alpha.end());
    std::sort(edge_alpha.begin(), edge_alpha.end());
    out.node_alphabet = node_alpha;
    out.edge_alphabet = edge_alpha;

    size_t n = a.num_states();
    for (size_t q = 0; q < n; ++q) {
        Move m = out.moves[q]; // add_state below may reallocate the move table
        switch (m.kind) {
        case MoveKind::Atom:
        case MoveKind::NegAtom:
            out.moves[q].name = track_concept_name(m.name, track);
            break;
        case MoveKind::Dia: {
            StateId s1 = out.add_state({MoveKind::Dia, m.a, 0, track_role_name(m.name, track)},
                                       out.priority[q]);
            StateId s2 = out.add_state({MoveKind::Dia, m.a, 0, track_role_name(m.name, 0)},
                                       out.priority[q]);
            out.moves[q] = {MoveKind::OrM, s1, s2, ""};
            break;
        }
        case MoveKind::Box: {
            StateId s1 = out.add_state({MoveKind::Box, m.a, 0, track_role_name(m.name, track)},
                                       out.priority[q]);
            StateId s2 = out.add_state({MoveKind::Box, m.a, 0, track_role_name(m.name, 0)},
                                       out.priority[q]);
            out.moves[q] = {MoveKind::AndM, s1, s2, ""};
            break;
        }
        default: break;
        }
    }
    return out;
}

unsigned counter_bits(unsigned m, const BuilderLimits& limits) {
    unsigned k = 1;
    while ((1u << k) < m + 2) ++k;
    if (k > limits.max_counter_bits)
        throw ResourceError(ResourceError::Kind::CounterTooWide,
                            "counter needs " + std::to_string(k) + " bits, cap is " +
                                std::to_string(limits.max_counter_bits));
    return k;
}

TF counter_eq(unsigned value, unsigned k) {
    std::vector<TF> conj;
    for (unsigned b = 0; b < k; ++b)
        conj.push_back(((value >> b) & 1) ? tf_atom(counter_name(b + 1))
                                          : tf_neg_atom(counter_name(b + 1)));
    return tf_and(std::move(conj));
}

TF counter_neq(unsigned value, unsigned k) {
    std::vector<TF> disj;
    for (unsigned b = 0; b < k; ++b)
        disj.push_back(((value >> b) & 1) ? tf_neg_atom(counter_name(b + 1))
                                          : tf_atom(counter_name(b + 1)));
    return tf_or(std::move(disj));
}

} // namespace

// The counter / segment-equality automaton: accepts iff the input is
// m-well-counting and the two encoded depth-m segments coincide.
Apta build_counter_apta(const Signature& s, unsigned m, const BuilderLimits& limits) {
    unsigned k = counter_bits(m, limits);

    std::vector<std::string> node_alpha, edge_alpha, pair_roles;
    for (const auto& n : s.concept_names) {
        node_alpha.push_back(track_concept_name(n, 1));
        node_alpha.push_back(track_concept_name(n, 2));
    }
    for (unsigned b = 1; b <= k; ++b) node_alpha.push_back(counter_name(b));
    for (const auto& r : s.role_names) {
        edge_alpha.push_back(track_role_name(r, 1));
        edge_alpha.push_back(track_role_name(r, 2));
        edge_alpha.push_back(track_role_name(r, 0));
    }
    std::vector<std::string> all_edges = edge_alpha;

    // q0 = 0, q1 = 1 (well-counting), q2 = 2 (segment equality)
    std::vector<TF> formulas(3);
    std::vector<unsigned> prio(3, 0);

    formulas[0] = tf_and({counter_eq(0, k), tf_state(1), tf_state(2)});

    {
        std::vector<TF> conj;
        for (unsigned v = 0; v <= m + 1; ++v) {
            unsigned next = std::min(v + 1, m + 1);
            std::vector<TF> step;
            for (const auto& e : all_edges) step.push_back(tf_box(e, counter_eq(next, k)));
            conj.push_back(tf_or({counter_neq(v, k), tf_and(std::move(step))}));
        }
        for (const auto& e : all_edges) conj.push_back(tf_box(e, tf_state(1)));
        formulas[1] = tf_and(std::move(conj));
    }

    {
        std::vector<TF> conj;
        for (const auto& n : s.concept_names) {
            TF both = tf_and({tf_atom(track_concept_name(n, 1)), tf_atom(track_concept_name(n, 2))});
            TF neither =
                tf_and({tf_neg_atom(track_concept_name(n, 1)), tf_neg_atom(track_concept_name(n, 2))});
            conj.push_back(tf_or({both, neither}));
        }
        // below depth m: no private edges, recurse along the shared ones
        std::vector<TF> deeper;
        for (const auto& r : s.role_names) {
            deeper.push_back(tf_box(track_role_name(r, 1), tf_false()));
            deeper.push_back(tf_box(track_role_name(r, 2), tf_false()));
            deeper.push_back(tf_box(track_role_name(r, 0), tf_state(2)));
        }
        std::vector<TF> at_depth;
        for (unsigned v = m; v <= m + 1; ++v) at_depth.push_back(counter_eq(v, k));
        conj.push_back(tf_or({tf_or(std::move(at_depth)), tf_and(std::move(deeper))}));
        formulas[2] = tf_and(std::move(conj));
    }

    return from_formulas(formulas, node_alpha, edge_alpha, 0, prio);
}

Apta build_existence_apta(const TBox& t, const Signature& s, unsigned m,
                          const BuilderLimits& limits) {
    if (!s.subset_of(signature_of(t)))
        throw std::invalid_argument("signature must be contained in the TBox signature");
    for (const auto& n : s.concept_names)
        if (n.find("__trk") != std::string::npos || n.rfind("Ctr__", 0) == 0)
            throw std::invalid_argument("signature collides with the track alphabet: " + n);
    for (const auto& r : s.role_names)
        if (r.find("__trk") != std::string::npos)
            throw std::invalid_argument("signature collides with the track alphabet: " + r);

    Apta bisim = build_bisim_apta(t, s);
    Apta a1 = retarget(bisim, 1);
    Apta a2 = retarget(complement(bisim), 2);

    Apta a3 = retarget(bisim, 2);
    {
        std::vector<TF> conj;
        for (const auto& r : s.role_names) {
            conj.push_back(tf_box(track_role_name(r, 2), tf_state(a3.initial)));
            conj.push_back(tf_box(track_role_name(r, 0), tf_state(a3.initial)));
        }
        a3.initial = append_formula(a3, tf_and(std::move(conj)), 0);
    }

    Apta a4 = build_counter_apta(s, m, limits);
    return intersect(intersect(intersect(a1, a2), a3), a4);
}

// ----- decoding / verification -------------------------------------------------------

namespace {

bool strip_suffix(const std::string& s, const std::string& suffix, std::string* base) {
    if (s.size() <= suffix.size()) return false;
    if (s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
    *base = s.substr(0, s.size() - suffix.size());
    return true;
}

} // namespace

WitnessPair decode_two_track(const PointedInterpretation& p, unsigned m) {
    p.check();
    const Interpretation& in = p.interp;
    size_t nd = in.domain.size();

    // counter value per element
    std::vector<uint64_t> value(nd, 0);
    for (const auto& [nm, ext] : in.concept_ext) {
        if (nm.rfind("Ctr__", 0) != 0) continue;
        unsigned bit = static_cast<unsigned>(std::stoul(nm.substr(5)));
        for (int e : ext) value[e] += uint64_t{1} << (bit - 1);
    }

    std::set<std::string> all_roles;
    for (const auto& [r, _] : in.role_ext) all_roles.insert(r);

    std::vector<int> parent(nd, -1), depth(nd, -1);
    std::vector<int> queue;
    int start = p.point_index();
    auto path_to = [&](int e) {
        std::vector<std::string> path;
        for (int v = e; v >= 0; v = parent[v]) path.push_back(in.domain[v]);
        std::reverse(path.begin(), path.end());
        return path;
    };
    depth[start] = 0;
    queue.push_back(start);
    if (value[start] != 0) throw NotWellCounting(path_to(start));
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        uint64_t expect = std::min<uint64_t>(value[u] + 1, m + 1);
        for (const auto& [r, to] : in.successors_any(u, all_roles)) {
            (void)r;
            if (value[to] != expect) {
                std::vector<std::string> path = path_to(u);
                path.push_back(in.domain[to]);
                throw NotWellCounting(path);
            }
            if (depth[to] < 0) {
                depth[to] = depth[u] + 1;
                parent[to] = u;
                queue.push_back(to);
            }
        }
    }

    WitnessPair w;
    w.depth = m;
    for (int track = 1; track <= 2; ++track) {
        Interpretation out;
        for (const auto& id : in.domain) out.add_element(id);
        for (const auto& [nm, ext] : in.concept_ext) {
            std::string base;
            if (strip_suffix(nm, "__trk" + std::to_string(track), &base))
                for (int e : ext) out.set_label(in.domain[e], base);
        }
        for (const auto& [rm, ext] : in.role_ext) {
            std::string base;
            if (strip_suffix(rm, "__trk" + std::to_string(track), &base) ||
                strip_suffix(rm, "__trk12", &base))
                for (const auto& [f, to] : ext)
                    out.add_edge(base, in.domain[f], in.domain[to]);
        }
        PointedInterpretation pi{std::move(out), p.point};
        pi.check();
        if (track == 1) w.i1 = std::move(pi);
        else w.i2 = std::move(pi);
    }
    return w;
}

bool verify_witness(const WitnessPair& w, const TBox& t, const Signature& s) {
    if (!segments_equal(w.i1, w.i2, s, w.depth)) return false;
    if (!holds_bisim_quantifier(w.i1, t, s)) return false;
    ExtTable ext2 = ext_table(w.i2.interp, t, s);
    if (ext2.nonempty_at(w.i2.point)) return false;
    std::set<std::string> roles;
    for (const auto& [r, _] : w.i2.interp.role_ext) roles.insert(r);
    int root = w.i2.point_index();
    for (const auto& [r, succ] : w.i2.interp.successors_any(root, roles)) {
        (void)r;
        if (!ext2.nonempty_at(w.i2.interp.domain[succ])) return false;
    }
    return true;
}

// ----- deciders ---------------------------------------------------------------------

bool decide_conservative_extension(const TBox& t, const TBox& tprime) {
    Signature sigma = signature_of(t);
    Apta models = build_model_apta(t, sigma);
    Apta not_bisim = complement(build_bisim_apta(tprime, sigma));
    return !is_empty(intersect(models, not_bisim)).has_value();
}

namespace {

uint64_t tbox_length(const TBox& t) {
    uint64_t n = 0;
    for (const auto& inc : t.inclusions)
        n += concept_size(inc.lhs) + concept_size(inc.rhs) + 1;
    return n;
}

bool at_exact_threshold(const TBox& t, unsigned m) {
    // the decision bound is (2^(2^|T|))^2 + 1; anything beyond 62 bits is
    // unreachable for an unsigned depth parameter
    uint64_t len = tbox_length(t);
    if (len > 5) return false;
    uint64_t e = uint64_t{1} << len;            // 2^|T|, <= 32
    if (2 * e > 62) return false;
    uint64_t msq = uint64_t{1} << (2 * e);      // (2^(2^|T|))^2 = 2^(2*2^|T|)
    return m >= msq + 1;
}

} // namespace

UiExistsResult decide_interpolant_nonexistence_at(const TBox& t, const Signature& s,
                                                  unsigned m, const BuilderLimits& limits) {
    Apta a = build_existence_apta(t, s, m, limits);
    std::optional<PointedInterpretation> w = is_empty(a);
    UiExistsResult res;
    res.star_holds = w.has_value();
    res.at_threshold = at_exact_threshold(t, m);
    if (w) res.witness = decode_two_track(*w, m);
    return res;
}

std::pair<TBox, Signature> reduce_ce_to_ui(const TBox& t, ConceptId c) {
    Signature st = signature_of(t);
    Signature sc = signature_of(c);
    Signature all = st.unite(sc);

    auto fresh = [&](std::string base, bool is_role) {
        std::string n = base;
        int i = 0;
        while (all.contains_concept(n) || all.contains_role(n))
            n = base + std::to_string(i++);
        if (is_role) all.role_names.insert(n);
        else all.concept_names.insert(n);
        return n;
    };
    std::string a = fresh("Afresh", false);
    std::string r = fresh("rfresh", true);

    TBox t0 = t;
    t0.add(not_(c), name(a));
    t0.add(name(a), exists(r, name(a)));
    for (const auto& role : all.role_names)
        if (role != r) t0.add(exists(role, name(a)), name(a));

    Signature sigma = st;
    sigma.role_names.insert(r);
    return {t0, sigma};
}

} // namespace alcf
