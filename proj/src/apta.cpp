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

#include "alcf/apta.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace alcf {

namespace {

std::string move_str(const Move& m) {
    switch (m.kind) {
    case MoveKind::True: return "true";
    case MoveKind::False: return "false";
    case MoveKind::Atom: return m.name;
    case MoveKind::NegAtom: return "not " + m.name;
    case MoveKind::State: return "q" + std::to_string(m.a);
    case MoveKind::AndM: return "q" + std::to_string(m.a) + " and q" + std::to_string(m.b);
    case MoveKind::OrM: return "q" + std::to_string(m.a) + " or q" + std::to_string(m.b);
    case MoveKind::Dia: return "<" + m.name + "> q" + std::to_string(m.a);
    case MoveKind::Box: return "[" + m.name + "] q" + std::to_string(m.a);
    }
    return "?";
}

} // namespace

std::string Apta::dump() const {
    std::string out;
    for (size_t q = 0; q < moves.size(); ++q) {
        out += "q" + std::to_string(q);
        if (q == initial) out += "*";
        out += ": " + std::to_string(priority[q]) + " / " + move_str(moves[q]) + "\n";
    }
    return out;
}

// ----- transition formulas ----------------------------------------------------

namespace {
TF mk(TransFormula f) { return std::make_shared<const TransFormula>(std::move(f)); }
} // namespace

TF tf_true() { return mk({TransFormula::Kind::True, "", 0, {}}); }
TF tf_false() { return mk({TransFormula::Kind::False, "", 0, {}}); }
TF tf_atom(const std::string& a) { return mk({TransFormula::Kind::Atom, a, 0, {}}); }
TF tf_neg_atom(const std::string& a) { return mk({TransFormula::Kind::NegAtom, a, 0, {}}); }
TF tf_state(StateId q) { return mk({TransFormula::Kind::StateRef, "", q, {}}); }

TF tf_and(std::vector<TF> kids) {
    if (kids.empty()) return tf_true();
    if (kids.size() == 1) return kids[0];
    return mk({TransFormula::Kind::And, "", 0, std::move(kids)});
}

TF tf_or(std::vector<TF> kids) {
    if (kids.empty()) return tf_false();
    if (kids.size() == 1) return kids[0];
    return mk({TransFormula::Kind::Or, "", 0, std::move(kids)});
}

TF tf_dia(const std::string& role, TF f) {
    return mk({TransFormula::Kind::Dia, role, 0, {std::move(f)}});
}
TF tf_box(const std::string& role, TF f) {
    return mk({TransFormula::Kind::Box, role, 0, {std::move(f)}});
}

TF tf_of_concept(ConceptId c) {
    const ConceptNode& n = node(c);
    switch (n.ctor) {
    case Ctor::Top: return tf_true();
    case Ctor::Bot: return tf_false();
    case Ctor::Name: return tf_atom(n.name);
    case Ctor::Not:
        if (node(n.a).ctor != Ctor::Name)
            throw std::invalid_argument("concept is not in negation normal form");
        return tf_neg_atom(node(n.a).name);
    case Ctor::And: return tf_and({tf_of_concept(n.a), tf_of_concept(n.b)});
    case Ctor::Or: return tf_or({tf_of_concept(n.a), tf_of_concept(n.b)});
    case Ctor::Exists: return tf_dia(n.name, tf_of_concept(n.a));
    case Ctor::Forall: return tf_box(n.name, tf_of_concept(n.a));
    }
    throw std::invalid_argument("bad concept");
}

namespace {

// structural key for intermediate-state sharing
std::string tf_key(const TF& f) {
    using K = TransFormula::Kind;
    switch (f->kind) {
    case K::True: return "T";
    case K::False: return "F";
    case K::Atom: return "a(" + f->name + ")";
    case K::NegAtom: return "n(" + f->name + ")";
    case K::StateRef: return "q" + std::to_string(f->state);
    case K::And:
    case K::Or: {
        std::string s = f->kind == K::And ? "&(" : "|(";
        for (const auto& k : f->kids) s += tf_key(k) + ",";
        return s + ")";
    }
    case K::Dia: return "<" + f->name + ">(" + tf_key(f->kids[0]) + ")";
    case K::Box: return "[" + f->name + "](" + tf_key(f->kids[0]) + ")";
    }
    return "?";
}

class Compiler {
public:
    Compiler(Apta& a) : a_(a) {}

    // The root formula node becomes the owner's own move; compound children
    // become fresh intermediate states with the owner's priority.
    Move compile_move(const TF& f, unsigned prio) {
        using K = TransFormula::Kind;
        switch (f->kind) {
        case K::True: return {MoveKind::True, 0, 0, ""};
        case K::False: return {MoveKind::False, 0, 0, ""};
        case K::Atom: return {MoveKind::Atom, 0, 0, f->name};
        case K::NegAtom: return {MoveKind::NegAtom, 0, 0, f->name};
        case K::StateRef: return {MoveKind::State, f->state, 0, ""};
        case K::And:
        case K::Or: {
            // balanced split of the n-ary junction
            const auto& kids = f->kids;
            MoveKind mk = f->kind == K::And ? MoveKind::AndM : MoveKind::OrM;
            StateId left = state_for_group(f->kind, kids, 0, kids.size() / 2, prio);
            StateId right = state_for_group(f->kind, kids, kids.size() / 2, kids.size(), prio);
            return {mk, left, right, ""};
        }
        case K::Dia: return {MoveKind::Dia, state_for(f->kids[0], prio), 0, f->name};
        case K::Box: return {MoveKind::Box, state_for(f->kids[0], prio), 0, f->name};
        }
        return {MoveKind::True, 0, 0, ""};
    }

private:
    StateId state_for_group(TransFormula::Kind kind, const std::vector<TF>& kids,
                            size_t lo, size_t hi, unsigned prio) {
        if (hi - lo == 1) return state_for(kids[lo], prio);
        std::vector<TF> part(kids.begin() + lo, kids.begin() + hi);
        TF sub = mk({kind, "", 0, std::move(part)});
        return state_for(sub, prio);
    }

    StateId state_for(const TF& f, unsigned prio) {
        if (f->kind == TransFormula::Kind::StateRef) return f->state;
        std::string key = tf_key(f) + "@" + std::to_string(prio);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        StateId q = a_.add_state({MoveKind::True, 0, 0, ""}, prio);
        memo_[key] = q; // reserve before recursion (formulas are trees, but cheap)
        a_.moves[q] = compile_move(f, prio);
        return q;
    }

    Apta& a_;
    std::map<std::string, StateId> memo_;
};

} // namespace

Apta from_formulas(const std::vector<TF>& formula_per_state,
                   std::vector<std::string> node_alphabet,
                   std::vector<std::string> edge_alphabet, StateId initial,
                   std::vector<unsigned> priority) {
    if (formula_per_state.size() != priority.size())
        throw std::invalid_argument("one priority per state required");
    std::sort(node_alphabet.begin(), node_alphabet.end());
    std::sort(edge_alphabet.begin(), edge_alphabet.end());
    node_alphabet.erase(std::unique(node_alphabet.begin(), node_alphabet.end()),
                        node_alphabet.end());
    edge_alphabet.erase(std::unique(edge_alphabet.begin(), edge_alphabet.end()),
                        edge_alphabet.end());

    Apta a;
    a.node_alphabet = std::move(node_alphabet);
    a.edge_alphabet = std::move(edge_alphabet);
    a.initial = initial;
    a.moves.resize(formula_per_state.size());
    a.priority = std::move(priority);

    // validate declared alphabets
    std::function<void(const TF&)> check = [&](const TF& f) {
        using K = TransFormula::Kind;
        if (f->kind == K::Atom || f->kind == K::NegAtom) {
            if (!std::binary_search(a.node_alphabet.begin(), a.node_alphabet.end(), f->name))
                throw std::invalid_argument("undeclared node symbol " + f->name);
        }
        if (f->kind == K::Dia || f->kind == K::Box) {
            if (!std::binary_search(a.edge_alphabet.begin(), a.edge_alphabet.end(), f->name))
                throw std::invalid_argument("undeclared edge symbol " + f->name);
        }
        if (f->kind == K::StateRef && f->state >= formula_per_state.size())
            throw std::invalid_argument("undeclared state in formula");
        for (const auto& k : f->kids) check(k);
    };
    for (const auto& f : formula_per_state) check(f);

    Compiler comp(a);
    for (size_t q = 0; q < formula_per_state.size(); ++q)
        a.moves[q] = comp.compile_move(formula_per_state[q], a.priority[q]);
    return a;
}

StateId append_formula(Apta& a, const TF& f, unsigned priority) {
    Compiler comp(a);
    StateId q = a.add_state({MoveKind::True, 0, 0, ""}, priority);
    a.moves[q] = comp.compile_move(f, priority);
    return q;
}

// ----- boolean operations -------------------------------------------------------

Apta complement(const Apta& a) {
    Apta c = a;
    for (auto& m : c.moves) {
        switch (m.kind) {
        case MoveKind::True: m.kind = MoveKind::False; break;
        case MoveKind::False: m.kind = MoveKind::True; break;
        case MoveKind::Atom: m.kind = MoveKind::NegAtom; break;
        case MoveKind::NegAtom: m.kind = MoveKind::Atom; break;
        case MoveKind::AndM: m.kind = MoveKind::OrM; break;
        case MoveKind::OrM: m.kind = MoveKind::AndM; break;
        case MoveKind::Dia: m.kind = MoveKind::Box; break;
        case MoveKind::Box: m.kind = MoveKind::Dia; break;
        case MoveKind::State: break;
        }
    }
    for (auto& p : c.priority) p += 1;
    return c;
}

Apta intersect(const Apta& a, const Apta& b) {
    Apta out;
    out.node_alphabet = a.node_alphabet;
    out.node_alphabet.insert(out.node_alphabet.end(), b.node_alphabet.begin(),
                             b.node_alphabet.end());
    std::sort(out.node_alphabet.begin(), out.node_alphabet.end());
    out.node_alphabet.erase(
        std::unique(out.node_alphabet.begin(), out.node_alphabet.end()),
        out.node_alphabet.end());
    out.edge_alphabet = a.edge_alphabet;
    out.edge_alphabet.insert(out.edge_alphabet.end(), b.edge_alphabet.begin(),
                             b.edge_alphabet.end());
    std::sort(out.edge_alphabet.begin(), out.edge_alphabet.end());
    out.edge_alphabet.erase(
        std::unique(out.edge_alphabet.begin(), out.edge_alphabet.end()),
        out.edge_alphabet.end());

    StateId off = static_cast<StateId>(a.num_states());
    out.moves = a.moves;
    out.priority = a.priority;
    for (Move m : b.moves) {
        if (m.kind == MoveKind::State || m.kind == MoveKind::AndM || m.kind == MoveKind::OrM ||
            m.kind == MoveKind::Dia || m.kind == MoveKind::Box)
            m.a += off;
        if (m.kind == MoveKind::AndM || m.kind == MoveKind::OrM) m.b += off;
        out.moves.push_back(std::move(m));
    }
    out.priority.insert(out.priority.end(), b.priority.begin(), b.priority.end());
    out.initial = out.add_state({MoveKind::AndM, a.initial, b.initial + off, ""}, 0);
    return out;
}

// ----- parity game solver ----------------------------------------------------------

namespace {

// Attractor of target for player pv within the sub region.  Opponent nodes
// with no remaining successors count as attracted (their owner is stuck).
// For pv-owned nodes attracted through an edge, the edge is recorded into
// strategy, which keeps attractor plays strictly progressing toward the
// target.
std::vector<int> attractor(const ParityGame& g, const std::vector<std::vector<int>>& pred,
                           const std::vector<bool>& in_sub, bool pv,
                           std::vector<char>& in_attr, const std::vector<int>& target,
                           std::vector<int>& strategy) {
    std::vector<int> cnt(g.owner_v.size(), 0);
    for (size_t v = 0; v < g.owner_v.size(); ++v) {
        if (!in_sub[v]) continue;
        for (int w : g.succ[v])
            if (in_sub[w]) cnt[v]++;
    }
    std::vector<int> queue = target, out = target;
    for (int v : target) in_attr[v] = 1;
    // vacuously attracted opponent dead-ends
    for (size_t v = 0; v < g.owner_v.size(); ++v)
        if (in_sub[v] && !in_attr[v] && g.owner_v[v] != pv && cnt[v] == 0) {
            in_attr[v] = 1;
            queue.push_back(static_cast<int>(v));
            out.push_back(static_cast<int>(v));
        }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int v : pred[u]) {
            if (!in_sub[v] || in_attr[v]) continue;
            if (g.owner_v[v] == pv) {
                in_attr[v] = 1;
                strategy[v] = u;
                queue.push_back(v);
                out.push_back(v);
            } else {
                if (--cnt[v] == 0) {
                    in_attr[v] = 1;
                    queue.push_back(v);
                    out.push_back(v);
                }
            }
        }
    }
    return out;
}

struct Solver {
    const ParityGame& g;
    std::vector<std::vector<int>> pred;
    std::vector<bool>* winner_v;
    std::vector<int>* strategy;

    void solve(std::vector<bool> in_sub, size_t n_sub) {
        if (n_sub == 0) return;
        unsigned p = 0;
        for (size_t v = 0; v < in_sub.size(); ++v)
            if (in_sub[v]) p = std::max(p, g.priority[v]);
        bool pv = (p % 2 == 0); // Verifier wins even max-priority
        std::vector<int> z;
        for (size_t v = 0; v < in_sub.size(); ++v)
            if (in_sub[v] && g.priority[v] == p) z.push_back(static_cast<int>(v));

        std::vector<bool> save_win = *winner_v;
        std::vector<int> save_strat = *strategy;

        std::vector<char> in_a(in_sub.size(), 0);
        std::vector<int> a = attractor(g, pred, in_sub, pv, in_a, z, *strategy);

        std::vector<bool> sub2 = in_sub;
        size_t n2 = n_sub;
        for (int v : a) { sub2[v] = false; --n2; }

        solve(sub2, n2);

        bool opp_nonempty = false;
        for (size_t v = 0; v < in_sub.size(); ++v)
            if (sub2[v] && (*winner_v)[v] != pv) { opp_nonempty = true; break; }

        if (!opp_nonempty) {
            for (size_t v = 0; v < in_sub.size(); ++v)
                if (in_sub[v]) (*winner_v)[v] = pv;
            // attractor edges were recorded; priority-p nodes owned by pv
            // may move anywhere inside the region
            for (int v : z) {
                if (g.owner_v[v] == pv && (*strategy)[v] == -1) {
                    for (int w : g.succ[v])
                        if (in_sub[w]) { (*strategy)[v] = w; break; }
                }
            }
            return;
        }

        // the opponent wins part of the subgame: its region extends by
        // attraction, the rest is re-solved from scratch
        std::vector<char> keep(in_sub.size(), 0);
        std::vector<int> w_opp;
        for (size_t v = 0; v < in_sub.size(); ++v)
            if (sub2[v] && (*winner_v)[v] != pv) {
                w_opp.push_back(static_cast<int>(v));
                keep[v] = 1;
            }
        for (size_t v = 0; v < in_sub.size(); ++v) {
            if (!in_sub[v] || keep[v]) continue;
            (*winner_v)[v] = save_win[v];
            (*strategy)[v] = save_strat[v];
        }

        std::vector<char> in_b(in_sub.size(), 0);
        std::vector<int> b = attractor(g, pred, in_sub, !pv, in_b, w_opp, *strategy);
        for (int v : b) (*winner_v)[v] = !pv;

        std::vector<bool> sub3 = in_sub;
        size_t n3 = n_sub;
        for (int v : b) { sub3[v] = false; --n3; }
        solve(sub3, n3);
    }
};

} // namespace

void ParityGame::solve(std::vector<bool>& winner_out, std::vector<int>& strategy_out) const {
    size_t n = owner_v.size();
    for (size_t v = 0; v < n; ++v)
        if (succ[v].empty())
            throw std::logic_error("parity game has a dead end; wire sinks first");
    std::vector<std::vector<int>> pred(n);
    for (size_t v = 0; v < n; ++v)
        for (int w : succ[v]) pred[w].push_back(static_cast<int>(v));
    winner_out.assign(n, false);
    strategy_out.assign(n, -1);
    Solver s{*this, std::move(pred), &winner_out, &strategy_out};
    s.solve(std::vector<bool>(n, true), n);
}

// ----- membership -------------------------------------------------------------------

bool accepts(const Apta& a, const PointedInterpretation& p) {
    p.check();
    size_t nd = p.interp.domain.size();
    size_t nq = a.num_states();
    ParityGame g;
    // positions: q*nd + d, then two sinks
    for (size_t q = 0; q < nq; ++q)
        for (size_t d = 0; d < nd; ++d) {
            bool v_owner = a.moves[q].kind == MoveKind::OrM || a.moves[q].kind == MoveKind::Dia;
            g.add_node(v_owner, a.priority[q]);
        }
    int sink_v = g.add_node(false, 0); // Verifier wins here
    int sink_r = g.add_node(true, 1);  // Refuter wins here
    g.add_edge(sink_v, sink_v);
    g.add_edge(sink_r, sink_r);

    auto pos = [&](size_t q, size_t d) { return static_cast<int>(q * nd + d); };
    for (size_t q = 0; q < nq; ++q) {
        const Move& m = a.moves[q];
        for (size_t d = 0; d < nd; ++d) {
            int v = pos(q, d);
            switch (m.kind) {
            case MoveKind::True: g.add_edge(v, sink_v); break;
            case MoveKind::False: g.add_edge(v, sink_r); break;
            case MoveKind::Atom:
                g.add_edge(v, p.interp.has_label(static_cast<int>(d), m.name) ? sink_v : sink_r);
                break;
            case MoveKind::NegAtom:
                g.add_edge(v, p.interp.has_label(static_cast<int>(d), m.name) ? sink_r : sink_v);
                break;
            case MoveKind::State: g.add_edge(v, pos(m.a, d)); break;
            case MoveKind::AndM:
            case MoveKind::OrM:
                g.add_edge(v, pos(m.a, d));
                g.add_edge(v, pos(m.b, d));
                break;
            case MoveKind::Dia:
            case MoveKind::Box: {
                std::vector<int> succ = p.interp.successors(static_cast<int>(d), m.name);
                if (succ.empty()) {
                    g.add_edge(v, m.kind == MoveKind::Dia ? sink_r : sink_v);
                } else {
                    for (int t : succ) g.add_edge(v, pos(m.a, static_cast<size_t>(t)));
                }
                break;
            }
            }
        }
    }

    std::vector<bool> winner;
    std::vector<int> strategy;
    g.solve(winner, strategy);
    return winner[pos(a.initial, static_cast<size_t>(p.point_index()))];
}

} // namespace alcf
