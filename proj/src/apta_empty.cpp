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

// Emptiness for the co-Buchi fragment.
//
// The automaton is dealternated on the fly into macro states: the set of
// states active at a node of the candidate input, each carrying a promotion
// flag (the run commits to seeing only priority-0 segments on this thread
// from now on) and a watch flag (breakpoint bookkeeping for the threads
// that have not promoted yet).  Verifier picks a node label and resolves
// or-moves; each diamond obligation opens one child, boxes close over all
// children of the same role.  Refuter walks into a child.  A play is won by
// Verifier iff breakpoints (watch set empty) recur, which by the usual
// breakpoint argument holds iff every thread either dies or promotes and
// stays clean - that is, iff the guessed input admits an accepting run.
// The resulting Buchi game is one greatest-then-least fixpoint, solved here
// with the shared attractor-based parity solver, and Verifier's positional
// strategy is read back as a finite witness interpretation.
//
// For automata whose priority-1 states are closed under reachability (every
// automaton the builders produce: safety parts plus one complemented safety
// part), promotion is decided by a fixed rule - promote exactly the
// priority-0 threads - which is optimal there and keeps the game small.
// Otherwise promotion is enumerated.

#include "alcf/apta.hpp"
#include "alcf/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

namespace alcf {

namespace {

std::vector<StateId> move_targets(const Move& m) {
    switch (m.kind) {
    case MoveKind::State:
    case MoveKind::Dia:
    case MoveKind::Box: return {m.a};
    case MoveKind::AndM:
    case MoveKind::OrM: return {m.a, m.b};
    default: return {};
    }
}

std::vector<StateId> eps_targets(const Move& m) {
    switch (m.kind) {
    case MoveKind::State: return {m.a};
    case MoveKind::AndM:
    case MoveKind::OrM: return {m.a, m.b};
    default: return {};
    }
}

// parity-preserving order-type compression
std::vector<unsigned> compress_priorities(const Apta& a, std::vector<unsigned>& distinct) {
    distinct.assign(a.priority.begin(), a.priority.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::map<unsigned, unsigned> to;
    unsigned cur = 0;
    for (size_t i = 0; i < distinct.size(); ++i) {
        if (i == 0) cur = distinct[0] % 2;
        else if (distinct[i] % 2 != distinct[i - 1] % 2) cur += 1;
        to[distinct[i]] = cur;
    }
    std::vector<unsigned> out(a.priority.size());
    for (size_t q = 0; q < a.priority.size(); ++q) out[q] = to[a.priority[q]];
    return out;
}

struct Obligation {
    std::string role;
    StateId q;
    unsigned bit;                 // max priority on the segment into q
    // flags of the spawning thread; only these matter downstream, so two
    // parents with equal flags share one obligation
    bool p_promoted = false;
    bool p_watched = false;
    bool operator<(const Obligation& o) const {
        return std::tie(role, q, bit, p_promoted, p_watched) <
               std::tie(o.role, o.q, o.bit, o.p_promoted, o.p_watched);
    }
    bool operator==(const Obligation& o) const {
        return role == o.role && q == o.q && bit == o.bit && p_promoted == o.p_promoted &&
               p_watched == o.p_watched;
    }
};

// One way to satisfy a state's move at a node under a fixed label: the
// modal obligations left over (or-choices resolved, atoms checked).
struct Opt {
    std::vector<Obligation> dias, boxes;
    bool operator<(const Opt& o) const {
        return std::tie(dias, boxes) < std::tie(o.dias, o.boxes);
    }
    bool operator==(const Opt& o) const { return dias == o.dias && boxes == o.boxes; }
};

bool subset_sorted(const std::vector<Obligation>& a, const std::vector<Obligation>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// drop options whose obligations include another option's
void prune_dominated(std::vector<Opt>& opts) {
    std::sort(opts.begin(), opts.end());
    opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
    if (opts.size() < 2) return;
    std::vector<Opt> kept;
    for (size_t i = 0; i < opts.size(); ++i) {
        bool dom = false;
        for (size_t j = 0; j < opts.size() && !dom; ++j) {
            if (i == j) continue;
            if (opts[j] == opts[i]) continue;
            if (subset_sorted(opts[j].dias, opts[i].dias) &&
                subset_sorted(opts[j].boxes, opts[i].boxes))
                dom = true;
        }
        if (!dom) kept.push_back(opts[i]);
    }
    opts = std::move(kept);
}

struct Thread {
    StateId q;
    bool promoted;
    bool watched;
    bool operator<(const Thread& o) const {
        return std::tie(q, promoted, watched) < std::tie(o.q, o.promoted, o.watched);
    }
    bool operator==(const Thread& o) const {
        return q == o.q && promoted == o.promoted && watched == o.watched;
    }
};

using Macro = std::vector<Thread>; // sorted, deduped

struct BundleInfo {
    std::map<std::string, bool> label;
    std::vector<std::pair<std::string, Macro>> children; // role, child macro
};

constexpr size_t kMaxOptions = 20000;
constexpr size_t kMaxCombos = 250000;
constexpr size_t kMaxBundles = 50000;
constexpr size_t kMaxMacros = 400000;

class EmptinessSolver {
public:
    explicit EmptinessSolver(const Apta& a) : a_(a) {
        std::vector<unsigned> distinct;
        prio_ = compress_priorities(a, distinct);
        unsigned hi = 0;
        for (unsigned p : prio_) hi = std::max(hi, p);
        if (hi > 1) throw UnsupportedPriorities(distinct);
        check_eps_acyclic();
        one_closed_ = check_one_closed();
        compute_tested_atoms();
        compute_reach_one();
    }

    std::optional<PointedInterpretation> run() {
        std::vector<Macro> inits;
        for (bool prom : promotion_options(a_.initial))
            inits.push_back(Macro{Thread{a_.initial, prom, !prom}});

        ParityGame g;
        int sink_v = g.add_node(false, 0);
        int sink_r = g.add_node(true, 1);
        g.add_edge(sink_v, sink_v);
        g.add_edge(sink_r, sink_r);
        int root = g.add_node(true, 0);

        std::map<Macro, int> macro_node;
        std::vector<Macro> queue;
        auto macro_id = [&](const Macro& m) {
            auto it = macro_node.find(m);
            if (it != macro_node.end()) return it->second;
            bool f = true;
            for (const Thread& t : m)
                if (t.watched) f = false;
            int id = g.add_node(true, f ? 2u : 1u);
            macro_node[m] = id;
            queue.push_back(m);
            if (macro_node.size() > kMaxMacros)
                throw std::runtime_error("emptiness: macro state space too large");
            return id;
        };

        for (const Macro& m : inits) g.add_edge(root, macro_id(m));

        std::map<int, std::vector<BundleInfo>> bundles_at;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Macro m = queue[qi];
            int mid = macro_node[m];
            bool at_breakpoint = g.priority[mid] == 2;
            std::vector<BundleInfo> bundles = expand(m, at_breakpoint);
            if (bundles.empty()) {
                g.add_edge(mid, sink_r); // Verifier stuck
                continue;
            }
            for (BundleInfo& b : bundles) {
                int bn = g.add_node(false, 0);
                g.add_edge(mid, bn);
                if (b.children.empty()) {
                    g.add_edge(bn, sink_v); // Refuter stuck: all obligations settled
                } else {
                    for (const auto& [role, child] : b.children) g.add_edge(bn, macro_id(child));
                }
                bundles_at[mid].push_back(std::move(b));
            }
        }

        std::vector<bool> winner;
        std::vector<int> strategy;
        g.solve(winner, strategy);
        if (!winner[root]) return std::nullopt;

        // read the witness off Verifier's strategy
        PointedInterpretation w;
        std::map<int, int> elem_of; // macro node -> element index
        std::vector<int> bfs;
        int first = strategy[root];
        w.interp.add_element("w0");
        elem_of[first] = 0;
        bfs.push_back(first);
        for (size_t i = 0; i < bfs.size(); ++i) {
            int mid = bfs[i];
            int bn = strategy[mid];
            if (bn < 0) throw std::logic_error("winning macro without strategy");
            const auto& bs = bundles_at[mid];
            int which = -1;
            for (size_t k = 0; k < g.succ[mid].size(); ++k)
                if (g.succ[mid][k] == bn) which = static_cast<int>(k);
            if (which < 0 || which >= static_cast<int>(bs.size()))
                throw std::logic_error("strategy edge is not a bundle");
            const BundleInfo& b = bs[which];
            std::string self = w.interp.domain[elem_of[mid]];
            for (const auto& [atom, val] : b.label)
                if (val) w.interp.set_label(self, atom);
            for (const auto& [role, child] : b.children) {
                int cid = macro_node.at(child);
                auto it = elem_of.find(cid);
                if (it == elem_of.end()) {
                    std::string id = "w" + std::to_string(elem_of.size());
                    int idx = w.interp.add_element(id);
                    elem_of[cid] = idx;
                    bfs.push_back(cid);
                }
                w.interp.add_edge(role, self, w.interp.domain[elem_of[cid]]);
            }
        }
        w.point = "w0";
        w.check();
        if (!accepts(a_, w))
            throw std::logic_error("emptiness produced a witness rejected by accepts()");
        return w;
    }

private:
    void check_eps_acyclic() {
        size_t n = a_.num_states();
        std::vector<int> color(n, 0);
        std::function<void(StateId)> dfs = [&](StateId q) {
            color[q] = 1;
            for (StateId t : eps_targets(a_.moves[q])) {
                if (color[t] == 1)
                    throw std::logic_error("emptiness requires acyclic epsilon structure");
                if (color[t] == 0) dfs(t);
            }
            color[q] = 2;
        };
        for (StateId q = 0; q < n; ++q)
            if (color[q] == 0) dfs(q);
    }

    bool check_one_closed() {
        // no priority-0 state reachable from a priority-1 state
        size_t n = a_.num_states();
        std::vector<char> seen(n, 0);
        std::vector<StateId> stack;
        for (StateId q = 0; q < n; ++q)
            if (prio_[q] == 1 && !seen[q]) { stack.push_back(q); seen[q] = 1; }
        while (!stack.empty()) {
            StateId q = stack.back();
            stack.pop_back();
            if (prio_[q] == 0) return false;
            for (StateId t : move_targets(a_.moves[q]))
                if (!seen[t]) { seen[t] = 1; stack.push_back(t); }
        }
        return true;
    }

    void compute_tested_atoms() {
        size_t n = a_.num_states();
        tested_.resize(n);
        std::vector<char> done(n, 0);
        std::function<void(StateId)> dfs = [&](StateId q) {
            if (done[q]) return;
            done[q] = 1;
            const Move& m = a_.moves[q];
            if (m.kind == MoveKind::Atom || m.kind == MoveKind::NegAtom)
                tested_[q].insert(m.name);
            for (StateId t : eps_targets(m)) {
                dfs(t);
                tested_[q].insert(tested_[t].begin(), tested_[t].end());
            }
        };
        for (StateId q = 0; q < n; ++q) dfs(q);
    }

    void compute_reach_one() {
        // states from which a priority-1 state is reachable; threads on the
        // complement can promote for free
        size_t n = a_.num_states();
        reach_one_.assign(n, false);
        bool changed = true;
        while (changed) {
            changed = false;
            for (StateId q = 0; q < n; ++q) {
                if (reach_one_[q]) continue;
                bool r = prio_[q] == 1;
                for (StateId t : move_targets(a_.moves[q]))
                    if (reach_one_[t]) r = true;
                if (r) { reach_one_[q] = true; changed = true; }
            }
        }
    }

    // promotion commits a thread to clean segments forever.  Threads that
    // cannot see priority 1 again promote for free; in a 1-closed automaton
    // a priority-1 thread can never benefit; anything else is a real choice.
    std::vector<bool> promotion_options(StateId q) {
        if (!reach_one_[q]) return {true};
        if (one_closed_ && prio_[q] == 1) return {false};
        return {true, false};
    }

    // ----- per-label option computation ------------------------------------

    using Label = std::map<std::string, bool>;

    std::map<Label, int> label_ids_;
    std::map<std::tuple<StateId, unsigned, int>, std::vector<Opt>> opt_memo_;
    int cur_label_id_ = -1;
    const Label* cur_label_ = nullptr;

    std::vector<Opt> opts_of_move(const Move& m, unsigned pp) {
        switch (m.kind) {
        case MoveKind::True: return {Opt{}};
        case MoveKind::False: return {};
        case MoveKind::Atom: {
            auto it = cur_label_->find(m.name);
            bool v = it != cur_label_->end() && it->second;
            return v ? std::vector<Opt>{Opt{}} : std::vector<Opt>{};
        }
        case MoveKind::NegAtom: {
            auto it = cur_label_->find(m.name);
            bool v = it != cur_label_->end() && it->second;
            return v ? std::vector<Opt>{} : std::vector<Opt>{Opt{}};
        }
        case MoveKind::State: return opts_of_state(m.a, pp);
        case MoveKind::OrM: {
            std::vector<Opt> out = opts_of_state(m.a, pp);
            std::vector<Opt> r = opts_of_state(m.b, pp);
            out.insert(out.end(), r.begin(), r.end());
            prune_dominated(out);
            return out;
        }
        case MoveKind::AndM: {
            std::vector<Opt> l = opts_of_state(m.a, pp);
            if (l.empty()) return {};
            std::vector<Opt> r = opts_of_state(m.b, pp);
            if (r.empty()) return {};
            std::vector<Opt> out;
            for (const Opt& x : l)
                for (const Opt& y : r) {
                    Opt z = x;
                    z.dias.insert(z.dias.end(), y.dias.begin(), y.dias.end());
                    z.boxes.insert(z.boxes.end(), y.boxes.begin(), y.boxes.end());
                    std::sort(z.dias.begin(), z.dias.end());
                    std::sort(z.boxes.begin(), z.boxes.end());
                    out.push_back(std::move(z));
                    if (out.size() > kMaxOptions)
                        throw std::runtime_error("emptiness: option blowup in and-move");
                }
            prune_dominated(out);
            return out;
        }
        case MoveKind::Dia: {
            Opt o;
            o.dias.push_back({m.name, m.a, std::max(pp, prio_[m.a]), false, false});
            return {o};
        }
        case MoveKind::Box: {
            Opt o;
            o.boxes.push_back({m.name, m.a, std::max(pp, prio_[m.a]), false, false});
            return {o};
        }
        }
        return {};
    }

    std::vector<Opt> opts_of_state(StateId q, unsigned pp) {
        unsigned pq = std::max(pp, prio_[q]);
        auto key = std::make_tuple(q, pq, cur_label_id_);
        auto it = opt_memo_.find(key);
        if (it != opt_memo_.end()) return it->second;
        std::vector<Opt> out = opts_of_move(a_.moves[q], pq);
        opt_memo_[key] = out;
        return out;
    }

    // ----- macro expansion ---------------------------------------------------

    std::vector<BundleInfo> expand(const Macro& m, bool at_breakpoint) {
        std::set<std::string> atoms;
        for (const Thread& t : m) atoms.insert(tested_[t.q].begin(), tested_[t.q].end());
        std::vector<std::string> av(atoms.begin(), atoms.end());
        if (av.size() > 20)
            throw std::runtime_error("emptiness: too many atoms tested at one node");

        std::vector<BundleInfo> bundles;
        std::set<std::vector<std::pair<std::string, Macro>>> seen_children;

        for (uint64_t mask = 0; mask < (uint64_t{1} << av.size()); ++mask) {
            Label label;
            for (size_t i = 0; i < av.size(); ++i)
                label[av[i]] = ((mask >> i) & 1) != 0;
            auto lit = label_ids_.find(label);
            if (lit == label_ids_.end())
                lit = label_ids_.emplace(label, static_cast<int>(label_ids_.size())).first;
            cur_label_ = &label;
            cur_label_id_ = lit->second;

            // options per thread; a thread with an obligation-free option
            // takes it (dropping obligations never hurts Verifier)
            std::vector<std::vector<Opt>> per_thread;
            bool dead = false;
            for (const Thread& t : m) {
                // the thread's landing priority was charged on arrival
                std::vector<Opt> o = opts_of_move(a_.moves[t.q], 0);
                if (o.empty()) { dead = true; break; }
                bool has_empty = false;
                for (const Opt& x : o)
                    if (x.dias.empty() && x.boxes.empty()) { has_empty = true; break; }
                if (has_empty) o = {Opt{}};
                // stamp the spawning thread's flags; equal options merge
                for (Opt& x : o) {
                    for (Obligation& d : x.dias) { d.p_promoted = t.promoted; d.p_watched = t.watched; }
                    for (Obligation& b : x.boxes) { b.p_promoted = t.promoted; b.p_watched = t.watched; }
                }
                prune_dominated(o);
                per_thread.push_back(std::move(o));
            }
            if (dead) continue;

            // accumulate thread by thread; dominated partial accumulations
            // can never yield a needed bundle and are dropped
            std::vector<Opt> frontier{Opt{}};
            for (const auto& opts : per_thread) {
                std::vector<Opt> next;
                for (const Opt& acc : frontier)
                    for (const Opt& o : opts) {
                        Opt z = acc;
                        z.dias.insert(z.dias.end(), o.dias.begin(), o.dias.end());
                        z.boxes.insert(z.boxes.end(), o.boxes.begin(), o.boxes.end());
                        std::sort(z.dias.begin(), z.dias.end());
                        std::sort(z.boxes.begin(), z.boxes.end());
                        next.push_back(std::move(z));
                    }
                prune_dominated(next);
                if (next.size() > kMaxCombos)
                    throw std::runtime_error("emptiness: resolution combination blowup");
                frontier = std::move(next);
            }
            for (const Opt& acc : frontier) {
                build_bundles(at_breakpoint, label, acc.dias, acc.boxes, bundles,
                              seen_children);
                if (bundles.size() > kMaxBundles)
                    throw std::runtime_error("emptiness: bundle blowup");
            }
        }
        cur_label_ = nullptr;
        cur_label_id_ = -1;
        return bundles;
    }

    void build_bundles(bool at_breakpoint, const Label& label,
                       const std::vector<Obligation>& dias, const std::vector<Obligation>& boxes,
                       std::vector<BundleInfo>& out,
                       std::set<std::vector<std::pair<std::string, Macro>>>& seen_children) {
        struct RawChild {
            std::string role;
            std::vector<Obligation> members;
        };
        std::vector<RawChild> raw;
        for (const Obligation& d : dias) {
            RawChild c{d.role, {d}};
            for (const Obligation& b : boxes)
                if (b.role == d.role) c.members.push_back(b);
            raw.push_back(std::move(c));
        }

        // promise safety: a promoted thread may not take a dirty segment
        for (const RawChild& c : raw)
            for (const Obligation& o : c.members)
                if (o.p_promoted && o.bit == 1) return;

        // real promotion choices: unpromoted children whose policy is open
        struct Slot { size_t child, member; };
        std::vector<Slot> free_slots;
        for (size_t ci = 0; ci < raw.size(); ++ci)
            for (size_t mi = 0; mi < raw[ci].members.size(); ++mi) {
                const Obligation& o = raw[ci].members[mi];
                if (o.p_promoted) continue;
                if (promotion_options(o.q).size() == 2) free_slots.push_back({ci, mi});
            }
        if (free_slots.size() > 16)
            throw std::runtime_error("emptiness: promotion choice blowup");

        for (uint64_t pm = 0; pm < (uint64_t{1} << free_slots.size()); ++pm) {
            std::vector<std::pair<std::string, Macro>> children;
            for (size_t ci = 0; ci < raw.size(); ++ci) {
                Macro child;
                for (size_t mi = 0; mi < raw[ci].members.size(); ++mi) {
                    const Obligation& o = raw[ci].members[mi];
                    bool promoted;
                    if (o.p_promoted) {
                        promoted = true;
                    } else {
                        size_t slot = 0;
                        for (; slot < free_slots.size(); ++slot)
                            if (free_slots[slot].child == ci && free_slots[slot].member == mi)
                                break;
                        if (slot < free_slots.size()) promoted = ((pm >> slot) & 1) != 0;
                        else promoted = promotion_options(o.q)[0];
                    }
                    bool watched = !promoted && (at_breakpoint || o.p_watched);
                    child.push_back({o.q, promoted, watched});
                }
                std::sort(child.begin(), child.end());
                child.erase(std::unique(child.begin(), child.end()), child.end());
                children.push_back({raw[ci].role, std::move(child)});
            }
            std::sort(children.begin(), children.end());
            if (!seen_children.insert(children).second) continue;
            BundleInfo b;
            b.label = label;
            b.children = std::move(children);
            out.push_back(std::move(b));
        }
    }

    const Apta& a_;
    std::vector<unsigned> prio_;
    bool one_closed_ = false;
    std::vector<std::set<std::string>> tested_;
    std::vector<bool> reach_one_;
};

} // namespace

std::optional<PointedInterpretation> is_empty(const Apta& a) {
    EmptinessSolver s(a);
    return s.run();
}

} // namespace alcf
