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

#ifndef ALCF_APTA_HPP
#define ALCF_APTA_HPP

#include "alcf/interp.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace alcf {

// Amorphous alternating parity tree automata: they run on arbitrary pointed
// interpretations, with tree-shaped runs.  Acceptance is max-parity over
// run paths.

using StateId = uint32_t;

enum class MoveKind : uint8_t { True, False, Atom, NegAtom, State, AndM, OrM, Dia, Box };

struct Move {
    MoveKind kind = MoveKind::True;
    StateId a = 0, b = 0;   // state arguments
    std::string name;       // atom (Atom/NegAtom) or role (Dia/Box)
};

struct Apta {
    std::vector<std::string> node_alphabet;  // sorted
    std::vector<std::string> edge_alphabet;  // sorted
    StateId initial = 0;
    std::vector<Move> moves;                 // delta, indexed by state
    std::vector<unsigned> priority;

    size_t num_states() const { return moves.size(); }
    StateId add_state(Move m, unsigned prio) {
        moves.push_back(std::move(m));
        priority.push_back(prio);
        return static_cast<StateId>(moves.size() - 1);
    }

    // One line per state `q<i>: <priority> / <move>`, deterministic.
    std::string dump() const;
};

// ----- transition formulas ----------------------------------------------------

// Modal formulas in negation normal form used to specify transition
// functions; from_formulas compiles compound structure into fresh
// intermediate states.
struct TransFormula;
using TF = std::shared_ptr<const TransFormula>;

struct TransFormula {
    enum class Kind { True, False, Atom, NegAtom, StateRef, And, Or, Dia, Box };
    Kind kind;
    std::string name;        // atom or role
    StateId state = 0;       // StateRef
    std::vector<TF> kids;    // And/Or (n-ary), Dia/Box (one)
};

TF tf_true();
TF tf_false();
TF tf_atom(const std::string& a);
TF tf_neg_atom(const std::string& a);
TF tf_state(StateId q);
TF tf_and(std::vector<TF> kids);   // empty = true
TF tf_or(std::vector<TF> kids);    // empty = false
TF tf_dia(const std::string& role, TF f);
TF tf_box(const std::string& role, TF f);
// An NNF concept as a transition formula (top/bot/name/not name/and/or/
// exists/forall); throws on non-NNF input.
TF tf_of_concept(ConceptId c);

// Compile per-state formulas into an automaton with atomic moves.  Compound
// formula nodes become fresh intermediate states inheriting the owner's
// priority; n-ary and/or compiles as a balanced tree, structurally equal
// subformulas share one intermediate state per owner priority.
Apta from_formulas(const std::vector<TF>& formula_per_state,
                   std::vector<std::string> node_alphabet,
                   std::vector<std::string> edge_alphabet, StateId initial,
                   std::vector<unsigned> priority);

// Append one compiled formula to an existing automaton and return its
// state.  StateRefs refer to existing states; no alphabet check.
StateId append_formula(Apta& a, const TF& f, unsigned priority);

// ----- boolean operations -------------------------------------------------------

// Dualize moves, priorities + 1.  L(result) = complement of L(a).
Apta complement(const Apta& a);

// Fresh initial state whose move conjoins both initials.  Alphabets are
// united.  L = intersection.
Apta intersect(const Apta& a, const Apta& b);

// ----- membership ----------------------------------------------------------------

// Decided exactly as a max-parity game on states x domain (Verifier
// resolves Or/Dia, Refuter And/Box), solved with the recursive attractor
// algorithm.
bool accepts(const Apta& a, const PointedInterpretation& p);

// ----- emptiness (co-Buchi fragment) ----------------------------------------------

// Priorities are first compressed to their order type (parity preserved);
// ranges beyond {0,1} raise UnsupportedPriorities.  Dealternation is by the
// breakpoint (subset + obligation set) construction; the resulting Buchi
// game is solved by nested fixpoint, and a non-empty verdict ships a finite
// witness that accepts() confirms.
std::optional<PointedInterpretation> is_empty(const Apta& a);

// ----- parity games (shared solver) ------------------------------------------------

struct ParityGame {
    // owner true = Verifier (Even); max-parity winning condition
    std::vector<bool> owner_v;
    std::vector<unsigned> priority;
    std::vector<std::vector<int>> succ;

    int add_node(bool v, unsigned prio) {
        owner_v.push_back(v);
        priority.push_back(prio);
        succ.emplace_back();
        return static_cast<int>(owner_v.size()) - 1;
    }
    void add_edge(int from, int to) { succ[from].push_back(to); }

    // Every node must have a successor (wire dead ends to sinks first).
    // Returns winner per node (true = Verifier) and a positional strategy
    // (chosen successor for nodes owned by their winner; -1 elsewhere).
    void solve(std::vector<bool>& winner_v, std::vector<int>& strategy) const;
};

} // namespace alcf

#endif // ALCF_APTA_HPP
