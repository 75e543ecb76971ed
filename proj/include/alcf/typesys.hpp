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

#ifndef ALCF_TYPESYS_HPP
#define ALCF_TYPESYS_HPP

#include "alcf/bitset.hpp"
#include "alcf/concepts.hpp"
#include "alcf/interp.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace alcf {

// Indexed closure: members in a fixed deterministic order, with the
// complement pairing and the structural decomposition needed for the
// propositional coherence rules.
struct ClosureTable {
    std::vector<ConceptId> members;
    std::map<ConceptId, int> pos;           // member -> index
    std::vector<int> complement;            // index of the single negation

    int index_of(ConceptId c) const {
        auto it = pos.find(c);
        return it == pos.end() ? -1 : it->second;
    }
};

// An existential obligation of a type: a successor along `role` whose type
// must (want) or must not (!want) contain the member at `target`.
// exists r. C yields (r, C, true); not forall r. D yields (r, D, false).
struct Demand {
    std::string role;
    int target;
    bool want;
};

// The set of types realized in models of T, over closure(T, extra).
struct TypeSet {
    ClosureTable cl;
    std::vector<Bits> types;
    std::vector<std::vector<Demand>> demands;            // per type
    std::set<std::string> roles;                         // roles mentioned in cl

    // t leads_r t': every box constraint of t along r holds in t' and no
    // concept forbidden by an absent exists of t is present.
    bool leads_to(int t, const std::string& role, int t2) const;
    std::vector<int> succ(int t, const std::string& role) const;

    bool member(int t, ConceptId c) const {  // c in type t (c must be in cl)
        int p = cl.index_of(c);
        return p >= 0 && types[t].test(p);
    }

    // Masks for leads_to, built per role on demand at construction time.
    struct Arrow { Bits required, forbidden; };
    std::map<std::string, std::vector<Arrow>> arrows;    // role -> per type
};

// Standard type elimination over closure(t, extra + nnf forms + C_T).
// Result holds exactly the types realized in models of t; empty when t has
// no model at all.
TypeSet compute_types(const TBox& t, const std::vector<ConceptId>& extra);

// Concept satisfiability w.r.t. a TBox, via type elimination.
bool satisfiable(ConceptId c, const TBox& t);

// T |= lhs sub rhs  iff  lhs and not rhs is unsatisfiable w.r.t. T.
bool entails(const TBox& t, const Inclusion& inc);
bool entails(const TBox& t, const TBox& consequences); // every inclusion

// Witness extraction: one element per surviving type, one edge per demand
// (lowest compatible witness in type order).  The output is a model of the
// originating TBox and the point realizes types[t0].
PointedInterpretation model_from_type(const TypeSet& ts, int t0);

// Render one type per line as a sorted concept list (CLI `types`).
std::string render_types(const TypeSet& ts);

} // namespace alcf

#endif // ALCF_TYPESYS_HPP
