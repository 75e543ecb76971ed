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

#ifndef ALCF_COMPUTE_HPP
#define ALCF_COMPUTE_HPP

#include "alcf/concepts.hpp"
#include "alcf/typesys.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace alcf {

struct ComputeLimits {
    uint64_t max_family = 1000000;  // depth-m type count cap
};

// A depth-m type over a signature: a valuation of the concept names plus,
// per role, a set of types one level down.  Its characteristic concept has
// role depth m, and every s-concept of role depth <= m is equivalent to a
// disjunction of such characteristic concepts.
struct CanonicalFamily {
    Signature sigma;
    unsigned depth = 0;

    struct MType {
        std::vector<bool> valuation;                 // over sigma's names, sorted order
        std::map<std::string, std::set<int>> succ;   // role -> indices one level down
    };
    std::vector<std::vector<MType>> levels;          // levels[j] = all depth-j types
    std::vector<ConceptId> atoms;                    // characteristic concepts of levels[depth]

    // atoms whose characteristic concept a depth-<=depth s-concept covers
    std::vector<int> canonize_atoms(ConceptId c) const;
    ConceptId canonize(ConceptId c) const;           // disjunction of the above

    // atoms satisfiable w.r.t. the TBox whose realized types are given
    std::vector<bool> realizable_atoms(const TypeSet& ts) const;
};

CanonicalFamily canonical_concepts(const Signature& s, unsigned m,
                                   const ComputeLimits& limits = {});

// The depth-m approximant: logically equivalent to the set of all
// depth-<=m s-inclusions entailed by t, rendered as one inclusion per
// unsatisfiable depth-m type (its characteristic concept implies bot).
TBox approximant(const TBox& t, const Signature& s, unsigned m,
                 const ComputeLimits& limits = {});

// Concept-level forgetting: the strongest s-consequence of c under the
// empty TBox, by disjunctive-normal-form projection.  Role depth never
// grows.
ConceptId concept_interpolant(ConceptId c, const Signature& s);

// forall R^{<=n}. c
ConceptId bounded_universal(const std::set<std::string>& roles, unsigned n, ConceptId c);

// {top sub concept_interpolant(forall R^{<=m}. C_T, s)}.  Without an
// explicit m the theoretical internalization depth applies, which is
// infeasible outside degenerate inputs and then raises DepthInfeasible.
TBox tbox_interpolant(const TBox& t, const Signature& s,
                      std::optional<unsigned> m = std::nullopt,
                      const ComputeLimits& limits = {});

// Forgetting stratified concept names always succeeds: the approximant at
// the maximal role depth of the TBox is an interpolant.  Raises
// NotStratified when a forgotten name occurs at several depths.
TBox stratified_forget(const TBox& t, const Signature& s,
                       const ComputeLimits& limits = {});

// The lower-bound family over {A,B,r,s,X}: the base TBox and its extension
// whose uniform interpolant needs the full doubly exponential chain of
// universal paths.  n = 1 is the largest desk-scale instance.
std::pair<TBox, TBox> lower_bound_family(unsigned n, const ComputeLimits& limits = {});

// Expanded node count of the K2 chain member (for size recurrences).
uint64_t k2_size(unsigned i);
ConceptId k2_concept(unsigned i);

// Bounded s-inseparability: both TBoxes make exactly the same depth-m
// types unsatisfiable (equivalently, they entail the same inclusions over
// the canonical family).
bool bounded_inseparable(const TBox& t1, const TBox& t2, const Signature& s, unsigned m,
                         const ComputeLimits& limits = {});

} // namespace alcf

#endif // ALCF_COMPUTE_HPP
