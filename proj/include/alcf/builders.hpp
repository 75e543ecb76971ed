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

#ifndef ALCF_BUILDERS_HPP
#define ALCF_BUILDERS_HPP

#include "alcf/apta.hpp"
#include "alcf/bisimq.hpp"
#include "alcf/typesys.hpp"

#include <optional>

namespace alcf {

// Two pointed interpretations standing (as finite graphs) for a pair of
// tree unravellings whose depth-m segments coincide while only the first
// admits a bisimilar model of the TBox.
struct WitnessPair {
    PointedInterpretation i1, i2;
    unsigned depth = 0;
};

struct UiExistsResult {
    bool star_holds = false;               // the depth-m two-witness condition
    std::optional<WitnessPair> witness;    // decoded when star_holds
    bool at_threshold = false;             // m reached the exact decision bound
};

// Resource caps for the existence automaton and related machinery.
struct BuilderLimits {
    unsigned max_counter_bits = 12;
};

// The automaton accepting exactly the pointed interpretations that are
// s-bisimilar to a pointed model of t.  States: one initial state plus the
// realized types quotiented by s-indistinguishability; all priorities 0.
Apta build_bisim_apta(const TBox& t, const Signature& s);

// Accepts (I,d) iff every element s-reachable from d satisfies the
// internalization of t; all priorities 0.
Apta build_model_apta(const TBox& t, const Signature& s);

// The two-track automaton: nonempty iff the depth-m two-witness condition
// holds.  Intersection of the track-1 bisimilarity automaton, the
// complemented track-2 automaton, the every-successor track-2 automaton,
// and the depth-counter / segment-equality automaton.
Apta build_existence_apta(const TBox& t, const Signature& s, unsigned m,
                          const BuilderLimits& limits = {});

// The counter / segment-equality automaton alone: accepts a two-track
// interpretation iff it is m-well-counting and the two encoded depth-m
// segments coincide.
Apta build_counter_apta(const Signature& s, unsigned m, const BuilderLimits& limits = {});

// Track alphabet helpers (node names (A,i), counters; edge names (r,i)).
std::string track_concept_name(const std::string& base, int track); // track 1 or 2
std::string track_role_name(const std::string& base, int track);    // 1, 2 or 12 (0 = shared)
std::string counter_name(unsigned bit);

// Split a two-track interpretation into the encoded pair; checked to be
// m-well-counting first (throws NotWellCounting).
WitnessPair decode_two_track(const PointedInterpretation& p, unsigned m);

// The four conditions of the two-witness characterization, checked on the
// finite graphs via segment comparison and the extension-set fixpoint.
bool verify_witness(const WitnessPair& w, const TBox& t, const Signature& s);

// Whether t united with tprime is a conservative extension of t.
bool decide_conservative_extension(const TBox& t, const TBox& tprime);

// Whether the depth-m approximant fails to be a uniform interpolant,
// decided by emptiness of the existence automaton, with decoded witness.
UiExistsResult decide_interpolant_nonexistence_at(const TBox& t, const Signature& s,
                                                  unsigned m,
                                                  const BuilderLimits& limits = {});

// Reduction from conservative-extension checking to interpolant existence:
// T0 = t + {not c sub A, A sub exists r. A} + {exists s. A sub A} for every
// role s around, with A, r fresh; the returned signature omits A.
std::pair<TBox, Signature> reduce_ce_to_ui(const TBox& t, ConceptId c);

// The types-quotient used as automaton state space: classes of realized
// types indistinguishable by s-labels, s-demands and s-successor classes.
struct TypeQuotient {
    std::vector<int> class_of;                    // per type index
    int num_classes = 0;
};
TypeQuotient quotient_types(const TypeSet& ts, const Signature& s);

} // namespace alcf

#endif // ALCF_BUILDERS_HPP
