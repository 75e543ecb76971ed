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

#ifndef ALCF_INTERP_HPP
#define ALCF_INTERP_HPP

#include "alcf/concepts.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace alcf {

// A finite interpretation over opaque string element ids.  Finite graphs
// stand for their (possibly infinite) tree unravellings; every consumer in
// this library is bisimulation-closed.
struct Interpretation {
    std::vector<std::string> domain;                               // ordered, unique
    std::map<std::string, std::set<int>> concept_ext;              // name -> element indices
    std::map<std::string, std::set<std::pair<int, int>>> role_ext; // name -> edges

    int add_element(const std::string& id);     // returns index; reuses existing
    int index_of(const std::string& id) const;  // -1 if absent
    void set_label(const std::string& id, const std::string& concept_name);
    void add_edge(const std::string& role, const std::string& from, const std::string& to);

    bool has_label(int e, const std::string& concept_name) const;
    std::vector<int> successors(int e, const std::string& role) const;
    // successors under any role in rs, with the role name of each step
    std::vector<std::pair<std::string, int>> successors_any(
        int e, const std::set<std::string>& rs) const;

    void check() const; // invariants: nonempty domain, extensions within domain
};

struct PointedInterpretation {
    Interpretation interp;
    std::string point;

    int point_index() const;
    void check() const;
};

// A pointed interpretation whose graph is a finite tree rooted at point and
// whose role extensions are pairwise disjoint (one role per edge).
struct TreeSegment {
    PointedInterpretation pi;
    unsigned depth = 0;
};

// ----- semantics -------------------------------------------------------------

// Exact extension of c; indices into i.domain.  Unknown names evaluate to
// empty extensions.
std::vector<bool> eval_bits(const Interpretation& i, ConceptId c);
std::set<std::string> eval_concept(const Interpretation& i, ConceptId c);
bool holds_at(const Interpretation& i, ConceptId c, const std::string& elem);

bool is_model(const Interpretation& i, const TBox& t);

// Greatest fixpoint of the back-and-forth conditions over the product of
// the two domains.
bool sigma_bisimilar(const PointedInterpretation& p1, const PointedInterpretation& p2,
                     const Signature& s);

// Depth-bounded bisimilarity, by the inductive definition.
bool m_bisimilar(const PointedInterpretation& p1, const PointedInterpretation& p2,
                 const Signature& s, unsigned m);

// Tree of all role-paths of length <= m from the point; node labels copied
// from path endpoints.
TreeSegment unravel_segment(const PointedInterpretation& p, unsigned m);

// True iff the depth-m unravellings, restricted to s, are isomorphic as
// rooted labelled trees.
bool segments_equal(const PointedInterpretation& p1, const PointedInterpretation& p2,
                    const Signature& s, unsigned m);

// A concept of role depth <= m whose extension, on any interpretation, is
// exactly the class of points (s,m)-bisimilar to p.
ConceptId char_concept(const PointedInterpretation& p, const Signature& s, unsigned m);

// ----- file format ------------------------------------------------------------

// JSON document with fields domain, concepts, roles, optional point.
// save is deterministic; save(load(save(x))) == save(x) byte for byte.
std::string save_interpretation(const Interpretation& i, const std::string* point = nullptr);
std::string save_pointed(const PointedInterpretation& p);
PointedInterpretation load_pointed(const std::string& text);       // requires point
Interpretation load_interpretation(const std::string& text);

} // namespace alcf

#endif // ALCF_INTERP_HPP
