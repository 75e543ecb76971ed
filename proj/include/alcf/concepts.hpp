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

#ifndef ALCF_CONCEPTS_HPP
#define ALCF_CONCEPTS_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace alcf {

// ALC concepts are interned in a global DAG: structurally identical
// concepts share one ConceptId, so equality is id equality and maps over
// concepts are maps over integers.  Ids are stable for the process
// lifetime.
using ConceptId = uint32_t;

enum class Ctor : uint8_t { Top, Bot, Name, Not, And, Or, Exists, Forall };

struct ConceptNode {
    Ctor ctor;
    ConceptId a = 0, b = 0;   // children (a for unary, a/b for binary)
    std::string name;         // concept name (Name) or role name (Exists/Forall)
};

// Constructors.  All intern.
ConceptId top();
ConceptId bot();
ConceptId name(const std::string& n);
ConceptId not_(ConceptId c);
ConceptId and_(ConceptId a, ConceptId b);
ConceptId or_(ConceptId a, ConceptId b);
ConceptId exists(const std::string& role, ConceptId c);
ConceptId forall(const std::string& role, ConceptId c);

const ConceptNode& node(ConceptId c);

// Right-nested fold of a conjunction/disjunction list; empty list gives
// top resp. bot.
ConceptId big_and(const std::vector<ConceptId>& cs);
ConceptId big_or(const std::vector<ConceptId>& cs);

struct Inclusion {
    ConceptId lhs, rhs;
    bool operator==(const Inclusion& o) const { return lhs == o.lhs && rhs == o.rhs; }
    bool operator<(const Inclusion& o) const {
        return lhs != o.lhs ? lhs < o.lhs : rhs < o.rhs;
    }
};

// A finite ordered set of inclusions; structural duplicates are stored once.
struct TBox {
    std::vector<Inclusion> inclusions;

    void add(ConceptId lhs, ConceptId rhs);
    void add(const TBox& o);
    bool operator==(const TBox& o) const { return inclusions == o.inclusions; }
};

struct Signature {
    std::set<std::string> concept_names;
    std::set<std::string> role_names;

    bool contains_concept(const std::string& n) const { return concept_names.count(n) > 0; }
    bool contains_role(const std::string& n) const { return role_names.count(n) > 0; }
    Signature unite(const Signature& o) const;
    bool subset_of(const Signature& o) const;
};

// ----- parsing / printing --------------------------------------------------

// Grammar (one statement per line in TBox files, '#' comments):
//   concept := "top" | "bot" | CNAME | "not" concept
//            | "(" concept "and" concept ")" | "(" concept "or" concept ")"
//            | "exists" RNAME "." concept | "forall" RNAME "." concept
//   stmt    := concept "sub" concept | concept "equiv" concept
// CNAME matches [A-Z][A-Za-z0-9_]*, RNAME matches [a-z][A-Za-z0-9_]*.
ConceptId parse_concept(const std::string& text);
TBox parse_tbox(const std::string& text);
Inclusion parse_inclusion(const std::string& text); // single stmt; equiv rejected

std::string render(ConceptId c);
std::string render(const TBox& t);

// Comma-separated name list, classified by case.
Signature parse_signature(const std::string& text);

// ----- syntactic operations ------------------------------------------------

// Single negation with double negations collapsed: neg(not C) = C.
ConceptId neg(ConceptId c);

// Collapse leading double negations.
ConceptId strip_double_negation(ConceptId c);

// Negation normal form; negation applies only to concept names.
ConceptId nnf(ConceptId c);

// Nesting depth of restrictions.
unsigned role_depth(ConceptId c);

// Tree size (number of syntax nodes, counting shared subtrees once per
// occurrence).
uint64_t concept_size(ConceptId c);

Signature signature_of(ConceptId c);
Signature signature_of(const Inclusion& inc);
Signature signature_of(const TBox& t);

// Subconcepts of conc(T) and extra, plus single negations, deduplicated
// modulo double negation.  with_top additionally forces top / not top in
// (used by the type system so every type is nonempty).  Deterministic
// order: by size, then rendering.
std::vector<ConceptId> closure(const TBox& t, const std::vector<ConceptId>& extra,
                               bool with_top = false);

// C_T: the conjunction of nnf(not C or D) over inclusions.  {top sub C_T}
// has the same models as T.
ConceptId internalize(const TBox& t);

// Flatten nested and/or, sort children lexicographically by rendering,
// dedupe.  Structural equality of canonical forms is the dedup key used
// throughout compute.
ConceptId canonical(ConceptId c);

// Light boolean simplification (top/bot propagation, duplicate and
// complementary juncts, exists r. bot, forall r. top).  Result is
// canonical and logically equivalent.
ConceptId simplify(ConceptId c);

} // namespace alcf

#endif // ALCF_CONCEPTS_HPP
