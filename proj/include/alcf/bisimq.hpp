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

#ifndef ALCF_BISIMQ_HPP
#define ALCF_BISIMQ_HPP

#include "alcf/interp.hpp"
#include "alcf/typesys.hpp"

#include <map>
#include <string>
#include <vector>

namespace alcf {

// Extension sets: for each element of a finite interpretation, the types of
// t with which an s-bisimilar copy of the element can be realized in a
// model of t.  Computed as a greatest fixpoint over domain x types; an
// element satisfies the bisimulation quantifier iff its set is nonempty.
struct ExtTable {
    std::map<std::string, std::vector<int>> table;  // element id -> type indices (sorted)
    std::shared_ptr<const TypeSet> types;

    bool nonempty_at(const std::string& elem) const {
        auto it = table.find(elem);
        return it != table.end() && !it->second.empty();
    }
};

ExtTable ext_table(const Interpretation& i, const TBox& t, const Signature& s);

// (i, point) is s-bisimilar to some pointed model of t.
bool holds_bisim_quantifier(const PointedInterpretation& p, const TBox& t,
                            const Signature& s);

} // namespace alcf

#endif // ALCF_BISIMQ_HPP
