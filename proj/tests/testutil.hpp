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

// Shared generators and brute-force oracles for the test suites.  The
// oracles here stay independent of the implementation paths they check:
// satisfiability is cross-checked by enumerating small models, entailment
// examples are frozen from hand evaluation, and automaton languages are
// compared against the extension-set fixpoint.

#ifndef ALCF_TESTUTIL_HPP
#define ALCF_TESTUTIL_HPP

#include "alcf/concepts.hpp"
#include "alcf/interp.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace alcf::testutil {

using Rng = std::mt19937;

inline int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

// the running examples of the worked cases
inline TBox t1() { return parse_tbox("A sub (exists r. B and exists r. not B)"); }
inline TBox t2() { return parse_tbox("A equiv (B and exists r. B)"); }
inline TBox t3() { return parse_tbox("A sub B\nB sub exists r. B"); }
inline TBox t4() {
    return parse_tbox(
        "A sub exists r. B\n"
        "A0 sub exists r. (A1 and B)\n"
        "E equiv (A1 and (B and exists r. (A2 and B)))");
}

inline Signature sig(const std::string& names) { return parse_signature(names); }

// random concept over a small name pool
inline ConceptId random_concept(Rng& rng, unsigned depth,
                                const std::vector<std::string>& names,
                                const std::vector<std::string>& roles) {
    int k = pick(rng, depth == 0 || roles.empty() ? 5 : 8);
    switch (k) {
    case 0: return top();
    case 1: return bot();
    case 2:
    case 3:
    case 4:
        if (!names.empty()) {
            ConceptId a = name(names[pick(rng, static_cast<int>(names.size()))]);
            return k == 4 ? not_(a) : a;
        }
        return top();
    case 5:
        return exists(roles[pick(rng, static_cast<int>(roles.size()))],
                      random_concept(rng, depth - 1, names, roles));
    case 6:
        return forall(roles[pick(rng, static_cast<int>(roles.size()))],
                      random_concept(rng, depth - 1, names, roles));
    default: {
        ConceptId a = random_concept(rng, depth - 1, names, roles);
        ConceptId b = random_concept(rng, depth - 1, names, roles);
        return rng() % 2 ? and_(a, b) : or_(a, b);
    }
    }
}

inline TBox random_tbox(Rng& rng, int axioms, unsigned depth,
                        const std::vector<std::string>& names,
                        const std::vector<std::string>& roles) {
    TBox t;
    for (int i = 0; i < axioms; ++i)
        t.add(random_concept(rng, depth, names, roles),
              random_concept(rng, depth, names, roles));
    return t;
}

inline Interpretation random_interp(Rng& rng, int max_elems,
                                    const std::vector<std::string>& names,
                                    const std::vector<std::string>& roles) {
    Interpretation i;
    int n = 1 + pick(rng, max_elems);
    for (int e = 0; e < n; ++e) i.add_element("d" + std::to_string(e));
    for (const auto& a : names)
        for (int e = 0; e < n; ++e)
            if (rng() % 2) i.set_label("d" + std::to_string(e), a);
    for (const auto& r : roles)
        for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f)
                if (rng() % 3 == 0) i.add_edge(r, "d" + std::to_string(e), "d" + std::to_string(f));
    return i;
}

// random tree interpretation (fresh node per child), outdegree <= 2
inline PointedInterpretation random_tree(Rng& rng, unsigned depth,
                                         const std::vector<std::string>& names,
                                         const std::vector<std::string>& roles) {
    PointedInterpretation p;
    int next = 0;
    std::vector<std::pair<std::string, unsigned>> queue;
    auto fresh = [&]() { return "n" + std::to_string(next++); };
    std::string root = fresh();
    p.interp.add_element(root);
    p.point = root;
    queue.push_back({root, depth});
    while (!queue.empty()) {
        auto [id, d] = queue.back();
        queue.pop_back();
        for (const auto& a : names)
            if (rng() % 2) p.interp.set_label(id, a);
        if (d == 0) continue;
        int kids = pick(rng, 3);
        for (int k = 0; k < kids; ++k) {
            std::string c = fresh();
            p.interp.add_element(c);
            p.interp.add_edge(roles[pick(rng, static_cast<int>(roles.size()))], id, c);
            queue.push_back({c, d - 1});
        }
    }
    return p;
}

// Brute-force satisfiability: search for a model of t with at most
// max_elems elements over the given symbols where c holds somewhere.
// Complete only relative to the bound, which is all the cross-checks use.
inline std::optional<Interpretation> bounded_model_search(
    ConceptId c, const TBox& t, int max_elems, const std::vector<std::string>& names,
    const std::vector<std::string>& roles) {
    for (int n = 1; n <= max_elems; ++n) {
        // labels: names x elements bits; edges: roles x n x n bits
        uint64_t label_bits = static_cast<uint64_t>(names.size()) * n;
        uint64_t edge_bits = static_cast<uint64_t>(roles.size()) * n * n;
        if (label_bits + edge_bits > 24) return std::nullopt; // caller keeps it tiny
        for (uint64_t mask = 0; mask < (uint64_t{1} << (label_bits + edge_bits)); ++mask) {
            Interpretation i;
            for (int e = 0; e < n; ++e) i.add_element("d" + std::to_string(e));
            uint64_t b = 0;
            for (size_t a = 0; a < names.size(); ++a)
                for (int e = 0; e < n; ++e, ++b)
                    if ((mask >> b) & 1) i.set_label("d" + std::to_string(e), names[a]);
            for (size_t r = 0; r < roles.size(); ++r)
                for (int e = 0; e < n; ++e)
                    for (int f = 0; f < n; ++f, ++b)
                        if ((mask >> b) & 1)
                            i.add_edge(roles[r], "d" + std::to_string(e),
                                       "d" + std::to_string(f));
            if (!is_model(i, t)) continue;
            if (!eval_concept(i, c).empty()) return i;
        }
    }
    return std::nullopt;
}

} // namespace alcf::testutil

#endif // ALCF_TESTUTIL_HPP
