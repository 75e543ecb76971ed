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

#include "alcf/interp.hpp"
#include "alcf/errors.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <functional>

using namespace alcf;
using namespace alcf::testutil;

namespace {

// the chain 0 -> 1 -> ... -> m with A at 0; optional self-loop at the end
// encodes the infinite chain
Interpretation chain(int m, bool loop_at_end) {
    Interpretation i;
    for (int k = 0; k <= m; ++k) i.add_element("c" + std::to_string(k));
    i.set_label("c0", "A");
    for (int k = 0; k < m; ++k)
        i.add_edge("r", "c" + std::to_string(k), "c" + std::to_string(k + 1));
    if (loop_at_end) i.add_edge("r", "c" + std::to_string(m), "c" + std::to_string(m));
    return i;
}

} // namespace

TEST_CASE("eval_concept") {
    Interpretation single;
    single.add_element("d");
    CHECK(eval_concept(single, top()) == std::set<std::string>{"d"});
    CHECK(eval_concept(single, name("Unknown")).empty());

    Interpretation i;
    i.add_element("d0");
    i.add_element("d1");
    i.set_label("d0", "A");
    i.set_label("d1", "B");
    i.add_edge("r", "d0", "d1");
    CHECK(eval_concept(i, exists("r", name("B"))) == std::set<std::string>{"d0"});

    // hand evaluation on the chain: every node but the last has a successor
    int m = 4;
    Interpretation c = chain(m, false);
    std::set<std::string> want;
    for (int k = 0; k < m; ++k) want.insert("c" + std::to_string(k));
    CHECK(eval_concept(c, exists("r", top())) == want);
}

TEST_CASE("is_model") {
    Interpretation i;
    i.add_element("d");
    CHECK(is_model(i, TBox{}));

    // the expanded chain with B everywhere and a loop at the end models t3
    Interpretation c = chain(3, true);
    for (const auto& e : c.domain) c.set_label(e, "B");
    CHECK(is_model(c, t3()));

    // a single A-point has no r-successor, refuting t1
    Interpretation s;
    s.add_element("d");
    s.set_label("d", "A");
    CHECK_FALSE(is_model(s, t1()));
}

TEST_CASE("sigma_bisimilar base cases") {
    Signature s = sig("A,r");
    Interpretation i;
    i.add_element("d0");
    i.set_label("d0", "A");
    i.add_element("d1");
    i.add_edge("r", "d0", "d1");
    PointedInterpretation p{i, "d0"};
    CHECK(sigma_bisimilar(p, p, s));

    // duplication of successors is invisible
    Interpretation dup = i;
    dup.add_element("d2");
    dup.add_edge("r", "d0", "d2");
    CHECK(sigma_bisimilar(p, {dup, "d0"}, s));

    // a missing successor is visible
    Interpretation none;
    none.add_element("e0");
    none.set_label("e0", "A");
    CHECK_FALSE(sigma_bisimilar(p, {none, "e0"}, s));
}

TEST_CASE("sigma_bisimilar is reflexive and symmetric on samples") {
    Rng rng(17);
    std::vector<std::string> names{"A"}, roles{"r"};
    for (int k = 0; k < 60; ++k) {
        Interpretation i1 = random_interp(rng, 4, names, roles);
        Interpretation i2 = random_interp(rng, 4, names, roles);
        PointedInterpretation p1{i1, i1.domain[static_cast<size_t>(pick(rng, (int)i1.domain.size()))]};
        PointedInterpretation p2{i2, i2.domain[static_cast<size_t>(pick(rng, (int)i2.domain.size()))]};
        Signature s = sig("A,r");
        CHECK(sigma_bisimilar(p1, p1, s));
        CHECK(sigma_bisimilar(p1, p2, s) == sigma_bisimilar(p2, p1, s));
        // full bisimilarity refines every finite depth
        if (sigma_bisimilar(p1, p2, s))
            for (unsigned m = 0; m <= 4; ++m) CHECK(m_bisimilar(p1, p2, s, m));
    }
}

TEST_CASE("bisimulation invariance of concept evaluation") {
    Rng rng(23);
    std::vector<std::string> names{"A", "B"}, roles{"r"};
    Signature s = sig("A,B,r");
    int bisimilar_seen = 0;
    for (int k = 0; k < 300; ++k) {
        Interpretation i1 = random_interp(rng, 3, names, roles);
        Interpretation i2 = random_interp(rng, 3, names, roles);
        PointedInterpretation p1{i1, i1.domain[0]};
        PointedInterpretation p2{i2, i2.domain[0]};
        if (!sigma_bisimilar(p1, p2, s)) continue;
        ++bisimilar_seen;
        for (int j = 0; j < 10; ++j) {
            ConceptId c = random_concept(rng, 3, names, roles);
            CHECK(holds_at(i1, c, p1.point) == holds_at(i2, c, p2.point));
        }
    }
    CHECK(bisimilar_seen > 5);
}

TEST_CASE("m_bisimilar on the chains") {
    Signature s = sig("A,r");
    int m = 3;
    Interpretation short_chain = chain(m, false);
    Interpretation long_chain = chain(m + 1, false);
    PointedInterpretation p1{short_chain, "c0"}, p2{long_chain, "c0"};

    CHECK(m_bisimilar(p1, p2, s, 0));
    CHECK(m_bisimilar(p1, p2, s, static_cast<unsigned>(m)));
    // the short chain's leaf has no successor at relative depth m+1
    CHECK_FALSE(m_bisimilar(p1, p2, s, static_cast<unsigned>(m) + 1));
    CHECK_FALSE(sigma_bisimilar(p1, p2, s));

    // base case: only label agreement
    Interpretation a, b;
    a.add_element("x");
    a.set_label("x", "A");
    b.add_element("y");
    b.set_label("y", "A");
    b.set_label("y", "B");
    CHECK(m_bisimilar({a, "x"}, {b, "y"}, sig("A"), 0));
    CHECK_FALSE(m_bisimilar({a, "x"}, {b, "y"}, sig("A,B"), 0));
}

TEST_CASE("unravel_segment") {
    Interpretation single;
    single.add_element("d");
    single.set_label("d", "A");
    TreeSegment seg0 = unravel_segment({single, "d"}, 0);
    CHECK(seg0.pi.interp.domain.size() == 1);
    CHECK(seg0.pi.interp.has_label(0, "A"));

    // a 2-cycle unravels to a path of three nodes at depth 2
    Interpretation cyc;
    cyc.add_element("d0");
    cyc.add_element("d1");
    cyc.add_edge("r", "d0", "d1");
    cyc.add_edge("r", "d1", "d0");
    TreeSegment seg2 = unravel_segment({cyc, "d0"}, 2);
    CHECK(seg2.pi.interp.domain.size() == 3);
    CHECK(seg2.pi.interp.role_ext.at("r").size() == 2);

    // the loop-encoded chain unravels to the plain chain
    int m = 3;
    PointedInterpretation looped{chain(m, true), "c0"};
    TreeSegment seg = unravel_segment(looped, static_cast<unsigned>(m));
    CHECK(seg.pi.interp.domain.size() == static_cast<size_t>(m) + 1);

    // the segment is m-bisimilar to its origin
    Rng rng(31);
    std::vector<std::string> names{"A"}, roles{"r", "s"};
    for (int k = 0; k < 40; ++k) {
        Interpretation i = random_interp(rng, 4, names, roles);
        PointedInterpretation p{i, i.domain[0]};
        unsigned depth = static_cast<unsigned>(pick(rng, 3));
        TreeSegment sg = unravel_segment(p, depth);
        CHECK(m_bisimilar(p, sg.pi, sig("A,r,s"), depth));
    }
}

TEST_CASE("segments_equal") {
    Signature s = sig("A,r");
    int m = 3;
    PointedInterpretation p1{chain(m, true), "c0"};   // stands for the infinite chain
    PointedInterpretation p2{chain(m, false), "c0"};
    CHECK(segments_equal(p1, p1, s, 5));
    CHECK(segments_equal(p1, p2, s, static_cast<unsigned>(m)));
    CHECK_FALSE(segments_equal(p1, p2, s, static_cast<unsigned>(m) + 1));
}

TEST_CASE("char_concept examples") {
    Signature s2 = sig("A,B");
    Interpretation i;
    i.add_element("d");
    i.set_label("d", "A");
    CHECK(canonical(char_concept({i, "d"}, s2, 0)) ==
          canonical(and_(name("A"), not_(name("B")))));

    Interpretation iso;
    iso.add_element("d");
    CHECK(char_concept({iso, "d"}, sig("r"), 1) == forall("r", bot()));

    // root of the chain at depth one: an A-point whose successors are all
    // the not-A point
    PointedInterpretation root{chain(3, false), "c0"};
    ConceptId want = and_(name("A"),
                          and_(exists("r", not_(name("A"))), forall("r", not_(name("A")))));
    CHECK(canonical(char_concept(root, sig("A,r"), 1)) == canonical(want));
}

TEST_CASE("char_concept captures the m-bisimulation class") {
    // both directions of the depth-bounded correspondence
    Rng rng(41);
    std::vector<std::string> names{"A", "B"}, roles{"r"};
    Signature s = sig("A,B,r");
    for (int k = 0; k < 150; ++k) {
        Interpretation i1 = random_interp(rng, 3, names, roles);
        Interpretation i2 = random_interp(rng, 3, names, roles);
        PointedInterpretation p1{i1, i1.domain[0]};
        PointedInterpretation p2{i2, i2.domain[0]};
        unsigned m = static_cast<unsigned>(pick(rng, 4));
        ConceptId x = char_concept(p2, s, m);
        CHECK(role_depth(x) <= m);
        CHECK(m_bisimilar(p1, p2, s, m) == holds_at(i1, x, p1.point));
    }
}

TEST_CASE("interpretation file round-trip") {
    Rng rng(43);
    std::vector<std::string> names{"A", "B"}, roles{"r", "s"};
    for (int k = 0; k < 40; ++k) {
        Interpretation i = random_interp(rng, 5, names, roles);
        PointedInterpretation p{i, i.domain[static_cast<size_t>(pick(rng, (int)i.domain.size()))]};
        std::string text = save_pointed(p);
        PointedInterpretation q = load_pointed(text);
        // bit-exact round-trip through the canonical form
        CHECK(save_pointed(q) == text);
        CHECK(q.point == p.point);
        CHECK(q.interp.concept_ext == p.interp.concept_ext);
        CHECK(q.interp.role_ext == p.interp.role_ext);
    }
    CHECK_THROWS_AS(load_pointed("{\"domain\": []}"), ParseError);
    CHECK_THROWS_AS(load_pointed("not json"), ParseError);
}

TEST_CASE("interpretation invariants") {
    Interpretation empty;
    CHECK_THROWS_AS(empty.check(), std::invalid_argument);
    Interpretation i;
    i.add_element("d");
    PointedInterpretation bad{i, "nope"};
    CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}
