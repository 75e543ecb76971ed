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

#include "alcf/bisimq.hpp"

namespace alcf {

namespace {

// label agreement is over the signature names that occur in the closure;
// names foreign to t constrain nothing (a bisimilar model interprets them
// freely)
std::vector<std::string> tracked_names(const TypeSet& ts, const Signature& s) {
    std::vector<std::string> out;
    for (const auto& n : s.concept_names)
        if (ts.cl.index_of(name(n)) >= 0) out.push_back(n);
    return out;
}

} // namespace

ExtTable ext_table(const Interpretation& i, const TBox& t, const Signature& s) {
    i.check();
    auto ts = std::make_shared<TypeSet>(compute_types(t, {}));
    size_t nd = i.domain.size(), nt = ts->types.size();
    std::vector<std::string> names = tracked_names(*ts, s);

    // Z(d, t): start from label agreement, delete pairs violating the role
    // conditions until stable.
    std::vector<bool> z(nd * nt, false);
    for (size_t d = 0; d < nd; ++d)
        for (size_t ty = 0; ty < nt; ++ty) {
            bool ok = true;
            for (const auto& n : names) {
                bool in_type = ts->types[ty].test(ts->cl.index_of(name(n)));
                if (in_type != i.has_label(static_cast<int>(d), n)) { ok = false; break; }
            }
            z[d * nt + ty] = ok;
        }

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t d = 0; d < nd; ++d) {
            for (size_t ty = 0; ty < nt; ++ty) {
                if (!z[d * nt + ty]) continue;
                bool ok = true;
                // every s-edge must be matched by a compatible type step
                for (const auto& r : s.role_names) {
                    for (int e : i.successors(static_cast<int>(d), r)) {
                        bool found = false;
                        for (size_t ty2 = 0; ty2 < nt && !found; ++ty2)
                            if (z[e * nt + ty2] &&
                                ts->leads_to(static_cast<int>(ty), r, static_cast<int>(ty2)))
                                found = true;
                        if (!found) { ok = false; break; }
                    }
                    if (!ok) break;
                }
                // every s-demand of the type must be realized by an s-edge
                if (ok) {
                    for (const Demand& dem : ts->demands[ty]) {
                        if (!s.role_names.count(dem.role)) continue;
                        bool found = false;
                        for (int e : i.successors(static_cast<int>(d), dem.role)) {
                            for (size_t ty2 = 0; ty2 < nt && !found; ++ty2) {
                                if (!z[e * nt + ty2]) continue;
                                if (!ts->leads_to(static_cast<int>(ty), dem.role,
                                                  static_cast<int>(ty2)))
                                    continue;
                                if (ts->types[ty2].test(dem.target) == dem.want) found = true;
                            }
                            if (found) break;
                        }
                        if (!found) { ok = false; break; }
                    }
                }
                if (!ok) {
                    z[d * nt + ty] = false;
                    changed = true;
                }
            }
        }
    }

    ExtTable out;
    out.types = ts;
    for (size_t d = 0; d < nd; ++d) {
        std::vector<int> tys;
        for (size_t ty = 0; ty < nt; ++ty)
            if (z[d * nt + ty]) tys.push_back(static_cast<int>(ty));
        out.table[i.domain[d]] = std::move(tys);
    }
    return out;
}

bool holds_bisim_quantifier(const PointedInterpretation& p, const TBox& t,
                            const Signature& s) {
    p.check();
    return ext_table(p.interp, t, s).nonempty_at(p.point);
}

} // namespace alcf
