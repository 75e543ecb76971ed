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

#ifndef ALCF_BITSET_HPP
#define ALCF_BITSET_HPP

#include <cstdint>
#include <cstddef>
#include <vector>

namespace alcf {

// Fixed-width bitset sized at construction.  Types over an indexed closure
// are stored as these; subset and disjointness tests are the hot loop of
// type elimination.
class Bits {
public:
    Bits() = default;
    explicit Bits(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }

    void set(size_t i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(size_t i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    bool contains(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if ((o.w_[i] & ~w_[i]) != 0) return false;
        return true;
    }
    bool intersects(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if ((w_[i] & o.w_[i]) != 0) return true;
        return false;
    }

    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator<(const Bits& o) const { return w_ < o.w_; }

    size_t count() const {
        size_t c = 0;
        for (uint64_t v : w_) c += static_cast<size_t>(__builtin_popcountll(v));
        return c;
    }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

} // namespace alcf

#endif // ALCF_BITSET_HPP
