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

#ifndef ALCF_ERRORS_HPP
#define ALCF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace alcf {

// Syntax error in the TBox / concept / signature text formats.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& what_arg)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + what_arg),
          line_(line), col_(col) {}

    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_, col_;
};

// A configured resource cap was exceeded.  The decision is refused rather
// than computed approximately.
class ResourceError : public std::runtime_error {
public:
    enum class Kind { FamilyTooLarge, CounterTooWide, DepthInfeasible };

    ResourceError(Kind kind, const std::string& what_arg)
        : std::runtime_error(what_arg), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Emptiness is only implemented for the co-Buchi fragment (priorities
// {0,1} after normalization).  Anything wider is refused.
class UnsupportedPriorities : public std::runtime_error {
public:
    explicit UnsupportedPriorities(std::vector<unsigned> priorities)
        : std::runtime_error(make_msg(priorities)), priorities_(std::move(priorities)) {}

    const std::vector<unsigned>& priorities() const { return priorities_; }

private:
    static std::string make_msg(const std::vector<unsigned>& ps) {
        std::string s = "emptiness supports priorities {0,1} only; got {";
        for (size_t i = 0; i < ps.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(ps[i]);
        }
        return s + "}";
    }
    std::vector<unsigned> priorities_;
};

// A concept name slated for forgetting occurs at more than one restriction
// nesting depth.
class NotStratified : public std::runtime_error {
public:
    NotStratified(std::string name, std::vector<unsigned> depths)
        : std::runtime_error(make_msg(name, depths)),
          name_(std::move(name)), depths_(std::move(depths)) {}

    const std::string& name() const { return name_; }
    const std::vector<unsigned>& depths() const { return depths_; }

private:
    static std::string make_msg(const std::string& n, const std::vector<unsigned>& ds) {
        std::string s = "name " + n + " is not stratified; occurs at depths {";
        for (size_t i = 0; i < ds.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(ds[i]);
        }
        return s + "}";
    }
    std::string name_;
    std::vector<unsigned> depths_;
};

// A two-track interpretation whose counter labels do not agree with path
// depth.  Carries one offending path for diagnosis.
class NotWellCounting : public std::runtime_error {
public:
    explicit NotWellCounting(std::vector<std::string> path)
        : std::runtime_error(make_msg(path)), path_(std::move(path)) {}

    const std::vector<std::string>& path() const { return path_; }

private:
    static std::string make_msg(const std::vector<std::string>& p) {
        std::string s = "interpretation is not well-counting along path:";
        for (const auto& e : p) s += " " + e;
        return s;
    }
    std::vector<std::string> path_;
};

} // namespace alcf

#endif // ALCF_ERRORS_HPP
