/*
 * Copyright 2026 The pgg authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pgg::ltl {

enum class Op : std::uint8_t {
    True,
    False,
    Atom,
    NegAtom,
    Not,  // only before to_nnf
    And,
    Or,
    Next,
    Finally,
    Globally,
    Until,
    WeakUntil,
    Release,
    StrongRelease,
};

const char *op_name(Op op);
bool is_temporal(Op op);
bool is_unary_temporal(Op op);
bool is_binary_temporal(Op op);

struct Node;

/**
 * Immutable LTL formula handle. Equality is structural; the hash is
 * deterministic across runs and platforms.
 */
class Formula {
public:
    Formula();  // tt

    Op op() const;
    const std::string &name() const;            // atoms only
    const std::vector<Formula> &children() const;
    const Formula &child(std::size_t i) const;
    std::size_t arity() const;
    std::uint64_t hash() const;
    int height() const;

    bool is_true() const { return op() == Op::True; }
    bool is_false() const { return op() == Op::False; }
    bool is_constant() const { return is_true() || is_false(); }
    bool is_literal() const { return op() == Op::Atom || op() == Op::NegAtom; }

    bool operator==(const Formula &other) const;
    bool operator!=(const Formula &other) const { return !(*this == other); }

    // total order used for canonical child ordering
    static int compare(const Formula &a, const Formula &b);

    std::string to_string() const;

    const Node *node() const { return node_.get(); }

private:
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend Formula make(Op op, std::vector<Formula> children, std::string name);
};

struct FormulaLess {
    bool operator()(const Formula &a, const Formula &b) const { return Formula::compare(a, b) < 0; }
};

struct FormulaHash {
    std::size_t operator()(const Formula &f) const { return static_cast<std::size_t>(f.hash()); }
};

// Raw node construction, no simplification.
Formula make(Op op, std::vector<Formula> children = {}, std::string name = {});

// Smart constructors: constant folding, flattening, de-duplication and
// canonical ordering of and/or children.
Formula tt();
Formula ff();
Formula atom(std::string name);
Formula neg_atom(std::string name);
Formula conj(std::vector<Formula> children);
Formula disj(std::vector<Formula> children);
Formula conj(const Formula &a, const Formula &b);
Formula disj(const Formula &a, const Formula &b);
Formula next(const Formula &f);
Formula finally(const Formula &f);
Formula globally(const Formula &f);
Formula until(const Formula &a, const Formula &b);
Formula weak_until(const Formula &a, const Formula &b);
Formula release(const Formula &a, const Formula &b);
Formula strong_release(const Formula &a, const Formula &b);
Formula build(Op op, std::vector<Formula> children, const std::string &name = {});

// Pre-NNF negation node.
Formula negation(const Formula &f);

Formula to_nnf(const Formula &f);
// to_nnf(!f) without building the intermediate node
Formula nnf_negate(const Formula &f);
Formula simplify(const Formula &f);

bool is_nnf(const Formula &f);

std::set<std::string> atoms_of(const Formula &f);

class Valuation {
public:
    Valuation() = default;
    Valuation(std::initializer_list<std::string> names);
    explicit Valuation(std::vector<std::string> names);

    bool contains(std::string_view name) const;
    const std::vector<std::string> &names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }

    Valuation united(const Valuation &other) const;
    std::string to_string() const;  // "{a,b}"

    bool operator==(const Valuation &o) const { return names_ == o.names_; }
    bool operator<(const Valuation &o) const { return names_ < o.names_; }

private:
    std::vector<std::string> names_;  // sorted, unique
};

// All subsets of `props` in binary counting order (bit i = props[i]).
std::vector<Valuation> all_valuations(const std::vector<std::string> &props);
Valuation valuation_from_bits(const std::vector<std::string> &props, std::uint64_t bits);

/**
 * One-step residual. Recursion:
 *   af(tt)=tt, af(ff)=ff, af(a)=tt iff a in v, af(!a) dual,
 *   af(f & g)=af(f) & af(g), af(f | g)=af(f) | af(g), af(X f)=f,
 *   af(F f)=af(f) | F f, af(G f)=af(f) & G f,
 *   af(f U g)=af(g) | (af(f) & f U g),
 *   af(f W g)=af(g) | (af(f) & f W g),
 *   af(f R g)=af(g) & (af(f) | f R g),
 *   af(f M g)=af(g) & (af(f) | f M g).
 */
Formula af(const Formula &f, const Valuation &v);

struct Partition {
    std::set<std::string> system;
    std::set<std::string> environment;

    bool is_system(const std::string &a) const { return system.count(a) > 0; }
    bool is_environment(const std::string &a) const { return environment.count(a) > 0; }
    bool disjoint() const;
    bool covers(const Formula &f) const;
    Partition swapped() const { return Partition{environment, system}; }
    std::vector<std::string> system_list() const { return {system.begin(), system.end()}; }
    std::vector<std::string> environment_list() const { return {environment.begin(), environment.end()}; }
};

}  // namespace pgg::ltl
