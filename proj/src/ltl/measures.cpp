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

#include "pgg/ltl/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "pgg/util/hash.hpp"

namespace pgg::ltl {

TooManyVariables::TooManyVariables(int count_, int cap_)
    : std::runtime_error("too many propositional variables (" + std::to_string(count_) + " > " + std::to_string(cap_) + ")"),
      count(count_), cap(cap_)
{
}

namespace {

// Flattened propositional circuit over skeleton variables.
struct Gate {
    enum Kind : std::uint8_t { Const, Var, NegVar, And, Or };
    explicit Gate(Kind k, bool v = false, int x = -1) : kind(k), value(v), var(x) {}
    Kind kind;
    bool value;
    int var;
    std::vector<int> kids;
};

struct Circuit {
    std::vector<Gate> gates;
    int root = -1;
    Skeleton skeleton;
};

class Compiler {
public:
    Circuit run(const Formula &f)
    {
        c_.root = visit(f);
        return std::move(c_);
    }

private:
    int var_for(const Formula &key)
    {
        auto [it, fresh] = index_.emplace(key, static_cast<int>(c_.skeleton.variables.size()));
        if (fresh) c_.skeleton.variables.push_back(key);
        return it->second;
    }

    int emit(Gate g)
    {
        c_.gates.push_back(std::move(g));
        return static_cast<int>(c_.gates.size()) - 1;
    }

    int visit(const Formula &f)
    {
        switch (f.op()) {
        case Op::True: return emit(Gate(Gate::Const, true));
        case Op::False: return emit(Gate(Gate::Const, false));
        case Op::Atom: return emit(Gate(Gate::Var, false, var_for(f)));
        case Op::NegAtom: return emit(Gate(Gate::NegVar, false, var_for(atom(f.name()))));
        case Op::Not: return visit(to_nnf(f));
        case Op::And:
        case Op::Or: {
            Gate g(f.op() == Op::And ? Gate::And : Gate::Or);
            for (const Formula &c : f.children()) g.kids.push_back(visit(c));
            return emit(std::move(g));
        }
        default:
            return emit(Gate(Gate::Var, false, var_for(f)));
        }
    }

    Circuit c_;
    std::map<Formula, int, FormulaLess> index_;
};

constexpr std::uint64_t low_patterns[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

// Evaluate 64 assignments at once; variable masks supplied per call.
std::uint64_t
eval_block(const Circuit &c, const std::vector<std::uint64_t> &var_mask, std::vector<std::uint64_t> &scratch)
{
    scratch.resize(c.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); i++) {
        const Gate &g = c.gates[i];
        std::uint64_t v = 0;
        switch (g.kind) {
        case Gate::Const: v = g.value ? ~0ULL : 0ULL; break;
        case Gate::Var: v = var_mask[g.var]; break;
        case Gate::NegVar: v = ~var_mask[g.var]; break;
        case Gate::And:
            v = ~0ULL;
            for (int k : g.kids) v &= scratch[k];
            break;
        case Gate::Or:
            for (int k : g.kids) v |= scratch[k];
            break;
        }
        scratch[i] = v;
    }
    return scratch[c.root];
}

}  // namespace

Skeleton
propositionalize(const Formula &f)
{
    return Compiler().run(f).skeleton;
}

bool
eval_skeleton(const Formula &f, const Skeleton &sk, const std::vector<bool> &assignment)
{
    auto lookup = [&](const Formula &key) -> bool {
        for (std::size_t i = 0; i < sk.variables.size(); i++) {
            if (sk.variables[i] == key) return assignment.at(i);
        }
        throw std::invalid_argument("formula has no variable for '" + key.to_string() + "'");
    };
    switch (f.op()) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Atom: return lookup(f);
    case Op::NegAtom: return !lookup(atom(f.name()));
    case Op::Not: return !eval_skeleton(f.child(0), sk, assignment);
    case Op::And:
        for (const Formula &c : f.children()) {
            if (!eval_skeleton(c, sk, assignment)) return false;
        }
        return true;
    case Op::Or:
        for (const Formula &c : f.children()) {
            if (eval_skeleton(c, sk, assignment)) return true;
        }
        return false;
    default:
        return lookup(f);
    }
}

std::uint64_t
count_models(const Formula &f, int cap)
{
    Circuit c = Compiler().run(f);
    const int n = static_cast<int>(c.skeleton.size());
    if (n > cap) throw TooManyVariables(n, cap);
    std::vector<std::uint64_t> mask(n), scratch;
    const int low = std::min(n, 6);
    for (int i = 0; i < low; i++) mask[i] = low_patterns[i];
    const std::uint64_t valid = n >= 6 ? ~0ULL : ((1ULL << (1u << n)) - 1);
    const std::uint64_t blocks = n > 6 ? (1ULL << (n - 6)) : 1;
    std::uint64_t count = 0;
    for (std::uint64_t b = 0; b < blocks; b++) {
        for (int i = 6; i < n; i++) mask[i] = (b >> (i - 6) & 1) ? ~0ULL : 0ULL;
        count += std::popcount(eval_block(c, mask, scratch) & valid);
    }
    return count;
}

double
trueness(const Formula &f, int cap)
{
    const std::size_t n = propositionalize(f).size();
    if (static_cast<int>(n) > cap) throw TooManyVariables(static_cast<int>(n), cap);
    return std::ldexp(static_cast<double>(count_models(f, cap)), -static_cast<int>(n));
}

TruenessEstimate
trueness_sampled(const Formula &f, std::uint64_t samples, std::uint64_t seed)
{
    Circuit c = Compiler().run(f);
    const std::size_t n = c.skeleton.size();
    std::mt19937_64 rng(splitmix64(seed));
    std::vector<std::uint64_t> mask(n), scratch;
    std::uint64_t hits = 0, total = 0;
    while (total < samples) {
        for (auto &m : mask) m = rng();
        std::uint64_t take = std::min<std::uint64_t>(64, samples - total);
        std::uint64_t valid = take == 64 ? ~0ULL : ((1ULL << take) - 1);
        hits += std::popcount(eval_block(c, mask, scratch) & valid);
        total += take;
    }
    return {samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.5, false};
}

TruenessEstimate
trueness_or_estimate(const Formula &f, int cap)
{
    try {
        return {trueness(f, cap), true};
    } catch (const TooManyVariables &) {
        return trueness_sampled(f, 1u << 16, f.hash());
    }
}

Formula
obligation_formula(const Formula &f)
{
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::NegAtom:
        return f;
    case Op::Not: return obligation_formula(to_nnf(f));
    case Op::And:
    case Op::Or: {
        std::vector<Formula> kids;
        for (const Formula &c : f.children()) kids.push_back(obligation_formula(c));
        return f.op() == Op::And ? conj(std::move(kids)) : disj(std::move(kids));
    }
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
        return obligation_formula(f.child(0));
    case Op::Until:
    case Op::Release:
        return obligation_formula(f.child(1));
    case Op::WeakUntil: return disj(obligation_formula(f.child(0)), obligation_formula(f.child(1)));
    case Op::StrongRelease: return conj(obligation_formula(f.child(0)), obligation_formula(f.child(1)));
    }
    throw std::logic_error("unknown operator");
}

double
system_control(const Formula &f, const Partition &p)
{
    switch (f.op()) {
    case Op::True:
    case Op::False:
        return 0.5;
    case Op::Atom:
    case Op::NegAtom:
        if (p.is_system(f.name())) return 1.0;
        if (p.is_environment(f.name())) return 0.0;
        throw std::invalid_argument("atom '" + f.name() + "' is not covered by the partition");
    case Op::Not:
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
        return system_control(f.child(0), p);
    default: {
        double sum = 0;
        for (const Formula &c : f.children()) sum += system_control(c, p);
        return sum / static_cast<double>(f.arity());
    }
    }
}

double
system_control_prop(const Formula &f, const Partition &p)
{
    std::set<std::string> as = atoms_of(f);
    if (as.empty()) return 0.5;
    std::size_t sys = 0;
    for (const std::string &a : as) sys += p.is_system(a);
    return static_cast<double>(sys) / static_cast<double>(as.size());
}

namespace {

int
count_temporal(const Formula &f)
{
    int n = is_temporal(f.op()) ? 1 : 0;
    for (const Formula &c : f.children()) n += count_temporal(c);
    return n;
}

}  // namespace

SyntacticMetrics
syntactic_metrics(const Formula &f)
{
    SyntacticMetrics m{};
    m.conjuncts = f.op() == Op::And ? static_cast<int>(f.arity()) : 1;
    m.disjuncts = f.op() == Op::Or ? static_cast<int>(f.arity()) : 1;
    m.height = f.height();
    m.temporal_ops = count_temporal(f);
    return m;
}

}  // namespace pgg::ltl
