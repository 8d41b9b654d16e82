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

#include "pgg/translation/translation.hpp"

namespace pgg::translation {

using ltl::Formula;
using ltl::Op;

const char *
fragment_name(Fragment f)
{
    switch (f) {
    case Fragment::Safety: return "safety";
    case Fragment::CoSafety: return "cosafety";
    case Fragment::GConjunction: return "gconjunction";
    case Fragment::Unsupported: return "unsupported";
    }
    return "?";
}

namespace {

bool
contains_op(const Formula &f, Op a, Op b, Op c)
{
    if (f.op() == a || f.op() == b || f.op() == c) return true;
    for (const Formula &k : f.children()) {
        if (contains_op(k, a, b, c)) return true;
    }
    return false;
}

}  // namespace

bool is_safety(const Formula &f) { return !contains_op(f, Op::Finally, Op::Until, Op::StrongRelease); }
bool is_cosafety(const Formula &f) { return !contains_op(f, Op::Globally, Op::Release, Op::WeakUntil); }

std::vector<Formula>
conjuncts(const Formula &f)
{
    if (f.op() == Op::And) return f.children();
    return {f};
}

Fragment
classify_fragment(const Formula &f)
{
    if (!ltl::is_nnf(f)) return Fragment::Unsupported;
    if (is_safety(f)) return Fragment::Safety;
    if (is_cosafety(f)) return Fragment::CoSafety;
    bool any_g = false;
    for (const Formula &c : conjuncts(f)) {
        if (c.op() == Op::Globally) {
            if (!is_cosafety(c.child(0))) return Fragment::Unsupported;
            any_g = true;
        } else if (!is_cosafety(c)) {
            return Fragment::Unsupported;
        }
    }
    return any_g ? Fragment::GConjunction : Fragment::Unsupported;
}

namespace {

// Replaces propositional occurrences of x in f (those reachable through
// and/or only) by the constant `value`.
Formula
substitute(const Formula &f, const Formula &x, bool value)
{
    if (f == x) return value ? ltl::tt() : ltl::ff();
    if (x.is_literal() && f.is_literal() && f.name() == x.name()) return value ? ltl::ff() : ltl::tt();
    if (f.op() != Op::And && f.op() != Op::Or) return f;
    std::vector<Formula> kids;
    bool changed = false;
    for (const Formula &k : f.children()) {
        kids.push_back(substitute(k, x, value));
        changed = changed || kids.back() != k;
    }
    if (!changed) return f;
    return f.op() == Op::And ? ltl::conj(std::move(kids)) : ltl::disj(std::move(kids));
}

Formula
normalize_polyadic(Op op, std::vector<Formula> kids)
{
    const bool is_and = op == Op::And;
    const Op wrap = is_and ? Op::Globally : Op::Finally;
    std::vector<Formula> kept;
    for (const Formula &k : kids) {
        bool covered = false;
        for (const Formula &o : kids) {
            if (o.op() == wrap && o.child(0) == k) covered = true;
        }
        if (!covered) kept.push_back(k);
    }
    // in a conjunction every sibling may be assumed true, in a disjunction false
    for (int round = 0; round < 3; round++) {
        bool changed = false;
        for (std::size_t i = 0; i < kept.size(); i++) {
            for (std::size_t j = 0; j < kept.size(); j++) {
                if (i == j || kept[i].is_constant()) continue;
                Formula r = substitute(kept[j], kept[i], is_and);
                if (r != kept[j]) {
                    kept[j] = r;
                    changed = true;
                }
            }
        }
        if (!changed) break;
        Formula whole = is_and ? ltl::conj(kept) : ltl::disj(kept);
        if (whole.op() != op) return whole;
        kept = whole.children();
    }
    return is_and ? ltl::conj(std::move(kept)) : ltl::disj(std::move(kept));
}

}  // namespace

Formula
normalize_label(const Formula &f)
{
    if (f.arity() == 0) return f;
    std::vector<Formula> kids;
    kids.reserve(f.arity());
    for (const Formula &k : f.children()) kids.push_back(normalize_label(k));
    if (f.op() == Op::And || f.op() == Op::Or) return normalize_polyadic(f.op(), std::move(kids));
    return ltl::build(f.op(), std::move(kids), f.name());
}

namespace {

Formula
delay_atoms(const Formula &f, const ltl::Partition &p)
{
    if (f.is_literal()) return p.is_system(f.name()) ? ltl::next(f) : f;
    if (f.arity() == 0) return f;
    std::vector<Formula> kids;
    for (const Formula &k : f.children()) kids.push_back(delay_atoms(k, p));
    return ltl::build(f.op(), std::move(kids), f.name());
}

}  // namespace

Formula
complement_formula(const Formula &f, const ltl::Partition &p)
{
    return ltl::nnf_negate(delay_atoms(f, p));
}

}  // namespace pgg::translation
