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

#include "pgg/ltl/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgg/util/hash.hpp"

namespace pgg::ltl {

struct Node {
    Op op;
    std::string name;
    std::vector<Formula> kids;
    std::uint64_t hash;
    int height;
};

const char *
op_name(Op op)
{
    switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return "atom";
    case Op::NegAtom: return "neg-atom";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Next: return "X";
    case Op::Finally: return "F";
    case Op::Globally: return "G";
    case Op::Until: return "U";
    case Op::WeakUntil: return "W";
    case Op::Release: return "R";
    case Op::StrongRelease: return "M";
    }
    return "?";
}

bool
is_unary_temporal(Op op)
{
    return op == Op::Next || op == Op::Finally || op == Op::Globally;
}

bool
is_binary_temporal(Op op)
{
    return op == Op::Until || op == Op::WeakUntil || op == Op::Release || op == Op::StrongRelease;
}

bool
is_temporal(Op op)
{
    return is_unary_temporal(op) || is_binary_temporal(op);
}

Formula
make(Op op, std::vector<Formula> children, std::string name)
{
    std::uint64_t h = fnv1a_u64(static_cast<std::uint64_t>(op) + 1);
    h = fnv1a(name, h);
    int height = 1;
    for (const Formula &c : children) {
        h = fnv1a_u64(c.hash(), h);
        height = std::max(height, c.height() + 1);
    }
    auto n = std::make_shared<Node>(Node{op, std::move(name), std::move(children), h, height});
    return Formula(std::move(n));
}

Formula::Formula() : Formula(tt()) {}

Op Formula::op() const { return node_->op; }
const std::string &Formula::name() const { return node_->name; }
const std::vector<Formula> &Formula::children() const { return node_->kids; }
const Formula &Formula::child(std::size_t i) const { return node_->kids.at(i); }
std::size_t Formula::arity() const { return node_->kids.size(); }
std::uint64_t Formula::hash() const { return node_->hash; }
int Formula::height() const { return node_->height; }

int
Formula::compare(const Formula &a, const Formula &b)
{
    if (a.node_ == b.node_) return 0;
    if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
    if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
    if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
    if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
    for (std::size_t i = 0; i < a.arity(); i++) {
        if (int c = compare(a.child(i), b.child(i)); c != 0) return c;
    }
    return 0;
}

bool
Formula::operator==(const Formula &other) const
{
    return compare(*this, other) == 0;
}

namespace {

const Formula &
tt_node()
{
    static const Formula f = make(Op::True);
    return f;
}

const Formula &
ff_node()
{
    static const Formula f = make(Op::False);
    return f;
}

// tight operands never need parentheses
bool
tight(const Formula &f)
{
    switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::NegAtom:
    case Op::Not:
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
        return true;
    default:
        return false;
    }
}

void
print(const Formula &f, std::string &out)
{
    auto operand = [&out](const Formula &c) {
        if (tight(c)) {
            print(c, out);
        } else {
            out += '(';
            print(c, out);
            out += ')';
        }
    };
    switch (f.op()) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Atom: out += f.name(); break;
    case Op::NegAtom:
        out += '!';
        out += f.name();
        break;
    case Op::Not:
        out += '!';
        operand(f.child(0));
        break;
    case Op::And:
    case Op::Or:
        for (std::size_t i = 0; i < f.arity(); i++) {
            if (i) out += f.op() == Op::And ? " & " : " | ";
            operand(f.child(i));
        }
        break;
    case Op::Next:
    case Op::Finally:
    case Op::Globally:
        out += op_name(f.op());
        out += ' ';
        operand(f.child(0));
        break;
    default:
        operand(f.child(0));
        out += ' ';
        out += op_name(f.op());
        out += ' ';
        operand(f.child(1));
        break;
    }
}

Formula
polyadic(Op op, std::vector<Formula> children)
{
    const Op unit = op == Op::And ? Op::True : Op::False;
    const Op zero = op == Op::And ? Op::False : Op::True;
    std::vector<Formula> flat;
    flat.reserve(children.size());
    for (Formula &c : children) {
        if (c.op() == unit) continue;
        if (c.op() == zero) return c;
        if (c.op() == op) {
            for (const Formula &g : c.children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    std::sort(flat.begin(), flat.end(), FormulaLess{});
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return op == Op::And ? tt_node() : ff_node();
    if (flat.size() == 1) return flat.front();
    return make(op, std::move(flat));
}

}  // namespace

std::string
Formula::to_string() const
{
    std::string out;
    print(*this, out);
    return out;
}

Formula tt() { return tt_node(); }
Formula ff() { return ff_node(); }

Formula
atom(std::string name)
{
    return make(Op::Atom, {}, std::move(name));
}

Formula
neg_atom(std::string name)
{
    return make(Op::NegAtom, {}, std::move(name));
}

Formula conj(std::vector<Formula> children) { return polyadic(Op::And, std::move(children)); }
Formula disj(std::vector<Formula> children) { return polyadic(Op::Or, std::move(children)); }
Formula conj(const Formula &a, const Formula &b) { return conj(std::vector<Formula>{a, b}); }
Formula disj(const Formula &a, const Formula &b) { return disj(std::vector<Formula>{a, b}); }

Formula
next(const Formula &f)
{
    if (f.is_constant()) return f;
    return make(Op::Next, {f});
}

Formula
finally(const Formula &f)
{
    if (f.is_constant() || f.op() == Op::Finally) return f;
    return make(Op::Finally, {f});
}

Formula
globally(const Formula &f)
{
    if (f.is_constant() || f.op() == Op::Globally) return f;
    return make(Op::Globally, {f});
}

Formula
until(const Formula &a, const Formula &b)
{
    if (b.is_constant()) return b;
    if (a.is_true()) return finally(b);
    if (a.is_false() || a == b) return b;
    return make(Op::Until, {a, b});
}

Formula
weak_until(const Formula &a, const Formula &b)
{
    if (b.is_true()) return b;
    if (b.is_false()) return globally(a);
    if (a.is_true()) return a;
    if (a.is_false() || a == b) return b;
    return make(Op::WeakUntil, {a, b});
}

Formula
release(const Formula &a, const Formula &b)
{
    if (b.is_constant()) return b;
    if (a.is_true() || a == b) return b;
    if (a.is_false()) return globally(b);
    return make(Op::Release, {a, b});
}

Formula
strong_release(const Formula &a, const Formula &b)
{
    if (b.is_true()) return finally(a);
    if (b.is_false()) return b;
    if (a.is_true() || a == b) return b;
    if (a.is_false()) return a;
    return make(Op::StrongRelease, {a, b});
}

Formula
negation(const Formula &f)
{
    return make(Op::Not, {f});
}

Formula
build(Op op, std::vector<Formula> children, const std::string &name)
{
    switch (op) {
    case Op::True: return tt();
    case Op::False: return ff();
    case Op::Atom: return atom(name);
    case Op::NegAtom: return neg_atom(name);
    case Op::Not: return negation(children.at(0));
    case Op::And: return conj(std::move(children));
    case Op::Or: return disj(std::move(children));
    case Op::Next: return next(children.at(0));
    case Op::Finally: return finally(children.at(0));
    case Op::Globally: return globally(children.at(0));
    case Op::Until: return until(children.at(0), children.at(1));
    case Op::WeakUntil: return weak_until(children.at(0), children.at(1));
    case Op::Release: return release(children.at(0), children.at(1));
    case Op::StrongRelease: return strong_release(children.at(0), children.at(1));
    }
    throw std::logic_error("unknown operator");
}

Formula
nnf_negate(const Formula &f)
{
    auto neg_all = [](const Formula &g) {
        std::vector<Formula> out;
        out.reserve(g.arity());
        for (const Formula &c : g.children()) out.push_back(nnf_negate(c));
        return out;
    };
    switch (f.op()) {
    case Op::True: return ff();
    case Op::False: return tt();
    case Op::Atom: return neg_atom(f.name());
    case Op::NegAtom: return atom(f.name());
    case Op::Not: return to_nnf(f.child(0));
    case Op::And: return disj(neg_all(f));
    case Op::Or: return conj(neg_all(f));
    case Op::Next: return next(nnf_negate(f.child(0)));
    case Op::Finally: return globally(nnf_negate(f.child(0)));
    case Op::Globally: return finally(nnf_negate(f.child(0)));
    case Op::Until: return release(nnf_negate(f.child(0)), nnf_negate(f.child(1)));
    case Op::Release: return until(nnf_negate(f.child(0)), nnf_negate(f.child(1)));
    case Op::WeakUntil: return strong_release(nnf_negate(f.child(0)), nnf_negate(f.child(1)));
    case Op::StrongRelease: return weak_until(nnf_negate(f.child(0)), nnf_negate(f.child(1)));
    }
    throw std::logic_error("unknown operator");
}

Formula
to_nnf(const Formula &f)
{
    if (f.op() == Op::Not) return nnf_negate(f.child(0));
    if (f.arity() == 0) return build(f.op(), {}, f.name());
    std::vector<Formula> kids;
    kids.reserve(f.arity());
    for (const Formula &c : f.children()) kids.push_back(to_nnf(c));
    return build(f.op(), std::move(kids), f.name());
}

Formula
simplify(const Formula &f)
{
    if (f.arity() == 0) return build(f.op(), {}, f.name());
    std::vector<Formula> kids;
    kids.reserve(f.arity());
    for (const Formula &c : f.children()) kids.push_back(simplify(c));
    return build(f.op(), std::move(kids), f.name());
}

bool
is_nnf(const Formula &f)
{
    if (f.op() == Op::Not) return false;
    for (const Formula &c : f.children()) {
        if (!is_nnf(c)) return false;
    }
    return true;
}

namespace {

void
collect_atoms(const Formula &f, std::set<std::string> &out)
{
    if (f.is_literal()) out.insert(f.name());
    for (const Formula &c : f.children()) collect_atoms(c, out);
}

}  // namespace

std::set<std::string>
atoms_of(const Formula &f)
{
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

Valuation::Valuation(std::initializer_list<std::string> names) : Valuation(std::vector<std::string>(names)) {}

Valuation::Valuation(std::vector<std::string> names) : names_(std::move(names))
{
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

bool
Valuation::contains(std::string_view name) const
{
    return std::binary_search(names_.begin(), names_.end(), name,
                              [](const auto &a, const auto &b) { return std::string_view(a) < std::string_view(b); });
}

Valuation
Valuation::united(const Valuation &other) const
{
    std::vector<std::string> all = names_;
    all.insert(all.end(), other.names_.begin(), other.names_.end());
    return Valuation(std::move(all));
}

std::string
Valuation::to_string() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < names_.size(); i++) {
        if (i) out += ',';
        out += names_[i];
    }
    out += '}';
    return out;
}

Valuation
valuation_from_bits(const std::vector<std::string> &props, std::uint64_t bits)
{
    std::vector<std::string> on;
    for (std::size_t i = 0; i < props.size(); i++) {
        if (bits >> i & 1) on.push_back(props[i]);
    }
    return Valuation(std::move(on));
}

std::vector<Valuation>
all_valuations(const std::vector<std::string> &props)
{
    if (props.size() > 20) throw std::runtime_error("too many propositions to enumerate valuations");
    std::vector<Valuation> out;
    out.reserve(std::size_t{1} << props.size());
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << props.size()); b++) out.push_back(valuation_from_bits(props, b));
    return out;
}

Formula
af(const Formula &f, const Valuation &v)
{
    switch (f.op()) {
    case Op::True:
    case Op::False:
        return f;
    case Op::Atom: return v.contains(f.name()) ? tt() : ff();
    case Op::NegAtom: return v.contains(f.name()) ? ff() : tt();
    case Op::Not: return af(to_nnf(f), v);
    case Op::And:
    case Op::Or: {
        std::vector<Formula> kids;
        kids.reserve(f.arity());
        for (const Formula &c : f.children()) {
            Formula r = af(c, v);
            // short-circuit on the absorbing constant
            if (f.op() == Op::And && r.is_false()) return r;
            if (f.op() == Op::Or && r.is_true()) return r;
            kids.push_back(std::move(r));
        }
        return f.op() == Op::And ? conj(std::move(kids)) : disj(std::move(kids));
    }
    case Op::Next: return f.child(0);
    case Op::Finally: return disj(af(f.child(0), v), f);
    case Op::Globally: return conj(af(f.child(0), v), f);
    case Op::Until:
    case Op::WeakUntil:
        return disj(af(f.child(1), v), conj(af(f.child(0), v), f));
    case Op::Release:
    case Op::StrongRelease:
        return conj(af(f.child(1), v), disj(af(f.child(0), v), f));
    }
    throw std::logic_error("unknown operator");
}

bool
Partition::disjoint() const
{
    for (const std::string &a : system) {
        if (environment.count(a)) return false;
    }
    return true;
}

bool
Partition::covers(const Formula &f) const
{
    for (const std::string &a : atoms_of(f)) {
        if (!is_system(a) && !is_environment(a)) return false;
    }
    return true;
}

}  // namespace pgg::ltl
