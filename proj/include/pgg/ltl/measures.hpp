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
#include <stdexcept>
#include <vector>

#include "pgg/ltl/formula.hpp"

namespace pgg::ltl {

class TooManyVariables : public std::runtime_error {
public:
    TooManyVariables(int count, int cap);
    int count;
    int cap;
};

constexpr int default_trueness_cap = 24;

/**
 * Propositional skeleton of a formula: every atom and every maximal
 * temporal subformula becomes a variable. Identical subformulae share a
 * variable, and a and !a share the variable of a.
 */
struct Skeleton {
    std::vector<Formula> variables;  // atoms are stored positively
    std::size_t size() const { return variables.size(); }
};

Skeleton propositionalize(const Formula &f);

// Evaluate the skeleton of f under an assignment to its variables.
bool eval_skeleton(const Formula &f, const Skeleton &sk, const std::vector<bool> &assignment);

// Exact fraction of satisfying assignments of the skeleton.
double trueness(const Formula &f, int cap = default_trueness_cap);
std::uint64_t count_models(const Formula &f, int cap = default_trueness_cap);

struct TruenessEstimate {
    double value;
    bool exact;
};

// Monte Carlo estimate over `samples` uniform assignments; never exact.
TruenessEstimate trueness_sampled(const Formula &f, std::uint64_t samples, std::uint64_t seed);
// Exact when the variable count is within the cap, sampled otherwise.
TruenessEstimate trueness_or_estimate(const Formula &f, int cap = default_trueness_cap);

Formula obligation_formula(const Formula &f);

double system_control(const Formula &f, const Partition &p);
double system_control_prop(const Formula &f, const Partition &p);

struct SyntacticMetrics {
    int conjuncts;
    int disjuncts;
    int height;
    int temporal_ops;
};

SyntacticMetrics syntactic_metrics(const Formula &f);

}  // namespace pgg::ltl
