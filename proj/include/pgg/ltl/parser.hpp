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

#include <stdexcept>
#include <string>
#include <string_view>

#include "pgg/ltl/formula.hpp"

namespace pgg::ltl {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Grammar: see docs/grammar.md. Result is in NNF and simplified.
Formula parse(std::string_view text);

// Same grammar, but keeps negations where they were written ('->' and
// '<->' are still expanded).
Formula parse_raw(std::string_view text);

}  // namespace pgg::ltl
