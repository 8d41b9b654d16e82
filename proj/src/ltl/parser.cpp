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

#include "pgg/ltl/parser.hpp"

#include <cctype>
#include <vector>

namespace pgg::ltl {

ParseError::ParseError(const std::string &msg, int line, int column)
    : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line), column_(column)
{
}

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, Unary, Binary, End };

struct Token {
    Tok kind;
    std::string text;
    Op op = Op::True;
    int line;
    int column;
};

std::vector<Token>
tokenize(std::string_view s)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string text, Op op, int len) {
        out.push_back(Token{k, std::move(text), op, line, col});
        i += len;
        col += len;
    };
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            line++;
            col = 1;
            i++;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            i++;
            col++;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) j++;
            std::string w(s.substr(i, j - i));
            int len = static_cast<int>(j - i);
            if (w == "true") push(Tok::True, w, Op::True, len);
            else if (w == "false") push(Tok::False, w, Op::False, len);
            else if (w == "X") push(Tok::Unary, w, Op::Next, len);
            else if (w == "F") push(Tok::Unary, w, Op::Finally, len);
            else if (w == "G") push(Tok::Unary, w, Op::Globally, len);
            else if (w == "U") push(Tok::Binary, w, Op::Until, len);
            else if (w == "W") push(Tok::Binary, w, Op::WeakUntil, len);
            else if (w == "R") push(Tok::Binary, w, Op::Release, len);
            else if (w == "M") push(Tok::Binary, w, Op::StrongRelease, len);
            else push(Tok::Ident, w, Op::Atom, len);
            continue;
        }
        auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
        if (starts("<->")) push(Tok::Iff, "<->", Op::True, 3);
        else if (starts("->")) push(Tok::Implies, "->", Op::True, 2);
        else if (starts("&&")) push(Tok::And, "&&", Op::And, 2);
        else if (starts("||")) push(Tok::Or, "||", Op::Or, 2);
        else if (c == '!') push(Tok::Not, "!", Op::Not, 1);
        else if (c == '&') push(Tok::And, "&", Op::And, 1);
        else if (c == '|') push(Tok::Or, "|", Op::Or, 1);
        else if (c == '(') push(Tok::LParen, "(", Op::True, 1);
        else if (c == ')') push(Tok::RParen, ")", Op::True, 1);
        else throw ParseError(std::string("unknown token '") + c + "'", line, col);
    }
    out.push_back(Token{Tok::End, "", Op::True, line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse_all()
    {
        Formula f = iff();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token &peek() const { return toks_[pos_]; }
    const Token &take() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError(msg, peek().line, peek().column);
    }

    Formula iff()
    {
        Formula lhs = implies();
        while (peek().kind == Tok::Iff) {
            take();
            Formula rhs = implies();
            lhs = conj(disj(negation(lhs), rhs), disj(lhs, negation(rhs)));
        }
        return lhs;
    }

    Formula implies()
    {
        Formula lhs = disjunction();
        if (peek().kind == Tok::Implies) {
            take();
            Formula rhs = implies();
            return disj(negation(lhs), rhs);
        }
        return lhs;
    }

    Formula disjunction()
    {
        std::vector<Formula> parts{conjunction()};
        while (peek().kind == Tok::Or) {
            take();
            parts.push_back(conjunction());
        }
        return parts.size() == 1 ? parts[0] : disj(std::move(parts));
    }

    Formula conjunction()
    {
        std::vector<Formula> parts{binary()};
        while (peek().kind == Tok::And) {
            take();
            parts.push_back(binary());
        }
        return parts.size() == 1 ? parts[0] : conj(std::move(parts));
    }

    Formula binary()
    {
        Formula lhs = unary();
        if (peek().kind == Tok::Binary) {
            Op op = take().op;
            Formula rhs = binary();
            return build(op, {lhs, rhs});
        }
        return lhs;
    }

    Formula unary()
    {
        const Token &t = peek();
        switch (t.kind) {
        case Tok::Not:
            take();
            return negation(unary());
        case Tok::Unary: {
            Op op = take().op;
            return build(op, {unary()});
        }
        default:
            return primary();
        }
    }

    Formula primary()
    {
        const Token &t = peek();
        switch (t.kind) {
        case Tok::True: take(); return tt();
        case Tok::False: take(); return ff();
        case Tok::Ident: return atom(take().text);
        case Tok::LParen: {
            take();
            Formula f = iff();
            if (peek().kind != Tok::RParen) {
                if (peek().kind == Tok::End) fail("unexpected end of input, expected ')'");
                fail("expected ')' but found '" + peek().text + "'");
            }
            take();
            return f;
        }
        case Tok::End: fail("unexpected end of input");
        default: fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula
parse_raw(std::string_view text)
{
    return Parser(tokenize(text)).parse_all();
}

Formula
parse(std::string_view text)
{
    return to_nnf(parse_raw(text));
}

}  // namespace pgg::ltl
