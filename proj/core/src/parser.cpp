#include <algorithm>
#include <cctype>
#include <optional>

#include "ltlfix/formula.hpp"

namespace ltlfix {

namespace {

enum class Tok { Ident, True, False, Not, Next, Finally, Globally, And, Or,
                 Implies, Iff, Until, WeakUntil, Release, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text; // identifier text
    size_t pos;       // byte offset in the input
};

class Lexer {
public:
    explicit Lexer(const std::string& in) : in_(in) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[i_]))) ++i_;
        size_t start = i_;
        if (i_ >= in_.size()) {
            cur_ = {Tok::End, "", start};
            return;
        }
        char c = in_[i_];
        auto two = [&](char a, char b) {
            return c == a && i_ + 1 < in_.size() && in_[i_ + 1] == b;
        };
        if (c == '(') { ++i_; cur_ = {Tok::LParen, "", start}; return; }
        if (c == ')') { ++i_; cur_ = {Tok::RParen, "", start}; return; }
        if (c == '!') { ++i_; cur_ = {Tok::Not, "", start}; return; }
        if (two('&', '&')) { i_ += 2; cur_ = {Tok::And, "", start}; return; }
        if (two('|', '|')) { i_ += 2; cur_ = {Tok::Or, "", start}; return; }
        if (two('-', '>')) { i_ += 2; cur_ = {Tok::Implies, "", start}; return; }
        if (c == '<' && i_ + 2 < in_.size() + 1 && in_.compare(i_, 3, "<->") == 0) {
            i_ += 3;
            cur_ = {Tok::Iff, "", start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[j])) || in_[j] == '_')) ++j;
            std::string word = in_.substr(i_, j - i_);
            i_ = j;
            if (word == "true") cur_ = {Tok::True, "", start};
            else if (word == "false") cur_ = {Tok::False, "", start};
            else if (word == "X") cur_ = {Tok::Next, "", start};
            else if (word == "F") cur_ = {Tok::Finally, "", start};
            else if (word == "G") cur_ = {Tok::Globally, "", start};
            else if (word == "U") cur_ = {Tok::Until, "", start};
            else if (word == "W") cur_ = {Tok::WeakUntil, "", start};
            else if (word == "R") cur_ = {Tok::Release, "", start};
            else cur_ = {Tok::Ident, std::move(word), start};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

    const std::string& in_;
    size_t i_ = 0;
    Token cur_{Tok::End, "", 0};
};

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>* alphabet)
        : lex_(text), alphabet_(alphabet) {}

    FormulaPtr run() {
        FormulaPtr f = parseIff();
        const Token& t = lex_.peek();
        if (t.kind != Tok::End) throw ParseError("unexpected trailing input", t.pos);
        return f;
    }

private:
    // iff := implies ('<->' iff)?          right-assoc, loosest
    FormulaPtr parseIff() {
        FormulaPtr l = parseImplies();
        if (lex_.peek().kind == Tok::Iff) {
            lex_.take();
            return Formula::binary(Op::Iff, std::move(l), parseIff());
        }
        return l;
    }

    // implies := or ('->' implies)?        right-assoc
    FormulaPtr parseImplies() {
        FormulaPtr l = parseOr();
        if (lex_.peek().kind == Tok::Implies) {
            lex_.take();
            return Formula::binary(Op::Implies, std::move(l), parseImplies());
        }
        return l;
    }

    // or := and ('||' and)*                left-assoc
    FormulaPtr parseOr() {
        FormulaPtr l = parseAnd();
        while (lex_.peek().kind == Tok::Or) {
            lex_.take();
            l = Formula::binary(Op::Or, std::move(l), parseAnd());
        }
        return l;
    }

    // and := temporal ('&&' temporal)*     left-assoc
    FormulaPtr parseAnd() {
        FormulaPtr l = parseTemporal();
        while (lex_.peek().kind == Tok::And) {
            lex_.take();
            l = Formula::binary(Op::And, std::move(l), parseTemporal());
        }
        return l;
    }

    // temporal := unary ((U|W|R) temporal)?  right-assoc, tightest binary
    FormulaPtr parseTemporal() {
        FormulaPtr l = parseUnary();
        Tok k = lex_.peek().kind;
        if (k == Tok::Until || k == Tok::WeakUntil || k == Tok::Release) {
            lex_.take();
            Op op = k == Tok::Until ? Op::Until : k == Tok::WeakUntil ? Op::WeakUntil : Op::Release;
            return Formula::binary(op, std::move(l), parseTemporal());
        }
        return l;
    }

    FormulaPtr parseUnary() {
        const Token& t = lex_.peek();
        switch (t.kind) {
        case Tok::Not: lex_.take(); return Formula::unary(Op::Not, parseUnary());
        case Tok::Next: lex_.take(); return Formula::unary(Op::Next, parseUnary());
        case Tok::Finally: lex_.take(); return Formula::unary(Op::Finally, parseUnary());
        case Tok::Globally: lex_.take(); return Formula::unary(Op::Globally, parseUnary());
        default: return parsePrimary();
        }
    }

    FormulaPtr parsePrimary() {
        Token t = lex_.take();
        switch (t.kind) {
        case Tok::True: return Formula::literal(true);
        case Tok::False: return Formula::literal(false);
        case Tok::Ident:
            if (alphabet_ &&
                std::find(alphabet_->begin(), alphabet_->end(), t.text) == alphabet_->end()) {
                throw ParseError("unknown atom '" + t.text + "'", t.pos);
            }
            return Formula::atom(std::move(t.text));
        case Tok::LParen: {
            FormulaPtr f = parseIff();
            Token close = lex_.take();
            if (close.kind != Tok::RParen) throw ParseError("expected ')'", close.pos);
            return f;
        }
        case Tok::End: throw ParseError("unexpected end of input", t.pos);
        default: throw ParseError("unexpected token", t.pos);
        }
    }

    Lexer lex_;
    const std::vector<std::string>* alphabet_;
};

} // namespace

FormulaPtr parse(const std::string& text) {
    return Parser(text, nullptr).run();
}

FormulaPtr parse(const std::string& text, const std::vector<std::string>& alphabet) {
    return Parser(text, &alphabet).run();
}

} // namespace ltlfix
