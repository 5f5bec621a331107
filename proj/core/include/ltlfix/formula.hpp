#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ltlfix/errors.hpp"

namespace ltlfix {

enum class Op : uint8_t {
    True,
    False,
    Atom,
    Not,
    Next,     // X
    Finally,  // F
    Globally, // G
    And,
    Or,
    Implies,
    Iff,
    Until,     // U
    WeakUntil, // W
    Release,   // R
};

constexpr bool isUnary(Op op) {
    return op == Op::Not || op == Op::Next || op == Op::Finally || op == Op::Globally;
}
constexpr bool isBinary(Op op) {
    return op >= Op::And && op <= Op::Release;
}
constexpr bool isLeaf(Op op) {
    return op == Op::True || op == Op::False || op == Op::Atom;
}

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable LTL syntax tree. Nodes are freely shared (also across threads);
// size and hash are computed once at construction.
class Formula {
public:
    Op op() const noexcept { return op_; }
    const std::string& atomName() const noexcept { return atom_; }
    // Unary child lives in left(); right() is null for unary/leaf nodes.
    const FormulaPtr& left() const noexcept { return left_; }
    const FormulaPtr& right() const noexcept { return right_; }
    int size() const noexcept { return size_; } // AST node count
    size_t hash() const noexcept { return hash_; }

    static FormulaPtr atom(std::string name);
    static FormulaPtr literal(bool value);
    static FormulaPtr unary(Op op, FormulaPtr child);
    static FormulaPtr binary(Op op, FormulaPtr lhs, FormulaPtr rhs);

private:
    Formula(Op op, std::string atom, FormulaPtr lhs, FormulaPtr rhs);

    Op op_;
    std::string atom_;
    FormulaPtr left_;
    FormulaPtr right_;
    int size_;
    size_t hash_;
};

// Structural equality (not semantic). Fast paths on pointer and hash.
bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaHash {
    size_t operator()(const FormulaPtr& f) const noexcept { return f->hash(); }
};
struct FormulaEqual {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return equal(a, b); }
};
template <typename V>
using FormulaMap = std::unordered_map<FormulaPtr, V, FormulaHash, FormulaEqual>;
using FormulaSet = std::unordered_set<FormulaPtr, FormulaHash, FormulaEqual>;

// Canonical text form; parse(print(f)) is structurally equal to f.
// Unary operators always parenthesise their argument ("G (p)"); binary
// operators add parentheses only where precedence requires them.
std::string print(const FormulaPtr& f);

// Parses the canonical grammar:
//   atoms [A-Za-z_][A-Za-z0-9_]*, literals true/false, unary ! X F G,
//   binary && || -> <-> U W R, parentheses, whitespace-insensitive.
// Precedence: unary > U/W/R (right-assoc) > && > || > -> (right-assoc) > <->.
// Throws ParseError on malformed input.
FormulaPtr parse(const std::string& text);
// As above but also rejects atoms outside `alphabet` (ParseError naming the
// offending atom).
FormulaPtr parse(const std::string& text, const std::vector<std::string>& alphabet);

// Structurally distinct sub-trees in pre-order of first occurrence,
// including f itself. SF(G !p) = [G !p, !p, p].
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

// Replaces every occurrence of `target` (structural match) inside f.
// Throws std::invalid_argument if target does not occur.
FormulaPtr replaceOccurrences(const FormulaPtr& f, const FormulaPtr& target,
                              const FormulaPtr& replacement);

// Rewrites to the core operator set {atom, true/false, !, &&, ||, X, U, R}:
//   G p = false R p, F p = true U p, p W q = q R (p || q),
//   p -> q = !p || q, p <-> q = (p && q) || (!p && !q).
FormulaPtr normalizeToCore(const FormulaPtr& f);

inline int formulaSize(const FormulaPtr& f) { return f->size(); }

// Sorted, deduplicated atom names occurring in f.
std::vector<std::string> atomsOf(const FormulaPtr& f);

// Conjunction of a non-empty list (right-folded); empty list yields `true`.
FormulaPtr conjoin(const std::vector<FormulaPtr>& fs);

} // namespace ltlfix
