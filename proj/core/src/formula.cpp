#include "ltlfix/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace ltlfix {

namespace {

size_t hashCombine(size_t seed, size_t v) {
    // boost-style mix
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

size_t nodeHash(Op op, const std::string& atom, const FormulaPtr& l, const FormulaPtr& r) {
    size_t h = hashCombine(0x5bd1e995, static_cast<size_t>(op));
    if (op == Op::Atom) h = hashCombine(h, std::hash<std::string>{}(atom));
    if (l) h = hashCombine(h, l->hash());
    if (r) h = hashCombine(h, r->hash());
    return h;
}

} // namespace

Formula::Formula(Op op, std::string atom, FormulaPtr lhs, FormulaPtr rhs)
    : op_(op), atom_(std::move(atom)), left_(std::move(lhs)), right_(std::move(rhs)) {
    size_ = 1 + (left_ ? left_->size() : 0) + (right_ ? right_->size() : 0);
    hash_ = nodeHash(op_, atom_, left_, right_);
}

FormulaPtr Formula::atom(std::string name) {
    assert(!name.empty());
    return FormulaPtr(new Formula(Op::Atom, std::move(name), nullptr, nullptr));
}

FormulaPtr Formula::literal(bool value) {
    static const FormulaPtr kTrue(new Formula(Op::True, {}, nullptr, nullptr));
    static const FormulaPtr kFalse(new Formula(Op::False, {}, nullptr, nullptr));
    return value ? kTrue : kFalse;
}

FormulaPtr Formula::unary(Op op, FormulaPtr child) {
    assert(isUnary(op) && child);
    return FormulaPtr(new Formula(op, {}, std::move(child), nullptr));
}

FormulaPtr Formula::binary(Op op, FormulaPtr lhs, FormulaPtr rhs) {
    assert(isBinary(op) && lhs && rhs);
    return FormulaPtr(new Formula(op, {}, std::move(lhs), std::move(rhs)));
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash() != b->hash() || a->op() != b->op() || a->size() != b->size()) return false;
    if (a->op() == Op::Atom) return a->atomName() == b->atomName();
    return equal(a->left(), b->left()) && equal(a->right(), b->right());
}

namespace {

// Precedence levels for the printer; must mirror the parser.
int precedence(Op op) {
    switch (op) {
    case Op::Until:
    case Op::WeakUntil:
    case Op::Release: return 5;
    case Op::And: return 4;
    case Op::Or: return 3;
    case Op::Implies: return 2;
    case Op::Iff: return 1;
    default: return 6; // leaves and unary bind tightest
    }
}

bool rightAssociative(Op op) {
    return op == Op::Until || op == Op::WeakUntil || op == Op::Release ||
           op == Op::Implies || op == Op::Iff;
}

const char* opToken(Op op) {
    switch (op) {
    case Op::Not: return "!";
    case Op::Next: return "X";
    case Op::Finally: return "F";
    case Op::Globally: return "G";
    case Op::And: return "&&";
    case Op::Or: return "||";
    case Op::Implies: return "->";
    case Op::Iff: return "<->";
    case Op::Until: return "U";
    case Op::WeakUntil: return "W";
    case Op::Release: return "R";
    default: return "";
    }
}

void printRec(const FormulaPtr& f, std::string& out) {
    switch (f->op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Atom: out += f->atomName(); return;
    default: break;
    }
    if (isUnary(f->op())) {
        out += opToken(f->op());
        out += " (";
        printRec(f->left(), out);
        out += ')';
        return;
    }
    // Binary: parenthesise a child only if it binds more loosely than this
    // node, or sits on the non-associative side of an equal-precedence chain.
    int prec = precedence(f->op());
    bool rassoc = rightAssociative(f->op());
    auto side = [&](const FormulaPtr& child, bool isRight) {
        int cp = precedence(child->op());
        bool parens = cp < prec || (cp == prec && isBinary(child->op()) && isRight != rassoc);
        if (parens) out += '(';
        printRec(child, out);
        if (parens) out += ')';
    };
    side(f->left(), false);
    out += ' ';
    out += opToken(f->op());
    out += ' ';
    side(f->right(), true);
}

} // namespace

std::string print(const FormulaPtr& f) {
    std::string out;
    out.reserve(static_cast<size_t>(f->size()) * 4);
    printRec(f, out);
    return out;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
    std::vector<FormulaPtr> order;
    FormulaSet seen;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        if (!seen.insert(g).second) return;
        order.push_back(g);
        if (g->left()) walk(g->left());
        if (g->right()) walk(g->right());
    };
    walk(f);
    return order;
}

namespace {

FormulaPtr replaceRec(const FormulaPtr& f, const FormulaPtr& target,
                      const FormulaPtr& replacement, bool& found) {
    if (equal(f, target)) {
        found = true;
        return replacement;
    }
    if (isLeaf(f->op())) return f;
    FormulaPtr l = replaceRec(f->left(), target, replacement, found);
    if (isUnary(f->op())) {
        return l.get() == f->left().get() ? f : Formula::unary(f->op(), std::move(l));
    }
    FormulaPtr r = replaceRec(f->right(), target, replacement, found);
    if (l.get() == f->left().get() && r.get() == f->right().get()) return f;
    return Formula::binary(f->op(), std::move(l), std::move(r));
}

} // namespace

FormulaPtr replaceOccurrences(const FormulaPtr& f, const FormulaPtr& target,
                              const FormulaPtr& replacement) {
    bool found = false;
    FormulaPtr out = replaceRec(f, target, replacement, found);
    if (!found) {
        throw std::invalid_argument("replaceOccurrences: target '" + print(target) +
                                    "' does not occur in '" + print(f) + "'");
    }
    return out;
}

FormulaPtr normalizeToCore(const FormulaPtr& f) {
    switch (f->op()) {
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::Not: return Formula::unary(Op::Not, normalizeToCore(f->left()));
    case Op::Next: return Formula::unary(Op::Next, normalizeToCore(f->left()));
    case Op::Finally: // F p = true U p
        return Formula::binary(Op::Until, Formula::literal(true), normalizeToCore(f->left()));
    case Op::Globally: // G p = false R p
        return Formula::binary(Op::Release, Formula::literal(false), normalizeToCore(f->left()));
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release:
        return Formula::binary(f->op(), normalizeToCore(f->left()), normalizeToCore(f->right()));
    case Op::Implies: { // p -> q = !p || q
        FormulaPtr l = normalizeToCore(f->left());
        FormulaPtr r = normalizeToCore(f->right());
        return Formula::binary(Op::Or, Formula::unary(Op::Not, std::move(l)), std::move(r));
    }
    case Op::Iff: { // p <-> q = (p && q) || (!p && !q)
        FormulaPtr l = normalizeToCore(f->left());
        FormulaPtr r = normalizeToCore(f->right());
        FormulaPtr both = Formula::binary(Op::And, l, r);
        FormulaPtr neither = Formula::binary(Op::And, Formula::unary(Op::Not, std::move(l)),
                                             Formula::unary(Op::Not, std::move(r)));
        return Formula::binary(Op::Or, std::move(both), std::move(neither));
    }
    case Op::WeakUntil: { // p W q = q R (p || q)
        FormulaPtr l = normalizeToCore(f->left());
        FormulaPtr r = normalizeToCore(f->right());
        return Formula::binary(Op::Release, r, Formula::binary(Op::Or, std::move(l), r));
    }
    }
    throw std::logic_error("normalizeToCore: unhandled operator");
}

std::vector<std::string> atomsOf(const FormulaPtr& f) {
    std::vector<std::string> names;
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        if (g->op() == Op::Atom) names.push_back(g->atomName());
        if (g->left()) walk(g->left());
        if (g->right()) walk(g->right());
    };
    walk(f);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

FormulaPtr conjoin(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return Formula::literal(true);
    FormulaPtr acc = fs.back();
    for (size_t i = fs.size() - 1; i-- > 0;) {
        acc = Formula::binary(Op::And, fs[i], std::move(acc));
    }
    return acc;
}

} // namespace ltlfix
