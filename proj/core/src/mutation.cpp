#include <algorithm>
#include <set>

#include "ltlfix/repair.hpp"

namespace ltlfix::repair {

namespace {

uint64_t pick(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

bool chance(std::mt19937_64& rng, double p) {
    return (rng() >> 11) * 0x1.0p-53 < p;
}

constexpr Op kUnaryMenu[] = {Op::Globally, Op::Finally, Op::Next, Op::Not};
constexpr Op kBinaryMenu[] = {Op::Or, Op::And, Op::Until, Op::Release, Op::WeakUntil};
// The fresh-atom rewrite combines with U, W, && or || only.
constexpr Op kFreshAtomMenu[] = {Op::Until, Op::WeakUntil, Op::And, Op::Or};

FormulaPtr pickSub(const FormulaPtr& f, std::mt19937_64& rng) {
    std::vector<FormulaPtr> subs = subformulas(f);
    return subs[pick(rng, subs.size())];
}

// Gated recursive rewriting: each node fires with probability `rate`; on a
// fire one production of the case grammar is applied, with the recursive
// occurrences continuing the gated walk.
struct Mutator {
    std::mt19937_64& rng;
    const std::vector<std::string>& pool; // atoms available for introduction
    double rate;

    Op randomUnary() { return kUnaryMenu[pick(rng, 4)]; }
    Op randomBinary() { return kBinaryMenu[pick(rng, 5)]; }

    FormulaPtr go(const FormulaPtr& f) {
        if (chance(rng, rate)) return apply(f);
        if (isLeaf(f->op())) return f;
        if (isUnary(f->op())) {
            FormulaPtr c = go(f->left());
            return c == f->left() ? f : Formula::unary(f->op(), c);
        }
        FormulaPtr l = go(f->left());
        FormulaPtr r = go(f->right());
        if (l == f->left() && r == f->right()) return f;
        return Formula::binary(f->op(), l, r);
    }

    FormulaPtr apply(const FormulaPtr& f) {
        Op op = f->op();
        if (isLeaf(op)) return applyLeaf(f);
        if (isUnary(op)) return applyUnary(f);
        return applyBinary(f);
    }

    FormulaPtr applyLeaf(const FormulaPtr& f) {
        std::vector<std::string> swaps;
        if (f->op() == Op::Atom)
            for (const std::string& q : pool)
                if (q != f->atomName()) swaps.push_back(q);
        // Productions: flip the literal, swap the atom, prefix with a unary.
        std::vector<int> menu;
        if (f->op() != Op::Atom) menu.push_back(0);
        if (!swaps.empty()) menu.push_back(1);
        menu.push_back(2);
        switch (menu[pick(rng, menu.size())]) {
        case 0: return Formula::literal(f->op() == Op::False);
        case 1: return Formula::atom(swaps[pick(rng, swaps.size())]);
        default: return Formula::unary(randomUnary(), f);
        }
    }

    FormulaPtr applyUnary(const FormulaPtr& f) {
        // Productions: drop the operator, swap it, stack a second one, or
        // bind a fresh atom with a binary connective.
        switch (pick(rng, pool.empty() ? 3 : 4)) {
        case 0: return go(f->left());
        case 1: return Formula::unary(randomUnary(), go(f->left()));
        case 2:
            return Formula::unary(randomUnary(), Formula::unary(f->op(), go(f->left())));
        default: {
            FormulaPtr p = Formula::atom(pool[pick(rng, pool.size())]);
            Op o2 = kFreshAtomMenu[pick(rng, 4)];
            return Formula::binary(o2, p, Formula::unary(randomUnary(), go(f->left())));
        }
        }
    }

    FormulaPtr applyBinary(const FormulaPtr& f) {
        // Productions: keep one operand, swap the operator, wrap in a unary.
        switch (pick(rng, 3)) {
        case 0: return go(pick(rng, 2) == 0 ? f->left() : f->right());
        case 1: return Formula::binary(randomBinary(), go(f->left()), go(f->right()));
        default:
            return Formula::unary(randomUnary(),
                                  Formula::binary(randomBinary(), go(f->left()), go(f->right())));
        }
    }
};

} // namespace

std::vector<Individual> seedPopulation(const Spec& s, int size, std::mt19937_64& rng) {
    std::vector<Individual> population;
    if (size <= 0) return population;

    std::vector<FormulaPtr> patterns;
    if (!s.inputs.empty()) {
        std::vector<FormulaPtr> atoms;
        atoms.reserve(s.inputs.size());
        for (const std::string& x : s.inputs) atoms.push_back(Formula::atom(x));
        for (const FormulaPtr& x : atoms)
            patterns.push_back(Formula::unary(Op::Globally, Formula::unary(Op::Finally, x)));
        FormulaPtr all = conjoin(atoms);
        patterns.push_back(Formula::unary(Op::Globally, Formula::unary(Op::Not, all)));
        patterns.push_back(
            Formula::unary(Op::Globally, Formula::unary(Op::Finally, all)));
    }

    std::vector<std::pair<Spec, std::string>> seeds;
    std::set<std::string> seen;
    for (const FormulaPtr& a0 : patterns) {
        Spec candidate = s;
        candidate.assumptions.push_back(a0);
        if (!seen.insert(candidate.canonicalKey()).second) continue;
        if (!analysis::isSat(candidate.assumptionConjunction())) continue;
        seeds.emplace_back(std::move(candidate), "seed(" + print(a0) + ")");
    }
    for (size_t i = seeds.size(); i > 1; --i)
        std::swap(seeds[i - 1], seeds[pick(rng, i)]);

    for (int i = 0; i < size; ++i) {
        Individual ind;
        if (i < static_cast<int>(seeds.size())) {
            ind.spec = seeds[i].first;
            ind.provenanceChain = {seeds[i].second};
        } else {
            ind.spec = s;
            ind.provenanceChain = {"seed(original)"};
        }
        ind.provenance = Provenance::Seed;
        ind.creationIndex = static_cast<uint64_t>(i);
        population.push_back(std::move(ind));
    }
    return population;
}

FormulaPtr replaceSub(const FormulaPtr& f, const FormulaPtr& donor, std::mt19937_64& rng) {
    FormulaPtr target = pickSub(f, rng);
    FormulaPtr replacement = pickSub(donor, rng);
    if (equal(target, replacement)) return f;
    return replaceOccurrences(f, target, replacement);
}

FormulaPtr combineSub(const FormulaPtr& f, const FormulaPtr& donor, std::mt19937_64& rng) {
    FormulaPtr target = pickSub(f, rng);
    FormulaPtr partner = pickSub(donor, rng);
    Op op = kBinaryMenu[pick(rng, 5)];
    return replaceOccurrences(f, target, Formula::binary(op, target, partner));
}

namespace {

std::vector<FormulaPtr> crossLists(const std::vector<FormulaPtr>& first,
                                   const std::vector<FormulaPtr>& second,
                                   std::mt19937_64& rng) {
    std::vector<FormulaPtr> out;
    out.reserve(first.size());
    for (const FormulaPtr& f1 : first) {
        if (second.empty()) {
            out.push_back(f1);
            continue;
        }
        const FormulaPtr& f2 = second[pick(rng, second.size())];
        switch (pick(rng, 4)) {
        case 0: out.push_back(f1); break;
        case 1: out.push_back(f2); break;
        case 2: out.push_back(replaceSub(f1, f2, rng)); break;
        default: out.push_back(combineSub(f1, f2, rng)); break;
        }
    }
    return out;
}

} // namespace

Spec crossover(const Spec& s1, const Spec& s2, std::mt19937_64& rng) {
    Spec child = s1;
    child.assumptions = crossLists(s1.assumptions, s2.assumptions, rng);
    child.guarantees = crossLists(s1.guarantees, s2.guarantees, rng);
    return child;
}

Spec mutate(const Spec& s, std::mt19937_64& rng, std::optional<double> perGeneRate) {
    Spec out = s;
    size_t assumptionCount = s.assumptions.size();
    size_t total = assumptionCount + s.guarantees.size();
    size_t idx = pick(rng, total);
    bool onAssumption = idx < assumptionCount;

    FormulaPtr target = onAssumption ? s.assumptions[idx] : s.guarantees[idx - assumptionCount];
    std::vector<std::string> pool = onAssumption ? s.inputs : s.variables();
    double rate = perGeneRate ? *perGeneRate : 1.0 / std::max(1, formulaSize(target));

    Mutator m{rng, pool, rate};
    FormulaPtr mutated = m.go(target);
    if (onAssumption)
        out.assumptions[idx] = mutated;
    else
        out.guarantees[idx - assumptionCount] = mutated;
    return out;
}

} // namespace ltlfix::repair
