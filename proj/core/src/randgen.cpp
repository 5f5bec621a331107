#include "ltlfix/harness.hpp"

namespace ltlfix::harness {

namespace {

uint64_t pick(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

constexpr Op kUnaryOps[] = {Op::Not, Op::Next, Op::Finally, Op::Globally};
constexpr Op kBinaryOps[] = {Op::And,   Op::Or,        Op::Implies, Op::Iff,
                             Op::Until, Op::WeakUntil, Op::Release};

FormulaPtr leaf(std::mt19937_64& rng, const std::vector<std::string>& atoms) {
    if (atoms.empty() || pick(rng, 10) == 0) return Formula::literal(pick(rng, 2) == 0);
    return Formula::atom(atoms[pick(rng, atoms.size())]);
}

} // namespace

FormulaPtr randomFormula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                         int maxDepth) {
    if (maxDepth <= 0 || pick(rng, 4) == 0) return leaf(rng, atoms);
    if (pick(rng, 10) < 4) {
        Op op = kUnaryOps[pick(rng, 4)];
        return Formula::unary(op, randomFormula(rng, atoms, maxDepth - 1));
    }
    Op op = kBinaryOps[pick(rng, 7)];
    return Formula::binary(op, randomFormula(rng, atoms, maxDepth - 1),
                           randomFormula(rng, atoms, maxDepth - 1));
}

} // namespace ltlfix::harness
