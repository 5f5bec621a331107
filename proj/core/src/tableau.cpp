// LTL -> Büchi via the classic tableau (node-splitting) construction to a
// generalized Büchi automaton, then counter-based degeneralization. Edge
// labels are literal conjunctions; a fresh pseudo-initial state reads the
// first letter so that labels sit on edges rather than states.
#include <algorithm>
#include <map>
#include <stdexcept>

#include "ltlfix/automaton.hpp"

namespace ltlfix::automata {

namespace {

FormulaPtr toNNF(const FormulaPtr& f, bool negated) {
    switch (f->op()) {
    case Op::True: return Formula::literal(!negated);
    case Op::False: return Formula::literal(negated);
    case Op::Atom: return negated ? Formula::unary(Op::Not, f) : f;
    case Op::Not: return toNNF(f->left(), !negated);
    case Op::Next: return Formula::unary(Op::Next, toNNF(f->left(), negated));
    case Op::And:
    case Op::Or: {
        Op op = (f->op() == Op::And) == !negated ? Op::And : Op::Or;
        return Formula::binary(op, toNNF(f->left(), negated), toNNF(f->right(), negated));
    }
    case Op::Until:
    case Op::Release: {
        Op op = (f->op() == Op::Until) == !negated ? Op::Until : Op::Release;
        return Formula::binary(op, toNNF(f->left(), negated), toNNF(f->right(), negated));
    }
    default:
        throw std::logic_error("toNNF: non-core operator; normalizeToCore first");
    }
}

using IdSet = std::vector<int>; // sorted, unique

bool setContains(const IdSet& s, int id) {
    return std::binary_search(s.begin(), s.end(), id);
}

void setInsert(IdSet& s, int id) {
    auto it = std::lower_bound(s.begin(), s.end(), id);
    if (it == s.end() || *it != id) s.insert(it, id);
}

constexpr int kInitMarker = -1;

struct Draft {
    IdSet incoming; // node ids, or kInitMarker
    IdSet newSet, oldSet, nextSet;
};

struct Node {
    IdSet incoming, oldSet, nextSet;
};

class TableauBuilder {
public:
    TableauBuilder(const FormulaPtr& nnf, const Alphabet& alphabet, int stateCap)
        : alphabet_(alphabet), stateCap_(stateCap) {
        Draft root;
        root.incoming.push_back(kInitMarker);
        root.newSet.push_back(intern(nnf));
        pending_.push_back(std::move(root));
        while (!pending_.empty()) {
            Draft d = std::move(pending_.back());
            pending_.pop_back();
            expand(std::move(d));
        }
    }

    NondetAutomaton build() {
        NondetAutomaton a;
        a.kind = Kind::Buchi;
        a.alphabet = alphabet_;

        // Fairness sets, one per until-formula appearing in some Old set.
        IdSet untils;
        for (const Node& n : nodes_) {
            for (int id : n.oldSet) {
                if (formulas_[id]->op() == Op::Until) setInsert(untils, id);
            }
        }
        const int m = static_cast<int>(untils.size());
        // inF[u][node]: node is in the fairness set of untils[u]
        std::vector<std::vector<char>> inF(m, std::vector<char>(nodes_.size(), 0));
        for (int u = 0; u < m; ++u) {
            int rhs = intern(formulas_[untils[u]]->right());
            for (size_t q = 0; q < nodes_.size(); ++q) {
                inF[u][q] = !setContains(nodes_[q].oldSet, untils[u]) ||
                            setContains(nodes_[q].oldSet, rhs);
            }
        }

        if (m == 0) {
            // No liveness obligations: every run is accepting.
            a.stateCount = static_cast<int>(nodes_.size()) + 1;
            a.initialStates.push_back(0);
            a.accepting.assign(a.stateCount, 1);
            a.accepting[0] = 0; // pseudo-initial, never on a cycle
            a.edges.resize(a.stateCount);
            for (size_t q = 0; q < nodes_.size(); ++q) {
                EdgeLabel lbl = labelOf(nodes_[q]);
                for (int r : nodes_[q].incoming) {
                    a.edges[r == kInitMarker ? 0 : r + 1].emplace_back(lbl, static_cast<int>(q) + 1);
                }
            }
            return a;
        }

        // Degeneralize: states (node-or-ι, counter 0..m); counter c waits for
        // fairness set c, advances on entering a member state, accepts at m,
        // then resets. Only reachable pairs are materialized.
        const int width = m + 1;
        auto advance = [&](int c, int targetNode) {
            if (c == m) c = 0;
            while (c < m && inF[c][targetNode]) ++c;
            return c;
        };
        // Tableau adjacency: successors of a node / of the pseudo-initial.
        std::vector<IdSet> nodeSucc(nodes_.size());
        IdSet initSucc;
        for (size_t q = 0; q < nodes_.size(); ++q) {
            for (int r : nodes_[q].incoming) {
                if (r == kInitMarker) setInsert(initSucc, static_cast<int>(q));
                else setInsert(nodeSucc[r], static_cast<int>(q));
            }
        }
        // id encoding: pseudo-initial = code -1; (node q, counter c) -> q*width + c
        std::map<long long, int> stateId;
        std::vector<long long> codes;
        auto getId = [&](long long code) {
            auto [it, fresh] = stateId.try_emplace(code, static_cast<int>(codes.size()));
            if (fresh) {
                codes.push_back(code);
                if (static_cast<int>(codes.size()) > stateCap_) {
                    throw ResourceError("degeneralized automaton exceeds state cap");
                }
            }
            return it->second;
        };
        getId(-1); // pseudo-initial
        std::vector<std::vector<std::pair<EdgeLabel, int>>> edges(1);
        std::vector<int> work{0};
        for (size_t w = 0; w < work.size(); ++w) {
            int s = work[w];
            long long code = codes[s];
            int counter = code >= 0 ? static_cast<int>(code % width) : 0;
            const IdSet& succ = code >= 0 ? nodeSucc[static_cast<size_t>(code / width)] : initSucc;
            for (int q : succ) {
                int c2 = advance(counter, q);
                long long code2 = static_cast<long long>(q) * width + c2;
                size_t before = codes.size();
                int t = getId(code2);
                if (codes.size() > before) {
                    edges.resize(codes.size());
                    work.push_back(t);
                }
                edges[s].emplace_back(labelOf(nodes_[q]), t);
            }
        }

        a.stateCount = static_cast<int>(codes.size());
        a.initialStates.push_back(0);
        a.accepting.assign(a.stateCount, 0);
        for (int s = 1; s < a.stateCount; ++s) {
            if (codes[s] % width == m) a.accepting[s] = 1;
        }
        a.edges = std::move(edges);
        return a;
    }

private:
    int intern(const FormulaPtr& f) {
        auto [it, fresh] = internIds_.try_emplace(f, static_cast<int>(formulas_.size()));
        if (fresh) formulas_.push_back(f);
        return it->second;
    }

    EdgeLabel labelOf(const Node& n) {
        EdgeLabel lbl;
        for (int id : n.oldSet) {
            const FormulaPtr& g = formulas_[id];
            if (g->op() == Op::Atom) {
                lbl.posMask |= Valuation{1} << alphabet_.index(g->atomName());
            } else if (g->op() == Op::Not && g->left()->op() == Op::Atom) {
                lbl.negMask |= Valuation{1} << alphabet_.index(g->left()->atomName());
            }
        }
        return lbl;
    }

    void expand(Draft d) {
        if (d.newSet.empty()) {
            auto key = std::make_pair(d.oldSet, d.nextSet);
            if (auto it = nodeByKey_.find(key); it != nodeByKey_.end()) {
                // merge: same (Old, Next) node already exists
                Node& n = nodes_[it->second];
                for (int r : d.incoming) setInsert(n.incoming, r);
                return;
            }
            int id = static_cast<int>(nodes_.size());
            if (id + 1 > stateCap_) throw ResourceError("tableau exceeds state cap");
            nodes_.push_back(Node{d.incoming, d.oldSet, d.nextSet});
            nodeByKey_.emplace(std::move(key), id);
            Draft succ;
            succ.incoming.push_back(id);
            succ.newSet = d.nextSet;
            pending_.push_back(std::move(succ));
            return;
        }
        int id = d.newSet.front();
        d.newSet.erase(d.newSet.begin());
        FormulaPtr f = formulas_[id]; // by value: intern() may grow formulas_
        auto addNew = [&](Draft& t, const FormulaPtr& g) {
            int gid = intern(g);
            if (!setContains(t.oldSet, gid)) setInsert(t.newSet, gid);
        };
        switch (f->op()) {
        case Op::True:
            pending_.push_back(std::move(d)); // no constraint recorded
            return;
        case Op::False:
            return; // contradiction: drop this draft
        case Op::Atom:
        case Op::Not: { // NNF: negation only wraps atoms
            int negId = f->op() == Op::Atom ? intern(Formula::unary(Op::Not, f))
                                            : intern(f->left());
            if (setContains(d.oldSet, negId)) return; // p and !p: contradiction
            setInsert(d.oldSet, id);
            pending_.push_back(std::move(d));
            return;
        }
        case Op::And: {
            setInsert(d.oldSet, id);
            addNew(d, f->left());
            addNew(d, f->right());
            pending_.push_back(std::move(d));
            return;
        }
        case Op::Or: {
            Draft d2 = d;
            setInsert(d.oldSet, id);
            addNew(d, f->left());
            setInsert(d2.oldSet, id);
            addNew(d2, f->right());
            pending_.push_back(std::move(d2));
            pending_.push_back(std::move(d));
            return;
        }
        case Op::Next: {
            setInsert(d.oldSet, id);
            setInsert(d.nextSet, intern(f->left()));
            pending_.push_back(std::move(d));
            return;
        }
        case Op::Until: { // p U q = q || (p && X(p U q))
            Draft d2 = d;
            setInsert(d.oldSet, id);
            addNew(d, f->left());
            setInsert(d.nextSet, id);
            setInsert(d2.oldSet, id);
            addNew(d2, f->right());
            pending_.push_back(std::move(d2));
            pending_.push_back(std::move(d));
            return;
        }
        case Op::Release: { // p R q = (q && p) || (q && X(p R q))
            Draft d2 = d;
            setInsert(d.oldSet, id);
            addNew(d, f->right());
            setInsert(d.nextSet, id);
            setInsert(d2.oldSet, id);
            addNew(d2, f->left());
            addNew(d2, f->right());
            pending_.push_back(std::move(d2));
            pending_.push_back(std::move(d));
            return;
        }
        default:
            throw std::logic_error("tableau: non-NNF operator");
        }
    }

    Alphabet alphabet_;
    int stateCap_;
    FormulaMap<int> internIds_;
    std::vector<FormulaPtr> formulas_;
    std::vector<Node> nodes_;
    std::map<std::pair<IdSet, IdSet>, int> nodeByKey_;
    std::vector<Draft> pending_;
};

} // namespace

NondetAutomaton ltlToBuchi(const FormulaPtr& f, const Alphabet& alphabet, int stateCap) {
    for (const auto& atom : atomsOf(f)) {
        if (!alphabet.contains(atom)) {
            throw std::invalid_argument("ltlToBuchi: atom '" + atom + "' not in alphabet");
        }
    }
    FormulaPtr nnf = toNNF(normalizeToCore(f), false);
    return TableauBuilder(nnf, alphabet, stateCap).build();
}

} // namespace ltlfix::automata
