#include "ltlfix/lasso.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ltlfix {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
    if (names_.size() > 30) {
        throw ResourceError("alphabet too large for valuation encoding (" +
                            std::to_string(names_.size()) + " atoms, max 30)");
    }
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("empty atom name in alphabet");
    }
}

int Alphabet::index(const std::string& name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return -1;
    return static_cast<int>(it - names_.begin());
}

LassoEvaluator::LassoEvaluator(const FormulaPtr& f, const Alphabet& alphabet) {
    FormulaMap<int> reg; // structural dedup: shared subtrees share a register
    std::function<int(const FormulaPtr&)> compile = [&](const FormulaPtr& g) -> int {
        if (auto it = reg.find(g); it != reg.end()) return it->second;
        Instr ins;
        ins.op = g->op();
        if (g->op() == Op::Atom) {
            ins.atomBit = alphabet.index(g->atomName());
            if (ins.atomBit < 0) {
                throw std::invalid_argument("atom '" + g->atomName() +
                                            "' is not in the lasso alphabet");
            }
        }
        if (g->left()) ins.a = compile(g->left());
        if (g->right()) ins.b = compile(g->right());
        int idx = static_cast<int>(prog_.size());
        prog_.push_back(ins);
        reg.emplace(g, idx);
        return idx;
    };
    compile(f);
    regs_.resize(prog_.size());
}

bool LassoEvaluator::evaluate(const std::vector<Valuation>& base, int loop) {
    const int k = static_cast<int>(base.size());
    if (k < 1 || loop < 0 || loop >= k) {
        throw std::invalid_argument("invalid lasso: need |base| >= 1 and 0 <= loop < |base|");
    }
    auto succ = [&](int i) { return i + 1 < k ? i + 1 : loop; };

    for (size_t pc = 0; pc < prog_.size(); ++pc) {
        const Instr& ins = prog_[pc];
        std::vector<char>& t = regs_[pc];
        t.assign(static_cast<size_t>(k), 0);
        const std::vector<char>* ca = ins.a >= 0 ? &regs_[ins.a] : nullptr;
        const std::vector<char>* cb = ins.b >= 0 ? &regs_[ins.b] : nullptr;
        switch (ins.op) {
        case Op::True:
            std::fill(t.begin(), t.end(), 1);
            break;
        case Op::False:
            break;
        case Op::Atom:
            for (int i = 0; i < k; ++i) t[i] = (base[i] >> ins.atomBit) & 1;
            break;
        case Op::Not:
            for (int i = 0; i < k; ++i) t[i] = !(*ca)[i];
            break;
        case Op::And:
            for (int i = 0; i < k; ++i) t[i] = (*ca)[i] && (*cb)[i];
            break;
        case Op::Or:
            for (int i = 0; i < k; ++i) t[i] = (*ca)[i] || (*cb)[i];
            break;
        case Op::Implies:
            for (int i = 0; i < k; ++i) t[i] = !(*ca)[i] || (*cb)[i];
            break;
        case Op::Iff:
            for (int i = 0; i < k; ++i) t[i] = (*ca)[i] == (*cb)[i];
            break;
        case Op::Next:
            for (int i = 0; i < k; ++i) t[i] = (*ca)[succ(i)];
            break;
        case Op::Finally: // least fixed point of  t[i] = a[i] || t[succ(i)]
        case Op::Until: { // least fixed point of  t[i] = b[i] || (a[i] && t[succ(i)])
            bool changed = true;
            while (changed) {
                changed = false;
                for (int i = k - 1; i >= 0; --i) {
                    char v = ins.op == Op::Finally
                                 ? static_cast<char>((*ca)[i] || t[succ(i)])
                                 : static_cast<char>((*cb)[i] || ((*ca)[i] && t[succ(i)]));
                    if (v != t[i]) {
                        t[i] = v;
                        changed = true;
                    }
                }
            }
            break;
        }
        case Op::Globally:   // greatest fixed point of  t[i] = a[i] && t[succ(i)]
        case Op::Release:    // greatest fixed point of  t[i] = b[i] && (a[i] || t[succ(i)])
        case Op::WeakUntil: { // greatest fixed point of  t[i] = b[i] || (a[i] && t[succ(i)])
            std::fill(t.begin(), t.end(), 1);
            bool changed = true;
            while (changed) {
                changed = false;
                for (int i = k - 1; i >= 0; --i) {
                    char v;
                    if (ins.op == Op::Globally) v = (*ca)[i] && t[succ(i)];
                    else if (ins.op == Op::Release) v = (*cb)[i] && ((*ca)[i] || t[succ(i)]);
                    else v = (*cb)[i] || ((*ca)[i] && t[succ(i)]);
                    if (v != t[i]) {
                        t[i] = v;
                        changed = true;
                    }
                }
            }
            break;
        }
        }
    }
    return regs_.back()[0] != 0;
}

bool evaluateOnLasso(const FormulaPtr& f, const LassoWord& w) {
    LassoEvaluator ev(f, w.alphabet);
    return ev.evaluate(w.base, w.loop);
}

} // namespace ltlfix
